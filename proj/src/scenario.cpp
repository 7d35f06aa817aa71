#include "netmon/scenario.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <ios>
#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "netmon/random.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

#ifndef NETMON_CATALOG_PATH
#define NETMON_CATALOG_PATH "data/density_catalog.json"
#endif

namespace netmon {

using nlohmann::json;

std::string to_string(ModelKind model) { return model == ModelKind::Dlsm ? "dlsm" : "ddcsbm"; }

ModelKind parse_model_kind(const std::string& text) {
  if (text == "dlsm") return ModelKind::Dlsm;
  if (text == "ddcsbm") return ModelKind::Ddcsbm;
  throw std::invalid_argument("unknown model '" + text + "' (dlsm|ddcsbm)");
}

namespace {

constexpr double kDensityTolerance = 1e-9;

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::ios_base::failure("cannot open '" + path.string() + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json parse_json(const std::string& text, const std::string& what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(what + ": " + e.what());
  }
}

}  // namespace

DensityCatalog DensityCatalog::parse(const std::string& json_text) {
  const json doc = parse_json(json_text, "catalog");
  DensityCatalog cat;
  try {
    if (doc.at("version").get<int>() != 1) throw std::invalid_argument("catalog: unsupported version");
    const json& sweep = doc.at("phi_sweep");
    cat.sweep_density_ = sweep.at("density").get<double>();
    for (ModelKind m : {ModelKind::Dlsm, ModelKind::Ddcsbm}) {
      if (!sweep.contains(to_string(m))) continue;
      for (auto& [kind, value] : sweep.at(to_string(m)).items()) {
        cat.sweep_[{m, parse_edge_kind(kind)}] = value.get<double>();
      }
    }
    std::vector<std::pair<Key, std::pair<double, double>>> relative;
    for (const json& cell : doc.at("cells")) {
      const Key key{parse_model_kind(cell.at("model").get<std::string>()),
                    parse_edge_kind(cell.at("edge_kind").get<std::string>())};
      const double density = cell.at("density").get<double>();
      if (cell.contains("a")) {
        cat.cells_[key].emplace_back(density, cell.at("a").get<double>());
      } else {
        relative.push_back({key, {density, cell.at("times_binary").get<double>()}});
      }
    }
    for (const auto& [key, entry] : relative) {
      const double base = cat.lookup(key.model, EdgeKind::Binary, entry.first);
      cat.cells_[key].emplace_back(entry.first, entry.second * base);
    }
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("catalog: ") + e.what());
  } catch (const std::out_of_range& e) {
    throw std::invalid_argument(std::string("catalog: ") + e.what());
  }
  return cat;
}

DensityCatalog DensityCatalog::load(const std::filesystem::path& path) { return parse(read_text(path)); }

std::filesystem::path DensityCatalog::builtin_path() {
  if (const char* env = std::getenv("NETMON_CATALOG")) return env;
  return NETMON_CATALOG_PATH;
}

const DensityCatalog& DensityCatalog::builtin() {
  static const DensityCatalog cat = load(builtin_path());
  return cat;
}

double DensityCatalog::lookup(ModelKind model, EdgeKind kind, double density) const {
  const Key key{model, kind};
  if (std::abs(density - sweep_density_) < kDensityTolerance) {
    if (auto it = sweep_.find(key); it != sweep_.end()) return it->second;
  }
  if (auto it = cells_.find(key); it != cells_.end()) {
    for (const auto& [d, a] : it->second) {
      if (std::abs(d - density) < kDensityTolerance) return a;
    }
  }
  std::ostringstream msg;
  msg << "no catalog cell for " << to_string(model) << ' ' << to_string(kind) << " at density " << density;
  throw std::out_of_range(msg.str());
}

std::vector<double> DensityCatalog::densities(ModelKind model, EdgeKind kind) const {
  std::vector<double> out;
  if (auto it = cells_.find({model, kind}); it != cells_.end()) {
    for (const auto& cell : it->second) out.push_back(cell.first);
  }
  return out;
}

double lookup_a_scale(ModelKind model, EdgeKind kind, double density) {
  return DensityCatalog::builtin().lookup(model, kind, density);
}

AnomalySpec AnomalySetup::spec() const {
  AnomalySpec s;
  s.family = family;
  s.profile = profile;
  s.affected_nodes = first_nodes(n_affected);
  s.t_start = t_start;
  s.cpl = cpl;
  s.magnitude = magnitude;
  s.radius_policy = radius_policy;
  return s;
}

double Scenario::resolved_a_scale() const {
  return a_scale ? *a_scale : lookup_a_scale(model, edge_kind, target_density);
}

std::optional<Window> Scenario::window() const {
  if (!anomaly) return std::nullopt;
  return Window{anomaly->t_start, anomaly->t_start + anomaly->cpl - 1};
}

void check_scenario(const Scenario& s) {
  if (s.id.empty()) throw std::invalid_argument("scenario: id must not be empty");
  if (!(std::abs(s.phi) < 1.0)) throw std::invalid_argument("scenario " + s.id + ": phi must lie in (-1,1)");
  if (!(s.target_density > 0.0 && s.target_density < 1.0)) {
    throw std::invalid_argument("scenario " + s.id + ": target_density must lie in (0,1)");
  }
  if (s.reps < 1) throw std::invalid_argument("scenario " + s.id + ": reps must be >= 1");
  if (s.calibration_reps < 1) throw std::invalid_argument("scenario " + s.id + ": calibration_reps must be >= 1");
  if (s.statistics.empty()) throw std::invalid_argument("scenario " + s.id + ": no statistics requested");
  if (!(s.p_target > 0.0 && s.p_target < 1.0)) throw std::invalid_argument("scenario " + s.id + ": p must lie in (0,1)");
  if (s.t1 < 3 || s.t1 >= s.T) throw std::invalid_argument("scenario " + s.id + ": need 3 <= t1 < T");
  if (s.a_scale && !(*s.a_scale > 0.0)) throw std::invalid_argument("scenario " + s.id + ": a_scale must be positive");
  for (StatKind k : s.statistics) {
    if (k == StatKind::Scan && (s.m < 2 || s.T <= 2 * s.m)) {
      throw std::invalid_argument("scenario " + s.id + ": scan window m needs 2 <= m and 2m < T");
    }
  }
  if (s.anomaly) check_anomaly(s.anomaly->spec(), s.n, s.t1, s.T);
}

namespace {

const std::set<std::string> kScenarioKeys = {
    "id", "model", "edge_kind", "n", "T", "t1", "phi", "target_density", "a_scale", "anomaly", "reps",
    "calibration_reps", "base_seed", "statistics", "m", "estimator", "p", "prior"};
const std::set<std::string> kAnomalyKeys = {"family", "profile", "n_affected", "t_start", "cpl", "magnitude",
                                            "radius_policy"};

void reject_unknown(const json& obj, const std::set<std::string>& keys, const std::string& where) {
  for (auto& [key, value] : obj.items()) {
    if (!keys.count(key)) throw std::invalid_argument(where + ": unknown key '" + key + "'");
  }
}

std::string prior_name(LatentPrior p) { return p == LatentPrior::Var1 ? "var1" : "random_walk"; }

LatentPrior parse_prior(const std::string& text) {
  if (text == "var1") return LatentPrior::Var1;
  if (text == "random_walk") return LatentPrior::OriginalRandomWalk;
  throw std::invalid_argument("unknown prior '" + text + "' (var1|random_walk)");
}

Scenario scenario_from_json(const json& j) {
  if (!j.is_object()) throw std::invalid_argument("scenario entries must be objects");
  Scenario s;
  s.id = j.at("id").get<std::string>();
  reject_unknown(j, kScenarioKeys, "scenario " + s.id);
  s.model = parse_model_kind(j.at("model").get<std::string>());
  s.edge_kind = parse_edge_kind(j.at("edge_kind").get<std::string>());
  s.n = j.value("n", s.n);
  s.T = j.value("T", s.T);
  s.t1 = j.value("t1", s.t1);
  s.phi = j.value("phi", s.phi);
  s.target_density = j.value("target_density", s.target_density);
  if (j.contains("a_scale")) s.a_scale = j.at("a_scale").get<double>();
  s.reps = j.value("reps", s.reps);
  s.calibration_reps = j.value("calibration_reps", s.calibration_reps);
  s.base_seed = j.value("base_seed", s.base_seed);
  s.m = j.value("m", s.m);
  s.p_target = j.value("p", s.p_target);
  if (j.contains("estimator")) s.estimator = parse_sigma_estimator(j.at("estimator").get<std::string>());
  if (j.contains("prior")) s.prior = parse_prior(j.at("prior").get<std::string>());
  if (j.contains("statistics")) {
    s.statistics.clear();
    for (const auto& name : j.at("statistics")) s.statistics.push_back(parse_stat_kind(name.get<std::string>()));
  }
  if (j.contains("anomaly") && !j.at("anomaly").is_null()) {
    const json& a = j.at("anomaly");
    reject_unknown(a, kAnomalyKeys, "scenario " + s.id + " anomaly");
    AnomalySetup setup;
    setup.family = parse_anomaly_family(a.at("family").get<std::string>());
    if (a.contains("profile")) setup.profile = parse_anomaly_profile(a.at("profile").get<std::string>());
    setup.n_affected = a.at("n_affected").get<std::size_t>();
    setup.t_start = a.value("t_start", setup.t_start);
    setup.cpl = a.value("cpl", setup.cpl);
    setup.magnitude = a.at("magnitude").get<double>();
    if (a.contains("radius_policy")) setup.radius_policy = parse_radius_policy(a.at("radius_policy").get<std::string>());
    s.anomaly = setup;
  }
  check_scenario(s);
  return s;
}

}  // namespace

std::vector<Scenario> parse_scenarios(const std::string& json_text) {
  const json doc = parse_json(json_text, "scenario file");
  std::vector<Scenario> out;
  try {
    const json& list = doc.is_array() ? doc : doc.at("scenarios");
    if (!list.is_array()) throw std::invalid_argument("scenario file: 'scenarios' must be an array");
    std::set<std::string> ids;
    for (const json& entry : list) {
      out.push_back(scenario_from_json(entry));
      if (!ids.insert(out.back().id).second) throw std::invalid_argument("scenario file: duplicate id " + out.back().id);
    }
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("scenario file: ") + e.what());
  }
  if (out.empty()) throw std::invalid_argument("scenario file: no scenarios");
  return out;
}

std::vector<Scenario> load_scenarios(const std::filesystem::path& path) { return parse_scenarios(read_text(path)); }

std::string scenario_to_json(const Scenario& s) {
  json j;
  j["id"] = s.id;
  j["model"] = to_string(s.model);
  j["edge_kind"] = to_string(s.edge_kind);
  j["n"] = s.n;
  j["T"] = s.T;
  j["t1"] = s.t1;
  j["phi"] = s.phi;
  j["target_density"] = s.target_density;
  if (s.a_scale) j["a_scale"] = *s.a_scale;
  j["reps"] = s.reps;
  j["calibration_reps"] = s.calibration_reps;
  j["base_seed"] = s.base_seed;
  j["m"] = s.m;
  j["p"] = s.p_target;
  j["estimator"] = to_string(s.estimator);
  j["prior"] = prior_name(s.prior);
  j["statistics"] = json::array();
  for (StatKind k : s.statistics) j["statistics"].push_back(to_string(k));
  if (s.anomaly) {
    const AnomalySetup& a = *s.anomaly;
    j["anomaly"] = {{"family", to_string(a.family)}, {"profile", to_string(a.profile)},
                    {"n_affected", a.n_affected},   {"t_start", a.t_start},
                    {"cpl", a.cpl},                 {"magnitude", a.magnitude},
                    {"radius_policy", to_string(a.radius_policy)}};
  }
  return j.dump();
}

std::vector<Scenario> expand_full_grid(const Scenario& base) {
  std::vector<Scenario> out;
  const DensityCatalog& cat = DensityCatalog::builtin();
  for (double phi : {0.1, 0.3, 0.5, 0.75, 0.9, 0.95, 0.99}) {
    Scenario s = base;
    std::ostringstream id;
    id << base.id << "_phi" << phi;
    s.id = id.str();
    s.phi = phi;
    s.target_density = cat.sweep_density();
    s.a_scale.reset();
    out.push_back(s);
  }
  for (double d : cat.densities(base.model, base.edge_kind)) {
    Scenario s = base;
    std::ostringstream id;
    id << base.id << "_w" << d;
    s.id = id.str();
    s.phi = 0.5;
    s.target_density = d;
    s.a_scale.reset();
    out.push_back(s);
  }
  return out;
}

DlsmConfig dlsm_config(const Scenario& s, std::uint64_t seed) {
  DlsmConfig cfg = default_dlsm_config(s.phi, s.resolved_a_scale(), s.edge_kind, seed);
  cfg.n = s.n;
  cfg.T = s.T;
  cfg.t1 = s.t1;
  cfg.prior = s.prior;
  return cfg;
}

DdcsbmConfig ddcsbm_config(const Scenario& s, std::uint64_t seed) {
  DdcsbmConfig cfg = default_ddcsbm_config(s.phi, s.resolved_a_scale(), s.edge_kind, seed);
  cfg.n = s.n;
  cfg.T = s.T;
  cfg.t1 = s.t1;
  return cfg;
}

DynamicNetwork generate_network(const Scenario& s, std::uint64_t seed, bool with_anomaly, GenerationStats* stats) {
  std::optional<AnomalySpec> anomaly;
  if (with_anomaly && s.anomaly) anomaly = s.anomaly->spec();
  if (s.model == ModelKind::Dlsm) return generate_dlsm(dlsm_config(s, seed), anomaly, stats);
  return generate_ddcsbm(ddcsbm_config(s, seed), anomaly);
}

std::uint64_t calibration_seed(const Scenario& s, std::size_t r) { return replicate_seed(s.base_seed, s.reps + r); }

namespace {

int thread_count(int jobs) {
#ifdef _OPENMP
  return jobs > 0 ? jobs : omp_get_max_threads();
#else
  (void)jobs;
  return 1;
#endif
}

}  // namespace

std::map<StatKind, std::vector<StatSeries>> null_series(const Scenario& s, std::size_t count, int jobs) {
  check_scenario(s);
  std::vector<std::vector<StatSeries>> per_rep(count);
  std::vector<std::string> errors(count);
  const auto total = static_cast<std::ptrdiff_t>(count);
#pragma omp parallel for schedule(dynamic) num_threads(thread_count(jobs))
  for (std::ptrdiff_t r = 0; r < total; ++r) {
    try {
      const DynamicNetwork net = generate_network(s, calibration_seed(s, static_cast<std::size_t>(r)), false);
      for (StatKind k : s.statistics) per_rep[r].push_back(compute_series(net, k, s.m, Execution::Serial));
    } catch (const std::exception& e) {
      errors[r] = e.what();
    }
  }
  for (const auto& e : errors) {
    if (!e.empty()) throw std::runtime_error("null replicate failed: " + e);
  }
  std::map<StatKind, std::vector<StatSeries>> out;
  for (auto& rep : per_rep) {
    for (auto& series : rep) out[series.kind].push_back(std::move(series));
  }
  return out;
}

std::map<StatKind, CalibrationResult> calibrate_scenario(const Scenario& s, int jobs) {
  const auto series = null_series(s, s.calibration_reps, jobs);
  std::map<StatKind, CalibrationResult> out;
  for (const auto& [kind, reps] : series) out[kind] = calibrate_q(reps, s.t1, s.estimator, s.p_target);
  return out;
}

ScenarioResult run_with_thresholds(const Scenario& s, const std::map<StatKind, double>& q, int jobs) {
  check_scenario(s);
  ScenarioResult result;
  result.scenario = s;
  result.a_scale = s.resolved_a_scale();
  const std::optional<Window> window = s.window();

  const std::size_t n_stats = s.statistics.size();
  std::vector<EvalRecord> records(s.reps * n_stats);
  std::vector<std::size_t> clamps(s.reps, 0), capped(s.reps, 0);
  const auto total = static_cast<std::ptrdiff_t>(s.reps);

#pragma omp parallel for schedule(dynamic) num_threads(thread_count(jobs))
  for (std::ptrdiff_t rr = 0; rr < total; ++rr) {
    const auto r = static_cast<std::size_t>(rr);
    for (std::size_t k = 0; k < n_stats; ++k) {
      EvalRecord& rec = records[r * n_stats + k];
      rec.scenario_id = s.id;
      rec.replicate = r;
      rec.statistic = s.statistics[k];
    }
    try {
      GenerationStats gen;
      const DynamicNetwork net = generate_network(s, replicate_seed(s.base_seed, r), true, &gen);
      capped[r] = gen.clamped_rates;
      for (std::size_t k = 0; k < n_stats; ++k) {
        EvalRecord& rec = records[r * n_stats + k];
        try {
          const StatSeries series = compute_series(net, rec.statistic, s.m, Execution::Serial);
          const ChartState chart = chart_for(series, s.t1, s.estimator, q.at(rec.statistic));
          if (rec.statistic != StatKind::Scan && s.estimator == SigmaEstimator::CorrSD &&
              corrected_sd(phase_one(series, s.t1)).clamped) {
            ++clamps[r];
          }
          const SignalStream signals = monitor(series, chart, s.t1);
          rec.far = false_alarm_rate(signals, window);
          if (window) {
            rec.dr = detection_rate(signals, *window);
            rec.auc = roc_auc(series, chart, s.t1, *window);
          }
        } catch (const std::exception& e) {
          rec.error = e.what();
        }
      }
    } catch (const std::exception& e) {
      for (std::size_t k = 0; k < n_stats; ++k) records[r * n_stats + k].error = e.what();
    }
  }

  for (std::size_t r = 0; r < s.reps; ++r) {
    result.gamma_clamps += clamps[r];
    result.clamped_rates += capped[r];
  }
  result.records = std::move(records);
  result.summary = aggregate(result.records);
  return result;
}

ScenarioResult run_scenario(const Scenario& s, int jobs) {
  check_scenario(s);
  auto calibration = calibrate_scenario(s, jobs);
  std::map<StatKind, double> q;
  for (const auto& [kind, cal] : calibration) q[kind] = cal.q;
  ScenarioResult result = run_with_thresholds(s, q, jobs);
  result.calibration = std::move(calibration);
  return result;
}

std::string result_metadata_json(const ScenarioResult& result) {
  json j;
  j["scenario"] = json::parse(scenario_to_json(result.scenario));
  j["a_scale"] = result.a_scale;
  j["gamma1_clamped_fits"] = result.gamma_clamps;
  j["clamped_poisson_rates"] = result.clamped_rates;
  j["calibration"] = json::object();
  for (const auto& [kind, cal] : result.calibration) {
    j["calibration"][to_string(kind)] = {{"q", cal.q}, {"far", cal.far}};
  }
  std::size_t failed = 0;
  for (const auto& rec : result.records) failed += rec.error.empty() ? 0 : 1;
  j["failed_records"] = failed;
  return j.dump(2);
}

}  // namespace netmon
