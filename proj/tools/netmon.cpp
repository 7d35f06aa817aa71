// netmon: generate dynamic networks, compute monitoring statistics, run
// control charts and Monte Carlo scenario suites.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "netmon/eval.hpp"
#include "netmon/monitor.hpp"
#include "netmon/network.hpp"
#include "netmon/scenario.hpp"
#include "netmon/statistics.hpp"

namespace fs = std::filesystem;
using namespace netmon;

namespace {

enum ExitCode { kOk = 0, kUsage = 2, kSchema = 3, kRuntime = 4 };

void report_error(const char* kind, const std::string& message) {
  nlohmann::json err{{"error", kind}, {"message", message}};
  std::cerr << err.dump() << '\n';
}

/// Writes to the named file, or stdout for "-".
class Output {
 public:
  explicit Output(const std::string& path) {
    if (path != "-") {
      file_.open(path);
      if (!file_) throw std::ios_base::failure("cannot write '" + path + "'");
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

std::uint64_t seed_override(std::uint64_t fallback) {
  const char* env = std::getenv("NETMON_SEED");
  if (!env || !*env) return fallback;
  try {
    std::size_t used = 0;
    const auto v = std::stoull(env, &used);
    if (used != std::string(env).size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::logic_error&) {
    throw std::invalid_argument(std::string("NETMON_SEED is not an unsigned integer: ") + env);
  }
}

std::vector<StatKind> parse_stats(const std::vector<std::string>& names) {
  std::vector<StatKind> out;
  for (const auto& name : names) {
    if (name == "all") {
      out.assign(std::begin(kAllStats), std::end(kAllStats));
      return out;
    }
    out.push_back(parse_stat_kind(name));
  }
  return out;
}

std::string read_first_line(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::ios_base::failure("cannot open '" + path + "'");
  std::string line;
  std::getline(in, line);
  return line;
}

struct GenerateArgs {
  std::string model, kind, out = "-", prior = "var1";
  double phi = 0.5, density = 0.11;
  std::optional<double> a_scale;
  std::uint64_t seed = 1;
  std::size_t n = 100, T = 110, t1 = 50;
  std::string anomaly = "none", profile = "sustained", radius_policy = "proportional";
  std::size_t affected = 0, t_start = 61, cpl = 10;
  double magnitude = 1.0;
};

int cmd_generate(const GenerateArgs& a) {
  Scenario s;
  s.id = "generate";
  s.model = parse_model_kind(a.model);
  s.edge_kind = parse_edge_kind(a.kind);
  s.phi = a.phi;
  s.target_density = a.density;
  s.a_scale = a.a_scale;
  s.n = a.n;
  s.T = a.T;
  s.t1 = a.t1;
  s.statistics = {StatKind::Density};
  if (a.prior == "random_walk") s.prior = LatentPrior::OriginalRandomWalk;
  else if (a.prior != "var1") throw std::invalid_argument("unknown prior '" + a.prior + "' (var1|random_walk)");
  if (a.anomaly != "none") {
    AnomalySetup setup;
    setup.family = parse_anomaly_family(a.anomaly);
    setup.profile = parse_anomaly_profile(a.profile);
    setup.n_affected = a.affected;
    setup.t_start = a.t_start;
    setup.cpl = a.cpl;
    setup.magnitude = a.magnitude;
    setup.radius_policy = parse_radius_policy(a.radius_policy);
    s.anomaly = setup;
  }
  check_scenario(s);
  GenerationStats stats;
  const DynamicNetwork net = generate_network(s, seed_override(a.seed), true, &stats);
  Output out(a.out);
  write_edge_list(net, out.stream());
  if (stats.clamped_rates > 0) {
    std::cerr << "warning: " << stats.clamped_rates << " Poisson rates capped at exp(" << kMaxLogRate << ")\n";
  }
  return kOk;
}

int cmd_stats(const std::string& in, const std::vector<std::string>& stat_names, std::size_t m,
              const std::string& out_path) {
  const DynamicNetwork net = read_edge_list_file(in);
  std::vector<StatSeries> series;
  for (StatKind k : parse_stats(stat_names)) series.push_back(compute_series(net, k, m, Execution::Serial));
  Output out(out_path);
  write_series_csv(series, out.stream());
  return kOk;
}

/// q closest to p in a calibration CSV, ties toward larger q.
double q_from_calibration(const std::string& path, StatKind kind, SigmaEstimator estimator, double p) {
  std::ifstream in(path);
  if (!in) throw std::ios_base::failure("cannot open '" + path + "'");
  std::string line;
  std::getline(in, line);
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "statistic,estimator,q,far") throw std::invalid_argument("calibration csv: expected header statistic,estimator,q,far");
  std::optional<double> best_q;
  double best_gap = 2.0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string stat, est, q_text, far_text;
    if (!std::getline(ss, stat, ',') || !std::getline(ss, est, ',') || !std::getline(ss, q_text, ',') ||
        !std::getline(ss, far_text)) {
      throw std::invalid_argument("calibration csv: malformed line '" + line + "'");
    }
    if (parse_stat_kind(stat) != kind || parse_sigma_estimator(est) != estimator) continue;
    const double q = std::stod(q_text);
    const double gap = std::abs(std::stod(far_text) - p);
    if (gap < best_gap || (gap == best_gap && q > *best_q)) {
      best_gap = gap;
      best_q = q;
    }
  }
  if (!best_q) {
    throw std::invalid_argument("calibration csv has no rows for " + to_string(kind) + "/" + to_string(estimator));
  }
  return *best_q;
}

struct MonitorArgs {
  std::string in, out = "-", estimator = "sd", calibration;
  std::vector<std::string> stats{"all"};
  std::optional<double> q, p;
  std::size_t m = 20, t1 = 50;
};

int cmd_monitor(const MonitorArgs& a) {
  if (a.q.has_value() == a.p.has_value()) throw CLI::ValidationError("monitor", "exactly one of --q and --p is required");
  if (a.p && a.calibration.empty()) throw CLI::ValidationError("--p", "--p needs --calibration FILE");
  const SigmaEstimator estimator = parse_sigma_estimator(a.estimator);

  std::vector<StatSeries> series;
  std::size_t t1 = a.t1;
  if (read_first_line(a.in).rfind("t,name,value", 0) == 0) {
    std::ifstream in(a.in);
    const auto wanted = parse_stats(a.stats);
    for (auto& s : read_series_csv(in)) {
      if (std::find(wanted.begin(), wanted.end(), s.kind) != wanted.end()) series.push_back(std::move(s));
    }
  } else {
    const DynamicNetwork net = read_edge_list_file(a.in);
    t1 = net.t1;
    for (StatKind k : parse_stats(a.stats)) series.push_back(compute_series(net, k, a.m, Execution::Serial));
  }

  Output out(a.out);
  std::ostream& os = out.stream();
  os << "t,statistic,value,lower,upper,signal\n";
  os.precision(17);
  for (const auto& s : series) {
    const double q = a.q ? *a.q : q_from_calibration(a.calibration, s.kind, estimator, *a.p);
    const ChartState chart = chart_for(s, t1, estimator, q);
    const SignalStream signals = monitor(s, chart, t1);
    for (std::size_t t = signals.first; t <= signals.last(); ++t) {
      os << t << ',' << to_string(s.kind) << ',' << s.values[t - 1] << ',';
      if (chart.two_sided) os << chart.lower();
      os << ',' << chart.upper() << ',' << (signals.at(t) ? 1 : 0) << '\n';
    }
  }
  return kOk;
}

std::vector<Scenario> scenarios_from(const std::string& path, const std::string& id) {
  auto all = load_scenarios(path);
  for (auto& s : all) s.base_seed = seed_override(s.base_seed);
  if (id.empty()) return all;
  for (const auto& s : all) {
    if (s.id == id) return {s};
  }
  throw std::invalid_argument("no scenario with id '" + id + "' in " + path);
}

int cmd_calibrate(const std::string& scenario_path, const std::string& id, std::optional<double> p,
                  std::optional<std::size_t> reps, int jobs, const std::string& out_path) {
  Output out(out_path);
  bool header = true;
  for (Scenario s : scenarios_from(scenario_path, id)) {
    if (p) s.p_target = *p;
    if (reps) s.calibration_reps = *reps;
    check_scenario(s);
    for (const auto& [kind, result] : calibrate_scenario(s, jobs)) {
      write_calibration_csv(kind, s.estimator, result, out.stream(), header);
      header = false;
      std::cerr << s.id << ' ' << to_string(kind) << ": q=" << result.q << " far=" << result.far << '\n';
    }
  }
  return kOk;
}

int cmd_run(const std::string& scenario_path, const std::string& out_dir, int jobs, bool full) {
  std::vector<Scenario> scenarios;
  for (const auto& s : scenarios_from(scenario_path, "")) {
    if (full) {
      for (auto& cell : expand_full_grid(s)) scenarios.push_back(cell);
    } else {
      scenarios.push_back(s);
    }
  }
  fs::create_directories(out_dir);
  std::ofstream results(fs::path(out_dir) / "results.csv"), summary(fs::path(out_dir) / "summary.csv"),
      calibration(fs::path(out_dir) / "calibration.csv"), metadata(fs::path(out_dir) / "metadata.json");
  if (!results || !summary || !calibration || !metadata) throw std::ios_base::failure("cannot write into '" + out_dir + "'");

  nlohmann::json meta = nlohmann::json::array();
  bool header = true;
  for (const auto& s : scenarios) {
    const ScenarioResult r = run_scenario(s, jobs);
    write_results_csv(r.records, results, header);
    write_summary_csv(r.summary, summary, header);
    bool cal_header = header;
    for (const auto& [kind, cal] : r.calibration) {
      write_calibration_csv(kind, s.estimator, cal, calibration, cal_header);
      cal_header = false;
    }
    header = false;
    meta.push_back(nlohmann::json::parse(result_metadata_json(r)));
    std::cerr << "finished " << s.id << '\n';
  }
  metadata << meta.dump(2) << '\n';
  return kOk;
}

int cmd_report(const std::string& dir, const std::string& table, const std::string& out_path) {
  if (table != "dr" && table != "auc" && table != "far") throw CLI::ValidationError("--table", "must be dr, auc or far");
  const fs::path path = fs::path(dir) / "summary.csv";
  std::ifstream in(path);
  if (!in) throw std::ios_base::failure("cannot open '" + path.string() + "'");
  const auto rows = read_summary_csv(in);

  std::vector<std::string> ids;
  std::vector<StatKind> stats;
  std::map<std::pair<std::string, StatKind>, std::optional<double>> cells;
  for (const auto& r : rows) {
    if (std::find(ids.begin(), ids.end(), r.scenario_id) == ids.end()) ids.push_back(r.scenario_id);
    if (std::find(stats.begin(), stats.end(), r.statistic) == stats.end()) stats.push_back(r.statistic);
    cells[{r.scenario_id, r.statistic}] = table == "dr" ? r.mean_dr : (table == "auc" ? r.mean_auc : r.mean_far);
  }

  Output out(out_path);
  std::ostream& os = out.stream();
  os << "scenario_id";
  for (StatKind k : stats) os << ',' << to_string(k);
  os << '\n' << std::fixed << std::setprecision(3);
  for (const auto& id : ids) {
    os << id;
    for (StatKind k : stats) {
      os << ',';
      auto it = cells.find({id, k});
      if (it != cells.end() && it->second) os << *it->second;
    }
    os << '\n';
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Anomaly monitoring for dynamic networks"};
  app.require_subcommand(1);

  GenerateArgs gen;
  auto* generate = app.add_subcommand("generate", "Simulate a dynamic network and write it as an edge list");
  generate->add_option("--model", gen.model, "dlsm or ddcsbm")->required();
  generate->add_option("--kind", gen.kind, "binary or count")->required();
  generate->add_option("--phi", gen.phi, "Temporal correlation")->capture_default_str();
  generate->add_option("--density", gen.density, "Target mean density (catalog column)")->capture_default_str();
  generate->add_option("--a-scale", gen.a_scale, "Density scale a, overriding the catalog");
  generate->add_option("--seed", gen.seed, "RNG seed (NETMON_SEED overrides)")->capture_default_str();
  generate->add_option("--n", gen.n, "Nodes")->capture_default_str();
  generate->add_option("--T", gen.T, "Time points")->capture_default_str();
  generate->add_option("--t1", gen.t1, "Last Phase I time point")->capture_default_str();
  generate->add_option("--prior", gen.prior, "Latent prior: var1 or random_walk")->capture_default_str();
  generate->add_option("--anomaly", gen.anomaly, "none, odds_ratio or degree")->capture_default_str();
  generate->add_option("--profile", gen.profile, "sustained or gradual")->capture_default_str();
  generate->add_option("--affected", gen.affected, "Number of affected nodes (the first N)")->capture_default_str();
  generate->add_option("--magnitude", gen.magnitude, "Odds ratio, new radius or propensity multiplier")->capture_default_str();
  generate->add_option("--t-start", gen.t_start, "First anomalous time point")->capture_default_str();
  generate->add_option("--cpl", gen.cpl, "Number of anomalous time points")->capture_default_str();
  generate->add_option("--radius-policy", gen.radius_policy, "proportional, rescale_rest or fixed")->capture_default_str();
  generate->add_option("--out", gen.out, "Output file, - for stdout")->capture_default_str();

  std::string stats_in, stats_out = "-";
  std::vector<std::string> stats_names{"all"};
  std::size_t stats_m = 20;
  auto* stats = app.add_subcommand("stats", "Compute statistic series from an edge list");
  stats->add_option("--in", stats_in, "Edge-list file")->required();
  stats->add_option("--stat", stats_names, "density, max_degree, diff, sum, scan or all (repeatable)")->capture_default_str();
  stats->add_option("--m", stats_m, "Scan window")->capture_default_str();
  stats->add_option("--out", stats_out, "Output CSV, - for stdout")->capture_default_str();

  MonitorArgs mon;
  auto* monitor_cmd = app.add_subcommand("monitor", "Apply control charts to an edge list or a statistics CSV");
  monitor_cmd->add_option("--in", mon.in, "Edge-list file or statistics CSV")->required();
  monitor_cmd->add_option("--stat", mon.stats, "Statistics to monitor (repeatable)")->capture_default_str();
  monitor_cmd->add_option("--estimator", mon.estimator, "Sigma estimator: amr, mmr or sd")->capture_default_str();
  monitor_cmd->add_option("--q", mon.q, "Threshold multiplier");
  monitor_cmd->add_option("--p", mon.p, "Target false alarm rate; q is read from --calibration");
  monitor_cmd->add_option("--calibration", mon.calibration, "Calibration CSV from the calibrate command");
  monitor_cmd->add_option("--m", mon.m, "Scan window")->capture_default_str();
  monitor_cmd->add_option("--t1", mon.t1, "Last Phase I time point for statistics CSV input")->capture_default_str();
  monitor_cmd->add_option("--out", mon.out, "Output CSV, - for stdout")->capture_default_str();

  std::string cal_scenarios, cal_id, cal_out = "-";
  std::optional<double> cal_p;
  std::optional<std::size_t> cal_reps;
  int cal_jobs = 0;
  auto* calibrate = app.add_subcommand("calibrate", "Calibrate q on null replicates of a scenario");
  calibrate->add_option("--scenario", cal_scenarios, "Scenario file")->required();
  calibrate->add_option("--id", cal_id, "Only this scenario id");
  calibrate->add_option("--p", cal_p, "Target false alarm rate (default from the scenario)");
  calibrate->add_option("--reps", cal_reps, "Null replicates (default from the scenario)");
  calibrate->add_option("--jobs", cal_jobs, "Worker threads, 0 for all")->capture_default_str();
  calibrate->add_option("--out", cal_out, "Output CSV, - for stdout")->capture_default_str();

  std::string run_scenarios, run_out;
  int run_jobs = 0;
  bool run_full = false;
  auto* run = app.add_subcommand("run", "Run Monte Carlo scenarios");
  run->add_option("--scenarios", run_scenarios, "Scenario file")->required();
  run->add_option("--out", run_out, "Output directory")->required();
  run->add_option("--jobs", run_jobs, "Worker threads, 0 for all")->capture_default_str();
  run->add_flag("--full", run_full, "Expand every scenario over the full phi and density grid");

  std::string rep_dir, rep_table, rep_out = "-";
  auto* report = app.add_subcommand("report", "Tabulate a summary CSV by scenario and statistic");
  report->add_option("--results", rep_dir, "Directory written by run")->required();
  report->add_option("--table", rep_table, "dr, auc or far")->required();
  report->add_option("--out", rep_out, "Output CSV, - for stdout")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    report_error("usage", e.what());
    return kUsage;
  }

  try {
    if (*generate) return cmd_generate(gen);
    if (*stats) return cmd_stats(stats_in, stats_names, stats_m, stats_out);
    if (*monitor_cmd) return cmd_monitor(mon);
    if (*calibrate) return cmd_calibrate(cal_scenarios, cal_id, cal_p, cal_reps, cal_jobs, cal_out);
    if (*run) return cmd_run(run_scenarios, run_out, run_jobs, run_full);
    if (*report) return cmd_report(rep_dir, rep_table, rep_out);
  } catch (const CLI::ParseError& e) {
    report_error("usage", e.what());
    return kUsage;
  } catch (const EdgeListError& e) {
    report_error("schema", e.what());
    return kSchema;
  } catch (const std::ios_base::failure& e) {
    report_error("io", e.what());
    return kRuntime;
  } catch (const std::invalid_argument& e) {
    report_error("schema", e.what());
    return kSchema;
  } catch (const std::out_of_range& e) {
    report_error("schema", e.what());
    return kSchema;
  } catch (const std::exception& e) {
    report_error("runtime", e.what());
    return kRuntime;
  }
  return kUsage;
}
