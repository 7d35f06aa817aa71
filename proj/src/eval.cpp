#include "netmon/eval.hpp"

#include <algorithm>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <tuple>

namespace netmon {

int detection_rate(const SignalStream& signals, const Window& window) {
  if (window.empty()) throw std::invalid_argument("detection_rate: empty anomaly window");
  for (std::size_t t = window.start; t <= window.end; ++t) {
    if (signals.at(t)) return 1;
  }
  return 0;
}

double false_alarm_rate(const SignalStream& signals, const std::optional<Window>& window) {
  std::size_t hits = 0, scored = 0;
  for (std::size_t k = 0; k < signals.flags.size(); ++k) {
    const std::size_t t = signals.first + k;
    if (window && window->contains(t)) continue;
    ++scored;
    hits += signals.flags[k] ? 1 : 0;
  }
  if (scored == 0) throw std::invalid_argument("false_alarm_rate: no scored times outside the window");
  return static_cast<double>(hits) / static_cast<double>(scored);
}

std::vector<RocPoint> roc_curve(const StatSeries& series, const ChartState& chart, std::size_t t1,
                                const Window& window) {
  const std::size_t first = scoring_start(series, t1);
  std::vector<double> pos, neg;
  for (std::size_t t = first; t <= series.length(); ++t) {
    (window.contains(t) ? pos : neg).push_back(series.values[t - 1]);
  }
  if (pos.empty() || neg.empty()) {
    throw std::invalid_argument("roc: window must leave both anomalous and normal scored times");
  }

  std::vector<RocPoint> curve{{0.0, 0.0}, {1.0, 1.0}};
  ChartState rule = chart;
  auto share = [&rule](const std::vector<double>& xs) {
    std::size_t hits = 0;
    for (double x : xs) hits += rule.signals(x) ? 1 : 0;
    return static_cast<double>(hits) / static_cast<double>(xs.size());
  };
  for (std::size_t k = 0; k <= kRocSteps; ++k) {
    rule.q = kRocMinQ + static_cast<double>(k) * kRocStep;
    curve.push_back({share(neg), share(pos)});
  }
  std::sort(curve.begin(), curve.end(), [](const RocPoint& a, const RocPoint& b) {
    return std::tie(a.fpr, a.tpr) < std::tie(b.fpr, b.tpr);
  });
  return curve;
}

double trapezoid_area(const std::vector<RocPoint>& curve) {
  double area = 0.0;
  for (std::size_t k = 1; k < curve.size(); ++k) {
    area += (curve[k].fpr - curve[k - 1].fpr) * (curve[k].tpr + curve[k - 1].tpr) / 2.0;
  }
  return area;
}

double roc_auc(const StatSeries& series, const ChartState& chart, std::size_t t1, const Window& window) {
  return trapezoid_area(roc_curve(series, chart, t1, window));
}

std::vector<SummaryRow> aggregate(const std::vector<EvalRecord>& records) {
  struct Acc {
    double dr = 0, auc = 0, far = 0;
    std::size_t n_dr = 0, n_auc = 0, n_far = 0, n = 0;
  };
  std::vector<StatKind> order;
  std::map<StatKind, Acc> acc;
  for (const auto& r : records) {
    if (r.scenario_id != records.front().scenario_id) throw std::invalid_argument("aggregate: records mix scenarios");
    if (!acc.count(r.statistic)) order.push_back(r.statistic);
    Acc& a = acc[r.statistic];
    if (!r.error.empty()) continue;
    ++a.n;
    if (r.dr) { a.dr += *r.dr; ++a.n_dr; }
    if (r.auc) { a.auc += *r.auc; ++a.n_auc; }
    if (r.far) { a.far += *r.far; ++a.n_far; }
  }
  std::vector<SummaryRow> rows;
  for (StatKind k : order) {
    const Acc& a = acc[k];
    SummaryRow row;
    row.scenario_id = records.front().scenario_id;
    row.statistic = k;
    row.n_reps = a.n;
    if (a.n_dr) row.mean_dr = a.dr / static_cast<double>(a.n_dr);
    if (a.n_auc) row.mean_auc = a.auc / static_cast<double>(a.n_auc);
    if (a.n_far) row.mean_far = a.far / static_cast<double>(a.n_far);
    rows.push_back(row);
  }
  return rows;
}

namespace {

std::string clean_field(std::string text) {
  std::replace(text.begin(), text.end(), ',', ';');
  std::replace(text.begin(), text.end(), '\n', ' ');
  return text;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> fields;
  std::stringstream ss(line);
  std::string f;
  while (std::getline(ss, f, ',')) fields.push_back(f);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

void expect_header(std::istream& in, const std::string& header) {
  std::string line;
  if (!std::getline(in, line)) throw std::invalid_argument("csv: empty input, expected header " + header);
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != header) throw std::invalid_argument("csv: expected header " + header);
}

std::optional<double> optional_field(const std::string& text) {
  if (text.empty()) return std::nullopt;
  return std::stod(text);
}

}  // namespace

void write_results_csv(const std::vector<EvalRecord>& records, std::ostream& out, bool header) {
  if (header) out << "scenario_id,replicate,statistic,metric,value\n";
  out.precision(17);
  for (const auto& r : records) {
    const std::string prefix = r.scenario_id + ',' + std::to_string(r.replicate) + ',' + to_string(r.statistic) + ',';
    if (!r.error.empty()) {
      out << prefix << "error," << clean_field(r.error) << '\n';
      continue;
    }
    if (r.dr) out << prefix << "dr," << *r.dr << '\n';
    if (r.auc) out << prefix << "auc," << *r.auc << '\n';
    if (r.far) out << prefix << "far," << *r.far << '\n';
  }
}

std::vector<EvalRecord> read_results_csv(std::istream& in) {
  expect_header(in, "scenario_id,replicate,statistic,metric,value");
  std::vector<EvalRecord> records;
  std::map<std::tuple<std::string, std::size_t, StatKind>, std::size_t> index;
  std::string line;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto f = split_csv(line);
    if (f.size() != 5) throw std::invalid_argument("results csv: malformed line " + std::to_string(lineno));
    try {
      const auto key = std::make_tuple(f[0], static_cast<std::size_t>(std::stoul(f[1])), parse_stat_kind(f[2]));
      auto [it, fresh] = index.try_emplace(key, records.size());
      if (fresh) {
        EvalRecord r;
        r.scenario_id = f[0];
        r.replicate = std::get<1>(key);
        r.statistic = std::get<2>(key);
        records.push_back(r);
      }
      EvalRecord& r = records[it->second];
      if (f[3] == "dr") r.dr = std::stoi(f[4]);
      else if (f[3] == "auc") r.auc = std::stod(f[4]);
      else if (f[3] == "far") r.far = std::stod(f[4]);
      else if (f[3] == "error") r.error = f[4].empty() ? "error" : f[4];
      else throw std::invalid_argument("unknown metric");
    } catch (const std::logic_error&) {
      throw std::invalid_argument("results csv: malformed line " + std::to_string(lineno));
    }
  }
  return records;
}

void write_summary_csv(const std::vector<SummaryRow>& rows, std::ostream& out, bool header) {
  if (header) out << "scenario_id,statistic,mean_dr,mean_auc,mean_far,n_reps\n";
  out.precision(17);
  auto opt = [&out](const std::optional<double>& v) {
    if (v) out << *v;
  };
  for (const auto& r : rows) {
    out << r.scenario_id << ',' << to_string(r.statistic) << ',';
    opt(r.mean_dr);
    out << ',';
    opt(r.mean_auc);
    out << ',';
    opt(r.mean_far);
    out << ',' << r.n_reps << '\n';
  }
}

std::vector<SummaryRow> read_summary_csv(std::istream& in) {
  expect_header(in, "scenario_id,statistic,mean_dr,mean_auc,mean_far,n_reps");
  std::vector<SummaryRow> rows;
  std::string line;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto f = split_csv(line);
    if (f.size() != 6) throw std::invalid_argument("summary csv: malformed line " + std::to_string(lineno));
    try {
      SummaryRow r;
      r.scenario_id = f[0];
      r.statistic = parse_stat_kind(f[1]);
      r.mean_dr = optional_field(f[2]);
      r.mean_auc = optional_field(f[3]);
      r.mean_far = optional_field(f[4]);
      r.n_reps = std::stoul(f[5]);
      rows.push_back(r);
    } catch (const std::logic_error&) {
      throw std::invalid_argument("summary csv: malformed line " + std::to_string(lineno));
    }
  }
  return rows;
}

}  // namespace netmon
