#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "netmon/monitor.hpp"
#include "netmon/statistics.hpp"

namespace netmon {

/// Inclusive range of anomalous times.
struct Window {
  std::size_t start = 0;
  std::size_t end = 0;

  bool empty() const { return end < start; }
  bool contains(std::size_t t) const { return t >= start && t <= end; }
};

/// 1 when any signal falls inside the window, 0 otherwise.
int detection_rate(const SignalStream& signals, const Window& window);

/// Signals outside the window over scored times outside the window.
double false_alarm_rate(const SignalStream& signals, const std::optional<Window>& window = std::nullopt);

struct RocPoint {
  double fpr;
  double tpr;
};

inline constexpr double kRocMinQ = -6.0;
inline constexpr double kRocStep = 0.05;
inline constexpr std::size_t kRocSteps = 240;  // q from -6 to 6

/// ROC points over the q grid plus the (0,0) and (1,1) anchors, sorted by
/// FPR and then TPR. `chart` supplies mu, sigma and the sidedness; its q is
/// ignored.
std::vector<RocPoint> roc_curve(const StatSeries& series, const ChartState& chart, std::size_t t1,
                                const Window& window);

/// Trapezoid area under a sorted curve.
double trapezoid_area(const std::vector<RocPoint>& curve);

double roc_auc(const StatSeries& series, const ChartState& chart, std::size_t t1, const Window& window);

struct EvalRecord {
  std::string scenario_id;
  std::size_t replicate = 0;
  StatKind statistic = StatKind::Density;
  std::optional<int> dr;
  std::optional<double> auc;
  std::optional<double> far;
  std::string error;  // non-empty when the replicate failed
};

struct SummaryRow {
  std::string scenario_id;
  StatKind statistic = StatKind::Density;
  std::optional<double> mean_dr;
  std::optional<double> mean_auc;
  std::optional<double> mean_far;
  std::size_t n_reps = 0;
};

/// Per-statistic means over successful records, in the order statistics
/// first appear. Throws if the records mix scenarios.
std::vector<SummaryRow> aggregate(const std::vector<EvalRecord>& records);

/// Long format `scenario_id,replicate,statistic,metric,value`. Failed
/// replicates are written with metric `error` and the message as value.
void write_results_csv(const std::vector<EvalRecord>& records, std::ostream& out, bool header = true);
std::vector<EvalRecord> read_results_csv(std::istream& in);

/// `scenario_id,statistic,mean_dr,mean_auc,mean_far,n_reps`; missing means
/// are written as empty fields.
void write_summary_csv(const std::vector<SummaryRow>& rows, std::ostream& out, bool header = true);
std::vector<SummaryRow> read_summary_csv(std::istream& in);

}  // namespace netmon
