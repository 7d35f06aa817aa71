#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "netmon/statistics.hpp"

namespace netmon {

enum class SigmaEstimator { AMR, MMR, CorrSD };

std::string to_string(SigmaEstimator estimator);
SigmaEstimator parse_sigma_estimator(const std::string& text);

inline constexpr double kD2 = 1.13;
inline constexpr double kMedianMrFactor = 1.047;
inline constexpr double kGammaMin = 0.05;

/// Average moving range over d2.
double sigma_amr(std::span<const double> x);

/// Median moving range times 1.047.
double sigma_mmr(std::span<const double> x);

/// Sample autocorrelations rho_1..rho_max_lag with the biased (denominator n)
/// autocovariance. A constant series has no defined correlation; all zeros
/// are returned in that case.
std::vector<double> sample_acf(std::span<const double> x, std::size_t max_lag);

struct CorrectedSd {
  double sigma = 0.0;
  double gamma1 = 1.0;
  bool clamped = false;  // gamma1 fell to or below kGammaMin and was raised to it
};

/// s = sqrt(s^2 / gamma1), gamma1 = 1 - 2/(n-1) * sum_k (1 - k/n) rho_k over
/// all lags 1..n-1, with n the series length.
CorrectedSd corrected_sd(std::span<const double> x);
double sigma_corr(std::span<const double> x);

double estimate_sigma(SigmaEstimator estimator, std::span<const double> x);

/// Control limits mu +/- q sigma. One-sided charts only have the upper limit.
struct ChartState {
  double mu_hat = 0.0;
  double sigma_hat = 0.0;
  double q = 3.0;
  bool two_sided = true;

  double upper() const { return mu_hat + q * sigma_hat; }
  double lower() const { return mu_hat - q * sigma_hat; }
  bool signals(double x) const { return x > upper() || (two_sided && x < lower()); }
};

/// The scan rule S*_t > q written as a one-sided chart with mu 0 and sigma 1.
inline ChartState scan_chart(double q) { return {0.0, 1.0, q, false}; }

/// Phase I values of `series`: defined entries with t <= t1.
std::vector<double> phase_one(const StatSeries& series, std::size_t t1);

/// Two-sided chart fit on Phase I.
ChartState fit_chart(const StatSeries& series, std::size_t t1, SigmaEstimator estimator, double q);

/// Chart used to monitor a statistic: fitted Shewhart limits for the summary
/// statistics, the fixed scan threshold otherwise.
ChartState chart_for(const StatSeries& series, std::size_t t1, SigmaEstimator estimator, double q);

/// First scored time: t1 + 1, or 2m + 1 for the scan statistic when later.
std::size_t scoring_start(const StatSeries& series, std::size_t t1);

/// A_t for t = first..last.
struct SignalStream {
  std::size_t first = 1;
  std::vector<char> flags;

  std::size_t last() const { return first + flags.size() - 1; }
  bool covers(std::size_t t) const { return t >= first && t < first + flags.size(); }
  bool at(std::size_t t) const { return covers(t) && flags[t - first] != 0; }
  std::size_t count() const;
};

/// Applies `chart` to every scored time (t > t1 and, for scan, t > 2m).
SignalStream monitor(const StatSeries& series, const ChartState& chart, std::size_t t1);

SignalStream shewhart_monitor(const StatSeries& series, const ChartState& chart, std::size_t t1);
SignalStream scan_monitor(const StatSeries& series, double q, std::size_t t1);

inline constexpr double kCalibrationStep = 0.05;
inline constexpr std::size_t kCalibrationSteps = 120;  // q from 0 to 6

struct CalibrationPoint {
  double q;
  double far;
};

struct CalibrationResult {
  double q = 0.0;
  double far = 0.0;
  std::vector<CalibrationPoint> grid;
};

/// Share of scored null times above the upper limit, pooled over replicates.
/// Each summary-statistic replicate uses a chart fitted on its own Phase I.
double upper_false_alarm_rate(const std::vector<StatSeries>& null_replicates, std::size_t t1,
                              SigmaEstimator estimator, double q);

/// Grid search over q = 0, 0.05, ..., 6 minimizing |FAR(q) - p_target|; ties
/// go to the larger q.
CalibrationResult calibrate_q(const std::vector<StatSeries>& null_replicates, std::size_t t1,
                              SigmaEstimator estimator, double p_target);

/// Rows `statistic,estimator,q,far`, one per grid point.
void write_calibration_csv(StatKind kind, SigmaEstimator estimator, const CalibrationResult& result,
                           std::ostream& out, bool header = true);

}  // namespace netmon
