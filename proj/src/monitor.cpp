#include "netmon/monitor.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <stdexcept>

namespace netmon {

std::string to_string(SigmaEstimator estimator) {
  switch (estimator) {
    case SigmaEstimator::AMR: return "amr";
    case SigmaEstimator::MMR: return "mmr";
    case SigmaEstimator::CorrSD: return "sd";
  }
  return "unknown";
}

SigmaEstimator parse_sigma_estimator(const std::string& text) {
  if (text == "amr") return SigmaEstimator::AMR;
  if (text == "mmr") return SigmaEstimator::MMR;
  if (text == "sd" || text == "corr_sd") return SigmaEstimator::CorrSD;
  throw std::invalid_argument("unknown sigma estimator '" + text + "' (amr|mmr|sd)");
}

namespace {

std::vector<double> moving_ranges(std::span<const double> x) {
  if (x.size() < 2) throw std::invalid_argument("moving range needs at least two observations");
  std::vector<double> mr(x.size() - 1);
  for (std::size_t t = 1; t < x.size(); ++t) mr[t - 1] = std::abs(x[t] - x[t - 1]);
  return mr;
}

double mean_of(std::span<const double> x) {
  return std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size());
}

}  // namespace

double sigma_amr(std::span<const double> x) {
  const auto mr = moving_ranges(x);
  return mean_of(mr) / kD2;
}

double sigma_mmr(std::span<const double> x) {
  auto mr = moving_ranges(x);
  const std::size_t mid = mr.size() / 2;
  std::nth_element(mr.begin(), mr.begin() + static_cast<std::ptrdiff_t>(mid), mr.end());
  double median = mr[mid];
  if (mr.size() % 2 == 0) {
    median = (median + *std::max_element(mr.begin(), mr.begin() + static_cast<std::ptrdiff_t>(mid))) / 2.0;
  }
  return median * kMedianMrFactor;
}

std::vector<double> sample_acf(std::span<const double> x, std::size_t max_lag) {
  const std::size_t n = x.size();
  if (max_lag >= n) throw std::invalid_argument("sample_acf: lag must be below the series length");
  const double mean = mean_of(x);
  double c0 = 0.0;
  for (double v : x) c0 += (v - mean) * (v - mean);
  std::vector<double> rho(max_lag, 0.0);
  if (c0 == 0.0) return rho;
  for (std::size_t k = 1; k <= max_lag; ++k) {
    double ck = 0.0;
    for (std::size_t t = k; t < n; ++t) ck += (x[t] - mean) * (x[t - k] - mean);
    rho[k - 1] = ck / c0;
  }
  return rho;
}

CorrectedSd corrected_sd(std::span<const double> x) {
  const std::size_t n = x.size();
  if (n < 3) throw std::invalid_argument("corrected sd needs at least three observations");
  const double mean = mean_of(x);
  double ss = 0.0;
  for (double v : x) ss += (v - mean) * (v - mean);
  const double s2 = ss / static_cast<double>(n - 1);

  const auto rho = sample_acf(x, n - 1);
  double weighted = 0.0;
  for (std::size_t k = 1; k < n; ++k) {
    weighted += (1.0 - static_cast<double>(k) / static_cast<double>(n)) * rho[k - 1];
  }
  CorrectedSd out;
  out.gamma1 = 1.0 - 2.0 / static_cast<double>(n - 1) * weighted;
  if (out.gamma1 <= kGammaMin) {
    out.gamma1 = kGammaMin;
    out.clamped = true;
  }
  out.sigma = std::sqrt(s2 / out.gamma1);
  return out;
}

double sigma_corr(std::span<const double> x) { return corrected_sd(x).sigma; }

double estimate_sigma(SigmaEstimator estimator, std::span<const double> x) {
  switch (estimator) {
    case SigmaEstimator::AMR: return sigma_amr(x);
    case SigmaEstimator::MMR: return sigma_mmr(x);
    case SigmaEstimator::CorrSD: return sigma_corr(x);
  }
  throw std::invalid_argument("unknown sigma estimator");
}

std::vector<double> phase_one(const StatSeries& series, std::size_t t1) {
  std::vector<double> out;
  for (std::size_t t = series.first_defined; t <= std::min(t1, series.length()); ++t) out.push_back(series.values[t - 1]);
  return out;
}

ChartState fit_chart(const StatSeries& series, std::size_t t1, SigmaEstimator estimator, double q) {
  const auto base = phase_one(series, t1);
  if (base.size() < 3) throw std::invalid_argument("fit_chart: Phase I needs at least three defined values");
  ChartState chart;
  chart.mu_hat = mean_of(base);
  chart.sigma_hat = estimate_sigma(estimator, base);
  chart.q = q;
  chart.two_sided = true;
  return chart;
}

ChartState chart_for(const StatSeries& series, std::size_t t1, SigmaEstimator estimator, double q) {
  return series.kind == StatKind::Scan ? scan_chart(q) : fit_chart(series, t1, estimator, q);
}

std::size_t scoring_start(const StatSeries& series, std::size_t t1) {
  return std::max(t1 + 1, series.first_defined);
}

std::size_t SignalStream::count() const {
  return static_cast<std::size_t>(std::count(flags.begin(), flags.end(), char{1}));
}

SignalStream monitor(const StatSeries& series, const ChartState& chart, std::size_t t1) {
  SignalStream out;
  out.first = scoring_start(series, t1);
  for (std::size_t t = out.first; t <= series.length(); ++t) {
    out.flags.push_back(chart.signals(series.values[t - 1]) ? 1 : 0);
  }
  return out;
}

SignalStream shewhart_monitor(const StatSeries& series, const ChartState& chart, std::size_t t1) {
  return monitor(series, chart, t1);
}

SignalStream scan_monitor(const StatSeries& series, double q, std::size_t t1) {
  if (series.kind != StatKind::Scan) throw std::invalid_argument("scan_monitor expects a scan series");
  return monitor(series, scan_chart(q), t1);
}

namespace {

struct PreparedReplicate {
  double mu;
  double sigma;
  std::vector<double> scored;
};

std::vector<PreparedReplicate> prepare(const std::vector<StatSeries>& reps, std::size_t t1, SigmaEstimator estimator) {
  if (reps.empty()) throw std::invalid_argument("calibration needs at least one null replicate");
  std::vector<PreparedReplicate> out;
  out.reserve(reps.size());
  for (const auto& s : reps) {
    const ChartState chart = chart_for(s, t1, estimator, 0.0);
    PreparedReplicate p{chart.mu_hat, chart.sigma_hat, {}};
    for (std::size_t t = scoring_start(s, t1); t <= s.length(); ++t) p.scored.push_back(s.values[t - 1]);
    out.push_back(std::move(p));
  }
  return out;
}

double pooled_upper_far(const std::vector<PreparedReplicate>& reps, double q) {
  std::size_t hits = 0, scored = 0;
  for (const auto& r : reps) {
    const double limit = r.mu + q * r.sigma;
    for (double v : r.scored) hits += v > limit ? 1 : 0;
    scored += r.scored.size();
  }
  if (scored == 0) throw std::invalid_argument("calibration: no scored Phase II times");
  return static_cast<double>(hits) / static_cast<double>(scored);
}

}  // namespace

double upper_false_alarm_rate(const std::vector<StatSeries>& null_replicates, std::size_t t1,
                              SigmaEstimator estimator, double q) {
  return pooled_upper_far(prepare(null_replicates, t1, estimator), q);
}

CalibrationResult calibrate_q(const std::vector<StatSeries>& null_replicates, std::size_t t1,
                              SigmaEstimator estimator, double p_target) {
  if (!(p_target > 0.0 && p_target < 1.0)) throw std::invalid_argument("calibration: p must lie in (0,1)");
  const auto reps = prepare(null_replicates, t1, estimator);
  CalibrationResult out;
  double best_gap = 2.0;
  for (std::size_t k = 0; k <= kCalibrationSteps; ++k) {
    const double q = static_cast<double>(k) * kCalibrationStep;
    const double far = pooled_upper_far(reps, q);
    out.grid.push_back({q, far});
    const double gap = std::abs(far - p_target);
    if (gap <= best_gap) {
      best_gap = gap;
      out.q = q;
      out.far = far;
    }
  }
  return out;
}

void write_calibration_csv(StatKind kind, SigmaEstimator estimator, const CalibrationResult& result,
                           std::ostream& out, bool header) {
  if (header) out << "statistic,estimator,q,far\n";
  for (const auto& p : result.grid) {
    out << to_string(kind) << ',' << to_string(estimator) << ',' << p.q << ',' << p.far << '\n';
  }
}

}  // namespace netmon
