#include "netmon/anomaly.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace netmon {

std::string to_string(AnomalyFamily family) {
  return family == AnomalyFamily::OddsRatio ? "odds_ratio" : "degree";
}

std::string to_string(AnomalyProfile profile) {
  return profile == AnomalyProfile::Sustained ? "sustained" : "gradual";
}

std::string to_string(RadiusPolicy policy) {
  switch (policy) {
    case RadiusPolicy::RescaleRest: return "rescale_rest";
    case RadiusPolicy::Proportional: return "proportional";
    case RadiusPolicy::Fixed: return "fixed";
  }
  return "unknown";
}

AnomalyFamily parse_anomaly_family(const std::string& text) {
  if (text == "odds_ratio") return AnomalyFamily::OddsRatio;
  if (text == "degree") return AnomalyFamily::DegreeParam;
  throw std::invalid_argument("unknown anomaly family '" + text + "' (odds_ratio|degree)");
}

AnomalyProfile parse_anomaly_profile(const std::string& text) {
  if (text == "sustained") return AnomalyProfile::Sustained;
  if (text == "gradual") return AnomalyProfile::Gradual;
  throw std::invalid_argument("unknown anomaly profile '" + text + "' (sustained|gradual)");
}

RadiusPolicy parse_radius_policy(const std::string& text) {
  if (text == "rescale_rest") return RadiusPolicy::RescaleRest;
  if (text == "proportional") return RadiusPolicy::Proportional;
  if (text == "fixed") return RadiusPolicy::Fixed;
  throw std::invalid_argument("unknown radius policy '" + text + "' (proportional|rescale_rest|fixed)");
}

std::vector<std::size_t> first_nodes(std::size_t count) {
  std::vector<std::size_t> nodes(count);
  std::iota(nodes.begin(), nodes.end(), std::size_t{0});
  return nodes;
}

void check_anomaly(const AnomalySpec& spec, std::size_t n, std::size_t t1, std::size_t T) {
  if (spec.affected_nodes.size() > n) throw std::invalid_argument("anomaly affects more nodes than the network has");
  for (auto i : spec.affected_nodes) {
    if (i >= n) throw std::invalid_argument("anomalous node " + std::to_string(i + 1) + " out of range");
  }
  if (spec.cpl == 0) throw std::invalid_argument("anomaly window length must be positive");
  if (spec.t_start <= t1) throw std::invalid_argument("anomaly must start in Phase II (t_start > t1)");
  if (spec.t_end() > T) throw std::invalid_argument("anomaly window runs past T");
  if (!(spec.magnitude > 0.0)) throw std::invalid_argument("anomaly magnitude must be positive");
}

double odds_ratio_scale_bernoulli(double p0, double odds_ratio) {
  const double c = odds_ratio / (1.0 - p0 + odds_ratio * p0);
  return std::clamp(c * p0, 0.0, 1.0);
}

double odds_ratio_scale_poisson(double rate, double odds_ratio) { return odds_ratio * rate; }

double ramp_fraction(const AnomalySpec& spec, std::size_t t) {
  if (!spec.active(t)) return 0.0;
  if (spec.profile == AnomalyProfile::Sustained) return 1.0;
  const auto s = static_cast<double>(t - spec.t_start + 1);
  return s / static_cast<double>(spec.cpl);
}

double effective_multiplier(const AnomalySpec& spec, std::size_t t) {
  const double f = ramp_fraction(spec, t);
  if (f == 0.0) return 1.0;
  if (f == 1.0) return spec.magnitude;
  return 1.0 + (spec.magnitude - 1.0) * f;
}

std::vector<char> affected_mask(const AnomalySpec& spec, std::size_t n) {
  std::vector<char> mask(n, 0);
  for (auto i : spec.affected_nodes) mask.at(i) = 1;
  return mask;
}

std::vector<double> anomalous_radii(const AnomalySpec& spec, const std::vector<double>& baseline, std::size_t t) {
  std::vector<double> radii = baseline;
  const double f = ramp_fraction(spec, t);
  if (f == 0.0 || spec.affected_nodes.empty()) return radii;

  const auto mask = affected_mask(spec, baseline.size());
  double affected_total = 0.0;
  double baseline_rest = 0.0;
  for (std::size_t i = 0; i < radii.size(); ++i) {
    if (mask[i]) {
      radii[i] = f == 1.0 ? spec.magnitude : baseline[i] + (spec.magnitude - baseline[i]) * f;
      affected_total += radii[i];
    } else {
      baseline_rest += baseline[i];
    }
  }
  if (spec.radius_policy == RadiusPolicy::RescaleRest && baseline_rest > 0.0) {
    const double remaining = 1.0 - affected_total;
    if (!(remaining > 0.0)) {
      throw std::invalid_argument("anomalous radii leave no mass for the unaffected nodes");
    }
    const double scale = remaining / baseline_rest;
    for (std::size_t i = 0; i < radii.size(); ++i) {
      if (!mask[i]) radii[i] = baseline[i] * scale;
    }
  } else if (spec.radius_policy == RadiusPolicy::Proportional) {
    const double total = affected_total + baseline_rest;
    for (double& r : radii) r /= total;
  }
  return radii;
}

}  // namespace netmon
