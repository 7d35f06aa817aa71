#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace netmon {

enum class AnomalyFamily { OddsRatio, DegreeParam };
enum class AnomalyProfile { Sustained, Gradual };

/// How unaffected DLSM radii react when a degree anomaly changes some r_i.
enum class RadiusPolicy {
  Proportional,  // divide every radius by the new total; default
  RescaleRest,   // keep the new radii, shrink the unaffected ones to restore the unit sum
  Fixed,         // leave unaffected radii at their baseline values
};

std::string to_string(AnomalyFamily family);
std::string to_string(AnomalyProfile profile);
std::string to_string(RadiusPolicy policy);
AnomalyFamily parse_anomaly_family(const std::string& text);
AnomalyProfile parse_anomaly_profile(const std::string& text);
RadiusPolicy parse_radius_policy(const std::string& text);

/// A planted change in Phase II.
///
/// `magnitude` is the target odds ratio (OddsRatio), the new radius r_new
/// (DegreeParam on a latent space model) or the propensity multiplier C
/// (DegreeParam on a block model). Gradual profiles ramp linearly from the
/// no-change value and reach `magnitude` at the last anomalous step.
struct AnomalySpec {
  AnomalyFamily family = AnomalyFamily::OddsRatio;
  AnomalyProfile profile = AnomalyProfile::Sustained;
  std::vector<std::size_t> affected_nodes;  // 0-based
  std::size_t t_start = 61;
  std::size_t cpl = 10;
  double magnitude = 1.0;
  RadiusPolicy radius_policy = RadiusPolicy::Proportional;

  std::size_t t_end() const { return t_start + cpl - 1; }
  bool active(std::size_t t) const { return cpl > 0 && t >= t_start && t <= t_end(); }
};

/// Nodes 0..count-1.
std::vector<std::size_t> first_nodes(std::size_t count);

/// Throws std::invalid_argument if the spec does not fit a network of n
/// nodes, length T and Phase I cutoff t1.
void check_anomaly(const AnomalySpec& spec, std::size_t n, std::size_t t1, std::size_t T);

/// p1 = C p0 with C = OR / (1 - p0 + OR p0), so odds(p1) / odds(p0) = OR.
double odds_ratio_scale_bernoulli(double p0, double odds_ratio);

/// Rates shift multiplicatively: OR * rate.
double odds_ratio_scale_poisson(double rate, double odds_ratio);

/// Fraction of the full change applied at time t: 0 outside the window,
/// 1 inside a sustained window, s/cpl at offset s = t - t_start + 1 of a
/// gradual window.
double ramp_fraction(const AnomalySpec& spec, std::size_t t);

/// Multiplier in effect at time t (odds ratio or C): 1 + (magnitude - 1) * ramp.
double effective_multiplier(const AnomalySpec& spec, std::size_t t);

/// Membership mask of the affected set over n nodes.
std::vector<char> affected_mask(const AnomalySpec& spec, std::size_t n);

/// Radii in effect at time t under a DegreeParam anomaly on a latent space
/// model. Affected radii move from their baseline toward `magnitude` by the
/// ramp fraction; unaffected radii follow `radius_policy`.
std::vector<double> anomalous_radii(const AnomalySpec& spec, const std::vector<double>& baseline, std::size_t t);

}  // namespace netmon
