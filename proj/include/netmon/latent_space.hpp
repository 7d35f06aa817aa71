#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "netmon/anomaly.hpp"
#include "netmon/network.hpp"

namespace netmon {

enum class LatentPrior {
  Var1,                // X_t = phi X_{t-1} + N(0, a sigma2 I), T burn-in steps discarded
  OriginalRandomWalk,  // X_t = X_{t-1} + N(0, a sigma2 I), no burn-in
};

struct DlsmConfig {
  std::size_t n = 100;
  std::size_t T = 110;
  std::size_t t1 = 50;
  double phi = 0.5;
  double sigma2 = 0.75;  // innovation variance before scaling; study default 1 - phi^2
  double a_scale = 1.0;
  double beta_in = 1.0;
  double beta_out = 2.0;
  std::vector<double> radii;  // empty means uniform 1/n
  std::size_t n_clusters = 5;
  EdgeKind edge_kind = EdgeKind::Binary;
  LatentPrior prior = LatentPrior::Var1;
  std::uint64_t seed = 0;

  double innovation_variance() const { return a_scale * sigma2; }
  std::vector<double> resolved_radii() const;
};

/// Study defaults: sigma2 = 1 - phi^2, beta_in = 1, beta_out = 2, r_i = 1/n.
DlsmConfig default_dlsm_config(double phi, double a_scale, EdgeKind kind, std::uint64_t seed);

/// Throws std::invalid_argument on any broken config invariant.
void check_config(const DlsmConfig& cfg);

/// Latent positions X_it in R^2 for t = 1..T.
class LatentTrajectory {
 public:
  LatentTrajectory(std::size_t T, std::size_t n) : T_(T), n_(n), coords_(T * n * 2, 0.0) {}

  std::size_t length() const { return T_; }
  std::size_t nodes() const { return n_; }

  double& at(std::size_t t, std::size_t i, std::size_t c) { return coords_[((t - 1) * n_ + i) * 2 + c]; }
  double at(std::size_t t, std::size_t i, std::size_t c) const { return coords_[((t - 1) * n_ + i) * 2 + c]; }

  double distance(std::size_t t, std::size_t i, std::size_t j) const;

  friend bool operator==(const LatentTrajectory&, const LatentTrajectory&) = default;

 private:
  std::size_t T_;
  std::size_t n_;
  std::vector<double> coords_;
};

/// Cluster of node i under the round-robin assignment.
inline std::size_t cluster_of(std::size_t i, std::size_t n_clusters) { return i % n_clusters; }

LatentTrajectory generate_latent_positions(const DlsmConfig& cfg);

/// eta_ijt = beta_in (1 - d / r_j) + beta_out (1 - d / r_i).
double eta(double distance, double r_i, double r_j, double beta_in, double beta_out);

/// Poisson rates exp(eta) are capped at exp(10).
inline constexpr double kMaxLogRate = 10.0;

struct GenerationStats {
  std::size_t clamped_rates = 0;
};

/// Directed network drawn edge by edge from the given positions.
DynamicNetwork generate_from_positions(const DlsmConfig& cfg, const LatentTrajectory& positions,
                                       const std::optional<AnomalySpec>& anomaly = std::nullopt,
                                       GenerationStats* stats = nullptr);

DynamicNetwork generate_dlsm(const DlsmConfig& cfg, const std::optional<AnomalySpec>& anomaly = std::nullopt,
                             GenerationStats* stats = nullptr);

}  // namespace netmon
