#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "netmon/anomaly.hpp"
#include "netmon/network.hpp"

namespace netmon {

/// Divisor used when rescaling propensities within a community.
enum class PropensityScaling {
  CommunityMean,  // theta / mean(theta over the community); default
  CommunitySum,   // theta / sum(theta over the community); literal algorithm line, kept for audits
};

struct DdcsbmConfig {
  std::size_t n = 100;
  std::size_t T = 110;
  std::size_t t1 = 50;
  std::size_t K = 3;
  double phi = 0.5;
  double delta = 0.98;
  std::vector<double> pi;     // K x K row-major, row-stochastic
  std::vector<double> omega;  // K x K row-major, symmetric
  double a_scale = 1.0;
  EdgeKind edge_kind = EdgeKind::Count;
  std::uint32_t binarize_threshold = 1;
  PropensityScaling scaling = PropensityScaling::CommunityMean;
  std::uint64_t seed = 0;

  double transition(std::size_t from, std::size_t to) const { return pi[from * K + to]; }
  double rate(std::size_t a, std::size_t b) const { return omega[a * K + b]; }
};

/// Study defaults: K = 3, delta = 0.98, sticky transitions (0.96 on the
/// diagonal) and the 3x3 community-rate matrix with diagonal 0.7/0.6/0.5.
DdcsbmConfig default_ddcsbm_config(double phi, double a_scale, EdgeKind kind, std::uint64_t seed);

void check_config(const DdcsbmConfig& cfg);

/// Community labels Z_it, stored 0-based (label k here is community k+1).
class CommunityChain {
 public:
  CommunityChain(std::size_t T, std::size_t n) : T_(T), n_(n), labels_(T * n, 0) {}
  std::size_t length() const { return T_; }
  std::size_t nodes() const { return n_; }
  std::size_t& at(std::size_t t, std::size_t i) { return labels_[(t - 1) * n_ + i]; }
  std::size_t at(std::size_t t, std::size_t i) const { return labels_[(t - 1) * n_ + i]; }
  std::span<const std::size_t> row(std::size_t t) const { return {labels_.data() + (t - 1) * n_, n_}; }

 private:
  std::size_t T_;
  std::size_t n_;
  std::vector<std::size_t> labels_;
};

/// Propensities theta_it in [1 - delta, 1 + delta] for t = 1..T, plus the
/// starting values theta_i0 = delta * theta*_i0 + 1.
class PropensityField {
 public:
  PropensityField(std::size_t T, std::size_t n) : T_(T), n_(n), theta_(T * n, 1.0), initial_(n, 1.0) {}
  std::size_t length() const { return T_; }
  std::size_t nodes() const { return n_; }
  double& at(std::size_t t, std::size_t i) { return theta_[(t - 1) * n_ + i]; }
  double at(std::size_t t, std::size_t i) const { return theta_[(t - 1) * n_ + i]; }
  std::span<const double> row(std::size_t t) const { return {theta_.data() + (t - 1) * n_, n_}; }
  std::vector<double>& initial() { return initial_; }
  const std::vector<double>& initial() const { return initial_; }

 private:
  std::size_t T_;
  std::size_t n_;
  std::vector<double> theta_;
  std::vector<double> initial_;
};

CommunityChain generate_communities(const DdcsbmConfig& cfg);
PropensityField generate_propensities(const DdcsbmConfig& cfg);

/// theta*_it / (mean or sum of theta*_jt over nodes j sharing i's community).
std::vector<double> rescale_propensities(std::span<const double> theta, std::span<const std::size_t> labels,
                                         std::size_t K,
                                         PropensityScaling scaling = PropensityScaling::CommunityMean);

/// Undirected network; one Poisson draw per unordered pair and time.
DynamicNetwork generate_ddcsbm(const DdcsbmConfig& cfg, const std::optional<AnomalySpec>& anomaly = std::nullopt);

}  // namespace netmon
