#include "netmon/latent_space.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

#include "netmon/random.hpp"

namespace netmon {

std::vector<double> DlsmConfig::resolved_radii() const {
  if (!radii.empty()) return radii;
  return std::vector<double>(n, 1.0 / static_cast<double>(n));
}

DlsmConfig default_dlsm_config(double phi, double a_scale, EdgeKind kind, std::uint64_t seed) {
  DlsmConfig cfg;
  cfg.phi = phi;
  cfg.sigma2 = 1.0 - phi * phi;
  cfg.a_scale = a_scale;
  cfg.edge_kind = kind;
  cfg.seed = seed;
  return cfg;
}

void check_config(const DlsmConfig& cfg) {
  if (cfg.n < 2) throw std::invalid_argument("dlsm: n must be at least 2");
  if (cfg.T < 2) throw std::invalid_argument("dlsm: T must be at least 2");
  if (cfg.t1 < 1 || cfg.t1 >= cfg.T) throw std::invalid_argument("dlsm: need 1 <= t1 < T");
  if (!(std::abs(cfg.phi) < 1.0)) throw std::invalid_argument("dlsm: |phi| must be < 1");
  if (!(cfg.sigma2 > 0.0)) throw std::invalid_argument("dlsm: sigma2 must be positive");
  if (!(cfg.a_scale > 0.0)) throw std::invalid_argument("dlsm: a_scale must be positive");
  if (cfg.n_clusters < 1) throw std::invalid_argument("dlsm: need at least one cluster");
  if (!cfg.radii.empty()) {
    if (cfg.radii.size() != cfg.n) throw std::invalid_argument("dlsm: radii length must equal n");
    for (double r : cfg.radii) {
      if (!(r > 0.0)) throw std::invalid_argument("dlsm: radii must be positive");
    }
    const double total = std::accumulate(cfg.radii.begin(), cfg.radii.end(), 0.0);
    if (std::abs(total - 1.0) > 1e-9) throw std::invalid_argument("dlsm: radii must sum to 1");
  }
}

double LatentTrajectory::distance(std::size_t t, std::size_t i, std::size_t j) const {
  const double dx = at(t, i, 0) - at(t, j, 0);
  const double dy = at(t, i, 1) - at(t, j, 1);
  return std::sqrt(dx * dx + dy * dy);
}

LatentTrajectory generate_latent_positions(const DlsmConfig& cfg) {
  check_config(cfg);
  Engine engine = make_engine(cfg.seed, Stream::LatentPositions);
  std::normal_distribution<double> standard(0.0, 1.0);

  const double mean_sd = 2.0 / static_cast<double>(cfg.n);
  std::vector<double> centers(cfg.n_clusters * 2);
  for (double& c : centers) c = mean_sd * standard(engine);

  const double step_sd = std::sqrt(cfg.innovation_variance());
  std::vector<double> current(cfg.n * 2);
  for (std::size_t i = 0; i < cfg.n; ++i) {
    const std::size_t k = cluster_of(i, cfg.n_clusters);
    for (std::size_t c = 0; c < 2; ++c) current[i * 2 + c] = centers[k * 2 + c] + step_sd * standard(engine);
  }

  const bool var1 = cfg.prior == LatentPrior::Var1;
  const double carry = var1 ? cfg.phi : 1.0;
  const std::size_t burn_in = var1 ? cfg.T : 0;

  LatentTrajectory out(cfg.T, cfg.n);
  // `current` holds the first draw of the chain; draws 1..burn_in are discarded.
  for (std::size_t step = 0; step < burn_in + cfg.T; ++step) {
    if (step > 0) {
      for (double& x : current) x = carry * x + step_sd * standard(engine);
    }
    if (step >= burn_in) {
      const std::size_t t = step - burn_in + 1;
      for (std::size_t i = 0; i < cfg.n; ++i) {
        out.at(t, i, 0) = current[i * 2];
        out.at(t, i, 1) = current[i * 2 + 1];
      }
    }
  }
  return out;
}

double eta(double distance, double r_i, double r_j, double beta_in, double beta_out) {
  if (!(r_i > 0.0) || !(r_j > 0.0)) throw std::invalid_argument("eta: radii must be positive");
  return beta_in * (1.0 - distance / r_j) + beta_out * (1.0 - distance / r_i);
}

DynamicNetwork generate_from_positions(const DlsmConfig& cfg, const LatentTrajectory& positions,
                                       const std::optional<AnomalySpec>& anomaly, GenerationStats* stats) {
  check_config(cfg);
  if (positions.length() != cfg.T || positions.nodes() != cfg.n) {
    throw std::invalid_argument("dlsm: trajectory shape does not match config");
  }
  if (anomaly) check_anomaly(*anomaly, cfg.n, cfg.t1, cfg.T);

  const std::vector<double> baseline = cfg.resolved_radii();
  const std::vector<char> affected = anomaly ? affected_mask(*anomaly, cfg.n) : std::vector<char>(cfg.n, 0);
  const bool binary = cfg.edge_kind == EdgeKind::Binary;
  const double max_rate = std::exp(kMaxLogRate);

  DynamicNetwork net;
  net.t1 = cfg.t1;
  net.snapshots.reserve(cfg.T);
  std::size_t clamped = 0;

  for (std::size_t t = 1; t <= cfg.T; ++t) {
    Snapshot snap(cfg.n, true, cfg.edge_kind);
    Engine engine = make_engine(cfg.seed, Stream::Edges, t);

    const bool shift_radii = anomaly && anomaly->family == AnomalyFamily::DegreeParam && anomaly->active(t);
    const std::vector<double> radii = shift_radii ? anomalous_radii(*anomaly, baseline, t) : baseline;
    const bool shift_odds = anomaly && anomaly->family == AnomalyFamily::OddsRatio && anomaly->active(t);
    const double odds = shift_odds ? effective_multiplier(*anomaly, t) : 1.0;

    for (std::size_t i = 0; i < cfg.n; ++i) {
      for (std::size_t j = 0; j < cfg.n; ++j) {
        if (i == j) continue;
        const double e = eta(positions.distance(t, i, j), radii[i], radii[j], cfg.beta_in, cfg.beta_out);
        const bool pair_hit = shift_odds && affected[i] && affected[j];
        if (binary) {
          double p = 1.0 / (1.0 + std::exp(-e));
          if (pair_hit) p = odds_ratio_scale_bernoulli(p, odds);
          snap.set_weight(i, j, uniform01(engine) < p ? 1u : 0u);
        } else {
          double rate;
          if (e > kMaxLogRate) {
            rate = max_rate;
            ++clamped;
          } else {
            rate = std::exp(e);
          }
          if (pair_hit) rate = odds_ratio_scale_poisson(rate, odds);
          snap.set_weight(i, j, draw_poisson(engine, rate));
        }
      }
    }
    net.snapshots.push_back(std::move(snap));
  }
  if (stats) stats->clamped_rates += clamped;
  return net;
}

DynamicNetwork generate_dlsm(const DlsmConfig& cfg, const std::optional<AnomalySpec>& anomaly,
                             GenerationStats* stats) {
  return generate_from_positions(cfg, generate_latent_positions(cfg), anomaly, stats);
}

}  // namespace netmon
