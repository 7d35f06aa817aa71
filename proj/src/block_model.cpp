#include "netmon/block_model.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

#include "netmon/random.hpp"

namespace netmon {

DdcsbmConfig default_ddcsbm_config(double phi, double a_scale, EdgeKind kind, std::uint64_t seed) {
  DdcsbmConfig cfg;
  cfg.phi = phi;
  cfg.a_scale = a_scale;
  cfg.edge_kind = kind;
  cfg.seed = seed;
  cfg.pi = {0.96, 0.02, 0.02,
            0.02, 0.96, 0.02,
            0.02, 0.02, 0.96};
  cfg.omega = {0.70, 0.20, 0.25,
               0.20, 0.60, 0.30,
               0.25, 0.30, 0.50};
  return cfg;
}

void check_config(const DdcsbmConfig& cfg) {
  if (cfg.n < 2) throw std::invalid_argument("ddcsbm: n must be at least 2");
  if (cfg.T < 2) throw std::invalid_argument("ddcsbm: T must be at least 2");
  if (cfg.t1 < 1 || cfg.t1 >= cfg.T) throw std::invalid_argument("ddcsbm: need 1 <= t1 < T");
  if (cfg.K < 1) throw std::invalid_argument("ddcsbm: K must be positive");
  if (!(std::abs(cfg.phi) < 1.0)) throw std::invalid_argument("ddcsbm: |phi| must be < 1");
  if (!(cfg.delta > 0.0 && cfg.delta < 1.0)) throw std::invalid_argument("ddcsbm: delta must lie in (0,1)");
  if (!(cfg.a_scale > 0.0)) throw std::invalid_argument("ddcsbm: a_scale must be positive");
  if (cfg.binarize_threshold < 1) throw std::invalid_argument("ddcsbm: binarize threshold must be >= 1");
  const std::size_t K = cfg.K;
  if (cfg.pi.size() != K * K || cfg.omega.size() != K * K) {
    throw std::invalid_argument("ddcsbm: pi and omega must be K x K");
  }
  for (std::size_t a = 0; a < K; ++a) {
    double row = 0.0;
    for (std::size_t b = 0; b < K; ++b) {
      if (cfg.transition(a, b) < 0.0) throw std::invalid_argument("ddcsbm: negative transition probability");
      row += cfg.transition(a, b);
      if (cfg.rate(a, b) != cfg.rate(b, a)) throw std::invalid_argument("ddcsbm: omega must be symmetric");
      if (!(cfg.rate(a, b) > 0.0 && cfg.rate(a, b) < 1.0)) throw std::invalid_argument("ddcsbm: omega entries must lie in (0,1)");
    }
    if (std::abs(row - 1.0) > 1e-9) throw std::invalid_argument("ddcsbm: pi rows must sum to 1");
    for (std::size_t b = 0; b < a; ++b) {
      if (cfg.rate(a, a) == cfg.rate(b, b)) {
        throw std::invalid_argument("ddcsbm: diagonal of omega must be distinct (communities unidentifiable)");
      }
    }
  }
}

namespace {

std::size_t draw_category(Engine& engine, const double* probs, std::size_t K) {
  const double u = uniform01(engine);
  double cdf = 0.0;
  for (std::size_t k = 0; k + 1 < K; ++k) {
    cdf += probs[k];
    if (u < cdf) return k;
  }
  return K - 1;
}

}  // namespace

CommunityChain generate_communities(const DdcsbmConfig& cfg) {
  check_config(cfg);
  Engine engine = make_engine(cfg.seed, Stream::Communities);
  CommunityChain chain(cfg.T, cfg.n);
  const std::vector<double> uniform(cfg.K, 1.0 / static_cast<double>(cfg.K));
  for (std::size_t i = 0; i < cfg.n; ++i) chain.at(1, i) = draw_category(engine, uniform.data(), cfg.K);
  for (std::size_t t = 2; t <= cfg.T; ++t) {
    for (std::size_t i = 0; i < cfg.n; ++i) {
      const std::size_t from = chain.at(t - 1, i);
      chain.at(t, i) = draw_category(engine, cfg.pi.data() + from * cfg.K, cfg.K);
    }
  }
  return chain;
}

PropensityField generate_propensities(const DdcsbmConfig& cfg) {
  check_config(cfg);
  Engine engine = make_engine(cfg.seed, Stream::Propensities);
  auto centered = [&engine] { return 2.0 * uniform01(engine) - 1.0; };

  PropensityField field(cfg.T, cfg.n);
  std::vector<double> start(cfg.n);
  for (std::size_t i = 0; i < cfg.n; ++i) {
    start[i] = centered();
    field.initial()[i] = cfg.delta * start[i] + 1.0;
  }
  for (std::size_t t = 1; t <= cfg.T; ++t) {
    for (std::size_t i = 0; i < cfg.n; ++i) {
      const double latent = cfg.phi * start[i] + (1.0 - cfg.phi) * centered();
      field.at(t, i) = cfg.delta * latent + 1.0;
    }
  }
  return field;
}

std::vector<double> rescale_propensities(std::span<const double> theta, std::span<const std::size_t> labels,
                                         std::size_t K, PropensityScaling scaling) {
  if (theta.size() != labels.size()) throw std::invalid_argument("rescale: theta and labels differ in length");
  std::vector<double> total(K, 0.0);
  std::vector<std::size_t> members(K, 0);
  for (std::size_t i = 0; i < theta.size(); ++i) {
    if (labels[i] >= K) throw std::invalid_argument("rescale: community label out of range");
    total[labels[i]] += theta[i];
    ++members[labels[i]];
  }
  std::vector<double> out(theta.size());
  for (std::size_t i = 0; i < theta.size(); ++i) {
    const std::size_t k = labels[i];
    const double divisor =
        scaling == PropensityScaling::CommunityMean ? total[k] / static_cast<double>(members[k]) : total[k];
    out[i] = theta[i] / divisor;
  }
  return out;
}

DynamicNetwork generate_ddcsbm(const DdcsbmConfig& cfg, const std::optional<AnomalySpec>& anomaly) {
  check_config(cfg);
  if (anomaly) check_anomaly(*anomaly, cfg.n, cfg.t1, cfg.T);

  const CommunityChain chain = generate_communities(cfg);
  const PropensityField field = generate_propensities(cfg);
  const std::vector<char> affected = anomaly ? affected_mask(*anomaly, cfg.n) : std::vector<char>(cfg.n, 0);
  const bool binary = cfg.edge_kind == EdgeKind::Binary;

  DynamicNetwork net;
  net.t1 = cfg.t1;
  net.snapshots.reserve(cfg.T);
  std::vector<double> theta(cfg.n);

  for (std::size_t t = 1; t <= cfg.T; ++t) {
    auto raw = field.row(t);
    theta.assign(raw.begin(), raw.end());
    if (anomaly && anomaly->family == AnomalyFamily::DegreeParam && anomaly->active(t)) {
      const double c = effective_multiplier(*anomaly, t);
      for (std::size_t i = 0; i < cfg.n; ++i) {
        if (affected[i]) theta[i] *= c;
      }
    }
    const std::vector<double> scaled = rescale_propensities(theta, chain.row(t), cfg.K, cfg.scaling);
    const bool shift_odds = anomaly && anomaly->family == AnomalyFamily::OddsRatio && anomaly->active(t);
    const double odds = shift_odds ? effective_multiplier(*anomaly, t) : 1.0;

    Snapshot snap(cfg.n, false, cfg.edge_kind);
    Engine engine = make_engine(cfg.seed, Stream::Edges, t);
    for (std::size_t i = 0; i < cfg.n; ++i) {
      const std::size_t zi = chain.at(t, i);
      for (std::size_t j = i + 1; j < cfg.n; ++j) {
        double rate = scaled[i] * scaled[j] * cfg.a_scale * cfg.rate(zi, chain.at(t, j));
        if (shift_odds && affected[i] && affected[j]) rate = odds_ratio_scale_poisson(rate, odds);
        std::uint32_t w = draw_poisson(engine, rate);
        if (binary) w = w >= cfg.binarize_threshold ? 1u : 0u;
        snap.set_edge(i, j, w);
      }
    }
    net.snapshots.push_back(std::move(snap));
  }
  return net;
}

}  // namespace netmon
