#include <doctest.h>

#include <cmath>
#include <numeric>

#include "netmon/latent_space.hpp"
#include "netmon/statistics.hpp"

using namespace netmon;

TEST_CASE("eta") {
  CHECK(eta(0.0, 0.3, 0.7, 1.0, 2.0) == 3.0);
  CHECK(eta(0.0, 0.01, 0.05, 1.5, 0.5) == 2.0);
  CHECK(eta(0.04, 0.04, 0.04, 1.0, 2.0) == doctest::Approx(0.0));
  CHECK(eta(0.02, 0.01, 0.01, 1.0, 2.0) == doctest::Approx(-3.0));
  // sender radius weighs on beta_out, receiver radius on beta_in
  CHECK(eta(0.02, 0.01, 0.04, 1.0, 2.0) == doctest::Approx(0.5 - 2.0));
  CHECK_THROWS_AS(eta(0.1, 0.0, 0.1, 1.0, 2.0), std::invalid_argument);
}

TEST_CASE("study defaults") {
  const DlsmConfig cfg = default_dlsm_config(0.3, 0.00014, EdgeKind::Binary, 5);
  CHECK(cfg.sigma2 == doctest::Approx(0.91));
  CHECK(cfg.innovation_variance() == doctest::Approx(0.91 * 0.00014));
  CHECK(cfg.beta_in == 1.0);
  CHECK(cfg.beta_out == 2.0);
  const auto r = cfg.resolved_radii();
  REQUIRE(r.size() == 100);
  CHECK(r[17] == doctest::Approx(0.01));
  CHECK(cluster_of(7, 5) == 2);
}

TEST_CASE("config checks") {
  DlsmConfig cfg = default_dlsm_config(0.5, 1.0, EdgeKind::Binary, 1);
  CHECK_NOTHROW(check_config(cfg));
  cfg.radii.assign(100, 0.02);
  CHECK_THROWS_AS(check_config(cfg), std::invalid_argument);
  cfg = default_dlsm_config(1.0, 1.0, EdgeKind::Binary, 1);
  CHECK_THROWS_AS(check_config(cfg), std::invalid_argument);
  cfg = default_dlsm_config(0.5, 1.0, EdgeKind::Binary, 1);
  cfg.t1 = cfg.T;
  CHECK_THROWS_AS(check_config(cfg), std::invalid_argument);
}

TEST_CASE("zero log-odds gives coin-flip edges") {
  DlsmConfig cfg;
  cfg.n = 3;
  cfg.T = 200;
  cfg.t1 = 100;
  cfg.seed = 35;
  cfg.radii.assign(3, 1.0 / 3.0);
  const double side = 1.0 / 3.0;
  LatentTrajectory pos(cfg.T, cfg.n);
  for (std::size_t t = 1; t <= cfg.T; ++t) {
    pos.at(t, 1, 0) = side;
    pos.at(t, 2, 0) = side / 2.0;
    pos.at(t, 2, 1) = side * std::sqrt(3.0) / 2.0;
  }
  CHECK(pos.distance(1, 1, 2) == doctest::Approx(side));

  const DynamicNetwork net = generate_from_positions(cfg, pos);
  CHECK(net.directed());
  double total = 0.0;
  for (const auto& s : net.snapshots) total += density(s);
  CHECK(std::abs(total / cfg.T - 0.5) <= 0.02);
}

TEST_CASE("generation is deterministic in the seed") {
  DlsmConfig cfg = default_dlsm_config(0.5, 0.00042, EdgeKind::Count, 99);
  cfg.n = 40;
  cfg.T = 30;
  cfg.t1 = 10;
  CHECK(generate_latent_positions(cfg) == generate_latent_positions(cfg));
  CHECK(generate_dlsm(cfg) == generate_dlsm(cfg));
  DlsmConfig other = cfg;
  other.seed = 100;
  CHECK_FALSE(generate_dlsm(cfg) == generate_dlsm(other));
}

TEST_CASE("no self loops and directed output") {
  DlsmConfig cfg = default_dlsm_config(0.5, 0.00014, EdgeKind::Binary, 3);
  cfg.n = 30;
  cfg.T = 20;
  cfg.t1 = 10;
  const DynamicNetwork net = generate_dlsm(cfg);
  CHECK(validate(net).empty());
  CHECK(net.directed());
}

TEST_CASE("far-apart positions give near-empty count networks") {
  DlsmConfig cfg = default_dlsm_config(0.5, 1.0, EdgeKind::Count, 8);
  cfg.n = 50;
  cfg.T = 20;
  cfg.t1 = 10;
  const DynamicNetwork net = generate_dlsm(cfg);
  double total = 0.0;
  for (const auto& s : net.snapshots) total += density(s);
  CHECK(total / cfg.T < 1e-3);
}

TEST_CASE("huge rates are capped and counted") {
  DlsmConfig cfg;
  cfg.n = 4;
  cfg.T = 3;
  cfg.t1 = 1;
  cfg.beta_in = 6.0;
  cfg.beta_out = 6.0;
  cfg.edge_kind = EdgeKind::Count;
  LatentTrajectory pos(cfg.T, cfg.n);
  GenerationStats stats;
  const DynamicNetwork net = generate_from_positions(cfg, pos, std::nullopt, &stats);
  CHECK(stats.clamped_rates == 3 * 12);
  CHECK(net.at(2).weight(0, 1) > 10000);
}

TEST_CASE("random-walk prior spreads positions over time") {
  DlsmConfig cfg = default_dlsm_config(0.5, 1.0, EdgeKind::Binary, 4);
  cfg.prior = LatentPrior::OriginalRandomWalk;
  cfg.n = 200;
  const LatentTrajectory rw = generate_latent_positions(cfg);
  cfg.prior = LatentPrior::Var1;
  const LatentTrajectory var1 = generate_latent_positions(cfg);
  auto spread = [&](const LatentTrajectory& pos, std::size_t t) {
    double s = 0.0;
    for (std::size_t i = 0; i < cfg.n; ++i) s += pos.at(t, i, 0) * pos.at(t, i, 0) + pos.at(t, i, 1) * pos.at(t, i, 1);
    return s / static_cast<double>(cfg.n);
  };
  CHECK(spread(rw, cfg.T) > 20.0 * spread(rw, 1));
  CHECK(spread(var1, cfg.T) < 3.0 * spread(var1, 1));
}
