#include <doctest.h>

#include <cmath>

#include "netmon/block_model.hpp"
#include "netmon/statistics.hpp"

using namespace netmon;

namespace {

DdcsbmConfig single_community(EdgeKind kind) {
  DdcsbmConfig cfg;
  cfg.n = 50;
  cfg.T = 200;
  cfg.t1 = 100;
  cfg.K = 1;
  cfg.pi = {1.0};
  cfg.omega = {0.7};
  cfg.delta = 1e-9;
  cfg.edge_kind = kind;
  cfg.seed = 31;
  return cfg;
}

double mean_density(const DynamicNetwork& net) {
  double total = 0.0;
  for (const auto& s : net.snapshots) total += density(s);
  return total / static_cast<double>(net.length());
}

}  // namespace

TEST_CASE("rescaling to community mean one") {
  const std::vector<std::size_t> one{0, 0, 0};
  auto flat = rescale_propensities(std::vector<double>{1.3, 1.3, 1.3}, one, 1);
  for (double v : flat) CHECK(v == doctest::Approx(1.0));

  auto pair = rescale_propensities(std::vector<double>{0.5, 1.5}, std::vector<std::size_t>{0, 0}, 1);
  CHECK(pair[0] == doctest::Approx(0.5));
  CHECK(pair[1] == doctest::Approx(1.5));

  const std::vector<std::size_t> labels{0, 0, 0, 1, 1};
  auto mixed = rescale_propensities(std::vector<double>{0.5, 0.5, 2.0, 1.0, 2.0}, labels, 2);
  CHECK(mixed[0] == doctest::Approx(0.5));
  CHECK(mixed[2] == doctest::Approx(2.0));
  CHECK(mixed[3] == doctest::Approx(2.0 / 3.0));
  CHECK(mixed[4] == doctest::Approx(4.0 / 3.0));

  auto summed = rescale_propensities(std::vector<double>{1.0, 3.0}, std::vector<std::size_t>{0, 0}, 1,
                                     PropensityScaling::CommunitySum);
  CHECK(summed[0] == doctest::Approx(0.25));

  CHECK_THROWS_AS(rescale_propensities(std::vector<double>{1.0}, std::vector<std::size_t>{2}, 2),
                  std::invalid_argument);
}

TEST_CASE("identity transitions freeze the labels") {
  DdcsbmConfig cfg = default_ddcsbm_config(0.5, 1.0, EdgeKind::Count, 6);
  cfg.pi = {1, 0, 0, 0, 1, 0, 0, 0, 1};
  const CommunityChain chain = generate_communities(cfg);
  for (std::size_t t = 2; t <= cfg.T; ++t)
    for (std::size_t i = 0; i < cfg.n; ++i) CHECK(chain.at(t, i) == chain.at(1, i));
}

TEST_CASE("one community means one label") {
  const CommunityChain chain = generate_communities(single_community(EdgeKind::Count));
  for (std::size_t t = 1; t <= chain.length(); ++t)
    for (std::size_t i = 0; i < chain.nodes(); ++i) CHECK(chain.at(t, i) == 0);
}

TEST_CASE("default chain switches about four percent of the time") {
  const DdcsbmConfig cfg = default_ddcsbm_config(0.5, 1.0, EdgeKind::Count, 12);
  const CommunityChain chain = generate_communities(cfg);
  std::size_t switches = 0;
  for (std::size_t t = 2; t <= cfg.T; ++t)
    for (std::size_t i = 0; i < cfg.n; ++i) switches += chain.at(t, i) != chain.at(t - 1, i);
  const double rate = static_cast<double>(switches) / static_cast<double>((cfg.T - 1) * cfg.n);
  CHECK(std::abs(rate - 0.04) <= 0.01);
}

TEST_CASE("starting propensity") {
  // theta*_0 = -0.75 with delta 0.98
  CHECK(0.98 * -0.75 + 1.0 == doctest::Approx(0.265));
  const DdcsbmConfig cfg = default_ddcsbm_config(0.5, 1.0, EdgeKind::Count, 2);
  const PropensityField field = generate_propensities(cfg);
  for (double v : field.initial()) {
    CHECK(v >= 1.0 - cfg.delta);
    CHECK(v <= 1.0 + cfg.delta);
  }
}

TEST_CASE("white-noise propensities average one") {
  DdcsbmConfig cfg = default_ddcsbm_config(0.0, 1.0, EdgeKind::Count, 77);
  cfg.n = 100;
  cfg.T = 100;
  const PropensityField field = generate_propensities(cfg);
  double total = 0.0;
  double lo = 2.0;
  double hi = 0.0;
  for (std::size_t t = 1; t <= cfg.T; ++t) {
    for (double v : field.row(t)) {
      total += v;
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  }
  CHECK(std::abs(total / 1e4 - 1.0) <= 0.02);
  CHECK(lo >= 1.0 - cfg.delta);
  CHECK(hi <= 1.0 + cfg.delta);
}

TEST_CASE("propensities stay correlated with their start when phi is large") {
  const DdcsbmConfig cfg = default_ddcsbm_config(0.95, 1.0, EdgeKind::Count, 41);
  const PropensityField field = generate_propensities(cfg);
  for (std::size_t i = 0; i < cfg.n; ++i) CHECK(std::abs(field.at(60, i) - field.initial()[i]) <= 0.05 * cfg.delta * 2);
}

TEST_CASE("Poisson edges with unit propensities") {
  CHECK(std::abs(mean_density(generate_ddcsbm(single_community(EdgeKind::Count))) - 0.7) <= 0.02);
  CHECK(std::abs(mean_density(generate_ddcsbm(single_community(EdgeKind::Binary))) - (1.0 - std::exp(-0.7))) <=
        0.02);
}

TEST_CASE("output is undirected and valid") {
  DdcsbmConfig cfg = default_ddcsbm_config(0.5, 0.16, EdgeKind::Count, 9);
  cfg.T = 20;
  cfg.t1 = 10;
  const DynamicNetwork net = generate_ddcsbm(cfg);
  CHECK_FALSE(net.directed());
  CHECK(validate(net).empty());
  CHECK(net == generate_ddcsbm(cfg));
}

TEST_CASE("config checks") {
  DdcsbmConfig cfg = default_ddcsbm_config(0.5, 1.0, EdgeKind::Count, 1);
  CHECK_NOTHROW(check_config(cfg));
  cfg.pi[0] = 0.9;
  CHECK_THROWS_AS(check_config(cfg), std::invalid_argument);
  cfg = default_ddcsbm_config(0.5, 1.0, EdgeKind::Count, 1);
  cfg.omega[1] = 0.3;
  CHECK_THROWS_AS(check_config(cfg), std::invalid_argument);
  cfg = default_ddcsbm_config(0.5, 1.0, EdgeKind::Count, 1);
  cfg.omega[4] = 0.7;
  CHECK_THROWS_AS(check_config(cfg), std::invalid_argument);
  cfg = default_ddcsbm_config(0.5, 1.0, EdgeKind::Count, 1);
  cfg.delta = 1.0;
  CHECK_THROWS_AS(check_config(cfg), std::invalid_argument);
}
