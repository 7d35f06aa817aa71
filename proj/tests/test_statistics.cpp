#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "netmon/statistics.hpp"
#include "oracles/brute_scan.hpp"
#include "support.hpp"

using namespace netmon;

namespace {

Snapshot undirected(std::size_t n, std::initializer_list<std::pair<std::size_t, std::size_t>> edges,
                    EdgeKind kind = EdgeKind::Binary) {
  Snapshot s(n, false, kind);
  for (auto [i, j] : edges) s.set_edge(i, j, 1);
  return s;
}

DynamicNetwork repeat(const std::vector<Snapshot>& snaps, std::size_t t1) {
  DynamicNetwork net;
  net.t1 = t1;
  net.snapshots = snaps;
  return net;
}

}  // namespace

TEST_CASE("density") {
  CHECK(density(undirected(3, {{0, 1}})) == doctest::Approx(1.0 / 3.0));
  CHECK(density(Snapshot(5, false, EdgeKind::Binary)) == 0.0);
  Snapshot full(4, true, EdgeKind::Binary);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j)
      if (i != j) full.set_weight(i, j, 1);
  CHECK(density(full) == 1.0);
  Snapshot heavy(2, false, EdgeKind::Count);
  heavy.set_edge(0, 1, 3);
  CHECK(density(heavy) == 3.0);
}

TEST_CASE("max degree") {
  CHECK(max_degree(undirected(4, {{0, 1}, {0, 2}, {0, 3}})) == 3.0);
  Snapshot pair(3, true, EdgeKind::Binary);
  pair.set_weight(0, 1, 1);
  pair.set_weight(1, 0, 1);
  CHECK(max_degree(pair) == 2.0);
  Snapshot counts(3, false, EdgeKind::Count);
  counts.set_edge(0, 1, 2);
  counts.set_edge(0, 2, 3);
  CHECK(max_degree(counts) == 5.0);
  CHECK(node_degrees(counts) == std::vector<double>{5.0, 2.0, 3.0});
}

TEST_CASE("difference and sum") {
  CHECK(diff_stat(3.0, 0.5, 4) == doctest::Approx(0.25));
  CHECK(sum_stat(3.0, 0.5, 4) == doctest::Approx(1.25));
  CHECK(diff_stat(0.0, 0.0, 10) == 0.0);
  CHECK(sum_stat(0.0, 0.0, 10) == 0.0);

  DynamicNetwork net = repeat({undirected(4, {{0, 1}, {0, 2}, {0, 3}}), Snapshot(4, false, EdgeKind::Binary)}, 1);
  const StatSeries d = summary_series(net, StatKind::Diff);
  const StatSeries s = summary_series(net, StatKind::Sum);
  CHECK(d.values[0] == doctest::Approx(0.75 - 0.5));
  CHECK(s.values[0] == doctest::Approx(0.75 + 0.5));
  CHECK(d.values[1] == 0.0);
  CHECK(d.first_defined == 1);
}

TEST_CASE("neighborhood sizes") {
  const Snapshot triangle = undirected(3, {{0, 1}, {1, 2}, {0, 2}});
  for (std::size_t i = 0; i < 3; ++i) CHECK(neighborhood_size(triangle, i, 1) == 3.0);

  const Snapshot path = undirected(3, {{0, 1}, {1, 2}});
  CHECK(neighborhood_size(path, 1, 1) == 2.0);
  CHECK(neighborhood_size(path, 0, 1) == 1.0);
  CHECK(neighborhood_size(path, 0, 2) == 2.0);
  CHECK(neighborhood_size(path, 0, 0) == 1.0);

  // hops ignore direction, induced arcs keep it
  Snapshot arcs(3, true, EdgeKind::Count);
  arcs.set_weight(1, 0, 2);
  arcs.set_weight(2, 1, 1);
  arcs.set_weight(1, 2, 4);
  CHECK(neighborhood_size(arcs, 0, 0) == 2.0);
  CHECK(neighborhood_size(arcs, 0, 1) == 2.0);
  CHECK(neighborhood_size(arcs, 0, 2) == 7.0);

  CHECK_THROWS_AS(neighborhood_size(path, 0, 3), std::invalid_argument);
}

TEST_CASE("neighborhood kernels agree with the serial reference") {
  std::mt19937_64 rng(17);
  for (int rep = 0; rep < 40; ++rep) {
    const bool directed = rep % 2 == 0;
    const auto kind = rep % 3 == 0 ? EdgeKind::Count : EdgeKind::Binary;
    const Snapshot s = testing_support::random_snapshot(rng, 20 + rep * 3, directed, kind, 0.03 + rep * 0.005);
    const auto fast = neighborhood_sizes(s);
    const auto slow = serial::neighborhood_sizes(s);
    CHECK(fast.order0 == slow.order0);
    CHECK(fast.order1 == slow.order1);
    CHECK(fast.order2 == slow.order2);
  }
}

TEST_CASE("constant network scans to zero") {
  DynamicNetwork net = repeat(std::vector<Snapshot>(30, undirected(5, {{0, 1}, {1, 2}, {3, 4}})), 10);
  const StatSeries scan = scan_series(net, 5);
  CHECK(scan.first_defined == 11);
  CHECK_FALSE(scan.defined(10));
  for (std::size_t t = 11; t <= 30; ++t) CHECK(*scan.at(t) == 0.0);
}

TEST_CASE("flat history uses the unit floor") {
  Snapshot before(2, false, EdgeKind::Count);
  before.set_edge(0, 1, 2);
  Snapshot after(2, false, EdgeKind::Count);
  after.set_edge(0, 1, 5);
  std::vector<Snapshot> snaps(6, before);
  snaps.push_back(after);
  const StatSeries scan = scan_series(repeat(snaps, 3), 3);
  REQUIRE(scan.first_defined == 7);
  CHECK(*scan.at(7) == doctest::Approx(3.0));
}

TEST_CASE("scan agrees with the brute-force definition") {
  std::mt19937_64 rng(2718);
  for (int rep = 0; rep < 25; ++rep) {
    const std::size_t n = 3 + rep % 6;
    const std::size_t T = 12 + rep;
    const auto kind = rep % 2 ? EdgeKind::Count : EdgeKind::Binary;
    const auto net = testing_support::random_network(rng, n, T, rep % 3 == 0, kind, 5);
    const StatSeries fast = scan_series(net, 4);
    const StatSeries slow = serial::scan_series(net, 4);
    const std::vector<double> truth = oracle::scan(net, 4);
    for (std::size_t t = 9; t <= T; ++t) {
      CHECK(std::abs(*fast.at(t) - truth[t - 1]) <= 1e-12);
      CHECK(std::abs(*slow.at(t) - truth[t - 1]) <= 1e-12);
    }
  }
}

TEST_CASE("scan needs a full warm-up") {
  DynamicNetwork net = repeat(std::vector<Snapshot>(10, undirected(3, {{0, 1}})), 4);
  CHECK_THROWS_AS(scan_series(net, 5), std::invalid_argument);
  CHECK_THROWS_AS(scan_series(net, 1), std::invalid_argument);
  CHECK_NOTHROW(scan_series(net, 4));
}

TEST_CASE("series CSV round trip") {
  std::mt19937_64 rng(5);
  const auto net = testing_support::random_network(rng, 6, 25, false, EdgeKind::Count, 10);
  std::vector<StatSeries> all;
  for (StatKind kind : kAllStats) all.push_back(compute_series(net, kind, 5));

  std::stringstream buf;
  write_series_csv(all, buf);
  const std::string text = buf.str();
  CHECK(text.rfind("t,name,value\n", 0) == 0);
  CHECK(text.find("10,scan,") == std::string::npos);
  CHECK(text.find("11,scan,") != std::string::npos);

  const auto back = read_series_csv(buf);
  REQUIRE(back.size() == all.size());
  for (std::size_t k = 0; k < all.size(); ++k) {
    CHECK(back[k].kind == all[k].kind);
    CHECK(back[k].first_defined == all[k].first_defined);
    CHECK(back[k].window == all[k].window);
    for (std::size_t t = all[k].first_defined; t <= 25; ++t) CHECK(*back[k].at(t) == *all[k].at(t));
  }
}

TEST_CASE("series CSV errors") {
  auto parse = [](const std::string& text) {
    std::istringstream in(text);
    return read_series_csv(in);
  };
  CHECK_THROWS(parse("t,name,value\n1,density,0.5\n3,density,0.4\n"));
  CHECK_THROWS(parse("t,name,value\n1,bogus,0.5\n"));
  CHECK_THROWS(parse("t,name\n"));
  CHECK(parse("t,name,value\n1,density,0.5\n2,density,0.25\n")[0].values == std::vector<double>{0.5, 0.25});
}

TEST_CASE("statistic names") {
  for (StatKind kind : kAllStats) CHECK(parse_stat_kind(to_string(kind)) == kind);
  CHECK_THROWS_AS(parse_stat_kind("median"), std::invalid_argument);
}
