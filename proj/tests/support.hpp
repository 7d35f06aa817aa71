#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "netmon/network.hpp"
#include "netmon/statistics.hpp"

namespace testing_support {

/// Random snapshot with edge probability `p`; count weights are 1..max_w.
inline netmon::Snapshot random_snapshot(std::mt19937_64& rng, std::size_t n, bool directed, netmon::EdgeKind kind,
                                        double p, std::uint32_t max_w = 3) {
  netmon::Snapshot s(n, directed, kind);
  std::bernoulli_distribution edge(p);
  std::uniform_int_distribution<std::uint32_t> weight(1, max_w);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = directed ? 0 : i + 1; j < n; ++j) {
      if (i == j || !edge(rng)) continue;
      s.set_edge(i, j, kind == netmon::EdgeKind::Binary ? 1u : weight(rng));
    }
  }
  return s;
}

inline netmon::DynamicNetwork random_network(std::mt19937_64& rng, std::size_t n, std::size_t T, bool directed,
                                             netmon::EdgeKind kind, std::size_t t1) {
  std::uniform_real_distribution<double> dens(0.05, 0.7);
  netmon::DynamicNetwork net;
  net.t1 = t1;
  for (std::size_t t = 0; t < T; ++t) net.snapshots.push_back(random_snapshot(rng, n, directed, kind, dens(rng)));
  return net;
}

/// Relabels nodes: node i of `s` becomes node perm[i].
inline netmon::Snapshot permute(const netmon::Snapshot& s, const std::vector<std::size_t>& perm) {
  netmon::Snapshot out(s.size(), s.directed(), s.kind());
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t j = 0; j < s.size(); ++j) out.set_weight(perm[i], perm[j], s.weight(i, j));
  return out;
}

inline netmon::StatSeries series_of(netmon::StatKind kind, std::vector<double> values) {
  netmon::StatSeries s;
  s.kind = kind;
  s.values = std::move(values);
  return s;
}

}  // namespace testing_support
