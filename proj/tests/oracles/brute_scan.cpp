#include "oracles/brute_scan.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>

namespace oracle {

std::vector<bool> khop_members(const netmon::Snapshot& s, std::size_t i, int k) {
  const std::size_t n = s.size();
  std::vector<int> depth(n, -1);
  std::deque<std::size_t> queue{i};
  depth[i] = 0;
  while (!queue.empty()) {
    const std::size_t u = queue.front();
    queue.pop_front();
    if (depth[u] == k) continue;
    for (std::size_t v = 0; v < n; ++v) {
      if (v == u || depth[v] >= 0) continue;
      if (s.weight(u, v) > 0 || s.weight(v, u) > 0) {
        depth[v] = depth[u] + 1;
        queue.push_back(v);
      }
    }
  }
  std::vector<bool> members(n);
  for (std::size_t v = 0; v < n; ++v) members[v] = depth[v] >= 0;
  return members;
}

double induced_weight(const netmon::Snapshot& s, const std::vector<bool>& members) {
  double total = 0.0;
  const std::size_t n = s.size();
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = 0; v < n; ++v) {
      if (u == v || !members[u] || !members[v]) continue;
      if (!s.directed() && v < u) continue;
      total += s.weight(u, v);
    }
  }
  return total;
}

namespace {

double locality(const netmon::Snapshot& s, std::size_t i, int k) {
  if (k == 0) {
    double d = 0.0;
    for (std::size_t j = 0; j < s.size(); ++j) {
      if (j == i) continue;
      d += s.weight(i, j);
      if (s.directed()) d += s.weight(j, i);
    }
    return d;
  }
  return induced_weight(s, khop_members(s, i, k));
}

// Standardizes x[idx] against x[idx-m .. idx-1].
double standardize(const std::vector<double>& x, std::size_t idx, std::size_t m) {
  double mean = 0.0;
  for (std::size_t j = idx - m; j < idx; ++j) mean += x[j];
  mean /= static_cast<double>(m);
  double ss = 0.0;
  for (std::size_t j = idx - m; j < idx; ++j) ss += (x[j] - mean) * (x[j] - mean);
  const double sd = std::sqrt(ss / static_cast<double>(m - 1));
  return (x[idx] - mean) / std::max(sd, 1.0);
}

}  // namespace

std::vector<double> scan(const netmon::DynamicNetwork& net, std::size_t m) {
  const std::size_t T = net.length();
  const std::size_t n = net.nodes();
  const double nan = std::numeric_limits<double>::quiet_NaN();
  std::vector<double> out(T, nan);
  for (int k = 0; k <= 2; ++k) {
    // raw[i][t]
    std::vector<std::vector<double>> raw(n, std::vector<double>(T));
    for (std::size_t t = 0; t < T; ++t)
      for (std::size_t i = 0; i < n; ++i) raw[i][t] = locality(net.snapshots[t], i, k);
    std::vector<double> smax(T, nan);
    for (std::size_t t = m; t < T; ++t) {
      double best = -std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < n; ++i) best = std::max(best, standardize(raw[i], t, m));
      smax[t] = best;
    }
    for (std::size_t t = 2 * m; t < T; ++t) {
      const double z = standardize(smax, t, m);
      out[t] = k == 0 ? z : std::max(out[t], z);
    }
  }
  return out;
}

}  // namespace oracle
