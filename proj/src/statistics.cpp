#include "netmon/statistics.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <istream>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace netmon {

std::string to_string(StatKind kind) {
  switch (kind) {
    case StatKind::Density: return "density";
    case StatKind::MaxDegree: return "max_degree";
    case StatKind::Diff: return "diff";
    case StatKind::Sum: return "sum";
    case StatKind::Scan: return "scan";
  }
  return "unknown";
}

StatKind parse_stat_kind(const std::string& text) {
  for (StatKind k : kAllStats) {
    if (to_string(k) == text) return k;
  }
  throw std::invalid_argument("unknown statistic '" + text + "' (density|max_degree|diff|sum|scan)");
}

double density(const Snapshot& s) {
  const std::size_t n = s.size();
  if (n < 2) throw std::invalid_argument("density needs at least two nodes");
  double total = 0.0;
  if (s.directed()) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (i != j) total += s.weight(i, j);
    return total / static_cast<double>(n * (n - 1));
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) total += s.weight(i, j);
  return total / (static_cast<double>(n * (n - 1)) / 2.0);
}

std::vector<double> node_degrees(const Snapshot& s) {
  const std::size_t n = s.size();
  std::vector<double> deg(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      deg[i] += s.weight(i, j);
      if (s.directed()) deg[i] += s.weight(j, i);
    }
  }
  return deg;
}

double max_degree(const Snapshot& s) {
  const auto deg = node_degrees(s);
  return deg.empty() ? 0.0 : *std::max_element(deg.begin(), deg.end());
}

namespace {

/// Bit-packed view of one snapshot for neighborhood queries.
///
/// `reach` rows hold undirected adjacency (either direction counts). `unit`
/// rows hold w_uv >= 1 in stored orientation, and `excess` lists the extra
/// weight w_uv - 1 of heavier edges, so the induced weight of a node set is
/// the popcount sum over `unit` plus the matching `excess` entries.
class PackedSnapshot {
 public:
  explicit PackedSnapshot(const Snapshot& s)
      : n_(s.size()), words_((s.size() + 63) / 64), directed_(s.directed()),
        reach_(n_ * words_, 0), unit_(n_ * words_, 0) {
    for (std::size_t u = 0; u < n_; ++u) {
      for (std::size_t v = 0; v < n_; ++v) {
        const std::uint32_t w = s.weight(u, v);
        if (w == 0 || u == v) continue;
        set(unit_, u, v);
        set(reach_, u, v);
        set(reach_, v, u);
        if (w > 1) excess_.push_back({u, v, w - 1});
      }
    }
  }

  std::size_t words() const { return words_; }
  std::size_t nodes() const { return n_; }
  const std::uint64_t* reach(std::size_t u) const { return reach_.data() + u * words_; }

  double induced_weight(const std::vector<std::uint64_t>& members) const {
    std::uint64_t total = 0;
    for (std::size_t wi = 0; wi < words_; ++wi) {
      std::uint64_t bits = members[wi];
      while (bits) {
        const std::size_t u = wi * 64 + static_cast<std::size_t>(std::countr_zero(bits));
        bits &= bits - 1;
        const std::uint64_t* row = unit_.data() + u * words_;
        for (std::size_t w = 0; w < words_; ++w) total += static_cast<std::uint64_t>(std::popcount(row[w] & members[w]));
      }
    }
    for (const auto& e : excess_) {
      if (contains(members, e.u) && contains(members, e.v)) total += e.extra;
    }
    // Undirected rows store every edge twice.
    return directed_ ? static_cast<double>(total) : static_cast<double>(total) / 2.0;
  }

  static bool contains(const std::vector<std::uint64_t>& bits, std::size_t v) {
    return (bits[v / 64] >> (v % 64)) & 1u;
  }

 private:
  struct Excess {
    std::size_t u, v;
    std::uint64_t extra;
  };

  void set(std::vector<std::uint64_t>& rows, std::size_t u, std::size_t v) {
    rows[u * words_ + v / 64] |= std::uint64_t{1} << (v % 64);
  }

  std::size_t n_;
  std::size_t words_;
  bool directed_;
  std::vector<std::uint64_t> reach_;
  std::vector<std::uint64_t> unit_;
  std::vector<Excess> excess_;
};

void fill_orders(const PackedSnapshot& packed, std::size_t i, NeighborhoodSizes& out) {
  const std::size_t words = packed.words();
  std::vector<std::uint64_t> first(words), second(words);
  const std::uint64_t* own = packed.reach(i);
  for (std::size_t w = 0; w < words; ++w) first[w] = own[w];
  first[i / 64] |= std::uint64_t{1} << (i % 64);

  second = first;
  for (std::size_t wi = 0; wi < words; ++wi) {
    std::uint64_t bits = first[wi];
    while (bits) {
      const std::size_t u = wi * 64 + static_cast<std::size_t>(std::countr_zero(bits));
      bits &= bits - 1;
      const std::uint64_t* row = packed.reach(u);
      for (std::size_t w = 0; w < words; ++w) second[w] |= row[w];
    }
  }
  out.order1[i] = packed.induced_weight(first);
  out.order2[i] = packed.induced_weight(second);
}

void check_order(int k) {
  if (k < 0 || k > 2) throw std::invalid_argument("neighborhood order must be 0, 1 or 2");
}

}  // namespace

double neighborhood_size(const Snapshot& s, std::size_t i, int k) {
  check_order(k);
  if (i >= s.size()) throw std::out_of_range("node index out of range");
  if (k == 0) return node_degrees(s)[i];
  const PackedSnapshot packed(s);
  NeighborhoodSizes sizes;
  sizes.order1.assign(s.size(), 0.0);
  sizes.order2.assign(s.size(), 0.0);
  fill_orders(packed, i, sizes);
  return k == 1 ? sizes.order1[i] : sizes.order2[i];
}

NeighborhoodSizes neighborhood_sizes(const Snapshot& s, Execution exec) {
  const std::size_t n = s.size();
  const PackedSnapshot packed(s);
  NeighborhoodSizes out;
  out.order0 = node_degrees(s);
  out.order1.assign(n, 0.0);
  out.order2.assign(n, 0.0);
  const auto count = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(static) if (exec == Execution::Parallel)
  for (std::ptrdiff_t i = 0; i < count; ++i) fill_orders(packed, static_cast<std::size_t>(i), out);
  return out;
}

StatSeries summary_series(const DynamicNetwork& net, StatKind kind) {
  if (kind == StatKind::Scan) throw std::invalid_argument("summary_series: use scan_series for the scan statistic");
  StatSeries out;
  out.kind = kind;
  out.values.resize(net.length());
  const std::size_t n = net.nodes();
  for (std::size_t t = 1; t <= net.length(); ++t) {
    const Snapshot& s = net.at(t);
    double v = 0.0;
    switch (kind) {
      case StatKind::Density: v = density(s); break;
      case StatKind::MaxDegree: v = max_degree(s); break;
      case StatKind::Diff: v = diff_stat(max_degree(s), density(s), n); break;
      case StatKind::Sum: v = sum_stat(max_degree(s), density(s), n); break;
      case StatKind::Scan: break;
    }
    out.values[t - 1] = v;
  }
  return out;
}

namespace {

struct WindowMoments {
  double mean;
  double sd;
};

/// Mean and (m-1)-denominator sd of values[end-m .. end-1] (0-based).
WindowMoments trailing_moments(const std::vector<double>& values, std::size_t end, std::size_t m) {
  double mean = 0.0;
  for (std::size_t j = end - m; j < end; ++j) mean += values[j];
  mean /= static_cast<double>(m);
  double ss = 0.0;
  for (std::size_t j = end - m; j < end; ++j) ss += (values[j] - mean) * (values[j] - mean);
  return {mean, std::sqrt(ss / static_cast<double>(m - 1))};
}

/// sizes[k][t][i], t 0-based. Produces the scan series from locality sizes.
StatSeries standardize_scan(const std::vector<std::vector<std::vector<double>>>& sizes, std::size_t T,
                            std::size_t m) {
  StatSeries out;
  out.kind = StatKind::Scan;
  out.window = m;
  out.first_defined = 2 * m + 1;
  out.values.assign(T, std::numeric_limits<double>::quiet_NaN());

  std::vector<double> node_series;
  for (int k = 0; k <= 2; ++k) {
    const auto& per_time = sizes[static_cast<std::size_t>(k)];
    const std::size_t n = per_time.front().size();
    // S^(k)_t for 0-based t >= m.
    std::vector<double> local_max(T, -std::numeric_limits<double>::infinity());
    node_series.resize(T);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t t = 0; t < T; ++t) node_series[t] = per_time[t][i];
      for (std::size_t t = m; t < T; ++t) {
        const auto mom = trailing_moments(node_series, t, m);
        const double z = (node_series[t] - mom.mean) / std::max(mom.sd, 1.0);
        local_max[t] = std::max(local_max[t], z);
      }
    }
    for (std::size_t t = 2 * m; t < T; ++t) {
      const auto mom = trailing_moments(local_max, t, m);
      const double z = (local_max[t] - mom.mean) / std::max(mom.sd, 1.0);
      out.values[t] = k == 0 ? z : std::max(out.values[t], z);
    }
  }
  return out;
}

void check_scan_shape(const DynamicNetwork& net, std::size_t m) {
  if (m < 2) throw std::invalid_argument("scan window m must be at least 2");
  if (net.length() <= 2 * m) throw std::invalid_argument("scan needs T > 2m");
}

}  // namespace

StatSeries scan_series(const DynamicNetwork& net, std::size_t m, Execution exec) {
  check_scan_shape(net, m);
  const std::size_t T = net.length();
  std::vector<std::vector<std::vector<double>>> sizes(3, std::vector<std::vector<double>>(T));
  const auto count = static_cast<std::ptrdiff_t>(T);
#pragma omp parallel for schedule(dynamic) if (exec == Execution::Parallel)
  for (std::ptrdiff_t t = 0; t < count; ++t) {
    auto ns = neighborhood_sizes(net.snapshots[static_cast<std::size_t>(t)], Execution::Serial);
    sizes[0][static_cast<std::size_t>(t)] = std::move(ns.order0);
    sizes[1][static_cast<std::size_t>(t)] = std::move(ns.order1);
    sizes[2][static_cast<std::size_t>(t)] = std::move(ns.order2);
  }
  return standardize_scan(sizes, T, m);
}

StatSeries compute_series(const DynamicNetwork& net, StatKind kind, std::size_t m, Execution exec) {
  return kind == StatKind::Scan ? scan_series(net, m, exec) : summary_series(net, kind);
}

void write_series_csv(const std::vector<StatSeries>& series, std::ostream& out) {
  out << "t,name,value\n";
  out.precision(17);
  for (const auto& s : series) {
    for (std::size_t t = s.first_defined; t <= s.length(); ++t) {
      out << t << ',' << to_string(s.kind) << ',' << s.values[t - 1] << '\n';
    }
  }
}

std::vector<StatSeries> read_series_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw std::invalid_argument("series csv: empty input");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "t,name,value") throw std::invalid_argument("series csv: expected header t,name,value");
  std::map<StatKind, std::map<std::size_t, double>> rows;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string t_text, name, value_text;
    if (!std::getline(ss, t_text, ',') || !std::getline(ss, name, ',') || !std::getline(ss, value_text)) {
      throw std::invalid_argument("series csv: malformed line " + std::to_string(lineno));
    }
    try {
      rows[parse_stat_kind(name)][std::stoul(t_text)] = std::stod(value_text);
    } catch (const std::logic_error&) {
      throw std::invalid_argument("series csv: malformed line " + std::to_string(lineno));
    }
  }
  std::vector<StatSeries> out;
  for (auto& [kind, values] : rows) {
    StatSeries s;
    s.kind = kind;
    const std::size_t first = values.begin()->first;
    const std::size_t last = values.rbegin()->first;
    if (first < 1) throw std::invalid_argument("series csv: t must be >= 1");
    s.first_defined = first;
    s.values.assign(last, std::numeric_limits<double>::quiet_NaN());
    for (auto [t, v] : values) s.values[t - 1] = v;
    for (std::size_t t = first; t <= last; ++t) {
      if (!values.count(t)) throw std::invalid_argument("series csv: gap in " + to_string(kind) + " at t=" + std::to_string(t));
    }
    if (kind == StatKind::Scan) s.window = (first - 1) / 2;
    out.push_back(std::move(s));
  }
  return out;
}

namespace serial {

NeighborhoodSizes neighborhood_sizes(const Snapshot& s) {
  const std::size_t n = s.size();
  NeighborhoodSizes out;
  out.order0 = node_degrees(s);
  out.order1.assign(n, 0.0);
  out.order2.assign(n, 0.0);

  auto linked = [&s](std::size_t u, std::size_t v) { return u != v && (s.weight(u, v) > 0 || s.weight(v, u) > 0); };
  auto induced = [&s, n](const std::vector<char>& in) {
    double total = 0.0;
    for (std::size_t u = 0; u < n; ++u) {
      if (!in[u]) continue;
      for (std::size_t v = s.directed() ? 0 : u + 1; v < n; ++v) {
        if (u != v && in[v]) total += s.weight(u, v);
      }
    }
    return total;
  };

  std::vector<char> ring1(n), ring2(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::fill(ring1.begin(), ring1.end(), 0);
    ring1[i] = 1;
    for (std::size_t v = 0; v < n; ++v)
      if (linked(i, v)) ring1[v] = 1;
    ring2 = ring1;
    for (std::size_t u = 0; u < n; ++u) {
      if (!ring1[u]) continue;
      for (std::size_t v = 0; v < n; ++v)
        if (linked(u, v)) ring2[v] = 1;
    }
    out.order1[i] = induced(ring1);
    out.order2[i] = induced(ring2);
  }
  return out;
}

StatSeries scan_series(const DynamicNetwork& net, std::size_t m) {
  check_scan_shape(net, m);
  const std::size_t T = net.length();
  std::vector<std::vector<std::vector<double>>> sizes(3, std::vector<std::vector<double>>(T));
  for (std::size_t t = 0; t < T; ++t) {
    auto ns = serial::neighborhood_sizes(net.snapshots[t]);
    sizes[0][t] = std::move(ns.order0);
    sizes[1][t] = std::move(ns.order1);
    sizes[2][t] = std::move(ns.order2);
  }
  return standardize_scan(sizes, T, m);
}

}  // namespace serial

}  // namespace netmon
