#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "netmon/network.hpp"

namespace netmon {

enum class StatKind { Density, MaxDegree, Diff, Sum, Scan };

std::string to_string(StatKind kind);
StatKind parse_stat_kind(const std::string& text);

inline constexpr StatKind kAllStats[] = {StatKind::Density, StatKind::MaxDegree, StatKind::Diff, StatKind::Sum,
                                         StatKind::Scan};

enum class Execution { Parallel, Serial };

/// A statistic over t = 1..T. Entries before `first_defined` carry no value
/// (only the scan statistic has such a warm-up region, of length 2m).
struct StatSeries {
  StatKind kind = StatKind::Density;
  std::vector<double> values;
  std::size_t first_defined = 1;
  std::size_t window = 0;  // scan window m; 0 for the summary statistics

  std::size_t length() const { return values.size(); }
  bool defined(std::size_t t) const { return t >= first_defined && t <= values.size(); }
  std::optional<double> at(std::size_t t) const {
    return defined(t) ? std::optional<double>(values[t - 1]) : std::nullopt;
  }
};

/// Edges over possible edges: C(n,2) unordered pairs when undirected,
/// n(n-1) ordered pairs when directed.
double density(const Snapshot& s);

/// D_it: in+out weight for directed snapshots, row sum for undirected ones.
std::vector<double> node_degrees(const Snapshot& s);
double max_degree(const Snapshot& s);

inline double diff_stat(double max_deg, double dens, std::size_t n) { return max_deg / static_cast<double>(n) - dens; }
inline double sum_stat(double max_deg, double dens, std::size_t n) { return max_deg / static_cast<double>(n) + dens; }

/// Size of the order-k neighborhood of node i: the degree for k = 0,
/// otherwise the total edge weight of the subgraph induced by the closed
/// k-hop neighborhood (hops ignore direction; induced edges keep it).
double neighborhood_size(const Snapshot& s, std::size_t i, int k);

struct NeighborhoodSizes {
  std::vector<double> order0, order1, order2;
  const std::vector<double>& order(int k) const { return k == 0 ? order0 : (k == 1 ? order1 : order2); }
};

/// Orders 0, 1 and 2 for every node at once.
NeighborhoodSizes neighborhood_sizes(const Snapshot& s, Execution exec = Execution::Parallel);

StatSeries summary_series(const DynamicNetwork& net, StatKind kind);

/// Twice-standardized locality statistic S*_t = max_k S*(k)_t over k = 0, 1, 2,
/// defined for t >= 2m + 1.
StatSeries scan_series(const DynamicNetwork& net, std::size_t m, Execution exec = Execution::Parallel);

StatSeries compute_series(const DynamicNetwork& net, StatKind kind, std::size_t m = 20,
                          Execution exec = Execution::Parallel);

/// Long-format CSV rows `t,name,value`; undefined entries are skipped.
void write_series_csv(const std::vector<StatSeries>& series, std::ostream& out);
std::vector<StatSeries> read_series_csv(std::istream& in);

/// Straightforward single-threaded counterparts of the optimized kernels.
/// Kept for cross-checking and benchmarking.
namespace serial {

NeighborhoodSizes neighborhood_sizes(const Snapshot& s);
StatSeries scan_series(const DynamicNetwork& net, std::size_t m);

}  // namespace serial

}  // namespace netmon
