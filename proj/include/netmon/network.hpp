#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace netmon {

enum class EdgeKind { Binary, Count };

std::string to_string(EdgeKind kind);
EdgeKind parse_edge_kind(const std::string& text);

/// One adjacency matrix Y_t. Nodes are 0-based; weights are nonnegative
/// integers stored row-major (row = sender for directed snapshots).
class Snapshot {
 public:
  Snapshot() = default;
  Snapshot(std::size_t n, bool directed, EdgeKind kind);

  std::size_t size() const { return n_; }
  bool directed() const { return directed_; }
  EdgeKind kind() const { return kind_; }

  std::uint32_t weight(std::size_t i, std::size_t j) const { return weights_[i * n_ + j]; }

  /// Raw write. Undirected snapshots are not mirrored automatically; use
  /// set_edge for that.
  void set_weight(std::size_t i, std::size_t j, std::uint32_t w) { weights_[i * n_ + j] = w; }

  /// Writes w_ij, and w_ji too when the snapshot is undirected.
  void set_edge(std::size_t i, std::size_t j, std::uint32_t w) {
    weights_[i * n_ + j] = w;
    if (!directed_) weights_[j * n_ + i] = w;
  }

  const std::vector<std::uint32_t>& weights() const { return weights_; }

  friend bool operator==(const Snapshot&, const Snapshot&) = default;

 private:
  std::size_t n_ = 0;
  bool directed_ = false;
  EdgeKind kind_ = EdgeKind::Binary;
  std::vector<std::uint32_t> weights_;
};

/// Snapshots Y_1..Y_T with a Phase I cutoff t1 (times 1..t1 are Phase I).
struct DynamicNetwork {
  std::vector<Snapshot> snapshots;
  std::size_t t1 = 1;

  std::size_t length() const { return snapshots.size(); }
  std::size_t nodes() const { return snapshots.empty() ? 0 : snapshots.front().size(); }
  bool directed() const { return !snapshots.empty() && snapshots.front().directed(); }
  EdgeKind kind() const { return snapshots.empty() ? EdgeKind::Binary : snapshots.front().kind(); }

  /// 1-based access matching the time convention used throughout.
  const Snapshot& at(std::size_t t) const { return snapshots.at(t - 1); }

  friend bool operator==(const DynamicNetwork&, const DynamicNetwork&) = default;
};

enum class Rule { SelfLoop, NonBinaryWeight, Asymmetric, ShapeMismatch, PhaseCutoff };

struct Violation {
  std::size_t t = 0;  // 1-based snapshot index, 0 for network-level findings
  Rule rule = Rule::SelfLoop;
  std::size_t i = 0;
  std::size_t j = 0;
  std::string message;
};

std::string to_string(Rule rule);

/// Every invariant breach of the network, one finding per offending entry
/// (per unordered pair for asymmetry). Empty iff the network is well formed.
std::vector<Violation> validate(const DynamicNetwork& net);

class EdgeListError : public std::runtime_error {
 public:
  EdgeListError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Edge-list text format:
///   #n=<int>,T=<int>,t1=<int>,directed=<0|1>,kind=<binary|count>
///   t,i,j,w        (1-based t and node indices; undirected records use i<j)
DynamicNetwork read_edge_list(std::istream& in);
void write_edge_list(const DynamicNetwork& net, std::ostream& out);

DynamicNetwork read_edge_list_file(const std::string& path);
void write_edge_list_file(const DynamicNetwork& net, const std::string& path);

}  // namespace netmon
