#include "netmon/network.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string_view>

namespace netmon {

std::string to_string(EdgeKind kind) { return kind == EdgeKind::Binary ? "binary" : "count"; }

EdgeKind parse_edge_kind(const std::string& text) {
  if (text == "binary") return EdgeKind::Binary;
  if (text == "count") return EdgeKind::Count;
  throw std::invalid_argument("unknown edge kind '" + text + "'");
}

Snapshot::Snapshot(std::size_t n, bool directed, EdgeKind kind)
    : n_(n), directed_(directed), kind_(kind), weights_(n * n, 0) {}

std::string to_string(Rule rule) {
  switch (rule) {
    case Rule::SelfLoop: return "self-loop";
    case Rule::NonBinaryWeight: return "non-binary-weight";
    case Rule::Asymmetric: return "asymmetric";
    case Rule::ShapeMismatch: return "shape-mismatch";
    case Rule::PhaseCutoff: return "phase-cutoff";
  }
  return "unknown";
}

std::vector<Violation> validate(const DynamicNetwork& net) {
  std::vector<Violation> out;
  const std::size_t T = net.length();
  if (net.t1 < 1 || net.t1 >= T) {
    out.push_back({0, Rule::PhaseCutoff, 0, 0,
                   "t1=" + std::to_string(net.t1) + " outside [1, T-1] for T=" + std::to_string(T)});
  }
  if (T == 0) return out;

  const Snapshot& first = net.snapshots.front();
  for (std::size_t t = 1; t <= T; ++t) {
    const Snapshot& s = net.at(t);
    if (s.size() != first.size() || s.directed() != first.directed() || s.kind() != first.kind() ||
        s.weights().size() != s.size() * s.size()) {
      out.push_back({t, Rule::ShapeMismatch, 0, 0, "snapshot " + std::to_string(t) + " differs in n/directed/kind"});
      continue;
    }
    const std::size_t n = s.size();
    for (std::size_t i = 0; i < n; ++i) {
      if (s.weight(i, i) != 0) {
        out.push_back({t, Rule::SelfLoop, i, i,
                       "self-loop at t=" + std::to_string(t) + ", node " + std::to_string(i)});
      }
      for (std::size_t j = 0; j < n; ++j) {
        if (i == j) continue;
        if (s.kind() == EdgeKind::Binary && s.weight(i, j) > 1) {
          out.push_back({t, Rule::NonBinaryWeight, i, j,
                         "weight " + std::to_string(s.weight(i, j)) + " at t=" + std::to_string(t) + " (" +
                             std::to_string(i) + "," + std::to_string(j) + ") in binary network"});
        }
        if (!s.directed() && i < j && s.weight(i, j) != s.weight(j, i)) {
          out.push_back({t, Rule::Asymmetric, i, j,
                         "asymmetric pair at t=" + std::to_string(t) + " (" + std::to_string(i) + "," +
                             std::to_string(j) + ")"});
        }
      }
    }
  }
  return out;
}

namespace {

long long parse_int(std::string_view field, std::size_t line, const char* what) {
  while (!field.empty() && field.front() == ' ') field.remove_prefix(1);
  while (!field.empty() && (field.back() == ' ' || field.back() == '\r')) field.remove_suffix(1);
  long long value = 0;
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc() || ptr != field.data() + field.size() || field.empty()) {
    throw EdgeListError(line, std::string("malformed ") + what + " '" + std::string(field) + "'");
  }
  return value;
}

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  for (;;) {
    std::size_t pos = text.find(sep, start);
    parts.push_back(text.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

struct Header {
  long long n = -1, T = -1, t1 = -1, directed = -1;
  std::string kind;
};

Header parse_header(const std::string& line) {
  if (line.empty() || line[0] != '#') throw EdgeListError(1, "missing header line");
  Header h;
  for (std::string_view item : split(std::string_view(line).substr(1), ',')) {
    auto eq = item.find('=');
    if (eq == std::string_view::npos) throw EdgeListError(1, "malformed header field '" + std::string(item) + "'");
    std::string_view key = item.substr(0, eq);
    std::string_view val = item.substr(eq + 1);
    if (key == "n") h.n = parse_int(val, 1, "n");
    else if (key == "T") h.T = parse_int(val, 1, "T");
    else if (key == "t1") h.t1 = parse_int(val, 1, "t1");
    else if (key == "directed") h.directed = parse_int(val, 1, "directed");
    else if (key == "kind") {
      h.kind = std::string(val);
      while (!h.kind.empty() && (h.kind.back() == '\r' || h.kind.back() == ' ')) h.kind.pop_back();
    } else throw EdgeListError(1, "unknown header key '" + std::string(key) + "'");
  }
  if (h.n < 1) throw EdgeListError(1, "header needs n >= 1");
  if (h.T < 1) throw EdgeListError(1, "header needs T >= 1");
  if (h.t1 < 1 || h.t1 >= h.T) throw EdgeListError(1, "header needs 1 <= t1 < T");
  if (h.directed != 0 && h.directed != 1) throw EdgeListError(1, "header needs directed=0|1");
  if (h.kind != "binary" && h.kind != "count") throw EdgeListError(1, "header needs kind=binary|count");
  return h;
}

}  // namespace

DynamicNetwork read_edge_list(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw EdgeListError(1, "empty input");
  const Header h = parse_header(line);
  const auto n = static_cast<std::size_t>(h.n);
  const EdgeKind kind = parse_edge_kind(h.kind);
  const bool directed = h.directed == 1;

  DynamicNetwork net;
  net.t1 = static_cast<std::size_t>(h.t1);
  net.snapshots.assign(static_cast<std::size_t>(h.T), Snapshot(n, directed, kind));

  std::size_t lineno = 1;
  long long last_t = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line == "\r") continue;
    auto fields = split(line, ',');
    if (fields.size() != 4) throw EdgeListError(lineno, "expected 4 fields t,i,j,w");
    const long long t = parse_int(fields[0], lineno, "t");
    const long long i = parse_int(fields[1], lineno, "i");
    const long long j = parse_int(fields[2], lineno, "j");
    const long long w = parse_int(fields[3], lineno, "w");
    if (t < 1 || t > h.T) throw EdgeListError(lineno, "t=" + std::to_string(t) + " outside 1..T");
    if (t < last_t) throw EdgeListError(lineno, "records not sorted by t");
    last_t = t;
    if (i < 1 || i > h.n || j < 1 || j > h.n) {
      throw EdgeListError(lineno, "node index out of range 1.." + std::to_string(h.n));
    }
    if (i == j) throw EdgeListError(lineno, "self-loop record");
    if (w < 0) throw EdgeListError(lineno, "negative weight");
    if (kind == EdgeKind::Binary && w > 1) throw EdgeListError(lineno, "weight > 1 in binary network");
    if (w > 0xFFFFFFFFLL) throw EdgeListError(lineno, "weight too large");
    auto& snap = net.snapshots[static_cast<std::size_t>(t - 1)];
    snap.set_edge(static_cast<std::size_t>(i - 1), static_cast<std::size_t>(j - 1), static_cast<std::uint32_t>(w));
  }
  return net;
}

void write_edge_list(const DynamicNetwork& net, std::ostream& out) {
  out << "#n=" << net.nodes() << ",T=" << net.length() << ",t1=" << net.t1
      << ",directed=" << (net.directed() ? 1 : 0) << ",kind=" << to_string(net.kind()) << '\n';
  for (std::size_t t = 1; t <= net.length(); ++t) {
    const Snapshot& s = net.at(t);
    const std::size_t n = s.size();
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = s.directed() ? 0 : i + 1; j < n; ++j) {
        if (i == j) continue;
        if (auto w = s.weight(i, j); w != 0) out << t << ',' << i + 1 << ',' << j + 1 << ',' << w << '\n';
      }
    }
  }
}

DynamicNetwork read_edge_list_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::ios_base::failure("cannot open '" + path + "'");
  return read_edge_list(in);
}

void write_edge_list_file(const DynamicNetwork& net, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::ios_base::failure("cannot write '" + path + "'");
  write_edge_list(net, out);
}

}  // namespace netmon
