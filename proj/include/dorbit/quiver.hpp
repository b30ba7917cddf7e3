#pragma once

// Quivers, paths, dimension vectors, the Ringel/Tits forms, Dynkin
// classification and null-root witnesses.

#include <algorithm>
#include <fstream>
#include <map>
#include <numeric>
#include <optional>
#include <queue>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "dorbit/linalg.hpp"

namespace dorbit {

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& msg)
      : std::runtime_error("line " + std::to_string(line) + ": " + msg), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

/// Nonnegative integer vector indexed by vertices 1..n.
class DimensionVector {
 public:
  DimensionVector() = default;
  explicit DimensionVector(std::size_t n) : v_(n, 0) {}
  DimensionVector(std::initializer_list<long> xs) : v_(xs) { check(); }
  explicit DimensionVector(std::vector<long> xs) : v_(std::move(xs)) { check(); }

  static DimensionVector unit(std::size_t n, int vertex) {
    DimensionVector d(n);
    d.at(vertex) = 1;
    return d;
  }

  /// Comma-separated integers, e.g. "1,2,0".
  static DimensionVector parse(const std::string& text) {
    std::vector<long> xs;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      std::size_t used = 0;
      long x = 0;
      try {
        x = std::stol(tok, &used);
      } catch (const std::exception&) {
        throw std::invalid_argument("bad dimension vector entry '" + tok + "'");
      }
      while (used < tok.size() && std::isspace(static_cast<unsigned char>(tok[used]))) ++used;
      if (used != tok.size()) throw std::invalid_argument("bad dimension vector entry '" + tok + "'");
      xs.push_back(x);
    }
    return DimensionVector(std::move(xs));
  }

  std::size_t size() const { return v_.size(); }
  /// 1-based vertex access.
  long& at(int vertex) { return v_.at(static_cast<std::size_t>(vertex - 1)); }
  long at(int vertex) const { return v_.at(static_cast<std::size_t>(vertex - 1)); }
  long operator[](std::size_t i) const { return v_[i]; }
  long& operator[](std::size_t i) { return v_[i]; }
  const std::vector<long>& values() const { return v_; }

  long sum() const { return std::accumulate(v_.begin(), v_.end(), 0L); }
  long sum_of_squares() const {
    long s = 0;
    for (long x : v_) s += x * x;
    return s;
  }
  bool is_zero() const {
    return std::all_of(v_.begin(), v_.end(), [](long x) { return x == 0; });
  }

  std::string to_string() const {
    std::string s;
    for (std::size_t i = 0; i < v_.size(); ++i) {
      if (i) s += ",";
      s += std::to_string(v_[i]);
    }
    return s;
  }

  DimensionVector& operator+=(const DimensionVector& o) {
    same_size(o);
    for (std::size_t i = 0; i < v_.size(); ++i) v_[i] += o.v_[i];
    return *this;
  }
  DimensionVector& operator-=(const DimensionVector& o) {
    same_size(o);
    for (std::size_t i = 0; i < v_.size(); ++i) v_[i] -= o.v_[i];
    check();
    return *this;
  }
  friend DimensionVector operator+(DimensionVector a, const DimensionVector& b) { return a += b; }
  friend DimensionVector operator-(DimensionVector a, const DimensionVector& b) { return a -= b; }
  friend bool operator==(const DimensionVector&, const DimensionVector&) = default;
  friend auto operator<=>(const DimensionVector&, const DimensionVector&) = default;

 private:
  void check() const {
    for (long x : v_) {
      if (x < 0) throw std::invalid_argument("dimension vector entries must be nonnegative");
    }
  }
  void same_size(const DimensionVector& o) const {
    if (o.size() != size()) throw DimensionMismatch("dimension vector length mismatch");
  }

  std::vector<long> v_;
};

struct Arrow {
  std::string id;
  int source = 0;
  int target = 0;
  friend bool operator==(const Arrow&, const Arrow&) = default;
};

/// A path, stored as its start vertex plus arrow indices in traversal order.
/// The trivial path at v has no arrows and start == end == v.
struct Path {
  int start = 0;
  int end = 0;
  std::vector<std::size_t> arrows;

  static Path trivial(int v) { return Path{v, v, {}}; }
  std::size_t length() const { return arrows.size(); }
  bool is_trivial() const { return arrows.empty(); }
  friend bool operator==(const Path&, const Path&) = default;
};

class Quiver {
 public:
  Quiver() = default;

  /// Quiver without oriented cycles; throws otherwise.
  static Quiver acyclic(int n, std::vector<Arrow> arrows) {
    Quiver q(n, std::move(arrows));
    if (!q.compute_acyclic()) throw std::invalid_argument("quiver has an oriented cycle");
    q.acyclic_ = true;
    return q;
  }

  /// Any finite quiver (used for double quivers, which have 2-cycles).
  static Quiver general(int n, std::vector<Arrow> arrows) {
    Quiver q(n, std::move(arrows));
    q.acyclic_ = q.compute_acyclic();
    return q;
  }

  int vertex_count() const { return n_; }
  const std::vector<Arrow>& arrows() const { return arrows_; }
  const Arrow& arrow(std::size_t i) const { return arrows_.at(i); }
  std::size_t arrow_count() const { return arrows_.size(); }
  bool is_acyclic() const { return acyclic_; }

  std::size_t arrow_index(const std::string& id) const {
    auto it = index_.find(id);
    if (it == index_.end()) throw std::out_of_range("no arrow '" + id + "'");
    return it->second;
  }
  bool has_arrow(const std::string& id) const { return index_.count(id) > 0; }

  std::vector<std::size_t> arrows_out(int v) const {
    check_vertex(v);
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < arrows_.size(); ++i) {
      if (arrows_[i].source == v) out.push_back(i);
    }
    return out;
  }

  std::vector<std::size_t> arrows_in(int v) const {
    check_vertex(v);
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < arrows_.size(); ++i) {
      if (arrows_[i].target == v) out.push_back(i);
    }
    return out;
  }

  /// Number of arrows incident to v in either direction.
  std::size_t degree(int v) const { return arrows_out(v).size() + arrows_in(v).size(); }

  void check_vertex(int v) const {
    if (v < 1 || v > n_) throw std::out_of_range("vertex " + std::to_string(v) + " out of range 1.." + std::to_string(n_));
  }

  void check_dimension(const DimensionVector& d) const {
    if (d.size() != static_cast<std::size_t>(n_)) {
      throw DimensionMismatch("dimension vector has " + std::to_string(d.size()) + " entries, quiver has " +
                              std::to_string(n_) + " vertices");
    }
  }

  /// Arrows listed as a path in traversal order must compose.
  Path make_path(int start, const std::vector<std::size_t>& arrows) const {
    int v = start;
    for (auto a : arrows) {
      if (arrows_.at(a).source != v) throw std::invalid_argument("arrows do not compose into a path");
      v = arrows_[a].target;
    }
    return Path{start, v, arrows};
  }

  std::string path_to_string(const Path& p) const {
    if (p.is_trivial()) return "e_" + std::to_string(p.start);
    std::string s;
    for (std::size_t k = 0; k < p.arrows.size(); ++k) {
      if (k) s += ".";
      s += arrows_[p.arrows[k]].id;
    }
    return s;
  }

  friend bool operator==(const Quiver& a, const Quiver& b) { return a.n_ == b.n_ && a.arrows_ == b.arrows_; }

 private:
  Quiver(int n, std::vector<Arrow> arrows) : n_(n), arrows_(std::move(arrows)) {
    if (n < 0) throw std::invalid_argument("negative vertex count");
    for (std::size_t i = 0; i < arrows_.size(); ++i) {
      const Arrow& a = arrows_[i];
      if (a.id.empty()) throw std::invalid_argument("empty arrow id");
      if (a.source < 1 || a.source > n || a.target < 1 || a.target > n) {
        throw std::invalid_argument("arrow '" + a.id + "' has an endpoint out of range");
      }
      if (!index_.emplace(a.id, i).second) throw std::invalid_argument("duplicate arrow id '" + a.id + "'");
    }
  }

  bool compute_acyclic() const {
    std::vector<int> indeg(static_cast<std::size_t>(n_) + 1, 0);
    for (const auto& a : arrows_) ++indeg[static_cast<std::size_t>(a.target)];
    std::vector<int> stack;
    for (int v = 1; v <= n_; ++v) {
      if (indeg[static_cast<std::size_t>(v)] == 0) stack.push_back(v);
    }
    int seen = 0;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      ++seen;
      for (const auto& a : arrows_) {
        if (a.source == v && --indeg[static_cast<std::size_t>(a.target)] == 0) stack.push_back(a.target);
      }
    }
    return seen == n_;
  }

  int n_ = 0;
  std::vector<Arrow> arrows_;
  std::map<std::string, std::size_t> index_;
  bool acyclic_ = true;
};

// ---------------------------------------------------------------------------
// Text format

/// Parses
///   vertices: <n>
///   <arrow-id>: <source> -> <target>
/// Blank lines and '#' comments are ignored.
inline Quiver parse_quiver(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  std::optional<int> n;
  std::vector<Arrow> arrows;
  std::vector<int> arrow_lines;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    line = line.substr(first, line.find_last_not_of(" \t\r") - first + 1);
    auto colon = line.find(':');
    if (colon == std::string::npos) throw ParseError(lineno, "expected ':'");
    std::string key = line.substr(0, colon);
    std::string rest = line.substr(colon + 1);
    key.erase(key.find_last_not_of(" \t") + 1);
    if (!n) {
      if (key != "vertices") throw ParseError(lineno, "first line must be 'vertices: <n>'");
      try {
        std::size_t used = 0;
        int v = std::stoi(rest, &used);
        if (rest.find_first_not_of(" \t", used) != std::string::npos || v < 0) throw std::invalid_argument("");
        n = v;
      } catch (const std::exception&) {
        throw ParseError(lineno, "bad vertex count '" + rest + "'");
      }
      continue;
    }
    auto arrow_pos = rest.find("->");
    if (arrow_pos == std::string::npos) throw ParseError(lineno, "expected '<source> -> <target>'");
    int s = 0, t = 0;
    try {
      std::size_t u1 = 0, u2 = 0;
      std::string ls = rest.substr(0, arrow_pos), rs = rest.substr(arrow_pos + 2);
      s = std::stoi(ls, &u1);
      t = std::stoi(rs, &u2);
      if (ls.find_first_not_of(" \t", u1) != std::string::npos || rs.find_first_not_of(" \t", u2) != std::string::npos) {
        throw std::invalid_argument("");
      }
    } catch (const std::exception&) {
      throw ParseError(lineno, "bad arrow endpoints '" + rest + "'");
    }
    if (key.empty() || key.find_first_of(" \t") != std::string::npos) throw ParseError(lineno, "bad arrow id '" + key + "'");
    if (s < 1 || s > *n || t < 1 || t > *n) throw ParseError(lineno, "arrow endpoint out of range");
    for (std::size_t k = 0; k < arrows.size(); ++k) {
      if (arrows[k].id == key) throw ParseError(lineno, "duplicate arrow id '" + key + "'");
    }
    arrows.push_back({key, s, t});
    arrow_lines.push_back(lineno);
  }
  if (!n) throw ParseError(lineno + 1, "missing 'vertices: <n>' line");
  try {
    return Quiver::acyclic(*n, arrows);
  } catch (const std::invalid_argument& e) {
    throw ParseError(arrow_lines.empty() ? 1 : arrow_lines.back(), e.what());
  }
}

inline Quiver load_quiver(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open quiver file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_quiver(ss.str());
}

inline std::string format_quiver(const Quiver& q) {
  std::string s = "vertices: " + std::to_string(q.vertex_count()) + "\n";
  for (const auto& a : q.arrows()) {
    s += a.id + ": " + std::to_string(a.source) + " -> " + std::to_string(a.target) + "\n";
  }
  return s;
}

// ---------------------------------------------------------------------------
// Small constructors used throughout tests and tools.

/// Type A_n with arrows a<i> between i and i+1; `forward[i-1]` selects i -> i+1.
inline Quiver type_a(int n, const std::vector<bool>& forward) {
  if (static_cast<int>(forward.size()) != std::max(0, n - 1)) throw std::invalid_argument("orientation length must be n-1");
  std::vector<Arrow> arrows;
  for (int i = 1; i < n; ++i) {
    if (forward[static_cast<std::size_t>(i - 1)]) {
      arrows.push_back({"a" + std::to_string(i), i, i + 1});
    } else {
      arrows.push_back({"a" + std::to_string(i), i + 1, i});
    }
  }
  return Quiver::acyclic(n, arrows);
}

inline Quiver linear_a(int n) { return type_a(n, std::vector<bool>(static_cast<std::size_t>(std::max(0, n - 1)), true)); }

// ---------------------------------------------------------------------------
// Vertex classification

/// Which reading of "sink" to use. The default counts a vertex without
/// outgoing arrows as a sink, which is what the gluing construction needs
/// (a sink admits quotient maps onto the simple projective there).
/// `no_incoming` is the opposite, literal reading.
enum class SinkConvention { no_outgoing, no_incoming };

struct VertexClass {
  bool sink = false;
  bool source = false;
  bool admissible = false;
  bool interior = false;
};

inline VertexClass classify_vertex(const Quiver& q, int v, SinkConvention conv = SinkConvention::no_outgoing) {
  q.check_vertex(v);
  bool no_out = q.arrows_out(v).empty();
  bool no_in = q.arrows_in(v).empty();
  VertexClass c;
  c.sink = conv == SinkConvention::no_outgoing ? no_out : no_in;
  c.source = conv == SinkConvention::no_outgoing ? no_in : no_out;
  c.admissible = c.sink || c.source;
  c.interior = q.degree(v) >= 2;
  return c;
}

// ---------------------------------------------------------------------------
// Bilinear forms

inline long ringel_form(const Quiver& q, const DimensionVector& d, const DimensionVector& e) {
  q.check_dimension(d);
  q.check_dimension(e);
  long s = 0;
  for (std::size_t i = 0; i < d.size(); ++i) s += d[i] * e[i];
  for (const auto& a : q.arrows()) s -= d.at(a.source) * e.at(a.target);
  return s;
}

inline long tits_form(const Quiver& q, const DimensionVector& d) { return ringel_form(q, d, d); }

// ---------------------------------------------------------------------------
// Underlying graph, Dynkin classification

/// Symmetric multiplicity matrix of the underlying graph (0-based).
inline std::vector<std::vector<int>> underlying_graph(const Quiver& q) {
  auto n = static_cast<std::size_t>(q.vertex_count());
  std::vector<std::vector<int>> adj(n, std::vector<int>(n, 0));
  for (const auto& a : q.arrows()) {
    auto s = static_cast<std::size_t>(a.source - 1), t = static_cast<std::size_t>(a.target - 1);
    if (s == t) {
      adj[s][s] += 2;
    } else {
      ++adj[s][t];
      ++adj[t][s];
    }
  }
  return adj;
}

/// Connected components as sorted lists of 1-based vertices.
inline std::vector<std::vector<int>> connected_components(const Quiver& q) {
  auto adj = underlying_graph(q);
  auto n = adj.size();
  std::vector<int> comp(n, -1);
  std::vector<std::vector<int>> out;
  for (std::size_t s = 0; s < n; ++s) {
    if (comp[s] >= 0) continue;
    std::vector<int> members;
    std::vector<std::size_t> stack{s};
    comp[s] = static_cast<int>(out.size());
    while (!stack.empty()) {
      auto v = stack.back();
      stack.pop_back();
      members.push_back(static_cast<int>(v) + 1);
      for (std::size_t w = 0; w < n; ++w) {
        if (adj[v][w] > 0 && comp[w] < 0) {
          comp[w] = comp[s];
          stack.push_back(w);
        }
      }
    }
    std::sort(members.begin(), members.end());
    out.push_back(std::move(members));
  }
  return out;
}

inline bool is_tree(const Quiver& q) {
  return q.vertex_count() > 0 && connected_components(q).size() == 1 &&
         q.arrow_count() + 1 == static_cast<std::size_t>(q.vertex_count());
}

struct DynkinType {
  char family = 0;  // 'A', 'D', 'E', or 0 when not Dynkin
  int rank = 0;

  bool is_dynkin() const { return family != 0; }
  std::string label() const { return family ? std::string(1, family) + "_" + std::to_string(rank) : "none"; }
  friend bool operator==(const DynkinType&, const DynkinType&) = default;
};

struct DynkinClassification {
  bool dynkin = false;
  std::vector<DynkinType> components;

  /// The type of a connected quiver; "none" when disconnected or not Dynkin.
  DynkinType type() const {
    if (components.size() == 1) return components[0];
    return DynkinType{};
  }
};

namespace detail {

// Classifies one connected component given as 0-based vertex list.
inline DynkinType classify_component(const std::vector<std::vector<int>>& adj, const std::vector<int>& verts) {
  std::size_t m = verts.size();
  std::size_t edges = 0;
  std::map<int, int> deg;
  for (int v : verts) {
    int dv = 0;
    for (int w : verts) {
      int k = adj[static_cast<std::size_t>(v)][static_cast<std::size_t>(w)];
      if (k > 1 && v != w) return {};  // multiple edge
      if (v == w && k > 0) return {};
      dv += k;
    }
    deg[v] = dv;
    edges += static_cast<std::size_t>(dv);
  }
  edges /= 2;
  if (edges + 1 != m) return {};  // contains a cycle
  std::vector<int> branch;
  for (auto [v, dv] : deg) {
    if (dv > 3) return {};
    if (dv == 3) branch.push_back(v);
  }
  if (branch.empty()) return {'A', static_cast<int>(m)};
  if (branch.size() > 1) return {};
  // Arm lengths from the branch vertex.
  int c = branch[0];
  std::vector<int> arms;
  for (int w : verts) {
    if (adj[static_cast<std::size_t>(c)][static_cast<std::size_t>(w)] == 0) continue;
    int len = 1, prev = c, cur = w;
    while (true) {
      int next = -1;
      for (int x : verts) {
        if (x != prev && adj[static_cast<std::size_t>(cur)][static_cast<std::size_t>(x)] > 0) next = x;
      }
      if (next < 0) break;
      prev = cur;
      cur = next;
      ++len;
    }
    arms.push_back(len);
  }
  std::sort(arms.begin(), arms.end());
  int r = static_cast<int>(m);
  if (arms[0] == 1 && arms[1] == 1) return {'D', r};
  if (arms[0] == 1 && arms[1] == 2 && arms[2] <= 4) return {'E', r};
  return {};
}

}  // namespace detail

inline DynkinClassification is_dynkin(const Quiver& q) {
  auto adj = underlying_graph(q);
  DynkinClassification out;
  out.dynkin = q.vertex_count() > 0;
  for (const auto& comp : connected_components(q)) {
    std::vector<int> zero_based;
    for (int v : comp) zero_based.push_back(v - 1);
    auto t = detail::classify_component(adj, zero_based);
    out.dynkin = out.dynkin && t.is_dynkin();
    out.components.push_back(t);
  }
  return out;
}

/// Arm lengths (vertex counts, sorted ascending) around the unique branch
/// vertex of a tree; empty when there is no branch vertex.
inline std::pair<int, std::vector<int>> branch_arms(const Quiver& q) {
  auto adj = underlying_graph(q);
  int n = q.vertex_count();
  int c = 0;
  for (int v = 1; v <= n; ++v) {
    if (q.degree(v) >= 3) {
      if (c) return {0, {}};
      c = v;
    }
  }
  if (!c) return {0, {}};
  std::vector<int> arms;
  for (int w = 1; w <= n; ++w) {
    if (!adj[static_cast<std::size_t>(c - 1)][static_cast<std::size_t>(w - 1)]) continue;
    int len = 1, prev = c, cur = w;
    while (true) {
      int next = 0;
      for (int x = 1; x <= n; ++x) {
        if (x != prev && adj[static_cast<std::size_t>(cur - 1)][static_cast<std::size_t>(x - 1)]) next = x;
      }
      if (!next) break;
      prev = cur;
      cur = next;
      ++len;
    }
    arms.push_back(len);
  }
  std::sort(arms.begin(), arms.end());
  return {c, arms};
}

/// Vertices of a type-A quiver in path order, starting at the smaller end;
/// nullopt if the underlying graph is not a path.
inline std::optional<std::vector<int>> path_order(const Quiver& q) {
  int n = q.vertex_count();
  if (n == 0) return std::vector<int>{};
  auto t = is_dynkin(q).type();
  if (t.family != 'A') return std::nullopt;
  auto adj = underlying_graph(q);
  int start = 0;
  for (int v = 1; v <= n; ++v) {
    if (q.degree(v) <= 1) {
      start = v;
      break;
    }
  }
  std::vector<int> order{start};
  int prev = 0, cur = start;
  while (static_cast<int>(order.size()) < n) {
    int next = 0;
    for (int x = 1; x <= n; ++x) {
      if (x != prev && adj[static_cast<std::size_t>(cur - 1)][static_cast<std::size_t>(x - 1)]) next = x;
    }
    prev = cur;
    cur = next;
    order.push_back(cur);
  }
  return order;
}

// ---------------------------------------------------------------------------
// Opposite quiver, relabeling

inline Quiver opposite(const Quiver& q) {
  std::vector<Arrow> arrows;
  for (const auto& a : q.arrows()) arrows.push_back({a.id, a.target, a.source});
  return q.is_acyclic() ? Quiver::acyclic(q.vertex_count(), arrows) : Quiver::general(q.vertex_count(), arrows);
}

/// Renames vertex v to new_label[v-1]; arrow ids and order are kept.
inline Quiver relabel(const Quiver& q, const std::vector<int>& new_label) {
  std::vector<Arrow> arrows;
  for (const auto& a : q.arrows()) {
    arrows.push_back({a.id, new_label.at(static_cast<std::size_t>(a.source - 1)),
                      new_label.at(static_cast<std::size_t>(a.target - 1))});
  }
  return q.is_acyclic() ? Quiver::acyclic(q.vertex_count(), arrows) : Quiver::general(q.vertex_count(), arrows);
}

inline DimensionVector relabel(const DimensionVector& d, const std::vector<int>& new_label) {
  DimensionVector out(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) out.at(new_label[i]) = d[i];
  return out;
}

inline std::vector<int> invert_labeling(const std::vector<int>& new_label) {
  std::vector<int> inv(new_label.size());
  for (std::size_t i = 0; i < new_label.size(); ++i) inv[static_cast<std::size_t>(new_label[i] - 1)] = static_cast<int>(i) + 1;
  return inv;
}

/// A path from i to j only when j >= i.
inline bool has_standard_orientation(const Quiver& q) {
  return std::all_of(q.arrows().begin(), q.arrows().end(), [](const Arrow& a) { return a.source < a.target; });
}

/// Labeling that makes q standard: a topological order, smallest vertex first.
inline std::vector<int> standard_labeling(const Quiver& q) {
  if (!q.is_acyclic()) throw std::invalid_argument("standard labeling needs an acyclic quiver");
  int n = q.vertex_count();
  std::vector<int> indeg(static_cast<std::size_t>(n) + 1, 0);
  for (const auto& a : q.arrows()) ++indeg[static_cast<std::size_t>(a.target)];
  std::priority_queue<int, std::vector<int>, std::greater<>> ready;
  for (int v = 1; v <= n; ++v) {
    if (!indeg[static_cast<std::size_t>(v)]) ready.push(v);
  }
  std::vector<int> label(static_cast<std::size_t>(n), 0);
  int next = 1;
  while (!ready.empty()) {
    int v = ready.top();
    ready.pop();
    label[static_cast<std::size_t>(v - 1)] = next++;
    for (const auto& a : q.arrows()) {
      if (a.source == v && --indeg[static_cast<std::size_t>(a.target)] == 0) ready.push(a.target);
    }
  }
  return label;
}

// ---------------------------------------------------------------------------
// Paths

/// All paths of an acyclic quiver, trivial ones included, ordered by
/// (start vertex, length, arrow ids).
inline std::vector<Path> enumerate_paths(const Quiver& q) {
  if (!q.is_acyclic()) throw std::invalid_argument("enumerate_paths needs an acyclic quiver");
  std::vector<Path> all;
  for (int v = 1; v <= q.vertex_count(); ++v) {
    std::vector<Path> frontier{Path::trivial(v)};
    while (!frontier.empty()) {
      std::vector<Path> next;
      for (const auto& p : frontier) {
        all.push_back(p);
        for (auto a : q.arrows_out(p.end)) {
          Path e = p;
          e.arrows.push_back(a);
          e.end = q.arrow(a).target;
          next.push_back(std::move(e));
        }
      }
      std::sort(next.begin(), next.end(), [&](const Path& x, const Path& y) {
        return std::lexicographical_compare(x.arrows.begin(), x.arrows.end(), y.arrows.begin(), y.arrows.end(),
                                            [&](std::size_t a, std::size_t b) { return q.arrow(a).id < q.arrow(b).id; });
      });
      frontier = std::move(next);
    }
  }
  return all;
}

/// Paths from i to j in enumerate_paths order.
inline std::vector<Path> paths_between(const Quiver& q, int i, int j) {
  std::vector<Path> out;
  for (auto& p : enumerate_paths(q)) {
    if (p.start == i && p.end == j) out.push_back(std::move(p));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Null-root witness

namespace detail {

inline bool induced_connected(const std::vector<std::vector<int>>& adj, const std::vector<int>& verts) {
  if (verts.empty()) return false;
  std::set<int> in(verts.begin(), verts.end()), seen{verts[0]};
  std::vector<int> stack{verts[0]};
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int w : verts) {
      if (!seen.count(w) && adj[static_cast<std::size_t>(v)][static_cast<std::size_t>(w)] > 0) {
        seen.insert(w);
        stack.push_back(w);
      }
    }
  }
  return seen.size() == verts.size();
}

// Positive primitive integer generator of the radical of the symmetrized
// Tits form on the induced subgraph, if the radical is a positive line.
inline std::optional<std::vector<long>> positive_radical(const std::vector<std::vector<int>>& adj,
                                                         const std::vector<int>& verts) {
  Field f = Field::rationals();
  std::size_t m = verts.size();
  Matrix c(f, m, m);
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = 0; b < m; ++b) {
      long v = -adj[static_cast<std::size_t>(verts[a])][static_cast<std::size_t>(verts[b])];
      if (a == b) v += 2;
      c.set_int(a, b, v);
    }
  }
  auto ker = kernel_basis(c);
  if (ker.size() != 1) return std::nullopt;
  mpz_class l = 1;
  for (const auto& s : ker[0]) l = lcm(l, s.rational().get_den());
  std::vector<mpz_class> ints;
  mpz_class g = 0;
  for (const auto& s : ker[0]) {
    mpq_class x = s.rational() * l;
    ints.push_back(x.get_num());
    g = gcd(g, x.get_num());
  }
  std::vector<long> out;
  int sign = sgn(ints[0]);
  for (auto& z : ints) {
    z /= g;
    if (sgn(z) != sign || sgn(z) == 0) return std::nullopt;
    out.push_back(std::abs(z.get_si()));
  }
  return out;
}

}  // namespace detail

/// For a non-Dynkin quiver, a nonzero d with tits_form(q, d) <= 0: the null
/// root of the lexicographically first smallest extended-Dynkin induced
/// subgraph, padded by zeros. nullopt for Dynkin quivers.
inline std::optional<DimensionVector> null_root_witness(const Quiver& q) {
  if (q.vertex_count() == 0 || is_dynkin(q).dynkin) return std::nullopt;
  auto adj = underlying_graph(q);
  int n = q.vertex_count();
  for (int k = 1; k <= n; ++k) {
    std::vector<int> idx(static_cast<std::size_t>(k));
    std::iota(idx.begin(), idx.end(), 0);
    while (true) {
      if (detail::induced_connected(adj, idx)) {
        if (auto r = detail::positive_radical(adj, idx)) {
          DimensionVector d(static_cast<std::size_t>(n));
          for (std::size_t a = 0; a < idx.size(); ++a) d[static_cast<std::size_t>(idx[a])] = (*r)[a];
          return d;
        }
      }
      int pos = k - 1;
      while (pos >= 0 && idx[static_cast<std::size_t>(pos)] == n - k + pos) --pos;
      if (pos < 0) break;
      ++idx[static_cast<std::size_t>(pos)];
      for (int j = pos + 1; j < k; ++j) idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
    }
  }
  return std::nullopt;
}

}  // namespace dorbit
