#pragma once

// Root subsets of gl_n closed under addition, the block patterns s(d),
// n(d), b(d), l(d) inside gl_t, the identification of radical
// endomorphisms of P(d) with n(d), and the ad-surjectivity density check.

#include <set>
#include <string>
#include <utility>

#include "dorbit/double_algebra.hpp"

namespace dorbit {

/// A set of positive roots of gl_n; [h, j] stands for alpha_h + ... + alpha_j,
/// that is e_h - e_{j+1}.
class RootSubset {
 public:
  using Interval = std::pair<int, int>;

  RootSubset() = default;
  RootSubset(int n, std::set<Interval> roots) : n_(n), roots_(std::move(roots)) {
    for (auto [h, j] : roots_) {
      if (h < 1 || h > j || j > n_ - 1) {
        throw std::invalid_argument("root [" + std::to_string(h) + "," + std::to_string(j) + "] out of range for n=" +
                                    std::to_string(n_));
      }
    }
    for (auto [h, j] : roots_) {
      for (auto [h2, l] : roots_) {
        if (h2 == j + 1 && !roots_.count({h, l})) {
          throw std::invalid_argument("root subset not closed under addition: [" + std::to_string(h) + "," +
                                      std::to_string(j) + "] + [" + std::to_string(h2) + "," + std::to_string(l) + "]");
        }
      }
    }
  }

  int n() const { return n_; }
  const std::set<Interval>& roots() const { return roots_; }
  bool contains(int h, int j) const { return roots_.count({h, j}) > 0; }
  /// The root e_i - e_j (i < j) as a block cell.
  bool has_cell(int i, int j) const { return i < j && contains(i, j - 1); }

 private:
  int n_ = 0;
  std::set<Interval> roots_;
};

/// A path from i to j becomes e_i - e_j.
inline RootSubset quiver_to_rootsubset(const Quiver& q) {
  if (!has_standard_orientation(q)) {
    throw std::invalid_argument("quiver_to_rootsubset needs a standard orientation (relabel with standard_labeling)");
  }
  std::set<RootSubset::Interval> roots;
  for (const auto& p : enumerate_paths(q)) {
    if (!p.is_trivial()) roots.insert({p.start, p.end - 1});
  }
  return RootSubset(q.vertex_count(), std::move(roots));
}

/// Roots of gl_t as matrix positions (a, b), a != b, for e_a - e_b.
using RootSet = std::set<std::pair<int, int>>;

struct SigmaD {
  RootSet negative;
  RootSet positive;
};

namespace detail {

inline std::vector<int> block_of(const DimensionVector& d) {
  std::vector<int> out;
  for (std::size_t h = 0; h < d.size(); ++h) {
    for (long c = 0; c < d[h]; ++c) out.push_back(static_cast<int>(h) + 1);
  }
  return out;
}

inline void close_roots(RootSet& r) {
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<std::pair<int, int>> add;
    for (auto [a, b] : r) {
      for (auto it = r.lower_bound({b, 0}); it != r.end() && it->first == b; ++it) {
        if (it->second != a && !r.count({a, it->second})) add.push_back({a, it->second});
      }
    }
    for (auto x : add) grew |= r.insert(x).second;
  }
}

}  // namespace detail

/// Sigma(d)^- from the negative simple roots inside the blocks; Sigma(d)^+
/// from their negatives and e_{i_h} - e_{i_j + 1} for each [h, j] in s, where
/// i_h is the last index of block h. Blocks of size zero contribute nothing.
inline SigmaD sigma_d(const RootSubset& s, const DimensionVector& d) {
  if (static_cast<int>(d.size()) != s.n()) throw std::invalid_argument("sigma_d: dimension vector has wrong length");
  auto block = detail::block_of(d);
  int t = static_cast<int>(block.size());
  SigmaD out;
  for (int a = 1; a < t; ++a) {
    if (block[static_cast<std::size_t>(a - 1)] == block[static_cast<std::size_t>(a)]) {
      out.negative.insert({a + 1, a});
      out.positive.insert({a, a + 1});
    }
  }
  std::vector<int> last(static_cast<std::size_t>(s.n()) + 1, 0);
  for (int h = 1, acc = 0; h <= s.n(); ++h) {
    acc += static_cast<int>(d.at(h));
    last[static_cast<std::size_t>(h)] = acc;
  }
  for (auto [h, j] : s.roots()) {
    if (d.at(h) == 0 || d.at(j + 1) == 0) continue;
    out.positive.insert({last[static_cast<std::size_t>(h)], last[static_cast<std::size_t>(j)] + 1});
  }
  detail::close_roots(out.negative);
  detail::close_roots(out.positive);
  return out;
}

enum class PatternKind { s, n, b, l };

inline char pattern_letter(PatternKind k) { return "snbl"[static_cast<int>(k)]; }

inline PatternKind parse_pattern_kind(const std::string& w) {
  if (w == "s") return PatternKind::s;
  if (w == "n") return PatternKind::n;
  if (w == "b") return PatternKind::b;
  if (w == "l") return PatternKind::l;
  throw std::invalid_argument("unknown pattern kind '" + w + "' (expected s, n, b or l)");
}

struct BlockPattern {
  PatternKind which = PatternKind::s;
  std::size_t t = 0;
  std::vector<long> block_sizes;
  std::set<std::pair<int, int>> cells;  // (block row, block column), 1-based
  bool diagonal_included = false;

  std::size_t offset(int h) const {
    std::size_t o = 0;
    for (int k = 1; k < h; ++k) o += static_cast<std::size_t>(block_sizes[static_cast<std::size_t>(k - 1)]);
    return o;
  }
  std::vector<int> block_of_index() const {
    std::vector<int> out;
    for (std::size_t h = 0; h < block_sizes.size(); ++h) {
      for (long c = 0; c < block_sizes[h]; ++c) out.push_back(static_cast<int>(h) + 1);
    }
    return out;
  }
  bool contains_entry(std::size_t a, std::size_t b) const {
    auto blk = block_of_index();
    return cells.count({blk[a], blk[b]}) > 0;
  }
  std::size_t dimension() const {
    std::size_t n = 0;
    for (auto [h, j] : cells) {
      n += static_cast<std::size_t>(block_sizes[static_cast<std::size_t>(h - 1)] *
                                    block_sizes[static_cast<std::size_t>(j - 1)]);
    }
    return n;
  }
};

/// l(d): diagonal blocks; n(d): the blocks (h, j), h < j, with e_h - e_j in s;
/// s(d) = l(d) + n(d); b(d): all blocks on or above the diagonal.
inline BlockPattern block_pattern(const RootSubset& s, const DimensionVector& d, PatternKind which) {
  if (static_cast<int>(d.size()) != s.n()) throw std::invalid_argument("block_pattern: dimension vector has wrong length");
  BlockPattern p;
  p.which = which;
  p.block_sizes = d.values();
  for (long v : p.block_sizes) p.t += static_cast<std::size_t>(v);
  p.diagonal_included = which != PatternKind::n;
  for (int h = 1; h <= s.n(); ++h) {
    for (int j = h; j <= s.n(); ++j) {
      bool in = false;
      switch (which) {
        case PatternKind::l: in = h == j; break;
        case PatternKind::n: in = s.has_cell(h, j); break;
        case PatternKind::s: in = h == j || s.has_cell(h, j); break;
        case PatternKind::b: in = true; break;
      }
      if (in) p.cells.insert({h, j});
    }
  }
  return p;
}

/// Rows of '*' and '.', one character per matrix entry, '|' and '-' between blocks.
inline std::string render_ascii(const BlockPattern& p) {
  auto blk = p.block_of_index();
  std::string rule;
  for (std::size_t b = 0; b < p.t; ++b) {
    if (b && blk[b] != blk[b - 1]) rule += '+';
    rule += '-';
  }
  std::string out;
  for (std::size_t a = 0; a < p.t; ++a) {
    if (a && blk[a] != blk[a - 1]) out += rule + '\n';
    for (std::size_t b = 0; b < p.t; ++b) {
      if (b && blk[b] != blk[b - 1]) out += '|';
      out += p.cells.count({blk[a], blk[b]}) ? '*' : '.';
    }
    out += '\n';
  }
  return out;
}

/// The radical endomorphism theta = sum X_beta X_beta* of P(d) as a t x t
/// matrix: entry ((j, c'), (i, c)) is the coefficient of p g_{j,c'} in
/// theta(g_{i,c}), p the path from j to i, generators ordered by vertex then
/// copy. Needs a standard orientation and at most one path between two
/// vertices, so that End P(d) is the block algebra of s(d).
inline Matrix rad_endo_to_matrix(const DModule& x, const BlockPattern& pattern) {
  const Quiver& q = x.algebra().base();
  if (!has_standard_orientation(q)) throw std::invalid_argument("rad_endo_to_matrix needs a standard orientation");
  std::set<std::pair<int, int>> ends;
  for (const auto& p : enumerate_paths(q)) {
    if (!ends.insert({p.start, p.end}).second) {
      throw std::invalid_argument("rad_endo_to_matrix: more than one path from " + std::to_string(p.start) + " to " +
                                  std::to_string(p.end));
    }
  }
  NormalizedModule nm = normalize(x);
  const DimensionVector& d = nm.module.delta_dim();
  if (pattern.block_sizes != d.values()) {
    throw std::invalid_argument("rad_endo_to_matrix: pattern block sizes differ from " + d.to_string());
  }
  HomTuple theta = radical_endomorphism(nm.module);
  Matrix e(x.rep().field(), pattern.t, pattern.t);
  for (int i = 1; i <= q.vertex_count(); ++i) {
    const auto& lab = nm.model.basis[static_cast<std::size_t>(i - 1)];
    const Matrix& t = theta[static_cast<std::size_t>(i - 1)];
    for (std::size_t g = 0; g < lab.size(); ++g) {
      if (lab[g].source != i || !lab[g].path.is_trivial()) continue;
      std::size_t col = pattern.offset(i) + static_cast<std::size_t>(lab[g].copy);
      for (std::size_t r = 0; r < lab.size(); ++r) {
        if (t.is_zero_at(r, g)) continue;
        std::size_t row = pattern.offset(lab[r].source) + static_cast<std::size_t>(lab[r].copy);
        if (!pattern.contains_entry(row, col)) {
          throw std::logic_error("rad_endo_to_matrix: entry (" + std::to_string(row + 1) + "," + std::to_string(col + 1) +
                                 ") lies outside the pattern");
        }
        e.set(row, col, t.at(r, g));
      }
    }
  }
  return e;
}

struct RichardsonResult {
  std::size_t rank = 0;
  std::size_t n_dim = 0;
  std::size_t s_dim = 0;
  bool dense() const { return rank == n_dim; }
};

/// The rank of x -> [x, e] from s(d) to n(d).
inline RichardsonResult richardson_rank(const BlockPattern& s, const BlockPattern& n, const Matrix& e) {
  if (s.t != n.t || e.rows() != s.t || e.cols() != s.t || s.block_sizes != n.block_sizes) {
    throw std::invalid_argument("richardson_check: shape mismatch");
  }
  const Field& f = e.field();
  std::size_t t = s.t;
  std::vector<std::vector<long>> n_index(t, std::vector<long>(t, -1));
  std::size_t nn = 0;
  for (std::size_t a = 0; a < t; ++a) {
    for (std::size_t b = 0; b < t; ++b) {
      bool in_n = n.contains_entry(a, b);
      if (!e.is_zero_at(a, b) && !in_n) throw std::invalid_argument("richardson_check: e is not supported on n(d)");
      if (in_n) n_index[a][b] = static_cast<long>(nn++);
    }
  }
  std::vector<std::pair<std::size_t, std::size_t>> s_basis;
  for (std::size_t a = 0; a < t; ++a) {
    for (std::size_t b = 0; b < t; ++b) {
      if (s.contains_entry(a, b)) s_basis.push_back({a, b});
    }
  }
  RichardsonResult out;
  out.n_dim = nn;
  out.s_dim = s_basis.size();
  if (nn == 0) return out;
  Matrix ad(f, nn, s_basis.size());
  auto add = [&](std::size_t r, std::size_t c, std::size_t col, const Scalar& v) {
    if (v.is_zero()) return;
    long k = n_index[r][c];
    if (k < 0) throw std::logic_error("richardson_check: [s(d), e] leaves n(d)");
    auto row = static_cast<std::size_t>(k);
    ad.set(row, col, ad.at(row, col) + v);
  };
  for (std::size_t col = 0; col < s_basis.size(); ++col) {
    auto [a, b] = s_basis[col];
    // [E_ab, e] = E_ab e - e E_ab
    for (std::size_t k = 0; k < t; ++k) {
      if (!e.is_zero_at(b, k)) add(a, k, col, e.at(b, k));
      if (!e.is_zero_at(k, a)) add(k, b, col, -e.at(k, a));
    }
  }
  out.rank = rank(ad);
  return out;
}

inline bool richardson_check(const BlockPattern& s, const BlockPattern& n, const Matrix& e) {
  return richardson_rank(s, n, e).dense();
}

}  // namespace dorbit
