#pragma once

// Explicit rigid good modules: subset modules X(I) and chain modules on
// linear pieces, gluing at admissible vertices, the type A induction, the
// one-point extensions at a branch vertex, dualisation, and the randomised
// completion search.

#include <map>
#include <random>
#include <set>

#include "dorbit/double_algebra.hpp"

namespace dorbit {

class ConstructionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using Support = std::set<int>;  // a set of vertices

inline std::string support_to_string(const Support& s) {
  std::string out = "{";
  for (int v : s) out += (out.size() > 1 ? "," : "") + std::to_string(v);
  return out + "}";
}

/// A rigid good module together with the data the constructions track for
/// each indecomposable summand: the supports of the linear pieces it was
/// glued from, oldest first.
struct Piece {
  DModule module;
  std::vector<Support> history;
};

namespace detail {

inline std::shared_ptr<const DoubleAlgebra> share(const Quiver& q) {
  return std::make_shared<const DoubleAlgebra>(build_double(q));
}

inline std::size_t arrow_between(const Quiver& q, int s, int t) {
  for (std::size_t a = 0; a < q.arrow_count(); ++a) {
    if (q.arrow(a).source == s && q.arrow(a).target == t) return a;
  }
  throw std::invalid_argument("no arrow " + std::to_string(s) + " -> " + std::to_string(t));
}

inline bool has_arrow_from(const Quiver& q, int s, int t) {
  for (const auto& a : q.arrows()) {
    if (a.source == s && a.target == t) return true;
  }
  return false;
}

inline DModule require_good(const Representation& x, std::shared_ptr<const DoubleAlgebra> D, const char* what) {
  auto g = check_good(x, std::move(D));
  if (!g) throw ConstructionError(std::string(what) + ": result is not a good module (" + g.diagnosis + ")");
  return std::move(*g.module);
}

inline Representation zero_rep(const DoubleAlgebra& D, const DimensionVector& dim) {
  return Representation::zero(D.doubled(), Field::rationals(), dim);
}

// Builder for a representation of the double quiver given vertex dimensions
// and sparse 0/1 arrow maps.
struct RepBuilder {
  const DoubleAlgebra& D;
  DimensionVector dim;
  std::vector<Matrix> maps;

  RepBuilder(const DoubleAlgebra& d, DimensionVector dims) : D(d), dim(std::move(dims)) {
    Field f = Field::rationals();
    for (const auto& a : D.doubled().arrows()) {
      maps.emplace_back(f, static_cast<std::size_t>(dim.at(a.target)), static_cast<std::size_t>(dim.at(a.source)));
    }
  }
  void set(std::size_t arrow, std::size_t row, std::size_t col) { maps[arrow].set_int(row, col, 1); }
  Representation build() const { return Representation(D.doubled(), Field::rationals(), dim, maps); }
};

// The vertices reached from `start` by following the unique outgoing arrow
// other than the one leading back to `avoid`, until a sink (type A only).
inline std::vector<int> forward_run(const Quiver& q, int from, int start) {
  std::vector<int> run{start};
  int prev = from, cur = start;
  while (true) {
    int next = 0;
    for (auto a : q.arrows_out(cur)) {
      if (q.arrow(a).target != prev) next = q.arrow(a).target;
    }
    if (!next) break;
    run.push_back(next);
    prev = cur;
    cur = next;
  }
  return run;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Subset modules on a linearly oriented piece

/// X(I) on the chain c_1 -> c_2 -> ... -> c_L of D(q), where I is given by
/// membership flags along the chain. With I = {k_1 < ... < k_r} (chain
/// positions) the basis is {(m, k) : 1 <= m <= r, k_m <= k <= L}, arrows send
/// (m, k) to (m, k+1) and stars send (m, k) to (m-1, k-1).
/// If c_1 has an outgoing arrow off the chain, the projective cover there is
/// completed by a copy of the run starting along that arrow (identity maps,
/// zero stars), so the result is projective over kQ.
inline Representation subset_rep_on_chain(const DoubleAlgebra& D, const std::vector<int>& chain,
                                          const std::vector<bool>& member) {
  const Quiver& q = D.base();
  std::size_t L = chain.size();
  std::vector<std::size_t> k;  // 0-based chain positions of I
  for (std::size_t i = 0; i < L; ++i) {
    if (member[i]) k.push_back(i);
  }
  DimensionVector dim(static_cast<std::size_t>(q.vertex_count()));
  std::vector<std::size_t> at(L, 0);  // number of basis vectors at chain position
  for (std::size_t pos = 0; pos < L; ++pos) {
    at[pos] = static_cast<std::size_t>(std::count_if(k.begin(), k.end(), [&](std::size_t km) { return km <= pos; }));
    dim.at(chain[pos]) = static_cast<long>(at[pos]);
  }
  // projective completion at the source end
  std::vector<int> run;
  if (L > 0 && member[0]) {
    for (auto a : q.arrows_out(chain[0])) {
      int t = q.arrow(a).target;
      if (L == 1 || t != chain[1]) run = detail::forward_run(q, chain[0], t);
    }
  }
  for (int v : run) dim.at(v) = 1;
  detail::RepBuilder b(D, dim);
  for (std::size_t pos = 0; pos + 1 < L; ++pos) {
    std::size_t a = detail::arrow_between(q, chain[pos], chain[pos + 1]);
    for (std::size_t m = 0; m < at[pos]; ++m) b.set(a, m, m);
    // star: (m, pos+1) -> (m-1, pos)
    for (std::size_t m = 1; m < at[pos + 1]; ++m) b.set(D.star(a), m - 1, m);
  }
  int prev = L > 0 ? chain[0] : 0;
  for (int v : run) {
    b.set(detail::arrow_between(q, prev, v), 0, 0);
    prev = v;
  }
  return b.build();
}

/// Linear orientation of A_n: 1 -> 2 -> ... -> n.
struct ChainSpec {
  std::vector<Support> subsets;  // ascending: I_1 ⊆ I_2 ⊆ ...
};

inline void check_chain(const ChainSpec& c) {
  for (std::size_t i = 0; i < c.subsets.size(); ++i) {
    if (c.subsets[i].empty()) throw std::invalid_argument("chain member " + std::to_string(i + 1) + " is empty");
    if (i > 0 && !std::includes(c.subsets[i].begin(), c.subsets[i].end(), c.subsets[i - 1].begin(),
                                c.subsets[i - 1].end())) {
      throw std::invalid_argument("chain is not nested at member " + std::to_string(i + 1));
    }
  }
}

/// I_j = {i : d_i >= t + 1 - j}, j = 1..t, t = max d_i.
inline ChainSpec dim_to_chain(const DimensionVector& d) {
  if (d.is_zero()) throw std::invalid_argument("dim_to_chain: zero dimension vector");
  long t = *std::max_element(d.values().begin(), d.values().end());
  ChainSpec c;
  for (long j = 1; j <= t; ++j) {
    Support s;
    for (int i = 1; i <= static_cast<int>(d.size()); ++i) {
      if (d.at(i) >= t + 1 - j) s.insert(i);
    }
    c.subsets.push_back(std::move(s));
  }
  return c;
}

inline DModule x_of_subset(int n, const Support& I) {
  if (I.empty()) throw std::invalid_argument("x_of_subset: empty subset");
  auto D = detail::share(linear_a(n));
  std::vector<int> chain;
  std::vector<bool> member;
  for (int v = 1; v <= n; ++v) {
    chain.push_back(v);
    member.push_back(I.count(v) > 0);
  }
  for (int v : I) {
    if (v < 1 || v > n) throw std::invalid_argument("x_of_subset: vertex out of range");
  }
  return detail::require_good(subset_rep_on_chain(*D, chain, member), D, "x_of_subset");
}

inline Representation direct_sum_all(const DoubleAlgebra& D, const std::vector<Representation>& parts) {
  Representation acc = detail::zero_rep(D, DimensionVector(static_cast<std::size_t>(D.base().vertex_count())));
  for (const auto& p : parts) acc = direct_sum(acc, p);
  return acc;
}

inline DModule chain_module(int n, const ChainSpec& c) {
  check_chain(c);
  auto D = detail::share(linear_a(n));
  std::vector<Representation> parts;
  for (const auto& I : c.subsets) parts.push_back(x_of_subset(n, I).rep());
  return detail::require_good(direct_sum_all(*D, parts), D, "chain_module");
}

// ---------------------------------------------------------------------------
// Gluing

/// The D-module P_i with zero star maps.
inline Representation projective_with_zero_stars(const DoubleAlgebra& D, int i) {
  const Quiver& q = D.base();
  auto p = projective_rep(q, DimensionVector::unit(static_cast<std::size_t>(q.vertex_count()), i));
  std::vector<Matrix> maps = p.maps();
  for (std::size_t a = 0; a < q.arrow_count(); ++a) maps.push_back(p.map(a).transpose().scaled(Scalar(p.field(), 0)));
  return Representation(D.doubled(), p.field(), p.dim(), std::move(maps));
}

/// Glues m1 (Q-support left of i) and m2 (right of i) at the interior
/// admissible vertex i, both of Q-dimension 1 at i. At a sink the result is
/// the pullback of the two quotient maps onto the simple P_i; at a source it
/// is the pushout along the two embeddings of P_i.
inline DModule glue(const DModule& m1, const DModule& m2, int i) {
  const DoubleAlgebra& D = m1.algebra();
  const Quiver& q = D.base();
  if (!(m2.algebra().base() == q)) throw std::invalid_argument("glue: modules over different quivers");
  if (m1.delta_dim().at(i) != 1 || m2.delta_dim().at(i) != 1) {
    throw ConstructionError("glue: both modules need Q-dimension 1 at vertex " + std::to_string(i));
  }
  VertexClass c = classify_vertex(q, i);
  if (!c.admissible) throw ConstructionError("glue: vertex " + std::to_string(i) + " is not admissible");
  const Field& f = m1.rep().field();
  Representation sum = direct_sum(m1.rep(), m2.rep());
  auto n = static_cast<std::size_t>(q.vertex_count());
  if (c.sink) {
    auto simple = detail::zero_rep(D, DimensionVector::unit(n, i));
    auto h1 = hom_basis(m1.rep(), simple);
    auto h2 = hom_basis(m2.rep(), simple);
    if (h1.size() != 1 || h2.size() != 1) throw ConstructionError("glue: quotient onto P_i is not unique");
    Matrix row = hstack(h1[0][static_cast<std::size_t>(i - 1)], -h2[0][static_cast<std::size_t>(i - 1)]);
    std::vector<Matrix> bases;
    for (int v = 1; v <= q.vertex_count(); ++v) {
      if (v != i) {
        bases.push_back(Matrix::identity(f, sum.dim_at(v)));
        continue;
      }
      auto ker = kernel_basis(row);
      Matrix b(f, sum.dim_at(v), ker.size());
      for (std::size_t k = 0; k < ker.size(); ++k) {
        for (std::size_t r = 0; r < ker[k].size(); ++r) b.set(r, k, ker[k][r]);
      }
      bases.push_back(std::move(b));
    }
    return detail::require_good(restrict_to(sum, bases), m1.algebra_ptr(), "glue (sink)");
  }
  auto p = projective_with_zero_stars(D, i);
  auto h1 = hom_basis(p, m1.rep());
  auto h2 = hom_basis(p, m2.rep());
  if (h1.size() != 1 || h2.size() != 1) throw ConstructionError("glue: embedding of P_i is not unique");
  std::vector<Matrix> sub;
  for (int v = 1; v <= q.vertex_count(); ++v) {
    auto vi = static_cast<std::size_t>(v - 1);
    Matrix s(f, sum.dim_at(v), p.dim_at(v));
    s.paste(h1[0][vi], 0, 0);
    s.paste(-h2[0][vi], m1.rep().dim_at(v), 0);
    sub.push_back(std::move(s));
  }
  return detail::require_good(quotient_by(sum, sub), m1.algebra_ptr(), "glue (source)");
}

// ---------------------------------------------------------------------------
// Type A

enum class Order { less_equal, greater, isomorphic };

/// How the comparison of piece histories alternates with distance k from
/// the most recent piece (k = 0). `even_forward`: at the first k where the
/// pieces differ, M <= N iff M's piece ⊆ N's piece for even k, and
/// N's ⊆ M's for odd k. `even_reverse` is the mirrored rule; paired with
/// smallest-piece-first gluing it builds the same modules.
enum class OrderParity { even_forward, even_reverse };

inline Order order_compare(const std::vector<Support>& m, const std::vector<Support>& n,
                           OrderParity parity = OrderParity::even_forward) {
  std::size_t len = std::max(m.size(), n.size());
  static const Support empty;
  for (std::size_t k = 0; k < len; ++k) {
    const Support& a = k < m.size() ? m[m.size() - 1 - k] : empty;
    const Support& b = k < n.size() ? n[n.size() - 1 - k] : empty;
    if (a == b) continue;
    bool forward = (k % 2 == 0) == (parity == OrderParity::even_forward);
    const Support& small = forward ? a : b;
    const Support& big = forward ? b : a;
    bool sub = std::includes(big.begin(), big.end(), small.begin(), small.end());
    return sub ? Order::less_equal : Order::greater;
  }
  return Order::isomorphic;
}

inline Order order_leq(const Piece& m, const Piece& n, OrderParity parity = OrderParity::even_forward) {
  return order_compare(m.history, n.history, parity);
}

struct TypeAOptions {
  OrderParity parity = OrderParity::even_forward;
  bool certify = true;
  bool largest_piece_first = true;
};

struct RigidModule {
  DModule module;
  std::vector<Piece> summands;
};

namespace detail {

struct TypeALayout {
  std::vector<int> order;     // order[pos-1] = vertex at path position pos
  std::vector<int> position;  // position[v-1]
  std::vector<int> bounds;    // 1 = b_0 < b_1 < ... < b_{t+1} = n (positions)
};

inline TypeALayout type_a_layout(const Quiver& q) {
  auto ord = path_order(q);
  if (!ord) throw std::invalid_argument("quiver is not of type A");
  TypeALayout l;
  l.order = *ord;
  int n = q.vertex_count();
  l.position.assign(static_cast<std::size_t>(n), 0);
  for (int p = 1; p <= n; ++p) l.position[static_cast<std::size_t>(l.order[static_cast<std::size_t>(p - 1)] - 1)] = p;
  l.bounds.push_back(1);
  for (int p = 2; p < n; ++p) {
    if (classify_vertex(q, l.order[static_cast<std::size_t>(p - 1)]).admissible) l.bounds.push_back(p);
  }
  if (n > 1) l.bounds.push_back(n);
  return l;
}

// The linear pieces for a segment [lo, hi] of positions and a Q-support J
// (vertex set) inside it.
inline Representation segment_piece(const DoubleAlgebra& D, const TypeALayout& l, int lo, int hi, const Support& J) {
  const Quiver& q = D.base();
  std::vector<int> chain;
  for (int p = lo; p <= hi; ++p) chain.push_back(l.order[static_cast<std::size_t>(p - 1)]);
  if (chain.size() > 1 && !detail::has_arrow_from(q, chain[0], chain[1])) std::reverse(chain.begin(), chain.end());
  std::vector<bool> member;
  for (int v : chain) member.push_back(J.count(v) > 0);
  return subset_rep_on_chain(D, chain, member);
}

inline std::vector<Support> chain_on_segment(const TypeALayout& l, int lo, int hi, const DimensionVector& d) {
  long t = 0;
  for (int p = lo; p <= hi; ++p) t = std::max(t, d.at(l.order[static_cast<std::size_t>(p - 1)]));
  std::vector<Support> out;
  for (long j = 1; j <= t; ++j) {
    Support s;
    for (int p = lo; p <= hi; ++p) {
      int v = l.order[static_cast<std::size_t>(p - 1)];
      if (d.at(v) >= t + 1 - j) s.insert(v);
    }
    out.push_back(std::move(s));
  }
  return out;
}

inline void certify_or_throw(const DModule& x, const char* what) {
  auto rc = resolution_counts(x);
  if (rc.ext1_dim() != 0) {
    throw ConstructionError(std::string(what) + ": constructed module is not rigid (Ext^1 has dimension " +
                            std::to_string(rc.ext1_dim()) + ")");
  }
}

}  // namespace detail

/// The inductive construction over a quiver whose underlying graph is A_n:
/// chain modules on the linear segments between interior admissible
/// vertices, glued summand by summand from left to right.
inline RigidModule typeA_rigid(const Quiver& q, const DimensionVector& d, TypeAOptions opt = {}) {
  q.check_dimension(d);
  auto l = detail::type_a_layout(q);
  auto D = detail::share(q);
  auto n = static_cast<std::size_t>(q.vertex_count());
  auto make_piece = [&](int lo, int hi, const Support& J) {
    return Piece{detail::require_good(detail::segment_piece(*D, l, lo, hi, J), D, "typeA_rigid piece"), {J}};
  };
  std::vector<Piece> summands;
  if (n > 0) {
    int lo = l.bounds[0], hi = l.bounds.size() > 1 ? l.bounds[1] : 1;
    for (const auto& J : detail::chain_on_segment(l, lo, hi, d)) summands.push_back(make_piece(lo, hi, J));
  }
  for (std::size_t s = 1; s + 1 < l.bounds.size(); ++s) {
    int ipos = l.bounds[s];
    int iv = l.order[static_cast<std::size_t>(ipos - 1)];
    std::vector<Piece> old_at, keep;
    for (auto& m : summands) (m.module.delta_dim().at(iv) == 1 ? old_at : keep).push_back(std::move(m));
    std::vector<Piece> new_at;
    for (const auto& J : detail::chain_on_segment(l, ipos, l.bounds[s + 1], d)) {
      auto p = make_piece(ipos, l.bounds[s + 1], J);
      (J.count(iv) ? new_at : keep).push_back(std::move(p));
    }
    if (old_at.size() != new_at.size()) throw std::logic_error("typeA_rigid: multiplicity mismatch at a glue vertex");
    std::stable_sort(old_at.begin(), old_at.end(), [&](const Piece& a, const Piece& b) {
      return order_leq(a, b, opt.parity) == Order::less_equal;
    });
    // by default the smallest old summand meets the largest new piece
    std::stable_sort(new_at.begin(), new_at.end(), [&](const Piece& a, const Piece& b) {
      return opt.largest_piece_first ? a.history[0].size() > b.history[0].size()
                                     : a.history[0].size() < b.history[0].size();
    });
    for (std::size_t k = 0; k < old_at.size(); ++k) {
      Piece g{glue(old_at[k].module, new_at[k].module, iv), old_at[k].history};
      g.history.push_back(new_at[k].history[0]);
      keep.push_back(std::move(g));
    }
    summands = std::move(keep);
  }
  std::vector<Representation> parts;
  for (const auto& m : summands) parts.push_back(m.module.rep());
  DModule x = detail::require_good(direct_sum_all(*D, parts), D, "typeA_rigid");
  if (!(x.delta_dim() == d)) throw std::logic_error("typeA_rigid: wrong Q-dimension " + x.delta_dim().to_string());
  if (opt.certify) detail::certify_or_throw(x, "typeA_rigid");
  return {std::move(x), std::move(summands)};
}

/// X_I for a connected subset I relative to the vertex u: the pieces are cut
/// from the segments between interior admissible vertices, alternating
/// between I and its complement on segment interiors with the distance from
/// u's segment, and glued at the shared admissible vertices.
inline Piece connected_subset_module(const Quiver& q, int u, const Support& I,
                                     std::shared_ptr<const DoubleAlgebra> D = nullptr) {
  auto l = detail::type_a_layout(q);
  if (!D) D = detail::share(q);
  int upos = l.position.at(static_cast<std::size_t>(u - 1));
  std::size_t segs = l.bounds.size() > 1 ? l.bounds.size() - 1 : 1;
  std::size_t v = 1;
  while (v < segs && upos > l.bounds[v]) ++v;
  std::vector<Support> window(segs + 1);
  for (std::size_t w = 1; w <= segs; ++w) {
    int lo = l.bounds[w - 1], hi = l.bounds.size() > 1 ? l.bounds[w] : lo;
    std::size_t t = w > v ? w - v : v - w;
    for (int p = lo; p <= hi; ++p) {
      int x = l.order[static_cast<std::size_t>(p - 1)];
      bool in = I.count(x) > 0;
      bool endpoint = p == lo || p == hi;
      if (t % 2 == 0 ? in : (endpoint ? in : !in)) window[w].insert(x);
    }
  }
  // nonempty windows must be consecutive and overlap at the shared vertex
  std::size_t first = 0, last = 0;
  for (std::size_t w = 1; w <= segs; ++w) {
    if (window[w].empty()) continue;
    if (!first) first = w;
    if (last && last + 1 != w) {
      throw ConstructionError("subset " + support_to_string(I) + " is not connected: window " + std::to_string(w) +
                              " is separated from window " + std::to_string(last));
    }
    if (last) {
      int shared = l.order[static_cast<std::size_t>(l.bounds[last] - 1)];
      if (!window[last].count(shared) || !window[w].count(shared)) {
        throw ConstructionError("subset " + support_to_string(I) + " is not connected: windows " +
                                std::to_string(last) + " and " + std::to_string(w) + " do not share vertex " +
                                std::to_string(shared));
      }
    }
    last = w;
  }
  if (!first) throw ConstructionError("subset " + support_to_string(I) + " gives no pieces");
  auto piece = [&](std::size_t w) {
    int lo = l.bounds[w - 1], hi = l.bounds.size() > 1 ? l.bounds[w] : lo;
    return detail::require_good(detail::segment_piece(*D, l, lo, hi, window[w]), D, "connected_subset_module piece");
  };
  Piece out{piece(first), {window[first]}};
  for (std::size_t w = first + 1; w <= last; ++w) {
    int shared = l.order[static_cast<std::size_t>(l.bounds[w - 1] - 1)];
    out.module = glue(out.module, piece(w), shared);
    out.history.push_back(window[w]);
  }
  return out;
}

/// The sum of X_I over a descending chain of connected subsets.
inline RigidModule connected_chain_module(const Quiver& q, int u, const std::vector<Support>& chain) {
  auto D = detail::share(q);
  for (std::size_t i = 1; i < chain.size(); ++i) {
    if (!std::includes(chain[i - 1].begin(), chain[i - 1].end(), chain[i].begin(), chain[i].end())) {
      throw std::invalid_argument("connected_chain_module: chain is not descending at member " + std::to_string(i + 1));
    }
  }
  std::vector<Piece> summands;
  std::vector<Representation> parts;
  for (const auto& I : chain) {
    summands.push_back(connected_subset_module(q, u, I, D));
    parts.push_back(summands.back().module.rep());
  }
  DModule x = detail::require_good(direct_sum_all(*D, parts), D, "connected_chain_module");
  detail::certify_or_throw(x, "connected_chain_module");
  return {std::move(x), std::move(summands)};
}

// ---------------------------------------------------------------------------
// Subquivers and embeddings

struct InducedSubquiver {
  Quiver quiver;
  std::vector<int> to_parent;               // to_parent[v-1]: vertex of the parent
  std::vector<int> from_parent;             // from_parent[v-1]: vertex of the subquiver, 0 if absent
  std::vector<std::size_t> arrow_to_parent;
};

inline InducedSubquiver induced_subquiver(const Quiver& q, std::vector<int> vertices) {
  std::sort(vertices.begin(), vertices.end());
  vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());
  InducedSubquiver s;
  s.from_parent.assign(static_cast<std::size_t>(q.vertex_count()), 0);
  for (int v : vertices) {
    if (v < 1 || v > q.vertex_count()) throw std::invalid_argument("induced_subquiver: vertex out of range");
    s.to_parent.push_back(v);
    s.from_parent[static_cast<std::size_t>(v - 1)] = static_cast<int>(s.to_parent.size());
  }
  std::vector<Arrow> arrows;
  for (std::size_t a = 0; a < q.arrow_count(); ++a) {
    const Arrow& arr = q.arrow(a);
    int src = s.from_parent[static_cast<std::size_t>(arr.source - 1)];
    int tgt = s.from_parent[static_cast<std::size_t>(arr.target - 1)];
    if (!src || !tgt) continue;
    arrows.push_back({arr.id, src, tgt});
    s.arrow_to_parent.push_back(a);
  }
  s.quiver = Quiver::acyclic(static_cast<int>(vertices.size()), std::move(arrows));
  return s;
}

inline DimensionVector restrict_dim(const InducedSubquiver& s, const DimensionVector& d) {
  DimensionVector out(s.to_parent.size());
  for (std::size_t k = 0; k < s.to_parent.size(); ++k) out[k] = d.at(s.to_parent[k]);
  return out;
}

/// A representation of D(sub) placed inside D(parent), zero elsewhere.
/// Not good in general: paths leaving the subquiver are cut off.
inline Representation embed(const Representation& y, const InducedSubquiver& s, const DoubleAlgebra& parent) {
  const Quiver& q = parent.base();
  DimensionVector dim(static_cast<std::size_t>(q.vertex_count()));
  for (std::size_t k = 0; k < s.to_parent.size(); ++k) {
    dim.at(s.to_parent[k]) = static_cast<long>(y.dim_at(static_cast<int>(k + 1)));
  }
  std::vector<Matrix> maps;
  for (const auto& a : parent.doubled().arrows()) {
    maps.emplace_back(y.field(), static_cast<std::size_t>(dim.at(a.target)), static_cast<std::size_t>(dim.at(a.source)));
  }
  std::size_t m = s.arrow_to_parent.size();
  for (std::size_t k = 0; k < m; ++k) {
    std::size_t pa = s.arrow_to_parent[k];
    maps[pa] = y.map(k);
    maps[parent.star(pa)] = y.map(y.quiver().arrow_count() / 2 + k);
  }
  return Representation(parent.doubled(), y.field(), dim, std::move(maps));
}

// ---------------------------------------------------------------------------
// Extensions at a branch vertex

/// Local orientation at the branch vertex u. gamma is the neighbour on the
/// arm treated as the new leaf, left/right the other two arms ordered by
/// their first vertex.
///   tag  gamma  left  right
///   A    out    in    out
///   B    out    out   out
///   C    in     out   out
///   D    out    out   in
///   E    in     out   in
///   F    in     in    in
///   G    out    in    in
///   H    in     in    out
struct ExtensionCase {
  char tag = 0;
  int u = 0;
  int gamma = 0;
  bool gamma_out = false;
};

inline char extension_tag(bool gamma_out, bool left_in, bool right_in) {
  static const char table[2][2][2] = {{{'C', 'E'}, {'H', 'F'}}, {{'B', 'D'}, {'A', 'G'}}};
  return table[gamma_out][left_in][right_in];
}

struct ExtensionPlan {
  ExtensionCase kase;
  bool dual = false;       // run on the opposite quiver, then dualise
  std::vector<int> arm;    // vertices added by the extension, nearest to u first
  char construction = 0;   // A, B or C, in the quiver the extension runs on
};

namespace detail {

inline std::vector<int> neighbours(const Quiver& q, int v) {
  std::vector<int> out;
  for (auto a : q.arrows_out(v)) out.push_back(q.arrow(a).target);
  for (auto a : q.arrows_in(v)) out.push_back(q.arrow(a).source);
  std::sort(out.begin(), out.end());
  return out;
}

// the arms of a tree at u, each listed outward from u; nullopt if a second
// branch vertex is met
inline std::optional<std::vector<std::vector<int>>> arms_at(const Quiver& q, int u) {
  std::vector<std::vector<int>> arms;
  for (int nb : neighbours(q, u)) {
    std::vector<int> arm{nb};
    int prev = u, cur = nb;
    while (true) {
      auto ns = neighbours(q, cur);
      if (ns.size() > 2) return std::nullopt;
      int next = 0;
      for (int w : ns) {
        if (w != prev) next = w;
      }
      if (!next) break;
      arm.push_back(next);
      prev = cur;
      cur = next;
    }
    arms.push_back(std::move(arm));
  }
  return arms;
}

inline bool is_tree(const Quiver& q) {
  int n = q.vertex_count();
  if (n == 0 || static_cast<int>(q.arrow_count()) != n - 1) return false;
  std::vector<int> seen{1};
  std::set<int> visited{1};
  while (!seen.empty()) {
    int v = seen.back();
    seen.pop_back();
    for (int w : neighbours(q, v)) {
      if (visited.insert(w).second) seen.push_back(w);
    }
  }
  return static_cast<int>(visited.size()) == n;
}

}  // namespace detail

/// How to reach q from a type A subquiver by one extension: trees with a
/// single branch vertex of degree 3 whose quiver (or opposite quiver) has an
/// arm of length 1 or 2 leaving u. arm_length 1 or 2 restricts the choice;
/// 0 takes the shortest.
inline std::optional<ExtensionPlan> plan_extension(const Quiver& q, std::size_t arm_length = 0) {
  if (!detail::is_tree(q)) return std::nullopt;
  int u = 0;
  for (int v = 1; v <= q.vertex_count(); ++v) {
    auto deg = detail::neighbours(q, v).size();
    if (deg > 3) return std::nullopt;
    if (deg == 3) {
      if (u) return std::nullopt;
      u = v;
    }
  }
  if (!u) return std::nullopt;
  auto arms = detail::arms_at(q, u);
  if (!arms) return std::nullopt;
  ExtensionPlan plan;
  plan.dual = q.arrows_in(u).size() >= 2;
  // orientation in the quiver the extension runs on
  auto leaves_u = [&](const std::vector<int>& arm) { return detail::has_arrow_from(q, u, arm[0]) != plan.dual; };
  const std::vector<int>* chosen = nullptr;
  for (std::size_t len : {std::size_t{1}, std::size_t{2}}) {
    if (arm_length && len != arm_length) continue;
    for (const auto& arm : *arms) {
      if (!chosen && arm.size() == len && leaves_u(arm)) chosen = &arm;
    }
  }
  if (!chosen) return std::nullopt;
  plan.arm = *chosen;
  bool other_in = false;
  for (const auto& arm : *arms) {
    if (&arm != chosen && !leaves_u(arm)) other_in = true;
  }
  if (chosen->size() == 1) {
    plan.construction = other_in ? 'A' : 'B';
  } else {
    plan.construction = 'C';
  }
  // for the tag the leaf gamma is the new vertex in A/B, the incoming
  // length-1 arm in C
  const std::vector<int>* g = chosen;
  if (plan.construction == 'C') {
    for (const auto& arm : *arms) {
      if (arm.size() == 1) g = &arm;
    }
  }
  std::vector<const std::vector<int>*> rest;
  for (const auto& arm : *arms) {
    if (&arm != g) rest.push_back(&arm);
  }
  plan.kase.u = u;
  plan.kase.gamma = (*g)[0];
  plan.kase.gamma_out = detail::has_arrow_from(q, u, (*g)[0]);
  plan.kase.tag = extension_tag(plan.kase.gamma_out, detail::has_arrow_from(q, (*rest[0])[0], u),
                                detail::has_arrow_from(q, (*rest[1])[0], u));
  return plan;
}

/// The one-point extension of a module Y over the double of the subquiver
/// Gamma = Delta minus `arm`, where the arm leaves u. Along the arm, as far as
/// its arrows point away from u, each vertex carries a copy of Y_u with
/// identity arrows and theta_u = sum X_beta X_beta* (beta into u) as stars;
/// beyond the first arrow pointing back the module is zero. The result has
/// the same Q-dimension vector (zero on the arm) and End ring.
inline DModule extend_case(const DModule& y, const InducedSubquiver& gamma, std::shared_ptr<const DoubleAlgebra> D,
                           int u, const std::vector<int>& arm) {
  const DoubleAlgebra& A = *D;
  const Quiver& q = A.base();
  if (arm.empty() || !detail::has_arrow_from(q, u, arm[0])) {
    throw std::invalid_argument("extend_case: the arm must start with an arrow out of u");
  }
  for (int v : arm) {
    if (gamma.from_parent[static_cast<std::size_t>(v - 1)]) {
      throw std::invalid_argument("extend_case: arm vertex " + std::to_string(v) + " lies in the subquiver");
    }
  }
  Representation e = embed(y.rep(), gamma, A);
  const Field& f = e.field();
  auto du = e.dim_at(u);
  Matrix theta(f, du, du);
  for (auto b : q.arrows_in(u)) theta += e.map(b) * e.map(A.star(b));

  DimensionVector dim = e.dim();
  std::vector<std::pair<int, int>> steps;  // arrows along the forward part of the arm
  int cur = u;
  for (int r : arm) {
    if (!detail::has_arrow_from(q, cur, r)) break;
    dim.at(r) = static_cast<long>(du);
    steps.push_back({cur, r});
    cur = r;
  }
  std::vector<Matrix> maps;
  for (std::size_t a = 0; a < A.doubled().arrow_count(); ++a) {
    const Arrow& arr = A.doubled().arrow(a);
    if (dim.at(arr.source) == static_cast<long>(e.dim_at(arr.source)) &&
        dim.at(arr.target) == static_cast<long>(e.dim_at(arr.target))) {
      maps.push_back(e.map(a));
    } else {
      maps.emplace_back(f, static_cast<std::size_t>(dim.at(arr.target)), static_cast<std::size_t>(dim.at(arr.source)));
    }
  }
  for (auto [s, t] : steps) {
    std::size_t a = detail::arrow_between(q, s, t);
    maps[a] = Matrix::identity(f, du);
    maps[A.star(a)] = theta;
  }
  DModule x = detail::require_good(Representation(A.doubled(), f, dim, std::move(maps)), D, "extend_case");
  detail::certify_or_throw(x, "extend_case");
  return x;
}

// ---------------------------------------------------------------------------
// Dualisation

/// The good module over D(Q^op) whose radical endomorphism is the transpose
/// of that of x, under End P(d) = (End P^op(d))^op: a path p from j to i
/// carrying generator (j, c') into the image of generator (i, c) becomes the
/// reversed path carrying (i, c) into the image of (j, c').
inline DModule dualize(const DModule& x) {
  NormalizedModule nm = normalize(x);
  const Quiver& q = x.algebra().base();
  const Field& f = x.rep().field();
  HomTuple theta = radical_endomorphism(nm.module);
  const DimensionVector& d = nm.module.delta_dim();

  auto Dop = detail::share(opposite(q));
  ProjectiveModel pop = projective_model(Dop->base(), d, {}, f);

  struct Term {
    Scalar a;
    int vertex;
    std::vector<std::size_t> path;  // arrows in Q^op, starting at vertex
    long copy;
  };
  // theta^op(g_{j,c'}) as a combination of paths applied to generators
  std::map<std::pair<int, long>, std::vector<Term>> image;
  for (int i = 1; i <= q.vertex_count(); ++i) {
    const auto& lab = nm.model.basis[static_cast<std::size_t>(i - 1)];
    const Matrix& t = theta[static_cast<std::size_t>(i - 1)];
    for (std::size_t g = 0; g < lab.size(); ++g) {
      if (lab[g].source != i || !lab[g].path.is_trivial()) continue;
      for (std::size_t e = 0; e < lab.size(); ++e) {
        if (t.is_zero_at(e, g)) continue;
        std::vector<std::size_t> rev(lab[e].path.arrows.rbegin(), lab[e].path.arrows.rend());
        image[{lab[e].source, lab[e].copy}].push_back({t.at(e, g), i, std::move(rev), lab[g].copy});
      }
    }
  }
  HomTuple top;
  for (int v = 1; v <= q.vertex_count(); ++v) {
    const auto& lab = pop.basis[static_cast<std::size_t>(v - 1)];
    std::map<std::tuple<int, std::vector<std::size_t>, long>, std::size_t> index;
    for (std::size_t k = 0; k < lab.size(); ++k) index[{lab[k].source, lab[k].path.arrows, lab[k].copy}] = k;
    Matrix m(f, lab.size(), lab.size());
    for (std::size_t col = 0; col < lab.size(); ++col) {
      auto it = image.find({lab[col].source, lab[col].copy});
      if (it == image.end()) continue;
      for (const auto& term : it->second) {
        auto path = term.path;
        path.insert(path.end(), lab[col].path.arrows.begin(), lab[col].path.arrows.end());
        std::size_t row = index.at({term.vertex, path, term.copy});
        m.set(row, col, m.at(row, col) + term.a);
      }
    }
    top.push_back(std::move(m));
  }
  auto y = module_from_radical_endomorphism(Dop, pop.rep, top);
  if (!y) throw std::logic_error("dualize: transposed radical endomorphism has no good module");
  return std::move(*y);
}

// ---------------------------------------------------------------------------
// Generic completion

struct CompletionOptions {
  long height = 1L << 16;  // entries drawn from [-height, height]
};

struct Completion {
  DModule module;
  std::size_t trial = 0;       // 0-based index of the successful trial
  bool submodule = true;       // x' kept as a submodule (else as a quotient)
  std::size_t parameters = 0;  // dimension of the sampled affine space
};

namespace detail {

struct CompletionSpace {
  StarSystem sys;
  Vector base;
  std::vector<Vector> directions;
};

// good modules with Q-part P(d') + P(missing) whose stars restrict to those
// of x' on P(d'); with `submodule` the stars map P(d') into itself,
// otherwise P(missing) into itself
inline std::optional<CompletionSpace> completion_space(const NormalizedModule& nx, const Representation& pm,
                                                       bool submodule) {
  const DoubleAlgebra& A = nx.module.algebra();
  const Quiver& q = A.base();
  const Representation& xs = nx.module.rep();
  Representation delta = direct_sum(nx.module.delta(), pm);
  StarSystem sys(nx.module.algebra_ptr(), delta);
  sys.add_relations();
  for (std::size_t a = 0; a < q.arrow_count(); ++a) {
    std::size_t s1 = xs.dim_at(q.arrow(a).source), t1 = xs.dim_at(q.arrow(a).target);
    const Matrix& st = xs.map(A.star(a));
    for (std::size_t r = 0; r < sys.rows_of(a); ++r) {
      for (std::size_t c = 0; c < sys.cols_of(a); ++c) {
        bool old_row = r < s1, old_col = c < t1;
        if (old_row && old_col) {
          sys.fix_entry(a, r, c, st.at(r, c));
        } else if (submodule ? (!old_row && old_col) : (old_row && !old_col)) {
          sys.fix_entry(a, r, c, Scalar(xs.field(), 0));
        }
      }
    }
  }
  auto base = sys.particular();
  if (!base) return std::nullopt;
  auto dirs = sys.homogeneous_basis();
  return CompletionSpace{std::move(sys), std::move(*base), std::move(dirs)};
}

inline bool rigid_by_resolution(const DModule& x) { return resolution_counts(x).ext1_dim() == 0; }

}  // namespace detail

/// Samples good modules with Q-part P(d' + missing) containing x' (or, failing
/// that, having x' as a quotient) and returns the first rigid one. Trial t
/// draws its coefficients from mt19937_64(seed + t).
inline std::optional<Completion> generic_completion(const DModule& x_prime, const DimensionVector& missing,
                                                    std::uint64_t seed, std::size_t max_trials,
                                                    CompletionOptions opt = {}) {
  const Quiver& q = x_prime.algebra().base();
  q.check_dimension(missing);
  bool nothing_missing = true;
  for (int v = 1; v <= q.vertex_count(); ++v) {
    if (missing.at(v) < 0) throw std::invalid_argument("generic_completion: negative entry in missing");
    if (missing.at(v) > 0) nothing_missing = false;
  }
  if (nothing_missing) return Completion{x_prime, 0, true, 0};
  NormalizedModule nx = normalize(x_prime);
  const Field& f = x_prime.rep().field();
  Representation pm = projective_rep(q, missing, {}, f);
  std::optional<detail::CompletionSpace> spaces[2];
  bool built[2] = {false, false};
  for (std::size_t t = 0; t < max_trials; ++t) {
    for (int k = 0; k < 2; ++k) {
      if (!built[k]) {
        spaces[k] = detail::completion_space(nx, pm, k == 0);
        built[k] = true;
      }
      if (!spaces[k]) continue;
      const auto& sp = *spaces[k];
      std::mt19937_64 rng(seed + t);
      std::uniform_int_distribution<long> draw(-opt.height, opt.height);
      Vector sol = sp.base;
      for (const auto& dir : sp.directions) {
        Scalar c(f, draw(rng));
        if (c.is_zero()) continue;
        for (std::size_t i = 0; i < sol.size(); ++i) {
          if (!dir[i].is_zero()) sol[i] += c * dir[i];
        }
      }
      auto g = check_good(sp.sys.assemble(sol), x_prime.algebra_ptr());
      if (!g) continue;
      if (detail::rigid_by_resolution(*g.module)) return Completion{std::move(*g.module), t, k == 0, sp.directions.size()};
    }
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Top level

struct ConstructionReport {
  std::optional<DModule> module;
  std::string route;  // "zero", "type A", "extension", "completion"
  std::optional<ExtensionCase> kase;
  std::optional<ExtensionPlan> plan;
  std::size_t trial = 0;
  std::string note;
};

struct ConstructOptions {
  std::uint64_t seed = 0;
  std::size_t max_trials = 3;
  bool use_extension = true;
  std::size_t arm_length = 0;  // passed to plan_extension
};

inline DModule zero_module(std::shared_ptr<const DoubleAlgebra> D) {
  DimensionVector z(static_cast<std::size_t>(D->base().vertex_count()));
  return detail::require_good(Representation::zero(D->doubled(), Field::rationals(), z), D, "zero_module");
}

/// A certified rigid good module with Q-dimension vector d: the type A
/// induction, one extension at a branch vertex followed by a generic
/// completion on the new arm, or a generic completion from zero.
inline ConstructionReport construct_rigid(const Quiver& q, const DimensionVector& d, ConstructOptions opt = {}) {
  q.check_dimension(d);
  ConstructionReport rep;
  auto D = detail::share(q);
  bool is_zero = true;
  for (int v = 1; v <= q.vertex_count(); ++v) {
    if (d.at(v) < 0) throw std::invalid_argument("construct_rigid: negative dimension vector");
    if (d.at(v) > 0) is_zero = false;
  }
  if (is_zero) {
    rep.module = zero_module(D);
    rep.route = "zero";
    return rep;
  }
  if (path_order(q)) {
    rep.module = typeA_rigid(q, d).module;
    rep.route = "type A";
    return rep;
  }
  if (opt.use_extension) rep.plan = plan_extension(q, opt.arm_length);
  if (rep.plan) {
    const auto& plan = *rep.plan;
    rep.kase = plan.kase;
    Quiver w = plan.dual ? opposite(q) : q;
    auto DW = plan.dual ? detail::share(w) : D;
    std::vector<int> rest;
    for (int v = 1; v <= w.vertex_count(); ++v) {
      if (std::find(plan.arm.begin(), plan.arm.end(), v) == plan.arm.end()) rest.push_back(v);
    }
    auto gamma = induced_subquiver(w, rest);
    DimensionVector dg = restrict_dim(gamma, d);
    DimensionVector missing(static_cast<std::size_t>(w.vertex_count()));
    for (int v : plan.arm) missing.at(v) = d.at(v);
    bool empty_gamma = dg.sum() == 0;
    DModule x1 = empty_gamma ? zero_module(DW)
                             : extend_case(typeA_rigid(gamma.quiver, dg).module, gamma, DW, plan.kase.u, plan.arm);
    auto c = generic_completion(x1, missing, opt.seed, opt.max_trials);
    if (c) {
      DModule x = plan.dual ? dualize(c->module) : c->module;
      detail::certify_or_throw(x, "construct_rigid");
      if (!(x.delta_dim() == d)) throw std::logic_error("construct_rigid: wrong Q-dimension " + x.delta_dim().to_string());
      rep.module = std::move(x);
      rep.route = "extension";
      rep.trial = c->trial;
      return rep;
    }
    rep.note = "extension completion found no certificate; completing from zero";
  }
  auto c = generic_completion(zero_module(D), d, opt.seed, opt.max_trials);
  rep.route = "completion";
  if (c) {
    rep.module = std::move(c->module);
    rep.trial = c->trial;
  } else {
    rep.note += (rep.note.empty() ? "" : "; ") + std::string("no certificate after ") + std::to_string(opt.max_trials) +
                " trials";
  }
  return rep;
}

}  // namespace dorbit
