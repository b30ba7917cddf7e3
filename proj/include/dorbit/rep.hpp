#pragma once

// Quiver representations, relations, Hom spaces, projective
// representations, and the finite-field orbit census.

#include <cmath>
#include <limits>
#include <map>
#include <memory>
#include <random>
#include <tuple>

#include "dorbit/linalg.hpp"
#include "dorbit/quiver.hpp"

namespace dorbit {

/// One term `coefficient * path` of a relation. Coefficients are integers so
/// the same relation set can be evaluated over any field.
struct RelationTerm {
  long coefficient = 1;
  Path path;
};

/// A linear combination of parallel paths of positive length.
struct Relation {
  std::vector<RelationTerm> terms;
};

class RelationSet {
 public:
  RelationSet() = default;

  RelationSet(const Quiver& q, std::vector<Relation> relations) : relations_(std::move(relations)) {
    for (const auto& r : relations_) {
      if (r.terms.empty()) throw std::invalid_argument("empty relation");
      const Path& p0 = r.terms.front().path;
      for (const auto& t : r.terms) {
        if (t.path.is_trivial()) throw std::invalid_argument("relations must lie in the arrow ideal");
        if (t.path.start != p0.start || t.path.end != p0.end) throw std::invalid_argument("relation paths are not parallel");
        q.make_path(t.path.start, t.path.arrows);
      }
    }
  }

  const std::vector<Relation>& relations() const { return relations_; }
  bool empty() const { return relations_.empty(); }

 private:
  std::vector<Relation> relations_;
};

/// Vertex-indexed maps h_v : X_v -> Y_v (entry v-1 holds vertex v).
using HomTuple = std::vector<Matrix>;

class Representation {
 public:
  Representation() = default;

  Representation(Quiver q, Field f, DimensionVector dim, std::vector<Matrix> maps)
      : quiver_(std::make_shared<const Quiver>(std::move(q))), field_(f), dim_(std::move(dim)), maps_(std::move(maps)) {
    quiver_->check_dimension(dim_);
    if (maps_.size() != quiver_->arrow_count()) throw DimensionMismatch("one matrix per arrow required");
    for (std::size_t a = 0; a < maps_.size(); ++a) check_map(a, maps_[a]);
  }

  static Representation zero(const Quiver& q, const Field& f, const DimensionVector& dim) {
    std::vector<Matrix> maps;
    for (const auto& a : q.arrows()) {
      maps.emplace_back(f, static_cast<std::size_t>(dim.at(a.target)), static_cast<std::size_t>(dim.at(a.source)));
    }
    return Representation(q, f, dim, std::move(maps));
  }

  const Quiver& quiver() const { return *quiver_; }
  const Field& field() const { return field_; }
  const DimensionVector& dim() const { return dim_; }
  std::size_t dim_at(int v) const { return static_cast<std::size_t>(dim_.at(v)); }
  std::size_t total_dim() const { return static_cast<std::size_t>(dim_.sum()); }

  const Matrix& map(std::size_t arrow) const { return maps_.at(arrow); }
  const Matrix& map(const std::string& id) const { return maps_.at(quiver_->arrow_index(id)); }
  const std::vector<Matrix>& maps() const { return maps_; }

  void set_map(std::size_t arrow, Matrix m) {
    check_map(arrow, m);
    maps_[arrow] = std::move(m);
  }
  void set_map(const std::string& id, Matrix m) { set_map(quiver_->arrow_index(id), std::move(m)); }

  friend bool operator==(const Representation& a, const Representation& b) {
    return a.quiver() == b.quiver() && a.field_ == b.field_ && a.dim_ == b.dim_ && a.maps_ == b.maps_;
  }

 private:
  void check_map(std::size_t a, const Matrix& m) const {
    const Arrow& arr = quiver_->arrow(a);
    require_same_field(field_, m.field());
    if (m.rows() != dim_at(arr.target) || m.cols() != dim_at(arr.source)) {
      throw DimensionMismatch("arrow '" + arr.id + "' expects " + std::to_string(dim_at(arr.target)) + "x" +
                              std::to_string(dim_at(arr.source)) + ", got " + m.shape());
    }
  }

  std::shared_ptr<const Quiver> quiver_;
  Field field_;
  DimensionVector dim_;
  std::vector<Matrix> maps_;
};

// ---------------------------------------------------------------------------

/// Product of the arrow matrices along p (later arrows on the left).
inline Matrix evaluate_path(const Representation& x, const Path& p) {
  const Quiver& q = x.quiver();
  q.check_vertex(p.start);
  q.make_path(p.start, p.arrows);
  Matrix m = Matrix::identity(x.field(), x.dim_at(p.start));
  for (auto a : p.arrows) m = x.map(a) * m;
  return m;
}

inline Matrix evaluate_relation(const Representation& x, const Relation& r) {
  const Path& p0 = r.terms.front().path;
  Matrix acc(x.field(), x.dim_at(p0.end), x.dim_at(p0.start));
  for (const auto& t : r.terms) acc += evaluate_path(x, t.path).scaled(Scalar(x.field(), t.coefficient));
  return acc;
}

inline bool satisfies_relations(const Representation& x, const RelationSet& r) {
  return std::all_of(r.relations().begin(), r.relations().end(),
                     [&](const Relation& rel) { return evaluate_relation(x, rel).is_zero(); });
}

// ---------------------------------------------------------------------------
// Hom spaces

namespace detail {

struct HomLayout {
  std::vector<std::size_t> offset;  // per vertex (0-based), start of h_v entries
  std::size_t unknowns = 0;
};

inline HomLayout hom_layout(const Representation& x, const Representation& y) {
  HomLayout l;
  int n = x.quiver().vertex_count();
  for (int v = 1; v <= n; ++v) {
    l.offset.push_back(l.unknowns);
    l.unknowns += y.dim_at(v) * x.dim_at(v);
  }
  return l;
}

// Linear system in the entries of (h_v) whose kernel is Hom(x, y):
// for every arrow a: i -> j, h_j x_a - y_a h_i = 0.
inline Matrix hom_system(const Representation& x, const Representation& y, const HomLayout& l) {
  const Quiver& q = x.quiver();
  const Field& f = x.field();
  std::size_t rows = 0;
  for (const auto& a : q.arrows()) rows += y.dim_at(a.target) * x.dim_at(a.source);
  Matrix sys(f, rows, l.unknowns);
  std::size_t r0 = 0;
  for (std::size_t ai = 0; ai < q.arrow_count(); ++ai) {
    const Arrow& a = q.arrow(ai);
    auto i = a.source, j = a.target;
    std::size_t dxi = x.dim_at(i), dxj = x.dim_at(j), dyi = y.dim_at(i), dyj = y.dim_at(j);
    const Matrix& xa = x.map(ai);
    const Matrix& ya = y.map(ai);
    std::size_t oi = l.offset[static_cast<std::size_t>(i - 1)], oj = l.offset[static_cast<std::size_t>(j - 1)];
    for (std::size_t r = 0; r < dyj; ++r) {
      for (std::size_t c = 0; c < dxi; ++c) {
        std::size_t row = r0 + r * dxi + c;
        // (h_j x_a)[r][c] = sum_k h_j[r][k] x_a[k][c]
        for (std::size_t k = 0; k < dxj; ++k) {
          if (!xa.is_zero_at(k, c)) sys.set(row, oj + r * dxj + k, xa.at(k, c));
        }
        // -(y_a h_i)[r][c] = -sum_k y_a[r][k] h_i[k][c]
        for (std::size_t k = 0; k < dyi; ++k) {
          if (!ya.is_zero_at(r, k)) {
            std::size_t col = oi + k * dxi + c;
            sys.set(row, col, sys.at(row, col) - ya.at(r, k));
          }
        }
      }
    }
    r0 += dyj * dxi;
  }
  return sys;
}

inline HomTuple unpack_hom(const Representation& x, const Representation& y, const HomLayout& l, const Vector& v) {
  HomTuple h;
  int n = x.quiver().vertex_count();
  for (int vert = 1; vert <= n; ++vert) {
    std::size_t dy = y.dim_at(vert), dx = x.dim_at(vert);
    Matrix m(x.field(), dy, dx);
    std::size_t o = l.offset[static_cast<std::size_t>(vert - 1)];
    for (std::size_t r = 0; r < dy; ++r) {
      for (std::size_t c = 0; c < dx; ++c) m.set(r, c, v[o + r * dx + c]);
    }
    h.push_back(std::move(m));
  }
  return h;
}

inline void require_compatible(const Representation& x, const Representation& y) {
  if (!(x.quiver() == y.quiver())) throw std::invalid_argument("representations of different quivers");
  require_same_field(x.field(), y.field());
}

}  // namespace detail

/// Basis of Hom(x, y), deterministic (kernel_basis order of the stacked system).
inline std::vector<HomTuple> hom_basis(const Representation& x, const Representation& y) {
  detail::require_compatible(x, y);
  auto l = detail::hom_layout(x, y);
  std::vector<HomTuple> out;
  if (l.unknowns == 0) return out;
  for (const auto& v : kernel_basis(detail::hom_system(x, y, l))) out.push_back(detail::unpack_hom(x, y, l, v));
  return out;
}

inline std::size_t hom_dim(const Representation& x, const Representation& y) {
  detail::require_compatible(x, y);
  auto l = detail::hom_layout(x, y);
  if (l.unknowns == 0) return 0;
  return nullity(detail::hom_system(x, y, l));
}

/// dim Ext^1(x, y) over the path algebra of an acyclic quiver, via
/// dim Hom - dim Ext^1 = <dim x, dim y>.
inline long ext1_dim_hereditary(const Representation& x, const Representation& y) {
  return static_cast<long>(hom_dim(x, y)) - ringel_form(x.quiver(), x.dim(), y.dim());
}

inline bool is_hom(const Representation& x, const Representation& y, const HomTuple& h) {
  const Quiver& q = x.quiver();
  for (std::size_t a = 0; a < q.arrow_count(); ++a) {
    const Arrow& arr = q.arrow(a);
    const Matrix& hs = h[static_cast<std::size_t>(arr.source - 1)];
    const Matrix& ht = h[static_cast<std::size_t>(arr.target - 1)];
    if (!(ht * x.map(a) == y.map(a) * hs)) return false;
  }
  return true;
}

inline HomTuple combine(const std::vector<HomTuple>& basis, const std::vector<Scalar>& coeffs, const Representation& x,
                        const Representation& y) {
  HomTuple h;
  for (int v = 1; v <= x.quiver().vertex_count(); ++v) h.emplace_back(x.field(), y.dim_at(v), x.dim_at(v));
  for (std::size_t k = 0; k < basis.size(); ++k) {
    if (coeffs[k].is_zero()) continue;
    for (std::size_t v = 0; v < h.size(); ++v) h[v] += basis[k][v].scaled(coeffs[k]);
  }
  return h;
}

inline bool is_iso_tuple(const HomTuple& h) {
  return std::all_of(h.begin(), h.end(), [](const Matrix& m) { return is_invertible(m); });
}

// ---------------------------------------------------------------------------
// Constructions on representations

inline Representation direct_sum(const Representation& x, const Representation& y) {
  detail::require_compatible(x, y);
  std::vector<Matrix> maps;
  for (std::size_t a = 0; a < x.quiver().arrow_count(); ++a) maps.push_back(block_diagonal(x.map(a), y.map(a)));
  return Representation(x.quiver(), x.field(), x.dim() + y.dim(), std::move(maps));
}

/// x transported along invertible g: arrow a: i -> j becomes g_j x_a g_i^{-1}.
inline Representation conjugate(const Representation& x, const HomTuple& g) {
  const Quiver& q = x.quiver();
  std::vector<Matrix> inv;
  for (const auto& m : g) {
    auto i = inverse(m);
    if (!i) throw std::invalid_argument("conjugate: base change is not invertible");
    inv.push_back(std::move(*i));
  }
  std::vector<Matrix> maps;
  DimensionVector d(static_cast<std::size_t>(q.vertex_count()));
  for (int v = 1; v <= q.vertex_count(); ++v) d.at(v) = static_cast<long>(g[static_cast<std::size_t>(v - 1)].rows());
  for (std::size_t a = 0; a < q.arrow_count(); ++a) {
    const Arrow& arr = q.arrow(a);
    maps.push_back(g[static_cast<std::size_t>(arr.target - 1)] * x.map(a) * inv[static_cast<std::size_t>(arr.source - 1)]);
  }
  return Representation(q, x.field(), d, std::move(maps));
}

/// The subrepresentation whose space at v is spanned by the columns of
/// bases[v-1] (which must be linearly independent and stable).
inline Representation restrict_to(const Representation& x, const std::vector<Matrix>& bases) {
  const Quiver& q = x.quiver();
  DimensionVector d(static_cast<std::size_t>(q.vertex_count()));
  for (int v = 1; v <= q.vertex_count(); ++v) d.at(v) = static_cast<long>(bases[static_cast<std::size_t>(v - 1)].cols());
  std::vector<Matrix> maps;
  for (std::size_t a = 0; a < q.arrow_count(); ++a) {
    const Arrow& arr = q.arrow(a);
    const Matrix& bs = bases[static_cast<std::size_t>(arr.source - 1)];
    const Matrix& bt = bases[static_cast<std::size_t>(arr.target - 1)];
    auto m = solve_matrix(bt, x.map(a) * bs);
    if (!m) throw std::invalid_argument("restrict_to: subspaces are not stable under arrow '" + arr.id + "'");
    maps.push_back(std::move(*m));
  }
  return Representation(q, x.field(), d, std::move(maps));
}

/// x modulo the stable subspaces spanned by columns of sub[v-1]. The
/// quotient basis at v is the echelon complement of sub[v-1].
inline Representation quotient_by(const Representation& x, const std::vector<Matrix>& sub) {
  const Quiver& q = x.quiver();
  const Field& f = x.field();
  int n = q.vertex_count();
  std::vector<std::vector<std::size_t>> comp(static_cast<std::size_t>(n));
  DimensionVector d(static_cast<std::size_t>(n));
  for (int v = 1; v <= n; ++v) {
    comp[static_cast<std::size_t>(v - 1)] = echelon_complement(sub[static_cast<std::size_t>(v - 1)]);
    d.at(v) = static_cast<long>(comp[static_cast<std::size_t>(v - 1)].size());
  }
  std::vector<Matrix> maps;
  for (std::size_t a = 0; a < q.arrow_count(); ++a) {
    const Arrow& arr = q.arrow(a);
    const auto& cs = comp[static_cast<std::size_t>(arr.source - 1)];
    const auto& ct = comp[static_cast<std::size_t>(arr.target - 1)];
    const Matrix& st = sub[static_cast<std::size_t>(arr.target - 1)];
    std::size_t dt = x.dim_at(arr.target);
    Matrix et(f, dt, ct.size());
    for (std::size_t k = 0; k < ct.size(); ++k) et.set_int(ct[k], k, 1);
    Matrix sys = hstack(st, et);
    Matrix img = x.map(a).columns(cs);
    auto coords = solve_matrix(sys, img);
    if (!coords) throw std::logic_error("quotient_by: complement does not span");
    maps.push_back(coords->block(st.cols(), 0, ct.size(), cs.size()));
  }
  return Representation(q, f, d, std::move(maps));
}

// ---------------------------------------------------------------------------
// Projective representations

/// Basis element of P(d) at some vertex: path from `source` plus copy index.
struct ProjectiveBasisLabel {
  int source = 0;
  Path path;
  long copy = 0;
};

struct ProjectiveModel {
  Representation rep;
  std::vector<std::vector<ProjectiveBasisLabel>> basis;  // per vertex (0-based)
};

namespace detail {

// Normal forms of paths starting at i modulo the ideal generated by r.
struct PathQuotient {
  std::vector<std::vector<Path>> paths_at;        // per vertex: all paths i -> v (enumeration order)
  std::vector<std::vector<std::size_t>> survivors;  // per vertex: indices into paths_at forming the basis
  std::vector<Echelon> ideal;                      // per vertex: rref of ideal vectors (column order reversed)
  std::vector<bool> has_ideal;
};

inline PathQuotient path_quotient(const Quiver& q, int i, const RelationSet& r, const std::vector<Path>& all) {
  Field f = Field::rationals();
  auto n = static_cast<std::size_t>(q.vertex_count());
  PathQuotient pq;
  pq.paths_at.resize(n);
  for (const auto& p : all) {
    if (p.start == i) pq.paths_at[static_cast<std::size_t>(p.end - 1)].push_back(p);
  }
  pq.survivors.resize(n);
  pq.ideal.resize(n);
  pq.has_ideal.assign(n, false);
  auto find_path = [&](const std::vector<Path>& list, const Path& p) -> std::size_t {
    for (std::size_t k = 0; k < list.size(); ++k) {
      if (list[k].arrows == p.arrows) return k;
    }
    throw std::logic_error("path not found");
  };
  for (std::size_t v = 0; v < n; ++v) {
    const auto& list = pq.paths_at[v];
    std::vector<Vector> rows;
    for (const auto& rel : r.relations()) {
      const Path& p0 = rel.terms.front().path;
      // w: i -> start of relation, u: end of relation -> v
      for (const auto& w : pq.paths_at[static_cast<std::size_t>(p0.start - 1)]) {
        for (const auto& u : all) {
          if (u.start != p0.end || u.end != static_cast<int>(v) + 1) continue;
          Vector row(list.size(), Scalar(f, 0));
          for (const auto& t : rel.terms) {
            Path full{i, static_cast<int>(v) + 1, w.arrows};
            full.arrows.insert(full.arrows.end(), t.path.arrows.begin(), t.path.arrows.end());
            full.arrows.insert(full.arrows.end(), u.arrows.begin(), u.arrows.end());
            // column order reversed so later paths become pivots
            std::size_t col = list.size() - 1 - find_path(list, full);
            row[col] += Scalar(f, t.coefficient);
          }
          rows.push_back(std::move(row));
        }
      }
    }
    std::vector<bool> pivot(list.size(), false);
    if (!rows.empty()) {
      Matrix m(f, rows.size(), list.size());
      for (std::size_t a = 0; a < rows.size(); ++a) {
        for (std::size_t b = 0; b < list.size(); ++b) m.set(a, b, rows[a][b]);
      }
      pq.ideal[v] = rref(m);
      pq.has_ideal[v] = true;
      for (auto c : pq.ideal[v].pivots) pivot[list.size() - 1 - c] = true;
    }
    for (std::size_t k = 0; k < list.size(); ++k) {
      if (!pivot[k]) pq.survivors[v].push_back(k);
    }
  }
  return pq;
}

// Coordinates (over survivors at v) of the path with index k at v.
inline std::vector<mpq_class> normal_form(const PathQuotient& pq, std::size_t v, std::size_t k) {
  const auto& list = pq.paths_at[v];
  const auto& surv = pq.survivors[v];
  std::vector<mpq_class> out(surv.size(), 0);
  auto place = [&](std::size_t path_idx, const mpq_class& c) {
    for (std::size_t s = 0; s < surv.size(); ++s) {
      if (surv[s] == path_idx) {
        out[s] += c;
        return;
      }
    }
  };
  if (!pq.has_ideal[v]) {
    place(k, 1);
    return out;
  }
  const Echelon& e = pq.ideal[v];
  std::size_t col = list.size() - 1 - k;
  for (std::size_t r = 0; r < e.pivots.size(); ++r) {
    if (e.pivots[r] == col) {
      // e_k = -sum over non-pivot columns of row r
      for (std::size_t c = 0; c < list.size(); ++c) {
        if (c != col && !e.reduced.is_zero_at(r, c)) place(list.size() - 1 - c, -e.reduced.at(r, c).rational());
      }
      return out;
    }
  }
  place(k, 1);
  return out;
}

}  // namespace detail

/// P(d) = sum of P_i^{d_i} for the path algebra of q modulo r. The basis at
/// each vertex is ordered by (source vertex, path, copy index).
inline ProjectiveModel projective_model(const Quiver& q, const DimensionVector& d, const RelationSet& r = {},
                                        const Field& f = Field::rationals()) {
  if (!q.is_acyclic()) throw std::invalid_argument("projective_rep needs an acyclic quiver");
  q.check_dimension(d);
  auto n = static_cast<std::size_t>(q.vertex_count());
  auto all = enumerate_paths(q);
  std::vector<detail::PathQuotient> quot;
  for (int i = 1; i <= q.vertex_count(); ++i) {
    quot.push_back(d.at(i) > 0 ? detail::path_quotient(q, i, r, all) : detail::PathQuotient{});
  }
  ProjectiveModel model;
  model.basis.resize(n);
  // index of (source i, survivor s, copy c) at vertex v
  std::vector<std::map<std::tuple<int, std::size_t, long>, std::size_t>> index(n);
  for (std::size_t v = 0; v < n; ++v) {
    for (int i = 1; i <= q.vertex_count(); ++i) {
      if (d.at(i) == 0) continue;
      const auto& pq = quot[static_cast<std::size_t>(i - 1)];
      for (std::size_t s = 0; s < pq.survivors[v].size(); ++s) {
        for (long c = 0; c < d.at(i); ++c) {
          index[v][{i, s, c}] = model.basis[v].size();
          model.basis[v].push_back({i, pq.paths_at[v][pq.survivors[v][s]], c});
        }
      }
    }
  }
  DimensionVector dim(n);
  for (std::size_t v = 0; v < n; ++v) dim[v] = static_cast<long>(model.basis[v].size());
  std::vector<Matrix> maps;
  for (std::size_t a = 0; a < q.arrow_count(); ++a) {
    const Arrow& arr = q.arrow(a);
    auto s = static_cast<std::size_t>(arr.source - 1), t = static_cast<std::size_t>(arr.target - 1);
    Matrix m(f, model.basis[t].size(), model.basis[s].size());
    for (std::size_t col = 0; col < model.basis[s].size(); ++col) {
      const auto& lab = model.basis[s][col];
      const auto& pq = quot[static_cast<std::size_t>(lab.source - 1)];
      std::vector<std::size_t> ext = lab.path.arrows;
      ext.push_back(a);
      std::size_t k = 0;
      while (pq.paths_at[t][k].arrows != ext) ++k;
      auto nf = detail::normal_form(pq, t, k);
      for (std::size_t sidx = 0; sidx < nf.size(); ++sidx) {
        if (sgn(nf[sidx]) == 0) continue;
        m.set(index[t].at({lab.source, sidx, lab.copy}), col, Scalar(f, nf[sidx]));
      }
    }
    maps.push_back(std::move(m));
  }
  model.rep = Representation(q, f, dim, std::move(maps));
  return model;
}

inline Representation projective_rep(const Quiver& q, const DimensionVector& d, const RelationSet& r = {},
                                     const Field& f = Field::rationals()) {
  return projective_model(q, d, r, f).rep;
}

/// Multiplicities of the top: d_i = dim coker(sum of incoming arrow maps at i).
inline DimensionVector top_dimension(const Representation& x) {
  const Quiver& q = x.quiver();
  DimensionVector d(static_cast<std::size_t>(q.vertex_count()));
  for (int v = 1; v <= q.vertex_count(); ++v) {
    Matrix in(x.field(), x.dim_at(v), 0);
    for (auto a : q.arrows_in(v)) in = hstack(in, x.map(a));
    d.at(v) = static_cast<long>(x.dim_at(v) - rank(in));
  }
  return d;
}

struct ProjectiveIso {
  DimensionVector d;
  HomTuple iso;  // P(d) -> x, invertible at every vertex
};

/// For a representation of an acyclic quiver without relations: the d with
/// x isomorphic to P(d) together with an explicit isomorphism, or nullopt.
/// Generator copy c of P_i is sent to the c-th echelon-complement vector of
/// the incoming image at i; the induced map is checked to be invertible.
inline std::optional<ProjectiveIso> projective_isomorphism(const Representation& x) {
  const Quiver& q = x.quiver();
  const Field& f = x.field();
  DimensionVector d = top_dimension(x);
  ProjectiveModel p = projective_model(q, d, {}, f);
  if (!(p.rep.dim() == x.dim())) return std::nullopt;
  std::vector<std::vector<std::size_t>> gens(static_cast<std::size_t>(q.vertex_count()));
  for (int v = 1; v <= q.vertex_count(); ++v) {
    Matrix in(f, x.dim_at(v), 0);
    for (auto a : q.arrows_in(v)) in = hstack(in, x.map(a));
    gens[static_cast<std::size_t>(v - 1)] = echelon_complement(column_space_basis(in));
  }
  HomTuple iso;
  for (int v = 1; v <= q.vertex_count(); ++v) {
    const auto& basis = p.basis[static_cast<std::size_t>(v - 1)];
    Matrix m(f, x.dim_at(v), basis.size());
    for (std::size_t col = 0; col < basis.size(); ++col) {
      const auto& lab = basis[col];
      std::size_t g = gens[static_cast<std::size_t>(lab.source - 1)][static_cast<std::size_t>(lab.copy)];
      Matrix vec(f, x.dim_at(lab.source), 1);
      vec.set_int(g, 0, 1);
      Matrix img = evaluate_path(x, lab.path) * vec;
      m.paste(img, 0, col);
    }
    iso.push_back(std::move(m));
  }
  if (!is_iso_tuple(iso) || !is_hom(p.rep, x, iso)) return std::nullopt;
  return ProjectiveIso{d, std::move(iso)};
}

inline std::optional<DimensionVector> is_projective_restriction(const Representation& x) {
  if (auto r = projective_isomorphism(x)) return r->d;
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Isomorphism search over finite fields

namespace detail {

inline std::vector<Scalar> random_coefficients(std::size_t k, const Field& f, std::mt19937_64& rng) {
  std::vector<Scalar> c;
  for (std::size_t i = 0; i < k; ++i) {
    if (f.is_rational()) {
      c.emplace_back(f, static_cast<long>(rng() % 65537) - 32768);
    } else {
      c.push_back(Scalar::residue(f, rng() % f.characteristic()));
    }
  }
  return c;
}

}  // namespace detail

/// An invertible element of Hom(x, y), if one exists. Tries up to 64 random
/// combinations (fixed seed), then enumerates the whole Hom space over a
/// prime field when it has at most 2^20 elements.
inline std::optional<HomTuple> find_isomorphism(const Representation& x, const Representation& y) {
  if (!(x.dim() == y.dim())) return std::nullopt;
  auto basis = hom_basis(x, y);
  if (x.total_dim() == 0) return combine(basis, {}, x, y);
  const Field& f = x.field();
  std::mt19937_64 rng(0x5eed);
  for (int trial = 0; trial < 64; ++trial) {
    auto h = combine(basis, detail::random_coefficients(basis.size(), f, rng), x, y);
    if (is_iso_tuple(h)) return h;
  }
  if (f.is_rational()) return std::nullopt;
  std::uint64_t p = f.characteristic();
  double size = std::pow(static_cast<double>(p), static_cast<double>(basis.size()));
  if (size > static_cast<double>(1 << 20)) {
    throw std::runtime_error("isomorphism search space too large for exhaustive enumeration");
  }
  std::vector<std::uint64_t> digits(basis.size(), 0);
  while (true) {
    std::vector<Scalar> c;
    for (auto dgt : digits) c.push_back(Scalar::residue(f, dgt));
    auto h = combine(basis, c, x, y);
    if (is_iso_tuple(h)) return h;
    std::size_t k = 0;
    while (k < digits.size() && ++digits[k] == p) digits[k++] = 0;
    if (k == digits.size()) break;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Orbit census over F_p

struct OrbitCensus {
  std::size_t points = 0;       // points of Rep(q, r, d)(F_p)
  std::size_t orbit_count = 0;
  std::size_t min_end_dim = 0;  // over all points
  long rep_dim = 0;             // sum over arrows of d_s d_t
  long max_orbit_dim = 0;       // sum d_i^2 - min_end_dim
  std::vector<std::size_t> orbit_sizes;
};

inline constexpr double kCensusGuard = 4194304.0;  // 2^22 points

/// Enumerates every point of Rep(q, r, d) over F_p and counts isomorphism
/// classes. Points are bucketed by the ranks of all path evaluations before
/// the isomorphism search.
inline OrbitCensus orbit_census_fq(const Quiver& q, const RelationSet& r, const DimensionVector& d, std::uint64_t p) {
  Field f = Field::prime(p);
  q.check_dimension(d);
  long entries = 0;
  for (const auto& a : q.arrows()) entries += d.at(a.source) * d.at(a.target);
  if (std::pow(static_cast<double>(p), static_cast<double>(entries)) > kCensusGuard) {
    throw std::length_error("orbit census needs " + std::to_string(p) + "^" + std::to_string(entries) +
                            " points, above the 2^22 guard");
  }
  std::vector<Path> paths;
  if (q.is_acyclic()) {
    for (auto& path : enumerate_paths(q)) {
      if (!path.is_trivial()) paths.push_back(std::move(path));
    }
  } else {
    for (std::size_t a = 0; a < q.arrow_count(); ++a) paths.push_back(q.make_path(q.arrow(a).source, {a}));
  }
  struct Orbit {
    std::vector<std::size_t> key;
    Representation rep;
    std::size_t size = 0;
  };
  std::vector<Orbit> orbits;
  OrbitCensus census;
  census.rep_dim = entries;
  census.min_end_dim = std::numeric_limits<std::size_t>::max();
  std::vector<std::uint64_t> digits(static_cast<std::size_t>(entries), 0);
  while (true) {
    std::vector<Matrix> maps;
    std::size_t k = 0;
    for (const auto& a : q.arrows()) {
      auto rows = static_cast<std::size_t>(d.at(a.target)), cols = static_cast<std::size_t>(d.at(a.source));
      Matrix m(f, rows, cols);
      for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < cols; ++j) m.set(i, j, Scalar::residue(f, digits[k++]));
      }
      maps.push_back(std::move(m));
    }
    Representation x(q, f, d, std::move(maps));
    if (satisfies_relations(x, r)) {
      ++census.points;
      std::vector<std::size_t> key;
      for (const auto& path : paths) key.push_back(rank(evaluate_path(x, path)));
      bool found = false;
      for (auto& o : orbits) {
        if (o.key == key && find_isomorphism(x, o.rep)) {
          ++o.size;
          found = true;
          break;
        }
      }
      if (!found) {
        census.min_end_dim = std::min(census.min_end_dim, hom_dim(x, x));
        orbits.push_back({key, x, 1});
      }
    }
    std::size_t pos = 0;
    while (pos < digits.size() && ++digits[pos] == p) digits[pos++] = 0;
    if (pos == digits.size()) break;
  }
  census.orbit_count = orbits.size();
  for (const auto& o : orbits) census.orbit_sizes.push_back(o.size);
  if (orbits.empty()) census.min_end_dim = 0;
  census.max_orbit_dim = d.sum_of_squares() - static_cast<long>(census.min_end_dim);
  return census;
}

}  // namespace dorbit
