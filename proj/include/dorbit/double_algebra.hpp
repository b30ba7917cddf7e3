#pragma once

// The double algebra D(Q): the double quiver with star arrows, its
// relations, good modules (projective over the path algebra of Q), and the
// End/Ext computations used to certify rigidity.

#include <memory>

#include "dorbit/rep.hpp"

namespace dorbit {

/// Basis element p q* of D: go back along q, then forward along p.
struct DoubleBasisElement {
  Path p;
  Path q;
};

class DoubleAlgebra {
 public:
  const Quiver& base() const { return base_; }
  const Quiver& doubled() const { return doubled_; }
  const RelationSet& relations() const { return relations_; }

  /// Index of alpha* in the doubled quiver for base arrow index a.
  std::size_t star(std::size_t a) const { return base_.arrow_count() + a; }
  bool is_star(std::size_t doubled_arrow) const { return doubled_arrow >= base_.arrow_count(); }

  /// The multiplicative basis {p q* : s(p) = s(q)}.
  std::vector<DoubleBasisElement> basis() const {
    std::vector<DoubleBasisElement> out;
    auto paths = enumerate_paths(base_);
    for (int v = 1; v <= base_.vertex_count(); ++v) {
      for (const auto& q : paths) {
        if (q.start != v) continue;
        for (const auto& p : paths) {
          if (p.start == v) out.push_back({p, q});
        }
      }
    }
    return out;
  }

  std::size_t dimension() const {
    std::vector<std::size_t> from(static_cast<std::size_t>(base_.vertex_count()), 0);
    for (const auto& p : enumerate_paths(base_)) ++from[static_cast<std::size_t>(p.start - 1)];
    std::size_t n = 0;
    for (auto c : from) n += c * c;
    return n;
  }

  friend DoubleAlgebra build_double(const Quiver& q);

 private:
  Quiver base_;
  Quiver doubled_;
  RelationSet relations_;
};

inline DoubleAlgebra build_double(const Quiver& q) {
  if (!q.is_acyclic()) throw std::invalid_argument("build_double needs an acyclic quiver");
  std::set<std::pair<int, int>> ends;
  for (const auto& a : q.arrows()) {
    if (!ends.insert(std::minmax(a.source, a.target)).second) {
      throw std::invalid_argument("build_double: vertices " + std::to_string(a.source) + " and " +
                                  std::to_string(a.target) + " are joined by more than one arrow");
    }
  }
  std::vector<Arrow> arrows = q.arrows();
  for (const auto& a : q.arrows()) {
    if (q.has_arrow(a.id + "*")) throw std::invalid_argument("arrow id '" + a.id + "*' clashes with a star arrow");
    arrows.push_back({a.id + "*", a.target, a.source});
  }
  DoubleAlgebra d;
  d.base_ = q;
  d.doubled_ = Quiver::general(q.vertex_count(), std::move(arrows));
  std::size_t m = q.arrow_count();
  std::vector<Relation> rels;
  for (std::size_t a = 0; a < m; ++a) {
    const Arrow& al = q.arrow(a);
    // alpha* alpha - sum over beta into s(alpha) of beta beta*
    Relation r;
    r.terms.push_back({1, d.doubled_.make_path(al.source, {a, m + a})});
    for (auto b : q.arrows_in(al.source)) r.terms.push_back({-1, d.doubled_.make_path(al.source, {m + b, b})});
    rels.push_back(std::move(r));
  }
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = 0; b < m; ++b) {
      if (a == b || q.arrow(a).target != q.arrow(b).target) continue;
      // alpha* beta
      rels.push_back(Relation{{{1, d.doubled_.make_path(q.arrow(b).source, {b, m + a})}}});
    }
  }
  d.relations_ = RelationSet(d.doubled_, std::move(rels));
  return d;
}

/// The restriction of a representation of the double quiver to Q.
inline Representation delta_part(const DoubleAlgebra& D, const Representation& x) {
  std::vector<Matrix> maps(x.maps().begin(), x.maps().begin() + static_cast<long>(D.base().arrow_count()));
  return Representation(D.base(), x.field(), x.dim(), std::move(maps));
}

/// A good module: relations hold and the restriction to Q is P(delta_dim).
class DModule {
 public:
  DModule(std::shared_ptr<const DoubleAlgebra> alg, Representation rep, DimensionVector delta_dim)
      : alg_(std::move(alg)), rep_(std::move(rep)), delta_dim_(std::move(delta_dim)) {}

  const DoubleAlgebra& algebra() const { return *alg_; }
  std::shared_ptr<const DoubleAlgebra> algebra_ptr() const { return alg_; }
  const Representation& rep() const { return rep_; }
  const DimensionVector& delta_dim() const { return delta_dim_; }
  Representation delta() const { return delta_part(*alg_, rep_); }

  std::vector<int> support() const {
    std::vector<int> s;
    for (int v = 1; v <= static_cast<int>(delta_dim_.size()); ++v) {
      if (delta_dim_.at(v) > 0) s.push_back(v);
    }
    return s;
  }

 private:
  std::shared_ptr<const DoubleAlgebra> alg_;
  Representation rep_;
  DimensionVector delta_dim_;
};

struct GoodCheck {
  std::optional<DModule> module;
  std::string diagnosis;  // empty when good
  explicit operator bool() const { return module.has_value(); }
};

inline GoodCheck check_good(const Representation& x, std::shared_ptr<const DoubleAlgebra> D) {
  if (!(x.quiver() == D->doubled())) return {std::nullopt, "representation is not over the double quiver"};
  const auto& rels = D->relations().relations();
  for (const auto& r : rels) {
    if (!evaluate_relation(x, r).is_zero()) {
      std::string s;
      for (const auto& t : r.terms) {
        s += (t.coefficient < 0 ? " - " : (s.empty() ? "" : " + ")) + D->doubled().path_to_string(t.path);
      }
      return {std::nullopt, "relation fails:" + (s.starts_with(" ") ? s : " " + s)};
    }
  }
  auto d = is_projective_restriction(delta_part(*D, x));
  if (!d) return {std::nullopt, "restriction to the base quiver is not projective"};
  return {DModule(std::move(D), x, *d), ""};
}

inline GoodCheck check_good(const Representation& x, const DoubleAlgebra& D) {
  return check_good(x, std::make_shared<const DoubleAlgebra>(D));
}

// ---------------------------------------------------------------------------
// Star systems: the star maps of a good module with a fixed Q-part are the
// solutions of a linear system.

class StarSystem {
 public:
  StarSystem(std::shared_ptr<const DoubleAlgebra> D, Representation delta)
      : alg_(std::move(D)), delta_(std::move(delta)), field_(delta_.field()) {
    const Quiver& q = alg_->base();
    for (std::size_t a = 0; a < q.arrow_count(); ++a) {
      offset_.push_back(unknowns_);
      // alpha*: t(alpha) -> s(alpha)
      unknowns_ += rows_of(a) * cols_of(a);
    }
  }

  std::size_t unknowns() const { return unknowns_; }
  std::size_t rows_of(std::size_t a) const { return delta_.dim_at(alg_->base().arrow(a).source); }
  std::size_t cols_of(std::size_t a) const { return delta_.dim_at(alg_->base().arrow(a).target); }
  std::size_t index(std::size_t a, std::size_t r, std::size_t c) const { return offset_[a] + r * cols_of(a) + c; }

  /// All relations of D, as linear equations in the star entries.
  void add_relations() {
    const Quiver& q = alg_->base();
    for (std::size_t a = 0; a < q.arrow_count(); ++a) {
      const Arrow& al = q.arrow(a);
      std::size_t n = delta_.dim_at(al.source);
      // S_a P_a - sum_b P_b S_b = 0 on X_{s(a)}
      for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) {
          Equation e;
          right_product(e, a, delta_.map(a), r, c, 1);
          for (auto b : q.arrows_in(al.source)) left_product(e, delta_.map(b), b, r, c, -1);
          push(std::move(e));
        }
      }
    }
    for (std::size_t a = 0; a < q.arrow_count(); ++a) {
      for (std::size_t b = 0; b < q.arrow_count(); ++b) {
        if (a == b || q.arrow(a).target != q.arrow(b).target) continue;
        // S_a P_b = 0
        for (std::size_t r = 0; r < rows_of(a); ++r) {
          for (std::size_t c = 0; c < delta_.dim_at(q.arrow(b).source); ++c) {
            Equation e;
            right_product(e, a, delta_.map(b), r, c, 1);
            push(std::move(e));
          }
        }
      }
    }
  }

  /// sum over beta into j of P_beta S_beta = theta_j at every vertex j.
  void add_theta(const HomTuple& theta) {
    const Quiver& q = alg_->base();
    for (int j = 1; j <= q.vertex_count(); ++j) {
      std::size_t n = delta_.dim_at(j);
      for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) {
          Equation e;
          for (auto b : q.arrows_in(j)) left_product(e, delta_.map(b), b, r, c, 1);
          e.rhs = theta[static_cast<std::size_t>(j - 1)].at(r, c);
          push(std::move(e));
        }
      }
    }
  }

  /// Substitutes a value for one star entry; it stops being an unknown.
  void fix_entry(std::size_t a, std::size_t r, std::size_t c, const Scalar& value) {
    if (fixed_.empty()) fixed_.assign(unknowns_, std::nullopt);
    fixed_[index(a, r, c)] = value;
  }

  bool is_fixed(std::size_t i) const { return !fixed_.empty() && fixed_[i].has_value(); }

  /// Unknowns that are not fixed, in index order.
  std::vector<std::size_t> free_indices() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < unknowns_; ++i) {
      if (!is_fixed(i)) out.push_back(i);
    }
    return out;
  }

  struct Reduced {
    Matrix lhs;                      // columns: free unknowns
    Vector rhs;
    std::vector<std::size_t> free;   // global index of each column
    bool consistent = true;          // false if an equation without unknowns fails
  };

  /// The system in the free unknowns, fixed values moved to the right.
  Reduced reduced() const {
    Reduced out;
    out.free = free_indices();
    std::vector<long> column(unknowns_, -1);
    for (std::size_t k = 0; k < out.free.size(); ++k) column[out.free[k]] = static_cast<long>(k);
    std::vector<std::vector<std::pair<std::size_t, Scalar>>> rows;
    for (const auto& e : eqs_) {
      Scalar rhs = e.rhs;
      std::vector<std::pair<std::size_t, Scalar>> row;
      for (const auto& [i, s] : e.terms) {
        if (column[i] >= 0) {
          row.push_back({static_cast<std::size_t>(column[i]), s});
        } else {
          rhs -= s * *fixed_[i];
        }
      }
      bool zero_row = std::all_of(row.begin(), row.end(), [](const auto& t) { return t.second.is_zero(); });
      if (zero_row) {
        if (!rhs.is_zero()) out.consistent = false;
        continue;
      }
      rows.push_back(std::move(row));
      out.rhs.push_back(rhs);
    }
    out.lhs = Matrix(field_, rows.size(), out.free.size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
      for (const auto& [c, s] : rows[r]) out.lhs.set(r, c, out.lhs.at(r, c) + s);
    }
    return out;
  }

  /// A full solution vector from values of the free unknowns.
  Vector expand(const Reduced& red, const Vector& free_values) const {
    Vector sol(unknowns_, Scalar(field_, 0));
    for (std::size_t i = 0; i < unknowns_; ++i) {
      if (is_fixed(i)) sol[i] = *fixed_[i];
    }
    for (std::size_t k = 0; k < red.free.size(); ++k) sol[red.free[k]] = free_values[k];
    return sol;
  }

  std::optional<Vector> particular() const {
    auto red = reduced();
    if (!red.consistent) return std::nullopt;
    if (red.free.empty() || red.lhs.rows() == 0) return expand(red, Vector(red.free.size(), Scalar(field_, 0)));
    auto x = solve(red.lhs, red.rhs);
    if (!x) return std::nullopt;
    return expand(red, *x);
  }

  /// Basis of the solutions of the homogeneous system in the free unknowns,
  /// as full-length vectors (zero on fixed entries).
  std::vector<Vector> homogeneous_basis() const {
    auto red = reduced();
    std::vector<Vector> out;
    if (red.free.empty()) return out;
    std::vector<Vector> ker;
    if (red.lhs.rows() == 0) {
      for (std::size_t k = 0; k < red.free.size(); ++k) {
        Vector e(red.free.size(), Scalar(field_, 0));
        e[k] = Scalar(field_, 1);
        ker.push_back(std::move(e));
      }
    } else {
      ker = kernel_basis(red.lhs);
    }
    for (const auto& v : ker) {
      Vector full(unknowns_, Scalar(field_, 0));
      for (std::size_t k = 0; k < red.free.size(); ++k) full[red.free[k]] = v[k];
      out.push_back(std::move(full));
    }
    return out;
  }

  /// The double-quiver representation with Q-part delta and the given stars.
  Representation assemble(const Vector& sol) const {
    const Quiver& q = alg_->base();
    std::vector<Matrix> maps = delta_.maps();
    for (std::size_t a = 0; a < q.arrow_count(); ++a) {
      Matrix s(field_, rows_of(a), cols_of(a));
      for (std::size_t r = 0; r < s.rows(); ++r) {
        for (std::size_t c = 0; c < s.cols(); ++c) s.set(r, c, sol[index(a, r, c)]);
      }
      maps.push_back(std::move(s));
    }
    return Representation(alg_->doubled(), field_, delta_.dim(), std::move(maps));
  }

 private:
  struct Equation {
    std::vector<std::pair<std::size_t, Scalar>> terms;
    Scalar rhs;
  };

  void push(Equation e) {
    if (e.rhs.field() != field_) e.rhs = Scalar(field_, 0);
    eqs_.push_back(std::move(e));
  }

  // coefficient * (S_a M)[r][c]
  void right_product(Equation& e, std::size_t a, const Matrix& m, std::size_t r, std::size_t c, long coefficient) {
    for (std::size_t k = 0; k < cols_of(a); ++k) {
      if (!m.is_zero_at(k, c)) e.terms.push_back({index(a, r, k), m.at(k, c) * Scalar(field_, coefficient)});
    }
  }

  // coefficient * (M S_b)[r][c]
  void left_product(Equation& e, const Matrix& m, std::size_t b, std::size_t r, std::size_t c, long coefficient) {
    for (std::size_t k = 0; k < rows_of(b); ++k) {
      if (!m.is_zero_at(r, k)) e.terms.push_back({index(b, k, c), m.at(r, k) * Scalar(field_, coefficient)});
    }
  }

  std::shared_ptr<const DoubleAlgebra> alg_;
  Representation delta_;
  Field field_;
  std::vector<std::size_t> offset_;
  std::size_t unknowns_ = 0;
  std::vector<Equation> eqs_;
  std::vector<std::optional<Scalar>> fixed_;
};

/// dim Rep(D, P(d)) inside the space of star maps.
inline std::size_t good_locus_dim(std::shared_ptr<const DoubleAlgebra> D, const DimensionVector& d,
                                  const Field& f = Field::rationals()) {
  StarSystem sys(D, projective_rep(D->base(), d, {}, f));
  sys.add_relations();
  return sys.homogeneous_basis().size();
}

// ---------------------------------------------------------------------------
// Normalisation and the radical-endomorphism correspondence

struct NormalizedModule {
  DModule module;  // Q-part equals projective_model(base, d) exactly
  ProjectiveModel model;
};

/// Conjugates x so that its Q-part is the standard P(d).
inline NormalizedModule normalize(const DModule& x) {
  auto iso = projective_isomorphism(x.delta());
  if (!iso) throw std::logic_error("normalize: Q-part is not projective");
  HomTuple g;
  for (const auto& m : iso->iso) g.push_back(*inverse(m));
  Representation y = conjugate(x.rep(), g);
  ProjectiveModel model = projective_model(x.algebra().base(), iso->d, {}, x.rep().field());
  return {DModule(x.algebra_ptr(), std::move(y), iso->d), std::move(model)};
}

/// theta_j = sum over beta into j of X_beta X_beta*; an endomorphism of the
/// Q-part lying in its radical.
inline HomTuple radical_endomorphism(const DModule& x) {
  const DoubleAlgebra& D = x.algebra();
  const Quiver& q = D.base();
  HomTuple theta;
  for (int j = 1; j <= q.vertex_count(); ++j) {
    Matrix t(x.rep().field(), x.rep().dim_at(j), x.rep().dim_at(j));
    for (auto b : q.arrows_in(j)) t += x.rep().map(b) * x.rep().map(D.star(b));
    theta.push_back(std::move(t));
  }
  return theta;
}

/// The good module with Q-part delta whose radical endomorphism is theta,
/// or nullopt when theta is not of that form.
inline std::optional<DModule> module_from_radical_endomorphism(std::shared_ptr<const DoubleAlgebra> D,
                                                                const Representation& delta, const HomTuple& theta) {
  StarSystem sys(D, delta);
  sys.add_relations();
  sys.add_theta(theta);
  auto sol = sys.particular();
  if (!sol) return std::nullopt;
  auto g = check_good(sys.assemble(*sol), D);
  return g.module;
}

// ---------------------------------------------------------------------------
// End, Ext, rigidity

inline std::size_t end_dim_D(const DModule& x) { return hom_dim(x.rep(), x.rep()); }

inline std::size_t end_dim_A(const DModule& x) {
  auto d = x.delta();
  return hom_dim(d, d);
}

inline std::size_t rad_end_dim_A(const DModule& x) {
  return end_dim_A(x) - static_cast<std::size_t>(x.delta_dim().sum_of_squares());
}

/// dim Ext^1_D(X, X) from the exact sequence
/// 0 -> End_D X -> End_A X -> radEnd_A X -> Ext^1_D(X, X) -> 0.
inline std::size_t ext1_dim_D(const DModule& x) {
  long e = static_cast<long>(end_dim_D(x)) - static_cast<long>(end_dim_A(x)) + static_cast<long>(rad_end_dim_A(x));
  if (e < 0) throw std::logic_error("ext1_dim_D: negative dimension, End_D is smaller than sum d_i^2");
  return static_cast<std::size_t>(e);
}

namespace detail {

// rank over F_p never exceeds the rational rank, so full row rank mod p
// settles the rational rank without rational elimination
inline bool full_row_rank_mod_p(const Matrix& m) {
  constexpr std::uint64_t p = 2147483647;
  if (!m.field().is_rational() || m.rows() > m.cols()) return false;
  auto r = reduce_mod(m, p);
  return r && rank(*r) == m.rows();
}

}  // namespace detail

struct ResolutionCounts {
  std::size_t hom_from_free = 0;      // dim Hom_D(D (x)_A X, X)
  std::size_t hom_from_relations = 0; // dim Hom_D(J (x)_A X, X)
  std::size_t rank = 0;               // rank of the induced map between them
  std::size_t end_dim() const { return hom_from_free - rank; }
  std::size_t ext1_dim() const { return hom_from_relations - rank; }
};

/// Applies Hom_D(-, X) to the projective resolution
///   0 -> J (x)_A X -> D (x)_A X -> X -> 0.
/// With X normalised to P(d), D (x)_A X is free on the generators g = (i, c)
/// of P(d), and J (x)_A X is free on the pairs (g, beta) with t(beta) = i,
/// generated by beta* (x) g. A map phi: D (x)_A X -> X is the tuple
/// x_g = phi(1 (x) g), and its pullback sends (g, beta) to
///   X_beta* x_g - sum_k X_{a_k} x_{g_k}   where beta* g = sum_k a_k g_k in X.
inline ResolutionCounts resolution_counts(const DModule& x) {
  NormalizedModule nm = normalize(x);
  const DoubleAlgebra& D = x.algebra();
  const Quiver& q = D.base();
  const Representation& X = nm.module.rep();
  const Field& f = X.field();
  const auto& basis = nm.model.basis;

  struct Gen {
    int vertex;
    long copy;
    std::size_t offset;  // first unknown of x_g
  };
  std::vector<Gen> gens;
  std::map<std::pair<int, long>, std::size_t> gen_index;
  std::size_t unknowns = 0;
  for (int i = 1; i <= q.vertex_count(); ++i) {
    for (long c = 0; c < nm.module.delta_dim().at(i); ++c) {
      gen_index[{i, c}] = gens.size();
      gens.push_back({i, c, unknowns});
      unknowns += X.dim_at(i);
    }
  }
  std::size_t rows = 0;
  for (const auto& g : gens) {
    for (auto b : q.arrows_in(g.vertex)) rows += X.dim_at(q.arrow(b).source);
  }
  ResolutionCounts out;
  out.hom_from_free = unknowns;
  out.hom_from_relations = rows;
  if (rows == 0 || unknowns == 0) return out;

  // path matrices X_p for the basis labels, cached by (start, arrows)
  std::map<std::vector<std::size_t>, Matrix> path_cache;
  auto path_matrix = [&](const Path& p) -> const Matrix& {
    auto key = p.arrows;
    key.insert(key.begin(), static_cast<std::size_t>(p.start));
    auto it = path_cache.find(key);
    if (it == path_cache.end()) it = path_cache.emplace(key, evaluate_path(X, p)).first;
    return it->second;
  };

  Matrix sys(f, rows, unknowns);
  std::size_t r0 = 0;
  for (const auto& g : gens) {
    // position of the generator g inside X_{v(g)}
    const auto& lab_i = basis[static_cast<std::size_t>(g.vertex - 1)];
    std::size_t gpos = 0;
    while (!(lab_i[gpos].source == g.vertex && lab_i[gpos].path.is_trivial() && lab_i[gpos].copy == g.copy)) ++gpos;
    for (auto b : q.arrows_in(g.vertex)) {
      int s = q.arrow(b).source;
      std::size_t ds = X.dim_at(s);
      const Matrix& star = X.map(D.star(b));  // X_{v(g)} -> X_s
      // + X_beta* x_g
      for (std::size_t r = 0; r < ds; ++r) {
        for (std::size_t k = 0; k < X.dim_at(g.vertex); ++k) {
          if (!star.is_zero_at(r, k)) sys.set(r0 + r, g.offset + k, sys.at(r0 + r, g.offset + k) + star.at(r, k));
        }
      }
      // - sum_k coeff * X_{a_k} x_{g_k}, from the coordinates of beta* g
      const auto& lab_s = basis[static_cast<std::size_t>(s - 1)];
      for (std::size_t e = 0; e < ds; ++e) {
        if (star.is_zero_at(e, gpos)) continue;
        Scalar coeff = star.at(e, gpos);
        const auto& lab = lab_s[e];
        const Gen& gk = gens[gen_index.at({lab.source, lab.copy})];
        const Matrix& pm = path_matrix(lab.path);  // X_{v(gk)} -> X_s
        for (std::size_t r = 0; r < ds; ++r) {
          for (std::size_t k = 0; k < pm.cols(); ++k) {
            if (!pm.is_zero_at(r, k)) sys.set(r0 + r, gk.offset + k, sys.at(r0 + r, gk.offset + k) - coeff * pm.at(r, k));
          }
        }
      }
      r0 += ds;
    }
  }
  out.rank = detail::full_row_rank_mod_p(sys) ? rows : rank(sys);
  return out;
}

inline std::size_t ext1_dim_via_resolution(const DModule& x) { return resolution_counts(x).ext1_dim(); }

inline bool is_rigid(const DModule& x) {
  std::size_t e = end_dim_D(x);
  auto s = static_cast<std::size_t>(x.delta_dim().sum_of_squares());
  if (e < s) throw std::logic_error("is_rigid: End_D smaller than sum d_i^2");
  return e == s;
}

struct Certificate {
  DimensionVector delta_dim;
  std::size_t end_dim_D = 0;
  std::size_t end_dim_A = 0;
  long sum_squares = 0;
  std::size_t ext1_exact_sequence = 0;
  std::size_t ext1_resolution = 0;
  bool rigid = false;
};

inline Certificate certify(const DModule& x) {
  Certificate c;
  c.delta_dim = x.delta_dim();
  c.end_dim_D = end_dim_D(x);
  c.end_dim_A = end_dim_A(x);
  c.sum_squares = x.delta_dim().sum_of_squares();
  if (static_cast<long>(c.end_dim_D) < c.sum_squares) throw std::logic_error("certify: End_D smaller than sum d_i^2");
  c.ext1_exact_sequence = c.end_dim_D - static_cast<std::size_t>(c.sum_squares);
  c.ext1_resolution = ext1_dim_via_resolution(x);
  c.rigid = c.ext1_exact_sequence == 0 && c.ext1_resolution == 0;
  return c;
}

// ---------------------------------------------------------------------------
// Submodules and the J-filtration

/// Columns spanning the smallest subrepresentation containing the given
/// vectors (columns of gens[v-1] at vertex v).
inline std::vector<Matrix> generated_subrepresentation(const Representation& x, std::vector<Matrix> gens) {
  const Quiver& q = x.quiver();
  for (auto& g : gens) g = column_space_basis(g);
  bool grew = true;
  while (grew) {
    grew = false;
    for (std::size_t a = 0; a < q.arrow_count(); ++a) {
      const Arrow& arr = q.arrow(a);
      auto s = static_cast<std::size_t>(arr.source - 1), t = static_cast<std::size_t>(arr.target - 1);
      if (gens[s].cols() == 0) continue;
      Matrix img = x.map(a) * gens[s];
      Matrix both = column_space_basis(hstack(gens[t], img));
      if (both.cols() > gens[t].cols()) {
        gens[t] = both;
        grew = true;
      }
    }
  }
  return gens;
}

struct JFiltration {
  std::vector<DimensionVector> layers;   // dims of J^i X / J^{i+1} X
  std::vector<std::vector<std::size_t>> top_splitting;  // per vertex: basis positions spanning X^0
};

/// J is the ideal generated by the elements alpha beta* of D.
inline JFiltration j_filtration(const DModule& x) {
  const DoubleAlgebra& D = x.algebra();
  const Quiver& q = D.base();
  const Representation& X = x.rep();
  const Field& f = X.field();
  auto n = static_cast<std::size_t>(q.vertex_count());
  std::vector<Matrix> current;
  for (int v = 1; v <= q.vertex_count(); ++v) current.push_back(Matrix::identity(f, X.dim_at(v)));
  JFiltration out;
  for (int step = 0;; ++step) {
    std::vector<Matrix> gens;
    for (int v = 1; v <= q.vertex_count(); ++v) gens.emplace_back(f, X.dim_at(v), 0);
    for (std::size_t a = 0; a < q.arrow_count(); ++a) {
      for (std::size_t b = 0; b < q.arrow_count(); ++b) {
        if (q.arrow(a).source != q.arrow(b).source) continue;
        // alpha beta*: X_{t(beta)} -> X_{t(alpha)}
        auto tb = static_cast<std::size_t>(q.arrow(b).target - 1), ta = static_cast<std::size_t>(q.arrow(a).target - 1);
        if (current[tb].cols() == 0) continue;
        Matrix img = X.map(a) * (X.map(D.star(b)) * current[tb]);
        gens[ta] = hstack(gens[ta], img);
      }
    }
    auto next = generated_subrepresentation(X, std::move(gens));
    DimensionVector layer(n);
    for (std::size_t v = 0; v < n; ++v) layer[v] = static_cast<long>(current[v].cols() - next[v].cols());
    if (step == 0) {
      for (std::size_t v = 0; v < n; ++v) out.top_splitting.push_back(echelon_complement(next[v]));
    }
    bool empty = std::all_of(current.begin(), current.end(), [](const Matrix& m) { return m.cols() == 0; });
    if (empty) break;
    out.layers.push_back(layer);
    current = std::move(next);
  }
  return out;
}

}  // namespace dorbit
