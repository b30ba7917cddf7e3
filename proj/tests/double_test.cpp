#include <gtest/gtest.h>

#include <random>

#include "dorbit/construct.hpp"

using namespace dorbit;

namespace {

const Field Q = Field::rationals();

std::shared_ptr<const DoubleAlgebra> share(const Quiver& q) { return std::make_shared<const DoubleAlgebra>(build_double(q)); }

Quiver a2() { return Quiver::acyclic(2, {{"a", 1, 2}}); }

// P(d) with zero stars, as a representation of the double quiver
Representation zero_stars(const DoubleAlgebra& D, const DimensionVector& d) {
  auto p = projective_rep(D.base(), d);
  std::vector<Matrix> maps = p.maps();
  for (const auto& a : D.base().arrows()) {
    maps.emplace_back(Q, p.dim_at(a.source), p.dim_at(a.target));
  }
  return Representation(D.doubled(), Q, p.dim(), std::move(maps));
}

DModule random_good(std::shared_ptr<const DoubleAlgebra> D, const DimensionVector& d, std::mt19937_64& rng) {
  StarSystem sys(D, projective_rep(D->base(), d));
  sys.add_relations();
  Vector sol(sys.unknowns(), Scalar(Q, 0));
  for (const auto& dir : sys.homogeneous_basis()) {
    Scalar c(Q, static_cast<long>(rng() % 5) - 2);
    for (std::size_t i = 0; i < sol.size(); ++i) sol[i] += c * dir[i];
  }
  auto g = check_good(sys.assemble(sol), D);
  if (!g) throw std::logic_error(g.diagnosis);
  return *g.module;
}

Matrix random_invertible(std::size_t n, std::mt19937_64& rng) {
  while (true) {
    Matrix m(Q, n, n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) m.set_int(i, j, static_cast<long>(rng() % 7) - 3);
    }
    if (is_invertible(m)) return m;
  }
}

}  // namespace

TEST(BuildDouble, A1IsTheField) {
  auto D = build_double(Quiver::acyclic(1, {}));
  EXPECT_EQ(D.dimension(), 1u);
  EXPECT_EQ(D.basis().size(), 1u);
  EXPECT_TRUE(D.relations().relations().empty());
}

TEST(BuildDouble, A2) {
  auto D = build_double(a2());
  ASSERT_EQ(D.relations().relations().size(), 1u);
  const auto& r = D.relations().relations()[0];
  ASSERT_EQ(r.terms.size(), 1u);
  EXPECT_EQ(D.doubled().path_to_string(r.terms[0].path), D.doubled().path_to_string(D.doubled().make_path(1, {0, 1})));
  EXPECT_EQ(D.dimension(), 5u);
  EXPECT_EQ(D.basis().size(), 5u);
  EXPECT_EQ(D.doubled().arrow(D.star(0)).id, "a*");
  EXPECT_EQ(D.doubled().arrow(D.star(0)).source, 2);
}

TEST(BuildDouble, ZeroRelationsAtACommonTarget) {
  auto D = build_double(Quiver::acyclic(3, {{"a", 1, 2}, {"b", 3, 2}}));
  std::set<std::string> monomials;
  for (const auto& r : D.relations().relations()) {
    if (r.terms.size() == 1) monomials.insert(D.doubled().path_to_string(r.terms[0].path));
  }
  // b then a*, and a then b*
  EXPECT_TRUE(monomials.count(D.doubled().path_to_string(D.doubled().make_path(3, {1, 2}))));
  EXPECT_TRUE(monomials.count(D.doubled().path_to_string(D.doubled().make_path(1, {0, 3}))));
}

TEST(BuildDouble, RejectsMultipleArrows) {
  EXPECT_THROW(build_double(Quiver::acyclic(2, {{"a", 1, 2}, {"b", 1, 2}})), std::invalid_argument);
}

TEST(BuildDouble, RelationsAreHomogeneous) {
  for (const auto& q : {a2(), Quiver::acyclic(4, {{"a", 1, 2}, {"b", 3, 2}, {"c", 2, 4}}),
                        Quiver::acyclic(3, {{"a", 2, 1}, {"b", 2, 3}})}) {
    auto D = build_double(q);
    for (const auto& r : D.relations().relations()) {
      auto degrees = [&](const Path& p) {
        std::size_t stars = 0;
        for (auto a : p.arrows) stars += D.is_star(a);
        return std::pair{stars, p.arrows.size() - stars};
      };
      for (const auto& t : r.terms) EXPECT_EQ(degrees(t.path), degrees(r.terms[0].path));
    }
  }
}

TEST(CheckGood, ZeroStarsOnProjective) {
  auto D = share(Quiver::acyclic(3, {{"a", 1, 2}, {"b", 3, 2}}));
  DimensionVector d{1, 2, 1};
  auto g = check_good(zero_stars(*D, d), D);
  ASSERT_TRUE(g) << g.diagnosis;
  EXPECT_EQ(g.module->delta_dim(), d);
  EXPECT_EQ(g.module->support(), (std::vector<int>{1, 2, 3}));
}

TEST(CheckGood, SubsetModuleIsGood) {
  auto x = x_of_subset(3, {1, 3});
  EXPECT_TRUE(check_good(x.rep(), x.algebra_ptr()));
}

TEST(CheckGood, BrokenRelationIsDiagnosed) {
  auto D = share(a2());
  Matrix one(Q, 1, 1);
  one.set_int(0, 0, 1);
  Representation x(D->doubled(), Q, DimensionVector{1, 1}, {one, one});
  auto g = check_good(x, D);
  EXPECT_FALSE(g);
  EXPECT_NE(g.diagnosis.find("relation fails"), std::string::npos);
}

TEST(CheckGood, NonProjectiveRestriction) {
  auto D = share(a2());
  // the simple at the source: not projective
  Representation x = Representation::zero(D->doubled(), Q, DimensionVector{1, 0});
  auto g = check_good(x, D);
  EXPECT_FALSE(g);
  EXPECT_NE(g.diagnosis.find("not projective"), std::string::npos);
}

TEST(EndDim, SimpleProjectiveAtSink) {
  auto D = share(a2());
  auto g = check_good(zero_stars(*D, DimensionVector{0, 1}), D);
  ASSERT_TRUE(g);
  EXPECT_EQ(end_dim_D(*g.module), 1u);
}

TEST(EndDim, SubsetPairBlocks) {
  auto xi = x_of_subset(4, {2, 3});
  auto xj = x_of_subset(4, {1, 2, 3, 4});
  auto sum = check_good(direct_sum(xi.rep(), xj.rep()), xi.algebra_ptr());
  ASSERT_TRUE(sum);
  EXPECT_EQ(end_dim_D(*sum.module), 3u * 2 + 4);
}

TEST(EndDim, ChainModuleA2) {
  auto x = chain_module(2, dim_to_chain(DimensionVector{1, 2}));
  EXPECT_EQ(end_dim_D(x), 5u);
}

TEST(Ext, SubsetModulesAreRigid) {
  for (int n = 1; n <= 4; ++n) {
    for (unsigned m = 1; m < (1u << n); ++m) {
      Support s;
      for (int v = 1; v <= n; ++v) {
        if (m >> (v - 1) & 1) s.insert(v);
      }
      auto x = x_of_subset(n, s);
      EXPECT_EQ(ext1_dim_D(x), 0u);
      EXPECT_EQ(ext1_dim_via_resolution(x), 0u);
    }
  }
}

TEST(Ext, ZeroStarsOnA2) {
  auto D = share(a2());
  auto g = check_good(zero_stars(*D, DimensionVector{1, 1}), D);
  ASSERT_TRUE(g);
  EXPECT_EQ(end_dim_D(*g.module), 3u);
  EXPECT_FALSE(is_rigid(*g.module));
  EXPECT_EQ(ext1_dim_D(*g.module), ext1_dim_via_resolution(*g.module));
  EXPECT_EQ(ext1_dim_D(*g.module), 1u);
}

TEST(Ext, ZeroModule) {
  auto D = share(a2());
  auto x = zero_module(D);
  EXPECT_EQ(ext1_dim_D(x), 0u);
  EXPECT_EQ(ext1_dim_via_resolution(x), 0u);
  EXPECT_TRUE(is_rigid(x));
}

TEST(Ext, BothRoutesAgreeOnRandomModules) {
  std::mt19937_64 rng(5);
  auto q = Quiver::acyclic(3, {{"a", 1, 2}, {"b", 3, 2}});
  auto D = share(q);
  for (int k = 0; k < 50; ++k) {
    DimensionVector d{static_cast<long>(rng() % 3), static_cast<long>(rng() % 3), static_cast<long>(rng() % 3)};
    auto x = random_good(D, d, rng);
    auto rc = resolution_counts(x);
    EXPECT_EQ(ext1_dim_D(x), rc.ext1_dim()) << d.to_string();
    EXPECT_EQ(end_dim_D(x), rc.end_dim()) << d.to_string();
    EXPECT_GE(static_cast<long>(end_dim_D(x)), d.sum_of_squares());
  }
}

TEST(Rigid, ChainModuleA4) {
  EXPECT_TRUE(is_rigid(chain_module(4, dim_to_chain(DimensionVector{1, 1, 2, 1}))));
}

TEST(Rigid, InvariantUnderConjugation) {
  std::mt19937_64 rng(9);
  auto q = Quiver::acyclic(3, {{"a", 1, 2}, {"b", 2, 3}});
  auto D = share(q);
  for (int k = 0; k < 10; ++k) {
    DimensionVector d{static_cast<long>(rng() % 2 + 1), static_cast<long>(rng() % 2), 1};
    auto x = random_good(D, d, rng);
    HomTuple g;
    for (int v = 1; v <= 3; ++v) g.push_back(random_invertible(x.rep().dim_at(v), rng));
    auto y = check_good(conjugate(x.rep(), g), D);
    ASSERT_TRUE(y);
    EXPECT_EQ(is_rigid(x), is_rigid(*y.module));
    EXPECT_EQ(end_dim_D(x), end_dim_D(*y.module));
  }
}

TEST(Certificate, FieldsAgree) {
  auto c = certify(chain_module(3, dim_to_chain(DimensionVector{2, 1, 2})));
  EXPECT_TRUE(c.rigid);
  EXPECT_EQ(static_cast<long>(c.end_dim_D), c.sum_squares);
  EXPECT_EQ(c.ext1_exact_sequence, 0u);
  EXPECT_EQ(c.ext1_resolution, 0u);
}

TEST(Normalize, RadicalEndomorphismRoundTrip) {
  auto x = chain_module(3, dim_to_chain(DimensionVector{1, 2, 1}));
  auto nm = normalize(x);
  auto theta = radical_endomorphism(nm.module);
  auto y = module_from_radical_endomorphism(x.algebra_ptr(), nm.module.delta(), theta);
  ASSERT_TRUE(y);
  EXPECT_EQ(end_dim_D(*y), end_dim_D(x));
}

TEST(GoodLocus, A2) {
  // stars on P(1,1): a*: X_2 -> X_1 is 2x2 with a* a = 0 on X_1
  auto D = share(a2());
  EXPECT_EQ(good_locus_dim(D, DimensionVector{1, 1}), 1u);
}

TEST(JFiltration, ZeroStars) {
  auto D = share(Quiver::acyclic(3, {{"a", 1, 2}, {"b", 2, 3}}));
  auto g = check_good(zero_stars(*D, DimensionVector{1, 1, 1}), D);
  ASSERT_TRUE(g);
  auto f = j_filtration(*g.module);
  ASSERT_EQ(f.layers.size(), 1u);
  EXPECT_EQ(f.layers[0], g.module->rep().dim());
}

TEST(JFiltration, SubsetModuleA2) {
  auto f = j_filtration(x_of_subset(2, {1, 2}));
  ASSERT_EQ(f.layers.size(), 2u);
  EXPECT_EQ(f.layers[0].at(2), 1);
  EXPECT_EQ(f.layers[1].at(2), 1);
  EXPECT_EQ(f.top_splitting[1].size(), 1u);
}

TEST(JFiltration, LayersExhaust) {
  auto x = chain_module(4, dim_to_chain(DimensionVector{1, 2, 2, 1}));
  auto f = j_filtration(x);
  for (int v = 1; v <= 4; ++v) {
    long total = 0;
    for (const auto& l : f.layers) total += l.at(v);
    EXPECT_EQ(total, static_cast<long>(x.rep().dim_at(v)));
  }
}
