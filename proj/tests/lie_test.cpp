#include <gtest/gtest.h>

#include "dorbit/construct.hpp"
#include "dorbit/lie.hpp"

using namespace dorbit;

namespace {

const Field Q = Field::rationals();

// 1 -> 3 <- 2, the sink orientation of A_3 with sources first
Quiver sink_a3_standard() { return Quiver::acyclic(3, {{"a", 1, 3}, {"b", 2, 3}}); }

Matrix unit_sum(std::size_t t, std::vector<std::pair<std::size_t, std::size_t>> entries) {
  Matrix m(Q, t, t);
  for (auto [a, b] : entries) m.set_int(a, b, 1);
  return m;
}

}  // namespace

TEST(RootSubset, LinearIsEveryPositiveRoot) {
  auto s = quiver_to_rootsubset(linear_a(4));
  EXPECT_EQ(s.roots().size(), 6u);
  auto b = block_pattern(s, DimensionVector{1, 2, 1, 1}, PatternKind::b);
  EXPECT_EQ(block_pattern(s, DimensionVector{1, 2, 1, 1}, PatternKind::s).cells, b.cells);
}

TEST(RootSubset, NoArrows) {
  auto s = quiver_to_rootsubset(Quiver::acyclic(3, {}));
  EXPECT_TRUE(s.roots().empty());
  EXPECT_EQ(block_pattern(s, DimensionVector{2, 1, 1}, PatternKind::n).dimension(), 0u);
}

TEST(RootSubset, SinkA3) {
  auto s = quiver_to_rootsubset(sink_a3_standard());
  EXPECT_EQ(s.roots(), (std::set<RootSubset::Interval>{{1, 2}, {2, 2}}));
  EXPECT_TRUE(s.has_cell(1, 3));
  EXPECT_FALSE(s.has_cell(1, 2));
  EXPECT_EQ(block_pattern(s, DimensionVector{1, 1, 1}, PatternKind::n).dimension(), 2u);
}

TEST(RootSubset, RejectsNonStandardOrientation) {
  EXPECT_THROW(quiver_to_rootsubset(Quiver::acyclic(2, {{"a", 2, 1}})), std::invalid_argument);
}

TEST(RootSubset, RejectsUnclosedSet) {
  EXPECT_THROW(RootSubset(3, {{1, 1}, {2, 2}}), std::invalid_argument);
  EXPECT_THROW(RootSubset(3, {{1, 3}}), std::invalid_argument);
}

TEST(SigmaD, AllOnes) {
  auto s = quiver_to_rootsubset(sink_a3_standard());
  auto sd = sigma_d(s, DimensionVector{1, 1, 1});
  EXPECT_TRUE(sd.negative.empty());
  EXPECT_EQ(sd.positive, (RootSet{{1, 3}, {2, 3}}));
}

TEST(SigmaD, EmptySubsetGivesLevi) {
  auto sd = sigma_d(RootSubset(2, {}), DimensionVector{2, 1});
  EXPECT_EQ(sd.negative, (RootSet{{2, 1}}));
  EXPECT_EQ(sd.positive, (RootSet{{1, 2}}));
}

TEST(SigmaD, LinearA2) {
  auto sd = sigma_d(quiver_to_rootsubset(linear_a(2)), DimensionVector{1, 2});
  EXPECT_EQ(sd.negative, (RootSet{{3, 2}}));
  EXPECT_EQ(sd.positive, (RootSet{{1, 2}, {1, 3}, {2, 3}}));
}

TEST(BlockPattern, DimensionsSplit) {
  for (const auto& q : {linear_a(3), sink_a3_standard(), Quiver::acyclic(3, {{"a", 1, 2}})}) {
    auto s = quiver_to_rootsubset(q);
    for (const auto& d : {DimensionVector{1, 1, 1}, DimensionVector{2, 0, 3}, DimensionVector{1, 2, 2}}) {
      auto ps = block_pattern(s, d, PatternKind::s);
      auto pn = block_pattern(s, d, PatternKind::n);
      auto pl = block_pattern(s, d, PatternKind::l);
      EXPECT_EQ(ps.dimension() - pn.dimension(), static_cast<std::size_t>(d.sum_of_squares()));
      EXPECT_EQ(pl.dimension(), static_cast<std::size_t>(d.sum_of_squares()));
      EXPECT_LE(ps.dimension(), block_pattern(s, d, PatternKind::b).dimension());
    }
  }
}

TEST(BlockPattern, Ascii) {
  auto s = quiver_to_rootsubset(linear_a(2));
  EXPECT_EQ(render_ascii(block_pattern(s, DimensionVector{1, 2}, PatternKind::n)), ".|**\n-+--\n.|..\n.|..\n");
  EXPECT_EQ(parse_pattern_kind("b"), PatternKind::b);
  EXPECT_THROW(parse_pattern_kind("x"), std::invalid_argument);
}

TEST(RadEndo, ZeroStarsGiveZero) {
  auto D = std::make_shared<const DoubleAlgebra>(build_double(linear_a(2)));
  auto p = projective_rep(D->base(), DimensionVector{1, 1});
  auto x = check_good(Representation(D->doubled(), Q, p.dim(), {p.map(0), Matrix(Q, 1, 2)}), D);
  ASSERT_TRUE(x);
  auto pat = block_pattern(quiver_to_rootsubset(D->base()), DimensionVector{1, 1}, PatternKind::s);
  EXPECT_TRUE(rad_endo_to_matrix(*x.module, pat).is_zero());
}

TEST(RadEndo, SubsetModuleA2) {
  auto x = x_of_subset(2, {1, 2});
  auto pat = block_pattern(quiver_to_rootsubset(linear_a(2)), DimensionVector{1, 1}, PatternKind::n);
  auto e = rad_endo_to_matrix(x, pat);
  EXPECT_FALSE(e.is_zero_at(0, 1));
  EXPECT_TRUE(e.is_zero_at(0, 0));
  EXPECT_TRUE(e.is_zero_at(1, 0));
  EXPECT_TRUE(e.is_zero_at(1, 1));
}

TEST(RadEndo, RejectsTwoPaths) {
  auto q = Quiver::acyclic(4, {{"a", 1, 2}, {"b", 1, 3}, {"c", 2, 4}, {"e", 3, 4}});
  auto D = std::make_shared<const DoubleAlgebra>(build_double(q));
  auto x = zero_module(D);
  auto pat = block_pattern(RootSubset(4, {}), DimensionVector(4), PatternKind::s);
  EXPECT_THROW(rad_endo_to_matrix(x, pat), std::invalid_argument);
}

TEST(Richardson, EmptyNilradical) {
  auto s = RootSubset(2, {});
  DimensionVector d{1, 1};
  auto r = richardson_rank(block_pattern(s, d, PatternKind::s), block_pattern(s, d, PatternKind::n), Matrix(Q, 2, 2));
  EXPECT_EQ(r.n_dim, 0u);
  EXPECT_TRUE(r.dense());
}

TEST(Richardson, RegularNilpotentInBorel) {
  auto s = quiver_to_rootsubset(linear_a(3));
  DimensionVector d{1, 1, 1};
  auto ps = block_pattern(s, d, PatternKind::b), pn = block_pattern(s, d, PatternKind::n);
  auto r = richardson_rank(ps, pn, unit_sum(3, {{0, 1}, {1, 2}}));
  EXPECT_EQ(r.rank, 3u);
  EXPECT_EQ(r.s_dim, 6u);
  EXPECT_TRUE(r.dense());
  EXPECT_FALSE(richardson_check(ps, pn, Matrix(Q, 3, 3)));
  EXPECT_FALSE(richardson_check(ps, pn, unit_sum(3, {{0, 2}})));
}

TEST(Richardson, AgreesWithRigidity) {
  auto q = linear_a(3);
  auto s = quiver_to_rootsubset(q);
  for (const auto& d : {DimensionVector{1, 2, 1}, DimensionVector{2, 1, 2}, DimensionVector{1, 1, 3}}) {
    auto x = chain_module(3, dim_to_chain(d));
    auto ps = block_pattern(s, d, PatternKind::s), pn = block_pattern(s, d, PatternKind::n);
    EXPECT_TRUE(richardson_check(ps, pn, rad_endo_to_matrix(x, ps))) << d.to_string();
  }
  auto D = x_of_subset(2, {1}).algebra_ptr();
  auto p = projective_rep(D->base(), DimensionVector{1, 1});
  auto z = check_good(Representation(D->doubled(), Q, p.dim(), {p.map(0), Matrix(Q, 1, 2)}), D);
  ASSERT_TRUE(z);
  EXPECT_FALSE(is_rigid(*z.module));
  auto s2 = quiver_to_rootsubset(linear_a(2));
  DimensionVector d2{1, 1};
  auto ps = block_pattern(s2, d2, PatternKind::s), pn = block_pattern(s2, d2, PatternKind::n);
  EXPECT_FALSE(richardson_check(ps, pn, rad_endo_to_matrix(*z.module, ps)));
}
