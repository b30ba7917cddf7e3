#include <gtest/gtest.h>

#include "dorbit/construct.hpp"

using namespace dorbit;

namespace {

Quiver sink_a3() { return Quiver::acyclic(3, {{"a", 1, 2}, {"b", 3, 2}}); }
Quiver source_a3() { return Quiver::acyclic(3, {{"a", 2, 1}, {"b", 2, 3}}); }

// D_4 with branch vertex 2
Quiver d4(bool a_in, bool b_in, bool c_in) {
  auto e = [](const char* id, int leaf, bool in) { return in ? Arrow{id, leaf, 2} : Arrow{id, 2, leaf}; };
  return Quiver::acyclic(4, {e("a", 1, a_in), e("b", 3, b_in), e("c", 4, c_in)});
}

Quiver affine_d4() {
  return Quiver::acyclic(5, {{"a", 2, 1}, {"b", 3, 1}, {"c", 4, 1}, {"e", 5, 1}});
}

std::vector<DimensionVector> vectors(int n, long max_sum) {
  std::vector<DimensionVector> out;
  std::vector<long> v(static_cast<std::size_t>(n), 0);
  while (true) {
    long s = 0;
    for (long x : v) s += x;
    if (s > 0 && s <= max_sum) out.emplace_back(v);
    std::size_t i = 0;
    while (i < v.size() && ++v[i] > max_sum) v[i++] = 0;
    if (i == v.size()) return out;
  }
}

}  // namespace

TEST(Subset, ModuleDimensions) {
  auto x = x_of_subset(3, {1, 3});
  EXPECT_EQ(x.delta_dim(), (DimensionVector{1, 0, 1}));
  EXPECT_EQ(x.rep().dim(), (DimensionVector{1, 1, 2}));
  EXPECT_EQ(end_dim_D(x), 2u);
  EXPECT_TRUE(is_rigid(x));
}

TEST(Subset, SingletonIsProjectiveWithZeroStars) {
  auto x = x_of_subset(3, {2});
  EXPECT_EQ(x.rep().dim(), (DimensionVector{0, 1, 1}));
  for (std::size_t k = 0; k < x.algebra().base().arrow_count(); ++k) {
    EXPECT_TRUE(x.rep().map(x.algebra().star(k)).is_zero());
  }
}

TEST(Subset, RejectsBadInput) {
  EXPECT_THROW(x_of_subset(3, {}), std::invalid_argument);
  EXPECT_THROW(x_of_subset(3, {4}), std::invalid_argument);
}

TEST(Chain, DimToChain) {
  auto c = dim_to_chain(DimensionVector{1, 2, 1});
  ASSERT_EQ(c.subsets.size(), 2u);
  EXPECT_EQ(c.subsets[0], (Support{2}));
  EXPECT_EQ(c.subsets[1], (Support{1, 2, 3}));
  EXPECT_THROW(dim_to_chain(DimensionVector{0, 0}), std::invalid_argument);
}

TEST(Chain, ModuleHasRequestedDimension) {
  for (const auto& d : vectors(3, 5)) {
    auto x = chain_module(3, dim_to_chain(d));
    EXPECT_EQ(x.delta_dim(), d);
    EXPECT_TRUE(is_rigid(x)) << d.to_string();
  }
}

TEST(Chain, RejectsNonNested) {
  EXPECT_THROW(chain_module(3, ChainSpec{{{1}, {2, 3}}}), std::invalid_argument);
}

TEST(Glue, AtASink) {
  auto q = sink_a3();
  auto left = connected_subset_module(q, 1, {1, 2});
  auto right = connected_subset_module(q, 3, {2, 3});
  ASSERT_EQ(left.module.delta_dim(), (DimensionVector{1, 1, 0}));
  ASSERT_EQ(right.module.delta_dim(), (DimensionVector{0, 1, 1}));
  auto x = glue(left.module, right.module, 2);
  EXPECT_EQ(x.delta_dim(), (DimensionVector{1, 1, 1}));
  EXPECT_TRUE(is_rigid(x));
  EXPECT_EQ(end_dim_D(x), 3u);
}

TEST(Glue, AtASource) {
  auto q = source_a3();
  auto left = connected_subset_module(q, 1, {1, 2});
  auto right = connected_subset_module(q, 3, {2, 3});
  auto x = glue(left.module, right.module, 2);
  EXPECT_EQ(x.delta_dim(), (DimensionVector{1, 1, 1}));
  EXPECT_TRUE(is_rigid(x));
}

TEST(Glue, RejectsNonAdmissibleVertex) {
  auto x = x_of_subset(3, {1, 2});
  EXPECT_THROW(glue(x, x_of_subset(3, {2, 3}), 2), ConstructionError);
}

TEST(Glue, NeedsDimensionOne) {
  auto q = sink_a3();
  auto left = connected_subset_module(q, 1, {1});
  auto right = connected_subset_module(q, 3, {2, 3});
  EXPECT_THROW(glue(left.module, right.module, 2), ConstructionError);
}

TEST(TypeA, LinearAgreesWithChainModule) {
  auto q = linear_a(4);
  for (const auto& d : vectors(4, 4)) {
    auto x = typeA_rigid(q, d);
    auto c = chain_module(4, dim_to_chain(d));
    EXPECT_EQ(end_dim_D(x.module), end_dim_D(c)) << d.to_string();
    EXPECT_EQ(x.summands.size(), dim_to_chain(d).subsets.size());
  }
}

TEST(TypeA, SinkOrientationAllOnes) {
  auto x = typeA_rigid(sink_a3(), DimensionVector{1, 1, 1});
  EXPECT_EQ(end_dim_D(x.module), 3u);
  EXPECT_TRUE(is_rigid(x.module));
}

TEST(TypeA, EveryOrientationOfA4) {
  for (unsigned m = 0; m < 8; ++m) {
    std::vector<bool> fw;
    for (int k = 0; k < 3; ++k) fw.push_back(m >> k & 1);
    auto q = type_a(4, fw);
    for (const auto& d : vectors(4, 4)) {
      auto x = typeA_rigid(q, d);
      EXPECT_EQ(x.module.delta_dim(), d);
      EXPECT_EQ(end_dim_D(x.module), static_cast<std::size_t>(d.sum_of_squares())) << d.to_string();
    }
  }
}

TEST(TypeA, RejectsBranchedQuiver) {
  EXPECT_THROW(typeA_rigid(d4(true, true, true), DimensionVector{1, 1, 1, 1}), std::invalid_argument);
}

TEST(Order, EqualHistoriesAreIsomorphic) {
  std::vector<Support> m{{1, 2}, {2, 3}};
  EXPECT_EQ(order_compare(m, m), Order::isomorphic);
  EXPECT_EQ(order_compare(m, m, OrderParity::even_reverse), Order::isomorphic);
}

TEST(Order, SubsetsUnderEvenReverse) {
  Support I{1, 2, 3}, J{2};
  EXPECT_EQ(order_compare({I}, {J}, OrderParity::even_reverse), Order::less_equal);
  EXPECT_EQ(order_compare({J}, {I}, OrderParity::even_reverse), Order::greater);
  EXPECT_EQ(order_compare({J}, {I}, OrderParity::even_forward), Order::less_equal);
}

TEST(Order, ParityAlternates) {
  // differ only one step back from the last piece
  std::vector<Support> m{{1}, {1, 2}}, n{{1, 3}, {1, 2}};
  EXPECT_EQ(order_compare(m, n), Order::greater);
  EXPECT_EQ(order_compare(m, n, OrderParity::even_reverse), Order::less_equal);
}

TEST(Order, Antisymmetric) {
  std::vector<std::vector<Support>> hs{{{1}}, {{1, 2}}, {{2}, {2, 3}}, {{1, 2}, {2, 3}}, {{1, 2}, {2}}, {{2}, {2}}};
  for (auto parity : {OrderParity::even_forward, OrderParity::even_reverse}) {
    for (const auto& a : hs) {
      for (const auto& b : hs) {
        if (a == b) continue;
        auto ab = order_compare(a, b, parity), ba = order_compare(b, a, parity);
        EXPECT_FALSE(ab == Order::less_equal && ba == Order::less_equal);
      }
    }
  }
}

TEST(ConnectedChain, DescendingChainIsRigid) {
  auto q = sink_a3();
  auto x = connected_chain_module(q, 2, {{1, 2, 3}, {1, 2}});
  EXPECT_EQ(x.summands.size(), 2u);
  EXPECT_EQ(x.module.delta_dim(), (DimensionVector{2, 2, 1}));
  EXPECT_TRUE(is_rigid(x.module));
  EXPECT_THROW(connected_chain_module(q, 2, {{2}, {1, 2}}), std::invalid_argument);
}

TEST(ConnectedChain, NestedButNotRigid) {
  // X_{2} meets X_{1,2,3} at the sink with a nonsplit extension; the rigid
  // module of this dimension is X_{1,2} + X_{2,3}
  auto q = sink_a3();
  EXPECT_THROW(connected_chain_module(q, 2, {{1, 2, 3}, {2}}), ConstructionError);
  auto r = typeA_rigid(q, DimensionVector{1, 2, 1});
  EXPECT_EQ(r.summands.size(), 2u);
}

TEST(ConnectedChain, DisconnectedSubset) {
  EXPECT_THROW(connected_subset_module(source_a3(), 1, {1, 3}), ConstructionError);
}

TEST(Extension, TagTable) {
  EXPECT_EQ(extension_tag(true, true, false), 'A');
  EXPECT_EQ(extension_tag(true, false, false), 'B');
  EXPECT_EQ(extension_tag(false, false, false), 'C');
  EXPECT_EQ(extension_tag(true, true, true), 'G');
  EXPECT_EQ(extension_tag(false, true, false), 'H');
  EXPECT_EQ(extension_tag(false, true, true), 'F');
}

TEST(Extension, PlanOnD4) {
  auto plan = plan_extension(d4(true, false, false));
  ASSERT_TRUE(plan);
  EXPECT_EQ(plan->kase.u, 2);
  EXPECT_FALSE(plan->dual);
  EXPECT_EQ(plan->arm, (std::vector<int>{3}));
  EXPECT_EQ(plan->construction, 'A');
  EXPECT_FALSE(plan_extension(linear_a(4)));
  EXPECT_FALSE(plan_extension(affine_d4()));
}

TEST(Extension, CaseAIsRigid) {
  auto q = d4(true, false, false);
  auto plan = plan_extension(q);
  ASSERT_TRUE(plan);
  auto gamma = induced_subquiver(q, {1, 2, 4});
  DimensionVector d{1, 2, 0, 1};
  auto y = typeA_rigid(gamma.quiver, restrict_dim(gamma, d));
  auto x = extend_case(y.module, gamma, detail::share(q), plan->kase.u, plan->arm);
  EXPECT_EQ(x.delta_dim(), d);
  EXPECT_TRUE(is_rigid(x));
  EXPECT_EQ(end_dim_D(x), end_dim_D(y.module));
}

TEST(Extension, CaseBSingleSummandHasZeroStar) {
  auto q = d4(false, false, false);
  auto plan = plan_extension(q);
  ASSERT_TRUE(plan);
  EXPECT_EQ(plan->construction, 'B');
  int leaf = plan->arm[0];
  std::vector<int> rest;
  for (int v = 1; v <= 4; ++v) {
    if (v != leaf) rest.push_back(v);
  }
  auto gamma = induced_subquiver(q, rest);
  DimensionVector d(4);
  d[1] = 1;  // P_2 alone
  auto y = typeA_rigid(gamma.quiver, restrict_dim(gamma, d));
  auto D = detail::share(q);
  auto x = extend_case(y.module, gamma, D, 2, plan->arm);
  auto gamma_arrow = detail::arrow_between(q, 2, leaf);
  EXPECT_TRUE(x.rep().map(D->star(gamma_arrow)).is_zero());
  EXPECT_TRUE(is_rigid(x));
}

TEST(Extension, ArmEndingInASourceIsZeroThere) {
  // 1 -> 2 -> 3 <- 4 and 2 -> 5: the arm 3, 4 leaves 2 and 4 is a source
  auto q = Quiver::acyclic(5, {{"a", 1, 2}, {"b", 2, 3}, {"c", 4, 3}, {"e", 2, 5}});
  auto plan = plan_extension(q, 2);
  ASSERT_TRUE(plan);
  ASSERT_FALSE(plan->dual);
  ASSERT_EQ(plan->arm, (std::vector<int>{3, 4}));
  EXPECT_EQ(plan->construction, 'C');
  auto gamma = induced_subquiver(q, {1, 2, 5});
  auto y = typeA_rigid(gamma.quiver, DimensionVector{1, 1, 1});
  auto x = extend_case(y.module, gamma, detail::share(q), 2, plan->arm);
  EXPECT_EQ(x.rep().dim_at(4), 0u);
  EXPECT_GT(x.rep().dim_at(3), 0u);
  EXPECT_TRUE(is_rigid(x));
}

TEST(Dualize, TwiceKeepsInvariants) {
  auto q = sink_a3();
  for (const auto& d : vectors(3, 4)) {
    auto x = typeA_rigid(q, d).module;
    auto y = dualize(x);
    EXPECT_EQ(y.algebra().base(), opposite(q));
    EXPECT_EQ(y.delta_dim(), d);
    EXPECT_TRUE(is_rigid(y)) << d.to_string();
    auto z = dualize(y);
    EXPECT_EQ(z.algebra().base(), q);
    EXPECT_EQ(end_dim_D(z), end_dim_D(x));
  }
}

TEST(Dualize, NonRigidStaysNonRigid) {
  auto D = detail::share(linear_a(2));
  auto x = check_good(Representation(D->doubled(), Field::rationals(), DimensionVector{1, 2},
                                     {projective_rep(D->base(), DimensionVector{1, 1}).map(0),
                                      Matrix(Field::rationals(), 1, 2)}),
                      D);
  ASSERT_TRUE(x);
  auto y = dualize(*x.module);
  EXPECT_EQ(end_dim_D(y), end_dim_D(*x.module));
  EXPECT_FALSE(is_rigid(y));
}

TEST(Dualize, OppositeOrientationTag) {
  // all arms in is F; its opposite, all arms out, is B
  auto q = d4(true, true, true);
  auto p = plan_extension(q), r = plan_extension(opposite(q));
  ASSERT_TRUE(p && r);
  EXPECT_TRUE(p->dual);
  EXPECT_FALSE(r->dual);
  EXPECT_EQ(p->kase.tag, 'F');
  EXPECT_EQ(r->kase.tag, 'B');
}

TEST(Completion, NothingMissing) {
  auto x = x_of_subset(2, {1, 2});
  auto c = generic_completion(x, DimensionVector{0, 0}, 1, 1);
  ASSERT_TRUE(c);
  EXPECT_EQ(c->module.rep(), x.rep());
  EXPECT_EQ(c->parameters, 0u);
}

TEST(Completion, CaseAOnD4) {
  auto q = d4(true, false, false);
  auto plan = plan_extension(q);
  ASSERT_TRUE(plan);
  auto gamma = induced_subquiver(q, {1, 2, 4});
  auto D = detail::share(q);
  for (const auto& d : vectors(4, 6)) {
    auto y = typeA_rigid(gamma.quiver, restrict_dim(gamma, d));
    auto x = extend_case(y.module, gamma, D, 2, plan->arm);
    DimensionVector missing(4);
    missing[2] = d.at(3);
    auto c = generic_completion(x, missing, 0, 3);
    ASSERT_TRUE(c) << d.to_string();
    EXPECT_EQ(c->module.delta_dim(), d);
    EXPECT_TRUE(is_rigid(c->module));
  }
}

TEST(Completion, NullRootOfAffineD4) {
  auto D = detail::share(affine_d4());
  EXPECT_FALSE(generic_completion(zero_module(D), DimensionVector{2, 1, 1, 1, 1}, 0, 3));
}

TEST(Construct, ZeroAndRoutes) {
  auto z = construct_rigid(linear_a(3), DimensionVector{0, 0, 0});
  EXPECT_EQ(z.route, "zero");
  auto a = construct_rigid(sink_a3(), DimensionVector{1, 2, 1});
  EXPECT_EQ(a.route, "type A");
  auto e = construct_rigid(d4(false, true, false), DimensionVector{1, 2, 1, 1});
  ASSERT_TRUE(e.module);
  EXPECT_EQ(e.route, "extension");
  EXPECT_TRUE(is_rigid(*e.module));
  EXPECT_EQ(e.module->delta_dim(), (DimensionVector{1, 2, 1, 1}));
}
