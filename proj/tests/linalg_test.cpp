#include <gtest/gtest.h>

#include <random>

#include "dorbit/linalg.hpp"

using namespace dorbit;

namespace {

const Field Q = Field::rationals();

Matrix random_matrix(const Field& f, std::size_t r, std::size_t c, std::mt19937_64& rng, int spread = 3) {
  Matrix m(f, r, c);
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < c; ++j) m.set_int(i, j, static_cast<long>(rng() % (2 * spread + 1)) - spread);
  }
  return m;
}

}  // namespace

TEST(Rank, Examples) {
  EXPECT_EQ(rank(Matrix(Q, 0, 0)), 0u);
  EXPECT_EQ(rank(Matrix::identity(Q, 3)), 3u);
  EXPECT_EQ(rank(Matrix::from_ints(Q, {{1, 2}, {2, 4}})), 1u);
}

TEST(Rank, FieldDependent) {
  // det = 2: invertible over Q, singular over F_2
  auto a = Matrix::from_ints(Q, {{1, 1}, {1, -1}});
  auto b = Matrix::from_ints(Field::prime(2), {{1, 1}, {1, -1}});
  EXPECT_EQ(rank(a), 2u);
  EXPECT_EQ(rank(b), 1u);
}

TEST(Kernel, Examples) {
  EXPECT_TRUE(kernel_basis(Matrix::identity(Q, 2)).empty());
  EXPECT_EQ(kernel_basis(Matrix(Q, 2, 3)).size(), 3u);
  auto k = kernel_basis(Matrix::from_ints(Q, {{1, 1}}));
  ASSERT_EQ(k.size(), 1u);
  EXPECT_EQ(k[0][0], Scalar(Q, 1));
  EXPECT_EQ(k[0][1], Scalar(Q, -1));
}

TEST(Solve, Examples) {
  Vector b{Scalar(Q, 3), Scalar(Q, -2)};
  auto x = solve(Matrix::identity(Q, 2), b);
  ASSERT_TRUE(x);
  EXPECT_EQ(*x, b);
  EXPECT_FALSE(solve(Matrix(Q, 2, 2), b));
  Vector one{Scalar(Q, 1)};
  auto half = solve(Matrix::from_ints(Q, {{2}}), one);
  ASSERT_TRUE(half);
  EXPECT_EQ((*half)[0], Scalar(Q, mpq_class(1, 2)));
  EXPECT_THROW(solve(Matrix::identity(Q, 3), b), DimensionMismatch);
}

TEST(Field, MixingIsAnError) {
  EXPECT_THROW(Scalar(Q, 1) + Scalar(Field::prime(3), 1), FieldMismatch);
  EXPECT_THROW(Matrix::identity(Q, 2) * Matrix::identity(Field::prime(5), 2), FieldMismatch);
  EXPECT_THROW(Field::prime(4), std::invalid_argument);
}

TEST(Scalar, NormalFormsAndText) {
  Scalar a(Q, mpq_class(mpz_class(4), mpz_class(-6)));
  EXPECT_EQ(a.rational().get_den(), 3);
  EXPECT_EQ(a.to_string(), "-2/3");
  EXPECT_EQ(Scalar(Q, 5).to_string(), "5");
  Field f7 = Field::prime(7);
  EXPECT_EQ(Scalar(f7, -1).to_string(), "6 mod 7");
  EXPECT_EQ(Scalar::parse("6 mod 7", f7), Scalar(f7, -1));
  EXPECT_EQ(Scalar::parse("-2/3", Q), a);
  EXPECT_EQ(Scalar(f7, 3) / Scalar(f7, 3), Scalar(f7, 1));
}

class LinalgProperties : public ::testing::TestWithParam<std::uint64_t> {};

TEST_P(LinalgProperties, RankTransposeAndKernel) {
  Field f = GetParam() == 0 ? Q : Field::prime(GetParam());
  std::mt19937_64 rng(17 + GetParam());
  for (int trial = 0; trial < 60; ++trial) {
    std::size_t r = rng() % 6, c = rng() % 6;
    Matrix m = random_matrix(f, r, c, rng, trial % 3 == 0 ? 1 : 3);
    if (trial % 4 == 0 && r > 1) {
      // force a dependent row
      for (std::size_t j = 0; j < c; ++j) m.set(r - 1, j, m.at(0, j) + m.at(1 % r, j));
    }
    std::size_t rk = rank(m);
    EXPECT_EQ(rk, rank(m.transpose()));
    auto k = kernel_basis(m);
    EXPECT_EQ(rk + k.size(), c);
    for (const auto& v : k) {
      for (const auto& s : m * std::span<const Scalar>(v)) EXPECT_TRUE(s.is_zero());
    }
    // rerun gives identical output
    EXPECT_EQ(k, kernel_basis(m));
  }
}

TEST_P(LinalgProperties, InverseAndSolve) {
  Field f = GetParam() == 0 ? Q : Field::prime(GetParam());
  std::mt19937_64 rng(99 + GetParam());
  for (int trial = 0; trial < 40; ++trial) {
    std::size_t n = 1 + rng() % 5;
    Matrix m = random_matrix(f, n, n, rng);
    auto inv = inverse(m);
    EXPECT_EQ(inv.has_value(), is_invertible(m));
    if (inv) {
      EXPECT_EQ(m * *inv, Matrix::identity(f, n));
    }
    Matrix x = random_matrix(f, n, 1, rng);
    Vector b = (m * x).column_vector(0);
    auto sol = solve(m, b);
    ASSERT_TRUE(sol);
    EXPECT_EQ(m * std::span<const Scalar>(*sol), b);
  }
}

INSTANTIATE_TEST_SUITE_P(Fields, LinalgProperties, ::testing::Values(0u, 2u, 3u, 101u));

TEST(Complement, SpansTogether) {
  auto sub = Matrix::from_ints(Q, {{1, 0}, {1, 1}, {0, 1}});
  auto comp = echelon_complement(sub);
  ASSERT_EQ(comp.size(), 1u);
  Matrix e(Q, 3, 1);
  e.set_int(comp[0], 0, 1);
  EXPECT_EQ(rank(hstack(sub, e)), 3u);
}
