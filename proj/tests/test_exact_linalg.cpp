#include <gtest/gtest.h>

#include <random>

#include "nilclosure/exact_linalg.hpp"

using namespace nilclosure;

namespace {

LinForm var(std::size_t dim, std::size_t k, long c = 1) { return LinForm::coordinate(dim, k, Scalar(c)); }

}  // namespace

TEST(SolveLinear, Identity) {
  auto x = solve_linear(make_matrix({{1, 0}, {0, 1}}), {3, 5});
  ASSERT_TRUE(x);
  EXPECT_EQ((*x)[0], 3);
  EXPECT_EQ((*x)[1], 5);
}

TEST(SolveLinear, InconsistentRows) {
  EXPECT_FALSE(solve_linear(make_matrix({{1, 1}, {2, 2}}), {1, 3}));
}

TEST(SolveLinear, OneByOne) {
  auto x = solve_linear(make_matrix({{2}}), {2});
  ASSERT_TRUE(x);
  EXPECT_EQ((*x)[0], 1);
}

TEST(SolveLinear, DimensionMismatchThrows) {
  EXPECT_THROW(solve_linear(make_matrix({{1, 2}}), {1, 2}), std::invalid_argument);
}

TEST(SolveLinear, RandomSystemsAgreeWithRank) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> d(-3, 3);
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t m = 1 + rng() % 5, n = 1 + rng() % 5;
    RationalMatrix A(m, n);
    std::vector<Scalar> b(m);
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        A(i, j) = Scalar(d(rng), 1 + rng() % 3);
        A(i, j).canonicalize();
      }
      b[i] = d(rng);
    }
    RationalMatrix Ab(m, n + 1);
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < n; ++j) Ab(i, j) = A(i, j);
      Ab(i, n) = b[i];
    }
    auto x = solve_linear(A, b);
    if (x) {
      for (std::size_t i = 0; i < m; ++i) {
        Scalar s = 0;
        for (std::size_t j = 0; j < n; ++j) s += A(i, j) * (*x)[j];
        EXPECT_EQ(s, b[i]);
      }
    } else {
      EXPECT_GT(rank_exact(Ab), rank_exact(A));
    }
  }
}

TEST(RankExact, ZeroMatrix) {
  EXPECT_EQ(rank_exact(RationalMatrix(3, 4, Scalar(0))), 0u);
  EXPECT_EQ(rank_exact(FormMatrix(3, 4, LinForm(2))), 0u);
}

TEST(RankExact, SingleVariable) {
  FormMatrix M(1, 1);
  M(0, 0) = var(1, 0);
  EXPECT_EQ(rank_exact(M), 1u);
}

TEST(RankExact, ProportionalRows) {
  FormMatrix M(2, 2);
  M(0, 0) = var(2, 0);
  M(0, 1) = var(2, 1);
  M(1, 0) = var(2, 0, 2);
  M(1, 1) = var(2, 1, 2);
  EXPECT_EQ(rank_exact(M), 1u);
}

TEST(RankExact, SymbolicCancellationBeyondTermRank) {
  // [[u0, u1], [u1, u0]] has rank 2, while [[u0, u1], [u0, u1]] has rank 1 even though its term rank is 2.
  FormMatrix A(2, 2), B(2, 2);
  A(0, 0) = var(2, 0);
  A(0, 1) = var(2, 1);
  A(1, 0) = var(2, 1);
  A(1, 1) = var(2, 0);
  B(0, 0) = var(2, 0);
  B(0, 1) = var(2, 1);
  B(1, 0) = var(2, 0);
  B(1, 1) = var(2, 1);
  EXPECT_EQ(rank_exact(A), 2u);
  EXPECT_EQ(rank_exact(B), 1u);
  EXPECT_EQ(term_rank(B), 2u);
}

TEST(RankExact, SkewSymmetricOddDimensionIsSingular) {
  // Generic 3x3 skew-symmetric matrix has rank 2.
  FormMatrix M(3, 3, LinForm(3));
  M(0, 1) = var(3, 0);
  M(1, 0) = var(3, 0, -1);
  M(0, 2) = var(3, 1);
  M(2, 0) = var(3, 1, -1);
  M(1, 2) = var(3, 2);
  M(2, 1) = var(3, 2, -1);
  EXPECT_EQ(rank_exact(M), 2u);
  EXPECT_EQ(rank_randomized(M, 1, 3), 2u);
}

TEST(RankRandomized, ZeroMatrixAnySeed) {
  for (std::uint64_t s = 0; s < 5; ++s) EXPECT_EQ(rank_randomized(FormMatrix(2, 3, LinForm(2)), s, 2), 0u);
}

TEST(RankRandomized, SingleVariable) {
  FormMatrix M(1, 1);
  M(0, 0) = var(1, 0);
  EXPECT_EQ(rank_randomized(M, 99, 3), 1u);
}

TEST(RankRandomized, NeverExceedsExactOnSampledMatrices) {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<int> coef(-2, 2);
  int agree = 0;
  const int total = 100;
  for (int t = 0; t < total; ++t) {
    std::size_t m = 1 + rng() % 4, n = 1 + rng() % 4, vars = 1 + rng() % 3;
    FormMatrix M(m, n, LinForm(vars));
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < vars; ++k)
          if (rng() % 3 == 0) M(i, j).add_term(k, coef(rng));
    // low-rank structure half of the time: copy a scaled row
    if (m > 1 && rng() % 2) {
      for (std::size_t j = 0; j < n; ++j) {
        LinForm f = M(0, j);
        f *= Scalar(3);
        M(m - 1, j) = f;
      }
    }
    std::size_t ex = rank_exact(M);
    std::size_t rr = rank_randomized(M, 1000 + t, 2);
    EXPECT_LE(rr, ex);
    EXPECT_LE(ex, term_rank(M));
    if (rr == ex) ++agree;
  }
  EXPECT_GE(agree, 99);
}

TEST(ScalarArithmetic, FieldAxiomsOnSamples) {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> d(-50, 50);
  for (int t = 0; t < 500; ++t) {
    Scalar a(d(rng), 1 + rng() % 17), b(d(rng), 1 + rng() % 17), c(d(rng), 1 + rng() % 17);
    a.canonicalize();
    b.canonicalize();
    c.canonicalize();
    EXPECT_EQ(Scalar((a + b) + c), Scalar(a + (b + c)));
    EXPECT_EQ(Scalar(a * b), Scalar(b * a));
    EXPECT_EQ(Scalar(a * (b + c)), Scalar(a * b + a * c));
    Scalar s = a + b;
    EXPECT_GT(s.get_den(), 0);
    EXPECT_EQ(gcd(s.get_num(), s.get_den()), 1);
  }
}

TEST(Poly, ExactDivisionRoundTrip) {
  Poly x = Poly::variable(0), y = Poly::variable(1), z = Poly::variable(2);
  Poly a = x * y + z * Poly::constant(3) - x;
  Poly b = y * y + x * z + Poly::constant(2);
  Poly p = a * b;
  EXPECT_EQ(p.exact_div(b), a);
  EXPECT_EQ(p.exact_div(a), b);
  EXPECT_THROW((a + Poly::constant(1)).exact_div(b), std::domain_error);
}

TEST(ModP, PivotsGiveNonsingularMinor) {
  ModMatrix M(3, 3, 0);
  M(0, 0) = 0;
  M(0, 1) = 1;
  M(1, 0) = 2;
  M(1, 1) = 2;
  M(2, 0) = 4;
  M(2, 1) = 4;
  auto [r, c] = modp::pivots(M);
  ASSERT_EQ(r.size(), 2u);
  EXPECT_EQ(c[0], 0u);
  EXPECT_EQ(c[1], 1u);
  EXPECT_EQ(modp::rank(M), 2u);
}
