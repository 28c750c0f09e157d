#include <gtest/gtest.h>

#include <random>

#include "nilclosure/lie_core.hpp"

using namespace nilclosure;

namespace {

using Vec = LieAlgebra::Vec;

Vec basis(const LieAlgebra& L, std::size_t i) {
  Vec v(L.dim(), Scalar(0));
  v[i] = 1;
  return v;
}

Vec add(Vec a, const Vec& b) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
  return a;
}

bool is_zero(const Vec& v) {
  for (const auto& x : v)
    if (x != 0) return false;
  return true;
}

Vec bb(const LieAlgebra& L, std::size_t a, std::size_t b) { return L.bracket(basis(L, a), basis(L, b)); }

void check_jacobi(const LieAlgebra& L, std::size_t a, std::size_t b, std::size_t c) {
  Vec t1 = L.bracket(basis(L, a), bb(L, b, c));
  Vec t2 = L.bracket(basis(L, b), bb(L, c, a));
  Vec t3 = L.bracket(basis(L, c), bb(L, a, b));
  ASSERT_TRUE(is_zero(add(add(t1, t2), t3))) << L.root_system().name() << " at " << a << "," << b << "," << c;
}

// Independent root count oracle by type.
std::size_t expected_roots(char t, int n) {
  switch (t) {
    case 'A': return static_cast<std::size_t>(n * (n + 1));
    case 'B':
    case 'C': return static_cast<std::size_t>(2 * n * n);
    case 'D': return static_cast<std::size_t>(2 * n * (n - 1));
    case 'E': return n == 6 ? 72 : n == 7 ? 126 : 240;
    case 'F': return 48;
    case 'G': return 12;
  }
  return 0;
}

const std::vector<std::pair<char, int>> kSmallTypes = {{'A', 1}, {'A', 2}, {'A', 3}, {'A', 4}, {'B', 2}, {'B', 3},
                                                       {'C', 3}, {'C', 4}, {'D', 4}, {'G', 2}, {'F', 4}};

}  // namespace

TEST(RootSystem, A1) {
  auto rs = build_root_system('A', 1);
  EXPECT_EQ(rs.roots.size(), 2u);
  EXPECT_EQ(rs.marks, (std::vector<int>{1, 1}));
}

TEST(RootSystem, E8Count) { EXPECT_EQ(build_root_system('E', 8).roots.size(), 240u); }

TEST(RootSystem, G2MarksShortFirst) {
  auto rs = build_root_system('G', 2);
  EXPECT_EQ(rs.roots.size(), 12u);
  EXPECT_EQ(rs.marks, (std::vector<int>{1, 3, 2}));
  EXPECT_EQ(rs.lowest, (Root{-3, -2}));
  EXPECT_EQ(rs.form[0][0], 2);  // alpha_1 short
}

TEST(RootSystem, CountsAndMarksForAllTypes) {
  std::vector<std::pair<char, int>> types = {{'A', 5}, {'B', 4}, {'C', 5}, {'D', 5}, {'D', 6}, {'E', 6},
                                             {'E', 7}, {'E', 8}, {'F', 4}, {'G', 2}};
  for (auto [t, n] : types) {
    auto rs = build_root_system(t, n);
    EXPECT_EQ(rs.roots.size(), expected_roots(t, n)) << t << n;
    EXPECT_EQ(rs.cartan[0][0], 2);
    // alpha_0 + sum n_i alpha_i = 0
    for (int i = 0; i < n; ++i) EXPECT_EQ(rs.lowest[i] + rs.marks[i + 1], 0);
  }
  auto e8 = build_root_system('E', 8);
  EXPECT_EQ(e8.marks, (std::vector<int>{1, 2, 3, 4, 6, 5, 4, 3, 2}));
  auto e7 = build_root_system('E', 7);
  EXPECT_EQ(e7.marks, (std::vector<int>{1, 2, 2, 3, 4, 3, 2, 1}));
}

TEST(RootSystem, InvalidTypeThrows) {
  EXPECT_THROW(build_root_system('E', 9), std::invalid_argument);
  EXPECT_THROW(build_root_system('D', 3), std::invalid_argument);
  EXPECT_THROW(build_root_system('X', 2), std::invalid_argument);
}

TEST(LieAlgebra, A1Relations) {
  auto L = build_lie_algebra(build_root_system('A', 1));
  ASSERT_EQ(L.dim(), 3u);
  // basis: x_{-a}, x_a, h
  std::size_t f = 0, e = 1, h = 2;
  auto ef = bb(L, e, f);
  EXPECT_EQ(ef[h], 1);
  auto he = bb(L, h, e);
  EXPECT_EQ(he[e], 2);
  auto hf = bb(L, h, f);
  EXPECT_EQ(hf[f], -2);
}

TEST(LieAlgebra, ExhaustiveJacobiSmallRank) {
  for (auto [t, n] : kSmallTypes) {
    if (n > 4 || t == 'F') continue;
    auto L = build_lie_algebra(build_root_system(t, n));
    for (std::size_t a = 0; a < L.dim(); ++a)
      for (std::size_t b = a + 1; b < L.dim(); ++b)
        for (std::size_t c = b + 1; c < L.dim(); ++c) check_jacobi(L, a, b, c);
  }
}

TEST(LieAlgebra, AntisymmetryAndRootGrading) {
  for (auto [t, n] : kSmallTypes) {
    auto L = build_lie_algebra(build_root_system(t, n));
    const auto& rs = L.root_system();
    for (std::size_t a = 0; a < L.dim(); ++a)
      for (std::size_t b = 0; b < L.dim(); ++b) {
        Vec x = bb(L, a, b), y = bb(L, b, a);
        ASSERT_TRUE(is_zero(add(x, y)));
        if (a < L.num_roots() && b < L.num_roots()) {
          Root s(rs.rank);
          for (int i = 0; i < rs.rank; ++i) s[i] = rs.roots[a][i] + rs.roots[b][i];
          auto idx = rs.find(s);
          for (std::size_t k = 0; k < L.dim(); ++k) {
            if (x[k] == 0) continue;
            if (idx) {
              EXPECT_EQ(k, *idx);
              // |N| = p + 1
              int p = 0;
              Root d = rs.roots[b];
              while (true) {
                for (int i = 0; i < rs.rank; ++i) d[i] -= rs.roots[a][i];
                if (!rs.find(d)) break;
                ++p;
              }
              EXPECT_EQ(abs(x[k]), p + 1);
            } else {
              EXPECT_TRUE(L.is_cartan(k));
              EXPECT_EQ(b, rs.negative(a));
            }
          }
        }
      }
  }
}

TEST(LieAlgebra, SampledJacobiF4E6E8) {
  std::mt19937_64 rng(11);
  for (auto [t, n] : std::vector<std::pair<char, int>>{{'F', 4}, {'E', 6}, {'E', 8}}) {
    auto L = build_lie_algebra(build_root_system(t, n));
    const int samples = (t == 'E' && n == 8) ? 100000 : 20000;
    std::uniform_int_distribution<std::size_t> d(0, L.dim() - 1);
    for (int s = 0; s < samples; ++s) {
      std::size_t a = d(rng), b = d(rng), c = d(rng);
      // sparse Jacobi on basis triples
      std::vector<Scalar> acc(L.dim(), Scalar(0));
      auto accumulate = [&](std::size_t x, std::size_t y, std::size_t z) {
        for (const auto& t1 : L.bracket_basis(y, z))
          for (const auto& t2 : L.bracket_basis(x, t1.index)) acc[t2.index] += t1.coeff * t2.coeff;
      };
      accumulate(a, b, c);
      accumulate(b, c, a);
      accumulate(c, a, b);
      for (const auto& v : acc) ASSERT_EQ(v, 0) << t << n << " " << a << " " << b << " " << c;
    }
    if (t == 'E' && n == 8) EXPECT_EQ(L.dim(), 248u);
  }
}

TEST(LieAlgebra, AlternatingSignsAlsoSatisfyJacobi) {
  for (auto [t, n] : std::vector<std::pair<char, int>>{{'A', 3}, {'B', 3}, {'G', 2}}) {
    auto L = build_lie_algebra(build_root_system(t, n), SignConvention::alternating);
    for (std::size_t a = 0; a < L.dim(); ++a)
      for (std::size_t b = a + 1; b < L.dim(); ++b)
        for (std::size_t c = b + 1; c < L.dim(); ++c) check_jacobi(L, a, b, c);
  }
}

TEST(Killing, Sl2TraceForm) {
  auto L = build_lie_algebra(build_root_system('A', 1));
  Vec h = basis(L, 2);
  // direct 3x3 computation: ad h = diag(-2, 2, 0) on (f, e, h)
  EXPECT_EQ(L.killing(h, h), 8);
}

TEST(Killing, SymmetricInvariantAndPositiveOnRationalCartan) {
  std::mt19937_64 rng(3);
  for (auto [t, n] : kSmallTypes) {
    auto L = build_lie_algebra(build_root_system(t, n));
    std::uniform_int_distribution<int> c(-3, 3);
    std::uniform_int_distribution<std::size_t> d(0, L.dim() - 1);
    for (int s = 0; s < 100; ++s) {
      Vec x(L.dim()), y(L.dim());
      for (std::size_t i = 0; i < L.dim(); ++i) {
        x[i] = rng() % 4 == 0 ? c(rng) : 0;
        y[i] = rng() % 4 == 0 ? c(rng) : 0;
      }
      EXPECT_EQ(L.killing(x, y), L.killing(y, x));
      std::size_t a = d(rng), b = d(rng), e = d(rng);
      // kappa([a,b],e) + kappa(b,[a,e]) = 0
      EXPECT_EQ(L.killing(bb(L, a, b), basis(L, e)) + L.killing(basis(L, b), bb(L, a, e)), 0);
      std::vector<Scalar> vals(n);
      bool nonzero = false;
      for (auto& v : vals) {
        v = c(rng);
        nonzero = nonzero || v != 0;
      }
      if (nonzero) {
        EXPECT_GT(L.killing_values(vals, vals), 0);
        Vec hv = L.cartan_vector(vals);
        EXPECT_EQ(L.killing(hv, hv), L.killing_values(vals, vals));
        // alpha_i(H) recovered from [H, x_{alpha_i}]
        for (int i = 0; i < n; ++i) {
          Root r(n, 0);
          r[i] = 1;
          std::size_t idx = L.root_system().index(r);
          EXPECT_EQ(L.bracket(hv, basis(L, idx))[idx], vals[i]);
        }
      }
    }
  }
}
