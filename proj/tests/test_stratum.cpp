#include <gtest/gtest.h>

#include <memory>
#include <random>

#include "nilclosure/fixture.hpp"
#include "nilclosure/stratum.hpp"

using namespace nilclosure;

namespace {

using Vec = LieAlgebra::Vec;

ThetaGroup adjoint(char t, int n) {
  auto L = std::make_shared<const LieAlgebra>(build_lie_algebra(build_root_system(t, n)));
  std::vector<int> s(static_cast<std::size_t>(n) + 1, 0);
  s[0] = 1;
  return make_theta_group(grading_from_kac(L, {s}));
}

Subspace full(std::size_t s) {
  Subspace U(s);
  for (std::size_t i = 0; i < s; ++i) U.set(i);
  return U;
}

/// dim z(h')_v from brackets in g, independent of the action matrix.
std::size_t centralizer_in_z(const ThetaGroup& G, const ActionMatrix& A, const Vec& v) {
  const LieAlgebra& L = G.algebra();
  std::vector<std::vector<Scalar>> rows;
  auto basis = [&](std::size_t i) {
    Vec x(L.dim(), Scalar(0));
    x[i] = 1;
    return x;
  };
  for (int i = 0; i < L.rank(); ++i) rows.push_back(L.bracket(basis(L.cartan_index(i)), v));
  for (std::size_t g : A.root_rows) rows.push_back(L.bracket(basis(g), v));
  const std::size_t n = rows.size();
  return n - rank_exact(make_matrix(rows));
}

Fixture load(const char* f) { return load_fixture(std::string(NILCLOSURE_DATA_DIR) + "/" + f); }

}  // namespace

TEST(Stratum, Sl2ActionMatrix) {
  ThetaGroup G = adjoint('A', 1);
  ActionMatrix A = action_matrix(G, {2});
  EXPECT_EQ(A.n(), 1u);
  EXPECT_EQ(A.s(), 1u);
  EXPECT_EQ(A.B(0, 0).coefficient(0), -2);
  EXPECT_TRUE(split_identity_check(A, {Scalar(1)}));
  EXPECT_EQ(rank_exact(evaluate(A.B, {Scalar(1)})), 1u);
}

TEST(Stratum, Sl3RegularRootLine) {
  ThetaGroup G = adjoint('A', 2);
  ActionMatrix A = action_matrix(G, {2, 2});
  ASSERT_EQ(A.s(), 2u);
  Subspace line(2);
  line.set(0);
  auto ev = dense_intersection_nonempty(G, A, line, 1);
  EXPECT_FALSE(ev.nonempty);
  EXPECT_TRUE(ev.exact);
  EXPECT_TRUE(dense_intersection_nonempty(G, A, full(2), 1).nonempty);
  EXPECT_FALSE(dense_intersection_nonempty(G, A, Subspace(2), 1).nonempty);
  EXPECT_TRUE(normalizer_tangent_check(G, A, line, {Scalar(3), Scalar(0)}));
  EXPECT_TRUE(normalizer_tangent_check(G, A, Subspace(2), {Scalar(0), Scalar(0)}));
}

TEST(Stratum, AllRoutesAgree) {
  // Subregular-type subspaces in sl4 at the regular characteristic.
  ThetaGroup G = adjoint('A', 3);
  ActionMatrix A = action_matrix(G, {2, 2, 2});
  ASSERT_EQ(A.s(), 3u);
  for (unsigned mask = 1; mask < 8; ++mask) {
    Subspace U(3);
    for (std::size_t i = 0; i < 3; ++i)
      if ((mask >> i) & 1u) U.set(i);
    std::vector<bool> verdicts;
    for (auto route : {StratumRoute::heuristic, StratumRoute::split, StratumRoute::full}) {
      StratumOptions o;
      o.route = route;
      o.strategy = RankStrategy::exact;
      auto ev = dense_intersection_nonempty(G, A, U, mask, o);
      EXPECT_TRUE(ev.exact);
      verdicts.push_back(ev.nonempty);
    }
    EXPECT_EQ(verdicts[0], verdicts[1]);
    EXPECT_EQ(verdicts[0], verdicts[2]);
    EXPECT_EQ(verdicts[0], mask == 7u) << mask;
  }
}

TEST(Stratum, TorusCertificate) {
  ThetaGroup G = adjoint('A', 2);
  ActionMatrix A = action_matrix(G, {2, 2});
  Subspace line(2);
  line.set(1);
  EXPECT_TRUE(torus_contracts(A, line));
  EXPECT_FALSE(torus_contracts(A, full(2)));
}

TEST(Stratum, FixtureTriplesSatisfyRankIdentities) {
  Fixture fx = load("e7_order3.json");
  ThetaGroup G = fixture_group(fx);
  std::mt19937_64 rng(5);
  for (std::size_t i : {0u, 10u, 30u, 60u, 74u}) {
    auto t = triple_from_characteristic(G, fixture_characteristic(G, fx.orbits[i]), 9);
    ASSERT_TRUE(t.has_value());
    ActionMatrix A = action_matrix(G, t->h);
    auto e = column_coordinates(A, t->e);
    EXPECT_TRUE(split_identity_check(A, e)) << fx.orbits[i].id;
    // Density: rank B_e = s.
    EXPECT_EQ(rank_exact(evaluate(A.B, e)), A.s());
    // dim z(h')_v = n - rank B_v on random points.
    std::uniform_int_distribution<int> d(-3, 3);
    for (int k = 0; k < 5; ++k) {
      std::vector<Scalar> v(A.s());
      for (auto& x : v) x = d(rng);
      EXPECT_EQ(centralizer_in_z(G, A, from_columns(G, A, v)), A.n() - rank_exact(evaluate(A.B, v)));
    }
    EXPECT_TRUE(normalizer_tangent_check(G, A, full(A.s()), e));
  }
}

TEST(Stratum, NonCharacteristicIsConical) {
  // (2,0) is not a characteristic in sl3: generic points of V_2 are minimal, with characteristic (1,1).
  ThetaGroup G = adjoint('A', 2);
  ActionMatrix A = action_matrix(G, {2, 0});
  ASSERT_EQ(A.s(), 2u);
  EXPECT_FALSE(split_identity_check(A, {Scalar(1), Scalar(1)}));
  EXPECT_FALSE(split_identity_check(A, {Scalar(3), Scalar(-2)}));
  // (1,0,1) is the characteristic of [2,1,1] in sl4.
  ThetaGroup G4 = adjoint('A', 3);
  ActionMatrix A4 = action_matrix(G4, {1, 0, 1});
  std::vector<Scalar> e(A4.s(), Scalar(1));
  EXPECT_TRUE(split_identity_check(A4, e));
}
