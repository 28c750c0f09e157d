#include "nilclosure/stratum.hpp"

#include <bit>
#include <limits>
#include <random>
#include <stdexcept>

namespace nilclosure {

std::size_t Subspace::count() const {
  std::size_t c = 0;
  for (auto w : bits_) c += static_cast<std::size_t>(std::popcount(w));
  return c;
}

bool Subspace::subset_of(const Subspace& o) const {
  for (std::size_t i = 0; i < bits_.size(); ++i)
    if (bits_[i] & ~o.bits_[i]) return false;
  return true;
}

std::vector<std::size_t> Subspace::indices() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < n_; ++i)
    if (test(i)) out.push_back(i);
  return out;
}

long ActionMatrix::column_of(std::size_t root) const {
  return root < column_lookup.size() ? column_lookup[root] : -1;
}

FormMatrix ActionMatrix::tilde() const {
  FormMatrix T(B.rows() - 1, B.cols());
  for (std::size_t i = 1; i < B.rows(); ++i)
    for (std::size_t j = 0; j < B.cols(); ++j) T(i - 1, j) = B(i, j);
  return T;
}

ActionMatrix action_matrix(const ThetaGroup& G, const std::vector<long>& h) {
  const LieAlgebra& L = G.algebra();
  const RootSystem& rs = G.roots();
  ActionMatrix A;
  A.h = h;
  A.columns = eigen_roots(G, h, 2, 1);
  A.column_lookup.assign(rs.roots.size(), -1);
  for (std::size_t j = 0; j < A.columns.size(); ++j) A.column_lookup[A.columns[j]] = static_cast<long>(j);
  const std::size_t s = A.columns.size();
  const std::size_t l = static_cast<std::size_t>(rs.rank);

  // z~ Cartan part: kernel of H -> kappa(H, h'), spanned by c_p e_k - c_k e_p.
  const auto& kq = L.killing_value_matrix();
  std::vector<long> c(l, 0);
  for (std::size_t i = 0; i < l; ++i)
    for (std::size_t k = 0; k < l; ++k) c[i] += kq[i][k] * h[k];
  std::size_t p = l;
  for (std::size_t i = 0; i < l && p == l; ++i)
    if (c[i] != 0) p = i;
  if (p == l) throw std::invalid_argument("action_matrix: h' must be nonzero");
  for (std::size_t k = 0; k < l; ++k) {
    if (k == p) continue;
    std::vector<long> H(l, 0);
    H[k] = c[p];
    H[p] -= c[k];
    A.cartan_rows.push_back(std::move(H));
  }
  for (std::size_t g : G.theta0.phi0)
    if (G.root_value(g, h) == 0) A.root_rows.push_back(g);

  const std::size_t n = 1 + A.cartan_rows.size() + A.root_rows.size();
  A.B = FormMatrix(n, s, LinForm(s));
  for (std::size_t j = 0; j < s; ++j) A.B(0, j).add_term(j, -2);
  for (std::size_t r = 0; r < A.cartan_rows.size(); ++r)
    for (std::size_t j = 0; j < s; ++j) {
      const long v = L.root_value(A.columns[j], A.cartan_rows[r]);
      if (v != 0) A.B(1 + r, j).add_term(j, -v);
    }
  const std::size_t base = 1 + A.cartan_rows.size();
  for (std::size_t r = 0; r < A.root_rows.size(); ++r) {
    const std::size_t g = A.root_rows[r];
    for (std::size_t k = 0; k < s; ++k) {
      Root sum = rs.roots[A.columns[k]];
      for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += rs.roots[g][i];
      auto idx = rs.find(sum);
      if (!idx) continue;
      const long j = A.column_lookup[*idx];
      if (j < 0) throw std::logic_error("action_matrix: z(h') does not preserve V_2(h')");
      A.B(base + r, static_cast<std::size_t>(j)).add_term(k, L.structure_constant(A.columns[k], g));
    }
  }
  return A;
}

std::vector<Scalar> column_coordinates(const ActionMatrix& A, const LieAlgebra::Vec& v) {
  std::vector<Scalar> u(A.s(), Scalar(0));
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] == 0) continue;
    const long j = A.column_of(i);
    if (j < 0) throw std::invalid_argument("vector is not in V_2(h')");
    u[static_cast<std::size_t>(j)] = v[i];
  }
  return u;
}

LieAlgebra::Vec from_columns(const ThetaGroup& G, const ActionMatrix& A, const std::vector<Scalar>& u) {
  LieAlgebra::Vec v(G.algebra().dim(), Scalar(0));
  for (std::size_t j = 0; j < A.s(); ++j) v[A.columns[j]] = u[j];
  return v;
}

namespace {

/// Exact phase-one simplex: is there y with M y >= 1 componentwise? Bland's rule, so it terminates.
bool strictly_feasible(const std::vector<std::vector<long>>& M) {
  const std::size_t m = M.size();
  if (m == 0) return true;
  const std::size_t q = M[0].size();
  // columns: y+ (q), y- (q), surplus (m), artificial (m), rhs
  const std::size_t N = 2 * q + 2 * m;
  std::vector<std::vector<Scalar>> T(m + 1, std::vector<Scalar>(N + 1, Scalar(0)));
  std::vector<std::size_t> basis(m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t k = 0; k < q; ++k) {
      T[i][k] = M[i][k];
      T[i][q + k] = -M[i][k];
    }
    T[i][2 * q + i] = -1;
    T[i][2 * q + m + i] = 1;
    T[i][N] = 1;
    basis[i] = 2 * q + m + i;
  }
  // reduced costs of sum(artificial)
  for (std::size_t j = 0; j < 2 * q + m; ++j)
    for (std::size_t i = 0; i < m; ++i) T[m][j] -= T[i][j];
  for (std::size_t i = 0; i < m; ++i) T[m][N] -= T[i][N];
  while (true) {
    std::size_t enter = N;
    for (std::size_t j = 0; j < N && enter == N; ++j)
      if (T[m][j] < 0) enter = j;
    if (enter == N) break;
    std::size_t leave = m;
    Scalar best;
    for (std::size_t i = 0; i < m; ++i) {
      if (T[i][enter] <= 0) continue;
      Scalar ratio = T[i][N] / T[i][enter];
      if (leave == m || ratio < best || (ratio == best && basis[i] < basis[leave])) {
        leave = i;
        best = ratio;
      }
    }
    if (leave == m) break;  // unbounded cannot happen in phase one
    const Scalar piv = T[leave][enter];
    for (auto& x : T[leave]) x /= piv;
    for (std::size_t i = 0; i <= m; ++i) {
      if (i == leave || T[i][enter] == 0) continue;
      const Scalar f = T[i][enter];
      for (std::size_t j = 0; j <= N; ++j)
        if (T[leave][j] != 0) T[i][j] -= f * T[leave][j];
    }
    basis[leave] = enter;
  }
  return T[m][N] == 0;
}

std::vector<std::uint64_t> random_point(const Subspace& U, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::uint64_t> dist(1, modp::prime - 1);
  std::vector<std::uint64_t> u(U.ambient(), 0);
  for (std::size_t i = 0; i < u.size(); ++i)
    if (U.test(i)) u[i] = dist(rng);
  return u;
}

std::vector<bool> as_mask(const Subspace& U) {
  std::vector<bool> keep(U.ambient());
  for (std::size_t i = 0; i < keep.size(); ++i) keep[i] = U.test(i);
  return keep;
}

}  // namespace

bool torus_contracts(const ActionMatrix& A, const Subspace& U) {
  std::vector<std::vector<long>> M;
  for (std::size_t k : U.indices()) {
    std::vector<long> row;
    // Cartan row r has entry -beta_k(H_r) u_k in column k.
    for (std::size_t r = 0; r < A.cartan_rows.size(); ++r) {
      const auto& terms = A.B(1 + r, k).terms();
      row.push_back(terms.empty() ? 0 : -terms[0].second.get_num().get_si());
    }
    M.push_back(std::move(row));
  }
  if (M.empty()) return false;
  return strictly_feasible(M);
}

DenseEvidence dense_intersection_nonempty(const ThetaGroup& G, const ActionMatrix& A, const Subspace& U,
                                          std::uint64_t seed, const StratumOptions& opts) {
  (void)G;
  DenseEvidence ev;
  ev.s = A.s();
  if (U.empty()) {
    ev.method = "empty-subspace";
    return ev;
  }
  const FormMatrix BU = evaluate_partial(A.B, as_mask(U));
  FormMatrix BtU(BU.rows() - 1, BU.cols());
  for (std::size_t i = 1; i < BU.rows(); ++i)
    for (std::size_t j = 0; j < BU.cols(); ++j) BtU(i - 1, j) = BU(i, j);

  std::mt19937_64 rng(seed);
  std::vector<std::uint64_t> first_u;
  for (int t = 0; t < std::max(1, opts.trials); ++t) {
    auto u = random_point(U, rng);
    const std::size_t rb = modp::rank(modp::evaluate(BU, u));
    const std::size_t rt = modp::rank(modp::evaluate(BtU, u));
    if (first_u.empty() || rt > ev.rank_Btilde) first_u = u;
    ev.rank_B = std::max(ev.rank_B, rb);
    ev.rank_Btilde = std::max(ev.rank_Btilde, rt);
    if (rb == ev.s) {
      // A concrete point of full rank mod p has full rank over Q.
      ev.nonempty = true;
      ev.method = "rank-at-point";
      ev.point = u;
      return ev;
    }
  }
  if (term_rank(BU) < ev.s) {
    ev.method = "term-rank";
    return ev;
  }
  if (torus_contracts(A, U)) {
    ev.method = "torus";
    return ev;
  }
  if (opts.strategy == RankStrategy::randomized) {
    ev.exact = false;
    ev.method = "randomized";
    return ev;
  }
  const std::size_t budget =
      opts.strategy == RankStrategy::exact ? std::numeric_limits<std::size_t>::max() : opts.term_budget;

  bool split = opts.route == StratumRoute::split;
  if (opts.route == StratumRoute::heuristic) {
    const long s = static_cast<long>(ev.s), n = static_cast<long>(A.n()), r = static_cast<long>(ev.rank_Btilde);
    split = !(s - n < s - r);
  }
  if (split) {
    auto u = first_u;
    for (int attempt = 0; attempt <= opts.resamples; ++attempt) {
      if (attempt > 0) u = random_point(U, rng);
      auto [R, C] = modp::pivots(modp::evaluate(BtU, u));
      const std::size_t r = R.size();
      FormMatrix S(r + 1, BU.cols());
      for (std::size_t j = 0; j < BU.cols(); ++j) S(0, j) = BU(0, j);
      for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < BU.cols(); ++j) S(i + 1, j) = BtU(R[i], j);
      auto rk = rank_exact_bounded(S, budget);
      if (!rk) break;
      if (*rk == r) {
        // Row 0 lies in the span of B~_U, hence rank B_U = rank B~_U < s.
        ev.method = "row-span";
        ev.rank_Btilde = std::max(ev.rank_Btilde, r);
        ev.minor_rows.clear();
        for (auto i : R) ev.minor_rows.push_back(i + 1);
        ev.minor_cols = C;
        return ev;
      }
    }
  }
  auto rk = rank_exact_bounded(BU, budget);
  if (!rk) {
    ev.exact = false;
    ev.method = "budget-exceeded";
    return ev;
  }
  ev.rank_B = *rk;
  ev.nonempty = *rk == ev.s;
  ev.method = "exact-rank";
  return ev;
}

bool normalizer_tangent_check(const ThetaGroup& G, const ActionMatrix& A, const Subspace& U,
                              const std::vector<Scalar>& u) {
  const auto idx = U.indices();
  if (idx.empty()) return true;
  const LieAlgebra& L = G.algebra();
  const RootSystem& rs = G.roots();
  std::vector<long> pos(A.s(), -1);
  for (std::size_t i = 0; i < idx.size(); ++i) pos[idx[i]] = static_cast<long>(i);
  for (std::size_t j = 0; j < A.s(); ++j)
    if (!U.test(j) && u[j] != 0) throw std::invalid_argument("normalizer_tangent_check: u is not in U");

  std::vector<std::vector<Scalar>> rows;
  for (int i = 0; i < rs.rank; ++i) {
    std::vector<Scalar> row(idx.size(), Scalar(0));
    for (std::size_t k : idx) row[static_cast<std::size_t>(pos[k])] = u[k] * rs.pairing(rs.roots[A.columns[k]], i);
    rows.push_back(std::move(row));
  }
  for (std::size_t g : G.theta0.phi0) {
    std::vector<std::pair<std::size_t, std::size_t>> hits;  // (k, target column)
    bool normalizes = true;
    for (std::size_t k : idx) {
      Root sum = rs.roots[A.columns[k]];
      for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += rs.roots[g][i];
      auto r = rs.find(sum);
      if (!r) continue;
      const long j = A.column_of(*r);
      if (j < 0 || !U.test(static_cast<std::size_t>(j))) {
        normalizes = false;
        break;
      }
      hits.emplace_back(k, static_cast<std::size_t>(j));
    }
    if (!normalizes || hits.empty()) continue;
    std::vector<Scalar> row(idx.size(), Scalar(0));
    for (auto [k, j] : hits) row[static_cast<std::size_t>(pos[j])] += u[k] * L.structure_constant(g, A.columns[k]);
    rows.push_back(std::move(row));
  }
  return rank_exact(make_matrix(rows)) == idx.size();
}

bool split_identity_check(const ActionMatrix& A, const std::vector<Scalar>& e) {
  const RationalMatrix Be = evaluate(A.B, e);
  RationalMatrix Bt(Be.rows() - 1, Be.cols());
  for (std::size_t i = 1; i < Be.rows(); ++i)
    for (std::size_t j = 0; j < Be.cols(); ++j) Bt(i - 1, j) = Be(i, j);
  return rank_exact(Be) == rank_exact(Bt) + 1;
}

bool split_identity_check(const ThetaGroup& G, const HomogeneousTriple& t) {
  const ActionMatrix A = action_matrix(G, t.h);
  return split_identity_check(A, column_coordinates(A, t.e));
}

}  // namespace nilclosure
