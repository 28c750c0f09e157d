#include "nilclosure/sl2.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>

namespace nilclosure {

namespace {

using Vec = LieAlgebra::Vec;

// [x_a, v] for a basis index a.
Vec ad_basis(const LieAlgebra& L, std::size_t a, const Vec& v) {
  Vec out(L.dim(), Scalar(0));
  for (std::size_t j = 0; j < L.dim(); ++j) {
    if (v[j] == 0) continue;
    for (const auto& t : L.bracket_basis(a, j)) out[t.index] += v[j] * t.coeff;
  }
  return out;
}

bool is_zero(const Vec& v) {
  return std::all_of(v.begin(), v.end(), [](const Scalar& x) { return x == 0; });
}

std::vector<std::pair<std::size_t, Scalar>> support(const Vec& v) {
  std::vector<std::pair<std::size_t, Scalar>> s;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (v[i] != 0) s.emplace_back(i, v[i]);
  return s;
}

std::vector<Scalar> to_scalars(const std::vector<long>& v) { return {v.begin(), v.end()}; }

bool all_zero(const std::vector<long>& h) {
  return std::all_of(h.begin(), h.end(), [](long x) { return x == 0; });
}

// rank of ad e : g_k -> g_{k+1}
std::size_t ad_rank(const ThetaGroup& G, const Vec& e, int k) {
  const LieAlgebra& L = G.algebra();
  const auto& src = G.grading.component(k);
  const auto& dst = G.grading.component(static_cast<long>(k) + 1);
  if (src.empty() || dst.empty()) return 0;
  std::vector<long> col(L.dim(), -1);
  for (std::size_t j = 0; j < dst.size(); ++j) col[dst[j]] = static_cast<long>(j);
  auto es = support(e);
  RationalMatrix M(src.size(), dst.size());
  for (std::size_t i = 0; i < src.size(); ++i)
    for (const auto& [b, c] : es)
      for (const auto& t : L.bracket_basis(src[i], b)) {
        if (col[t.index] < 0) throw std::logic_error("grading violated by bracket");
        M(i, static_cast<std::size_t>(col[t.index])) += c * t.coeff;
      }
  return rank_exact(M);
}

bool is_nilpotent_exact(const LieAlgebra& L, const Vec& e) {
  const std::size_t n = L.dim();
  RationalMatrix cur(n, n);
  for (std::size_t i = 0; i < n; ++i) cur(i, i) = 1;
  std::size_t last = n;
  while (true) {
    RationalMatrix next(cur.rows(), n);
    for (std::size_t i = 0; i < cur.rows(); ++i) {
      Vec row(n);
      for (std::size_t j = 0; j < n; ++j) row[j] = cur(i, j);
      Vec img = L.bracket(e, row);
      for (std::size_t j = 0; j < n; ++j) next(i, j) = img[j];
    }
    cur = row_basis(next);
    if (cur.rows() == 0) return true;
    if (cur.rows() == last) return false;
    last = cur.rows();
  }
}

}  // namespace

std::vector<std::size_t> eigen_roots(const ThetaGroup& G, const std::vector<long>& h, long k, long deg) {
  std::vector<std::size_t> out;
  for (std::size_t r : G.grading.root_component(deg))
    if (G.root_value(r, h) == k) out.push_back(r);
  return out;
}

bool is_sl2_unimodal(const ThetaGroup& G, const std::vector<long>& h) {
  const int m = G.grading.modulus();
  std::map<long, std::map<long, long>> cls;  // class -> eigenvalue -> multiplicity
  auto key = [&](long j, long k) {
    long c = 2 * j - k;
    if (m > 0) {
      c %= 2 * m;
      if (c < 0) c += 2 * m;
    }
    return c;
  };
  const auto& rs = G.roots();
  for (std::size_t r = 0; r < rs.roots.size(); ++r) {
    long k = G.root_value(r, h);
    cls[key(G.grading.root_degree(r), k)][k] += 1;
  }
  cls[key(0, 0)][0] += rs.rank;
  for (const auto& [c, mult] : cls) {
    auto get = [&](long k) {
      auto it = mult.find(k);
      return it == mult.end() ? 0L : it->second;
    };
    for (const auto& [k, n] : mult) {
      if (get(-k) != n) return false;
      if (k >= 2 && get(k - 2) < n) return false;
    }
  }
  return true;
}

std::optional<Vec> solve_nilnegative(const ThetaGroup& G, const std::vector<long>& h, const Vec& e) {
  const LieAlgebra& L = G.algebra();
  if (all_zero(h)) return std::nullopt;
  auto unknowns = eigen_roots(G, h, -2, -1);
  std::vector<long> row(L.dim(), -1);
  std::size_t nrows = 0;
  for (int i = 0; i < L.rank(); ++i) row[L.cartan_index(i)] = static_cast<long>(nrows++);
  for (std::size_t g : G.grading.root_component(0))
    if (G.root_value(g, h) == 0) row[g] = static_cast<long>(nrows++);
  RationalMatrix A(nrows, unknowns.size());
  for (const auto& [b, c] : support(e))
    for (std::size_t j = 0; j < unknowns.size(); ++j)
      for (const auto& t : L.bracket_basis(b, unknowns[j])) {
        if (row[t.index] < 0) throw std::invalid_argument("e is not in V_2(h)");
        A(static_cast<std::size_t>(row[t.index]), j) += c * t.coeff;
      }
  std::vector<Scalar> rhs(nrows, Scalar(0));
  auto hc = L.cartan_coords(to_scalars(h));
  for (int i = 0; i < L.rank(); ++i) rhs[static_cast<std::size_t>(row[L.cartan_index(i)])] = hc[i];
  auto y = solve_linear(A, rhs);
  if (!y) return std::nullopt;
  Vec f(L.dim(), Scalar(0));
  for (std::size_t j = 0; j < unknowns.size(); ++j) f[unknowns[j]] = (*y)[j];
  return f;
}

std::optional<HomogeneousTriple> triple_from_characteristic(const ThetaGroup& G, const std::vector<long>& h,
                                                            std::uint64_t seed, const Sl2Options& opts) {
  if (h.size() != static_cast<std::size_t>(G.algebra().rank())) throw std::invalid_argument("characteristic has wrong length");
  if (all_zero(h)) return std::nullopt;
  auto v2 = eigen_roots(G, h, 2, 1);
  if (v2.empty()) return std::nullopt;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> d(1, 2 * opts.coeff_bound);
  for (int attempt = 0; attempt < opts.retries; ++attempt) {
    Vec e(G.algebra().dim(), Scalar(0));
    for (std::size_t r : v2) {
      int x = d(rng);
      e[r] = x <= opts.coeff_bound ? x - opts.coeff_bound - 1 : x - opts.coeff_bound;
    }
    if (auto f = solve_nilnegative(G, h, e)) return HomogeneousTriple{h, e, *f};
  }
  return std::nullopt;
}

bool orbit_membership(const ThetaGroup& G, const HomogeneousTriple& t, const Vec& e2, Vec* f_out) {
  const LieAlgebra& L = G.algebra();
  if (e2.size() != L.dim()) throw std::invalid_argument("orbit_membership: dimension mismatch");
  auto v2 = eigen_roots(G, t.h, 2, 1);
  std::set<std::size_t> allowed(v2.begin(), v2.end());
  for (const auto& [b, c] : support(e2))
    if (!allowed.count(b)) throw std::invalid_argument("orbit_membership: element not in V_2(h)");
  if (is_zero(e2)) return false;
  auto f = solve_nilnegative(G, t.h, e2);
  if (f && f_out) *f_out = *f;
  return f.has_value();
}

bool verify_triple(const ThetaGroup& G, const HomogeneousTriple& t) {
  const LieAlgebra& L = G.algebra();
  Vec H = L.cartan_vector(to_scalars(t.h));
  Vec he = L.bracket(H, t.e), hf = L.bracket(H, t.f), ef = L.bracket(t.e, t.f);
  for (std::size_t i = 0; i < L.dim(); ++i) {
    if (he[i] != 2 * t.e[i] || hf[i] != -2 * t.f[i] || ef[i] != H[i]) return false;
    int d = G.grading.degree(i);
    if (t.e[i] != 0 && d != G.grading.normalize(1)) return false;
    if (t.f[i] != 0 && d != G.grading.normalize(-1)) return false;
  }
  return !is_zero(t.e);
}

long orbit_dimension(const ThetaGroup& G, const HomogeneousTriple& t) {
  return static_cast<long>(ad_rank(G, t.e, 0));
}

std::vector<long> centralizer_dims(const ThetaGroup& G, const HomogeneousTriple& t) {
  std::vector<long> out;
  for (int k : G.grading.degrees())
    out.push_back(static_cast<long>(G.grading.component(k).size()) - static_cast<long>(ad_rank(G, t.e, k)));
  return out;
}

std::vector<std::vector<long>> enumerate_characteristics(const ThetaGroup& G, int bound, std::uint64_t seed,
                                                         const Sl2Options& opts) {
  if (bound < 1) throw std::invalid_argument("label bound must be at least 1");
  const Theta0Data& T = G.theta0;
  const int l = G.algebra().rank();
  std::vector<std::vector<long>> candidates;
  if (T.center_dim == 0) {
    const std::size_t r = T.rank();
    std::vector<long> c(r, 0);
    while (true) {
      std::size_t i = 0;
      while (i < r && c[i] == bound) c[i++] = 0;
      if (i == r) break;
      ++c[i];
      if (auto full = T.full_from_coords(c)) candidates.push_back(*full);
    }
  } else {
    std::vector<long> F(l, -bound);
    while (true) {
      if (!all_zero(F) && T.is_dominant(F)) candidates.push_back(F);
      int i = 0;
      while (i < l && F[i] == bound) F[i++] = -bound;
      if (i == l) break;
      ++F[i];
    }
  }
  std::vector<std::vector<long>> out;
  std::uint64_t k = 0;
  for (const auto& h : candidates) {
    ++k;
    if (!is_sl2_unimodal(G, h)) continue;
    if (triple_from_characteristic(G, h, seed ^ (k * 0x9E3779B97F4A7C15ULL), opts)) out.push_back(h);
  }
  return out;
}

Vec tits_reflect(const LieAlgebra& L, std::size_t root, const Vec& v) {
  const std::size_t neg = L.root_system().negative(root);
  auto expo = [&](std::size_t a, int sign, const Vec& x) {
    Vec out = x, term = x;
    for (int k = 1; k < 8; ++k) {
      term = ad_basis(L, a, term);
      if (is_zero(term)) break;
      for (auto& c : term) c *= Scalar(sign, k);
      for (std::size_t i = 0; i < out.size(); ++i) out[i] += term[i];
    }
    return out;
  };
  return expo(root, 1, expo(neg, -1, expo(root, 1, v)));
}

HomogeneousTriple complete_triple(const ThetaGroup& G, const Vec& e) {
  const LieAlgebra& L = G.algebra();
  const RootSystem& rs = G.roots();
  const int l = L.rank();
  if (e.size() != L.dim()) throw std::invalid_argument("complete_triple: dimension mismatch");
  if (is_zero(e)) throw std::invalid_argument("complete_triple: e = 0");
  const int one = G.grading.normalize(1);
  auto es = support(e);
  bool cartan_part = false;
  for (const auto& [b, c] : es) {
    if (G.grading.degree(b) != one) throw std::invalid_argument("complete_triple: e is not in g_1");
    cartan_part = cartan_part || L.is_cartan(b);
  }
  auto fail = [&](const char* what) -> HomogeneousTriple {
    if (!is_nilpotent_exact(L, e)) throw NotNilpotentError("complete_triple: e is not nilpotent");
    throw NotTorusAdaptedError(what);
  };
  if (cartan_part) return fail("complete_triple: e has a Cartan component");

  // Some h in h_0 with beta(h) = 2 on supp e; its existence also shows e is nilpotent.
  {
    RationalMatrix A(es.size(), l);
    for (std::size_t k = 0; k < es.size(); ++k)
      for (int i = 0; i < l; ++i) A(k, i) = rs.roots[es[k].first][i];
    if (!solve_linear(A, std::vector<Scalar>(es.size(), Scalar(2))))
      return fail("complete_triple: no semisimple element of h_0 acts by 2 on the support of e");
  }

  // z in g_-1 with [e,z] in h_0 and beta([e,z]) = 2 on supp e.
  const auto& zbasis = G.grading.component(-1);
  const auto& deg0 = G.grading.root_component(0);
  std::vector<long> row(L.dim(), -1);
  for (std::size_t k = 0; k < deg0.size(); ++k) row[deg0[k]] = static_cast<long>(k);
  const std::size_t nrows = deg0.size() + es.size();
  RationalMatrix A(nrows, zbasis.size());
  std::vector<std::vector<Scalar>> cart(zbasis.size(), std::vector<Scalar>(l, Scalar(0)));
  for (std::size_t j = 0; j < zbasis.size(); ++j) {
    for (const auto& [b, c] : es)
      for (const auto& t : L.bracket_basis(b, zbasis[j])) {
        if (L.is_cartan(t.index)) {
          cart[j][t.index - L.num_roots()] += c * t.coeff;
        } else if (row[t.index] >= 0) {
          A(static_cast<std::size_t>(row[t.index]), j) += c * t.coeff;
        } else {
          throw std::logic_error("grading violated by bracket");
        }
      }
    for (std::size_t k = 0; k < es.size(); ++k) {
      Scalar s = 0;
      for (int i = 0; i < l; ++i) s += cart[j][i] * rs.pairing(rs.roots[es[k].first], i);
      A(deg0.size() + k, j) = s;
    }
  }
  std::vector<Scalar> rhs(nrows, Scalar(0));
  for (std::size_t k = 0; k < es.size(); ++k) rhs[deg0.size() + k] = 2;
  auto z = solve_linear(A, rhs);
  if (!z) return fail("complete_triple: no characteristic of e lies in h_0");
  std::vector<long> h(l, 0);
  for (int k = 0; k < l; ++k) {
    Scalar s = 0;
    for (std::size_t j = 0; j < zbasis.size(); ++j)
      for (int i = 0; i < l; ++i)
        if (cart[j][i] != 0) s += (*z)[j] * cart[j][i] * rs.cartan[i][k];
    if (s.get_den() != 1) throw std::logic_error("complete_triple: non-integral characteristic");
    h[k] = s.get_num().get_si();
  }
  auto f = solve_nilnegative(G, h, e);
  if (!f) throw std::logic_error("complete_triple: no f for a valid characteristic");

  HomogeneousTriple t{h, e, *f};
  const Theta0Data& T = G.theta0;
  while (true) {
    auto a = T.coords(t.h);
    std::size_t j = 0;
    while (j < a.size() && a[j] >= 0) ++j;
    if (j == a.size()) break;
    t.e = tits_reflect(L, T.delta0[j], t.e);
    t.f = tits_reflect(L, T.delta0[j], t.f);
    for (int k = 0; k < l; ++k) t.h[k] -= a[j] * T.coroot[j][k];
  }
  return t;
}

}  // namespace nilclosure
