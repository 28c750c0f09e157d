#include "nilclosure/lie_core.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <stdexcept>

namespace nilclosure {

// ---------------------------------------------------------------- root systems

std::optional<std::size_t> RootSystem::find(const Root& r) const {
  auto it = lookup_.find(r);
  if (it == lookup_.end()) return std::nullopt;
  return it->second;
}

std::size_t RootSystem::index(const Root& r) const {
  auto it = lookup_.find(r);
  if (it == lookup_.end()) throw std::invalid_argument("not a root");
  return it->second;
}

int RootSystem::height(std::size_t idx) const {
  const Root& r = roots[idx];
  return std::accumulate(r.begin(), r.end(), 0);
}

int RootSystem::inner(const Root& a, const Root& b) const {
  int s = 0;
  for (int i = 0; i < rank; ++i) {
    if (!a[i]) continue;
    for (int j = 0; j < rank; ++j)
      if (b[j]) s += a[i] * b[j] * form[i][j];
  }
  return s;
}

int RootSystem::pairing(const Root& r, int i) const {
  int s = 0;
  for (int j = 0; j < rank; ++j) s += r[j] * cartan[i][j];
  return s;
}

namespace {

std::vector<std::vector<int>> symmetric_form(char type, int n) {
  auto bad = [&] { return std::invalid_argument(std::string("invalid simple type ") + type + std::to_string(n)); };
  std::vector<std::vector<int>> f(static_cast<std::size_t>(std::max(n, 0)), std::vector<int>(static_cast<std::size_t>(std::max(n, 0)), 0));
  auto link = [&](int i, int j, int v) {
    f[i][j] = v;
    f[j][i] = v;
  };
  switch (type) {
    case 'A':
      if (n < 1) throw bad();
      for (int i = 0; i < n; ++i) f[i][i] = 2;
      for (int i = 0; i + 1 < n; ++i) link(i, i + 1, -1);
      break;
    case 'B':
      if (n < 2) throw bad();
      for (int i = 0; i < n; ++i) f[i][i] = i + 1 < n ? 4 : 2;
      for (int i = 0; i + 1 < n; ++i) link(i, i + 1, -2);
      break;
    case 'C':
      if (n < 2) throw bad();
      for (int i = 0; i < n; ++i) f[i][i] = i + 1 < n ? 2 : 4;
      for (int i = 0; i + 2 < n; ++i) link(i, i + 1, -1);
      link(n - 2, n - 1, -2);
      break;
    case 'D':
      if (n < 4) throw bad();
      for (int i = 0; i < n; ++i) f[i][i] = 2;
      for (int i = 0; i + 2 < n; ++i) link(i, i + 1, -1);
      link(n - 3, n - 1, -1);
      break;
    case 'E':
      if (n < 6 || n > 8) throw bad();
      for (int i = 0; i < n; ++i) f[i][i] = 2;
      link(0, 2, -1);
      link(1, 3, -1);
      for (int i = 2; i + 1 < n; ++i) link(i, i + 1, -1);
      break;
    case 'F':
      if (n != 4) throw bad();
      f[0][0] = f[1][1] = 4;
      f[2][2] = f[3][3] = 2;
      link(0, 1, -2);
      link(1, 2, -2);
      link(2, 3, -1);
      break;
    case 'G':
      if (n != 2) throw bad();
      f[0][0] = 2;
      f[1][1] = 6;
      link(0, 1, -3);
      break;
    default:
      throw bad();
  }
  return f;
}

bool root_less(const Root& a, const Root& b) {
  int ha = std::accumulate(a.begin(), a.end(), 0), hb = std::accumulate(b.begin(), b.end(), 0);
  if (ha != hb) return ha < hb;
  return a < b;
}

}  // namespace

RootSystem build_root_system(char type, int rank) {
  RootSystem rs;
  rs.type = type;
  rs.rank = rank;
  rs.form = symmetric_form(type, rank);
  rs.cartan.assign(rank, std::vector<int>(rank));
  for (int i = 0; i < rank; ++i)
    for (int j = 0; j < rank; ++j) rs.cartan[i][j] = 2 * rs.form[i][j] / rs.form[i][i];

  // Positive roots by the root-string algorithm, height by height.
  std::vector<Root> pos;
  std::map<Root, bool> seen;
  for (int i = 0; i < rank; ++i) {
    Root r(rank, 0);
    r[i] = 1;
    pos.push_back(r);
    seen[r] = true;
  }
  for (std::size_t k = 0; k < pos.size(); ++k) {
    const Root beta = pos[k];
    for (int i = 0; i < rank; ++i) {
      int p = 0;
      Root down = beta;
      while (true) {
        down[i] -= 1;
        if (!seen.count(down)) break;
        ++p;
      }
      int q = p - rs.pairing(beta, i);
      if (q > 0) {
        Root up = beta;
        up[i] += 1;
        if (!seen.count(up)) {
          seen[up] = true;
          pos.push_back(up);
        }
      }
    }
  }
  std::sort(pos.begin(), pos.end(), root_less);
  std::vector<Root> all;
  for (const Root& r : pos) {
    Root n(r);
    for (int& c : n) c = -c;
    all.push_back(n);
  }
  all.insert(all.end(), pos.begin(), pos.end());
  std::sort(all.begin(), all.end(), root_less);
  rs.roots = all;
  for (std::size_t i = 0; i < all.size(); ++i) {
    rs.lookup_[all[i]] = i;
    if (rs.height(i) > 0) rs.positive.push_back(i);
  }
  rs.negative_.resize(all.size());
  for (std::size_t i = 0; i < all.size(); ++i) {
    Root n(all[i]);
    for (int& c : n) c = -c;
    rs.negative_[i] = rs.lookup_.at(n);
  }
  const Root& highest = rs.roots[rs.positive.back()];
  rs.marks.push_back(1);
  for (int c : highest) rs.marks.push_back(c);
  rs.lowest = highest;
  for (int& c : rs.lowest) c = -c;
  return rs;
}

// ---------------------------------------------------------------- Chevalley basis

namespace {

Root add_roots(const Root& a, const Root& b) {
  Root r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

Root sub_roots(const Root& a, const Root& b) {
  Root r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

long exact_quotient(long num, long den) {
  if (den == 0 || num % den != 0) throw std::logic_error("structure constants: non-integral value");
  return num / den;
}

}  // namespace

LieAlgebra build_lie_algebra(const RootSystem& rs, SignConvention sign) {
  LieAlgebra L;
  L.rs_ = rs;
  const std::size_t nr = rs.roots.size();
  const int l = rs.rank;
  L.dim_ = nr + static_cast<std::size_t>(l);

  std::vector<std::size_t> order(nr, 0);  // position among positive roots
  for (std::size_t k = 0; k < rs.positive.size(); ++k) order[rs.positive[k]] = k;

  auto string_p = [&](const Root& a, const Root& b) {  // max q with b - q a a root
    int p = 0;
    Root d = b;
    while (true) {
      d = sub_roots(d, a);
      if (!rs.find(d)) break;
      ++p;
    }
    return p;
  };

  std::map<std::pair<std::size_t, std::size_t>, long> special;
  std::function<long(std::size_t, std::size_t)> N = [&](std::size_t a, std::size_t b) -> long {
    const Root& ra = rs.roots[a];
    const Root& rb = rs.roots[b];
    bool pa = rs.is_positive(a), pb = rs.is_positive(b);
    if (pa && pb) {
      if (order[a] < order[b]) return special.at({a, b});
      return -special.at({b, a});
    }
    if (!pa && !pb) return -N(rs.negative(a), rs.negative(b));
    if (!pa && pb) return -N(b, a);
    Root s = add_roots(ra, rb);
    std::size_t si = rs.index(s);
    std::size_t c = rs.negative(si);
    const Root& rc = rs.roots[c];
    if (rs.is_positive(si)) return exact_quotient(rs.inner(rc, rc) * N(b, c), rs.inner(ra, ra));
    return exact_quotient(rs.inner(rc, rc) * N(c, a), rs.inner(rb, rb));
  };

  for (std::size_t xi : rs.positive) {
    if (rs.height(xi) < 2) continue;
    const Root& rxi = rs.roots[xi];
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t a : rs.positive) {
      auto b = rs.find(sub_roots(rxi, rs.roots[a]));
      if (b && rs.is_positive(*b) && order[a] < order[*b]) pairs.emplace_back(a, *b);
    }
    if (pairs.empty()) throw std::logic_error("root without special pair");
    const auto [a1, b1] = pairs.front();
    long sgn = (sign == SignConvention::alternating && order[xi] % 2 == 1) ? -1 : 1;
    long n1 = sgn * (string_p(rs.roots[a1], rs.roots[b1]) + 1);
    special[{a1, b1}] = n1;
    // Jacobi on (x_{-a1}, x_a, x_b): N_{a,b} N_{-a1,xi} = N_{-a1,a} N_{a-a1,b} + N_{-a1,b} N_{a,b-a1}
    const std::size_t na1 = rs.negative(a1);
    const long denom = N(na1, xi);
    for (std::size_t k = 1; k < pairs.size(); ++k) {
      const auto [a, b] = pairs[k];
      const Root &ra = rs.roots[a], &rb = rs.roots[b], &ra1 = rs.roots[a1];
      long acc = 0;
      if (auto d = rs.find(sub_roots(ra, ra1))) acc += N(na1, a) * N(*d, b);
      if (auto d = rs.find(sub_roots(rb, ra1))) acc += N(na1, b) * N(a, *d);
      long nv = exact_quotient(acc, denom);
      if (std::abs(nv) != string_p(ra, rb) + 1) throw std::logic_error("structure constants: wrong magnitude");
      special[{a, b}] = nv;
    }
  }

  L.table_.assign(L.dim_ * L.dim_, {});
  for (std::size_t a = 0; a < nr; ++a) {
    const Root& ra = rs.roots[a];
    for (std::size_t b = 0; b < nr; ++b) {
      Root s = add_roots(ra, rs.roots[b]);
      if (auto c = rs.find(s)) {
        long v = N(a, b);
        L.n_[{a, b}] = v;
        L.table_[a * L.dim_ + b].push_back({*c, v});
      } else if (b == rs.negative(a)) {
        // [x_a, x_{-a}] = a^vee in the simple coroot basis
        const int aa = rs.inner(ra, ra);
        for (int i = 0; i < l; ++i)
          if (ra[i]) L.table_[a * L.dim_ + b].push_back({L.cartan_index(i), exact_quotient(ra[i] * rs.form[i][i], aa)});
      }
    }
    for (int i = 0; i < l; ++i) {
      long v = rs.pairing(ra, i);
      if (v == 0) continue;
      L.table_[L.cartan_index(i) * L.dim_ + a].push_back({a, v});
      L.table_[a * L.dim_ + L.cartan_index(i)].push_back({a, -v});
    }
  }

  // Killing form as the trace of ad x ad y.
  L.killing_.assign(L.dim_, {});
  auto trace = [&](std::size_t x, std::size_t y) {
    long t = 0;
    for (std::size_t k = 0; k < L.dim_; ++k)
      for (const auto& u : L.table_[y * L.dim_ + k])
        for (const auto& v : L.table_[x * L.dim_ + u.index])
          if (v.index == k) t += u.coeff * v.coeff;
    return t;
  };
  for (std::size_t a = 0; a < nr; ++a) {
    long t = trace(a, rs.negative(a));
    if (t) L.killing_[a][rs.negative(a)] = t;
  }
  L.kq_.assign(l, std::vector<long>(l, 0));
  for (const Root& r : rs.roots)
    for (int i = 0; i < l; ++i)
      for (int j = 0; j < l; ++j) L.kq_[i][j] += static_cast<long>(r[i]) * r[j];
  for (int i = 0; i < l; ++i)
    for (int j = 0; j < l; ++j) {
      long t = trace(L.cartan_index(i), L.cartan_index(j));
      if (t) L.killing_[L.cartan_index(i)][L.cartan_index(j)] = t;
    }

  // (cartan^T)^{-1} for converting simple-root values to coroot coordinates.
  std::vector<std::vector<Scalar>> aug(l, std::vector<Scalar>(2 * l, 0));
  for (int i = 0; i < l; ++i) {
    for (int j = 0; j < l; ++j) aug[i][j] = rs.cartan[j][i];
    aug[i][l + i] = 1;
  }
  for (int c = 0; c < l; ++c) {
    int p = c;
    while (aug[p][c] == 0) ++p;
    std::swap(aug[p], aug[c]);
    Scalar piv = aug[c][c];
    for (auto& x : aug[c]) x /= piv;
    for (int i = 0; i < l; ++i) {
      if (i == c || aug[i][c] == 0) continue;
      Scalar f = aug[i][c];
      for (int j = 0; j < 2 * l; ++j) aug[i][j] -= f * aug[c][j];
    }
  }
  L.cartan_t_inv_.assign(l, std::vector<Scalar>(l));
  for (int i = 0; i < l; ++i)
    for (int j = 0; j < l; ++j) L.cartan_t_inv_[i][j] = aug[i][l + j];
  return L;
}

LieAlgebra::Vec LieAlgebra::bracket(const Vec& x, const Vec& y) const {
  if (x.size() != dim_ || y.size() != dim_) throw std::invalid_argument("bracket: dimension mismatch");
  Vec out(dim_, Scalar(0));
  std::vector<std::size_t> ny;
  for (std::size_t j = 0; j < dim_; ++j)
    if (y[j] != 0) ny.push_back(j);
  for (std::size_t i = 0; i < dim_; ++i) {
    if (x[i] == 0) continue;
    for (std::size_t j : ny)
      for (const auto& t : table_[i * dim_ + j]) out[t.index] += x[i] * y[j] * t.coeff;
  }
  return out;
}

long LieAlgebra::structure_constant(std::size_t a, std::size_t b) const {
  auto it = n_.find({a, b});
  return it == n_.end() ? 0 : it->second;
}

long LieAlgebra::killing_basis(std::size_t a, std::size_t b) const {
  auto it = killing_[a].find(b);
  return it == killing_[a].end() ? 0 : it->second;
}

Scalar LieAlgebra::killing(const Vec& x, const Vec& y) const {
  Scalar s = 0;
  for (std::size_t i = 0; i < dim_; ++i) {
    if (x[i] == 0) continue;
    for (const auto& [j, v] : killing_[i])
      if (y[j] != 0) s += x[i] * y[j] * v;
  }
  return s;
}

std::vector<Scalar> LieAlgebra::cartan_coords(const std::vector<Scalar>& values) const {
  const int l = rank();
  std::vector<Scalar> c(l, Scalar(0));
  for (int i = 0; i < l; ++i)
    for (int j = 0; j < l; ++j) c[i] += cartan_t_inv_[i][j] * values[j];
  return c;
}

LieAlgebra::Vec LieAlgebra::cartan_vector(const std::vector<Scalar>& values) const {
  Vec v(dim_, Scalar(0));
  auto c = cartan_coords(values);
  for (int i = 0; i < rank(); ++i) v[cartan_index(i)] = c[i];
  return v;
}

Scalar LieAlgebra::killing_values(const std::vector<Scalar>& v, const std::vector<Scalar>& w) const {
  Scalar s = 0;
  for (int i = 0; i < rank(); ++i)
    for (int j = 0; j < rank(); ++j)
      if (kq_[i][j]) s += v[i] * w[j] * kq_[i][j];
  return s;
}

long LieAlgebra::killing_values(const std::vector<long>& v, const std::vector<long>& w) const {
  long s = 0;
  for (int i = 0; i < rank(); ++i)
    for (int j = 0; j < rank(); ++j) s += v[i] * w[j] * kq_[i][j];
  return s;
}

}  // namespace nilclosure
