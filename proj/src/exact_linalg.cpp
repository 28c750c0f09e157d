#include "nilclosure/exact_linalg.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <map>
#include <numeric>
#include <random>

namespace nilclosure {

// ---------------------------------------------------------------- LinForm

LinForm LinForm::coordinate(std::size_t dim, std::size_t k, const Scalar& c) {
  LinForm f(dim);
  f.add_term(k, c);
  return f;
}

void LinForm::add_term(std::size_t k, const Scalar& c) {
  if (k >= dim_) throw std::out_of_range("LinForm coordinate out of range");
  if (c == 0) return;
  auto it = std::lower_bound(terms_.begin(), terms_.end(), k,
                             [](const Term& t, std::size_t key) { return t.first < key; });
  if (it != terms_.end() && it->first == k) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  } else {
    terms_.insert(it, Term(k, c));
  }
}

Scalar LinForm::coefficient(std::size_t k) const {
  for (const auto& t : terms_)
    if (t.first == k) return t.second;
  return 0;
}

Scalar LinForm::evaluate(const std::vector<Scalar>& u) const {
  if (u.size() != dim_) throw std::invalid_argument("LinForm::evaluate: dimension mismatch");
  Scalar s = 0;
  for (const auto& t : terms_) s += t.second * u[t.first];
  return s;
}

LinForm& LinForm::operator+=(const LinForm& other) {
  if (other.dim_ != dim_) throw std::invalid_argument("LinForm: dimension mismatch");
  for (const auto& t : other.terms_) add_term(t.first, t.second);
  return *this;
}

LinForm& LinForm::operator*=(const Scalar& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& t : terms_) t.second *= c;
  return *this;
}

// ---------------------------------------------------------------- rational elimination

RationalMatrix make_matrix(const std::vector<std::vector<Scalar>>& rows) {
  std::size_t c = rows.empty() ? 0 : rows.front().size();
  RationalMatrix M(rows.size(), c);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != c) throw std::invalid_argument("make_matrix: ragged rows");
    for (std::size_t j = 0; j < c; ++j) M(i, j) = rows[i][j];
  }
  return M;
}

namespace {

struct Eliminated {
  std::vector<std::vector<Scalar>> rows;
  std::vector<std::size_t> pivot_cols;
};

// Gauss-Jordan over Q on the first `ncols` columns; trailing columns ride along.
Eliminated gauss_jordan(std::vector<std::vector<Scalar>> rows, std::size_t ncols, bool full) {
  Eliminated out;
  std::size_t r = 0;
  const std::size_t m = rows.size();
  const std::size_t width = m ? rows[0].size() : 0;
  std::vector<std::size_t> nz;
  for (std::size_t c = 0; c < ncols && r < m; ++c) {
    std::size_t best = m, best_count = std::numeric_limits<std::size_t>::max();
    for (std::size_t i = r; i < m; ++i) {
      if (rows[i][c] == 0) continue;
      std::size_t cnt = 0;
      for (std::size_t j = c; j < width; ++j)
        if (rows[i][j] != 0) ++cnt;
      if (cnt < best_count) {
        best = i;
        best_count = cnt;
      }
    }
    if (best == m) continue;
    std::swap(rows[r], rows[best]);
    Scalar piv = rows[r][c];
    nz.clear();
    for (std::size_t j = c; j < width; ++j)
      if (rows[r][j] != 0) {
        rows[r][j] /= piv;
        nz.push_back(j);
      }
    for (std::size_t i = full ? 0 : r + 1; i < m; ++i) {
      if (i == r || rows[i][c] == 0) continue;
      Scalar factor = rows[i][c];
      for (std::size_t j : nz) rows[i][j] -= factor * rows[r][j];
    }
    out.pivot_cols.push_back(c);
    ++r;
  }
  out.rows = std::move(rows);
  return out;
}

}  // namespace

std::optional<std::vector<Scalar>> solve_linear(const RationalMatrix& A, const std::vector<Scalar>& b) {
  if (b.size() != A.rows()) throw std::invalid_argument("solve_linear: dimension mismatch");
  const std::size_t m = A.rows(), n = A.cols();
  std::vector<std::vector<Scalar>> rows(m, std::vector<Scalar>(n + 1));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) rows[i][j] = A(i, j);
    rows[i][n] = b[i];
  }
  Eliminated e = gauss_jordan(std::move(rows), n, true);
  const std::size_t r = e.pivot_cols.size();
  for (std::size_t i = r; i < m; ++i)
    if (e.rows[i][n] != 0) return std::nullopt;
  std::vector<Scalar> x(n, Scalar(0));
  for (std::size_t k = 0; k < r; ++k) x[e.pivot_cols[k]] = e.rows[k][n];
  return x;
}

std::size_t rank_exact(const RationalMatrix& M) {
  std::vector<std::vector<Scalar>> rows(M.rows(), std::vector<Scalar>(M.cols()));
  for (std::size_t i = 0; i < M.rows(); ++i)
    for (std::size_t j = 0; j < M.cols(); ++j) rows[i][j] = M(i, j);
  return gauss_jordan(std::move(rows), M.cols(), false).pivot_cols.size();
}

RationalMatrix row_basis(const RationalMatrix& M) {
  std::vector<std::vector<Scalar>> rows(M.rows(), std::vector<Scalar>(M.cols()));
  for (std::size_t i = 0; i < M.rows(); ++i)
    for (std::size_t j = 0; j < M.cols(); ++j) rows[i][j] = M(i, j);
  Eliminated e = gauss_jordan(std::move(rows), M.cols(), true);
  RationalMatrix B(e.pivot_cols.size(), M.cols());
  for (std::size_t i = 0; i < B.rows(); ++i)
    for (std::size_t j = 0; j < M.cols(); ++j) B(i, j) = e.rows[i][j];
  return B;
}

// ---------------------------------------------------------------- prime field

namespace modp {

std::uint64_t inv(std::uint64_t a) {
  if (a % prime == 0) throw std::domain_error("modp::inv of zero");
  std::uint64_t result = 1, base = a % prime, e = prime - 2;
  while (e) {
    if (e & 1) result = mul(result, base);
    base = mul(base, base);
    e >>= 1;
  }
  return result;
}

std::uint64_t reduce(long long v) {
  long long r = v % static_cast<long long>(prime);
  if (r < 0) r += static_cast<long long>(prime);
  return static_cast<std::uint64_t>(r);
}

std::uint64_t reduce(const Scalar& q) {
  Integer p(static_cast<unsigned long>(prime));
  Integer num = q.get_num() % p;
  if (num < 0) num += p;
  Integer den = q.get_den() % p;
  if (den == 0) throw std::domain_error("modp::reduce: denominator divisible by p");
  return mul(num.get_ui(), inv(den.get_ui()));
}

std::pair<std::vector<std::size_t>, std::vector<std::size_t>> pivots(ModMatrix M) {
  const std::size_t m = M.rows(), n = M.cols();
  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), 0);
  std::vector<std::size_t> prow, pcol;
  std::size_t r = 0;
  for (std::size_t c = 0; c < n && r < m; ++c) {
    std::size_t p = m;
    for (std::size_t i = r; i < m; ++i)
      if (M(order[i], c) != 0) {
        p = i;
        break;
      }
    if (p == m) continue;
    std::swap(order[r], order[p]);
    const std::size_t pr = order[r];
    std::uint64_t pinv = inv(M(pr, c));
    for (std::size_t i = r + 1; i < m; ++i) {
      const std::size_t ri = order[i];
      if (M(ri, c) == 0) continue;
      std::uint64_t f = mul(M(ri, c), pinv);
      for (std::size_t j = c; j < n; ++j)
        if (M(pr, j) != 0) M(ri, j) = sub(M(ri, j), mul(f, M(pr, j)));
    }
    prow.push_back(pr);
    pcol.push_back(c);
    ++r;
  }
  return {prow, pcol};
}

std::size_t rank(ModMatrix M) { return pivots(std::move(M)).first.size(); }

ModMatrix evaluate(const FormMatrix& M, const std::vector<std::uint64_t>& u) {
  ModMatrix out(M.rows(), M.cols(), 0);
  for (std::size_t i = 0; i < M.rows(); ++i)
    for (std::size_t j = 0; j < M.cols(); ++j) {
      std::uint64_t s = 0;
      for (const auto& t : M(i, j).terms()) s = add(s, mul(reduce(t.second), u.at(t.first)));
      out(i, j) = s;
    }
  return out;
}

}  // namespace modp

namespace {

std::size_t form_dim(const FormMatrix& M) {
  std::size_t d = 0;
  for (std::size_t i = 0; i < M.rows(); ++i)
    for (std::size_t j = 0; j < M.cols(); ++j) d = std::max(d, M(i, j).dim());
  return d;
}

}  // namespace

std::size_t rank_randomized(const FormMatrix& M, std::uint64_t seed, int trials) {
  if (trials < 1) throw std::invalid_argument("rank_randomized: trials must be >= 1");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint64_t> dist(1, modp::prime - 1);
  const std::size_t d = form_dim(M);
  std::size_t best = 0;
  const std::size_t cap = std::min(M.rows(), M.cols());
  for (int t = 0; t < trials && best < cap; ++t) {
    std::vector<std::uint64_t> u(d);
    for (auto& x : u) x = dist(rng);
    best = std::max(best, modp::rank(modp::evaluate(M, u)));
  }
  return best;
}

std::size_t term_rank(const FormMatrix& M) {
  const std::size_t m = M.rows(), n = M.cols();
  std::vector<std::vector<std::size_t>> adj(m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (!M(i, j).is_zero()) adj[i].push_back(j);
  std::vector<long> match_col(n, -1);
  std::vector<char> seen;
  std::function<bool(std::size_t)> augment = [&](std::size_t i) -> bool {
    for (std::size_t j : adj[i]) {
      if (seen[j]) continue;
      seen[j] = 1;
      if (match_col[j] < 0 || augment(static_cast<std::size_t>(match_col[j]))) {
        match_col[j] = static_cast<long>(i);
        return true;
      }
    }
    return false;
  };
  std::size_t size = 0;
  for (std::size_t i = 0; i < m; ++i) {
    seen.assign(n, 0);
    if (augment(i)) ++size;
  }
  return size;
}

FormMatrix evaluate_partial(const FormMatrix& M, const std::vector<bool>& keep) {
  FormMatrix out(M.rows(), M.cols());
  for (std::size_t i = 0; i < M.rows(); ++i)
    for (std::size_t j = 0; j < M.cols(); ++j) {
      LinForm f(M(i, j).dim());
      for (const auto& t : M(i, j).terms())
        if (keep.at(t.first)) f.add_term(t.first, t.second);
      out(i, j) = std::move(f);
    }
  return out;
}

RationalMatrix evaluate(const FormMatrix& M, const std::vector<Scalar>& u) {
  RationalMatrix out(M.rows(), M.cols());
  for (std::size_t i = 0; i < M.rows(); ++i)
    for (std::size_t j = 0; j < M.cols(); ++j) out(i, j) = M(i, j).evaluate(u);
  return out;
}

// ---------------------------------------------------------------- polynomials

int Poly::compare(const Mono& a, const Mono& b) {
  std::size_t i = 0, j = 0;
  while (true) {
    if (i == a.size() && j == b.size()) return 0;
    if (i == a.size()) return -1;
    if (j == b.size()) return 1;
    std::uint32_t va = a[i] >> 16, vb = b[j] >> 16;
    if (va != vb) return va < vb ? 1 : -1;
    std::uint32_t ea = a[i] & 0xffff, eb = b[j] & 0xffff;
    if (ea != eb) return ea > eb ? 1 : -1;
    ++i;
    ++j;
  }
}

namespace {

Poly::Mono mono_mul(const Poly::Mono& a, const Poly::Mono& b) {
  Poly::Mono out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && (a[i] >> 16) < (b[j] >> 16))) {
      out.push_back(a[i++]);
    } else if (i == a.size() || (b[j] >> 16) < (a[i] >> 16)) {
      out.push_back(b[j++]);
    } else {
      std::uint32_t e = (a[i] & 0xffff) + (b[j] & 0xffff);
      if (e > 0xffff) throw std::overflow_error("Poly: exponent overflow");
      out.push_back((a[i] & 0xffff0000u) | e);
      ++i;
      ++j;
    }
  }
  return out;
}

std::optional<Poly::Mono> mono_div(const Poly::Mono& a, const Poly::Mono& b) {
  Poly::Mono out;
  std::size_t i = 0, j = 0;
  while (j < b.size()) {
    while (i < a.size() && (a[i] >> 16) < (b[j] >> 16)) out.push_back(a[i++]);
    if (i == a.size() || (a[i] >> 16) != (b[j] >> 16)) return std::nullopt;
    std::uint32_t ea = a[i] & 0xffff, eb = b[j] & 0xffff;
    if (ea < eb) return std::nullopt;
    if (ea > eb) out.push_back((a[i] & 0xffff0000u) | (ea - eb));
    ++i;
    ++j;
  }
  while (i < a.size()) out.push_back(a[i++]);
  return out;
}

struct MonoGreater {
  bool operator()(const Poly::Mono& a, const Poly::Mono& b) const { return Poly::compare(a, b) > 0; }
};

}  // namespace

Poly Poly::constant(const Integer& c) {
  Poly p;
  if (c != 0) p.terms_.emplace_back(Mono{}, c);
  return p;
}

Poly Poly::variable(std::uint32_t var, const Integer& c) {
  if (var > 0xffff) throw std::overflow_error("Poly: too many variables");
  Poly p;
  if (c != 0) p.terms_.emplace_back(Mono{(var << 16) | 1u}, c);
  return p;
}

void Poly::normalize() {
  std::sort(terms_.begin(), terms_.end(),
            [](const Term& a, const Term& b) { return compare(a.first, b.first) > 0; });
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (auto& t : terms_) {
    if (!out.empty() && out.back().first == t.first)
      out.back().second += t.second;
    else
      out.push_back(std::move(t));
    if (out.back().second == 0) out.pop_back();
  }
  terms_ = std::move(out);
}

Poly Poly::operator+(const Poly& o) const {
  Poly r;
  r.terms_.reserve(terms_.size() + o.terms_.size());
  std::size_t i = 0, j = 0;
  while (i < terms_.size() || j < o.terms_.size()) {
    int c = i == terms_.size() ? -1 : j == o.terms_.size() ? 1 : compare(terms_[i].first, o.terms_[j].first);
    if (c > 0) {
      r.terms_.push_back(terms_[i++]);
    } else if (c < 0) {
      r.terms_.push_back(o.terms_[j++]);
    } else {
      Integer s = terms_[i].second + o.terms_[j].second;
      if (s != 0) r.terms_.emplace_back(terms_[i].first, s);
      ++i;
      ++j;
    }
  }
  return r;
}

Poly Poly::operator-(const Poly& o) const {
  Poly neg = o;
  for (auto& t : neg.terms_) t.second = -t.second;
  return *this + neg;
}

Poly Poly::operator*(const Poly& o) const {
  Poly r;
  if (is_zero() || o.is_zero()) return r;
  r.terms_.reserve(terms_.size() * o.terms_.size());
  for (const auto& a : terms_)
    for (const auto& b : o.terms_) r.terms_.emplace_back(mono_mul(a.first, b.first), a.second * b.second);
  r.normalize();
  return r;
}

Poly Poly::exact_div(const Poly& d) const {
  if (d.is_zero()) throw std::domain_error("Poly: division by zero");
  if (d.terms_.size() == 1 && d.terms_[0].first.empty() && d.terms_[0].second == 1) return *this;
  std::map<Mono, Integer, MonoGreater> rem;
  for (const auto& t : terms_) rem.emplace(t.first, t.second);
  Poly q;
  const Mono& lm = d.terms_[0].first;
  const Integer& lc = d.terms_[0].second;
  while (!rem.empty()) {
    auto it = rem.begin();
    auto m = mono_div(it->first, lm);
    if (!m || !mpz_divisible_p(it->second.get_mpz_t(), lc.get_mpz_t()))
      throw std::domain_error("Poly: inexact division");
    Integer c = it->second / lc;
    for (const auto& t : d.terms_) {
      Mono mm = mono_mul(*m, t.first);
      auto jt = rem.find(mm);
      if (jt == rem.end()) {
        rem.emplace(std::move(mm), -c * t.second);
      } else {
        jt->second -= c * t.second;
        if (jt->second == 0) rem.erase(jt);
      }
    }
    q.terms_.emplace_back(std::move(*m), c);
  }
  return q;
}

// ---------------------------------------------------------------- fraction-free rank over Q(u)

std::optional<std::size_t> rank_exact_bounded(const FormMatrix& M, std::size_t term_budget) {
  const std::size_t m = M.rows(), n = M.cols();
  std::vector<std::vector<Poly>> A(m, std::vector<Poly>(n));
  for (std::size_t i = 0; i < m; ++i) {
    Integer lcm = 1;
    for (std::size_t j = 0; j < n; ++j)
      for (const auto& t : M(i, j).terms()) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), t.second.get_den_mpz_t());
    for (std::size_t j = 0; j < n; ++j) {
      Poly p;
      for (const auto& t : M(i, j).terms()) {
        Scalar c = t.second * lcm;
        p = p + Poly::variable(static_cast<std::uint32_t>(t.first), c.get_num());
      }
      A[i][j] = std::move(p);
    }
  }
  Poly prev = Poly::constant(1);
  std::size_t rank = 0;
  while (rank < m && rank < n) {
    std::size_t bi = m, bj = n, bsize = std::numeric_limits<std::size_t>::max();
    for (std::size_t i = rank; i < m; ++i)
      for (std::size_t j = rank; j < n; ++j)
        if (!A[i][j].is_zero() && A[i][j].size() < bsize) {
          bi = i;
          bj = j;
          bsize = A[i][j].size();
        }
    if (bi == m) break;
    std::swap(A[rank], A[bi]);
    if (bj != rank)
      for (std::size_t i = 0; i < m; ++i) std::swap(A[i][rank], A[i][bj]);
    const Poly& piv = A[rank][rank];
    std::size_t total = 0;
    for (std::size_t i = rank + 1; i < m; ++i) {
      for (std::size_t j = rank + 1; j < n; ++j) {
        Poly v = piv * A[i][j];
        if (!A[i][rank].is_zero() && !A[rank][j].is_zero()) v = v - A[i][rank] * A[rank][j];
        A[i][j] = v.exact_div(prev);
        total += A[i][j].size();
        if (total > term_budget) return std::nullopt;
      }
      A[i][rank] = Poly();
    }
    prev = A[rank][rank];
    ++rank;
  }
  return rank;
}

std::size_t rank_exact(const FormMatrix& M) {
  return *rank_exact_bounded(M, std::numeric_limits<std::size_t>::max());
}

}  // namespace nilclosure
