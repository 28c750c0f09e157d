#ifndef NILCLOSURE_EXACT_LINALG_HPP
#define NILCLOSURE_EXACT_LINALG_HPP

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace nilclosure {

using Scalar = mpq_class;
using Integer = mpz_class;

/// Sparse linear form sum_k c_k u_k in a fixed number of coordinates.
class LinForm {
 public:
  using Term = std::pair<std::size_t, Scalar>;

  LinForm() = default;
  explicit LinForm(std::size_t dim) : dim_(dim) {}

  static LinForm coordinate(std::size_t dim, std::size_t k, const Scalar& c = 1);

  std::size_t dim() const { return dim_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  /// Adds c*u_k, keeping terms sorted and nonzero.
  void add_term(std::size_t k, const Scalar& c);
  Scalar coefficient(std::size_t k) const;
  Scalar evaluate(const std::vector<Scalar>& u) const;

  LinForm& operator+=(const LinForm& other);
  LinForm& operator*=(const Scalar& c);
  bool operator==(const LinForm& other) const { return dim_ == other.dim_ && terms_ == other.terms_; }

 private:
  std::size_t dim_ = 0;
  std::vector<Term> terms_;
};

enum class Domain { rational, linear_form, prime_field };

template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, const T& fill = T())
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  bool operator==(const Matrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using RationalMatrix = Matrix<Scalar>;
using FormMatrix = Matrix<LinForm>;
using ModMatrix = Matrix<std::uint64_t>;

template <class T>
struct DomainOf;
template <>
struct DomainOf<Scalar> {
  static constexpr Domain value = Domain::rational;
};
template <>
struct DomainOf<LinForm> {
  static constexpr Domain value = Domain::linear_form;
};
template <>
struct DomainOf<std::uint64_t> {
  static constexpr Domain value = Domain::prime_field;
};

RationalMatrix make_matrix(const std::vector<std::vector<Scalar>>& rows);

/// Returns some x with A x = b, or nothing when the system is inconsistent.
std::optional<std::vector<Scalar>> solve_linear(const RationalMatrix& A, const std::vector<Scalar>& b);

std::size_t rank_exact(const RationalMatrix& M);

/// Nonzero rows of the reduced row echelon form.
RationalMatrix row_basis(const RationalMatrix& M);

/// Rank over Q(u_1..u_t); unbounded fraction-free elimination.
std::size_t rank_exact(const FormMatrix& M);

/// Same, but gives up (returns nothing) once intermediate entries exceed term_budget terms in total.
std::optional<std::size_t> rank_exact_bounded(const FormMatrix& M, std::size_t term_budget);

/// Max rank over random evaluations in F_p; never exceeds rank_exact.
std::size_t rank_randomized(const FormMatrix& M, std::uint64_t seed, int trials);

/// Size of a maximum matching between rows and columns on nonzero entries; an upper bound for the rank.
std::size_t term_rank(const FormMatrix& M);

FormMatrix evaluate_partial(const FormMatrix& M, const std::vector<bool>& keep);
RationalMatrix evaluate(const FormMatrix& M, const std::vector<Scalar>& u);

namespace modp {

/// 2^31 - 1.
inline constexpr std::uint64_t prime = 2147483647ULL;

inline std::uint64_t add(std::uint64_t a, std::uint64_t b) {
  std::uint64_t s = a + b;
  return s >= prime ? s - prime : s;
}
inline std::uint64_t sub(std::uint64_t a, std::uint64_t b) { return a >= b ? a - b : a + prime - b; }
inline std::uint64_t mul(std::uint64_t a, std::uint64_t b) { return (a * b) % prime; }
std::uint64_t inv(std::uint64_t a);
std::uint64_t reduce(const Scalar& q);
std::uint64_t reduce(long long v);

std::size_t rank(ModMatrix M);

/// Greedy pivoting; returns (pivot rows, pivot cols) of a nonsingular leading minor.
std::pair<std::vector<std::size_t>, std::vector<std::size_t>> pivots(ModMatrix M);

ModMatrix evaluate(const FormMatrix& M, const std::vector<std::uint64_t>& u);

}  // namespace modp

/// Sparse multivariate polynomial with integer coefficients, lex order with u_0 largest.
class Poly {
 public:
  using Mono = std::vector<std::uint32_t>;  // (var << 16) | exponent, sorted by var
  using Term = std::pair<Mono, Integer>;

  Poly() = default;
  static Poly constant(const Integer& c);
  static Poly variable(std::uint32_t var, const Integer& c = 1);

  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  const std::vector<Term>& terms() const { return terms_; }

  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator*(const Poly& o) const;
  bool operator==(const Poly& o) const { return terms_ == o.terms_; }

  /// Exact quotient; throws std::domain_error if d does not divide *this.
  Poly exact_div(const Poly& d) const;

  static int compare(const Mono& a, const Mono& b);

 private:
  std::vector<Term> terms_;  // strictly decreasing monomials, nonzero coefficients
  void normalize();
};

}  // namespace nilclosure

#endif
