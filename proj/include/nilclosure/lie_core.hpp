#ifndef NILCLOSURE_LIE_CORE_HPP
#define NILCLOSURE_LIE_CORE_HPP

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "nilclosure/exact_linalg.hpp"

namespace nilclosure {

using Root = std::vector<int>;  // coefficients in the simple-root basis

/// Cartan data and the full root list of a simple type (Bourbaki numbering).
struct RootSystem {
  char type = 'A';
  int rank = 0;
  std::vector<std::vector<int>> form;    // (alpha_i, alpha_j), shortest roots have length 2
  std::vector<std::vector<int>> cartan;  // cartan[i][j] = <alpha_j, alpha_i^vee>
  std::vector<Root> roots;               // sorted by (height, lexicographic); negatives first
  std::vector<std::size_t> positive;     // indices into roots, increasing order
  std::vector<int> marks;                // n_0 = 1, then n_1..n_l
  Root lowest;                           // alpha_0 = -(highest root)

  std::optional<std::size_t> find(const Root& r) const;
  std::size_t index(const Root& r) const;
  std::size_t negative(std::size_t idx) const { return negative_[idx]; }
  int height(std::size_t idx) const;
  bool is_positive(std::size_t idx) const { return height(idx) > 0; }
  int inner(const Root& a, const Root& b) const;
  /// <r, alpha_i^vee>
  int pairing(const Root& r, int i) const;
  std::string name() const { return std::string(1, type) + std::to_string(rank); }

  std::map<Root, std::size_t> lookup_;
  std::vector<std::size_t> negative_;
};

RootSystem build_root_system(char type, int rank);

/// Sign choice for extraspecial pairs; any choice gives a Chevalley basis.
enum class SignConvention { standard, alternating };

/// Simple Lie algebra in a Chevalley basis: x_alpha for every root (root order), then h_1..h_l.
class LieAlgebra {
 public:
  struct Term {
    std::size_t index;
    long coeff;
  };
  using Vec = std::vector<Scalar>;

  const RootSystem& root_system() const { return rs_; }
  std::size_t dim() const { return dim_; }
  std::size_t num_roots() const { return rs_.roots.size(); }
  int rank() const { return rs_.rank; }
  std::size_t cartan_index(int i) const { return num_roots() + static_cast<std::size_t>(i); }
  bool is_cartan(std::size_t b) const { return b >= num_roots(); }

  const std::vector<Term>& bracket_basis(std::size_t a, std::size_t b) const { return table_[a * dim_ + b]; }
  Vec bracket(const Vec& x, const Vec& y) const;
  /// N_{alpha,beta} for root indices with alpha+beta a root; 0 otherwise.
  long structure_constant(std::size_t a, std::size_t b) const;

  /// Trace form tr(ad b_a ad b_b) on basis elements.
  long killing_basis(std::size_t a, std::size_t b) const;
  Scalar killing(const Vec& x, const Vec& y) const;

  /// Cartan element with alpha_i(H) = values[i], as coefficients on h_1..h_l.
  std::vector<Scalar> cartan_coords(const std::vector<Scalar>& values) const;
  /// Embeds a Cartan element given by simple-root values into a full algebra vector.
  Vec cartan_vector(const std::vector<Scalar>& values) const;
  /// Killing form of two Cartan elements given by simple-root values.
  Scalar killing_values(const std::vector<Scalar>& v, const std::vector<Scalar>& w) const;
  long killing_values(const std::vector<long>& v, const std::vector<long>& w) const;
  const std::vector<std::vector<long>>& killing_value_matrix() const { return kq_; }

  /// beta(H) for a root index and a Cartan element given by simple-root values.
  template <class T>
  T root_value(std::size_t root, const std::vector<T>& values) const {
    T s = 0;
    const Root& r = rs_.roots[root];
    for (std::size_t i = 0; i < r.size(); ++i)
      if (r[i]) s += r[i] * values[i];
    return s;
  }

  friend LieAlgebra build_lie_algebra(const RootSystem& rs, SignConvention sign);

 private:
  RootSystem rs_;
  std::size_t dim_ = 0;
  std::vector<std::vector<Term>> table_;
  std::vector<std::map<std::size_t, long>> killing_;  // sparse Gram matrix
  std::vector<std::vector<long>> kq_;                 // Killing form in simple-root-value coordinates
  std::vector<std::vector<Scalar>> cartan_t_inv_;     // (cartan^T)^{-1}
  std::map<std::pair<std::size_t, std::size_t>, long> n_;
};

LieAlgebra build_lie_algebra(const RootSystem& rs, SignConvention sign = SignConvention::standard);

}  // namespace nilclosure

#endif
