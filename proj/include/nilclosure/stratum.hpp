#ifndef NILCLOSURE_STRATUM_HPP
#define NILCLOSURE_STRATUM_HPP

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "nilclosure/sl2.hpp"

namespace nilclosure {

/// Coordinate subspace of V_2(h'): a bit-set over the root vectors spanning it.
class Subspace {
 public:
  Subspace() = default;
  explicit Subspace(std::size_t n) : n_(n), bits_((n + 63) / 64, 0) {}

  std::size_t ambient() const { return n_; }
  bool test(std::size_t i) const { return (bits_[i / 64] >> (i % 64)) & 1u; }
  void set(std::size_t i) { bits_[i / 64] |= std::uint64_t{1} << (i % 64); }
  std::size_t count() const;
  bool empty() const { return count() == 0; }
  bool subset_of(const Subspace& o) const;
  std::vector<std::size_t> indices() const;
  bool operator==(const Subspace& o) const { return n_ == o.n_ && bits_ == o.bits_; }

 private:
  std::size_t n_ = 0;
  std::vector<std::uint64_t> bits_;
};

/// Action of z(h') on V_2(h') as a matrix of linear forms in the coordinates u_1..u_s.
/// Row 0 is h', then a basis of the Cartan part of z~(h'), then x_gamma for gamma in Phi_0 with gamma(h') = 0.
struct ActionMatrix {
  std::vector<long> h;
  std::vector<std::size_t> columns;            // roots spanning V_2(h'); column j <-> u_j
  std::vector<std::vector<long>> cartan_rows;  // full values of the Cartan rows of z~(h')
  std::vector<std::size_t> root_rows;          // gamma for the trailing rows
  FormMatrix B;

  std::size_t n() const { return B.rows(); }
  std::size_t s() const { return B.cols(); }
  /// Column of a root, or -1.
  long column_of(std::size_t root) const;
  /// B with row 0 removed.
  FormMatrix tilde() const;

  std::vector<long> column_lookup;  // indexed by root
};

ActionMatrix action_matrix(const ThetaGroup& G, const std::vector<long>& h);

/// Coordinates of an element of V_2(h') in the column basis; throws if it has other components.
std::vector<Scalar> column_coordinates(const ActionMatrix& A, const LieAlgebra::Vec& v);
LieAlgebra::Vec from_columns(const ThetaGroup& G, const ActionMatrix& A, const std::vector<Scalar>& u);

enum class RankStrategy { automatic, exact, randomized };
/// How the symbolic step is done: the literal heuristic, always the row-span test, or always the full rank.
enum class StratumRoute { heuristic, split, full };

struct StratumOptions {
  RankStrategy strategy = RankStrategy::automatic;
  StratumRoute route = StratumRoute::heuristic;
  std::size_t term_budget = 400000;
  int trials = 3;     // random evaluations of B_u
  int resamples = 3;  // fresh u after a failed row-span test
};

/// Evidence for or against U meeting the dense orbit Z(h')e.
struct DenseEvidence {
  bool nonempty = false;
  bool exact = true;  // false: the verdict rests on random evaluations only
  std::string method;
  std::size_t s = 0, rank_B = 0, rank_Btilde = 0;
  std::vector<std::size_t> minor_rows, minor_cols;
  std::vector<std::uint64_t> point;  // u (mod p) where rank B_u = s
};

/// Decides U cap Z(h')e != empty, i.e. rank B_U = s.
DenseEvidence dense_intersection_nonempty(const ThetaGroup& G, const ActionMatrix& A, const Subspace& U,
                                          std::uint64_t seed, const StratumOptions& opts = {});

/// Exact certificate of emptiness: some t in h_0 cap z~(h') has beta(t) > 0 for every beta in U.
bool torus_contracts(const ActionMatrix& A, const Subspace& U);

/// [n, u] = U for n the normalizer of U in g_0. u is given in column coordinates and must lie in U.
bool normalizer_tangent_check(const ThetaGroup& G, const ActionMatrix& A, const Subspace& U,
                              const std::vector<Scalar>& u);

/// rank B_e = rank B~_e + 1.
bool split_identity_check(const ThetaGroup& G, const HomogeneousTriple& t);
bool split_identity_check(const ActionMatrix& A, const std::vector<Scalar>& e_coords);

}  // namespace nilclosure

#endif
