#ifndef NILCLOSURE_SL2_HPP
#define NILCLOSURE_SL2_HPP

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "nilclosure/grading.hpp"

namespace nilclosure {

/// (h, e, f) with e in g_1, f in g_-1 and h in h_0 given by its full values.
struct HomogeneousTriple {
  std::vector<long> h;
  LieAlgebra::Vec e;
  LieAlgebra::Vec f;
};

struct Sl2Options {
  int coeff_bound = 5;  // random coordinates from {-B..B} \ {0}
  int retries = 8;
};

/// complete_triple failures that are not plain bad input.
class NotNilpotentError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};
class NotTorusAdaptedError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Roots of degree `deg` on which h takes the value k, in root order.
std::vector<std::size_t> eigen_roots(const ThetaGroup& G, const std::vector<long>& h, long k, long deg = 1);

/// Necessary condition: ad h has sl2-string multiplicities on each class {(g_j)_k : 2j - k fixed}.
bool is_sl2_unimodal(const ThetaGroup& G, const std::vector<long>& h);

/// f in g_-1 with [h,f] = -2f and [e,f] = h, if one exists. e must lie in V_2(h).
std::optional<LieAlgebra::Vec> solve_nilnegative(const ThetaGroup& G, const std::vector<long>& h, const LieAlgebra::Vec& e);

/// Random e in V_2(h), then a linear solve for f; nothing after opts.retries failures.
std::optional<HomogeneousTriple> triple_from_characteristic(const ThetaGroup& G, const std::vector<long>& h,
                                                            std::uint64_t seed, const Sl2Options& opts = {});

/// Constructive Jacobson-Morozov for e whose characteristic can be taken in h_0; h is then moved into C_0.
HomogeneousTriple complete_triple(const ThetaGroup& G, const LieAlgebra::Vec& e);

/// e2 in G_0 e iff the system for f' is solvable. Throws std::invalid_argument if e2 is not in V_2(h).
bool orbit_membership(const ThetaGroup& G, const HomogeneousTriple& t, const LieAlgebra::Vec& e2,
                      LieAlgebra::Vec* f_out = nullptr);

bool verify_triple(const ThetaGroup& G, const HomogeneousTriple& t);

/// dim G_0 e = rank of ad e : g_0 -> g_1.
long orbit_dimension(const ThetaGroup& G, const HomogeneousTriple& t);

/// dim g_{k,e} for every k in G.grading.degrees(), same order.
std::vector<long> centralizer_dims(const ThetaGroup& G, const HomogeneousTriple& t);

/// Dominant characteristics (full values) with coordinates <= bound that carry a triple.
/// Complete in the adjoint case for bound 2; otherwise a heuristic search.
std::vector<std::vector<long>> enumerate_characteristics(const ThetaGroup& G, int bound, std::uint64_t seed,
                                                         const Sl2Options& opts = {});

/// Image of v under exp(ad x_r) exp(-ad x_{-r}) exp(ad x_r), a lift of the reflection in r.
LieAlgebra::Vec tits_reflect(const LieAlgebra& L, std::size_t root, const LieAlgebra::Vec& v);

}  // namespace nilclosure

#endif
