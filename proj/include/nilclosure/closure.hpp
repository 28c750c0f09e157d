#ifndef NILCLOSURE_CLOSURE_HPP
#define NILCLOSURE_CLOSURE_HPP

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "nilclosure/stratum.hpp"
#include "nilclosure/weyl.hpp"

namespace nilclosure {

/// A nilpotent orbit with everything the pairwise test reuses.
struct PreparedOrbit {
  int id = 0;
  HomogeneousTriple triple;
  long dim = 0;
  std::vector<long> centralizer;  // aligned with grading.degrees()
  std::shared_ptr<const ActionMatrix> action;
};

PreparedOrbit prepare_orbit(const ThetaGroup& G, int id, HomogeneousTriple t);

struct ClosureOptions {
  StratumOptions stratum;
  int membership_attempts = 3;
  int coeff_bound = 5;  // u has coordinates in {-B..B} \ {0}
  bool normalizer_check = true;
};

/// u in V_2(h') cap V_{>=2}(w h) with u in O', found after applying `word` to h.
struct Witness {
  std::vector<int> word;
  std::vector<long> wh;
  LieAlgebra::Vec u;
  LieAlgebra::Vec f;
};

struct Refutation {
  std::string reason;  // dimension, centralizer, kappa, exhausted
  std::size_t visited = 0, pruned = 0, cached = 0, stabilizer_skipped = 0, empty = 0, normalizer = 0;
  std::vector<DenseEvidence> evidence;
};

struct Decision {
  int upper = 0, lower = 0;
  bool included = false;
  bool exact = true;  // false when some refutation relied on random evaluation only
  std::optional<Witness> witness;
  Refutation refutation;
};

/// Is O' = G_0 e' (lower) contained in the closure of O = G_0 e (upper)?
Decision decide_inclusion(const ThetaGroup& G, const PreparedOrbit& lower, const PreparedOrbit& upper, std::uint64_t seed,
                          const ClosureOptions& opts = {});

/// Re-checks a witness: the word carries h to wh, u lies in V_2(h') cap V_{>=2}(wh), and (h', u, f) brackets correctly.
bool verify_witness(const ThetaGroup& G, const PreparedOrbit& lower, const PreparedOrbit& upper, const Witness& w);

/// Per-pair seed; independent of scheduling.
std::uint64_t pair_seed(std::uint64_t master, int upper, int lower);

/// Contradictory decisions (a cycle, or a transitivity failure that survives exact re-checking).
class InconsistencyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct HasseNode {
  int id = 0;
  std::vector<long> characteristic;  // delta0 coordinates
  long dim = 0;
};

struct HasseDiagram {
  std::vector<HasseNode> nodes;
  std::vector<std::pair<int, int>> covering_edges;  // (upper, lower)
  std::vector<std::pair<int, int>> closure_pairs;   // all (upper, lower) with lower in the closure of upper
  bool exact = true;
  std::size_t decisions = 0, escalations = 0;
};

struct HasseOptions {
  ClosureOptions closure;
  unsigned jobs = 1;
  bool include_zero_orbit = false;  // adds node 0 below every orbit
};

HasseDiagram build_hasse(const ThetaGroup& G, const std::vector<PreparedOrbit>& orbits, std::uint64_t seed,
                         const HasseOptions& opts = {}, std::vector<Decision>* decisions = nullptr);

/// Covering pairs of a relation given as (upper, lower) pairs; the relation must be transitive and acyclic.
std::vector<std::pair<int, int>> transitive_reduction(const std::vector<int>& ids,
                                                      const std::vector<std::pair<int, int>>& relation);

}  // namespace nilclosure

#endif
