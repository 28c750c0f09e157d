#ifndef NILCLOSURE_WEYL_HPP
#define NILCLOSURE_WEYL_HPP

#include <cstddef>
#include <functional>
#include <vector>

#include "nilclosure/grading.hpp"

namespace nilclosure {

/// A point w h of the orbit W_0 h.
struct OrbitNode {
  std::vector<long> coords;  // delta_i(w h), in the delta0 order of Theta0Data
  std::vector<long> full;    // alpha_k(w h) on the simple roots of g
  int length = 0;
  int generator = -1;  // delta0 index of the reflection leading here from the predecessor; -1 at the root
};

/// Depth-first walk of the successor tree on W_0 h. Keeps only the current root-to-node path.
class WeylOrbitIterator {
 public:
  using Prune = std::function<bool(const OrbitNode&)>;

  /// `order` renumbers delta0 for the successor rule (a permutation of 0..r-1, identity by default).
  WeylOrbitIterator(const Theta0Data& T, std::vector<long> h, Prune prune = {}, std::vector<int> order = {});

  /// Moves to the next node in preorder; false when the walk is over.
  bool next();
  const OrbitNode& node() const { return stack_.back().node; }
  /// Children of the current node are not visited.
  void skip_subtree() { stack_.back().next = static_cast<int>(order_.size()); }
  /// Reflection indices (delta0 order) applied to h, first to last.
  std::vector<int> word() const;
  std::size_t pruned() const { return pruned_; }
  /// Position of a delta0 index in the working numbering.
  int position(int delta_index) const { return pos_[static_cast<std::size_t>(delta_index)]; }

 private:
  struct Frame {
    OrbitNode node;
    int next = 0;  // next position to try
  };
  const Theta0Data& T_;
  Prune prune_;
  std::vector<int> order_, pos_;
  std::vector<Frame> stack_;
  OrbitNode root_;
  bool started_ = false;
  std::size_t pruned_ = 0;
};

/// s_j applied to a node's coordinates and full values.
void reflect_node(const Theta0Data& T, int j, std::vector<long>& coords, std::vector<long>& full);

/// Prune predicate: kappa(w h, h') < threshold.
WeylOrbitIterator::Prune kappa_descent_prune(const ThetaGroup& G, const std::vector<long>& h_prime, long threshold);

/// Nodes of W_0 h in bijection with W_0,h' \ W_0 / W_0,h. `order_out` receives the renumbering used.
std::vector<OrbitNode> double_coset_reps(const ThetaGroup& G, const std::vector<long>& h, const std::vector<long>& h_prime,
                                         std::vector<int>* order_out = nullptr);

/// Inversion count #{alpha in Phi_0^+ : alpha(x) < 0}.
int inversion_length(const ThetaGroup& G, const std::vector<long>& full);

}  // namespace nilclosure

#endif
