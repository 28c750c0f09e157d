#ifndef NILCLOSURE_GRADING_HPP
#define NILCLOSURE_GRADING_HPP

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "nilclosure/lie_core.hpp"

namespace nilclosure {

/// Labels s_0..s_l of an inner Kac diagram; node 0 is the lowest root.
struct KacLabels {
  std::vector<int> s;

  /// m = sum n_i s_i.
  int order(const RootSystem& rs) const;
};

/// Degree map on the Chevalley basis. modulus() == 0 means a Z-grading.
class Grading {
 public:
  const LieAlgebra& algebra() const { return *lie_; }
  std::shared_ptr<const LieAlgebra> algebra_ptr() const { return lie_; }
  int modulus() const { return m_; }
  bool is_kac() const { return kac_.has_value(); }
  const std::optional<KacLabels>& kac_labels() const { return kac_; }
  const std::vector<int>& degree_vector() const { return dvec_; }

  /// Reduced into [0, m) for finite order.
  int normalize(long i) const;
  int root_degree(std::size_t root) const { return root_deg_[root]; }
  int degree(std::size_t basis_index) const;

  /// Basis indices of g_i in increasing order (roots by height then lex, Cartan last).
  const std::vector<std::size_t>& component(long i) const;
  /// Root indices of degree i (no Cartan vectors).
  const std::vector<std::size_t>& root_component(long i) const;
  /// Degrees that occur, in increasing order.
  std::vector<int> degrees() const;

  friend Grading grading_from_kac(std::shared_ptr<const LieAlgebra>, const KacLabels&);
  friend Grading grading_from_degrees(std::shared_ptr<const LieAlgebra>, const std::vector<int>&);

 private:
  void index_components();

  std::shared_ptr<const LieAlgebra> lie_;
  int m_ = 0;
  std::optional<KacLabels> kac_;
  std::vector<int> dvec_;
  std::vector<int> root_deg_;
  std::map<int, std::vector<std::size_t>> comp_;
  std::map<int, std::vector<std::size_t>> root_comp_;
};

/// Inner automorphism of order m from a Kac diagram. Throws on outer-sized, negative, all-zero or non-coprime labels.
Grading grading_from_kac(std::shared_ptr<const LieAlgebra> L, const KacLabels& labels);

/// Z-grading with deg x_alpha = sum d_i c_i(alpha).
Grading grading_from_degrees(std::shared_ptr<const LieAlgebra> L, const std::vector<int>& d);

/// Root data of g_0. Cartan elements are carried as "full values": the integers alpha_k(h) on the simple roots of g.
struct Theta0Data {
  std::vector<std::size_t> phi0;           // all roots of degree 0
  std::vector<std::size_t> phi0_positive;  // positive with respect to delta0
  std::vector<std::size_t> delta0;         // simple system, in the working order
  std::vector<int> delta0_nodes;           // Kac node (or simple index + 1) per delta0 entry; -1 if neither
  std::vector<std::vector<int>> delta0_coeffs;  // delta0[i] in the simple roots of g
  /// reflect[j][i] = <delta_i, delta_j^vee>
  std::vector<std::vector<int>> reflect;
  /// coroot[j][k] = <alpha_k, delta_j^vee>
  std::vector<std::vector<int>> coroot;
  int center_dim = 0;
  /// coweight[j]: full values of h_j in h_0 cap [g_0,g_0] with delta_i(h_j) = delta_ij
  std::vector<std::vector<Scalar>> coweight;

  std::size_t rank() const { return delta0.size(); }
  /// delta_i(h) for each simple root of g_0.
  std::vector<long> coords(const std::vector<long>& full) const;
  bool is_dominant(const std::vector<long>& full) const;
  /// Element of h_0 cap [g_0,g_0] with the given coordinates; nothing if some alpha_k value is not an integer.
  std::optional<std::vector<long>> full_from_coords(const std::vector<long>& coords) const;
};

/// delta0 order defaults to increasing Kac node (node 0 first) or increasing root index for Z-gradings.
/// A custom order lists Kac nodes (or, for Z-gradings, positions in the default order).
Theta0Data theta0_data(const Grading& G, const std::vector<int>& order = {});

/// Grading plus g_0 data, the context shared by the orbit algorithms.
struct ThetaGroup {
  Grading grading;
  Theta0Data theta0;

  const LieAlgebra& algebra() const { return grading.algebra(); }
  const RootSystem& roots() const { return grading.algebra().root_system(); }
  /// alpha(h) for a root index and full values.
  long root_value(std::size_t root, const std::vector<long>& full) const;
  long killing(const std::vector<long>& a, const std::vector<long>& b) const;
};

ThetaGroup make_theta_group(Grading G, const std::vector<int>& order = {});

}  // namespace nilclosure

#endif
