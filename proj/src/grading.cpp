#include "nilclosure/grading.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>

namespace nilclosure {

int KacLabels::order(const RootSystem& rs) const {
  int m = 0;
  for (std::size_t i = 0; i < s.size() && i < rs.marks.size(); ++i) m += rs.marks[i] * s[i];
  return m;
}

int Grading::normalize(long i) const {
  if (m_ == 0) return static_cast<int>(i);
  long r = i % m_;
  return static_cast<int>(r < 0 ? r + m_ : r);
}

int Grading::degree(std::size_t b) const { return lie_->is_cartan(b) ? 0 : root_deg_[b]; }

const std::vector<std::size_t>& Grading::component(long i) const {
  static const std::vector<std::size_t> empty;
  auto it = comp_.find(normalize(i));
  return it == comp_.end() ? empty : it->second;
}

const std::vector<std::size_t>& Grading::root_component(long i) const {
  static const std::vector<std::size_t> empty;
  auto it = root_comp_.find(normalize(i));
  return it == root_comp_.end() ? empty : it->second;
}

std::vector<int> Grading::degrees() const {
  std::vector<int> d;
  for (const auto& [k, v] : comp_) d.push_back(k);
  return d;
}

void Grading::index_components() {
  comp_.clear();
  root_comp_.clear();
  for (std::size_t r = 0; r < root_deg_.size(); ++r) {
    comp_[root_deg_[r]].push_back(r);
    root_comp_[root_deg_[r]].push_back(r);
  }
  for (int i = 0; i < lie_->rank(); ++i) comp_[0].push_back(lie_->cartan_index(i));
}

Grading grading_from_kac(std::shared_ptr<const LieAlgebra> L, const KacLabels& labels) {
  const RootSystem& rs = L->root_system();
  if (labels.s.size() != static_cast<std::size_t>(rs.rank) + 1)
    throw std::invalid_argument("Kac labels: expected " + std::to_string(rs.rank + 1) + " labels for an inner diagram of " +
                                rs.name() + " (outer diagrams are not supported)");
  int g = 0;
  for (int x : labels.s) {
    if (x < 0) throw std::invalid_argument("Kac labels must be non-negative");
    g = std::gcd(g, x);
  }
  if (g == 0) throw std::invalid_argument("Kac labels are all zero");
  if (g != 1) throw std::invalid_argument("Kac labels must have gcd 1");
  Grading G;
  G.lie_ = std::move(L);
  G.kac_ = labels;
  G.m_ = labels.order(rs);
  G.root_deg_.resize(rs.roots.size());
  for (std::size_t r = 0; r < rs.roots.size(); ++r) {
    long d = 0;
    for (int i = 0; i < rs.rank; ++i) d += static_cast<long>(rs.roots[r][i]) * labels.s[i + 1];
    G.root_deg_[r] = G.normalize(d);
  }
  G.index_components();
  return G;
}

Grading grading_from_degrees(std::shared_ptr<const LieAlgebra> L, const std::vector<int>& d) {
  const RootSystem& rs = L->root_system();
  if (d.size() != static_cast<std::size_t>(rs.rank)) throw std::invalid_argument("degree vector has wrong length");
  Grading G;
  G.lie_ = std::move(L);
  G.m_ = 0;
  G.dvec_ = d;
  G.root_deg_.resize(rs.roots.size());
  for (std::size_t r = 0; r < rs.roots.size(); ++r) {
    int s = 0;
    for (int i = 0; i < rs.rank; ++i) s += rs.roots[r][i] * d[i];
    G.root_deg_[r] = s;
  }
  G.index_components();
  return G;
}

// ---------------------------------------------------------------- g_0 data

std::vector<long> Theta0Data::coords(const std::vector<long>& full) const {
  std::vector<long> a(delta0.size(), 0);
  for (std::size_t i = 0; i < delta0.size(); ++i)
    for (std::size_t k = 0; k < full.size(); ++k) a[i] += delta0_coeffs[i][k] * full[k];
  return a;
}

bool Theta0Data::is_dominant(const std::vector<long>& full) const {
  for (long a : coords(full))
    if (a < 0) return false;
  return true;
}

std::optional<std::vector<long>> Theta0Data::full_from_coords(const std::vector<long>& c) const {
  if (c.size() != delta0.size()) throw std::invalid_argument("characteristic has wrong length");
  if (coweight.empty()) return std::vector<long>();
  std::vector<long> out(coweight[0].size());
  for (std::size_t k = 0; k < out.size(); ++k) {
    Scalar s = 0;
    for (std::size_t j = 0; j < c.size(); ++j) s += coweight[j][k] * c[j];
    if (s.get_den() != 1) return std::nullopt;
    out[k] = s.get_num().get_si();
  }
  return out;
}

namespace {

int coroot_pair(const RootSystem& rs, const Root& beta, const Root& delta) {
  return 2 * rs.inner(beta, delta) / rs.inner(delta, delta);
}

}  // namespace

Theta0Data theta0_data(const Grading& G, const std::vector<int>& order) {
  const RootSystem& rs = G.algebra().root_system();
  const int l = rs.rank;
  Theta0Data T;
  T.phi0 = G.root_component(0);

  std::vector<std::size_t> simple;  // default order
  std::vector<int> nodes;
  if (G.is_kac()) {
    const auto& s = G.kac_labels()->s;
    for (int i = 0; i <= l; ++i) {
      if (s[i] != 0) continue;
      if (i == 0) {
        simple.push_back(rs.index(rs.lowest));
      } else {
        Root r(l, 0);
        r[i - 1] = 1;
        simple.push_back(rs.index(r));
      }
      nodes.push_back(i);
    }
  } else {
    std::set<std::size_t> pos;
    for (std::size_t r : T.phi0)
      if (rs.is_positive(r)) pos.insert(r);
    for (std::size_t r : pos) {
      bool decomposable = false;
      for (std::size_t a : pos) {
        Root d(l);
        for (int i = 0; i < l; ++i) d[i] = rs.roots[r][i] - rs.roots[a][i];
        auto b = rs.find(d);
        if (b && pos.count(*b)) {
          decomposable = true;
          break;
        }
      }
      if (!decomposable) {
        simple.push_back(r);
        int node = -1;
        if (rs.height(r) == 1)
          for (int i = 0; i < l; ++i)
            if (rs.roots[r][i] == 1) node = i + 1;
        nodes.push_back(node);
      }
    }
  }

  if (order.empty()) {
    T.delta0 = simple;
    T.delta0_nodes = nodes;
  } else {
    if (order.size() != simple.size()) throw std::invalid_argument("simple root order has wrong length");
    std::vector<bool> used(simple.size(), false);
    for (int o : order) {
      std::size_t pos = simple.size();
      if (G.is_kac()) {
        for (std::size_t k = 0; k < nodes.size(); ++k)
          if (nodes[k] == o) pos = k;
      } else if (o >= 0 && static_cast<std::size_t>(o) < simple.size()) {
        pos = static_cast<std::size_t>(o);
      }
      if (pos == simple.size() || used[pos]) throw std::invalid_argument("simple root order is not a permutation of the g_0 nodes");
      used[pos] = true;
      T.delta0.push_back(simple[pos]);
      T.delta0_nodes.push_back(nodes[pos]);
    }
  }

  const std::size_t r = T.delta0.size();
  T.center_dim = l - static_cast<int>(r);
  for (std::size_t i = 0; i < r; ++i) T.delta0_coeffs.push_back(rs.roots[T.delta0[i]]);

  // Positive system: sign of the expansion in delta0.
  if (r > 0) {
    RationalMatrix M(l, r);
    for (int k = 0; k < l; ++k)
      for (std::size_t i = 0; i < r; ++i) M(k, i) = T.delta0_coeffs[i][k];
    for (std::size_t b : T.phi0) {
      std::vector<Scalar> rhs(rs.roots[b].begin(), rs.roots[b].end());
      auto c = solve_linear(M, rhs);
      if (!c) throw std::logic_error("g_0 root outside the span of its simple system");
      bool pos = false, neg = false;
      for (const auto& x : *c) {
        if (x.get_den() != 1) throw std::logic_error("g_0 root with fractional coordinates");
        pos = pos || x > 0;
        neg = neg || x < 0;
      }
      if (pos == neg) throw std::logic_error("g_0 simple system is not a base");
      if (pos) T.phi0_positive.push_back(b);
    }
  }

  T.reflect.assign(r, std::vector<int>(r));
  T.coroot.assign(r, std::vector<int>(l));
  for (std::size_t j = 0; j < r; ++j) {
    const Root& dj = rs.roots[T.delta0[j]];
    for (std::size_t i = 0; i < r; ++i) T.reflect[j][i] = coroot_pair(rs, rs.roots[T.delta0[i]], dj);
    for (int k = 0; k < l; ++k) {
      Root ak(l, 0);
      ak[k] = 1;
      T.coroot[j][k] = coroot_pair(rs, ak, dj);
    }
  }

  // Coweights inside the span of the coroots delta_m^vee.
  if (r > 0) {
    RationalMatrix A(r, r);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t m = 0; m < r; ++m) A(i, m) = T.reflect[m][i];
    for (std::size_t j = 0; j < r; ++j) {
      std::vector<Scalar> e(r, Scalar(0));
      e[j] = 1;
      auto c = solve_linear(A, e);
      if (!c) throw std::logic_error("singular g_0 Cartan matrix");
      std::vector<Scalar> full(l, Scalar(0));
      for (int k = 0; k < l; ++k)
        for (std::size_t m = 0; m < r; ++m) full[k] += (*c)[m] * T.coroot[m][k];
      T.coweight.push_back(full);
    }
  }
  return T;
}

long ThetaGroup::root_value(std::size_t root, const std::vector<long>& full) const {
  const Root& r = roots().roots[root];
  long s = 0;
  for (std::size_t i = 0; i < r.size(); ++i) s += r[i] * full[i];
  return s;
}

long ThetaGroup::killing(const std::vector<long>& a, const std::vector<long>& b) const {
  return algebra().killing_values(a, b);
}

ThetaGroup make_theta_group(Grading G, const std::vector<int>& order) {
  Theta0Data T = theta0_data(G, order);
  return ThetaGroup{std::move(G), std::move(T)};
}

}  // namespace nilclosure
