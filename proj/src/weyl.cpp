#include "nilclosure/weyl.hpp"

#include <numeric>
#include <stdexcept>

namespace nilclosure {

void reflect_node(const Theta0Data& T, int j, std::vector<long>& coords, std::vector<long>& full) {
  const long a = coords[static_cast<std::size_t>(j)];
  if (a == 0) return;
  const auto& rj = T.reflect[static_cast<std::size_t>(j)];
  for (std::size_t i = 0; i < coords.size(); ++i) coords[i] -= a * rj[i];
  const auto& cj = T.coroot[static_cast<std::size_t>(j)];
  for (std::size_t k = 0; k < full.size(); ++k) full[k] -= a * cj[k];
}

WeylOrbitIterator::WeylOrbitIterator(const Theta0Data& T, std::vector<long> h, Prune prune, std::vector<int> order)
    : T_(T), prune_(std::move(prune)), order_(std::move(order)) {
  const std::size_t r = T.rank();
  if (order_.empty()) {
    order_.resize(r);
    std::iota(order_.begin(), order_.end(), 0);
  }
  if (order_.size() != r) throw std::invalid_argument("Weyl iterator: order has wrong length");
  pos_.assign(r, -1);
  for (std::size_t p = 0; p < r; ++p) {
    if (order_[p] < 0 || static_cast<std::size_t>(order_[p]) >= r || pos_[order_[p]] >= 0)
      throw std::invalid_argument("Weyl iterator: order is not a permutation");
    pos_[order_[p]] = static_cast<int>(p);
  }
  root_.full = std::move(h);
  root_.coords = T.coords(root_.full);
  for (long a : root_.coords)
    if (a < 0) throw std::invalid_argument("Weyl iterator: h is not dominant");
}

bool WeylOrbitIterator::next() {
  if (!started_) {
    started_ = true;
    if (prune_ && prune_(root_)) {
      ++pruned_;
      return false;
    }
    stack_.push_back({root_, 0});
    return true;
  }
  const int r = static_cast<int>(order_.size());
  while (!stack_.empty()) {
    Frame& top = stack_.back();
    while (top.next < r) {
      const int p = top.next++;
      const int j = order_[static_cast<std::size_t>(p)];
      if (top.node.coords[static_cast<std::size_t>(j)] <= 0) continue;
      OrbitNode child;
      child.coords = top.node.coords;
      child.full = top.node.full;
      reflect_node(T_, j, child.coords, child.full);
      bool successor = true;
      for (int q = p + 1; q < r && successor; ++q)
        if (child.coords[static_cast<std::size_t>(order_[static_cast<std::size_t>(q)])] < 0) successor = false;
      if (!successor) continue;
      child.length = top.node.length + 1;
      child.generator = j;
      if (prune_ && prune_(child)) {
        ++pruned_;
        continue;
      }
      stack_.push_back({std::move(child), 0});
      return true;
    }
    stack_.pop_back();
  }
  return false;
}

std::vector<int> WeylOrbitIterator::word() const {
  std::vector<int> w;
  for (std::size_t i = 1; i < stack_.size(); ++i) w.push_back(stack_[i].node.generator);
  return w;
}

WeylOrbitIterator::Prune kappa_descent_prune(const ThetaGroup& G, const std::vector<long>& h_prime, long threshold) {
  return [&G, h_prime, threshold](const OrbitNode& n) { return G.killing(n.full, h_prime) < threshold; };
}

std::vector<OrbitNode> double_coset_reps(const ThetaGroup& G, const std::vector<long>& h, const std::vector<long>& h_prime,
                                         std::vector<int>* order_out) {
  const Theta0Data& T = G.theta0;
  auto c = T.coords(h_prime);
  std::vector<int> order;
  for (std::size_t i = 0; i < c.size(); ++i)
    if (c[i] != 0) order.push_back(static_cast<int>(i));
  const int free_positions = static_cast<int>(order.size());
  for (std::size_t i = 0; i < c.size(); ++i)
    if (c[i] == 0) order.push_back(static_cast<int>(i));
  if (order_out) *order_out = order;
  WeylOrbitIterator it(T, h, {}, order);
  std::vector<OrbitNode> reps;
  while (it.next()) {
    const OrbitNode& n = it.node();
    if (n.generator < 0 || it.position(n.generator) < free_positions) reps.push_back(n);
  }
  return reps;
}

int inversion_length(const ThetaGroup& G, const std::vector<long>& full) {
  int n = 0;
  for (std::size_t r : G.theta0.phi0_positive)
    if (G.root_value(r, full) < 0) ++n;
  return n;
}

}  // namespace nilclosure
