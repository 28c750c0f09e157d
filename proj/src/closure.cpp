#include "nilclosure/closure.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <map>
#include <mutex>
#include <random>
#include <set>
#include <thread>

namespace nilclosure {

namespace {

using Vec = LieAlgebra::Vec;

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::vector<Scalar> small_point(const Subspace& U, std::mt19937_64& rng, int bound) {
  std::uniform_int_distribution<int> d(1, 2 * bound);
  std::vector<Scalar> u(U.ambient(), Scalar(0));
  for (std::size_t i = 0; i < u.size(); ++i)
    if (U.test(i)) {
      const int x = d(rng);
      u[i] = x <= bound ? x - bound - 1 : x - bound;
    }
  return u;
}

}  // namespace

PreparedOrbit prepare_orbit(const ThetaGroup& G, int id, HomogeneousTriple t) {
  PreparedOrbit o;
  o.id = id;
  o.dim = orbit_dimension(G, t);
  o.centralizer = centralizer_dims(G, t);
  o.action = std::make_shared<const ActionMatrix>(action_matrix(G, t.h));
  o.triple = std::move(t);
  return o;
}

std::uint64_t pair_seed(std::uint64_t master, int upper, int lower) {
  const std::uint64_t key = (static_cast<std::uint64_t>(static_cast<std::uint32_t>(upper)) << 32) |
                            static_cast<std::uint32_t>(lower);
  return splitmix(splitmix(master) ^ key);
}

Decision decide_inclusion(const ThetaGroup& G, const PreparedOrbit& lower, const PreparedOrbit& upper, std::uint64_t seed,
                          const ClosureOptions& opts) {
  Decision d;
  d.upper = upper.id;
  d.lower = lower.id;
  Refutation& ref = d.refutation;
  if (lower.triple.h.size() != upper.triple.h.size() || lower.centralizer.size() != upper.centralizer.size())
    throw std::invalid_argument("decide_inclusion: orbits come from different gradings");
  if (lower.dim >= upper.dim) {
    ref.reason = "dimension";
    return d;
  }
  for (std::size_t k = 0; k < lower.centralizer.size(); ++k)
    if (lower.centralizer[k] < upper.centralizer[k]) {
      ref.reason = "centralizer";
      return d;
    }
  const auto& hp = lower.triple.h;
  const long kpp = G.killing(hp, hp);
  if (G.killing(hp, upper.triple.h) < kpp) {
    ref.reason = "kappa";
    return d;
  }

  const ActionMatrix& A = *lower.action;
  const auto hpc = G.theta0.coords(hp);
  std::mt19937_64 rng(seed);
  std::vector<Subspace> refuted;

  auto try_point = [&](const std::vector<Scalar>& u, const WeylOrbitIterator& it) {
    Vec f;
    if (!orbit_membership(G, lower.triple, from_columns(G, A, u), &f)) return false;
    d.included = true;
    d.witness = Witness{it.word(), it.node().full, from_columns(G, A, u), std::move(f)};
    return true;
  };

  WeylOrbitIterator it(G.theta0, upper.triple.h, kappa_descent_prune(G, hp, kpp));
  while (it.next()) {
    const OrbitNode& node = it.node();
    ++ref.visited;
    // s_i fixes h', so U(s_i w h) is a translate of the parent's, which was refuted.
    if (node.generator >= 0 && hpc[static_cast<std::size_t>(node.generator)] == 0) {
      ++ref.stabilizer_skipped;
      continue;
    }
    Subspace U(A.s());
    for (std::size_t j = 0; j < A.s(); ++j)
      if (G.root_value(A.columns[j], node.full) >= 2) U.set(j);
    if (U.empty()) {
      ++ref.empty;
      continue;
    }
    if (std::any_of(refuted.begin(), refuted.end(), [&](const Subspace& c) { return U.subset_of(c); })) {
      ++ref.cached;
      continue;
    }
    std::vector<Scalar> probe;
    for (int a = 0; a < opts.membership_attempts; ++a) {
      auto u = small_point(U, rng, opts.coeff_bound);
      if (try_point(u, it)) return d;
      if (probe.empty()) probe = std::move(u);
    }
    if (opts.normalizer_check && !probe.empty() && normalizer_tangent_check(G, A, U, probe)) {
      ++ref.normalizer;
      refuted.push_back(U);
      continue;
    }
    DenseEvidence ev = dense_intersection_nonempty(G, A, U, rng(), opts.stratum);
    if (ev.nonempty) {
      if (!ev.point.empty()) {
        std::vector<Scalar> u(ev.point.begin(), ev.point.end());
        if (try_point(u, it)) return d;
      }
      for (int a = 0; a < 64; ++a)
        if (try_point(small_point(U, rng, opts.coeff_bound * (2 + a)), it)) return d;
      throw std::logic_error("dense intersection reported without a point in the orbit");
    }
    if (!ev.exact) d.exact = false;
    ref.evidence.push_back(std::move(ev));
    refuted.push_back(U);
  }
  ref.pruned = it.pruned();
  ref.reason = "exhausted";
  return d;
}

bool verify_witness(const ThetaGroup& G, const PreparedOrbit& lower, const PreparedOrbit& upper, const Witness& w) {
  const LieAlgebra& L = G.algebra();
  const auto& hp = lower.triple.h;
  std::vector<long> full = upper.triple.h;
  auto coords = G.theta0.coords(full);
  for (int j : w.word) {
    if (j < 0 || static_cast<std::size_t>(j) >= coords.size()) return false;
    reflect_node(G.theta0, j, coords, full);
  }
  if (full != w.wh) return false;
  for (std::size_t i = 0; i < w.u.size(); ++i) {
    if (w.u[i] == 0) continue;
    if (L.is_cartan(i) || G.grading.degree(i) != G.grading.normalize(1)) return false;
    if (G.root_value(i, hp) != 2 || G.root_value(i, w.wh) < 2) return false;
  }
  for (std::size_t i = 0; i < w.f.size(); ++i)
    if (w.f[i] != 0 && (L.is_cartan(i) || G.grading.degree(i) != G.grading.normalize(-1))) return false;
  std::vector<Scalar> hv(hp.begin(), hp.end());
  const Vec H = L.cartan_vector(hv);
  Vec hf = L.bracket(H, w.f);
  for (std::size_t i = 0; i < hf.size(); ++i)
    if (hf[i] != -2 * w.f[i]) return false;
  return L.bracket(w.u, w.f) == H;
}

std::vector<std::pair<int, int>> transitive_reduction(const std::vector<int>& ids,
                                                      const std::vector<std::pair<int, int>>& relation) {
  std::set<std::pair<int, int>> rel(relation.begin(), relation.end());
  std::vector<std::pair<int, int>> out;
  for (const auto& [a, c] : relation) {
    bool covered = true;
    for (int b : ids)
      if (b != a && b != c && rel.count({a, b}) && rel.count({b, c})) {
        covered = false;
        break;
      }
    if (covered) out.emplace_back(a, c);
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

void check_acyclic(std::size_t n, const std::vector<std::vector<char>>& incl, const std::vector<PreparedOrbit>& orbits) {
  std::vector<int> color(n, 0);
  std::vector<std::pair<std::size_t, std::size_t>> stack;
  for (std::size_t s = 0; s < n; ++s) {
    if (color[s]) continue;
    stack.push_back({s, 0});
    color[s] = 1;
    while (!stack.empty()) {
      auto& [v, next] = stack.back();
      if (next == n) {
        color[v] = 2;
        stack.pop_back();
        continue;
      }
      const std::size_t w = next++;
      if (!incl[v][w]) continue;
      if (color[w] == 1)
        throw InconsistencyError("closure relation has a cycle through orbits " + std::to_string(orbits[v].id) +
                                 " and " + std::to_string(orbits[w].id));
      if (color[w] == 0) {
        color[w] = 1;
        stack.push_back({w, 0});
      }
    }
  }
}

}  // namespace

HasseDiagram build_hasse(const ThetaGroup& G, const std::vector<PreparedOrbit>& orbits, std::uint64_t seed,
                         const HasseOptions& opts, std::vector<Decision>* decisions) {
  const std::size_t n = orbits.size();
  {
    std::set<int> ids;
    for (const auto& o : orbits)
      if (!ids.insert(o.id).second || o.id == 0) throw std::invalid_argument("orbit ids must be distinct and nonzero");
  }
  std::vector<std::pair<std::size_t, std::size_t>> pairs;  // (upper, lower)
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      if (a != b) pairs.push_back({a, b});
  std::vector<Decision> results(pairs.size());

  auto run = [&](const std::vector<std::size_t>& which, const ClosureOptions& co) {
    std::atomic<std::size_t> next{0};
    std::exception_ptr err;
    std::mutex mu;
    auto worker = [&] {
      while (true) {
        const std::size_t k = next.fetch_add(1);
        if (k >= which.size()) return;
        const auto [a, b] = pairs[which[k]];
        try {
          results[which[k]] = decide_inclusion(G, orbits[b], orbits[a], pair_seed(seed, orbits[a].id, orbits[b].id), co);
        } catch (...) {
          std::lock_guard<std::mutex> lock(mu);
          if (!err) err = std::current_exception();
          next = which.size();
        }
      }
    };
    const unsigned jobs = std::max(1u, opts.jobs);
    if (jobs == 1) {
      worker();
    } else {
      std::vector<std::thread> pool;
      for (unsigned t = 0; t < jobs; ++t) pool.emplace_back(worker);
      for (auto& t : pool) t.join();
    }
    if (err) std::rethrow_exception(err);
  };

  std::vector<std::size_t> all(pairs.size());
  for (std::size_t k = 0; k < all.size(); ++k) all[k] = k;
  run(all, opts.closure);

  HasseDiagram D;
  D.decisions = pairs.size();
  std::vector<std::vector<char>> incl(n, std::vector<char>(n, 0));
  std::vector<std::vector<std::size_t>> where(n, std::vector<std::size_t>(n, 0));
  auto refresh = [&] {
    for (std::size_t k = 0; k < pairs.size(); ++k) {
      incl[pairs[k].first][pairs[k].second] = results[k].included;
      where[pairs[k].first][pairs[k].second] = k;
    }
  };
  refresh();
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b)
      if (incl[a][b] && incl[b][a])
        throw InconsistencyError("orbits " + std::to_string(orbits[a].id) + " and " + std::to_string(orbits[b].id) +
                                 " contain each other");
  check_acyclic(n, incl, orbits);

  // Transitivity; a failure can only come from a probabilistic refutation, so redo those exactly.
  auto violations = [&] {
    std::set<std::size_t> redo;
    bool any = false;
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) {
        if (!incl[a][b]) continue;
        for (std::size_t c = 0; c < n; ++c)
          if (incl[b][c] && !incl[a][c] && c != a) {
            any = true;
            if (!results[where[a][c]].exact) redo.insert(where[a][c]);
          }
      }
    return std::make_pair(any, redo);
  };
  for (auto [any, redo] = violations(); any; std::tie(any, redo) = violations()) {
    if (redo.empty()) throw InconsistencyError("computed closure relation is not transitive");
    ClosureOptions exact = opts.closure;
    exact.stratum.strategy = RankStrategy::exact;
    run(std::vector<std::size_t>(redo.begin(), redo.end()), exact);
    D.escalations += redo.size();
    refresh();
    check_acyclic(n, incl, orbits);
  }

  for (std::size_t a = 0; a < n; ++a) {
    D.nodes.push_back({orbits[a].id, G.theta0.coords(orbits[a].triple.h), orbits[a].dim});
    for (std::size_t b = 0; b < n; ++b)
      if (a != b && incl[a][b]) D.closure_pairs.emplace_back(orbits[a].id, orbits[b].id);
  }
  for (const auto& r : results)
    if (!r.exact) D.exact = false;
  if (opts.include_zero_orbit) {
    D.nodes.push_back({0, std::vector<long>(G.theta0.rank(), 0), 0});
    for (const auto& o : orbits) D.closure_pairs.emplace_back(o.id, 0);
  }
  std::stable_sort(D.nodes.begin(), D.nodes.end(), [](const HasseNode& x, const HasseNode& y) {
    return x.dim != y.dim ? x.dim > y.dim : x.id < y.id;
  });
  std::sort(D.closure_pairs.begin(), D.closure_pairs.end());
  std::vector<int> ids;
  for (const auto& v : D.nodes) ids.push_back(v.id);
  D.covering_edges = transitive_reduction(ids, D.closure_pairs);
  if (decisions) *decisions = std::move(results);
  return D;
}

}  // namespace nilclosure
