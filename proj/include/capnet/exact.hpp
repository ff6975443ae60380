// Copyright 2026 The capnet Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Exhaustive solvers and property checkers. Everything here enumerates
// subsets by ascending bitmask and refuses inputs beyond the budget.

#ifndef CAPNET_EXACT_HPP_
#define CAPNET_EXACT_HPP_

#include <bit>
#include <chrono>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "capnet/capsndp.hpp"
#include "capnet/errors.hpp"
#include "capnet/graph.hpp"
#include "capnet/submodular.hpp"
#include "capnet/tree.hpp"
#include "capnet/up2p.hpp"

namespace capnet {

struct BruteForceBudget {
  std::size_t max_edges = 16;
  std::size_t max_ground = 12;
  std::optional<std::chrono::milliseconds> wall_clock;
};

struct ExactResult {
  Cost cost = 0;
  EdgeSubset edges;
};

namespace detail {

class Guard {
 public:
  explicit Guard(const BruteForceBudget& b)
      : budget_(b), start_(std::chrono::steady_clock::now()) {}

  void require_edges(std::size_t m, const char* what) const {
    if (m > budget_.max_edges)
      throw BudgetExceeded(std::string(what) + ": " + std::to_string(m) + " edges exceed the budget");
  }
  void require_ground(std::size_t n, const char* what) const {
    if (n > budget_.max_ground)
      throw BudgetExceeded(std::string(what) + ": ground set of " + std::to_string(n) +
                           " exceeds the budget");
  }
  void tick() {
    if (!budget_.wall_clock || (++ticks_ & 1023) != 0) return;
    if (std::chrono::steady_clock::now() - start_ > *budget_.wall_clock)
      throw BudgetExceeded("wall-clock budget exhausted");
  }

 private:
  const BruteForceBudget& budget_;
  std::chrono::steady_clock::time_point start_;
  std::uint64_t ticks_ = 0;
};

template <typename Ids>
EdgeSubset from_mask(std::uint64_t mask, const Ids& ids) {
  std::vector<EdgeId> out;
  for (std::size_t i = 0; i < ids.size(); ++i)
    if (mask >> i & 1) out.push_back(ids[i]);
  return EdgeSubset(std::move(out));
}

template <typename Ids>
Cost mask_cost(std::uint64_t mask, const Ids& ids, const std::vector<Cost>& cost_of) {
  Cost c = 0;
  for (std::size_t i = 0; i < ids.size(); ++i)
    if (mask >> i & 1) c += cost_of[i];
  return c;
}

}  // namespace detail

// Cheapest feasible edge set; ties go to the smallest bitmask.
inline ExactResult brute_up2p(const Up2pInstance& inst, const BruteForceBudget& budget = {}) {
  inst.validate();
  detail::Guard guard(budget);
  const std::size_t m = inst.graph.edge_count();
  guard.require_edges(m, "brute_up2p");
  std::vector<EdgeId> ids(m);
  std::vector<Cost> costs(m);
  for (EdgeId e = 0; e < m; ++e) ids[e] = e, costs[e] = inst.graph.edge(e).cost;
  std::optional<ExactResult> best;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
    guard.tick();
    const Cost c = detail::mask_cost(mask, ids, costs);
    if (best && c >= best->cost) continue;
    EdgeSubset s = detail::from_mask(mask, ids);
    if (detail::up2p_ok(inst, s)) best = ExactResult{c, std::move(s)};
  }
  if (!best) throw InfeasibleError("brute_up2p: no feasible edge set");
  return *best;
}

// Cheapest set of cost edges S such that S plus every capacity edge passes
// verify. The returned edges include the capacity edges.
inline ExactResult brute_conncap(const ConnCapSndpInstance& inst,
                                 const BruteForceBudget& budget = {}) {
  inst.validate();
  detail::Guard guard(budget);
  std::vector<EdgeId> ids;
  std::vector<Cost> costs;
  for (EdgeId e = 0; e < inst.graph.edge_count(); ++e) {
    if (inst.classes[e] != EdgeClass::kCost) continue;
    ids.push_back(e);
    costs.push_back(inst.graph.edge(e).cost);
  }
  guard.require_edges(ids.size(), "brute_conncap");
  const EdgeSubset cap = inst.capacity_edges();
  std::optional<ExactResult> best;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << ids.size()); ++mask) {
    guard.tick();
    const Cost c = detail::mask_cost(mask, ids, costs);
    if (best && c >= best->cost) continue;
    EdgeSubset s = detail::from_mask(mask, ids);
    s.merge(cap);
    if (verify(inst, s).feasible) best = ExactResult{c, std::move(s)};
  }
  if (!best) throw InfeasibleError("brute_conncap: no feasible edge set");
  return *best;
}

// Cheapest connected edge set touching the root and every group.
inline ExactResult brute_gst(const GstInstance& gst, const BruteForceBudget& budget = {}) {
  gst.validate();
  detail::Guard guard(budget);
  const std::size_t m = gst.graph.edge_count();
  guard.require_edges(m, "brute_gst");
  std::vector<EdgeId> ids(m);
  std::vector<Cost> costs(m);
  for (EdgeId e = 0; e < m; ++e) ids[e] = e, costs[e] = gst.graph.edge(e).cost;
  std::optional<ExactResult> best;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
    guard.tick();
    const Cost c = detail::mask_cost(mask, ids, costs);
    if (best && c >= best->cost) continue;
    EdgeSubset s = detail::from_mask(mask, ids);
    if (gst_feasible(gst, s)) best = ExactResult{c, std::move(s)};
  }
  if (!best) throw InfeasibleError("brute_gst: some group cannot reach the root");
  return *best;
}

// Second, independent optimum: over vertex sets W containing the root and
// hitting every group whose induced subgraph is connected, the cheapest
// spanning tree of that subgraph.
inline Cost brute_gst_by_vertices(const GstInstance& gst, const BruteForceBudget& budget = {}) {
  gst.validate();
  detail::Guard guard(budget);
  const std::size_t n = gst.graph.node_count();
  guard.require_ground(n, "brute_gst_by_vertices");
  std::optional<Cost> best;
  for (std::uint64_t w = 0; w < (std::uint64_t{1} << n); ++w) {
    guard.tick();
    if (!(w >> gst.root & 1)) continue;
    bool hits = true;
    for (const auto& group : gst.groups) {
      bool any = false;
      for (NodeId v : group) any = any || (w >> v & 1);
      hits = hits && any;
    }
    if (!hits) continue;
    EdgeSubset induced;
    for (EdgeId e = 0; e < gst.graph.edge_count(); ++e)
      if ((w >> gst.graph.edge(e).a & 1) && (w >> gst.graph.edge(e).b & 1)) induced.insert(e);
    const EdgeSubset tree = spanning_forest(gst.graph, induced);
    if (tree.size() + 1 != static_cast<std::size_t>(std::popcount(w))) continue;
    const Cost c = tree.total_cost(gst.graph);
    if (!best || c < *best) best = c;
  }
  if (!best) throw InfeasibleError("brute_gst_by_vertices: some group cannot reach the root");
  return *best;
}

// Cheapest subtree hanging from r (edges given as child ids) whose gain under
// f is at least z; ties go to the larger gain, then to the smallest bitmask.
// With r = root and z = f_max this is the tree cover optimum.
inline std::optional<DensityReport> min_cost_augment(const RootedTree& t, NodeId r,
                                                     std::int64_t z,
                                                     const SubmodularOracle& f,
                                                     const BruteForceBudget& budget = {}) {
  detail::Guard guard(budget);
  std::vector<NodeId> ids;
  for (NodeId v = 1; v < t.node_count(); ++v)
    if (v != r && t.is_ancestor(r, v)) ids.push_back(v);
  guard.require_edges(ids.size(), "min_cost_augment");
  std::vector<Cost> costs;
  for (NodeId v : ids) costs.push_back(t.cost(v));
  std::optional<DensityReport> best;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << ids.size()); ++mask) {
    guard.tick();
    const Cost c = detail::mask_cost(mask, ids, costs);
    if (best && c > best->cost) continue;
    EdgeSubset s = detail::from_mask(mask, ids);
    if (!t.is_subtree_at(r, s)) continue;
    const std::int64_t gain = value_of(t, f, s);
    if (gain < z) continue;
    if (!best || c < best->cost || gain > best->gain) best = DensityReport{std::move(s), c, gain};
  }
  return best;
}

inline ExactResult brute_stc(const RootedTree& t, const SubmodularOracle& f,
                             const BruteForceBudget& budget = {}) {
  auto r = min_cost_augment(t, t.root(), f.f_max(), f, budget);
  if (!r) throw InfeasibleError("brute_stc: no subtree attains the maximum value");
  return {r->cost, std::move(r->edges)};
}

struct SubmodularCheck {
  bool ok = true;
  std::string failed;  // "normalization", "monotonicity", "submodularity",
                       // "improvement independence"
  Membership a, b;     // counterexample: (A, B) or (S, T)
};

// Exhaustive over all subsets of the ground set: f(empty) = 0,
// f(S) <= f(S + x), f(A) + f(B) >= f(A n B) + f(A u B), and for S c T the
// singleton gains over T \ S sum to at least f(T) - f(S).
inline SubmodularCheck check_submodular(const SubmodularOracle& f,
                                        const BruteForceBudget& budget = {}) {
  detail::Guard guard(budget);
  const std::size_t n = f.ground_size();
  guard.require_ground(n, "check_submodular");
  const std::uint64_t full = (std::uint64_t{1} << n) - 1;
  auto as_set = [n](std::uint64_t mask) {
    Membership m(n, false);
    for (std::size_t i = 0; i < n; ++i) m[i] = mask >> i & 1;
    return m;
  };
  std::vector<std::int64_t> val(full + 1);
  for (std::uint64_t s = 0; s <= full; ++s) val[s] = f.evaluate(as_set(s));

  SubmodularCheck out;
  auto fail = [&](const char* what, std::uint64_t a, std::uint64_t b) {
    out = {false, what, as_set(a), as_set(b)};
    return out;
  };
  if (val[0] != 0) return fail("normalization", 0, 0);
  for (std::uint64_t s = 0; s <= full; ++s)
    for (std::size_t x = 0; x < n; ++x)
      if (val[s | (std::uint64_t{1} << x)] < val[s]) return fail("monotonicity", s, s | (std::uint64_t{1} << x));
  for (std::uint64_t a = 0; a <= full; ++a) {
    for (std::uint64_t b = 0; b <= full; ++b) {
      guard.tick();
      if (val[a] + val[b] < val[a & b] + val[a | b]) return fail("submodularity", a, b);
    }
  }
  for (std::uint64_t t = 0; t <= full; ++t) {
    // Every S c T, by submask enumeration.
    for (std::uint64_t s = t;; s = (s - 1) & t) {
      guard.tick();
      std::int64_t gains = 0;
      for (std::size_t x = 0; x < n; ++x)
        if ((t & ~s) >> x & 1) gains += val[s | (std::uint64_t{1} << x)] - val[s];
      if (gains < val[t] - val[s]) return fail("improvement independence", s, t);
      if (s == 0) break;
    }
  }
  return out;
}

}  // namespace capnet

#endif  // CAPNET_EXACT_HPP_
