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

// Unbalanced point-to-point connection: choose edges so that every connected
// component of the chosen subgraph has nonnegative total charge.
//
//   solve_zero_balance   primal-dual on {S : b(S) != 0}, b(V) = 0
//   solve_tree_exact     dynamic program over component charges on trees
//   solve_general        tree embedding of the charged nodes + tree DP
//   solve_small_surplus  two phases: a zero-balance auxiliary instance with a
//                        charge sink, then solve_general on the contraction

#ifndef CAPNET_UP2P_HPP_
#define CAPNET_UP2P_HPP_

#include <algorithm>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "capnet/embedding.hpp"
#include "capnet/errors.hpp"
#include "capnet/graph.hpp"
#include "capnet/rational.hpp"
#include "capnet/tree.hpp"

namespace capnet {

struct Up2pInstance {
  Graph graph;
  std::vector<std::int64_t> charges;

  void validate() const {
    if (charges.size() != graph.node_count()) throw UsageError("one charge per node");
  }
  std::int64_t total_charge() const {
    std::int64_t s = 0;
    for (auto b : charges) s += b;
    return s;
  }
  std::int64_t charge_of(std::span<const NodeId> nodes) const {
    std::int64_t s = 0;
    for (NodeId v : nodes) s += charges[v];
    return s;
  }
  // V+ u V-, ascending.
  std::vector<NodeId> charged_nodes() const {
    std::vector<NodeId> out;
    for (NodeId v = 0; v < charges.size(); ++v)
      if (charges[v] != 0) out.push_back(v);
    return out;
  }
};

struct ComponentCharge {
  std::vector<NodeId> nodes;
  std::int64_t charge = 0;
};

struct Up2pReport {
  std::vector<ComponentCharge> components;
  std::vector<std::size_t> offending;  // indices into components
  bool feasible = false;
};

inline Up2pReport verify(const Up2pInstance& inst, const EdgeSubset& chosen) {
  inst.validate();
  const Components comps = connected_components(inst.graph, chosen);
  Up2pReport rep;
  for (const auto& members : comps.members) {
    rep.components.push_back({members, inst.charge_of(members)});
    if (rep.components.back().charge < 0) rep.offending.push_back(rep.components.size() - 1);
  }
  rep.feasible = rep.offending.empty();
  return rep;
}

namespace detail {

// Cheap check without building the report.
inline bool up2p_ok(const Up2pInstance& inst, const EdgeSubset& chosen) {
  DisjointSets dsu(inst.graph.node_count());
  for (EdgeId e : chosen) dsu.unite(inst.graph.edge(e).a, inst.graph.edge(e).b);
  std::vector<std::int64_t> sum(inst.graph.node_count(), 0);
  for (NodeId v = 0; v < inst.graph.node_count(); ++v) sum[dsu.find(v)] += inst.charges[v];
  return std::all_of(sum.begin(), sum.end(), [](std::int64_t s) { return s >= 0; });
}

// Drops edges, most expensive first (ties: higher index first), while the
// instance stays feasible.
inline EdgeSubset prune_up2p(const Up2pInstance& inst, EdgeSubset edges) {
  std::vector<EdgeId> order(edges.begin(), edges.end());
  std::stable_sort(order.begin(), order.end(), [&](EdgeId x, EdgeId y) {
    const Cost cx = inst.graph.edge(x).cost, cy = inst.graph.edge(y).cost;
    return cx != cy ? cx > cy : x > y;
  });
  for (EdgeId e : order) {
    EdgeSubset trial = edges;
    trial.erase(e);
    if (up2p_ok(inst, trial)) edges = std::move(trial);
  }
  return edges;
}

}  // namespace detail

// Every component of the whole graph has nonnegative charge.
inline bool is_feasible(const Up2pInstance& inst) {
  inst.validate();
  return detail::up2p_ok(inst, all_edges(inst.graph));
}

// For X, Y with b(X), b(Y) != 0: either X n Y and X u Y both have nonzero
// charge, or X \ Y and Y \ X both do. Sets are bitmasks over node ids.
inline bool satisfies_uncrossing(std::span<const std::int64_t> charges, std::uint64_t x,
                                 std::uint64_t y) {
  auto b = [&](std::uint64_t s) {
    std::int64_t t = 0;
    for (std::size_t v = 0; v < charges.size(); ++v)
      if (s >> v & 1) t += charges[v];
    return t;
  };
  if (b(x) == 0 || b(y) == 0) return true;
  if (b(x & y) != 0 && b(x | y) != 0) return true;
  return b(x & ~y) != 0 && b(y & ~x) != 0;
}

// ---------------------------------------------------------------------------
// Primal-dual for b(V) = 0.

struct DualSet {
  std::vector<NodeId> members;
  Rational y = 0;
};

struct DualState {
  std::vector<DualSet> sets;       // every set that was ever active; laminar
  std::vector<EdgeId> added;       // edges in the order they went tight
  std::vector<Rational> times;     // growth step before each addition
  std::vector<Rational> load;      // per node: sum of y over sets containing it

  Rational dual_total() const {
    Rational s = 0;
    for (const DualSet& d : sets) s += d.y;
    return s;
  }
};

struct PrimalDualResult {
  EdgeSubset edges;
  DualState dual;
};

// Grows the duals of all components with nonzero charge at the same rate,
// adds the first edge to go tight (lowest index on ties), merges, and repeats
// until every component has zero charge; then deletes edges in reverse order
// of addition when feasibility survives. `observer` sees the state after each
// addition.
inline PrimalDualResult primal_dual(
    const Up2pInstance& inst,
    const std::function<void(const DualState&)>& observer = nullptr) {
  inst.validate();
  if (inst.total_charge() != 0) throw UsageError("primal_dual: total charge must be zero");
  if (!is_feasible(inst)) throw InfeasibleError("some component of the graph has negative charge");

  const Graph& g = inst.graph;
  const std::size_t n = g.node_count();
  DisjointSets dsu(n);
  std::vector<std::int64_t> charge(inst.charges);  // indexed by dsu root
  std::vector<std::size_t> set_of(n, kNone);      // dsu root -> dual set index
  PrimalDualResult out;
  DualState& st = out.dual;
  st.load.assign(n, 0);

  auto set_for = [&](std::size_t root) {
    if (set_of[root] == kNone) {
      set_of[root] = st.sets.size();
      DualSet d;
      for (NodeId v = 0; v < n; ++v)
        if (dsu.find(v) == root) d.members.push_back(v);
      st.sets.push_back(std::move(d));
    }
    return set_of[root];
  };

  std::vector<bool> in_h(g.edge_count(), false);
  for (;;) {
    bool any_active = false;
    for (NodeId v = 0; v < n; ++v)
      if (dsu.find(v) == v && charge[v] != 0) any_active = true;
    if (!any_active) break;

    std::optional<Rational> best;
    EdgeId best_edge = kNone;
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
      if (in_h[e]) continue;
      const std::size_t ra = dsu.find(g.edge(e).a), rb = dsu.find(g.edge(e).b);
      if (ra == rb) continue;
      const int k = (charge[ra] != 0) + (charge[rb] != 0);
      if (k == 0) continue;
      const Rational slack =
          make_rational(g.edge(e).cost) - st.load[g.edge(e).a] - st.load[g.edge(e).b];
      const Rational t = slack / k;
      if (!best || t < *best) best = t, best_edge = e;
    }
    if (best_edge == kNone) throw InfeasibleError("active component cannot grow");

    const Rational step = *best;
    for (NodeId v = 0; v < n; ++v) {
      const std::size_t r = dsu.find(v);
      if (charge[r] != 0) st.load[v] += step;
    }
    for (NodeId v = 0; v < n; ++v)
      if (dsu.find(v) == v && charge[v] != 0) st.sets[set_for(v)].y += step;

    const std::size_t ra = dsu.find(g.edge(best_edge).a), rb = dsu.find(g.edge(best_edge).b);
    const std::int64_t merged = charge[ra] + charge[rb];
    dsu.unite(ra, rb);
    const std::size_t r = dsu.find(ra);
    set_of[ra] = set_of[rb] = kNone;
    set_of[r] = kNone;
    charge[r] = merged;
    in_h[best_edge] = true;
    st.added.push_back(best_edge);
    st.times.push_back(step);
    if (observer) observer(st);
  }

  EdgeSubset h(st.added);
  for (auto it = st.added.rbegin(); it != st.added.rend(); ++it) {
    EdgeSubset trial = h;
    trial.erase(*it);
    if (detail::up2p_ok(inst, trial)) h = std::move(trial);
  }
  out.edges = std::move(h);
  return out;
}

inline EdgeSubset solve_zero_balance(const Up2pInstance& inst) {
  return primal_dual(inst).edges;
}

// ---------------------------------------------------------------------------
// Exact dynamic program on trees and forests.

inline constexpr std::int64_t kDefaultChargeRangeCap = 1'000'000;

// Table T(v, B): cheapest edge set inside the subtree of v whose v-component
// has charge exactly B while every other component has charge >= 0. The
// forest is first made binary: a node with p > 2 children keeps its first
// child and hands the rest to a zero-cost, zero-charge gadget node, and so on
// down a chain. Each component is rooted at its smallest node.
class TreeDp {
 public:
  static constexpr Cost kInfinite = std::numeric_limits<Cost>::max();

  explicit TreeDp(const Up2pInstance& inst, std::int64_t range_cap = kDefaultChargeRangeCap)
  {
    inst.validate();
    const Graph& g = inst.graph;
    if (g.edge_count() + connected_components(g).members.size() != g.node_count() ||
        spanning_forest(g, all_edges(g)).size() != g.edge_count()) {
      throw UsageError("solve_tree_exact: graph is not a forest");
    }
    for (auto b : inst.charges) (b < 0 ? lo_ : hi_) += b;
    if (hi_ - lo_ > range_cap) throw UsageError("solve_tree_exact: charge range exceeds cap");
    binarize(inst);
    fill();
  }

  // Binary forest: node ids >= original node count are gadgets.
  const Graph& binary_graph() const { return bin_; }
  // Original edge behind each binary edge, or kNone for gadget edges.
  const std::vector<EdgeId>& original_edge() const { return orig_; }
  const std::vector<std::int64_t>& binary_charges() const { return bin_charge_; }
  const std::vector<NodeId>& roots() const { return roots_; }
  std::int64_t min_charge() const { return lo_; }
  std::int64_t max_charge() const { return hi_; }
  // Nodes of the binary subtree at v.
  std::vector<NodeId> subtree(NodeId v) const {
    std::vector<NodeId> out, stack{v};
    while (!stack.empty()) {
      const NodeId x = stack.back();
      stack.pop_back();
      out.push_back(x);
      for (const Kid& k : kids_[x]) stack.push_back(k.node);
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  Cost value(NodeId v, std::int64_t b) const {
    if (b < lo_ || b > hi_) return kInfinite;
    return final_[v][b - lo_];
  }

  // Binary edges realizing value(v, b).
  EdgeSubset reconstruct(NodeId v, std::int64_t b) const {
    if (value(v, b) == kInfinite) throw InfeasibleError("no subgraph with that charge");
    EdgeSubset out;
    collect(v, b, out);
    return out;
  }

  // Optimal edges of the original graph and their cost.
  std::pair<EdgeSubset, Cost> solve() const {
    EdgeSubset out;
    Cost total = 0;
    for (NodeId r : roots_) {
      std::int64_t best_b = 0;
      Cost best = kInfinite;
      for (std::int64_t b = 0; b <= hi_; ++b)
        if (value(r, b) < best) best = value(r, b), best_b = b;
      if (best == kInfinite) throw InfeasibleError("tree component with negative charge");
      total += best;
      // Gadget edges are contracted away: each original component is a union
      // of binary components, so charges stay nonnegative.
      for (EdgeId e : reconstruct(r, best_b))
        if (orig_[e] != kNone) out.insert(orig_[e]);
    }
    return {std::move(out), total};
  }

 private:
  struct Kid {
    NodeId node;
    EdgeId edge;  // binary edge id
  };
  struct Back {
    std::int64_t prev = 0;   // accumulated charge before this child
    std::int64_t child = 0;  // child's charge (meaningful when picked)
    bool picked = false;
  };

  void binarize(const Up2pInstance& inst) {
    const Graph& g = inst.graph;
    const std::size_t n = g.node_count();
    bin_ = Graph(n);
    bin_charge_ = inst.charges;
    kids_.assign(n, {});
    std::vector<bool> seen(n, false);
    for (NodeId s = 0; s < n; ++s) {
      if (seen[s]) continue;
      roots_.push_back(s);
      seen[s] = true;
      std::vector<NodeId> stack{s};
      while (!stack.empty()) {
        const NodeId v = stack.back();
        stack.pop_back();
        std::vector<std::pair<NodeId, EdgeId>> ch;
        for (EdgeId e : g.incident(v)) {
          const NodeId w = g.edge(e).other(v);
          if (seen[w]) continue;
          seen[w] = true;
          ch.push_back({w, e});
          stack.push_back(w);
        }
        NodeId at = v;
        for (std::size_t i = 0; i < ch.size(); ++i) {
          if (i > 0 && ch.size() - i > 1 && kids_[at].size() == 1) {
            const NodeId gadget = bin_.add_node();
            bin_charge_.push_back(0);
            kids_.emplace_back();
            link(at, gadget, 0, kNone);
            at = gadget;
          }
          link(at, ch[i].first, g.edge(ch[i].second).cost, ch[i].second);
        }
      }
    }
  }

  void link(NodeId parent, NodeId child, Cost cost, EdgeId original) {
    const EdgeId e = bin_.add_edge(parent, child, cost);
    orig_.push_back(original);
    kids_[parent].push_back({child, e});
  }

  void fill() {
    const std::size_t width = static_cast<std::size_t>(hi_ - lo_ + 1);
    const std::size_t nodes = bin_.node_count();
    final_.assign(nodes, {});
    steps_.assign(nodes, {});
    // Post-order over every root.
    std::vector<NodeId> order;
    for (NodeId r : roots_) {
      std::vector<std::pair<NodeId, bool>> stack{{r, false}};
      while (!stack.empty()) {
        auto [v, done] = stack.back();
        stack.pop_back();
        if (done) {
          order.push_back(v);
          continue;
        }
        stack.push_back({v, true});
        for (const Kid& k : kids_[v]) stack.push_back({k.node, false});
      }
    }
    for (NodeId v : order) {
      std::vector<Cost> acc(width, kInfinite);
      acc[bin_charge_[v] - lo_] = 0;
      for (const Kid& k : kids_[v]) {
        const std::vector<Cost>& tc = final_[k.node];
        Cost apart = kInfinite;  // child left as its own component
        std::int64_t apart_b = 0;
        for (std::int64_t b = 0; b <= hi_; ++b)
          if (tc[b - lo_] < apart) apart = tc[b - lo_], apart_b = b;
        const Cost w = bin_.edge(k.edge).cost;
        std::vector<Cost> next(width, kInfinite);
        std::vector<Back> back(width);
        for (std::size_t i = 0; i < width; ++i) {
          if (acc[i] == kInfinite) continue;
          const std::int64_t b1 = lo_ + static_cast<std::int64_t>(i);
          if (apart != kInfinite && acc[i] + apart < next[i]) {
            next[i] = acc[i] + apart;
            back[i] = {b1, apart_b, false};
          }
          for (std::size_t j = 0; j < width; ++j) {
            if (tc[j] == kInfinite) continue;
            const std::int64_t b2 = lo_ + static_cast<std::int64_t>(j);
            const std::int64_t b = b1 + b2;
            if (b < lo_ || b > hi_) continue;
            const Cost c = acc[i] + tc[j] + w;
            const std::size_t at = static_cast<std::size_t>(b - lo_);
            if (c < next[at]) {
              next[at] = c;
              back[at] = {b1, b2, true};
            }
          }
        }
        acc = std::move(next);
        steps_[v].push_back(std::move(back));
      }
      final_[v] = std::move(acc);
    }
  }

  void collect(NodeId v, std::int64_t b, EdgeSubset& out) const {
    for (std::size_t k = kids_[v].size(); k-- > 0;) {
      const Back& bk = steps_[v][k][b - lo_];
      if (bk.picked) out.insert(kids_[v][k].edge);
      collect(kids_[v][k].node, bk.child, out);
      b = bk.prev;
    }
  }

  std::int64_t lo_ = 0, hi_ = 0;
  Graph bin_;
  std::vector<std::int64_t> bin_charge_;
  std::vector<EdgeId> orig_;
  std::vector<std::vector<Kid>> kids_;
  std::vector<NodeId> roots_;
  std::vector<std::vector<Cost>> final_;
  std::vector<std::vector<std::vector<Back>>> steps_;
};

inline EdgeSubset solve_tree_exact(const Up2pInstance& inst,
                                   std::int64_t range_cap = kDefaultChargeRangeCap) {
  TreeDp dp(inst, range_cap);
  return dp.solve().first;
}

// ---------------------------------------------------------------------------
// General graphs.

// Per connected component: shortest-path metric over the charged nodes, tree
// embedding with the charges on the leaves, exact tree DP, and each tree
// component realized as shortest paths between consecutive leaves. A final
// pass drops edges while feasibility holds.
inline EdgeSubset solve_general(const Up2pInstance& inst, std::uint64_t seed = 0) {
  inst.validate();
  if (!is_feasible(inst)) throw InfeasibleError("some component of the graph has negative charge");
  const Graph& g = inst.graph;
  const Components comps = connected_components(g);
  EdgeSubset joined;
  for (const auto& members : comps.members) {
    std::vector<NodeId> points;
    bool negative = false;
    for (NodeId v : members) {
      if (inst.charges[v] != 0) points.push_back(v);
      if (inst.charges[v] < 0) negative = true;
    }
    if (!negative) continue;
    const EmbedResult embed = frt_embed(shortest_path_metric(g, points), seed);
    const TreeGraph tg = to_graph(embed.tree);
    Up2pInstance on_tree{tg.graph, std::vector<std::int64_t>(tg.graph.node_count(), 0)};
    for (NodeId v = 0; v < embed.tree.node_count(); ++v)
      if (embed.tree.point(v) != kNone) on_tree.charges[v] = inst.charges[points[embed.tree.point(v)]];
    EdgeSubset tree_edges;
    for (EdgeId e : solve_tree_exact(on_tree)) tree_edges.insert(tg.edge_child[e]);
    for (const auto& group : map_leaves(embed, tree_edges))
      for (std::size_t k = 1; k < group.size(); ++k)
        joined.merge(path_between(g, points[group[k - 1]], points[group[k]]));
  }
  return detail::prune_up2p(inst, spanning_forest(g, joined));
}

// Graph with the components of (V, merged) contracted to single nodes.
struct Contraction {
  Up2pInstance instance;
  std::vector<EdgeId> parent_edge;  // contracted edge -> original edge
  std::vector<std::size_t> node_of;  // original node -> contracted node
};

inline Contraction contract(const Up2pInstance& inst, const EdgeSubset& merged) {
  const Components comps = connected_components(inst.graph, merged);
  Contraction c{{Graph(comps.members.size()), std::vector<std::int64_t>(comps.members.size(), 0)},
                {},
                comps.label};
  for (NodeId v = 0; v < inst.graph.node_count(); ++v) c.instance.charges[comps.label[v]] += inst.charges[v];
  for (EdgeId e = 0; e < inst.graph.edge_count(); ++e) {
    const Edge& ed = inst.graph.edge(e);
    const std::size_t a = comps.label[ed.a], b = comps.label[ed.b];
    if (a == b) continue;
    c.instance.graph.add_edge(a, b, ed.cost);
    c.parent_edge.push_back(e);
  }
  return c;
}

struct SurplusResult {
  EdgeSubset edges;
  EdgeSubset phase1;
  std::size_t phase1_nonzero_components = 0;
  Cost tau = 0;
};

// First phase: smallest tau in [1, sum of costs] (binary search) for which the
// auxiliary zero-balance instance, a sink of charge -b(V) joined to every
// positive node by an edge of cost tau / b(V), is solved by primal-dual within
// 4 tau. Costs are scaled by b(V) so the sink edges cost exactly tau. The
// sink edges are then dropped. Second phase: solve_general on the graph with
// the phase-one components contracted.
inline SurplusResult solve_small_surplus_detailed(const Up2pInstance& inst,
                                                  std::uint64_t seed = 0) {
  inst.validate();
  const std::int64_t bv = inst.total_charge();
  if (bv < 0) throw InfeasibleError("total charge is negative");
  SurplusResult out;
  if (bv == 0) {
    out.edges = out.phase1 = solve_zero_balance(inst);
    return out;
  }
  if (!is_feasible(inst)) throw InfeasibleError("some component of the graph has negative charge");

  const Graph& g = inst.graph;
  const std::size_t n = g.node_count();
  auto nonzero_components = [&](const EdgeSubset& e) {
    std::size_t k = 0;
    for (const ComponentCharge& c : verify(inst, e).components) k += c.charge != 0;
    return k;
  };

  EdgeSubset zero_cost;
  Cost total_cost = 0;
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    total_cost += g.edge(e).cost;
    if (g.edge(e).cost == 0) zero_cost.insert(e);
  }
  if (detail::up2p_ok(inst, zero_cost)) {
    out.edges = out.phase1 = detail::prune_up2p(inst, zero_cost);
    out.phase1_nonzero_components = nonzero_components(out.phase1);
    return out;
  }

  auto phase_one = [&](Cost tau) -> std::optional<EdgeSubset> {
    Up2pInstance aux{Graph(n + 1), inst.charges};
    aux.charges.push_back(-bv);
    for (const Edge& e : g.edges()) aux.graph.add_edge(e.a, e.b, e.cost * bv);
    for (NodeId v = 0; v < n; ++v)
      if (inst.charges[v] > 0) aux.graph.add_edge(n, v, tau);
    const EdgeSubset sol = solve_zero_balance(aux);
    if (sol.total_cost(aux.graph) > 4 * tau * bv) return std::nullopt;
    EdgeSubset kept;
    for (EdgeId e : sol)
      if (e < g.edge_count()) kept.insert(e);
    return kept;
  };

  Cost lo = 1, hi = std::max<Cost>(1, total_cost);
  std::optional<EdgeSubset> best = phase_one(hi);
  if (!best) throw InfeasibleError("auxiliary instance fails at the largest estimate");
  Cost best_tau = hi;
  while (lo < hi) {
    const Cost mid = lo + (hi - lo) / 2;
    if (auto r = phase_one(mid)) {
      best = std::move(r);
      best_tau = hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  out.tau = best_tau;
  out.phase1 = std::move(*best);
  out.phase1_nonzero_components = nonzero_components(out.phase1);

  const Contraction c = contract(inst, out.phase1);
  EdgeSubset all = out.phase1;
  for (EdgeId e : solve_general(c.instance, seed)) all.insert(c.parent_edge[e]);
  out.edges = detail::prune_up2p(inst, all);
  return out;
}

inline EdgeSubset solve_small_surplus(const Up2pInstance& inst, std::uint64_t seed = 0) {
  return solve_small_surplus_detailed(inst, seed).edges;
}

// ---------------------------------------------------------------------------
// Reductions.

// Pair i (1-based) gets charges +2^i at s_i and -2^i at t_i.
inline Up2pInstance reduce_steiner_forest(const Graph& g,
                                          std::span<const std::pair<NodeId, NodeId>> pairs) {
  if (pairs.size() > 61) throw UsageError("too many pairs");
  Up2pInstance inst{g, std::vector<std::int64_t>(g.node_count(), 0)};
  std::vector<bool> used(g.node_count(), false);
  std::int64_t p = 1;
  for (const auto& [s, t] : pairs) {
    if (s >= g.node_count() || t >= g.node_count()) throw UsageError("terminal out of range");
    if (s == t || used[s] || used[t]) throw UsageError("pairs must not share a node");
    used[s] = used[t] = true;
    p *= 2;
    inst.charges[s] = p;
    inst.charges[t] = -p;
  }
  return inst;
}

// b_s = -(k - 1) at the guessed terminal, +1 at the other terminals.
inline Up2pInstance reduce_k_steiner(const Graph& g, std::span<const NodeId> terminals,
                                     std::size_t k, NodeId s) {
  if (std::find(terminals.begin(), terminals.end(), s) == terminals.end())
    throw UsageError("guess must be a terminal");
  if (k < 1 || k > terminals.size()) throw UsageError("k must be in [1, |U|]");
  Up2pInstance inst{g, std::vector<std::int64_t>(g.node_count(), 0)};
  for (NodeId t : terminals) {
    if (t >= g.node_count()) throw UsageError("terminal out of range");
    inst.charges[t] = 1;
  }
  inst.charges[s] = -static_cast<std::int64_t>(k - 1);
  return inst;
}

struct KSteinerResult {
  EdgeSubset edges;
  Cost cost = 0;
  std::size_t guess = 0;  // index into the terminal list
};

// Tries every terminal as the guess and keeps the cheapest feasible answer
// (ties: lowest guess index).
inline KSteinerResult solve_k_steiner(
    const Graph& g, std::span<const NodeId> terminals, std::size_t k,
    const std::function<EdgeSubset(const Up2pInstance&)>& solver) {
  std::optional<KSteinerResult> best;
  for (std::size_t i = 0; i < terminals.size(); ++i) {
    const Up2pInstance inst = reduce_k_steiner(g, terminals, k, terminals[i]);
    if (!is_feasible(inst)) continue;
    EdgeSubset sol = solver(inst);
    const Cost c = sol.total_cost(g);
    if (!best || c < best->cost) best = KSteinerResult{std::move(sol), c, i};
  }
  if (!best) throw InfeasibleError("no terminal reaches k - 1 others");
  return *best;
}

}  // namespace capnet

#endif  // CAPNET_UP2P_HPP_
