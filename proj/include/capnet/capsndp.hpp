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

// Capacitated network design instances: the cost-edge / capacity-edge
// normal form, the connected single-sink variant with its min-cut coverage
// oracle, group Steiner instances (plain and with group demands and node
// capacities), and the reduction from group Steiner to the connected variant.

#ifndef CAPNET_CAPSNDP_HPP_
#define CAPNET_CAPSNDP_HPP_

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "capnet/errors.hpp"
#include "capnet/graph.hpp"
#include "capnet/submodular.hpp"

namespace capnet {

enum class EdgeClass { kCost, kCapacity };

struct Requirement {
  NodeId i = 0;
  NodeId j = 0;
  std::int64_t r = 0;
};

// General instance: every edge has a cost and a capacity; requirements are
// over unordered pairs.
struct CapSndpInstance {
  Graph graph;
  std::vector<Requirement> requirements;

  void validate() const {
    for (const Requirement& q : requirements) {
      if (q.i >= graph.node_count() || q.j >= graph.node_count())
        throw UsageError("requirement endpoint out of range");
      if (q.r < 0) throw UsageError("negative requirement");
    }
  }
  std::int64_t requirement(NodeId a, NodeId b) const {
    std::int64_t r = 0;
    for (const Requirement& q : requirements)
      if ((q.i == a && q.j == b) || (q.i == b && q.j == a)) r = std::max(r, q.r);
    return r;
  }
};

// Normal form: each edge is either a cost edge (capacity infinite) or a
// capacity edge (cost zero).
struct SplitGraph {
  Graph graph;
  std::vector<EdgeClass> classes;
  std::size_t original_node_count = 0;
  std::vector<Requirement> requirements;
};

// Each edge (a, b, c, u) becomes a - m (c, inf) and m - b (0, u) through a
// fresh midpoint m = n + edge index; pieces of edge k are edges 2k and 2k+1.
inline SplitGraph normalize(const CapSndpInstance& inst) {
  inst.validate();
  const std::size_t n = inst.graph.node_count();
  SplitGraph out{Graph(n + inst.graph.edge_count()), {}, n, inst.requirements};
  for (EdgeId k = 0; k < inst.graph.edge_count(); ++k) {
    const Edge& e = inst.graph.edge(k);
    const NodeId mid = n + k;
    out.graph.add_edge(e.a, mid, e.cost, Capacity::infinite());
    out.classes.push_back(EdgeClass::kCost);
    out.graph.add_edge(mid, e.b, 0, e.capacity);
    out.classes.push_back(EdgeClass::kCapacity);
  }
  return out;
}

struct Source {
  NodeId node = 0;
  std::int64_t requirement = 0;
};

// A subgraph with the ids of its edges in the parent graph.
struct SubGraph {
  Graph graph;
  std::vector<EdgeId> parent_edge;

  EdgeSubset to_parent(const EdgeSubset& local) const {
    EdgeSubset out;
    for (EdgeId e : local) out.insert(parent_edge[e]);
    return out;
  }
};

// Connected single-sink instance: pick edges so every source reaches the
// sink with flow at least its requirement, while the chosen cost edges form
// one connected backbone containing the sink.
struct ConnCapSndpInstance {
  Graph graph;
  std::vector<EdgeClass> classes;
  NodeId sink = 0;
  std::vector<Source> sources;

  void validate() const {
    if (classes.size() != graph.edge_count())
      throw UsageError("every edge needs a class tag");
    if (sink >= graph.node_count()) throw UsageError("sink out of range");
    for (EdgeId e = 0; e < graph.edge_count(); ++e) {
      const Edge& ed = graph.edge(e);
      if (classes[e] == EdgeClass::kCost && !ed.capacity.is_infinite())
        throw UsageError("cost edge " + std::to_string(e) + " must have infinite capacity");
      if (classes[e] == EdgeClass::kCapacity && ed.cost != 0)
        throw UsageError("capacity edge " + std::to_string(e) + " must have zero cost");
    }
    for (const Source& s : sources) {
      if (s.node >= graph.node_count()) throw UsageError("source out of range");
      if (s.requirement < 1) throw UsageError("source requirement must be >= 1");
    }
  }

  SubGraph edges_of(EdgeClass cls) const {
    SubGraph out{Graph(graph.node_count()), {}};
    for (EdgeId e = 0; e < graph.edge_count(); ++e) {
      if (classes[e] != cls) continue;
      const Edge& ed = graph.edge(e);
      out.graph.add_edge(ed.a, ed.b, ed.cost, ed.capacity);
      out.parent_edge.push_back(e);
    }
    return out;
  }
  SubGraph cost_graph() const { return edges_of(EdgeClass::kCost); }
  SubGraph capacity_graph() const { return edges_of(EdgeClass::kCapacity); }

  std::int64_t total_requirement() const {
    std::int64_t t = 0;
    for (const Source& s : sources) t += s.requirement;
    return t;
  }

  EdgeSubset capacity_edges() const {
    EdgeSubset out;
    for (EdgeId e = 0; e < graph.edge_count(); ++e)
      if (classes[e] == EdgeClass::kCapacity) out.insert(e);
    return out;
  }
};

// f(S) = sum_i min(r_i, u(delta(S, s_i))), where u(delta(S, s_i)) is the
// minimum capacity of a cut of the capacity-edge graph separating s_i from
// every vertex of S (infinite if s_i is in S). Memoized.
inline SubmodularOracle conncap_oracle(const ConnCapSndpInstance& inst) {
  inst.validate();
  SubGraph gu = inst.capacity_graph();
  return memoized(inst.graph.node_count(),
                  [gu = std::move(gu.graph), sources = inst.sources](const Membership& s) {
                    const std::vector<NodeId> targets = members_of(s);
                    std::int64_t total = 0;
                    for (const Source& src : sources) {
                      const Capacity cut = max_flow_to_set(gu, src.node, targets);
                      total += cut.is_infinite()
                                   ? src.requirement
                                   : std::min(src.requirement, cut.value());
                    }
                    return total;
                  });
}

struct SourceCheck {
  NodeId node = 0;
  std::int64_t requirement = 0;
  Capacity achieved;
  bool ok = false;
};

struct ConnCapReport {
  std::vector<SourceCheck> sources;
  bool backbone_connected = false;  // chosen cost edges form one component containing the sink
  bool feasible = false;
};

inline ConnCapReport verify(const ConnCapSndpInstance& inst, const EdgeSubset& chosen) {
  inst.validate();
  ConnCapReport rep;
  EdgeSubset backbone;
  for (EdgeId e : chosen) {
    if (e >= inst.graph.edge_count()) throw UsageError("edge index out of range");
    if (inst.classes[e] == EdgeClass::kCost) backbone.insert(e);
  }
  const Components comps = connected_components(inst.graph, backbone);
  rep.backbone_connected = true;
  for (EdgeId e : backbone)
    if (comps.label[inst.graph.edge(e).a] != comps.label[inst.sink])
      rep.backbone_connected = false;

  bool all_ok = true;
  for (const Source& s : inst.sources) {
    SourceCheck c{s.node, s.requirement, Capacity::infinite(), true};
    if (s.node != inst.sink) c.achieved = max_flow(inst.graph, s.node, inst.sink, &chosen).value;
    c.ok = c.achieved >= Capacity(s.requirement);
    all_ok = all_ok && c.ok;
    rep.sources.push_back(c);
  }
  rep.feasible = all_ok && rep.backbone_connected;
  return rep;
}

struct ConnCapSolution {
  EdgeSubset edges;
  Cost cost = 0;
};

// Tree cover of the cost-edge graph with the sink forced in, plus every
// capacity edge (they are free).
inline ConnCapSolution solve(const ConnCapSndpInstance& inst,
                             const GraphCoverOptions& opt = {}) {
  inst.validate();
  const SubmodularOracle f = conncap_oracle(inst);
  const SubGraph gc = inst.cost_graph();
  const Components comps = connected_components(gc.graph);
  const std::int64_t need = inst.total_requirement();
  if (f.evaluate(comps.members[comps.label[inst.sink]]) < need) {
    throw InfeasibleError("requirements cannot be met by any backbone containing the sink");
  }
  const NodeId forced[] = {inst.sink};
  const GraphCoverResult cov = solve_on_graph(gc.graph, f, forced, opt);
  ConnCapSolution out;
  out.edges = gc.to_parent(cov.edges);
  out.edges.merge(inst.capacity_edges());
  out.cost = out.edges.total_cost(inst.graph);
  return out;
}

// ---------------------------------------------------------------------------
// Group Steiner.

struct GstInstance {
  Graph graph;
  NodeId root = 0;
  std::vector<std::vector<NodeId>> groups;

  void validate() const {
    if (root >= graph.node_count()) throw UsageError("root out of range");
    for (const auto& g : groups) {
      if (g.empty()) throw UsageError("empty group");
      for (NodeId v : g)
        if (v >= graph.node_count()) throw UsageError("group member out of range");
    }
  }
  // Groups sorted and deduplicated.
  std::vector<std::vector<NodeId>> clean_groups() const {
    auto out = groups;
    for (auto& g : out) {
      std::sort(g.begin(), g.end());
      g.erase(std::unique(g.begin(), g.end()), g.end());
    }
    return out;
  }
};

// Group demands d_i and node capacities b_v.
struct GstDemandInstance {
  GstInstance gst;
  std::vector<std::int64_t> demands;
  std::vector<std::int64_t> node_caps;

  void validate() const {
    gst.validate();
    if (demands.size() != gst.groups.size()) throw UsageError("one demand per group");
    if (node_caps.size() != gst.graph.node_count()) throw UsageError("one capacity per node");
    for (auto d : demands)
      if (d < 1) throw UsageError("group demand must be >= 1");
    for (auto b : node_caps)
      if (b < 0) throw UsageError("negative node capacity");
  }
};

// Whether `edges` is connected, touches the root (or is empty) and its vertex
// set together with the root hits every group.
inline bool gst_feasible(const GstInstance& gst, const EdgeSubset& edges) {
  const auto verts = touched_nodes(gst.graph, edges, std::span<const NodeId>(&gst.root, 1));
  const Components comps = connected_components(gst.graph, edges);
  for (NodeId v : verts)
    if (comps.label[v] != comps.label[gst.root]) return false;
  for (const auto& g : gst.groups) {
    const bool hit = std::any_of(g.begin(), g.end(), [&](NodeId v) {
      return std::binary_search(verts.begin(), verts.end(), v);
    });
    if (!hit) return false;
  }
  return true;
}

// f(S) = max flow in the network source -> z_v (cap b_v, v in S),
// z_v -> y_i (cap 1, v in g_i), y_i -> sink (cap d_i). Memoized.
inline SubmodularOracle gst_demand_oracle(const GstDemandInstance& inst) {
  inst.validate();
  const std::size_t n = inst.gst.graph.node_count();
  return memoized(n, [n, groups = inst.gst.clean_groups(), demands = inst.demands,
                      caps = inst.node_caps](const Membership& s) {
    const NodeId source = 0, sink = 1;
    auto z = [](NodeId v) { return 2 + v; };
    auto y = [n](std::size_t i) { return 2 + n + i; };
    FlowNetwork net(2 + n + groups.size());
    for (NodeId v = 0; v < n; ++v)
      if (s[v]) net.add_arc(source, z(v), Capacity(caps[v]));
    for (std::size_t i = 0; i < groups.size(); ++i) {
      for (NodeId v : groups[i])
        if (s[v]) net.add_arc(z(v), y(i), Capacity(1));
      net.add_arc(y(i), sink, Capacity(demands[i]));
    }
    return net.max_flow(source, sink).value();
  });
}

// f(S) = number of groups hit by S: the plain group Steiner objective.
inline SubmodularOracle gst_coverage_oracle(const GstInstance& gst) {
  gst.validate();
  return coverage_oracle(gst.graph.node_count(), gst.clean_groups());
}

// Reduction to the connected single-sink variant. Layout of the result:
// nodes 0..n-1 are the original nodes, s = n, g_i = n + 1 + i; edges
// 0..m-1 are the original edges (cost c_e, capacity inf), followed by {s, v}
// for v in the union of groups (ascending v, capacity = number of groups
// containing v), then {v, g_i} (capacity 1) group by group, then {g_i, r}
// (capacity |S_i| - 1). Sink r, one source s with requirement sum |S_i|.
inline ConnCapSndpInstance gst_to_conncap(const GstInstance& gst) {
  gst.validate();
  const auto groups = gst.clean_groups();
  const std::size_t n = gst.graph.node_count();
  const std::size_t k = groups.size();
  ConnCapSndpInstance out{Graph(n + 1 + k), {}, gst.root, {}};
  for (const Edge& e : gst.graph.edges()) {
    out.graph.add_edge(e.a, e.b, e.cost, Capacity::infinite());
    out.classes.push_back(EdgeClass::kCost);
  }
  const NodeId s = n;
  std::vector<std::int64_t> membership_count(n, 0);
  std::int64_t d = 0;
  for (const auto& g : groups) {
    d += static_cast<std::int64_t>(g.size());
    for (NodeId v : g) ++membership_count[v];
  }
  auto add_cap = [&](NodeId a, NodeId b, std::int64_t cap) {
    out.graph.add_edge(a, b, 0, Capacity(cap));
    out.classes.push_back(EdgeClass::kCapacity);
  };
  for (NodeId v = 0; v < n; ++v)
    if (membership_count[v] > 0) add_cap(s, v, membership_count[v]);
  for (std::size_t i = 0; i < k; ++i)
    for (NodeId v : groups[i]) add_cap(v, n + 1 + i, 1);
  for (std::size_t i = 0; i < k; ++i)
    add_cap(n + 1 + i, gst.root, static_cast<std::int64_t>(groups[i].size()) - 1);
  if (d > 0) out.sources.push_back({s, d});
  return out;
}

// Recovers a group Steiner tree from a feasible solution of the reduced
// instance: the original edges of the solution, restricted to the root's
// component, made acyclic and pruned of useless leaves.
inline EdgeSubset conncap_solution_to_gst(const GstInstance& gst,
                                          const ConnCapSndpInstance& reduced,
                                          const EdgeSubset& chosen) {
  if (!verify(reduced, chosen).feasible)
    throw InfeasibleError("solution is not feasible for the reduced instance");
  const std::size_t m = gst.graph.edge_count();
  EdgeSubset original;
  for (EdgeId e : chosen)
    if (e < m) original.insert(e);
  const Components comps = connected_components(gst.graph, original);
  EdgeSubset rooted;
  for (EdgeId e : original)
    if (comps.label[gst.graph.edge(e).a] == comps.label[gst.root]) rooted.insert(e);
  EdgeSubset tree = spanning_forest(gst.graph, rooted);

  // Drop leaves (other than the root) that no group needs.
  for (bool changed = true; changed;) {
    changed = false;
    std::vector<std::size_t> degree(gst.graph.node_count(), 0);
    for (EdgeId e : tree) ++degree[gst.graph.edge(e).a], ++degree[gst.graph.edge(e).b];
    for (EdgeId e : tree) {
      EdgeSubset trial = tree;
      trial.erase(e);
      const Edge& ed = gst.graph.edge(e);
      const bool leaf_end = (degree[ed.a] == 1 && ed.a != gst.root) ||
                            (degree[ed.b] == 1 && ed.b != gst.root);
      if (leaf_end && gst_feasible(gst, trial)) {
        tree = std::move(trial);
        changed = true;
        break;
      }
    }
  }
  if (!gst_feasible(gst, tree))
    throw InfeasibleError("recovered edges do not reach every group");
  return tree;
}

struct GroupCut {
  std::vector<bool> side;  // contains s and g_j, excludes the root
  Capacity crossing;       // capacity of chosen edges leaving the side
};

// The s-side cut used to show that a group j left disconnected from the root
// caps the s-r flow below the requirement: U = nodes joined to group j by
// chosen original edges, side = U + {s, g_j}.
inline GroupCut disconnected_group_cut(const GstInstance& gst,
                                       const ConnCapSndpInstance& reduced,
                                       const EdgeSubset& chosen, std::size_t j) {
  const auto groups = gst.clean_groups();
  if (j >= groups.size()) throw UsageError("group index out of range");
  const std::size_t n = gst.graph.node_count();
  const std::size_t m = gst.graph.edge_count();
  EdgeSubset original;
  for (EdgeId e : chosen)
    if (e < m) original.insert(e);
  const Components comps = connected_components(gst.graph, original);
  GroupCut cut{std::vector<bool>(reduced.graph.node_count(), false), Capacity(0)};
  for (NodeId v : groups[j])
    for (NodeId w : comps.members[comps.label[v]]) cut.side[w] = true;
  if (cut.side[gst.root]) throw UsageError("group is connected to the root");
  cut.side[n] = true;
  cut.side[n + 1 + j] = true;
  for (EdgeId e : chosen) {
    const Edge& ed = reduced.graph.edge(e);
    if (cut.side[ed.a] != cut.side[ed.b]) cut.crossing += ed.capacity;
  }
  return cut;
}

}  // namespace capnet

#endif  // CAPNET_CAPSNDP_HPP_
