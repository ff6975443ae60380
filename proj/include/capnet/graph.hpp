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

// Undirected multigraph with integer costs and integer-or-infinite
// capacities, plus the flow, connectivity and shortest-path primitives every
// solver in this library builds on.

#ifndef CAPNET_GRAPH_HPP_
#define CAPNET_GRAPH_HPP_

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <numeric>
#include <queue>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "capnet/errors.hpp"

namespace capnet {

using NodeId = std::size_t;
using EdgeId = std::size_t;
using Cost = std::int64_t;

inline constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

// Nonnegative integer capacity or the distinguished INFINITE value.
// Arithmetic saturates: INFINITE + x == INFINITE, INFINITE - x == INFINITE.
class Capacity {
 public:
  constexpr Capacity() = default;
  constexpr explicit Capacity(std::int64_t value) : value_(value) {}

  static constexpr Capacity infinite() {
    Capacity c;
    c.infinite_ = true;
    return c;
  }

  constexpr bool is_infinite() const { return infinite_; }
  constexpr bool is_zero() const { return !infinite_ && value_ == 0; }

  std::int64_t value() const {
    if (infinite_) throw UsageError("value() of an infinite capacity");
    return value_;
  }

  friend constexpr Capacity operator+(Capacity a, Capacity b) {
    if (a.infinite_ || b.infinite_) return infinite();
    return Capacity(a.value_ + b.value_);
  }
  // Requires b finite and b <= a.
  friend constexpr Capacity operator-(Capacity a, Capacity b) {
    if (a.infinite_) return a;
    return Capacity(a.value_ - b.value_);
  }
  Capacity& operator+=(Capacity b) { return *this = *this + b; }
  Capacity& operator-=(Capacity b) { return *this = *this - b; }

  friend constexpr bool operator==(Capacity a, Capacity b) {
    return a.infinite_ == b.infinite_ && (a.infinite_ || a.value_ == b.value_);
  }
  friend constexpr std::strong_ordering operator<=>(Capacity a, Capacity b) {
    if (a.infinite_ || b.infinite_) return a.infinite_ <=> b.infinite_;
    return a.value_ <=> b.value_;
  }

  friend constexpr Capacity min(Capacity a, Capacity b) { return b < a ? b : a; }

  std::string to_string() const {
    return infinite_ ? std::string("inf") : std::to_string(value_);
  }

 private:
  std::int64_t value_ = 0;
  bool infinite_ = false;
};

struct Edge {
  NodeId a = 0;
  NodeId b = 0;
  Cost cost = 0;
  Capacity capacity;

  NodeId other(NodeId v) const { return v == a ? b : a; }
};

class Graph {
 public:
  Graph() = default;
  explicit Graph(std::size_t node_count)
      : node_count_(node_count), incident_(node_count) {}
  Graph(std::size_t node_count, std::span<const Edge> edges) : Graph(node_count) {
    for (const Edge& e : edges) add_edge(e.a, e.b, e.cost, e.capacity);
  }

  EdgeId add_edge(NodeId a, NodeId b, Cost cost,
                  Capacity capacity = Capacity::infinite()) {
    if (a >= node_count_ || b >= node_count_) {
      throw UsageError("edge endpoint out of range: " + std::to_string(a) + "-" +
                       std::to_string(b));
    }
    if (a == b) throw UsageError("self-loop at node " + std::to_string(a));
    if (cost < 0) throw UsageError("negative edge cost");
    if (!capacity.is_infinite() && capacity.value() < 0) {
      throw UsageError("negative edge capacity");
    }
    const EdgeId id = edges_.size();
    edges_.push_back({a, b, cost, capacity});
    incident_[a].push_back(id);
    incident_[b].push_back(id);
    return id;
  }

  NodeId add_node() {
    incident_.emplace_back();
    return node_count_++;
  }

  std::size_t node_count() const { return node_count_; }
  std::size_t edge_count() const { return edges_.size(); }
  const Edge& edge(EdgeId e) const { return edges_[e]; }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<EdgeId>& incident(NodeId v) const { return incident_[v]; }

 private:
  std::size_t node_count_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<EdgeId>> incident_;
};

// A set of edge indices of some graph, kept sorted and unique.
class EdgeSubset {
 public:
  EdgeSubset() = default;
  EdgeSubset(std::initializer_list<EdgeId> ids) : ids_(ids) { normalize(); }
  explicit EdgeSubset(std::vector<EdgeId> ids) : ids_(std::move(ids)) {
    normalize();
  }

  void insert(EdgeId e) {
    auto it = std::lower_bound(ids_.begin(), ids_.end(), e);
    if (it == ids_.end() || *it != e) ids_.insert(it, e);
  }
  void erase(EdgeId e) {
    auto it = std::lower_bound(ids_.begin(), ids_.end(), e);
    if (it != ids_.end() && *it == e) ids_.erase(it);
  }
  void merge(const EdgeSubset& other) {
    std::vector<EdgeId> out;
    out.reserve(ids_.size() + other.ids_.size());
    std::set_union(ids_.begin(), ids_.end(), other.ids_.begin(),
                   other.ids_.end(), std::back_inserter(out));
    ids_ = std::move(out);
  }
  bool contains(EdgeId e) const {
    return std::binary_search(ids_.begin(), ids_.end(), e);
  }

  std::size_t size() const { return ids_.size(); }
  bool empty() const { return ids_.empty(); }
  const std::vector<EdgeId>& ids() const { return ids_; }
  auto begin() const { return ids_.begin(); }
  auto end() const { return ids_.end(); }

  Cost total_cost(const Graph& g) const {
    Cost c = 0;
    for (EdgeId e : ids_) {
      if (e >= g.edge_count()) throw UsageError("edge index out of range");
      c += g.edge(e).cost;
    }
    return c;
  }

  friend bool operator==(const EdgeSubset&, const EdgeSubset&) = default;

 private:
  void normalize() {
    std::sort(ids_.begin(), ids_.end());
    ids_.erase(std::unique(ids_.begin(), ids_.end()), ids_.end());
  }
  std::vector<EdgeId> ids_;
};

inline EdgeSubset all_edges(const Graph& g) {
  std::vector<EdgeId> ids(g.edge_count());
  std::iota(ids.begin(), ids.end(), EdgeId{0});
  return EdgeSubset(std::move(ids));
}

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n), size_(n, 1) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (size_[a] < size_[b]) std::swap(a, b);
    parent_[b] = a;
    size_[a] += size_[b];
    return true;
  }

 private:
  std::vector<std::size_t> parent_;
  std::vector<std::size_t> size_;
};

// ---------------------------------------------------------------------------
// Max flow.

// Directed flow network solved with Dinic's algorithm over saturating
// Capacity arithmetic. An augmenting path made only of infinite arcs makes
// the flow value infinite.
class FlowNetwork {
 public:
  explicit FlowNetwork(std::size_t node_count) : adj_(node_count) {}

  void add_arc(NodeId from, NodeId to, Capacity cap) {
    adj_[from].push_back({to, cap, adj_[to].size()});
    adj_[to].push_back({from, Capacity(0), adj_[from].size() - 1});
  }
  // One undirected edge: two arcs acting as each other's reverse.
  void add_undirected(NodeId a, NodeId b, Capacity cap) {
    adj_[a].push_back({b, cap, adj_[b].size()});
    adj_[b].push_back({a, cap, adj_[a].size() - 1});
  }

  std::size_t node_count() const { return adj_.size(); }

  Capacity max_flow(NodeId source, NodeId sink) {
    if (source == sink) throw UsageError("max_flow: source == sink");
    Capacity total(0);
    std::vector<int> level(adj_.size());
    std::vector<std::size_t> next(adj_.size());
    while (bfs_levels(source, sink, level)) {
      std::fill(next.begin(), next.end(), 0);
      for (;;) {
        const Capacity pushed =
            push(source, sink, Capacity::infinite(), level, next);
        if (pushed.is_infinite()) return Capacity::infinite();
        if (pushed.is_zero()) break;
        total += pushed;
      }
    }
    return total;
  }

  // Nodes reachable from `source` in the residual network.
  std::vector<bool> residual_reachable(NodeId source) const {
    std::vector<bool> seen(adj_.size(), false);
    std::vector<NodeId> stack{source};
    seen[source] = true;
    while (!stack.empty()) {
      const NodeId v = stack.back();
      stack.pop_back();
      for (const Arc& a : adj_[v]) {
        if (!a.residual.is_zero() && !seen[a.to]) {
          seen[a.to] = true;
          stack.push_back(a.to);
        }
      }
    }
    return seen;
  }

 private:
  struct Arc {
    NodeId to;
    Capacity residual;
    std::size_t rev;
  };

  bool bfs_levels(NodeId s, NodeId t, std::vector<int>& level) const {
    std::fill(level.begin(), level.end(), -1);
    std::queue<NodeId> q;
    level[s] = 0;
    q.push(s);
    while (!q.empty()) {
      const NodeId v = q.front();
      q.pop();
      for (const Arc& a : adj_[v]) {
        if (!a.residual.is_zero() && level[a.to] < 0) {
          level[a.to] = level[v] + 1;
          q.push(a.to);
        }
      }
    }
    return level[t] >= 0;
  }

  Capacity push(NodeId v, NodeId t, Capacity limit, const std::vector<int>& level,
                std::vector<std::size_t>& next) {
    if (v == t) return limit;
    for (std::size_t& i = next[v]; i < adj_[v].size(); ++i) {
      Arc& a = adj_[v][i];
      if (a.residual.is_zero() || level[a.to] != level[v] + 1) continue;
      const Capacity got = push(a.to, t, min(limit, a.residual), level, next);
      if (got.is_zero()) continue;
      if (got.is_infinite()) return got;
      a.residual -= got;
      adj_[a.to][a.rev].residual += got;
      return got;
    }
    return Capacity(0);
  }

  std::vector<std::vector<Arc>> adj_;
};

struct FlowResult {
  Capacity value;
  // Source side of a minimum cut. For an infinite value no finite cut
  // exists and this holds only the source.
  std::vector<bool> source_side;

  std::vector<NodeId> source_nodes() const {
    std::vector<NodeId> out;
    for (NodeId v = 0; v < source_side.size(); ++v)
      if (source_side[v]) out.push_back(v);
    return out;
  }
};

namespace detail {

inline FlowNetwork undirected_network(const Graph& g, std::size_t extra_nodes = 0,
                                      const EdgeSubset* only = nullptr) {
  FlowNetwork net(g.node_count() + extra_nodes);
  auto add = [&](EdgeId id) {
    const Edge& e = g.edge(id);
    if (!e.capacity.is_zero()) net.add_undirected(e.a, e.b, e.capacity);
  };
  if (only != nullptr) {
    for (EdgeId id : *only) add(id);
  } else {
    for (EdgeId id = 0; id < g.edge_count(); ++id) add(id);
  }
  return net;
}

inline FlowResult finish(FlowNetwork& net, Capacity value, NodeId source,
                         std::size_t node_count) {
  FlowResult r{value, std::vector<bool>(node_count, false)};
  if (value.is_infinite()) {
    r.source_side[source] = true;
    return r;
  }
  auto reach = net.residual_reachable(source);
  for (NodeId v = 0; v < node_count; ++v) r.source_side[v] = reach[v];
  return r;
}

}  // namespace detail

// Max flow / min cut between two nodes; edge capacities are the flow
// capacities and costs are ignored. `only`, when given, restricts the graph to
// those edges.
inline FlowResult max_flow(const Graph& g, NodeId source, NodeId sink,
                           const EdgeSubset* only = nullptr) {
  if (source == sink) throw UsageError("max_flow: source == sink");
  if (source >= g.node_count() || sink >= g.node_count())
    throw UsageError("max_flow: node out of range");
  FlowNetwork net = detail::undirected_network(g, 0, only);
  const Capacity v = net.max_flow(source, sink);
  return detail::finish(net, v, source, g.node_count());
}

// Minimum capacity of a cut separating `source` from every node of `targets`
// (the targets contracted into one sink). Infinite when source is a target,
// zero when targets is empty.
inline Capacity max_flow_to_set(const Graph& g, NodeId source,
                                std::span<const NodeId> targets,
                                const EdgeSubset* only = nullptr) {
  if (targets.empty()) return Capacity(0);
  for (NodeId t : targets)
    if (t == source) return Capacity::infinite();
  FlowNetwork net = detail::undirected_network(g, 1, only);
  const NodeId super = g.node_count();
  for (NodeId t : targets) net.add_arc(t, super, Capacity::infinite());
  return net.max_flow(source, super);
}

// ---------------------------------------------------------------------------
// Connectivity.

struct Components {
  std::vector<std::size_t> label;             // node -> component index
  std::vector<std::vector<NodeId>> members;   // ordered by smallest member
};

inline Components connected_components(const Graph& g, const EdgeSubset& chosen) {
  DisjointSets dsu(g.node_count());
  for (EdgeId e : chosen) {
    if (e >= g.edge_count()) throw UsageError("edge index out of range");
    dsu.unite(g.edge(e).a, g.edge(e).b);
  }
  Components c;
  c.label.assign(g.node_count(), kNone);
  std::vector<std::size_t> root_label(g.node_count(), kNone);
  for (NodeId v = 0; v < g.node_count(); ++v) {
    const std::size_t r = dsu.find(v);
    if (root_label[r] == kNone) {
      root_label[r] = c.members.size();
      c.members.emplace_back();
    }
    c.label[v] = root_label[r];
    c.members[root_label[r]].push_back(v);
  }
  return c;
}

inline Components connected_components(const Graph& g) {
  return connected_components(g, all_edges(g));
}

// ---------------------------------------------------------------------------
// Shortest paths.

// Symmetric distance table over `points` (graph node ids, in order).
class Metric {
 public:
  Metric() = default;
  explicit Metric(std::size_t n) : n_(n), d_(n * n, 0), points_(n) {
    std::iota(points_.begin(), points_.end(), NodeId{0});
  }
  Metric(std::size_t n, std::vector<Cost> table) : Metric(n) {
    if (table.size() != n * n) throw UsageError("metric table size mismatch");
    d_ = std::move(table);
  }

  std::size_t point_count() const { return n_; }
  Cost operator()(std::size_t i, std::size_t j) const { return d_[i * n_ + j]; }
  void set(std::size_t i, std::size_t j, Cost v) {
    d_[i * n_ + j] = v;
    d_[j * n_ + i] = v;
  }
  // Graph node behind point i (identity unless built from a graph).
  NodeId point(std::size_t i) const { return points_[i]; }
  const std::vector<NodeId>& points() const { return points_; }
  void set_points(std::vector<NodeId> points) { points_ = std::move(points); }

  Cost max_distance() const {
    return d_.empty() ? 0 : *std::max_element(d_.begin(), d_.end());
  }

  // Symmetry, zero diagonal, nonnegativity and the triangle inequality.
  bool is_valid() const {
    for (std::size_t i = 0; i < n_; ++i) {
      if ((*this)(i, i) != 0) return false;
      for (std::size_t j = 0; j < n_; ++j) {
        if ((*this)(i, j) < 0 || (*this)(i, j) != (*this)(j, i)) return false;
        for (std::size_t k = 0; k < n_; ++k)
          if ((*this)(i, k) > (*this)(i, j) + (*this)(j, k)) return false;
      }
    }
    return true;
  }

 private:
  std::size_t n_ = 0;
  std::vector<Cost> d_;
  std::vector<NodeId> points_;
};

namespace detail {

inline constexpr Cost kUnreachable = std::numeric_limits<Cost>::max();

struct ShortestPathTree {
  std::vector<Cost> dist;
  std::vector<EdgeId> via;  // edge used to reach the node, kNone at the source
};

inline ShortestPathTree dijkstra(const Graph& g, NodeId source) {
  ShortestPathTree t{std::vector<Cost>(g.node_count(), kUnreachable),
                     std::vector<EdgeId>(g.node_count(), kNone)};
  using Item = std::pair<Cost, NodeId>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
  t.dist[source] = 0;
  pq.push({0, source});
  while (!pq.empty()) {
    auto [d, v] = pq.top();
    pq.pop();
    if (d != t.dist[v]) continue;
    for (EdgeId e : g.incident(v)) {
      const NodeId w = g.edge(e).other(v);
      const Cost nd = d + g.edge(e).cost;
      if (nd < t.dist[w]) {
        t.dist[w] = nd;
        t.via[w] = e;
        pq.push({nd, w});
      }
    }
  }
  return t;
}

}  // namespace detail

inline Metric shortest_path_metric(const Graph& g, std::span<const NodeId> points) {
  const std::size_t k = points.size();
  Metric m(k);
  m.set_points(std::vector<NodeId>(points.begin(), points.end()));
  for (std::size_t i = 0; i < k; ++i) {
    if (points[i] >= g.node_count()) throw UsageError("metric point out of range");
    const auto sp = detail::dijkstra(g, points[i]);
    for (std::size_t j = 0; j < k; ++j) {
      if (sp.dist[points[j]] == detail::kUnreachable) {
        throw InfeasibleError("points " + std::to_string(points[i]) + " and " +
                              std::to_string(points[j]) + " are disconnected");
      }
      m.set(i, j, sp.dist[points[j]]);
    }
  }
  return m;
}

// A cost-minimal a-b path.
inline EdgeSubset path_between(const Graph& g, NodeId a, NodeId b) {
  if (a >= g.node_count() || b >= g.node_count())
    throw UsageError("path_between: node out of range");
  if (a == b) return {};
  const auto sp = detail::dijkstra(g, a);
  if (sp.dist[b] == detail::kUnreachable) {
    throw InfeasibleError("no path between " + std::to_string(a) + " and " +
                          std::to_string(b));
  }
  EdgeSubset path;
  for (NodeId v = b; v != a; v = g.edge(sp.via[v]).other(v)) path.insert(sp.via[v]);
  return path;
}

// Minimum spanning forest of the subgraph formed by `chosen` (Kruskal, ties by
// edge index).
inline EdgeSubset spanning_forest(const Graph& g, const EdgeSubset& chosen) {
  std::vector<EdgeId> order(chosen.begin(), chosen.end());
  std::stable_sort(order.begin(), order.end(), [&](EdgeId x, EdgeId y) {
    return g.edge(x).cost < g.edge(y).cost;
  });
  DisjointSets dsu(g.node_count());
  EdgeSubset out;
  for (EdgeId e : order)
    if (dsu.unite(g.edge(e).a, g.edge(e).b)) out.insert(e);
  return out;
}

// Nodes touched by `chosen` plus any extra nodes listed.
inline std::vector<NodeId> touched_nodes(const Graph& g, const EdgeSubset& chosen,
                                         std::span<const NodeId> extra = {}) {
  std::vector<bool> in(g.node_count(), false);
  for (EdgeId e : chosen) in[g.edge(e).a] = in[g.edge(e).b] = true;
  for (NodeId v : extra) in[v] = true;
  std::vector<NodeId> out;
  for (NodeId v = 0; v < g.node_count(); ++v)
    if (in[v]) out.push_back(v);
  return out;
}

}  // namespace capnet

#endif  // CAPNET_GRAPH_HPP_
