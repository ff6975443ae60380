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

// Seeded random instances for tests, benchmarks and the gen subcommand.

#ifndef CAPNET_GENERATORS_HPP_
#define CAPNET_GENERATORS_HPP_

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

#include "capnet/capsndp.hpp"
#include "capnet/graph.hpp"
#include "capnet/tree.hpp"
#include "capnet/up2p.hpp"

namespace capnet::gen {

using Rng = std::mt19937_64;

inline std::int64_t uniform(Rng& rng, std::int64_t lo, std::int64_t hi) {
  return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
}

// Random spanning tree (node i joins a random earlier node) plus `extra`
// random non-loop edges. Costs uniform in [lo, hi].
inline Graph connected_graph(Rng& rng, std::size_t n, std::size_t extra, Cost lo, Cost hi) {
  Graph g(n);
  for (NodeId v = 1; v < n; ++v)
    g.add_edge(static_cast<NodeId>(uniform(rng, 0, v - 1)), v, uniform(rng, lo, hi));
  for (std::size_t i = 0; n >= 2 && i < extra; ++i) {
    const auto a = static_cast<NodeId>(uniform(rng, 0, n - 1));
    auto b = static_cast<NodeId>(uniform(rng, 0, n - 2));
    if (b >= a) ++b;
    g.add_edge(a, b, uniform(rng, lo, hi));
  }
  return g;
}

inline Metric random_metric(Rng& rng, std::size_t n, Cost max_cost = 20) {
  const Graph g = connected_graph(rng, n, n, 1, max_cost);
  std::vector<NodeId> pts(n);
  for (NodeId v = 0; v < n; ++v) pts[v] = v;
  return shortest_path_metric(g, pts);
}

// Random rooted tree with `points` >= 1 leaves carrying points 0..points-1.
inline RootedTree random_tree(Rng& rng, std::size_t internal, std::size_t points, Cost max_cost) {
  RootedTree t;
  std::vector<NodeId> inner{t.root()};
  std::size_t bare = 1;  // internal nodes with no child yet
  for (std::size_t i = 0; i < internal; ++i) {
    NodeId parent = inner[uniform(rng, 0, inner.size() - 1)];
    if (!t.is_leaf(parent) && bare >= points) {
      // Another bare node would outnumber the points; extend a bare one.
      std::vector<NodeId> leaves;
      for (NodeId v : inner)
        if (t.is_leaf(v)) leaves.push_back(v);
      parent = leaves[uniform(rng, 0, leaves.size() - 1)];
    }
    if (!t.is_leaf(parent)) ++bare;
    inner.push_back(t.add_child(parent, uniform(rng, 0, max_cost)));
  }
  // Every bare internal node gets a point first.
  std::vector<NodeId> hosts;
  for (NodeId v : inner)
    if (t.is_leaf(v)) hosts.push_back(v);
  for (std::size_t p = 0; p < points; ++p) {
    const NodeId parent = p < hosts.size() ? hosts[p] : inner[uniform(rng, 0, inner.size() - 1)];
    t.add_child(parent, uniform(rng, 0, max_cost), p);
  }
  return t;
}

// Tree with every leaf at depth `height` and up to `fanout` children per
// internal node; leaves carry points 0, 1, ...
inline RootedTree layered_tree(Rng& rng, std::size_t height, std::size_t fanout, Cost max_cost) {
  RootedTree t;
  std::vector<NodeId> level{t.root()};
  std::size_t next_point = 0;
  for (std::size_t d = 1; d <= height; ++d) {
    std::vector<NodeId> below;
    for (NodeId v : level) {
      const auto k = uniform(rng, 1, static_cast<std::int64_t>(fanout));
      for (std::int64_t i = 0; i < k; ++i)
        below.push_back(t.add_child(v, uniform(rng, 1, max_cost), d == height ? next_point++ : kNone));
    }
    level = std::move(below);
  }
  return t;
}

// Charges uniform in [lo, hi], redrawn until the total is >= 0 (so every
// connected instance is feasible).
inline std::vector<std::int64_t> charges(Rng& rng, std::size_t n, std::int64_t lo, std::int64_t hi) {
  for (;;) {
    std::vector<std::int64_t> b(n);
    std::int64_t sum = 0;
    for (auto& x : b) sum += (x = uniform(rng, lo, hi));
    if (sum >= 0) return b;
  }
}

// Spanning tree on n nodes with charges in [-5, 5] and costs in [0, 9].
inline Up2pInstance tree_up2p(Rng& rng, std::size_t n) {
  return {connected_graph(rng, n, 0, 0, 9), charges(rng, n, -5, 5)};
}

// Connected graph with total charge 0.
inline Up2pInstance zero_balance_up2p(Rng& rng, std::size_t n, std::size_t m) {
  Up2pInstance inst{connected_graph(rng, n, m - (n - 1), 1, 9), std::vector<std::int64_t>(n, 0)};
  const auto pairs = uniform(rng, 1, 3);
  for (std::int64_t i = 0; i < pairs; ++i) {
    const auto a = uniform(rng, 0, n - 1), b = uniform(rng, 0, n - 1);
    const auto w = uniform(rng, 1, 3);
    inst.charges[a] += w;
    inst.charges[b] -= w;
  }
  return inst;
}

// Connected graph with total charge `surplus` > 0 and some negative nodes.
inline Up2pInstance surplus_up2p(Rng& rng, std::size_t n, std::size_t m, std::int64_t surplus) {
  Up2pInstance inst = zero_balance_up2p(rng, n, m);
  inst.charges[uniform(rng, 0, n - 1)] += surplus;
  return inst;
}

// General random up2p instance: connected, total charge >= 0.
inline Up2pInstance random_up2p(Rng& rng, std::size_t n) {
  const std::size_t extra = std::min<std::size_t>(n, 16 - std::min<std::size_t>(n - 1, 15));
  return {connected_graph(rng, n, extra, 0, 9), charges(rng, n, -3, 3)};
}

// Backbone nodes 0..nb-1 joined by cost edges; the remaining nodes are
// sources hanging off the backbone through capacity edges. Each requirement is
// drawn below the source's capacity cut to the backbone, so the instance is
// feasible.
inline ConnCapSndpInstance random_conncap(Rng& rng, std::size_t n) {
  if (n < 2) n = 2;
  const auto nb = static_cast<std::size_t>(uniform(rng, std::max<std::int64_t>(1, n / 2), n - 1));
  ConnCapSndpInstance inst;
  inst.graph = Graph(n);
  const Graph backbone = connected_graph(rng, nb, std::min<std::size_t>(nb, 4), 1, 9);
  for (const Edge& e : backbone.edges()) {
    inst.graph.add_edge(e.a, e.b, e.cost, Capacity::infinite());
    inst.classes.push_back(EdgeClass::kCost);
  }
  auto cap_edge = [&](NodeId a, NodeId b) {
    inst.graph.add_edge(a, b, 0, Capacity(uniform(rng, 1, 3)));
    inst.classes.push_back(EdgeClass::kCapacity);
  };
  for (NodeId s = nb; s < n; ++s) {
    const auto links = uniform(rng, 1, 2);
    for (std::int64_t i = 0; i < links; ++i) cap_edge(s, static_cast<NodeId>(uniform(rng, 0, nb - 1)));
    if (s > nb && uniform(rng, 0, 1) == 1) cap_edge(s, static_cast<NodeId>(uniform(rng, nb, s - 1)));
  }
  inst.sink = static_cast<NodeId>(uniform(rng, 0, nb - 1));
  const SubGraph gu = inst.capacity_graph();
  std::vector<NodeId> bb(nb);
  for (NodeId v = 0; v < nb; ++v) bb[v] = v;
  for (NodeId s = nb; s < n; ++s) {
    const Capacity cut = max_flow_to_set(gu.graph, s, bb);
    if (cut.is_zero()) continue;
    const std::int64_t top = cut.is_infinite() ? 3 : std::min<std::int64_t>(cut.value(), 4);
    inst.sources.push_back({s, uniform(rng, 1, top)});
  }
  if (inst.sources.empty()) inst.sources.push_back({static_cast<NodeId>(uniform(rng, 0, nb - 1)), 1});
  return inst;
}

// Connected graph with costs in [1, 9], a random root and up to `max_groups`
// groups of 1 to 3 nodes.
inline GstInstance random_gst(Rng& rng, std::size_t n, std::size_t max_groups = 3,
                              std::size_t extra = 3) {
  GstInstance gst{connected_graph(rng, n, extra, 1, 9), static_cast<NodeId>(uniform(rng, 0, n - 1)), {}};
  const auto k = uniform(rng, 1, static_cast<std::int64_t>(max_groups));
  for (std::int64_t i = 0; i < k; ++i) {
    const auto size = uniform(rng, 1, std::min<std::int64_t>(3, n));
    std::vector<NodeId> g;
    while (g.size() < static_cast<std::size_t>(size)) {
      const auto v = static_cast<NodeId>(uniform(rng, 0, n - 1));
      if (std::find(g.begin(), g.end(), v) == g.end()) g.push_back(v);
    }
    std::sort(g.begin(), g.end());
    gst.groups.push_back(std::move(g));
  }
  return gst;
}

inline GstDemandInstance random_gst_demand(Rng& rng, std::size_t n, std::size_t max_groups = 3) {
  GstDemandInstance inst{random_gst(rng, n, max_groups), {}, std::vector<std::int64_t>(n)};
  for (const auto& g : inst.gst.groups)
    inst.demands.push_back(uniform(rng, 1, static_cast<std::int64_t>(g.size())));
  for (auto& b : inst.node_caps) b = uniform(rng, 0, 3);
  return inst;
}

}  // namespace capnet::gen

#endif  // CAPNET_GENERATORS_HPP_
