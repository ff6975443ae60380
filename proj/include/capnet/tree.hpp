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

#ifndef CAPNET_TREE_HPP_
#define CAPNET_TREE_HPP_

#include <algorithm>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "capnet/errors.hpp"
#include "capnet/graph.hpp"

namespace capnet {

// Rooted tree with a cost on every edge and a map from leaves to points of
// some ground set. Node 0 is the root. A tree edge is named by its child
// node, so an EdgeSubset over a RootedTree holds child node ids.
class RootedTree {
 public:
  RootedTree() : parent_{kNone}, cost_{0}, point_{kNone}, children_(1) {}

  NodeId add_child(NodeId parent, Cost cost, NodeId point = kNone) {
    if (parent >= node_count()) throw UsageError("add_child: bad parent");
    if (cost < 0) throw UsageError("add_child: negative cost");
    const NodeId v = node_count();
    parent_.push_back(parent);
    cost_.push_back(cost);
    point_.push_back(point);
    children_.emplace_back();
    children_[parent].push_back(v);
    if (point != kNone) {
      if (point >= leaf_of_point_.size()) leaf_of_point_.resize(point + 1, kNone);
      if (leaf_of_point_[point] != kNone)
        throw UsageError("point " + std::to_string(point) + " mapped twice");
      leaf_of_point_[point] = v;
    }
    return v;
  }

  std::size_t node_count() const { return parent_.size(); }
  NodeId root() const { return 0; }
  NodeId parent(NodeId v) const { return parent_[v]; }
  // Cost of the edge (parent(v), v); zero at the root.
  Cost cost(NodeId v) const { return cost_[v]; }
  const std::vector<NodeId>& children(NodeId v) const { return children_[v]; }
  bool is_leaf(NodeId v) const { return children_[v].empty(); }
  // Point carried by leaf v, or kNone.
  NodeId point(NodeId v) const { return point_[v]; }
  NodeId leaf_of_point(NodeId p) const {
    return p < leaf_of_point_.size() ? leaf_of_point_[p] : kNone;
  }
  std::size_t point_count() const {
    return static_cast<std::size_t>(
        std::count_if(point_.begin(), point_.end(), [](NodeId p) { return p != kNone; }));
  }

  std::size_t depth(NodeId v) const {
    std::size_t d = 0;
    for (; v != root(); v = parent_[v]) ++d;
    return d;
  }

  // Height of the subtree below v (a leaf has height 0).
  std::size_t height(NodeId v) const {
    std::size_t h = 0;
    for (NodeId c : children_[v]) h = std::max(h, height(c) + 1);
    return h;
  }
  std::size_t height() const { return height(root()); }

  std::size_t max_degree() const {
    std::size_t d = 0;
    for (const auto& ch : children_) d = std::max(d, ch.size());
    return d;
  }

  // Leaves below v in depth-first order.
  std::vector<NodeId> leaves(NodeId v) const {
    std::vector<NodeId> out;
    std::vector<NodeId> stack{v};
    while (!stack.empty()) {
      const NodeId x = stack.back();
      stack.pop_back();
      if (children_[x].empty()) out.push_back(x);
      for (auto it = children_[x].rbegin(); it != children_[x].rend(); ++it)
        stack.push_back(*it);
    }
    return out;
  }
  std::vector<NodeId> leaves() const { return leaves(root()); }

  bool is_ancestor(NodeId a, NodeId v) const {
    for (; v != kNone; v = parent_[v])
      if (v == a) return true;
    return false;
  }

  NodeId lca(NodeId a, NodeId b) const {
    std::size_t da = depth(a), db = depth(b);
    while (da > db) a = parent_[a], --da;
    while (db > da) b = parent_[b], --db;
    while (a != b) a = parent_[a], b = parent_[b];
    return a;
  }

  // Cost of the path from ancestor `a` down to `v`.
  Cost path_cost(NodeId a, NodeId v) const {
    Cost c = 0;
    for (; v != a; v = parent_[v]) {
      if (v == kNone) throw UsageError("path_cost: not an ancestor");
      c += cost_[v];
    }
    return c;
  }
  // Edges (as child ids) on the path from ancestor `a` down to `v`.
  std::vector<NodeId> path_edges(NodeId a, NodeId v) const {
    std::vector<NodeId> out;
    for (; v != a; v = parent_[v]) {
      if (v == kNone) throw UsageError("path_edges: not an ancestor");
      out.push_back(v);
    }
    return out;
  }

  Cost distance(NodeId a, NodeId b) const {
    const NodeId m = lca(a, b);
    return path_cost(m, a) + path_cost(m, b);
  }

  Cost cost_of(const EdgeSubset& edges) const {
    Cost c = 0;
    for (NodeId v : edges) c += cost_[check_edge(v)];
    return c;
  }

  NodeId check_edge(NodeId v) const {
    if (v == root() || v >= node_count())
      throw UsageError("not an edge of the tree: " + std::to_string(v));
    return v;
  }

  // Root-to-v path edges added to `edges`.
  void add_root_path(NodeId v, EdgeSubset& edges) const {
    for (; v != root(); v = parent_[v]) edges.insert(v);
  }

  // Whether `edges` forms one connected subtree containing the root (the
  // empty set counts as the root alone).
  bool is_rooted_subtree(const EdgeSubset& edges) const {
    for (NodeId v : edges) {
      check_edge(v);
      if (parent_[v] != root() && !edges.contains(parent_[v])) return false;
    }
    return true;
  }

  // Whether `edges` is a connected subtree whose top node is r.
  bool is_subtree_at(NodeId r, const EdgeSubset& edges) const {
    for (NodeId v : edges) {
      check_edge(v);
      if (!is_ancestor(r, v) || v == r) return false;
      if (parent_[v] != r && !edges.contains(parent_[v])) return false;
    }
    return true;
  }

  // Points carried by leaves that are endpoints of `edges`.
  std::vector<NodeId> points_of(const EdgeSubset& edges) const {
    std::vector<NodeId> out;
    for (NodeId v : edges)
      if (point_[v] != kNone) out.push_back(point_[v]);
    std::sort(out.begin(), out.end());
    return out;
  }

  // Leaf map is a bijection between leaves and points 0..point_count-1, and
  // no internal node carries a point.
  bool leaf_map_is_bijection() const {
    const std::size_t pc = point_count();
    std::vector<bool> seen(pc, false);
    for (NodeId v = 0; v < node_count(); ++v) {
      const bool leaf = is_leaf(v) && !(v == root() && node_count() == 1);
      if (leaf != (point_[v] != kNone)) return false;
      if (point_[v] != kNone) {
        if (point_[v] >= pc || seen[point_[v]]) return false;
        seen[point_[v]] = true;
      }
    }
    return true;
  }

  bool leaves_at_uniform_depth() const {
    const auto ls = leaves();
    for (NodeId l : ls)
      if (depth(l) != depth(ls.front())) return false;
    return true;
  }

 private:
  std::vector<NodeId> parent_;
  std::vector<Cost> cost_;
  std::vector<NodeId> point_;
  std::vector<std::vector<NodeId>> children_;
  std::vector<NodeId> leaf_of_point_;
};

inline EdgeSubset all_tree_edges(const RootedTree& t) {
  std::vector<NodeId> ids;
  for (NodeId v = 1; v < t.node_count(); ++v) ids.push_back(v);
  return EdgeSubset(std::move(ids));
}

// The tree as an undirected Graph over the same node ids. Edge i of the
// graph is the tree edge into node edge_child[i].
struct TreeGraph {
  Graph graph;
  std::vector<NodeId> edge_child;
};

inline TreeGraph to_graph(const RootedTree& t) {
  TreeGraph out{Graph(t.node_count()), {}};
  for (NodeId v = 1; v < t.node_count(); ++v) {
    out.graph.add_edge(t.parent(v), v, t.cost(v));
    out.edge_child.push_back(v);
  }
  return out;
}

}  // namespace capnet

#endif  // CAPNET_TREE_HPP_
