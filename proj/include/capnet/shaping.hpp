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

// Height and degree reduction of tree-cover instances.
//
// Both transforms keep the leaf -> point map, so a leaf set means the same
// thing before and after. Each shaped edge remembers the original edges it
// stands for; back_map() unions those, which never costs more than the shaped
// edges themselves.

#ifndef CAPNET_SHAPING_HPP_
#define CAPNET_SHAPING_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "capnet/graph.hpp"
#include "capnet/rational.hpp"
#include "capnet/tree.hpp"

namespace capnet {

// Height bound of reduce_height: h(T') <= kHeightConstant * log_alpha(l) + 2.
inline constexpr int kHeightConstant = 1;

struct ShapedTree {
  RootedTree tree;
  RootedTree source;
  // Upper bound on cost(forward_map(S)) / cost(S) over original subtrees S.
  Rational forward_cost_factor = 1;
  // origin[v]: original edges (child ids of `source`) standing behind the
  // shaped edge into v.
  std::vector<std::vector<NodeId>> origin;

  EdgeSubset back_map(const EdgeSubset& shaped) const {
    EdgeSubset out;
    for (NodeId v : shaped)
      for (NodeId e : origin[tree.check_edge(v)]) out.insert(e);
    return out;
  }

  // Union of shaped root paths to the leaves covered by `original`.
  EdgeSubset forward_map(const EdgeSubset& original) const {
    EdgeSubset out;
    for (NodeId p : source.points_of(original)) tree.add_root_path(tree.leaf_of_point(p), out);
    return out;
  }
};

inline ShapedTree identity_shape(const RootedTree& t) {
  ShapedTree s{t, t, 1, std::vector<std::vector<NodeId>>(t.node_count())};
  for (NodeId v = 1; v < t.node_count(); ++v) s.origin[v] = {v};
  return s;
}

// `second` must have been built from first.tree.
inline ShapedTree compose(const ShapedTree& first, const ShapedTree& second) {
  ShapedTree s{second.tree, first.source,
               first.forward_cost_factor * second.forward_cost_factor,
               std::vector<std::vector<NodeId>>(second.tree.node_count())};
  for (NodeId v = 1; v < second.tree.node_count(); ++v) {
    for (NodeId mid : second.origin[v])
      for (NodeId e : first.origin[mid]) s.origin[v].push_back(e);
    std::sort(s.origin[v].begin(), s.origin[v].end());
    s.origin[v].erase(std::unique(s.origin[v].begin(), s.origin[v].end()), s.origin[v].end());
  }
  return s;
}

inline std::size_t ceil_log(std::size_t base, std::size_t x) {
  std::size_t k = 0;
  for (std::size_t p = 1; p < x; p *= base) ++k;
  return k;
}

// Level banding over the depth-first leaf order. The leaves below a shaped
// node form a contiguous run; the run is cut into at most alpha near-equal
// runs, and each run hangs from a shortcut edge leading to the lowest common
// ancestor of its leaves, at the cost of the original path. Height is at most
// ceil(log_alpha l) and every node has at most alpha children. Trees already
// within ceil(log_alpha l) + 1 levels are returned unchanged.
//
// forward_cost_factor is the largest number of shaped edges whose path uses
// one original edge, computed exactly.
inline ShapedTree reduce_height(const RootedTree& t, std::size_t alpha) {
  if (alpha < 2) throw UsageError("reduce_height: alpha must be >= 2");
  const std::vector<NodeId> order = t.leaves();
  const std::size_t l = order.size();
  if (t.height() <= ceil_log(alpha, l) + 1) return identity_shape(t);

  ShapedTree s{RootedTree(), t, 1, std::vector<std::vector<NodeId>>(1)};
  std::vector<std::int64_t> coverage(t.node_count(), 0);

  auto attach = [&](NodeId shaped_parent, NodeId from, NodeId to) {
    const NodeId v = s.tree.add_child(shaped_parent, t.path_cost(from, to), t.point(to));
    auto path = t.path_edges(from, to);
    std::sort(path.begin(), path.end());
    for (NodeId e : path) ++coverage[e];
    s.origin.push_back(std::move(path));
    return v;
  };

  struct Job {
    NodeId shaped;
    NodeId at;  // original node the shaped node stands for
    std::size_t lo, hi;
  };
  std::vector<Job> jobs{{s.tree.root(), t.root(), 0, l}};
  while (!jobs.empty()) {
    const Job job = jobs.back();
    jobs.pop_back();
    const std::size_t size = job.hi - job.lo;
    const std::size_t parts = std::min(alpha, size);
    for (std::size_t j = 0; j < parts; ++j) {
      const std::size_t lo = job.lo + j * size / parts;
      const std::size_t hi = job.lo + (j + 1) * size / parts;
      if (lo == hi) continue;
      if (hi - lo == 1) {
        attach(job.shaped, job.at, order[lo]);
        continue;
      }
      NodeId top = order[lo];
      for (std::size_t k = lo + 1; k < hi; ++k) top = t.lca(top, order[k]);
      const NodeId v = attach(job.shaped, job.at, top);
      jobs.push_back({v, top, lo, hi});
    }
  }
  s.forward_cost_factor = *std::max_element(coverage.begin(), coverage.end());
  if (s.forward_cost_factor < 1) s.forward_cost_factor = 1;
  return s;
}

// Nodes with more than beta children get a gadget of zero-cost internal nodes.
// Children are cut into at most beta contiguous parts by the midpoint of their
// leaf weight; a part with one child attaches directly, larger parts get a
// gadget node and are cut again if they still exceed beta. Every gadget level
// shrinks the leaf weight by a factor beta / 2, so the height grows by at most
// ceil(log_{beta/2} l). Costs are preserved exactly in both directions.
inline ShapedTree reduce_degree(const RootedTree& t, std::size_t beta) {
  if (beta < 3) throw UsageError("reduce_degree: beta must be >= 3");
  if (t.max_degree() <= beta) return identity_shape(t);

  std::vector<std::size_t> weight(t.node_count(), 0);
  for (NodeId v = t.node_count(); v-- > 0;) {
    // Children always have larger ids than their parent.
    if (t.is_leaf(v)) weight[v] = 1;
    if (v != t.root()) weight[t.parent(v)] += weight[v];
  }

  ShapedTree s{RootedTree(), t, 1, std::vector<std::vector<NodeId>>(1)};
  struct Job {
    NodeId shaped;
    std::vector<NodeId> kids;  // original children to hang below `shaped`
  };
  std::vector<Job> jobs{{s.tree.root(), t.children(t.root())}};
  while (!jobs.empty()) {
    Job job = std::move(jobs.back());
    jobs.pop_back();
    auto hang = [&](NodeId c) {
      const NodeId v = s.tree.add_child(job.shaped, t.cost(c), t.point(c));
      s.origin.push_back({c});
      if (!t.is_leaf(c)) jobs.push_back({v, t.children(c)});
    };
    if (job.kids.size() <= beta) {
      for (NodeId c : job.kids) hang(c);
      continue;
    }
    std::size_t total = 0;
    for (NodeId c : job.kids) total += weight[c];
    std::vector<std::vector<NodeId>> parts(beta);
    std::size_t prefix = 0;
    for (NodeId c : job.kids) {
      const std::size_t k = beta * (2 * prefix + weight[c]) / (2 * total);
      parts[k].push_back(c);
      prefix += weight[c];
    }
    for (auto& part : parts) {
      if (part.empty()) continue;
      if (part.size() == 1) {
        hang(part.front());
        continue;
      }
      const NodeId g = s.tree.add_child(job.shaped, 0);
      s.origin.emplace_back();
      jobs.push_back({g, std::move(part)});
    }
  }
  return s;
}

// alpha = beta = max(3, ceil(log2(n)^epsilon)).
inline std::size_t shaping_parameter(std::size_t n, double epsilon) {
  const double lg = std::log2(static_cast<double>(std::max<std::size_t>(n, 2)));
  const auto v = static_cast<std::size_t>(std::ceil(std::pow(lg, epsilon) - 1e-9));
  return std::max<std::size_t>(3, v);
}

}  // namespace capnet

#endif  // CAPNET_SHAPING_HPP_
