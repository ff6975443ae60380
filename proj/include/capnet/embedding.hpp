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

// Random hierarchically separated tree embeddings of finite metrics
// (the FRT construction).
//
// Shape of the produced tree: the root is the level-L cluster holding every
// point, where L is the smallest integer >= 1 with 2^L >= max distance (L = 0
// when all distances are zero). Level i clusters are obtained by cutting each
// level i+1 cluster with balls of radius beta * 2^(i-1) around the centers,
// taken in a random order, with beta uniform in [1, 2). The edge into a level
// i cluster costs 2^i. Distances are integers, so a level i >= 1 ball has
// radius at most 2^i - 1 and two points first split below a level i cluster
// are at most 2^(i+1) - 2 apart, which is exactly their tree distance; hence
// dominance. Level-0 clusters hold exactly one zero-distance
// class; each point then hangs below its class by a zero-cost leaf edge, so
// every leaf sits at depth L + 1.

#ifndef CAPNET_EMBEDDING_HPP_
#define CAPNET_EMBEDDING_HPP_

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <random>
#include <vector>

#include "capnet/graph.hpp"
#include "capnet/rational.hpp"
#include "capnet/tree.hpp"

namespace capnet {

struct EmbedResult {
  RootedTree tree;  // leaf points are metric point indices
  Metric metric;
  std::uint64_t seed = 0;

  Cost tree_distance(std::size_t i, std::size_t j) const {
    return tree.distance(tree.leaf_of_point(i), tree.leaf_of_point(j));
  }
};

inline EmbedResult frt_embed(const Metric& metric, std::uint64_t seed) {
  const std::size_t n = metric.point_count();
  if (n == 0) throw UsageError("frt_embed: empty metric");

  std::mt19937_64 rng(seed);
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::shuffle(order.begin(), order.end(), rng);
  // beta = 1 + frac / 2^32.
  const std::uint64_t frac = rng() >> 32;

  const Cost diameter = metric.max_distance();
  int levels = 0;
  if (diameter > 0) {
    levels = 1;
    while ((Cost{1} << levels) < diameter) ++levels;
  }

  // d <= beta * 2^(i-1)  <=>  d * 2^33 <= (2^32 + frac) * 2^i
  auto within = [&](Cost d, int i) {
    const __int128 lhs = static_cast<__int128>(d) << 33;
    const __int128 rhs = (static_cast<__int128>((std::uint64_t{1} << 32) + frac)) << i;
    return lhs <= rhs;
  };

  EmbedResult out{RootedTree(), metric, seed};
  struct Cluster {
    NodeId node;
    std::vector<std::size_t> members;
  };
  std::vector<Cluster> current;
  {
    std::vector<std::size_t> all(n);
    std::iota(all.begin(), all.end(), std::size_t{0});
    current.push_back({out.tree.root(), std::move(all)});
  }
  for (int i = levels - 1; i >= 0; --i) {
    std::vector<Cluster> next;
    const Cost edge_cost = Cost{1} << i;
    for (const Cluster& c : current) {
      std::vector<bool> taken(c.members.size(), false);
      std::size_t left = c.members.size();
      for (std::size_t center : order) {
        if (left == 0) break;
        std::vector<std::size_t> part;
        for (std::size_t k = 0; k < c.members.size(); ++k) {
          if (!taken[k] && within(metric(center, c.members[k]), i)) {
            taken[k] = true;
            part.push_back(c.members[k]);
          }
        }
        if (part.empty()) continue;
        left -= part.size();
        next.push_back({out.tree.add_child(c.node, edge_cost), std::move(part)});
      }
    }
    current = std::move(next);
  }
  for (const Cluster& c : current)
    for (std::size_t p : c.members) out.tree.add_child(c.node, 0, p);
  return out;
}

// Sum over point pairs at positive distance of tree distance / distance.
inline Rational total_stretch(const EmbedResult& r) {
  Rational s = 0;
  const std::size_t n = r.metric.point_count();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (r.metric(i, j) > 0) s += make_rational(r.tree_distance(i, j), r.metric(i, j));
  return s;
}

// Draws k embeddings with seeds seed, seed+1, ..., seed+k-1 and returns the
// one with the smallest score; ties go to the lowest sample index.
inline EmbedResult best_of_k_embed(const Metric& metric, std::size_t k,
                                   const std::function<Rational(const EmbedResult&)>& score,
                                   std::uint64_t seed) {
  if (k == 0) throw UsageError("best_of_k_embed: k must be positive");
  EmbedResult best = frt_embed(metric, seed);
  Rational best_score = score(best);
  for (std::size_t j = 1; j < k; ++j) {
    EmbedResult cand = frt_embed(metric, seed + j);
    Rational s = score(cand);
    if (s < best_score) {
      best = std::move(cand);
      best_score = std::move(s);
    }
  }
  return best;
}

// Groups the leaves of each connected component of `tree_edges` (child ids of
// result.tree). Groups are listed by their first leaf in depth-first order and
// hold metric point indices in depth-first order; components without leaves
// are dropped.
inline std::vector<std::vector<std::size_t>> map_leaves(const EmbedResult& result,
                                                        const EdgeSubset& tree_edges) {
  const RootedTree& t = result.tree;
  DisjointSets dsu(t.node_count());
  for (NodeId v : tree_edges) dsu.unite(t.check_edge(v), t.parent(v));
  std::vector<bool> touched(t.node_count(), false);
  for (NodeId v : tree_edges) touched[v] = touched[t.parent(v)] = true;

  std::vector<std::vector<std::size_t>> groups;
  std::vector<std::size_t> group_of_root(t.node_count(), kNone);
  for (NodeId leaf : t.leaves()) {
    if (!touched[leaf] || t.point(leaf) == kNone) continue;
    const std::size_t r = dsu.find(leaf);
    if (group_of_root[r] == kNone) {
      group_of_root[r] = groups.size();
      groups.emplace_back();
    }
    groups[group_of_root[r]].push_back(t.point(leaf));
  }
  return groups;
}

}  // namespace capnet

#endif  // CAPNET_EMBEDDING_HPP_
