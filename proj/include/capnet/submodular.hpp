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

// Submodular tree cover by recursive greedy augmentation.
//
// A SubmodularOracle is a non-decreasing submodular set function over a
// ground set {0..n-1}, normalized so f(empty) = 0. greedy_augment() looks,
// below a tree node r, for a subtree that raises f by some target z at low
// density (cost per unit of f gained). It recurses into every child with
// targets on a geometric grid, commits the best candidate, and repeats; the
// answer is the lower-density of the full union and the first prefix that
// reached z / h(T_r). cover() calls it until f reaches its maximum.

#ifndef CAPNET_SUBMODULAR_HPP_
#define CAPNET_SUBMODULAR_HPP_

#include <algorithm>
#include <cstdint>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <unordered_map>
#include <utility>
#include <vector>

#include "capnet/embedding.hpp"
#include "capnet/graph.hpp"
#include "capnet/rational.hpp"
#include "capnet/shaping.hpp"
#include "capnet/tree.hpp"

namespace capnet {

using Membership = std::vector<bool>;

inline Membership membership(std::size_t ground, std::span<const NodeId> members) {
  Membership m(ground, false);
  for (NodeId v : members) {
    if (v >= ground) throw UsageError("set element outside the ground set");
    m[v] = true;
  }
  return m;
}

inline std::vector<NodeId> members_of(const Membership& m) {
  std::vector<NodeId> out;
  for (NodeId v = 0; v < m.size(); ++v)
    if (m[v]) out.push_back(v);
  return out;
}

// Value oracle. Copies share the underlying function. A residual oracle
// f_C(S) = f(S u C) - f(C) is the same function with a committed set C.
//
// The wrapped function is called from one thread at a time; oracles built by
// memoized() are serial.
class SubmodularOracle {
 public:
  using Fn = std::function<std::int64_t(const Membership&)>;

  SubmodularOracle(std::size_t ground_size, Fn fn)
      : ground_(ground_size),
        fn_(std::make_shared<Fn>(std::move(fn))),
        committed_(ground_size, false) {
    f_max_ = (*fn_)(Membership(ground_size, true));
  }

  std::size_t ground_size() const { return ground_; }
  std::int64_t f_max() const { return f_max_; }
  const Membership& committed() const { return committed_; }

  std::int64_t evaluate(const Membership& s) const {
    if (s.size() != ground_) throw UsageError("membership size mismatch");
    if (!has_committed_) return (*fn_)(s);
    Membership u = s;
    for (std::size_t i = 0; i < ground_; ++i)
      if (committed_[i]) u[i] = true;
    return (*fn_)(u) - offset_;
  }
  std::int64_t evaluate(std::span<const NodeId> members) const {
    return evaluate(membership(ground_, members));
  }
  std::int64_t operator()(const Membership& s) const { return evaluate(s); }

  friend SubmodularOracle residual(const SubmodularOracle& f, const Membership& add) {
    if (add.size() != f.ground_) throw UsageError("membership size mismatch");
    SubmodularOracle r = f;
    for (std::size_t i = 0; i < f.ground_; ++i)
      if (add[i]) r.committed_[i] = true;
    r.has_committed_ = std::find(r.committed_.begin(), r.committed_.end(), true) !=
                       r.committed_.end();
    r.offset_ = r.has_committed_ ? (*r.fn_)(r.committed_) : 0;
    r.f_max_ = (*r.fn_)(Membership(f.ground_, true)) - r.offset_;
    return r;
  }
  friend SubmodularOracle residual(const SubmodularOracle& f,
                                   std::span<const NodeId> add) {
    return residual(f, membership(f.ground_, add));
  }

 private:
  std::size_t ground_;
  std::shared_ptr<Fn> fn_;
  Membership committed_;
  bool has_committed_ = false;
  std::int64_t offset_ = 0;
  std::int64_t f_max_ = 0;
};

// Caches every evaluated set. Serial.
inline SubmodularOracle memoized(std::size_t ground,
                                 std::function<std::int64_t(const Membership&)> fn) {
  auto cache = std::make_shared<std::unordered_map<Membership, std::int64_t>>();
  return SubmodularOracle(ground, [cache, fn = std::move(fn)](const Membership& s) {
    auto it = cache->find(s);
    if (it != cache->end()) return it->second;
    const std::int64_t v = fn(s);
    cache->emplace(s, v);
    return v;
  });
}

// f(S) = |S|.
inline SubmodularOracle cardinality_oracle(std::size_t ground) {
  return SubmodularOracle(ground, [](const Membership& s) {
    return static_cast<std::int64_t>(std::count(s.begin(), s.end(), true));
  });
}

// f(S) = number of sets (of a set system over the ground set) hit by S.
inline SubmodularOracle coverage_oracle(std::size_t ground,
                                        std::vector<std::vector<NodeId>> sets) {
  return SubmodularOracle(ground, [sets = std::move(sets)](const Membership& s) {
    std::int64_t hit = 0;
    for (const auto& set : sets)
      for (NodeId v : set)
        if (s[v]) {
          ++hit;
          break;
        }
    return hit;
  });
}

// f(S) = sum of weights of S.
inline SubmodularOracle additive_oracle(std::vector<std::int64_t> weights) {
  const std::size_t n = weights.size();
  return SubmodularOracle(n, [w = std::move(weights)](const Membership& s) {
    std::int64_t v = 0;
    for (std::size_t i = 0; i < w.size(); ++i)
      if (s[i]) v += w[i];
    return v;
  });
}

// ---------------------------------------------------------------------------
// Greedy augmentation.

// An edge set with its cost and f-gain relative to a stated base.
struct DensityReport {
  EdgeSubset edges;
  Cost cost = 0;
  std::int64_t gain = 0;

  Rational density() const {
    if (gain <= 0) throw UsageError("density of a zero-gain tree");
    return make_rational(cost, gain);
  }
  // Exact comparison of cost/gain.
  friend bool denser_than(const DensityReport& a, const DensityReport& b) {
    return static_cast<__int128>(a.cost) * b.gain < static_cast<__int128>(b.cost) * a.gain;
  }
};

inline std::int64_t value_of(const RootedTree& t, const SubmodularOracle& f,
                             const EdgeSubset& edges) {
  return f.evaluate(t.points_of(edges));
}

// Subtrees of r with f-value below this are "small":
// z / (deg(r) * (1 + 1/lambda)) with lambda = 1/h.
inline Rational small_tree_threshold(std::int64_t z, std::size_t deg, std::size_t h) {
  return Rational(BigInt(z), BigInt(deg) * BigInt(h + 1));
}

// Recursive targets: powers of (1 + 1/h) in
// [z / (deg (1 + 1/lambda)(1 + lambda)), z], rounded up to integers and
// deduplicated, ascending.
inline std::vector<std::int64_t> augment_grid(std::int64_t z, std::size_t deg,
                                              std::size_t h) {
  if (z < 1 || deg == 0 || h == 0) throw UsageError("augment_grid: bad arguments");
  const Rational lower = small_tree_threshold(z, deg, h) * Rational(BigInt(h), BigInt(h + 1));
  const Rational step(BigInt(h + 1), BigInt(h));
  std::vector<std::int64_t> out;
  for (Rational p = 1; p <= z; p *= step) {
    if (p < lower) continue;
    const auto v = std::max<std::int64_t>(1, static_cast<std::int64_t>(ceil_of(p)));
    if (out.empty() || out.back() != v) out.push_back(v);
  }
  return out;
}

struct AugmentStats {
  std::size_t calls = 0;
};

namespace detail {

class Augmenter {
 public:
  Augmenter(const RootedTree& t, std::size_t whole_height, AugmentStats* stats)
      : t_(t), h_total_(whole_height), stats_(stats), height_(t.node_count(), 0),
        kids_(t.node_count()) {
    for (NodeId v = t.node_count(); v-- > 1;)
      height_[t.parent(v)] = std::max(height_[t.parent(v)], height_[v] + 1);
    for (NodeId v = 0; v < t.node_count(); ++v) {
      kids_[v] = t.children(v);
      std::sort(kids_[v].begin(), kids_[v].end());
    }
  }

  DensityReport run(NodeId r, std::int64_t z, const SubmodularOracle& f) {
    if (z < 1) throw UsageError("greedy_augment: target must be positive");
    if (r >= t_.node_count() || t_.is_leaf(r))
      throw UsageError("greedy_augment: root must be an internal tree node");
    if (stats_ != nullptr) ++stats_->calls;
    return height_[r] == 1 ? base_case(r, f) : recurse(r, z, f);
  }

 private:
  std::int64_t leaf_gain(NodeId u, const SubmodularOracle& f) const {
    const NodeId p = t_.point(u);
    if (p == kNone) return 0;
    const NodeId one[] = {p};
    return f.evaluate(one);
  }

  DensityReport base_case(NodeId r, const SubmodularOracle& f) const {
    std::optional<DensityReport> best;
    for (NodeId u : kids_[r]) {
      const std::int64_t g = leaf_gain(u, f);
      if (g <= 0) continue;
      DensityReport cand{EdgeSubset{u}, t_.cost(u), g};
      if (!best || denser_than(cand, *best)) best = std::move(cand);
    }
    if (!best) throw StallError("no child with positive marginal value");
    return *best;
  }

  DensityReport recurse(NodeId r, std::int64_t z, const SubmodularOracle& f) {
    const std::size_t h_r = height_[r];
    const std::size_t deg = kids_[r].size();
    EdgeSubset chosen;
    std::int64_t gained = 0;
    std::optional<DensityReport> milestone;
    std::int64_t remaining = z;
    SubmodularOracle current = f;

    while (remaining > 0) {
      std::optional<DensityReport> best;
      auto consider = [&](DensityReport cand) {
        if (cand.gain <= 0) return;
        if (!best || denser_than(cand, *best)) best = std::move(cand);
      };
      const std::vector<std::int64_t> grid = augment_grid(remaining, deg, h_total_);
      for (NodeId u : kids_[r]) {
        if (t_.is_leaf(u)) {
          consider({EdgeSubset{u}, t_.cost(u), leaf_gain(u, current)});
          continue;
        }
        for (std::int64_t zp : grid) {
          DensityReport sub;
          try {
            sub = run(u, zp, current);
          } catch (const StallError&) {
            continue;
          }
          sub.edges.insert(u);
          sub.cost += t_.cost(u);
          consider(std::move(sub));
        }
      }
      if (!best) throw StallError("no augmenting subtree with positive gain");

      chosen.merge(best->edges);
      gained += best->gain;
      remaining -= best->gain;
      current = residual(current, t_.points_of(best->edges));
      if (!milestone && static_cast<__int128>(gained) * h_r >= z) {
        milestone = DensityReport{chosen, t_.cost_of(chosen), gained};
      }
    }
    DensityReport all{chosen, t_.cost_of(chosen), gained};
    if (milestone && denser_than(*milestone, all)) return *milestone;
    return all;
  }

  const RootedTree& t_;
  std::size_t h_total_;
  AugmentStats* stats_;
  std::vector<std::size_t> height_;
  std::vector<std::vector<NodeId>> kids_;
};

}  // namespace detail

// Low-density subtree below r raising `f` (already the residual at the
// committed base) by up to z. `whole_height` fixes lambda = 1 / whole_height;
// it defaults to the height of the whole tree. Edges are child ids and
// always form a connected subtree hanging from r. Throws StallError when no
// child offers positive gain.
inline DensityReport greedy_augment(const RootedTree& t, NodeId r, std::int64_t z,
                                    const SubmodularOracle& f,
                                    std::size_t whole_height = 0,
                                    AugmentStats* stats = nullptr) {
  if (whole_height == 0) whole_height = std::max<std::size_t>(1, t.height());
  detail::Augmenter aug(t, whole_height, stats);
  return aug.run(r, z, f);
}

struct CoverResult {
  EdgeSubset edges;  // child ids; a subtree containing the root
  std::int64_t value = 0;
  std::size_t rounds = 0;
  AugmentStats stats;
};

// Starts from the root paths of the `forced` points and augments from the
// root with the whole remaining deficit until f reaches `target` (default
// f_max).
inline CoverResult cover(const RootedTree& t, const SubmodularOracle& f,
                         std::span<const NodeId> forced,
                         std::optional<std::int64_t> target = std::nullopt) {
  const std::int64_t goal = target.value_or(f.f_max());
  CoverResult out;
  for (NodeId p : forced) {
    const NodeId leaf = t.leaf_of_point(p);
    if (leaf == kNone) throw UsageError("forced point has no leaf");
    t.add_root_path(leaf, out.edges);
  }
  if (value_of(t, f, all_tree_edges(t)) < goal)
    throw InfeasibleError("cover: the tree cannot reach the target value");
  const std::size_t h = std::max<std::size_t>(1, t.height());
  for (;;) {
    out.value = value_of(t, f, out.edges);
    if (out.value >= goal) break;
    const SubmodularOracle cur = residual(f, t.points_of(out.edges));
    DensityReport rep;
    try {
      rep = greedy_augment(t, t.root(), goal - out.value, cur, h, &out.stats);
    } catch (const StallError& e) {
      throw InfeasibleError(std::string("cover stalled: ") + e.what());
    }
    out.edges.merge(rep.edges);
    ++out.rounds;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Graph instances.

struct GraphCoverOptions {
  double epsilon = 1.0;
  std::uint64_t seed = 0;
  std::size_t embed_samples = 1;
};

struct GraphCoverResult {
  EdgeSubset edges;               // graph edge ids
  std::vector<NodeId> vertices;   // vertex set of the output subgraph
  std::int64_t value = 0;
};

namespace detail {

// Repeatedly drops the most expensive leaf edge of the spanning tree whose
// far vertex is neither forced nor needed to keep f at `goal`.
inline void prune_tree(const Graph& g, const SubmodularOracle& f, std::int64_t goal,
                       std::span<const NodeId> forced, EdgeSubset& edges) {
  std::vector<bool> keep(g.node_count(), false);
  for (NodeId v : forced) keep[v] = true;
  for (bool changed = true; changed;) {
    changed = false;
    std::vector<std::size_t> degree(g.node_count(), 0);
    for (EdgeId e : edges) ++degree[g.edge(e).a], ++degree[g.edge(e).b];
    std::vector<EdgeId> order(edges.begin(), edges.end());
    std::stable_sort(order.begin(), order.end(), [&](EdgeId x, EdgeId y) {
      return g.edge(x).cost > g.edge(y).cost;
    });
    for (EdgeId e : order) {
      const Edge& ed = g.edge(e);
      for (NodeId leaf : {ed.a, ed.b}) {
        if (degree[leaf] != 1 || keep[leaf]) continue;
        EdgeSubset trial = edges;
        trial.erase(e);
        auto verts = touched_nodes(g, trial, forced);
        if (trial.empty()) verts.push_back(ed.other(leaf));
        std::sort(verts.begin(), verts.end());
        verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
        if (f.evaluate(verts) >= goal) {
          edges = std::move(trial);
          changed = true;
          break;
        }
      }
      if (changed) break;
    }
  }
}

}  // namespace detail

// Tree cover on a graph: shortest-path metric, tree embedding, height then
// degree reduction, cover, and back to graph paths. The oracle's ground set
// is the graph's vertex set. The result is connected, contains the forced
// vertices and its vertex set attains f_max.
inline GraphCoverResult solve_on_graph(const Graph& g, const SubmodularOracle& f,
                                       std::span<const NodeId> forced,
                                       const GraphCoverOptions& opt = {}) {
  if (f.ground_size() != g.node_count())
    throw UsageError("oracle ground set must be the graph's vertex set");
  const std::int64_t goal = f.f_max();
  const Components comps = connected_components(g);

  std::size_t comp = kNone;
  if (!forced.empty()) {
    comp = comps.label[forced.front()];
    for (NodeId v : forced)
      if (comps.label[v] != comp)
        throw InfeasibleError("forced vertices lie in different components");
  } else {
    std::int64_t best = -1;
    for (std::size_t c = 0; c < comps.members.size(); ++c) {
      const std::int64_t v = f.evaluate(comps.members[c]);
      if (v > best) best = v, comp = c;
    }
  }
  if (comp == kNone) return {};
  const std::vector<NodeId>& points = comps.members[comp];
  if (f.evaluate(points) < goal)
    throw InfeasibleError("no connected subgraph attains the maximum value");

  GraphCoverResult out;
  if (points.size() == 1) {
    out.vertices = points;
    out.value = f.evaluate(points);
    return out;
  }

  const Metric metric = shortest_path_metric(g, points);
  const EmbedResult embed = best_of_k_embed(metric, opt.embed_samples, total_stretch, opt.seed);

  // Oracle over metric point indices.
  const SubmodularOracle local(points.size(), [&](const Membership& s) {
    Membership full(g.node_count(), false);
    for (std::size_t i = 0; i < s.size(); ++i)
      if (s[i]) full[points[i]] = true;
    return f.evaluate(full);
  });
  std::vector<NodeId> forced_local;
  for (NodeId v : forced)
    forced_local.push_back(static_cast<NodeId>(
        std::lower_bound(points.begin(), points.end(), v) - points.begin()));

  const std::size_t param = shaping_parameter(points.size(), opt.epsilon);
  const ShapedTree tall = reduce_height(embed.tree, param);
  const ShapedTree shaped = compose(tall, reduce_degree(tall.tree, param));
  const CoverResult cov = cover(shaped.tree, local, forced_local, goal);
  const EdgeSubset tree_edges = shaped.back_map(cov.edges);

  EdgeSubset joined;
  for (const auto& group : map_leaves(embed, tree_edges))
    for (std::size_t k = 1; k < group.size(); ++k)
      joined.merge(path_between(g, points[group[k - 1]], points[group[k]]));
  EdgeSubset tree = spanning_forest(g, joined);
  detail::prune_tree(g, f, goal, forced, tree);

  out.edges = std::move(tree);
  out.vertices = touched_nodes(g, out.edges, forced);
  if (out.vertices.empty()) {
    // Nothing forced and nothing joined: the best single leaf point.
    for (const auto& group : map_leaves(embed, tree_edges))
      if (!group.empty()) out.vertices = {points[group.front()]};
  }
  out.value = f.evaluate(out.vertices);
  if (out.value < goal) throw InfeasibleError("solve_on_graph lost coverage");
  return out;
}

}  // namespace capnet

#endif  // CAPNET_SUBMODULAR_HPP_
