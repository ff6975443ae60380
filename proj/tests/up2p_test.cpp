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

#include "capnet/up2p.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <utility>
#include <vector>

#include "capnet/exact.hpp"
#include "capnet/generators.hpp"
#include "gtest/gtest.h"

namespace capnet {
namespace {

Up2pInstance path_instance(std::vector<std::int64_t> charges, std::vector<Cost> costs) {
  Up2pInstance inst{Graph(charges.size()), std::move(charges)};
  for (NodeId v = 0; v + 1 < inst.graph.node_count(); ++v) inst.graph.add_edge(v, v + 1, costs[v]);
  return inst;
}

// Sum of y over the sets separating the endpoints of e.
Rational crossing_dual(const DualState& st, const Edge& e) {
  Rational s = 0;
  for (const DualSet& d : st.sets) {
    const bool a = std::binary_search(d.members.begin(), d.members.end(), e.a);
    const bool b = std::binary_search(d.members.begin(), d.members.end(), e.b);
    if (a != b) s += d.y;
  }
  return s;
}

bool laminar(const std::vector<DualSet>& sets) {
  for (const DualSet& x : sets)
    for (const DualSet& y : sets) {
      std::vector<NodeId> both;
      std::set_intersection(x.members.begin(), x.members.end(), y.members.begin(), y.members.end(),
                            std::back_inserter(both));
      if (!both.empty() && both.size() != x.members.size() && both.size() != y.members.size())
        return false;
    }
  return true;
}

bool inclusion_minimal(const Up2pInstance& inst, const EdgeSubset& edges) {
  for (EdgeId e : edges) {
    EdgeSubset less = edges;
    less.erase(e);
    if (verify(inst, less).feasible) return false;
  }
  return true;
}

// Cheapest edge set whose largest component holds at least k terminals.
Cost brute_k_steiner(const Graph& g, const std::vector<NodeId>& terminals, std::size_t k) {
  const std::size_t m = g.edge_count();
  std::optional<Cost> best;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
    EdgeSubset s;
    Cost c = 0;
    for (EdgeId e = 0; e < m; ++e)
      if (mask >> e & 1) s.insert(e), c += g.edge(e).cost;
    if (best && c >= *best) continue;
    const Components comps = connected_components(g, s);
    std::vector<std::size_t> count(comps.members.size(), 0);
    for (NodeId t : terminals) ++count[comps.label[t]];
    if (*std::max_element(count.begin(), count.end()) >= k) best = c;
  }
  return *best;
}

TEST(Up2pVerifyTest, Examples) {
  Up2pInstance zero{Graph(3), {0, 0, 0}};
  EXPECT_TRUE(verify(zero, {}).feasible);
  EXPECT_EQ(verify(zero, {}).components.size(), 3u);

  Up2pInstance neg{Graph(2), {-1, 1}};
  const Up2pReport r = verify(neg, {});
  EXPECT_FALSE(r.feasible);
  ASSERT_EQ(r.offending.size(), 1u);
  EXPECT_EQ(r.components[r.offending[0]].nodes, std::vector<NodeId>({0}));
  EXPECT_EQ(r.components[r.offending[0]].charge, -1);
  EXPECT_FALSE(is_feasible(neg));

  Up2pInstance bad{Graph(2), {1}};
  EXPECT_THROW(verify(bad, {}), UsageError);
}

TEST(UncrossingTest, ExhaustiveOnSmallGroundSets) {
  for (std::size_t n = 1; n <= 4; ++n) {
    std::vector<std::int64_t> b(n, -2);
    for (;;) {
      for (std::uint64_t x = 0; x < (std::uint64_t{1} << n); ++x)
        for (std::uint64_t y = 0; y < (std::uint64_t{1} << n); ++y) ASSERT_TRUE(satisfies_uncrossing(b, x, y));
      std::size_t i = 0;
      while (i < n && b[i] == 2) b[i++] = -2;
      if (i == n) break;
      ++b[i];
    }
  }
}

TEST(UncrossingTest, ZeroChargeSetsAreExempt) {
  const std::int64_t b[] = {1, -1, 0};
  EXPECT_TRUE(satisfies_uncrossing(b, 0b011, 0b001));
  EXPECT_TRUE(satisfies_uncrossing(b, 0b001, 0b110));
}

TEST(PrimalDualTest, SingleEdge) {
  Up2pInstance inst{Graph(2), {1, -1}};
  inst.graph.add_edge(0, 1, 7);
  const PrimalDualResult r = primal_dual(inst);
  EXPECT_EQ(r.edges, EdgeSubset({0}));
  EXPECT_EQ(r.dual.dual_total(), Rational(7));
}

TEST(PrimalDualTest, PathThroughZeroNode) {
  const Up2pInstance inst = path_instance({1, 0, -1}, {1, 1});
  EXPECT_EQ(solve_zero_balance(inst), EdgeSubset({0, 1}));
  EXPECT_EQ(brute_up2p(inst).cost, 2);
}

TEST(PrimalDualTest, Errors) {
  Up2pInstance surplus{Graph(2), {1, 0}};
  EXPECT_THROW(solve_zero_balance(surplus), UsageError);
  Up2pInstance apart{Graph(2), {1, -1}};
  EXPECT_THROW(solve_zero_balance(apart), InfeasibleError);
}

TEST(PrimalDualTest, AllZeroNeedsNothing) {
  gen::Rng rng(61);
  Up2pInstance inst{gen::connected_graph(rng, 5, 3, 1, 9), std::vector<std::int64_t>(5, 0)};
  const PrimalDualResult r = primal_dual(inst);
  EXPECT_TRUE(r.edges.empty());
  EXPECT_TRUE(r.dual.sets.empty());
}

TEST(PrimalDualTest, DualFeasibleAndTwoApproximate) {
  gen::Rng rng(62);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = gen::uniform(rng, 2, 9);
    const std::size_t m = gen::uniform(rng, n - 1, std::min<std::size_t>(12, n * (n - 1) / 2 + 2));
    const Up2pInstance inst = gen::zero_balance_up2p(rng, n, m);
    std::size_t events = 0;
    const PrimalDualResult r = primal_dual(inst, [&](const DualState& st) {
      ++events;
      for (const Edge& e : inst.graph.edges()) ASSERT_LE(crossing_dual(st, e), make_rational(e.cost));
      const Edge& just = inst.graph.edge(st.added.back());
      ASSERT_EQ(crossing_dual(st, just), make_rational(just.cost));
      for (const Rational& t : st.times) ASSERT_GE(t, 0);
    });
    ASSERT_EQ(events, r.dual.added.size());
    ASSERT_TRUE(laminar(r.dual.sets));
    ASSERT_TRUE(verify(inst, r.edges).feasible);
    ASSERT_TRUE(inclusion_minimal(inst, r.edges));
    const Cost cost = r.edges.total_cost(inst.graph);
    const Cost opt = brute_up2p(inst).cost;
    ASSERT_LE(make_rational(cost), 2 * r.dual.dual_total()) << trial;
    ASSERT_LE(r.dual.dual_total(), make_rational(opt)) << trial;
    ASSERT_LE(cost, 2 * opt);
  }
}

TEST(TreeDpTest, Examples) {
  Up2pInstance single{Graph(1), {0}};
  EXPECT_TRUE(solve_tree_exact(single).empty());

  const Up2pInstance path = path_instance({-1, 0, 1}, {2, 3});
  EXPECT_EQ(solve_tree_exact(path), EdgeSubset({0, 1}));

  Up2pInstance lonely{Graph(1), {-1}};
  EXPECT_THROW(solve_tree_exact(lonely), InfeasibleError);

  Up2pInstance cycle = path_instance({0, 0, 0}, {1, 1});
  cycle.graph.add_edge(0, 2, 1);
  EXPECT_THROW(solve_tree_exact(cycle), UsageError);

  Up2pInstance wide{Graph(2), {-1000, 1000}};
  wide.graph.add_edge(0, 1, 1);
  EXPECT_THROW(TreeDp(wide, 100), UsageError);
  EXPECT_EQ(solve_tree_exact(wide), EdgeSubset({0}));
}

TEST(TreeDpTest, MatchesBruteForceOnRandomTrees) {
  gen::Rng rng(63);
  for (int trial = 0; trial < 100; ++trial) {
    const Up2pInstance inst = gen::tree_up2p(rng, gen::uniform(rng, 1, 12));
    const EdgeSubset sol = solve_tree_exact(inst);
    ASSERT_TRUE(verify(inst, sol).feasible);
    ASSERT_EQ(sol.total_cost(inst.graph), brute_up2p(inst).cost) << trial;
  }
}

TEST(TreeDpTest, HandlesForests) {
  gen::Rng rng(64);
  for (int trial = 0; trial < 40; ++trial) {
    Up2pInstance inst = gen::tree_up2p(rng, gen::uniform(rng, 2, 10));
    // Drop one edge to split the tree.
    Graph g(inst.graph.node_count());
    const EdgeId cut = static_cast<EdgeId>(gen::uniform(rng, 0, inst.graph.edge_count() - 1));
    for (EdgeId e = 0; e < inst.graph.edge_count(); ++e)
      if (e != cut) g.add_edge(inst.graph.edge(e).a, inst.graph.edge(e).b, inst.graph.edge(e).cost);
    inst.graph = g;
    if (!is_feasible(inst)) {
      EXPECT_THROW(solve_tree_exact(inst), InfeasibleError);
      continue;
    }
    const EdgeSubset sol = solve_tree_exact(inst);
    ASSERT_TRUE(verify(inst, sol).feasible);
    ASSERT_EQ(sol.total_cost(inst.graph), brute_up2p(inst).cost) << trial;
  }
}

TEST(TreeDpTest, EveryEntryReconstructs) {
  gen::Rng rng(65);
  for (int trial = 0; trial < 30; ++trial) {
    const Up2pInstance inst = gen::tree_up2p(rng, gen::uniform(rng, 1, 9));
    const TreeDp dp(inst);
    const Graph& bg = dp.binary_graph();
    ASSERT_LE(bg.node_count(), 2 * inst.graph.node_count());
    for (NodeId v = 0; v < bg.node_count(); ++v) {
      const std::vector<NodeId> sub = dp.subtree(v);
      for (std::int64_t b = dp.min_charge(); b <= dp.max_charge(); ++b) {
        if (dp.value(v, b) == TreeDp::kInfinite) {
          EXPECT_THROW(dp.reconstruct(v, b), InfeasibleError);
          continue;
        }
        const EdgeSubset edges = dp.reconstruct(v, b);
        ASSERT_EQ(edges.total_cost(bg), dp.value(v, b));
        const Components comps = connected_components(bg, edges);
        std::vector<std::int64_t> sum(comps.members.size(), 0);
        for (NodeId u : sub) sum[comps.label[u]] += dp.binary_charges()[u];
        for (EdgeId e : edges) {
          ASSERT_TRUE(std::binary_search(sub.begin(), sub.end(), bg.edge(e).a));
          ASSERT_TRUE(std::binary_search(sub.begin(), sub.end(), bg.edge(e).b));
        }
        for (NodeId u : sub) {
          if (comps.label[u] == comps.label[v]) {
            ASSERT_EQ(sum[comps.label[u]], b);
          } else {
            ASSERT_GE(sum[comps.label[u]], 0);
          }
        }
      }
    }
  }
}

TEST(TreeDpTest, EntriesAreOptimal) {
  // Every finite entry against enumeration of edge subsets inside the subtree.
  gen::Rng rng(66);
  for (int trial = 0; trial < 25; ++trial) {
    const Up2pInstance inst = gen::tree_up2p(rng, gen::uniform(rng, 1, 7));
    const TreeDp dp(inst);
    const Graph& bg = dp.binary_graph();
    for (NodeId v = 0; v < bg.node_count(); ++v) {
      const std::vector<NodeId> sub = dp.subtree(v);
      std::vector<EdgeId> inside;
      for (EdgeId e = 0; e < bg.edge_count(); ++e)
        if (std::binary_search(sub.begin(), sub.end(), bg.edge(e).a) &&
            std::binary_search(sub.begin(), sub.end(), bg.edge(e).b))
          inside.push_back(e);
      std::vector<Cost> best(dp.max_charge() - dp.min_charge() + 1, TreeDp::kInfinite);
      for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << inside.size()); ++mask) {
        EdgeSubset s;
        for (std::size_t i = 0; i < inside.size(); ++i)
          if (mask >> i & 1) s.insert(inside[i]);
        const Components comps = connected_components(bg, s);
        std::vector<std::int64_t> sum(comps.members.size(), 0);
        for (NodeId u : sub) sum[comps.label[u]] += dp.binary_charges()[u];
        bool ok = true;
        for (NodeId u : sub)
          if (comps.label[u] != comps.label[v] && sum[comps.label[u]] < 0) ok = false;
        if (!ok) continue;
        const std::int64_t b = sum[comps.label[v]];
        best[b - dp.min_charge()] = std::min(best[b - dp.min_charge()], s.total_cost(bg));
      }
      for (std::int64_t b = dp.min_charge(); b <= dp.max_charge(); ++b)
        ASSERT_EQ(dp.value(v, b), best[b - dp.min_charge()]) << "trial " << trial << " v " << v;
    }
  }
}

TEST(TreeDpTest, BinarizationKeepsCostAndBoundsDegree) {
  // Star with six leaves: the center needs gadgets.
  Up2pInstance star{Graph(7), {-3, 1, 1, 1, 0, 0, 0}};
  for (NodeId v = 1; v < 7; ++v) star.graph.add_edge(0, v, static_cast<Cost>(v));
  const TreeDp dp(star);
  EXPECT_GT(dp.binary_graph().node_count(), 7u);
  for (NodeId v = 0; v < dp.binary_graph().node_count(); ++v) {
    std::size_t down = 0;
    for (EdgeId e : dp.binary_graph().incident(v))
      if (dp.binary_graph().edge(e).a == v) ++down;
    EXPECT_LE(down, 2u);
  }
  Cost gadget_cost = 0;
  for (EdgeId e = 0; e < dp.binary_graph().edge_count(); ++e)
    if (dp.original_edge()[e] == kNone) gadget_cost += dp.binary_graph().edge(e).cost;
  EXPECT_EQ(gadget_cost, 0);
  EXPECT_EQ(dp.solve().second, 6);
  EXPECT_EQ(dp.solve().first, EdgeSubset({0, 1, 2}));
}

TEST(SolveGeneralTest, Examples) {
  gen::Rng rng(67);
  Up2pInstance zero{gen::connected_graph(rng, 5, 2, 1, 9), std::vector<std::int64_t>(5, 0)};
  EXPECT_TRUE(solve_general(zero).empty());

  Up2pInstance star{Graph(4), {0, 1, -1, 0}};
  for (NodeId v = 1; v < 4; ++v) star.graph.add_edge(0, v, 2);
  const EdgeSubset s = solve_general(star, 3);
  EXPECT_TRUE(verify(star, s).feasible);
  EXPECT_EQ(s, EdgeSubset({0, 1}));

  Up2pInstance apart{Graph(2), {1, -1}};
  EXPECT_THROW(solve_general(apart), InfeasibleError);
}

TEST(SolveGeneralTest, MedianRatioIsLogarithmic) {
  gen::Rng rng(68);
  std::vector<double> ratios;
  for (int seed = 0; seed < 100; ++seed) {
    const Up2pInstance inst = gen::random_up2p(rng, gen::uniform(rng, 2, 9));
    const EdgeSubset s = solve_general(inst, seed);
    ASSERT_TRUE(verify(inst, s).feasible) << seed;
    const Cost opt = brute_up2p(inst).cost;
    const Cost cost = s.total_cost(inst.graph);
    const double cap = 4 * std::log(static_cast<double>(inst.charged_nodes().size()) + 2);
    if (opt == 0) {
      ratios.push_back(cost == 0 ? 1.0 : cap + 1);
    } else {
      ratios.push_back(static_cast<double>(cost) / static_cast<double>(opt) / cap);
    }
  }
  std::nth_element(ratios.begin(), ratios.begin() + 50, ratios.end());
  EXPECT_LE(ratios[50], 1.0);
}

TEST(ContractTest, MergesComponents) {
  const Up2pInstance inst = path_instance({1, 2, -1, 0}, {1, 2, 3});
  const Contraction c = contract(inst, EdgeSubset{0});
  EXPECT_EQ(c.instance.graph.node_count(), 3u);
  EXPECT_EQ(c.instance.charges, std::vector<std::int64_t>({3, -1, 0}));
  EXPECT_EQ(c.parent_edge, std::vector<EdgeId>({1, 2}));
  EXPECT_EQ(c.node_of[1], 0u);
}

TEST(SmallSurplusTest, Examples) {
  Up2pInstance positive = path_instance({2, 0, 1}, {1, 1});
  EXPECT_TRUE(solve_small_surplus(positive).empty());

  Up2pInstance pair{Graph(2), {2, -1}};
  pair.graph.add_edge(0, 1, 5);
  EXPECT_EQ(solve_small_surplus(pair), EdgeSubset({0}));

  Up2pInstance negative{Graph(1), {-1}};
  EXPECT_THROW(solve_small_surplus(negative), InfeasibleError);

  const Up2pInstance balanced = path_instance({1, 0, -1}, {1, 1});
  EXPECT_EQ(solve_small_surplus(balanced), solve_zero_balance(balanced));
}

TEST(SmallSurplusTest, PhaseBoundsAndRatio) {
  gen::Rng rng(69);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = gen::uniform(rng, 2, 9);
    const std::size_t m = gen::uniform(rng, n - 1, std::min<std::size_t>(12, n * (n - 1) / 2 + 2));
    const std::int64_t bv = gen::uniform(rng, 1, 3);
    const Up2pInstance inst = gen::surplus_up2p(rng, n, m, bv);
    ASSERT_EQ(inst.total_charge(), bv);
    const SurplusResult r = solve_small_surplus_detailed(inst, trial);
    const Cost opt = brute_up2p(inst).cost;
    ASSERT_TRUE(verify(inst, r.edges).feasible) << trial;
    ASSERT_LE(r.phase1.total_cost(inst.graph), 4 * opt) << trial;
    ASSERT_LE(r.phase1_nonzero_components, static_cast<std::size_t>(4 * bv));
    const double cap = 8 * std::log(2.0 + static_cast<double>(bv)) + 8;
    ASSERT_LE(static_cast<double>(r.edges.total_cost(inst.graph)), cap * static_cast<double>(opt)) << trial;
  }
}

TEST(SteinerForestTest, Charges) {
  Graph g(5);
  const std::pair<NodeId, NodeId> pairs[] = {{0, 1}, {2, 3}};
  EXPECT_EQ(reduce_steiner_forest(g, pairs).charges, std::vector<std::int64_t>({2, -2, 4, -4, 0}));
  EXPECT_EQ(reduce_steiner_forest(g, {}).charges, std::vector<std::int64_t>(5, 0));
  const std::pair<NodeId, NodeId> shared[] = {{0, 1}, {1, 2}};
  EXPECT_THROW(reduce_steiner_forest(g, shared), UsageError);
}

TEST(SteinerForestTest, FeasibleIffPairsConnected) {
  gen::Rng rng(70);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = gen::uniform(rng, 2, 9);
    const Graph g = gen::connected_graph(rng, n, 3, 1, 9);
    std::vector<NodeId> perm(n);
    for (NodeId v = 0; v < n; ++v) perm[v] = v;
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<std::pair<NodeId, NodeId>> pairs;
    const auto k = gen::uniform(rng, 0, n / 2);
    for (std::int64_t i = 0; i < k; ++i) pairs.push_back({perm[2 * i], perm[2 * i + 1]});
    const Up2pInstance inst = reduce_steiner_forest(g, pairs);
    for (int sample = 0; sample < 40; ++sample) {
      EdgeSubset s;
      for (EdgeId e = 0; e < g.edge_count(); ++e)
        if (gen::uniform(rng, 0, 1) == 1) s.insert(e);
      const Components comps = connected_components(g, s);
      bool connected = true;
      for (const auto& [a, b] : pairs) connected = connected && comps.label[a] == comps.label[b];
      ASSERT_EQ(verify(inst, s).feasible, connected) << trial;
    }
  }
}

TEST(KSteinerTest, Charges) {
  Graph g(4);
  const NodeId u[] = {0, 2, 3};
  EXPECT_EQ(reduce_k_steiner(g, u, 3, 2).charges, std::vector<std::int64_t>({1, 0, -2, 1}));
  const Up2pInstance one = reduce_k_steiner(g, u, 1, 0);
  EXPECT_EQ(one.charges[0], 0);
  EXPECT_TRUE(verify(one, {}).feasible);
  EXPECT_THROW(reduce_k_steiner(g, u, 2, 1), UsageError);
  EXPECT_THROW(reduce_k_steiner(g, u, 4, 0), UsageError);
}

TEST(KSteinerTest, GuessLoopMatchesBruteForce) {
  gen::Rng rng(71);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = gen::uniform(rng, 2, 8);
    const Graph g = gen::connected_graph(rng, n, 3, 1, 9);
    std::vector<NodeId> terms;
    for (NodeId v = 0; v < n; ++v)
      if (gen::uniform(rng, 0, 1) == 1) terms.push_back(v);
    if (terms.empty()) terms.push_back(0);
    const std::size_t k = gen::uniform(rng, 1, terms.size());
    const KSteinerResult r =
        solve_k_steiner(g, terms, k, [](const Up2pInstance& inst) { return brute_up2p(inst).edges; });
    ASSERT_EQ(r.cost, brute_k_steiner(g, terms, k)) << trial;
    ASSERT_TRUE(verify(reduce_k_steiner(g, terms, k, terms[r.guess]), r.edges).feasible);
  }
}

}  // namespace
}  // namespace capnet
