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

#include "capnet/capsndp.hpp"

#include <optional>
#include <vector>

#include "capnet/exact.hpp"
#include "capnet/generators.hpp"
#include "gtest/gtest.h"

namespace capnet {
namespace {

Membership from_mask(std::size_t n, std::uint64_t mask) {
  Membership m(n, false);
  for (std::size_t i = 0; i < n; ++i) m[i] = mask >> i & 1;
  return m;
}

// min(r, smallest capacity-graph cut separating s from every node of S),
// by enumerating the side X of s.
std::int64_t brute_term(const Graph& gu, NodeId s, std::int64_t r, std::uint64_t set) {
  if (set >> s & 1) return r;
  const std::size_t n = gu.node_count();
  std::int64_t best = r;
  for (std::uint64_t x = 0; x < (std::uint64_t{1} << n); ++x) {
    if (!(x >> s & 1) || (x & set) != 0) continue;
    Capacity c(0);
    for (const Edge& e : gu.edges())
      if ((x >> e.a & 1) != (x >> e.b & 1)) c += e.capacity;
    if (!c.is_infinite()) best = std::min(best, c.value());
  }
  return best;
}

ConnCapSndpInstance single_edge_instance() {
  // s = 0 -- v = 1 capacity 2; sink 1, requirement 3.
  ConnCapSndpInstance inst;
  inst.graph = Graph(2);
  inst.graph.add_edge(0, 1, 0, Capacity(2));
  inst.classes = {EdgeClass::kCapacity};
  inst.sink = 1;
  inst.sources = {{0, 3}};
  return inst;
}

TEST(NormalizeTest, SplitsEveryEdge) {
  CapSndpInstance inst{Graph(2), {{0, 1, 2}}};
  inst.graph.add_edge(0, 1, 3, Capacity(2));
  inst.graph.add_edge(0, 1, 0, Capacity(5));
  const SplitGraph s = normalize(inst);
  ASSERT_EQ(s.graph.node_count(), 4u);
  ASSERT_EQ(s.graph.edge_count(), 4u);
  EXPECT_EQ(s.original_node_count, 2u);
  const Edge& a = s.graph.edge(0);
  const Edge& b = s.graph.edge(1);
  EXPECT_EQ(a.a, 0u);
  EXPECT_EQ(a.b, 2u);
  EXPECT_EQ(a.cost, 3);
  EXPECT_TRUE(a.capacity.is_infinite());
  EXPECT_EQ(b.a, 2u);
  EXPECT_EQ(b.b, 1u);
  EXPECT_EQ(b.cost, 0);
  EXPECT_EQ(b.capacity, Capacity(2));
  EXPECT_EQ(s.classes, std::vector<EdgeClass>({EdgeClass::kCost, EdgeClass::kCapacity,
                                               EdgeClass::kCost, EdgeClass::kCapacity}));
  // The zero-cost edge is split the same way.
  EXPECT_EQ(s.graph.edge(2).cost, 0);
  EXPECT_TRUE(s.graph.edge(2).capacity.is_infinite());
  EXPECT_EQ(s.graph.edge(3).capacity, Capacity(5));
  EXPECT_EQ(inst.requirement(1, 0), 2);
}

TEST(NormalizeTest, PreservesPairwiseFlows) {
  gen::Rng rng(51);
  for (int trial = 0; trial < 50; ++trial) {
    CapSndpInstance inst{gen::connected_graph(rng, 6, 4, 0, 9), {}};
    Graph g(6);
    for (const Edge& e : inst.graph.edges()) g.add_edge(e.a, e.b, e.cost, Capacity(gen::uniform(rng, 0, 5)));
    inst.graph = g;
    const SplitGraph s = normalize(inst);
    for (NodeId a = 0; a < 6; ++a)
      for (NodeId b = a + 1; b < 6; ++b)
        ASSERT_EQ(max_flow(g, a, b).value, max_flow(s.graph, a, b).value) << trial;
  }
}

TEST(NormalizeTest, RejectsBadRequirements) {
  CapSndpInstance inst{Graph(2), {{0, 2, 1}}};
  EXPECT_THROW(normalize(inst), UsageError);
  inst.requirements = {{0, 1, -1}};
  EXPECT_THROW(normalize(inst), UsageError);
}

TEST(ConnCapInstanceTest, Validation) {
  ConnCapSndpInstance inst = single_edge_instance();
  EXPECT_NO_THROW(inst.validate());
  inst.classes = {EdgeClass::kCost};
  EXPECT_THROW(inst.validate(), UsageError);
  inst = single_edge_instance();
  inst.sources[0].requirement = 0;
  EXPECT_THROW(inst.validate(), UsageError);
  inst = single_edge_instance();
  inst.classes.clear();
  EXPECT_THROW(inst.validate(), UsageError);
}

TEST(ConnCapOracleTest, Examples) {
  const ConnCapSndpInstance inst = single_edge_instance();
  const SubmodularOracle f = conncap_oracle(inst);
  const NodeId v[] = {1}, s[] = {0};
  EXPECT_EQ(f.evaluate(std::span<const NodeId>()), 0);
  EXPECT_EQ(f.evaluate(v), 2);
  EXPECT_EQ(f.evaluate(s), 3);
  EXPECT_EQ(f.f_max(), 3);
}

TEST(ConnCapOracleTest, MatchesEnumeratedCuts) {
  gen::Rng rng(52);
  for (int trial = 0; trial < 30; ++trial) {
    const ConnCapSndpInstance inst = gen::random_conncap(rng, gen::uniform(rng, 2, 7));
    const SubmodularOracle f = conncap_oracle(inst);
    const Graph gu = inst.capacity_graph().graph;
    const std::size_t n = inst.graph.node_count();
    for (std::uint64_t set = 0; set < (std::uint64_t{1} << n); ++set) {
      std::int64_t expect = 0;
      for (const Source& src : inst.sources) expect += brute_term(gu, src.node, src.requirement, set);
      ASSERT_EQ(f.evaluate(from_mask(n, set)), expect) << "trial " << trial;
    }
  }
}

TEST(ConnCapOracleTest, Submodular) {
  gen::Rng rng(53);
  for (int trial = 0; trial < 30; ++trial) {
    const ConnCapSndpInstance inst = gen::random_conncap(rng, gen::uniform(rng, 2, 10));
    const SubmodularCheck c = check_submodular(conncap_oracle(inst));
    ASSERT_TRUE(c.ok) << c.failed;
  }
}

TEST(GstDemandOracleTest, Examples) {
  GstDemandInstance inst{{Graph(2), 0, {{0, 1}}}, {2}, {1, 1}};
  const SubmodularOracle f = gst_demand_oracle(inst);
  const NodeId a[] = {0};
  EXPECT_EQ(f.evaluate(std::span<const NodeId>()), 0);
  EXPECT_EQ(f.evaluate(a), 1);
  EXPECT_EQ(f.f_max(), 2);

  inst.node_caps = {0, 1};
  EXPECT_EQ(gst_demand_oracle(inst).evaluate(a), 0);
  inst.demands = {0};
  EXPECT_THROW(gst_demand_oracle(inst), UsageError);
}

TEST(GstDemandOracleTest, FullSetWithLargeCapacities) {
  gen::Rng rng(54);
  for (int trial = 0; trial < 30; ++trial) {
    GstDemandInstance inst = gen::random_gst_demand(rng, gen::uniform(rng, 1, 5));
    for (auto& b : inst.node_caps) b = static_cast<std::int64_t>(inst.gst.groups.size());
    for (auto& d : inst.demands) d = gen::uniform(rng, 1, 4);
    std::int64_t expect = 0;
    const auto groups = inst.gst.clean_groups();
    for (std::size_t i = 0; i < groups.size(); ++i)
      expect += std::min<std::int64_t>(inst.demands[i], static_cast<std::int64_t>(groups[i].size()));
    ASSERT_EQ(gst_demand_oracle(inst).f_max(), expect);
  }
}

TEST(GstDemandOracleTest, Submodular) {
  gen::Rng rng(55);
  for (int trial = 0; trial < 30; ++trial) {
    const GstDemandInstance inst = gen::random_gst_demand(rng, gen::uniform(rng, 1, 10), 4);
    const SubmodularCheck c = check_submodular(gst_demand_oracle(inst));
    ASSERT_TRUE(c.ok) << c.failed;
  }
}

TEST(VerifyTest, EmptyAndFull) {
  gen::Rng rng(56);
  for (int trial = 0; trial < 30; ++trial) {
    const ConnCapSndpInstance inst = gen::random_conncap(rng, gen::uniform(rng, 2, 9));
    EXPECT_TRUE(verify(inst, all_edges(inst.graph)).feasible) << trial;
    bool any_remote = false;
    for (const Source& s : inst.sources) any_remote = any_remote || s.node != inst.sink;
    if (any_remote) {
      EXPECT_FALSE(verify(inst, EdgeSubset{}).feasible);
    }
  }
}

TEST(VerifyTest, ReportsPerSourceAndBackbone) {
  // Backbone 0 - 1 - 2 (cost edges), source 3 hangs off 2 with capacity 2.
  ConnCapSndpInstance inst;
  inst.graph = Graph(4);
  inst.graph.add_edge(0, 1, 1, Capacity::infinite());
  inst.graph.add_edge(1, 2, 1, Capacity::infinite());
  inst.graph.add_edge(2, 3, 0, Capacity(2));
  inst.classes = {EdgeClass::kCost, EdgeClass::kCost, EdgeClass::kCapacity};
  inst.sink = 0;
  inst.sources = {{3, 2}, {0, 5}};
  const ConnCapReport ok = verify(inst, EdgeSubset{0, 1, 2});
  EXPECT_TRUE(ok.feasible);
  ASSERT_EQ(ok.sources.size(), 2u);
  EXPECT_EQ(ok.sources[0].achieved, Capacity(2));
  EXPECT_TRUE(ok.sources[1].achieved.is_infinite());

  const ConnCapReport gap = verify(inst, EdgeSubset{1, 2});
  EXPECT_FALSE(gap.backbone_connected);
  EXPECT_FALSE(gap.feasible);
  EXPECT_FALSE(gap.sources[0].ok);
  EXPECT_THROW(verify(inst, EdgeSubset{9}), UsageError);
}

TEST(SolveTest, SourceAtSinkNeedsNoCostEdges) {
  ConnCapSndpInstance inst;
  inst.graph = Graph(3);
  inst.graph.add_edge(0, 1, 4, Capacity::infinite());
  inst.graph.add_edge(1, 2, 0, Capacity(1));
  inst.classes = {EdgeClass::kCost, EdgeClass::kCapacity};
  inst.sink = 0;
  inst.sources = {{0, 7}};
  const ConnCapSolution s = solve(inst);
  EXPECT_EQ(s.edges, EdgeSubset({1}));
  EXPECT_EQ(s.cost, 0);
}

TEST(SolveTest, StarPicksTheRightLeaf) {
  // Star of cost edges around t = 0; source 4 is tied to leaf 2 only.
  ConnCapSndpInstance inst;
  inst.graph = Graph(5);
  for (NodeId v = 1; v <= 3; ++v) inst.graph.add_edge(0, v, static_cast<Cost>(v), Capacity::infinite());
  inst.graph.add_edge(2, 4, 0, Capacity(2));
  inst.classes = {EdgeClass::kCost, EdgeClass::kCost, EdgeClass::kCost, EdgeClass::kCapacity};
  inst.sink = 0;
  inst.sources = {{4, 2}};
  const ConnCapSolution s = solve(inst);
  EXPECT_EQ(s.edges, EdgeSubset({1, 3}));
  EXPECT_EQ(s.cost, brute_conncap(inst).cost);
}

TEST(SolveTest, UnreachableRequirementIsInfeasible) {
  ConnCapSndpInstance inst = single_edge_instance();
  EXPECT_THROW(solve(inst), InfeasibleError);
  EXPECT_THROW(brute_conncap(inst), InfeasibleError);
}

TEST(SolveTest, FeasibleAndWithinFiftyTimesOptimum) {
  gen::Rng rng(57);
  for (int trial = 0; trial < 100; ++trial) {
    const ConnCapSndpInstance inst = gen::random_conncap(rng, gen::uniform(rng, 2, 8));
    const ConnCapSolution s = solve(inst, {1.0, static_cast<std::uint64_t>(trial), 1});
    ASSERT_TRUE(verify(inst, s.edges).feasible) << trial;
    ASSERT_EQ(s.cost, s.edges.total_cost(inst.graph));
    ASSERT_LE(s.cost, 50 * brute_conncap(inst).cost) << trial;
  }
}

TEST(GstTest, FeasibilityChecks) {
  GstInstance gst{Graph(3), 0, {{2}}};
  gst.graph.add_edge(0, 1, 1);
  gst.graph.add_edge(1, 2, 1);
  EXPECT_FALSE(gst_feasible(gst, EdgeSubset{}));
  EXPECT_FALSE(gst_feasible(gst, EdgeSubset{1}));
  EXPECT_TRUE(gst_feasible(gst, EdgeSubset{0, 1}));
  gst.groups = {{0, 2}};
  EXPECT_TRUE(gst_feasible(gst, EdgeSubset{}));
  gst.groups = {{}};
  EXPECT_THROW(gst.validate(), UsageError);
}

TEST(GstToConnCapTest, OneGroupOfTwo) {
  // a = 1, b = 2, root 0.
  GstInstance gst{Graph(3), 0, {{1, 2}}};
  gst.graph.add_edge(0, 1, 5);
  gst.graph.add_edge(0, 2, 6);
  const ConnCapSndpInstance r = gst_to_conncap(gst);
  ASSERT_EQ(r.graph.node_count(), 5u);
  ASSERT_EQ(r.sources.size(), 1u);
  EXPECT_EQ(r.sources[0].node, 3u);
  EXPECT_EQ(r.sources[0].requirement, 2);
  EXPECT_EQ(r.sink, 0u);
  // 2 original, {s,a}, {s,b}, {a,g}, {b,g}, {g,r}.
  ASSERT_EQ(r.graph.edge_count(), 7u);
  EXPECT_EQ(r.graph.edge(2).a, 3u);
  EXPECT_EQ(r.graph.edge(2).b, 1u);
  EXPECT_EQ(r.graph.edge(2).capacity, Capacity(1));
  EXPECT_EQ(r.graph.edge(6).a, 4u);
  EXPECT_EQ(r.graph.edge(6).b, 0u);
  EXPECT_EQ(r.graph.edge(6).capacity, Capacity(1));
  EXPECT_TRUE(r.graph.edge(0).capacity.is_infinite());
  EXPECT_EQ(r.classes[0], EdgeClass::kCost);
  EXPECT_EQ(r.classes[6], EdgeClass::kCapacity);
}

TEST(GstToConnCapTest, SharedNodeAndUngroupedNode) {
  GstInstance gst{Graph(4), 0, {{1, 2}, {2}}};
  gst.graph.add_edge(0, 1, 1);
  gst.graph.add_edge(1, 2, 1);
  gst.graph.add_edge(2, 3, 1);
  const ConnCapSndpInstance r = gst_to_conncap(gst);
  const NodeId s = 4;
  std::vector<Capacity> to_s(4, Capacity(0));
  for (const Edge& e : r.graph.edges())
    if (e.a == s) to_s[e.b] = e.capacity;
  EXPECT_EQ(to_s[2], Capacity(2));
  EXPECT_EQ(to_s[1], Capacity(1));
  EXPECT_EQ(to_s[3], Capacity(0));  // no edge at all
  EXPECT_EQ(r.sources[0].requirement, 3);
}

TEST(GstToConnCapTest, OptimaAgreeAndSolutionsMapBack) {
  gen::Rng rng(58);
  for (int trial = 0; trial < 50; ++trial) {
    const GstInstance gst = gen::random_gst(rng, gen::uniform(rng, 2, 7), 3, 2);
    const ConnCapSndpInstance red = gst_to_conncap(gst);
    const ExactResult g = brute_gst(gst);
    ASSERT_EQ(g.cost, brute_conncap(red).cost) << trial;
    ASSERT_EQ(g.cost, brute_gst_by_vertices(gst));

    // The optimal tree plus F comes back unchanged.
    EdgeSubset lifted = g.edges;
    lifted.merge(red.capacity_edges());
    ASSERT_EQ(conncap_solution_to_gst(gst, red, lifted), g.edges);

    const std::size_t m = gst.graph.edge_count();
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
      EdgeSubset chosen = red.capacity_edges();
      Cost c = 0;
      for (EdgeId e = 0; e < m; ++e)
        if (mask >> e & 1) chosen.insert(e), c += gst.graph.edge(e).cost;
      if (!verify(red, chosen).feasible) continue;
      const EdgeSubset back = conncap_solution_to_gst(gst, red, chosen);
      ASSERT_TRUE(gst_feasible(gst, back));
      ASSERT_LE(back.total_cost(gst.graph), c);
    }
  }
}

TEST(GstToConnCapTest, InfeasibleSolutionIsRejected) {
  GstInstance gst{Graph(2), 0, {{1}}};
  gst.graph.add_edge(0, 1, 1);
  const ConnCapSndpInstance red = gst_to_conncap(gst);
  EXPECT_THROW(conncap_solution_to_gst(gst, red, red.capacity_edges()), InfeasibleError);
}

TEST(GroupCutTest, CrossingIsOneBelowDemand) {
  gen::Rng rng(59);
  int checked = 0;
  for (int trial = 0; trial < 150; ++trial) {
    const GstInstance gst = gen::random_gst(rng, gen::uniform(rng, 2, 7), 3, 2);
    const ConnCapSndpInstance red = gst_to_conncap(gst);
    const auto groups = gst.clean_groups();
    const std::int64_t d = red.sources.front().requirement;
    for (std::size_t j = 0; j < groups.size(); ++j) {
      EdgeSubset original;
      for (EdgeId e = 0; e < gst.graph.edge_count(); ++e)
        if (gen::uniform(rng, 0, 1) == 1) original.insert(e);
      EdgeSubset chosen = red.capacity_edges();
      chosen.merge(original);
      const Components comps = connected_components(gst.graph, original);
      bool reaches = false;
      for (NodeId v : groups[j]) reaches = reaches || comps.label[v] == comps.label[gst.root];
      if (reaches) {
        EXPECT_THROW(disconnected_group_cut(gst, red, chosen, j), UsageError);
        continue;
      }
      const GroupCut cut = disconnected_group_cut(gst, red, chosen, j);
      ASSERT_EQ(cut.crossing, Capacity(d - 1)) << trial;
      ASSERT_FALSE(cut.side[gst.root]);
      ASSERT_LT(max_flow(red.graph, red.sources.front().node, red.sink, &chosen).value, Capacity(d));
      ++checked;
    }
  }
  EXPECT_GT(checked, 20);
}

}  // namespace
}  // namespace capnet
