// Copyright 2026 The gts Authors.
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

#include "gts/kernel_rules.hpp"

#include <random>

#include "gtest/gtest.h"
#include "gts/graph_algo.hpp"
#include "gts/harness.hpp"
#include "gts/oracle.hpp"
#include "test_util.hpp"

namespace gts {
namespace {

using ::gts::testing::make_classic;
using ::gts::testing::make_instance;
using ::gts::testing::naive_classic_reachable;
using ::gts::testing::naive_galactic_reachable;
using ::gts::testing::path_edges;

Reduced expect_reduced(const RuleOutcome& o) {
  EXPECT_TRUE(applied(o)) << std::get<NotApplicable>(o).reason;
  if (!applied(o)) return Reduced{};
  return std::get<Reduced>(o);
}

std::pair<std::size_t, std::size_t> order_key(const Instance& inst) {
  return {inst.graph.num_planets(), inst.graph.num_holes()};
}

bool precedes(const Instance& a, const Instance& b) {
  auto [pa, ha] = order_key(a);
  auto [pb, hb] = order_key(b);
  return pa < pb || (pa == pb && ha <= hb);
}

TEST(RuleR1Test, NoHolesNotApplicable) {
  auto inst = make_classic(4, path_edges(4), {1}, {4});
  EXPECT_FALSE(applied(rule_r1(inst)));
}

TEST(RuleR1Test, MergesAdjacentHolesAndUnionsEdges) {
  auto inst = make_instance(4, {{1, 2}, {1, 3}, {2, 4}}, {1, 2}, {{3, 1}},
                            {{4, 1}});
  Reduced r = expect_reduced(rule_r1(inst));
  EXPECT_EQ(r.instance.graph.size(), 3u);
  EXPECT_EQ(r.instance.graph.kind_of(5), VertexKind::kBlackHole);
  EXPECT_EQ(r.instance.graph.neighbor_ids(5), (VertexSet{3, 4}));
  EXPECT_EQ(r.entry.witness, (std::vector<VertexId>{1, 2}));
}

TEST(RuleR1Test, SumsWeights) {
  auto inst = make_instance(3, {{1, 2}, {2, 3}}, {1, 2}, {{1, 1}, {2, 2}},
                            {{3, 1}, {2, 2}});
  Reduced r = expect_reduced(rule_r1(inst));
  EXPECT_EQ(r.instance.source.weight(4), 3u);
  EXPECT_EQ(r.instance.target.weight(4), 2u);
  EXPECT_EQ(r.instance.target.weight(3), 1u);
}

TEST(RuleR2Test, DeletesLowerTwinHole) {
  auto inst = make_instance(4, {{1, 3}, {1, 4}, {2, 3}, {2, 4}}, {1, 2},
                            {{3, 1}}, {{4, 1}});
  Reduced r = expect_reduced(rule_r2(inst));
  EXPECT_FALSE(r.instance.graph.contains(1));
  EXPECT_TRUE(r.instance.graph.contains(2));
}

TEST(RuleR2Test, DominatedHoleWithTokenNotApplicable) {
  auto inst = make_instance(4, {{1, 3}, {2, 3}, {2, 4}}, {1, 2}, {{1, 1}},
                            {{1, 1}});
  // Hole 1 is dominated by 2 but carries a token; 2 is not dominated.
  EXPECT_FALSE(applied(rule_r2(inst)));
}

TEST(RuleR2Test, StrictlyDominatedHolePreservesVerdict) {
  auto inst = make_instance(
      8, {{1, 3}, {1, 4}, {2, 3}, {2, 4}, {2, 5}, {5, 6}, {6, 7}, {7, 8},
          {3, 6}},
      {1, 2}, {{3, 1}, {7, 1}}, {{5, 1}, {8, 1}});
  Reduced r = expect_reduced(rule_r2(inst));
  EXPECT_FALSE(r.instance.graph.contains(1));
  EXPECT_EQ(naive_galactic_reachable(inst),
            naive_galactic_reachable(r.instance));
}

TEST(RuleR3Test, AbsorbsTokenFreePlanet) {
  auto inst = make_instance(4, {{1, 2}, {2, 3}, {3, 4}}, {1}, {{4, 1}},
                            {{4, 1}});
  Reduced r = expect_reduced(rule_r3(inst));
  EXPECT_FALSE(r.instance.graph.contains(2));
  EXPECT_EQ(r.instance.graph.kind_of(5), VertexKind::kBlackHole);
}

TEST(RuleR3Test, TwoTokensInNeighborhoodNotApplicable) {
  // Planet 2 sees 2 (in I_s) and 3 (in I_t).
  auto inst = make_instance(3, {{1, 2}, {2, 3}}, {1}, {{2, 1}}, {{3, 1}});
  EXPECT_FALSE(applied(rule_r3(inst)));
}

TEST(RuleR3Test, SourcePlanetTransfersWeight) {
  auto inst = make_instance(
      8, {{1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}, {1, 7}, {7, 8}, {6, 8}},
      {1}, {{2, 1}, {5, 1}}, {{4, 1}, {8, 1}});
  Reduced r = expect_reduced(rule_r3(inst));
  EXPECT_EQ(r.entry.witness, (std::vector<VertexId>{1, 2}));
  EXPECT_EQ(r.instance.source.weight(9), 1u);
  EXPECT_EQ(naive_galactic_reachable(inst),
            naive_galactic_reachable(r.instance));
}

TEST(RuleR4Test, DeletesTokenFreeTwin) {
  auto inst = make_classic(4, {{1, 3}, {2, 3}, {3, 4}}, {2}, {4});
  Reduced r = expect_reduced(rule_r4(inst));
  EXPECT_FALSE(r.instance.graph.contains(1));
}

testing::Edges twin_graph() {
  return {{1, 3}, {1, 4}, {2, 3}, {2, 4}, {3, 5}, {4, 5},
          {5, 6}, {6, 7}, {7, 8}, {8, 9}};
}

TEST(RuleR4Test, SplitTwinsGiveTrivialNo) {
  auto inst = make_classic(9, twin_graph(), {1, 2, 7, 9}, {1, 5, 7, 9});
  Reduced r = expect_reduced(rule_r4(inst));
  EXPECT_EQ(r.instance, trivial_no_instance());
  EXPECT_FALSE(naive_classic_reachable(inst));
}

TEST(RuleR4Test, FrozenTwinsDropTwoTokens) {
  auto inst = make_classic(9, twin_graph(), {1, 2, 7, 9}, {1, 2, 6, 9});
  Reduced r = expect_reduced(rule_r4(inst));
  EXPECT_EQ(r.instance.k, 2u);
  for (VertexId v : {1, 2, 3, 4}) EXPECT_FALSE(r.instance.graph.contains(v));
  EXPECT_EQ(naive_classic_reachable(inst),
            naive_classic_reachable(r.instance));
}

TEST(RuleR4Test, TwinsNextToBlackHoleAreNotFrozen) {
  // Both twins in I_s, only one in I_t, but the token on 4 can escape
  // through hole 3.
  auto inst = make_instance(4, {{1, 3}, {2, 3}, {3, 4}}, {1, 3},
                            {{2, 1}, {4, 1}}, {{1, 1}, {2, 1}});
  EXPECT_TRUE(naive_galactic_reachable(inst));
  EXPECT_FALSE(applied(rule_r4(inst)));
}

Instance long_path(VertexId n, VertexSet s, VertexSet t) {
  return make_classic(n, path_edges(n), s, t);
}

TEST(RuleR5Test, ContractsWindowOnLongPath) {
  auto inst = long_path(30, {1, 29}, {2, 30});
  Reduced r = expect_reduced(rule_r5(inst));
  std::vector<VertexId> window;
  for (VertexId v = 4; v <= 14; ++v) window.push_back(v);
  EXPECT_EQ(r.entry.witness, window);
  EXPECT_EQ(r.instance.graph.num_planets(), 19u);
  EXPECT_EQ(r.instance.graph.num_holes(), 1u);
  EXPECT_EQ(naive_classic_reachable(inst), solve(r.instance).reachable);
}

TEST(RuleR5Test, ShortPathNotApplicable) {
  EXPECT_FALSE(applied(rule_r5(long_path(10, {1, 3}, {8, 10}))));
}

TEST(RuleR5Test, TokenNextToPathBlocksIt) {
  // Pendant tokens on every fifth vertex of a 14-vertex spine leave no
  // unblocked window of 11 vertices.
  testing::Edges e = path_edges(14);
  e.emplace_back(5, 15);
  e.emplace_back(10, 16);
  auto inst = make_classic(16, e, {15, 16}, {15, 16});
  EXPECT_FALSE(applied(rule_r5(inst)));
}

TEST(ExhaustTest, IdentityWhenNothingApplies) {
  auto inst = make_classic(3, path_edges(3), {1}, {3});
  auto [out, trace] = exhaust(inst, basic_rules({"r1", "r2", "r3", "r5"}));
  EXPECT_EQ(out, inst);
  EXPECT_TRUE(trace.entries.empty());
}

TEST(ExhaustTest, HoleChainCollapses) {
  auto inst = make_instance(5, path_edges(5), {1, 2, 3, 4}, {{1, 1}},
                            {{5, 1}});
  auto [out, trace] = exhaust(inst, basic_rules({"r1"}));
  EXPECT_EQ(out.graph.num_holes(), 1u);
  EXPECT_EQ(trace.entries.size(), 3u);
  EXPECT_EQ(replay(inst, trace), out);
}

TEST(ExhaustTest, UnknownRuleRejected) {
  EXPECT_THROW(basic_rules({"r9"}), Error);
}

TEST(ExhaustTest, RandomFixedPointsPassAudit) {
  EnsembleParams p;
  int checked = 0;
  for (std::uint64_t trial = 0; trial < 400; ++trial) {
    Rng rng(derive_seed(11, 0, trial));
    auto inst = random_galactic_instance(rng, p);
    if (!inst || !is_connected(inst->graph)) continue;
    auto [out, trace] = exhaust(*inst, basic_rules({"r1", "r3", "r5"}));
    EXPECT_TRUE(audit(out).ok) << audit(out).to_string();
    Instance cur = *inst;
    for (const auto& e : trace.entries) {
      Instance next = apply_rewrite(cur, e.rewrite);
      EXPECT_TRUE(precedes(next, cur));
      EXPECT_NE(order_key(next), order_key(cur));
      cur = next;
    }
    ++checked;
  }
  EXPECT_GT(checked, 200);
}

TEST(ExhaustTest, PriorityOrderDoesNotChangeVerdict) {
  EnsembleParams p;
  for (std::uint64_t trial = 0; trial < 200; ++trial) {
    Rng rng(derive_seed(12, 0, trial));
    auto inst = random_galactic_instance(rng, p);
    if (!inst) continue;
    bool want = naive_galactic_reachable(*inst);
    auto a = exhaust(*inst, basic_rules({"r1", "r2", "r3", "r4", "r5"}));
    auto b = exhaust(*inst, basic_rules({"r5", "r4", "r3", "r2", "r1"}));
    EXPECT_EQ(solve(a.first).reachable, want);
    EXPECT_EQ(solve(b.first).reachable, want);
  }
}

TEST(AuditTest, AdjacentHolesFlagged) {
  auto inst = make_instance(3, path_edges(3), {1, 2}, {{3, 1}}, {{3, 1}});
  AuditReport r = audit(inst);
  EXPECT_FALSE(r.ok);
  EXPECT_EQ(r.violated, "adjacent-holes");
  EXPECT_EQ(r.witness, (std::vector<VertexId>{1, 2}));
  EXPECT_EQ(r.to_string(), "audit fail adjacent-holes witness 1 2\n");
}

TEST(AuditTest, LongBlockedPathExceedsComponentDiameter) {
  // Four tokens cut P_41 into runs of at most nine free vertices, so no
  // 10-edge window exists, yet the diameter is 40 >= 5k(k+1) = 30.
  auto inst = long_path(41, {11, 31}, {21, 41});
  EXPECT_FALSE(applied(rule_r5(inst)));
  auto [out, trace] = exhaust(inst, basic_rules({"r1", "r3", "r5"}));
  EXPECT_TRUE(trace.entries.empty());
  AuditReport r = audit(out);
  EXPECT_FALSE(r.ok);
  EXPECT_EQ(r.violated, "component-diameter");
}

TEST(KernelTest, LongPathShrinks) {
  auto inst = long_path(40, {1, 3}, {38, 40});
  auto [out, trace] = bounded_degree_kernel(inst);
  EXPECT_LE(out.graph.size(), 36u);
  EXPECT_FALSE(trace.entries.empty());
  EXPECT_EQ(solve(out).reachable, naive_classic_reachable(inst));
  EXPECT_EQ(replay(inst, trace), out);
}

TEST(KernelTest, SmallInstanceUnchanged) {
  auto inst = make_classic(5, path_edges(5), {1, 3}, {3, 5});
  auto [out, trace] = bounded_degree_kernel(inst);
  EXPECT_EQ(out, inst);
  EXPECT_TRUE(trace.entries.empty());
}

TEST(KernelTest, GridStripReduced) {
  testing::Edges e;
  auto id = [](VertexId r, VertexId c) { return r * 20 + c + 1; };
  for (VertexId r = 0; r < 3; ++r) {
    for (VertexId c = 0; c < 20; ++c) {
      if (c + 1 < 20) e.emplace_back(id(r, c), id(r, c + 1));
      if (r + 1 < 3) e.emplace_back(id(r, c), id(r + 1, c));
    }
  }
  auto inst = make_classic(60, e, {id(0, 0), id(2, 0)},
                           {id(0, 19), id(2, 19)});
  auto [out, trace] = bounded_degree_kernel(inst);
  EXPECT_LT(out.graph.size(), 60u);
  EXPECT_EQ(solve(out).reachable, naive_classic_reachable(inst));
}

TEST(KernelTest, SingleTokenDecidedByConnectivity) {
  auto yes = make_classic(4, path_edges(4), {1}, {4});
  EXPECT_EQ(bounded_degree_kernel(yes).first, trivial_yes_instance());
  auto no = make_classic(4, {{1, 2}, {3, 4}}, {1}, {4});
  EXPECT_EQ(bounded_degree_kernel(no).first, trivial_no_instance());
}

TEST(KernelTest, GalacticInputRejected) {
  auto inst = make_instance(2, {{1, 2}}, {1}, {{2, 1}}, {{2, 1}});
  EXPECT_THROW(bounded_degree_kernel(inst), Error);
}

TEST(HarnessTest, BasicRulesAreSafe) {
  HarnessConfig cfg;
  cfg.trials = 60;
  HarnessSummary s = run_harness(cfg);
  ASSERT_EQ(s.tallies.size(), 5u);
  for (const auto& t : s.tallies) {
    EXPECT_EQ(t.applications, 60u) << t.rule;
    EXPECT_EQ(t.discrepancies, 0u) << t.rule;
  }
}

TEST(HarnessTest, BrokenRuleCaught) {
  // Deleting an arbitrary token-free planet is unsafe.
  RuleFn broken = [](const Instance& inst) -> RuleOutcome {
    const GalacticGraph& g = inst.graph;
    for (std::size_t i = 0; i < g.size(); ++i) {
      VertexId v = g.id(i);
      if (g.is_planet(i) && !inst.source.weight(v) && !inst.target.weight(v)) {
        Rewrite rw;
        rw.removals = {v};
        auto [out, entry] = apply_rule_rewrite(inst, "bad", {v}, rw);
        return Reduced{out, entry};
      }
    }
    return NotApplicable{"none"};
  };
  HarnessConfig cfg;
  cfg.rules = {"bad"};
  cfg.trials = 100;
  HarnessSummary s = run_harness(cfg, {{"bad", broken}});
  EXPECT_GT(s.discrepancies(), 0u);
  EXPECT_NE(s.first_failure.find("# discrepancy rule bad"), std::string::npos);
}

TEST(HarnessTest, ZeroTrialsEmpty) {
  HarnessConfig cfg;
  cfg.trials = 0;
  HarnessSummary s = run_harness(cfg);
  EXPECT_EQ(s.discrepancies(), 0u);
  for (const auto& t : s.tallies) EXPECT_EQ(t.applications, 0u);
}

TEST(HarnessTest, Deterministic) {
  HarnessConfig cfg;
  cfg.trials = 20;
  cfg.rules = {"r1", "r3"};
  EXPECT_EQ(run_harness(cfg).to_string(), run_harness(cfg).to_string());
}

}  // namespace
}  // namespace gts
