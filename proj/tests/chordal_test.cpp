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

#include "gts/chordal.hpp"

#include <map>
#include <random>
#include <set>

#include "gtest/gtest.h"
#include "gts/graph_algo.hpp"
#include "chordal_gadgets.hpp"
#include "gts/oracle.hpp"
#include "test_util.hpp"

namespace gts {
namespace {

using ::gts::testing::make_classic;
using ::gts::testing::random_c1;
using ::gts::testing::make_graph;
using ::gts::testing::naive_classic_reachable;
using ::gts::testing::path_edges;

// Brute force: some vertex subset of size >= 4 induces a cycle.
bool has_induced_long_cycle(const GalacticGraph& g) {
  const std::size_t n = g.size();
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    if (std::popcount(mask) < 4) continue;
    std::vector<std::size_t> in;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask >> i & 1) in.push_back(i);
    }
    bool deg2 = true;
    for (auto i : in) {
      int d = 0;
      for (auto j : in) d += g.adjacent(i, j);
      deg2 = deg2 && d == 2;
    }
    if (!deg2) continue;
    // Connected 2-regular means one cycle.
    std::set<std::size_t> seen{in[0]};
    std::vector<std::size_t> stack{in[0]};
    while (!stack.empty()) {
      auto a = stack.back();
      stack.pop_back();
      for (auto b : in) {
        if (g.adjacent(a, b) && seen.insert(b).second) stack.push_back(b);
      }
    }
    if (seen.size() == in.size()) return true;
  }
  return false;
}

std::set<VertexSet> brute_maximal_cliques(const GalacticGraph& g) {
  const std::size_t n = g.size();
  std::vector<VertexSet> cliques;
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    VertexSet s;
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i) {
      if (!(mask >> i & 1)) continue;
      for (VertexId u : s) ok = ok && g.adjacent_ids(u, g.id(i));
      s.push_back(g.id(i));
    }
    if (ok) cliques.push_back(s);
  }
  std::set<VertexSet> out;
  for (const auto& c : cliques) {
    bool maximal = true;
    for (const auto& d : cliques) {
      if (d.size() > c.size() &&
          std::includes(d.begin(), d.end(), c.begin(), c.end())) {
        maximal = false;
        break;
      }
    }
    if (maximal) out.insert(c);
  }
  return out;
}

// Independent axiom check: tree, clique bags, coverage, subtrees, compact.
void expect_clique_tree(const GalacticGraph& g, const CliqueTree& t) {
  ASSERT_EQ(t.edges.size() + 1, t.size());
  std::map<std::size_t, std::set<std::size_t>> adj;
  for (auto [a, b] : t.edges) {
    adj[a].insert(b);
    adj[b].insert(a);
  }
  auto connected = [&](const std::set<std::size_t>& nodes) {
    if (nodes.empty()) return false;
    std::set<std::size_t> seen{*nodes.begin()};
    std::vector<std::size_t> stack{*nodes.begin()};
    while (!stack.empty()) {
      auto a = stack.back();
      stack.pop_back();
      for (auto b : adj[a]) {
        if (nodes.count(b) && seen.insert(b).second) stack.push_back(b);
      }
    }
    return seen.size() == nodes.size();
  };
  std::set<std::size_t> all;
  for (std::size_t b = 0; b < t.size(); ++b) all.insert(b);
  EXPECT_TRUE(connected(all));
  for (const VertexSet& bag : t.bags) {
    for (VertexId u : bag) {
      for (VertexId v : bag) {
        if (u < v) EXPECT_TRUE(g.adjacent_ids(u, v));
      }
    }
  }
  for (VertexId v : g.ids()) {
    std::set<std::size_t> nodes;
    for (std::size_t b = 0; b < t.size(); ++b) {
      if (std::count(t.bags[b].begin(), t.bags[b].end(), v)) nodes.insert(b);
    }
    EXPECT_TRUE(connected(nodes)) << "vertex " << v;
  }
  for (auto [u, v] : g.edge_list()) {
    bool covered = false;
    for (const VertexSet& bag : t.bags) {
      covered = covered || (std::count(bag.begin(), bag.end(), u) &&
                            std::count(bag.begin(), bag.end(), v));
    }
    EXPECT_TRUE(covered) << u << "-" << v;
  }
  for (auto [a, b] : t.edges) {
    const VertexSet& x = t.bags[a];
    const VertexSet& y = t.bags[b];
    EXPECT_FALSE(std::includes(x.begin(), x.end(), y.begin(), y.end()));
    EXPECT_FALSE(std::includes(y.begin(), y.end(), x.begin(), x.end()));
  }
}

// Replays slides with the independent-set rule checked by hand.
TokenConfig replay_slides(const GalacticGraph& g, TokenConfig c,
                          const std::vector<Move>& moves) {
  for (const Move& m : moves) {
    EXPECT_TRUE(g.adjacent_ids(m.from, m.to));
    EXPECT_EQ(c.weight(m.from), 1u);
    EXPECT_EQ(c.weight(m.to), 0u);
    for (VertexId u : c.support()) {
      if (u != m.from) EXPECT_FALSE(g.adjacent_ids(u, m.to) || u == m.to);
    }
    c = c.with(m.from, 0).with(m.to, 1);
  }
  return c;
}

std::size_t recount(const CliqueTree& t, VertexId v) {
  std::size_t n = 0;
  for (const VertexSet& bag : t.bags) {
    n += std::count(bag.begin(), bag.end(), v);
  }
  return n;
}

testing::Edges fan_edges(VertexId x, VertexId first, VertexId m) {
  testing::Edges e;
  for (VertexId i = 0; i < m; ++i) {
    e.emplace_back(x, first + i);
    if (i + 1 < m) e.emplace_back(first + i, first + i + 1);
  }
  return e;
}

TEST(ChordalityTest, AgreesWithInducedCycleSearch) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> coin(0, 1);
  int chordal = 0;
  for (int trial = 0; trial < 300; ++trial) {
    VertexId n = 3 + rng() % 6;
    double p = 0.2 + 0.6 * coin(rng);
    testing::Edges e;
    for (VertexId a = 1; a <= n; ++a) {
      for (VertexId b = a + 1; b <= n; ++b) {
        if (coin(rng) < p) e.emplace_back(a, b);
      }
    }
    GalacticGraph g = make_graph(n, e);
    bool want = !has_induced_long_cycle(g);
    ASSERT_EQ(is_chordal(g), want) << "trial " << trial;
    chordal += want;
    auto cycle = chordless_cycle(g);
    ASSERT_EQ(cycle.has_value(), !want);
    if (cycle) {
      ASSERT_GE(cycle->size(), 4u);
      std::size_t len = cycle->size();
      for (std::size_t i = 0; i < len; ++i) {
        for (std::size_t j = i + 1; j < len; ++j) {
          bool consecutive = j == i + 1 || (i == 0 && j == len - 1);
          EXPECT_EQ(g.adjacent_ids((*cycle)[i], (*cycle)[j]), consecutive);
        }
      }
    }
  }
  EXPECT_GT(chordal, 30);
}

TEST(ChordalityTest, SquareIsRejectedWithWitness) {
  GalacticGraph c4 = make_graph(4, {{1, 2}, {2, 3}, {3, 4}, {1, 4}});
  try {
    clique_tree(c4);
    FAIL() << "expected an error";
  } catch (const NotChordalError& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNotChordal);
    EXPECT_EQ(e.cycle().size(), 4u);
  }
}

TEST(CliqueTreeTest, TreeBagsAreEdges) {
  GalacticGraph t = make_graph(6, {{1, 2}, {1, 3}, {3, 4}, {3, 5}, {5, 6}});
  CliqueTree ct = clique_tree(t);
  std::set<VertexSet> bags(ct.bags.begin(), ct.bags.end());
  EXPECT_EQ(bags, (std::set<VertexSet>{{1, 2}, {1, 3}, {3, 4}, {3, 5}, {5, 6}}));
  expect_clique_tree(t, ct);
  EXPECT_EQ(ct.width(), 1u);
}

TEST(CliqueTreeTest, CompleteGraphIsOneBag) {
  GalacticGraph k4 = make_graph(4, {{1, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 4},
                                    {3, 4}});
  CliqueTree ct = clique_tree(k4);
  ASSERT_EQ(ct.size(), 1u);
  EXPECT_EQ(ct.bags[0], (VertexSet{1, 2, 3, 4}));
  EXPECT_TRUE(ct.edges.empty());
  EXPECT_EQ(clique_number(k4), 4u);
}

TEST(CliqueTreeTest, TwoTrianglesShareAnEdge) {
  GalacticGraph g = make_graph(4, {{1, 2}, {1, 3}, {2, 3}, {2, 4}, {3, 4}});
  CliqueTree ct = clique_tree(g);
  std::set<VertexSet> bags(ct.bags.begin(), ct.bags.end());
  EXPECT_EQ(bags, brute_maximal_cliques(g));
  EXPECT_EQ(ct.size(), 2u);
  EXPECT_EQ(ct.edges.size(), 1u);
}

TEST(CliqueTreeTest, RandomChordalGraphs) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    std::uint32_t n = 1 + rng() % 12;
    auto inst = random_chordal_instance(rng, n, 1 + rng() % 4, 1);
    ASSERT_TRUE(inst.has_value());
    const GalacticGraph& g = inst->graph;
    ASSERT_FALSE(has_induced_long_cycle(g));
    CliqueTree ct = clique_tree(g);
    expect_clique_tree(g, ct);
    EXPECT_EQ(check_clique_tree(g, ct), "");
    std::set<VertexSet> bags(ct.bags.begin(), ct.bags.end());
    EXPECT_EQ(bags, brute_maximal_cliques(g)) << "trial " << trial;
    std::size_t omega = 0;
    for (const auto& b : bags) omega = std::max(omega, b.size());
    EXPECT_EQ(clique_number(g), omega);
  }
}

TEST(CliqueTreeTest, DisconnectedGraphGetsOneTree) {
  GalacticGraph g = make_graph(5, {{1, 2}, {3, 4}});
  CliqueTree ct = clique_tree(g);
  EXPECT_EQ(ct.size(), 3u);
  expect_clique_tree(g, ct);
}

TEST(CliqueTreeTest, CheckerFlagsBrokenTrees) {
  GalacticGraph g = make_graph(4, testing::path_edges(4));
  CliqueTree ct = clique_tree(g);
  CliqueTree no_edge = ct;
  no_edge.edges.pop_back();
  EXPECT_NE(check_clique_tree(g, no_edge), "");
  CliqueTree not_clique = ct;
  not_clique.bags[0] = {1, 3};
  EXPECT_NE(check_clique_tree(g, not_clique), "");
}

TEST(CliqueTreeTest, TextRoundTrip) {
  GalacticGraph g = make_graph(4, {{1, 2}, {1, 3}, {2, 3}, {2, 4}, {3, 4}});
  CliqueTree ct = clique_tree(g);
  std::string text = format_clique_tree(ct);
  EXPECT_EQ(text, "bag 1 1 2 3\nbag 2 2 3 4\ntedge 1 2\n");
  CliqueTree back = parse_clique_tree(text);
  EXPECT_EQ(back.bags, ct.bags);
  EXPECT_EQ(back.edges, ct.edges);
  EXPECT_THROW(parse_clique_tree("bag 2 1\n"), ParseError);
  EXPECT_THROW(parse_clique_tree("bag 1 1\ntedge 1 3\n"), ParseError);
}

TEST(BlockPartitionTest, SectionsAndHangingSubtrees) {
  // Path 1..11 has bags {i,i+1}; a pendant 12 on vertex 5 hangs off bag 4.
  testing::Edges e = path_edges(11);
  e.emplace_back(5, 12);
  GalacticGraph g = make_graph(12, e);
  CliqueTree ct = clique_tree(g);
  std::vector<std::size_t> path;
  for (VertexId i = 1; i <= 10; ++i) {
    for (std::size_t b = 0; b < ct.size(); ++b) {
      if (ct.bags[b] == VertexSet{i, i + 1}) path.push_back(b);
    }
  }
  ASSERT_EQ(path.size(), 10u);
  EXPECT_FALSE(block_partition(ct, path, 3, 4).has_value());
  auto bp = block_partition(ct, path, 3, 3);
  ASSERT_TRUE(bp.has_value());
  ASSERT_EQ(bp->path_nodes.size(), 3u);
  EXPECT_EQ(bp->path_nodes[0].size(), 3u);
  EXPECT_EQ(bp->path_nodes[2].size(), 4u);
  std::size_t pendant = ct.size();
  for (std::size_t b = 0; b < ct.size(); ++b) {
    if (ct.bags[b] == VertexSet{5, 12}) pendant = b;
  }
  // Bag {4,5} is the fourth path bag, in section two.
  EXPECT_TRUE(std::count(bp->nodes[1].begin(), bp->nodes[1].end(), pendant));
  EXPECT_FALSE(std::count(bp->nodes[0].begin(), bp->nodes[0].end(), pendant));
  auto rooted = rooted_nodes(ct, path);
  EXPECT_EQ(rooted.size(), 11u);
}

TEST(BlockPartitionTest, LongestPath) {
  GalacticGraph g = make_graph(7, {{1, 2}, {2, 3}, {3, 4}, {2, 5}, {5, 6},
                                   {6, 7}});
  CliqueTree ct = clique_tree(g);
  auto p = longest_path(ct);
  // Bags through vertex 2 form a star, so the path can pass {1,2}.
  EXPECT_GE(p.size(), 5u);
  VertexSet ends = make_set({ct.bags[p.front()][0], ct.bags[p.front()][1],
                             ct.bags[p.back()][0], ct.bags[p.back()][1]});
  EXPECT_TRUE(std::count(ends.begin(), ends.end(), 4));
  EXPECT_TRUE(std::count(ends.begin(), ends.end(), 7));
}

TEST(NormalizeTest, TokenInOneBagStays) {
  Instance inst = make_classic(3, path_edges(3), {1}, {3});
  auto out = normalize_token_bags(inst, clique_tree(inst.graph));
  EXPECT_TRUE(out.ok);
  EXPECT_TRUE(out.prefix.empty());
  EXPECT_EQ(out.instance, inst);
}

TEST(NormalizeTest, ConfinedTokensStay) {
  testing::Edges e = fan_edges(1, 2, 20);
  Instance inst = make_classic(21, e, {2, 5}, {10, 12});
  auto out = normalize_token_bags(inst, clique_tree(inst.graph));
  EXPECT_TRUE(out.ok);
  EXPECT_TRUE(out.prefix.empty());
}

TEST(NormalizeTest, StarCenterGoesToALeaf) {
  testing::Edges e;
  for (VertexId v = 2; v <= 14; ++v) e.emplace_back(1, v);
  Instance inst = make_classic(14, e, {1}, {2});
  CliqueTree ct = clique_tree(inst.graph);
  ASSERT_EQ(recount(ct, 1), 13u);
  auto out = normalize_token_bags(inst, ct);
  ASSERT_TRUE(out.ok) << out.failure;
  ASSERT_EQ(out.prefix.size(), 1u);
  TokenConfig end = replay_slides(inst.graph, inst.source, out.prefix);
  EXPECT_EQ(end, out.instance.source);
  EXPECT_EQ(recount(ct, end.support()[0]), 1u);
}

TEST(NormalizeTest, LongFanMiddleVertex) {
  // Center 1 over path 2..113 lies in 111 bags; pendants 114 on 2 and 115
  // on 113 keep T_v away from the leaves of T. k = 3, bound 108.
  testing::Edges e = fan_edges(1, 2, 112);
  e.emplace_back(2, 114);
  e.emplace_back(113, 115);
  Instance inst = make_classic(115, e, {1, 114, 115}, {50, 114, 115});
  CliqueTree ct = clique_tree(inst.graph);
  ASSERT_EQ(recount(ct, 1), 111u);
  ASSERT_EQ(bag_bound(3, 3), 108u);
  auto out = normalize_token_bags(inst, ct);
  ASSERT_TRUE(out.ok) << out.failure;
  TokenConfig end = replay_slides(inst.graph, inst.source, out.prefix);
  EXPECT_EQ(end, out.instance.source);
  for (VertexId v : end.support()) EXPECT_LE(recount(ct, v), 108u);
  EXPECT_EQ(out.prefix.size(), 1u);
  EXPECT_EQ(recount(ct, out.prefix[0].to), 2u);
}

TEST(NormalizeTest, RandomInstancesMeetTheBound) {
  std::mt19937_64 rng(7);
  int done = 0, moved = 0;
  for (int trial = 0; trial < 400; ++trial) {
    auto inst = random_chordal_instance(rng, 10 + rng() % 31, 2 + rng() % 2,
                                        1 + rng() % 2);
    if (!inst) continue;
    CliqueTree ct = clique_tree(inst->graph);
    auto out = normalize_token_bags(*inst, ct);
    ASSERT_TRUE(out.ok) << out.failure;
    TokenConfig end = replay_slides(inst->graph, inst->source, out.prefix);
    EXPECT_EQ(end, out.instance.source);
    std::size_t bound = bag_bound(ct.width() + 1, inst->k);
    for (VertexId v : end.support()) EXPECT_LE(recount(ct, v), bound);
    moved += !out.prefix.empty();
    ++done;
  }
  EXPECT_GT(done, 300);
  EXPECT_GT(moved, 0);
}

// x = 1 complete to C = 4..15 (a path), W = {2} on 4, Y = {3} on 15,
// outside pendants 16-17 on W and 18-19 on Y.
Instance c1_gadget(const VertexSet& s, const VertexSet& t) {
  testing::Edges e = fan_edges(1, 4, 12);
  e.insert(e.end(), {{1, 2}, {1, 3}, {2, 4}, {3, 15}, {2, 16}, {16, 17},
                     {3, 18}, {18, 19}});
  return make_classic(19, e, s, t);
}

C1Parts c1_parts() {
  C1Parts p;
  p.w = {2};
  p.x1 = {1};
  p.y = {3};
  for (VertexId v = 4; v <= 15; ++v) p.c.push_back(v);
  p.r = {6, 9};
  return p;
}

TEST(RuleC1Test, HandGadget) {
  Instance inst = c1_gadget({16, 18}, {17, 19});
  ASSERT_TRUE(is_chordal(inst.graph));
  EXPECT_EQ(check_c1(inst, c1_parts()), "");
  RuleOutcome o = rule_c1(inst, c1_parts());
  ASSERT_TRUE(applied(o)) << std::get<NotApplicable>(o).reason;
  const Instance& out = std::get<Reduced>(o).instance;
  EXPECT_EQ(out.graph.size(), inst.graph.size() - 12 + 10);
  EXPECT_TRUE(is_chordal(out.graph));
  EXPECT_LE(clique_number(out.graph), clique_number(inst.graph));
  // p_1 = 20 sees W, Y and x; the rest of the path sees x only.
  EXPECT_EQ(out.graph.neighbor_ids(20), (VertexSet{1, 2, 3, 21}));
  EXPECT_EQ(out.graph.neighbor_ids(25), (VertexSet{1, 24, 26}));
  EXPECT_EQ(naive_classic_reachable(inst), naive_classic_reachable(out));
}

TEST(RuleC1Test, TokenInsideC) {
  Instance inst = c1_gadget({10, 18}, {17, 19});
  C1Parts p = c1_parts();
  EXPECT_FALSE(applied(rule_c1(inst, p)));
  EXPECT_EQ(check_c1(inst, p), "C holds a token");
}

TEST(RuleC1Test, RTooSmall) {
  Instance inst = c1_gadget({16, 18}, {17, 19});
  C1Parts p = c1_parts();
  p.r = {9};
  EXPECT_EQ(check_c1(inst, p), "R has fewer than k vertices");
  p.r = {6, 7};
  EXPECT_EQ(check_c1(inst, p), "R is not 2-independent");
  p.r = {4, 9};
  EXPECT_EQ(check_c1(inst, p), "R meets N(W) or N(Y)");
}

TEST(RuleC1Test, SmallComponentLeftAlone) {
  testing::Edges e = fan_edges(1, 4, 10);
  e.insert(e.end(), {{1, 2}, {1, 3}, {2, 4}, {3, 13}, {2, 14}, {14, 15},
                     {3, 16}, {16, 17}});
  Instance inst = make_classic(17, e, {14, 16}, {15, 17});
  C1Parts p = c1_parts();
  p.c = {4, 5, 6, 7, 8, 9, 10, 11, 12, 13};
  EXPECT_EQ(check_c1(inst, p), "");
  EXPECT_FALSE(applied(rule_c1(inst, p)));
}

TEST(RuleC1Test, RandomGadgetsPreserveVerdict) {
  std::mt19937_64 rng(13);
  int done = 0, yes = 0;
  for (int trial = 0; trial < 200 && done < 25; ++trial) {
    auto gd = random_c1(rng);
    if (!gd || !is_chordal(gd->inst.graph)) continue;
    RuleOutcome o = rule_c1(gd->inst, gd->parts);
    if (!applied(o)) continue;
    const Instance& out = std::get<Reduced>(o).instance;
    EXPECT_TRUE(is_chordal(out.graph));
    bool before = naive_classic_reachable(gd->inst);
    EXPECT_EQ(before, naive_classic_reachable(out)) << "trial " << trial;
    yes += before;
    ++done;
  }
  EXPECT_GE(done, 20);
  EXPECT_GT(yes, 0);
}

// x = 1 over path 2..m+1, tails 2-a1-a2 and (m+1)-b1-b2 with tokens.
Instance caterpillar(VertexId m) {
  testing::Edges e = fan_edges(1, 2, m);
  VertexId a1 = m + 2, a2 = m + 3, b1 = m + 4, b2 = m + 5;
  e.insert(e.end(), {{2, a1}, {a1, a2}, {m + 1, b1}, {b1, b2}});
  return make_classic(b2, e, {a1, b1}, {a2, b2});
}

TEST(FindC1Test, SpanningVertexBecomesX1) {
  Instance inst = caterpillar(30);
  CliqueTree ct = clique_tree(inst.graph);
  auto parts = find_c1_application(inst, ct, {14, 2, 0});
  ASSERT_TRUE(parts.has_value());
  EXPECT_EQ(parts->x1, (VertexSet{1}));
  EXPECT_TRUE(parts->x2.empty());
  EXPECT_GE(parts->r.size(), 2u);
  EXPECT_EQ(check_c1(inst, *parts), "");
  RuleOutcome o = rule_c1(inst, *parts);
  ASSERT_TRUE(applied(o)) << std::get<NotApplicable>(o).reason;
  EXPECT_EQ(naive_classic_reachable(inst),
            naive_classic_reachable(std::get<Reduced>(o).instance));
}

TEST(FindC1Test, ShortPathGivesNothing) {
  Instance inst = caterpillar(12);
  CliqueTree ct = clique_tree(inst.graph);
  EXPECT_FALSE(find_c1_application(inst, ct, {14, 2, 0}).has_value());
  // Paper parameters are far out of reach at this size.
  EXPECT_FALSE(find_c1_application(caterpillar(30),
                                   clique_tree(caterpillar(30).graph))
                   .has_value());
}

TEST(DriverTest, SingleTokenAnsweredDirectly) {
  Instance inst = make_classic(4, {{1, 2}, {3, 4}}, {1}, {4});
  ChordalRun run = chordal_fpt_driver(inst);
  EXPECT_FALSE(run.verdict.reachable);
  EXPECT_TRUE(run.trace.entries.empty());
}

TEST(DriverTest, RejectsNonChordal) {
  Instance inst = make_classic(5, {{1, 2}, {2, 3}, {3, 4}, {1, 4}, {4, 5}},
                               {1, 3}, {2, 5});
  EXPECT_THROW(chordal_fpt_driver(inst), NotChordalError);
}

TEST(DriverTest, PathOfCliques) {
  // Triangles {2i-1, 2i, 2i+1} chained; k = 2.
  testing::Edges e;
  for (VertexId i = 1; i + 2 <= 41; i += 2) {
    e.insert(e.end(), {{i, i + 1}, {i + 1, i + 2}, {i, i + 2}});
  }
  Instance inst = make_classic(41, e, {1, 5}, {37, 41});
  ChordalRun run = chordal_fpt_driver(inst);
  EXPECT_EQ(run.verdict.reachable, solve(inst).reachable);
  EXPECT_FALSE(run.trace.entries.empty());
}

TEST(DriverTest, CaterpillarWithOverride) {
  Instance inst = caterpillar(30);
  ChordalRun run = chordal_fpt_driver(inst, {14, 2, 0});
  EXPECT_EQ(run.verdict.reachable, naive_classic_reachable(inst));
}

TEST(DriverTest, RandomChordalAgreesWithOracle) {
  std::mt19937_64 rng(19);
  int done = 0, yes = 0;
  for (int trial = 0; trial < 80; ++trial) {
    auto inst = random_chordal_instance(rng, 8 + rng() % 13, 2 + rng() % 3,
                                        2 + rng() % 2);
    if (!inst) continue;
    ChordalRun run = chordal_fpt_driver(*inst);
    EXPECT_TRUE(run.source_normalization.ok);
    bool want = solve(*inst).reachable;
    EXPECT_EQ(run.verdict.reachable, want) << "trial " << trial;
    yes += want;
    ++done;
  }
  EXPECT_GT(done, 60);
  EXPECT_GT(yes, 0);
}

}  // namespace
}  // namespace gts
