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

#ifndef GTS_CHORDAL_HPP_
#define GTS_CHORDAL_HPP_

#include <cstddef>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "gts/graph.hpp"
#include "gts/kernel_rules.hpp"
#include "gts/oracle.hpp"

namespace gts {

// kNotChordal, carrying a chordless cycle of length at least 4.
class NotChordalError : public Error {
 public:
  explicit NotChordalError(std::vector<VertexId> cycle);
  const std::vector<VertexId>& cycle() const { return cycle_; }

 private:
  std::vector<VertexId> cycle_;
};

// Maximum cardinality search; the reverse of the returned order is a
// perfect elimination order exactly when g is chordal.
std::vector<VertexId> mcs_order(const GalacticGraph& g);

bool is_chordal(const GalacticGraph& g);

// A chordless cycle of length >= 4, or nullopt when g is chordal.
std::optional<std::vector<VertexId>> chordless_cycle(const GalacticGraph& g);

std::size_t clique_number(const GalacticGraph& g);  // Chordal g only.

struct CliqueTree {
  std::vector<VertexSet> bags;
  std::vector<std::pair<std::size_t, std::size_t>> edges;  // a < b.
  bool compact = true;

  std::size_t size() const { return bags.size(); }
  std::vector<std::vector<std::size_t>> adjacency() const;
  std::size_t width() const;
  // Bags containing v.
  std::vector<std::size_t> bags_of(VertexId v) const;
};

// Maximal cliques joined by a maximum-weight spanning tree on intersection
// sizes. Disconnected graphs get a forest linked by zero-weight edges.
// Throws NotChordalError.
CliqueTree clique_tree(const GalacticGraph& g);

// Empty when `t` is a compact clique tree of g, otherwise the failed axiom.
std::string check_clique_tree(const GalacticGraph& g, const CliqueTree& t);

// "bag <id> <vertices...>" and "tedge <a> <b>" lines, bag ids from 1.
std::string format_clique_tree(const CliqueTree& t);
CliqueTree parse_clique_tree(std::string_view text);

// Nodes of T_P: the path plus everything hanging off its inner nodes.
std::vector<std::size_t> rooted_nodes(const CliqueTree& t,
                                      const std::vector<std::size_t>& path);

// Sections of an (alpha, beta)-block partition of T_P. Section i holds path
// nodes [i*len, (i+1)*len) with len = |P| / alpha, the last one also the
// remainder, and the subtrees hanging off them.
struct BlockPartition {
  std::vector<std::size_t> path;
  std::vector<std::vector<std::size_t>> path_nodes;  // Per section.
  std::vector<std::vector<std::size_t>> nodes;       // Per section.
};

// nullopt when |P| < alpha * beta.
std::optional<BlockPartition> block_partition(
    const CliqueTree& t, const std::vector<std::size_t>& path,
    std::size_t alpha, std::size_t beta);

// Longest path of the tree by node count (lowest endpoints on ties).
std::vector<std::size_t> longest_path(const CliqueTree& t);

struct Normalization {
  Instance instance;  // Sources moved.
  std::vector<Move> prefix;
  bool ok = true;
  std::string failure;      // Why a token could not be brought down.
  VertexId blocking = 0;    // Token that stayed above the bound.
};

// (3w+3)k^2 with w the clique number.
std::size_t bag_bound(std::size_t omega, Weight k);

// Slides tokens until every source vertex lies in at most bag_bound bags.
// Tokens go in decreasing bag count order. Each token tries, in order: a
// private vertex of a leaf bag of T inside T_v; a private vertex of a leaf
// of T below a leaf of T_v; a private vertex of an inner bag of a long
// degree-two path of T_v; then any vertex within the bound. Slides avoid the
// closed neighborhoods of the other tokens. Classic chordal instances.
Normalization normalize_token_bags(const Instance& inst, const CliqueTree& t);

// Parts of a C1 application. W, X = X1 u X2 and Y are cliques; C is a
// component of G - (W u X u Y).
struct C1Parts {
  VertexSet w, x1, x2, y, c, r;

  friend bool operator==(const C1Parts&, const C1Parts&) = default;
};

// Empty when every C1 condition holds, otherwise the failed clause.
std::string check_c1(const Instance& inst, const C1Parts& parts);

// Replaces C by a path p_1..p_5k, X1 complete to it, X2 u W u Y complete
// to p_1. Applies only when |C| > 5k and the result stays chordal with no
// larger clique.
RuleOutcome rule_c1(const Instance& inst, const C1Parts& parts);

struct C1Search {
  std::size_t alpha = 0;  // 0: 6k*w*gamma.
  std::size_t beta = 0;   // 0: 5k^2 w^2.
  std::size_t gamma = 0;  // 0: largest bag degree of t.
};

// Two rounds of refinement over block partitions of a token-free stretch
// of the longest path, then C, W, Y and R from every fifth section.
// nullopt when the stretch is short or G - Z splits into more than gamma
// parts.
std::optional<C1Parts> find_c1_application(const Instance& inst,
                                           const CliqueTree& t,
                                           const C1Search& search = {});

// C1 via find_c1_application on a fresh clique tree.
NamedRule c1_rule(const C1Search& search = {});

struct ChordalRun {
  Instance kernel;
  ReductionTrace trace;
  Verdict verdict;
  Normalization source_normalization;
  Normalization target_normalization;
};

// Normalizes both configurations and exhausts R1, R3, R5, R6 and C1; the
// verdict is left empty. k <= 1 is answered by connectivity. Throws
// NotChordalError; classic instances only.
ChordalRun chordal_kernel(const Instance& inst, const C1Search& search = {});

// chordal_kernel, then the oracle on the kernel.
ChordalRun chordal_fpt_driver(const Instance& inst,
                              const C1Search& search = {},
                              std::uint64_t budget = 0);

// Random chordal instance: each new vertex joins a clique of size < omega
// inside an existing bag. Ids 1..n.
std::optional<Instance> random_chordal_instance(std::mt19937_64& rng,
                                                std::uint32_t n,
                                                std::size_t omega, Weight k);

}  // namespace gts

#endif  // GTS_CHORDAL_HPP_
