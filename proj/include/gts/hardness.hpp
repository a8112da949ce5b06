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

#ifndef GTS_HARDNESS_HPP_
#define GTS_HARDNESS_HPP_

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "gts/graph.hpp"
#include "gts/oracle.hpp"

namespace gts {

// Multicolored independent set input: k classes of n vertices each, every
// class a clique. Vertices are (class, index), both 1-based.
struct MisInstance {
  struct Vertex {
    std::uint32_t cls = 0;
    std::uint32_t idx = 0;
    friend auto operator<=>(const Vertex&, const Vertex&) = default;
  };

  std::uint32_t k = 0;
  std::uint32_t n = 0;
  // Cross edges, stored with the smaller class first, sorted.
  std::vector<std::pair<Vertex, Vertex>> edges;

  // Sorts, orients and deduplicates `edges`; throws kInvalidArgument for
  // out-of-range or same-class pairs.
  void normalize();
  bool adjacent(Vertex a, Vertex b) const;
  // Non-adjacent pairs between classes i < j.
  std::uint64_t non_edges(std::uint32_t i, std::uint32_t j) const;
  std::uint64_t non_edges() const;  // Over unordered class pairs.
};

// "p mis <k> <n>" then "e <i>:<a> <j>:<b>" lines; '#' starts a comment.
MisInstance parse_mis(std::string_view text);
std::string format_mis(const MisInstance& mis);

// One vertex selection gadget. c[j] for j < k-1 are the subgroups, c[k-1]
// is the lock group; u[k-1] is the lock vertex.
struct SelectionGadget {
  std::vector<VertexId> u;
  std::vector<std::vector<VertexId>> c;
  std::vector<std::vector<VertexId>> d;  // k-1 subgroups of n.
  VertexId d_lock = 0;
};

struct NonEdgeGadget {
  std::uint32_t i = 0, j = 0;  // Classes, i < j.
  VertexId u = 0;
  VertexId d = 0;
  std::vector<VertexId> m;  // One per non-edge, in (a, b) order.
};

struct SplitLayout {
  // Construction order of each side; ids are C, then U, then D.
  std::vector<VertexId> c, u, d;
  std::vector<SelectionGadget> selection;
  std::vector<NonEdgeGadget> non_edge;
};

struct SplitInstance {
  Instance instance;
  SplitLayout layout;
  MisInstance mis;  // Normalized input.
};

// Throws kInvalidArgument unless k >= 2 and n >= 2.
SplitInstance build_split_instance(const MisInstance& mis);

// Closed-form sizes for k, n and the unordered non-edge count.
struct SplitSizes {
  std::uint64_t c = 0, u = 0, d = 0, k_prime = 0;
  friend bool operator==(const SplitSizes&, const SplitSizes&) = default;
};
SplitSizes expected_split_sizes(std::uint64_t k, std::uint64_t n,
                                std::uint64_t mbar);

// Empty when C is a clique, U u D is independent and the two sides
// partition V, otherwise a description of the defect.
std::string check_split_structure(const SplitInstance& s);

// Exhaustive search over one vertex per class.
bool has_multicolored_independent_set(const MisInstance& mis);

struct EquivalenceCheck {
  bool mis_yes = false;
  bool ts_yes = false;
  std::uint64_t states = 0;
  bool agree() const { return mis_yes == ts_yes; }
};

// Brute force on the MIS side, oracle on the built instance. Throws
// ResourceLimitError past `budget` states.
EquivalenceCheck check_equivalence(const MisInstance& mis,
                                   std::uint64_t budget = 0);
bool verify_equivalence_small(const MisInstance& mis,
                              std::uint64_t budget = 0);

struct WellBehavedReport {
  bool vacuous = false;         // No witness to inspect.
  std::size_t loops_removed = 0;  // Repeated configurations cut out.
  bool ordering_holds = true;
  bool alpha_found = false;
  bool beta_found = false;
  std::size_t alpha = 0, beta = 0;  // Positions in the deduplicated run.
  std::vector<bool> gadget_well_behaved;
  // Row chosen by each selection gadget at I_alpha, 1-based; 0 if none.
  std::vector<std::uint32_t> rows;
  std::vector<std::string> violations;

  bool ok() const { return violations.empty(); }
};

// Replays the witness, removes repeated configurations, then checks that
// no token leaves U before every earlier U token sits in D and that the
// canonical sets exist. A gadget is well behaved when at I_alpha its D side
// holds the lock token and one token per subgroup on a common row, all still
// occupied at I_beta; the chosen rows must be independent in the input.
// Positions are compared as sets: two tokens of a gadget can trade
// subgroups, and a non-edge token may come to rest in D_i.
// An empty witness is a vacuous pass.
WellBehavedReport well_behaved_check(const std::vector<Move>& witness,
                                     const SplitInstance& s);

}  // namespace gts

#endif  // GTS_HARDNESS_HPP_
