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

#ifndef GTS_MULTICOMPONENT_HPP_
#define GTS_MULTICOMPONENT_HPP_

#include <compare>
#include <cstdint>
#include <functional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "gts/graph.hpp"
#include "gts/kernel_rules.hpp"
#include "gts/oracle.hpp"

namespace gts {

// Subset of a cutset X as a bit mask; bit i stands for the i-th smallest id
// of X.
using TraceMask = std::uint32_t;

// Transition-walk trace, or kBottom for an empty transition walk.
using Slot = std::int32_t;
inline constexpr Slot kBottom = -1;

inline constexpr std::size_t kMaxCutset = 4;
inline constexpr std::size_t kMaxEll = 4;

// I Y_1 W_1 ... Y_l W_l Y_{l+1} F.
struct EllType {
  TraceMask initial = 0;
  std::vector<std::pair<Slot, TraceMask>> blocks;  // (Y_i, W_i).
  Slot tail = kBottom;                              // Y_{l+1}.
  TraceMask final_trace = 0;

  std::size_t ell() const { return blocks.size(); }
  friend auto operator<=>(const EllType&, const EllType&) = default;
};

using Signature = std::set<EllType>;

// Sets print as "{3,7}", the empty walk as "_".
std::string format_type(const EllType& t, const VertexSet& x);

// N(s) ∩ x. Throws kInvalidArgument when s meets x.
VertexSet x_trace(const GalacticGraph& g, const VertexSet& x,
                  const VertexSet& s);

// Number of types with exactly `ell` blocks, and the coarser bound
// (2^|X|+1)^(2(ell+2)). Both saturate at UINT64_MAX.
std::uint64_t type_count(std::size_t x_size, std::size_t ell);
std::uint64_t type_bound(std::size_t x_size, std::size_t ell);

// Calls `fn` once per type with exactly `ell` blocks. Throws
// ResourceLimitError beyond kMaxCutset / kMaxEll.
void enumerate_types(std::size_t x_size, std::size_t ell,
                     const std::function<void(const EllType&)>& fn);

// All types with at most `ell` blocks simulable by a walk from v inside its
// component of G - x. The first and the last transition may be empty with
// equal anchors (the walk waits where it entered, or leaves from where it
// waited); inner empty transitions join adjacent anchors.
Signature vertex_signature(const GalacticGraph& g, const VertexSet& x,
                           VertexId v, std::size_t ell);

// Union of vertex signatures over a component of G - x.
Signature component_signature(const GalacticGraph& g, const VertexSet& x,
                              const VertexSet& component, std::size_t ell);

// Members of `family` (components of G - x) owning a type with at most `ell`
// blocks that occurs in at most `ell` members. Indices into `family`.
std::vector<std::size_t> dangerous_components(
    const GalacticGraph& g, const VertexSet& x,
    const std::vector<VertexSet>& family, std::size_t ell);

// Iterated peeling of all components of G - x with ell = 5|X|k.
std::vector<VertexSet> safe_components(const GalacticGraph& g,
                                       const VertexSet& x, Weight k);
std::vector<VertexSet> peel_components(const GalacticGraph& g,
                                       const VertexSet& x,
                                       std::vector<VertexSet> family,
                                       std::size_t ell);

// Deletes the lowest token-free safe component of G - x when at least
// 4k+2 safe components exist. Classic instances only.
RuleOutcome rule_r6(const Instance& inst, const VertexSet& x);

// Tries every cutset of size 1..max_cutset (lexicographic) whose removal
// leaves at least 4k+2 components.
RuleOutcome rule_r6_auto(const Instance& inst, std::size_t max_cutset = 2);

struct WaitingVertex {
  std::size_t walk_pos = 0;
  VertexId vertex = 0;
  std::size_t first = 0;  // s_i: first configuration on the vertex.
  std::size_t last = 0;   // s'_i.
};

struct Journey {
  std::size_t token = 0;      // Index of the token's source vertex.
  VertexId component = 0;     // Smallest id of the component.
  std::size_t first_config = 0;
  std::vector<VertexId> vertices;  // Per configuration.
  std::vector<VertexId> walk;
  std::vector<WaitingVertex> waiting;
  // Indices into `waiting`: the X-important sequence (starting at the first
  // waiting vertex, smallest j rule) and the important sequence (largest j).
  std::vector<std::size_t> x_important;
  std::vector<std::size_t> important;
};

// Classic instances only. Throws kMalformedWitness on an invalid witness.
std::vector<Journey> extract_journeys(const std::vector<Move>& witness,
                                      const Instance& inst,
                                      const VertexSet& x);

}  // namespace gts

#endif  // GTS_MULTICOMPONENT_HPP_
