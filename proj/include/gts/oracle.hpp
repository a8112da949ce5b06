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

#ifndef GTS_ORACLE_HPP_
#define GTS_ORACLE_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "gts/graph.hpp"

namespace gts {

struct Move {
  VertexId from = 0;
  VertexId to = 0;

  friend auto operator<=>(const Move&, const Move&) = default;
};

struct Verdict {
  bool reachable = false;
  std::vector<Move> witness;  // Empty unless reachable.
  std::uint64_t states = 0;   // Configurations stored by the search.
};

inline constexpr std::uint64_t kDefaultStateBudget = 10'000'000;

// GTS_STATE_BUDGET from the environment, or kDefaultStateBudget.
std::uint64_t default_state_budget();

// Sorted by (from, to). Throws kMalformedConfig for an invalid config.
std::vector<Move> legal_moves(const GalacticGraph& g, const TokenConfig& c);

// Throws kMalformedWitness when the move is not legal in c.
TokenConfig apply_move(const GalacticGraph& g, const TokenConfig& c, Move m);

// Replays the witness from the source and checks it ends at the target.
// Throws kMalformedWitness otherwise.
void check_witness(const Instance& inst, const std::vector<Move>& witness);

// Breadth-first search; the witness is a shortest sequence. Throws
// ResourceLimitError once more than `budget` configurations are stored.
Verdict solve(const Instance& inst, std::uint64_t budget = 0);

// Lexicographically minimises (moves touching x, total moves).
Verdict solve_x_reduced(const Instance& inst, const VertexSet& x,
                        std::uint64_t budget = 0);

// Number of galactic independent sets of total weight k.
std::uint64_t count_configs(const GalacticGraph& g, Weight k);

// "YES <m>" followed by "move <from> <to>" lines, or "NO".
std::string format_verdict(const Verdict& v);

}  // namespace gts

#endif  // GTS_ORACLE_HPP_
