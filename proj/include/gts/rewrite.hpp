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

#ifndef GTS_REWRITE_HPP_
#define GTS_REWRITE_HPP_

#include <string>
#include <utility>
#include <vector>

#include "gts/graph.hpp"

namespace gts {

// A set of vertices identified into one new vertex. Weights add up.
struct Merge {
  VertexSet group;
  VertexId new_id = 0;
  VertexKind kind = VertexKind::kBlackHole;

  friend bool operator==(const Merge&, const Merge&) = default;
};

// Structural edit applied in the order merges, removals, additions, edges.
// Removing a vertex discards its weight; k changes by k_delta.
struct Rewrite {
  std::vector<Merge> merges;
  VertexSet removals;
  std::vector<std::pair<VertexId, VertexKind>> additions;
  std::vector<std::pair<VertexId, VertexId>> new_edges;
  int k_delta = 0;
  bool trivial_no = false;
  bool trivial_yes = false;

  friend bool operator==(const Rewrite&, const Rewrite&) = default;
};

struct TraceEntry {
  std::string rule;
  std::vector<VertexId> witness;
  Rewrite rewrite;
  int delta_planets = 0;
  int delta_holes = 0;
  bool sound = true;

  friend bool operator==(const TraceEntry&, const TraceEntry&) = default;
};

struct ReductionTrace {
  std::vector<TraceEntry> entries;

  friend bool operator==(const ReductionTrace&,
                         const ReductionTrace&) = default;
};

// Applies the rewrite. The rotation system is kept only for empty rewrites.
// Throws kMalformedConfig when the result is not a valid instance.
Instance apply_rewrite(const Instance& inst, const Rewrite& rw);

// Builds the trace entry for a rewrite and applies it.
std::pair<Instance, TraceEntry> apply_rule_rewrite(
    const Instance& inst, std::string rule, std::vector<VertexId> witness,
    const Rewrite& rw, bool sound = true);

Instance replay(const Instance& original, const ReductionTrace& trace);

// One "rule <id> witness <ids...>" line per entry; entries produced under
// overridden thresholds are followed by "# unsafe-thresholds".
std::string format_trace(const ReductionTrace& trace);

// First id not used by g, i.e. max_id + 1.
VertexId fresh_id(const GalacticGraph& g);

}  // namespace gts

#endif  // GTS_REWRITE_HPP_
