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

#ifndef GTS_GRAPH_HPP_
#define GTS_GRAPH_HPP_

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace gts {

using VertexId = std::uint32_t;
using Weight = std::uint32_t;
using VertexSet = std::vector<VertexId>;  // Sorted, duplicate free.

enum class VertexKind : std::uint8_t { kPlanet, kBlackHole };

enum class ErrorCode {
  kInvalidArgument,
  kMalformedConfig,
  kResourceLimit,
  kMalformedEmbedding,
  kNotChordal,
  kNormalizationFailed,
  kDriverOrder,
  kMalformedWitness,
  kParse,
};

const char* ErrorCodeName(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

// Thrown by the text parsers; `line()` is 1-based, 0 when unknown.
class ParseError : public Error {
 public:
  ParseError(int line, const std::string& message);
  int line() const { return line_; }

 private:
  int line_;
};

class ResourceLimitError : public Error {
 public:
  ResourceLimitError(std::uint64_t states, const std::string& message);
  std::uint64_t states() const { return states_; }

 private:
  std::uint64_t states_;
};

// Undirected simple graph on planets and black holes.
//
// Vertices are stored in increasing id order; `index` positions are dense
// and stable for the lifetime of the value, so "lowest id" and "lowest
// index" agree.
class GalacticGraph {
 public:
  GalacticGraph() = default;

  // Duplicate edges are merged. Self loops, unknown endpoints and duplicate
  // vertex ids raise kInvalidArgument. Id 0 is reserved.
  GalacticGraph(std::vector<std::pair<VertexId, VertexKind>> vertices,
                const std::vector<std::pair<VertexId, VertexId>>& edges);

  std::size_t size() const { return ids_.size(); }
  std::size_t num_edges() const { return targets_.size() / 2; }
  std::size_t num_planets() const;
  std::size_t num_holes() const { return size() - num_planets(); }

  VertexId id(std::size_t i) const { return ids_[i]; }
  std::span<const VertexId> ids() const { return ids_; }
  std::optional<std::size_t> find(VertexId v) const;
  std::size_t index(VertexId v) const;  // Throws kInvalidArgument.
  bool contains(VertexId v) const { return find(v).has_value(); }
  VertexId max_id() const { return ids_.empty() ? 0 : ids_.back(); }

  VertexKind kind(std::size_t i) const { return kinds_[i]; }
  bool is_planet(std::size_t i) const {
    return kinds_[i] == VertexKind::kPlanet;
  }
  bool is_hole(std::size_t i) const {
    return kinds_[i] == VertexKind::kBlackHole;
  }
  VertexKind kind_of(VertexId v) const { return kinds_[index(v)]; }

  // Sorted neighbor indices.
  std::span<const std::uint32_t> neighbors(std::size_t i) const {
    return {targets_.data() + offsets_[i], targets_.data() + offsets_[i + 1]};
  }
  std::size_t degree(std::size_t i) const {
    return offsets_[i + 1] - offsets_[i];
  }
  bool adjacent(std::size_t i, std::size_t j) const;
  bool adjacent_ids(VertexId u, VertexId v) const;

  // Sorted neighbor ids of `v`.
  VertexSet neighbor_ids(VertexId v) const;

  std::vector<std::pair<VertexId, VertexKind>> vertex_list() const;
  // Edges as (smaller id, larger id), sorted.
  std::vector<std::pair<VertexId, VertexId>> edge_list() const;

  friend bool operator==(const GalacticGraph& a, const GalacticGraph& b) {
    return a.ids_ == b.ids_ && a.kinds_ == b.kinds_ &&
           a.offsets_ == b.offsets_ && a.targets_ == b.targets_;
  }

 private:
  std::vector<VertexId> ids_;
  std::vector<VertexKind> kinds_;
  std::vector<std::uint32_t> offsets_{0};
  std::vector<std::uint32_t> targets_;
  std::size_t words_ = 0;
  std::vector<std::uint64_t> matrix_;  // Empty for large graphs.
};

// Token weights keyed by vertex id. Zero weights are not stored.
class TokenConfig {
 public:
  using Entry = std::pair<VertexId, Weight>;

  TokenConfig() = default;
  // Entries for the same id are summed.
  explicit TokenConfig(std::vector<Entry> entries);
  static TokenConfig FromVertices(const std::vector<VertexId>& vertices);

  Weight weight(VertexId v) const;
  Weight total() const;
  std::span<const Entry> entries() const { return entries_; }
  // Ids with positive weight.
  VertexSet support() const;
  TokenConfig with(VertexId v, Weight w) const;

  friend auto operator<=>(const TokenConfig&, const TokenConfig&) = default;

 private:
  std::vector<Entry> entries_;
};

// Clockwise neighbor order per vertex.
struct RotationSystem {
  std::vector<std::pair<VertexId, std::vector<VertexId>>> order;  // By id.

  const std::vector<VertexId>* at(VertexId v) const;
  friend bool operator==(const RotationSystem&,
                         const RotationSystem&) = default;
};

struct Instance {
  GalacticGraph graph;
  Weight k = 0;
  TokenConfig source;
  TokenConfig target;
  std::optional<RotationSystem> rotation;

  // Throws kMalformedConfig when a configuration is invalid or has the wrong
  // total, kInvalidArgument for an inconsistent rotation system.
  void validate() const;
  bool is_classic() const { return graph.num_holes() == 0; }

  friend bool operator==(const Instance&, const Instance&) = default;
};

bool is_galactic_independent(const GalacticGraph& g, const TokenConfig& c);

// Throws kMalformedConfig unless `c` is galactic independent on `g`.
void require_valid_config(const GalacticGraph& g, const TokenConfig& c);

// The canonical unsolvable instance: two isolated planets, k = 1.
Instance trivial_no_instance();
// The canonical solvable instance: one planet, k = 1, source = target.
Instance trivial_yes_instance();

VertexSet make_set(std::vector<VertexId> v);

}  // namespace gts

#endif  // GTS_GRAPH_HPP_
