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

#ifndef GTS_GRAPH_ALGO_HPP_
#define GTS_GRAPH_ALGO_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "gts/graph.hpp"

namespace gts {

inline constexpr int kUnreachable = -1;

// Connected components of G[A], each sorted, ordered by smallest id.
std::vector<VertexSet> planetary_components(const GalacticGraph& g);

// Connected components of G - removed, each sorted, ordered by smallest id.
std::vector<VertexSet> connected_components(const GalacticGraph& g,
                                            const VertexSet& removed = {});

// Distance in G[A]; nullopt when u and v lie in different planetary
// components. Throws kInvalidArgument for a non-planet argument.
std::optional<std::size_t> a_distance(const GalacticGraph& g, VertexId u,
                                      VertexId v);

// Throws kInvalidArgument unless p is a path of planets.
bool is_a_geodesic(const GalacticGraph& g, const std::vector<VertexId>& p);

// Replaces q by one fresh black hole (id max_id + 1).
std::pair<GalacticGraph, std::vector<TokenConfig>> contract_to_blackhole(
    const GalacticGraph& g, const VertexSet& q,
    const std::vector<TokenConfig>& cfgs);

// Breadth-first distances by index from `source`; only vertices with
// allowed[i] != 0 are entered (the source is always entered). An empty mask
// allows everything.
std::vector<int> bfs_distances(const GalacticGraph& g, std::size_t source,
                               const std::vector<char>& allowed = {});

// Like bfs_distances, also returning the parent of each reached vertex
// (lowest-index parent first discovered), or -1.
std::pair<std::vector<int>, std::vector<int>> bfs_tree(
    const GalacticGraph& g, std::size_t source,
    const std::vector<char>& allowed = {});

// Shortest path by index, or empty when unreachable.
std::vector<std::size_t> shortest_path(const GalacticGraph& g,
                                       std::size_t from, std::size_t to,
                                       const std::vector<char>& allowed = {});

GalacticGraph induced_subgraph(const GalacticGraph& g, const VertexSet& keep);

// Maximum finite distance between vertices of `within`, measured in
// G[within].
std::size_t diameter_within(const GalacticGraph& g, const VertexSet& within);

// Maximum finite distance between any two vertices of g.
std::size_t graph_diameter(const GalacticGraph& g);

// N(s) as a sorted id set (excluding s itself).
VertexSet open_neighborhood(const GalacticGraph& g, const VertexSet& s);

bool is_connected(const GalacticGraph& g);

std::vector<char> mask_of(const GalacticGraph& g, const VertexSet& s);

}  // namespace gts

#endif  // GTS_GRAPH_ALGO_HPP_
