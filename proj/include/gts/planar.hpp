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

#ifndef GTS_PLANAR_HPP_
#define GTS_PLANAR_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "gts/graph.hpp"
#include "gts/kernel_rules.hpp"

namespace gts {

using Path = std::vector<VertexId>;

// Combinatorial embedding by vertex index, with its faces. The face right
// of dart i->j continues with j->succ_j(i).
class Embedding {
 public:
  // Throws kMalformedEmbedding when `rs` does not list exactly the
  // neighbors of every vertex or the faces fail the Euler check.
  Embedding(const GalacticGraph& g, const RotationSystem& rs);

  std::size_t size() const { return rot_.size(); }
  std::span<const std::uint32_t> rotation(std::size_t i) const {
    return rot_[i];
  }
  // Position of j in the rotation of i. Throws kInvalidArgument.
  std::size_t position(std::size_t i, std::size_t j) const;
  std::size_t num_faces() const { return num_faces_; }
  std::size_t face(std::size_t i, std::size_t j) const;

  // Groups faces that meet along an edge not listed in `walls` (index
  // pairs). Returns a region id per face.
  std::vector<std::size_t> regions(
      const std::vector<std::pair<std::size_t, std::size_t>>& walls) const;

  RotationSystem to_rotation_system(const GalacticGraph& g) const;

 private:
  std::vector<std::vector<std::uint32_t>> rot_;
  std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> pos_;
  std::vector<std::size_t> offset_;
  std::vector<std::size_t> face_;  // By dart offset_[i] + position.
  std::size_t num_faces_ = 0;
};

bool is_planar(const GalacticGraph& g);

// The instance rotation when present, otherwise a Boyer-Myrvold embedding.
// Throws kMalformedEmbedding on a non-planar graph.
Embedding embedding_of(const Instance& inst);

// Maximum set of internally vertex-disjoint (u,v)-paths, each listed from u
// to v. A u-v edge counts as one path.
std::vector<Path> max_disjoint_paths(const GalacticGraph& g, VertexId u,
                                     VertexId v);

struct ConsecutivePathFamily {
  VertexId u = 0;
  VertexId v = 0;
  std::vector<Path> paths;  // P_1..P_q.
  // Vertices strictly between P_i and P_{i+1}; size q-1.
  std::vector<VertexSet> interiors;
  // G_{P_i,P_{i+1}} including u and v.
  std::vector<VertexSet> sections;
  // Section i minus {u,v} is connected and both paths have inner vertices.
  std::vector<char> consecutive;
  // Vertices between P_q and P_1, outside the family.
  VertexSet outside;

  std::size_t size() const { return paths.size(); }
};

// Orders paths by their first edge around u. The cyclic order is cut at
// the widest gap (most vertices, then lowest index), which becomes
// `outside`. A direct u-v edge is dropped. Throws kInvalidArgument for
// fewer than two paths or paths not joining u and v.
ConsecutivePathFamily order_consecutive(const GalacticGraph& g,
                                        const Embedding& emb, VertexId u,
                                        VertexId v, std::vector<Path> paths);

// Longest run of consecutive sections, as a family of its own.
ConsecutivePathFamily consecutive_subfamily(const ConsecutivePathFamily& fam);

// Shortest path from an inner vertex of P_1 to an inner vertex of P_q
// through G^o_{P_1,P_q}; nullopt when none exists. Throws kInvalidArgument
// when q < 3.
std::optional<Path> crossing_path(const GalacticGraph& g,
                                  const ConsecutivePathFamily& fam);

struct PlanarThresholds {
  std::uint64_t p1_paths = 0;     // 10k+21
  std::uint64_t p1_sections = 0;  // 5k+10
  std::uint64_t p2_paths = 0;     // (10k+21)^2
  std::uint64_t fan = 0;          // 3k+2
  std::uint64_t comb = 0;         // (3k+2)^2
  std::uint64_t high_degree = 0;  // Saturates at UINT64_MAX.
  bool sound = true;
};

PlanarThresholds full_thresholds(Weight k);

// Small thresholds for exercising the rewrites on desk-sized gadgets;
// marked unsound.
PlanarThresholds desk_thresholds(Weight k);

// Contracts one crossing-path edge of a token-free consecutive family.
// k >= 2.
RuleOutcome rule_p1(const Instance& inst, const Embedding& emb,
                    const PlanarThresholds& th);
RuleOutcome rule_p1(const Instance& inst);
// As P1, for a family whose region minus v is inside N(u) (or vice versa).
RuleOutcome rule_p2(const Instance& inst, const Embedding& emb,
                    const PlanarThresholds& th);
RuleOutcome rule_p2(const Instance& inst);

// x complete to an induced spine x_1..x_r and to the part K of G - {x, x_1,
// x_r} holding x_2..x_{r-1}; K contains no token and no black hole.
struct Fan {
  VertexId center = 0;
  Path spine;
  VertexSet interior;  // K minus the spine.
};

std::vector<Fan> find_fans(const Instance& inst, std::size_t min_r);

// Replaces the inner spine and interior of a fan with r >= 3k+2 by a fresh
// path of 3k planets complete to x. Applies only when this shrinks G.
RuleOutcome rule_p3(const Instance& inst, const Embedding& emb,
                    const PlanarThresholds& th);
RuleOutcome rule_p3(const Instance& inst);

// Complete comb: a fan whose interior vertices are pendants of inner spine
// vertices, with pendants at x_2 and x_{r-1}. B-side pendants are those
// on the side of the spine away from x in the rotation.
RuleOutcome rule_p4(const Instance& inst, const Embedding& emb,
                    const PlanarThresholds& th);
RuleOutcome rule_p4(const Instance& inst);

struct Comb {
  Path spine;
  std::vector<Path> teeth;  // Each from a spine vertex to a marked vertex.
  VertexSet marked;         // Marked vertices on the spine or the teeth.
};

// Greedy leaf walk into the branch with most marks. Throws
// kInvalidArgument when `tree` is not a tree or has a vertex of degree
// above `degree_bound`.
Comb extract_subdivided_comb(const GalacticGraph& tree, const VertexSet& marks,
                             std::size_t degree_bound);

// Tree inside G - v spanning the neighbors of v in one component, built
// from shortest paths out of the lowest neighbor.
GalacticGraph steiner_tree(const GalacticGraph& g, VertexId v,
                           const VertexSet& component);

// For a planet of planetary degree above th.high_degree: Steiner tree, comb
// extraction, then P3, P4, P1, P2 in that order.
RuleOutcome reduce_high_degree(const Instance& inst, const Embedding& emb,
                               const PlanarThresholds& th);

// P1-P4 as named rules; each call recomputes the embedding.
std::vector<NamedRule> planar_rules(
    const std::optional<PlanarThresholds>& override_thresholds = {});

// Exhausts R1-R5 followed by P1-P4.
std::pair<Instance, ReductionTrace> planar_kernel(
    const Instance& inst,
    const std::optional<PlanarThresholds>& override_thresholds = {});

}  // namespace gts

#endif  // GTS_PLANAR_HPP_
