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

#include "gts/graph.hpp"

#include <algorithm>
#include <string>

namespace gts {

namespace {

constexpr std::size_t kMatrixLimit = 8192;

}  // namespace

const char* ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument:
      return "invalid-argument";
    case ErrorCode::kMalformedConfig:
      return "malformed-config";
    case ErrorCode::kResourceLimit:
      return "resource-limit";
    case ErrorCode::kMalformedEmbedding:
      return "malformed-embedding";
    case ErrorCode::kNotChordal:
      return "not-chordal";
    case ErrorCode::kNormalizationFailed:
      return "normalization-failed";
    case ErrorCode::kDriverOrder:
      return "driver-order";
    case ErrorCode::kMalformedWitness:
      return "malformed-witness";
    case ErrorCode::kParse:
      return "parse-error";
  }
  return "unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(ErrorCodeName(code)) + ": " + message),
      code_(code) {}

ParseError::ParseError(int line, const std::string& message)
    : Error(ErrorCode::kParse,
            "line " + std::to_string(line) + ": " + message),
      line_(line) {}

ResourceLimitError::ResourceLimitError(std::uint64_t states,
                                       const std::string& message)
    : Error(ErrorCode::kResourceLimit, message), states_(states) {}

GalacticGraph::GalacticGraph(
    std::vector<std::pair<VertexId, VertexKind>> vertices,
    const std::vector<std::pair<VertexId, VertexId>>& edges) {
  std::sort(vertices.begin(), vertices.end());
  const std::size_t n = vertices.size();
  ids_.reserve(n);
  kinds_.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (vertices[i].first == 0) {
      throw Error(ErrorCode::kInvalidArgument, "vertex id 0 is reserved");
    }
    if (i > 0 && vertices[i].first == vertices[i - 1].first) {
      throw Error(ErrorCode::kInvalidArgument,
                  "duplicate vertex " + std::to_string(vertices[i].first));
    }
    ids_.push_back(vertices[i].first);
    kinds_.push_back(vertices[i].second);
  }
  std::vector<std::pair<std::uint32_t, std::uint32_t>> arcs;
  arcs.reserve(edges.size() * 2);
  for (auto [a, b] : edges) {
    if (a == b) {
      throw Error(ErrorCode::kInvalidArgument,
                  "self loop at " + std::to_string(a));
    }
    auto ia = static_cast<std::uint32_t>(index(a));
    auto ib = static_cast<std::uint32_t>(index(b));
    arcs.emplace_back(ia, ib);
    arcs.emplace_back(ib, ia);
  }
  std::sort(arcs.begin(), arcs.end());
  arcs.erase(std::unique(arcs.begin(), arcs.end()), arcs.end());
  offsets_.assign(n + 1, 0);
  targets_.reserve(arcs.size());
  for (auto [a, b] : arcs) {
    ++offsets_[a + 1];
    targets_.push_back(b);
  }
  for (std::size_t i = 0; i < n; ++i) offsets_[i + 1] += offsets_[i];
  if (n <= kMatrixLimit) {
    words_ = (n + 63) / 64;
    matrix_.assign(words_ * n, 0);
    for (auto [a, b] : arcs) matrix_[a * words_ + b / 64] |= 1ULL << (b % 64);
  }
}

std::size_t GalacticGraph::num_planets() const {
  return static_cast<std::size_t>(
      std::count(kinds_.begin(), kinds_.end(), VertexKind::kPlanet));
}

std::optional<std::size_t> GalacticGraph::find(VertexId v) const {
  auto it = std::lower_bound(ids_.begin(), ids_.end(), v);
  if (it == ids_.end() || *it != v) return std::nullopt;
  return static_cast<std::size_t>(it - ids_.begin());
}

std::size_t GalacticGraph::index(VertexId v) const {
  auto i = find(v);
  if (!i) {
    throw Error(ErrorCode::kInvalidArgument,
                "unknown vertex " + std::to_string(v));
  }
  return *i;
}

bool GalacticGraph::adjacent(std::size_t i, std::size_t j) const {
  if (!matrix_.empty()) {
    return (matrix_[i * words_ + j / 64] >> (j % 64)) & 1ULL;
  }
  auto nb = neighbors(i);
  return std::binary_search(nb.begin(), nb.end(),
                            static_cast<std::uint32_t>(j));
}

bool GalacticGraph::adjacent_ids(VertexId u, VertexId v) const {
  return adjacent(index(u), index(v));
}

VertexSet GalacticGraph::neighbor_ids(VertexId v) const {
  VertexSet out;
  for (auto j : neighbors(index(v))) out.push_back(ids_[j]);
  return out;
}

std::vector<std::pair<VertexId, VertexKind>> GalacticGraph::vertex_list()
    const {
  std::vector<std::pair<VertexId, VertexKind>> out;
  out.reserve(size());
  for (std::size_t i = 0; i < size(); ++i) out.emplace_back(ids_[i], kinds_[i]);
  return out;
}

std::vector<std::pair<VertexId, VertexId>> GalacticGraph::edge_list() const {
  std::vector<std::pair<VertexId, VertexId>> out;
  out.reserve(num_edges());
  for (std::size_t i = 0; i < size(); ++i) {
    for (auto j : neighbors(i)) {
      if (j > i) out.emplace_back(ids_[i], ids_[j]);
    }
  }
  return out;
}

TokenConfig::TokenConfig(std::vector<Entry> entries) {
  std::sort(entries.begin(), entries.end());
  for (auto [v, w] : entries) {
    if (w == 0) continue;
    if (!entries_.empty() && entries_.back().first == v) {
      entries_.back().second += w;
    } else {
      entries_.emplace_back(v, w);
    }
  }
}

TokenConfig TokenConfig::FromVertices(const std::vector<VertexId>& vertices) {
  std::vector<Entry> e;
  e.reserve(vertices.size());
  for (auto v : vertices) e.emplace_back(v, 1);
  return TokenConfig(std::move(e));
}

Weight TokenConfig::weight(VertexId v) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), Entry{v, 0});
  return (it != entries_.end() && it->first == v) ? it->second : 0;
}

Weight TokenConfig::total() const {
  Weight t = 0;
  for (const auto& e : entries_) t += e.second;
  return t;
}

VertexSet TokenConfig::support() const {
  VertexSet out;
  out.reserve(entries_.size());
  for (const auto& e : entries_) out.push_back(e.first);
  return out;
}

TokenConfig TokenConfig::with(VertexId v, Weight w) const {
  std::vector<Entry> e;
  for (const auto& x : entries_) {
    if (x.first != v) e.push_back(x);
  }
  e.emplace_back(v, w);
  return TokenConfig(std::move(e));
}

const std::vector<VertexId>* RotationSystem::at(VertexId v) const {
  auto it = std::lower_bound(
      order.begin(), order.end(), v,
      [](const auto& entry, VertexId id) { return entry.first < id; });
  if (it == order.end() || it->first != v) return nullptr;
  return &it->second;
}

bool is_galactic_independent(const GalacticGraph& g, const TokenConfig& c) {
  std::vector<std::size_t> planets;
  for (auto [v, w] : c.entries()) {
    auto i = g.find(v);
    if (!i) {
      throw Error(ErrorCode::kMalformedConfig,
                  "unknown vertex " + std::to_string(v));
    }
    if (g.is_planet(*i)) {
      if (w > 1) return false;
      planets.push_back(*i);
    }
  }
  for (std::size_t a = 0; a < planets.size(); ++a) {
    for (std::size_t b = a + 1; b < planets.size(); ++b) {
      if (g.adjacent(planets[a], planets[b])) return false;
    }
  }
  return true;
}

void require_valid_config(const GalacticGraph& g, const TokenConfig& c) {
  if (!is_galactic_independent(g, c)) {
    throw Error(ErrorCode::kMalformedConfig,
                "configuration is not a galactic independent set");
  }
}

void Instance::validate() const {
  require_valid_config(graph, source);
  require_valid_config(graph, target);
  if (source.total() != k || target.total() != k) {
    throw Error(ErrorCode::kMalformedConfig,
                "configuration total differs from k=" + std::to_string(k));
  }
  if (!rotation) return;
  for (std::size_t i = 0; i < graph.size(); ++i) {
    const auto* order = rotation->at(graph.id(i));
    VertexSet nb = graph.neighbor_ids(graph.id(i));
    if (order == nullptr) {
      if (nb.empty()) continue;
      throw Error(ErrorCode::kInvalidArgument,
                  "rotation missing for vertex " + std::to_string(graph.id(i)));
    }
    VertexSet sorted = *order;
    std::sort(sorted.begin(), sorted.end());
    if (sorted != nb) {
      throw Error(ErrorCode::kInvalidArgument,
                  "rotation of vertex " + std::to_string(graph.id(i)) +
                      " does not match its neighbors");
    }
  }
  if (rotation->order.size() > graph.size()) {
    throw Error(ErrorCode::kInvalidArgument, "rotation names unknown vertices");
  }
}

Instance trivial_no_instance() {
  Instance inst;
  inst.graph = GalacticGraph({{1, VertexKind::kPlanet}, {2, VertexKind::kPlanet}},
                             {});
  inst.k = 1;
  inst.source = TokenConfig({{1, 1}});
  inst.target = TokenConfig({{2, 1}});
  return inst;
}

Instance trivial_yes_instance() {
  Instance inst;
  inst.graph = GalacticGraph({{1, VertexKind::kPlanet}}, {});
  inst.k = 1;
  inst.source = TokenConfig({{1, 1}});
  inst.target = inst.source;
  return inst;
}

VertexSet make_set(std::vector<VertexId> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

}  // namespace gts
