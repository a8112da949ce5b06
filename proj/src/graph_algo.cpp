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

#include "gts/graph_algo.hpp"

#include <algorithm>
#include <deque>
#include <string>

#include "gts/rewrite.hpp"

namespace gts {

namespace {

std::vector<VertexSet> components_by_mask(const GalacticGraph& g,
                                          const std::vector<char>& allowed) {
  std::vector<VertexSet> out;
  std::vector<char> seen(g.size(), 0);
  std::vector<std::size_t> stack;
  for (std::size_t s = 0; s < g.size(); ++s) {
    if (!allowed[s] || seen[s]) continue;
    VertexSet comp;
    seen[s] = 1;
    stack.push_back(s);
    while (!stack.empty()) {
      std::size_t u = stack.back();
      stack.pop_back();
      comp.push_back(g.id(u));
      for (auto w : g.neighbors(u)) {
        if (allowed[w] && !seen[w]) {
          seen[w] = 1;
          stack.push_back(w);
        }
      }
    }
    std::sort(comp.begin(), comp.end());
    out.push_back(std::move(comp));
  }
  return out;
}

}  // namespace

std::vector<char> mask_of(const GalacticGraph& g, const VertexSet& s) {
  std::vector<char> mask(g.size(), 0);
  for (VertexId v : s) mask[g.index(v)] = 1;
  return mask;
}

std::vector<VertexSet> planetary_components(const GalacticGraph& g) {
  std::vector<char> allowed(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) allowed[i] = g.is_planet(i);
  return components_by_mask(g, allowed);
}

std::vector<VertexSet> connected_components(const GalacticGraph& g,
                                            const VertexSet& removed) {
  std::vector<char> allowed(g.size(), 1);
  for (VertexId v : removed) {
    if (auto i = g.find(v)) allowed[*i] = 0;
  }
  return components_by_mask(g, allowed);
}

std::pair<std::vector<int>, std::vector<int>> bfs_tree(
    const GalacticGraph& g, std::size_t source,
    const std::vector<char>& allowed) {
  std::vector<int> dist(g.size(), kUnreachable);
  std::vector<int> parent(g.size(), -1);
  std::deque<std::size_t> queue;
  dist[source] = 0;
  queue.push_back(source);
  while (!queue.empty()) {
    std::size_t u = queue.front();
    queue.pop_front();
    for (auto w : g.neighbors(u)) {
      if (dist[w] != kUnreachable) continue;
      if (!allowed.empty() && !allowed[w]) continue;
      dist[w] = dist[u] + 1;
      parent[w] = static_cast<int>(u);
      queue.push_back(w);
    }
  }
  return {std::move(dist), std::move(parent)};
}

std::vector<int> bfs_distances(const GalacticGraph& g, std::size_t source,
                               const std::vector<char>& allowed) {
  return bfs_tree(g, source, allowed).first;
}

std::vector<std::size_t> shortest_path(const GalacticGraph& g,
                                       std::size_t from, std::size_t to,
                                       const std::vector<char>& allowed) {
  auto [dist, parent] = bfs_tree(g, from, allowed);
  if (dist[to] == kUnreachable) return {};
  std::vector<std::size_t> path;
  for (int cur = static_cast<int>(to); cur != -1; cur = parent[cur]) {
    path.push_back(static_cast<std::size_t>(cur));
  }
  std::reverse(path.begin(), path.end());
  return path;
}

std::optional<std::size_t> a_distance(const GalacticGraph& g, VertexId u,
                                      VertexId v) {
  std::size_t iu = g.index(u);
  std::size_t iv = g.index(v);
  if (!g.is_planet(iu) || !g.is_planet(iv)) {
    throw Error(ErrorCode::kInvalidArgument,
                "a_distance is defined on planets only");
  }
  std::vector<char> allowed(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) allowed[i] = g.is_planet(i);
  int d = bfs_distances(g, iu, allowed)[iv];
  if (d == kUnreachable) return std::nullopt;
  return static_cast<std::size_t>(d);
}

bool is_a_geodesic(const GalacticGraph& g, const std::vector<VertexId>& p) {
  std::vector<std::size_t> idx;
  for (VertexId v : p) {
    auto i = g.find(v);
    if (!i || !g.is_planet(*i)) {
      throw Error(ErrorCode::kInvalidArgument, "path vertex is not a planet");
    }
    idx.push_back(*i);
  }
  for (std::size_t j = 1; j < idx.size(); ++j) {
    if (!g.adjacent(idx[j - 1], idx[j])) {
      throw Error(ErrorCode::kInvalidArgument, "sequence is not a path");
    }
  }
  if (make_set(std::vector<VertexId>(p)).size() != p.size()) {
    throw Error(ErrorCode::kInvalidArgument, "path repeats a vertex");
  }
  std::vector<char> allowed(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) allowed[i] = g.is_planet(i);
  for (std::size_t a = 0; a < idx.size(); ++a) {
    auto dist = bfs_distances(g, idx[a], allowed);
    for (std::size_t b = a + 1; b < idx.size(); ++b) {
      if (dist[idx[b]] != static_cast<int>(b - a)) return false;
    }
  }
  return true;
}

std::pair<GalacticGraph, std::vector<TokenConfig>> contract_to_blackhole(
    const GalacticGraph& g, const VertexSet& q,
    const std::vector<TokenConfig>& cfgs) {
  if (q.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "cannot contract an empty set");
  }
  VertexSet group = make_set(q);
  for (VertexId v : group) g.index(v);
  VertexId fresh = fresh_id(g);
  std::vector<char> in_group = mask_of(g, group);
  std::vector<std::pair<VertexId, VertexKind>> vertices;
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (!in_group[i]) vertices.emplace_back(g.id(i), g.kind(i));
  }
  vertices.emplace_back(fresh, VertexKind::kBlackHole);
  std::vector<std::pair<VertexId, VertexId>> edges;
  for (auto [a, b] : g.edge_list()) {
    bool ia = in_group[g.index(a)];
    bool ib = in_group[g.index(b)];
    if (ia && ib) continue;
    edges.emplace_back(ia ? fresh : a, ib ? fresh : b);
  }
  std::vector<TokenConfig> out;
  for (const auto& c : cfgs) {
    std::vector<TokenConfig::Entry> e;
    Weight merged = 0;
    for (auto [v, w] : c.entries()) {
      if (std::binary_search(group.begin(), group.end(), v)) {
        merged += w;
      } else {
        e.emplace_back(v, w);
      }
    }
    e.emplace_back(fresh, merged);
    out.emplace_back(std::move(e));
  }
  return {GalacticGraph(std::move(vertices), edges), std::move(out)};
}

GalacticGraph induced_subgraph(const GalacticGraph& g, const VertexSet& keep) {
  std::vector<char> in = mask_of(g, keep);
  std::vector<std::pair<VertexId, VertexKind>> vertices;
  for (VertexId v : keep) vertices.emplace_back(v, g.kind_of(v));
  std::vector<std::pair<VertexId, VertexId>> edges;
  for (auto [a, b] : g.edge_list()) {
    if (in[g.index(a)] && in[g.index(b)]) edges.emplace_back(a, b);
  }
  return GalacticGraph(std::move(vertices), edges);
}

std::size_t diameter_within(const GalacticGraph& g, const VertexSet& within) {
  std::vector<char> allowed = mask_of(g, within);
  std::size_t best = 0;
  for (VertexId v : within) {
    auto dist = bfs_distances(g, g.index(v), allowed);
    for (VertexId w : within) {
      int d = dist[g.index(w)];
      if (d != kUnreachable) best = std::max(best, static_cast<std::size_t>(d));
    }
  }
  return best;
}

std::size_t graph_diameter(const GalacticGraph& g) {
  std::size_t best = 0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    for (int d : bfs_distances(g, i)) {
      if (d != kUnreachable) best = std::max(best, static_cast<std::size_t>(d));
    }
  }
  return best;
}

VertexSet open_neighborhood(const GalacticGraph& g, const VertexSet& s) {
  std::vector<char> in = mask_of(g, s);
  VertexSet out;
  for (VertexId v : s) {
    for (auto w : g.neighbors(g.index(v))) {
      if (!in[w]) out.push_back(g.id(w));
    }
  }
  return make_set(std::move(out));
}

bool is_connected(const GalacticGraph& g) {
  return connected_components(g).size() <= 1;
}

}  // namespace gts
