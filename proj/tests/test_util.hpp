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

#ifndef GTS_TESTS_TEST_UTIL_HPP_
#define GTS_TESTS_TEST_UTIL_HPP_

#include <algorithm>
#include <deque>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <utility>
#include <vector>

#include "gts/graph.hpp"

namespace gts::testing {

using Edges = std::vector<std::pair<VertexId, VertexId>>;

// Vertices 1..n, planets unless listed in `holes`.
inline GalacticGraph make_graph(VertexId n, const Edges& edges,
                                const VertexSet& holes = {}) {
  std::vector<std::pair<VertexId, VertexKind>> v;
  for (VertexId i = 1; i <= n; ++i) {
    bool hole = std::find(holes.begin(), holes.end(), i) != holes.end();
    v.emplace_back(i, hole ? VertexKind::kBlackHole : VertexKind::kPlanet);
  }
  return GalacticGraph(std::move(v), edges);
}

inline Instance make_instance(VertexId n, const Edges& edges,
                              const VertexSet& holes,
                              std::vector<TokenConfig::Entry> source,
                              std::vector<TokenConfig::Entry> target) {
  Instance inst;
  inst.graph = make_graph(n, edges, holes);
  inst.source = TokenConfig(std::move(source));
  inst.target = TokenConfig(std::move(target));
  inst.k = inst.source.total();
  inst.validate();
  return inst;
}

// Classic instance with unit tokens.
inline Instance make_classic(VertexId n, const Edges& edges,
                             const VertexSet& source,
                             const VertexSet& target) {
  std::vector<TokenConfig::Entry> s;
  std::vector<TokenConfig::Entry> t;
  for (VertexId v : source) s.emplace_back(v, 1);
  for (VertexId v : target) t.emplace_back(v, 1);
  return make_instance(n, edges, {}, std::move(s), std::move(t));
}

inline Edges path_edges(VertexId n, VertexId first = 1) {
  Edges e;
  for (VertexId i = first; i + 1 < first + n; ++i) e.emplace_back(i, i + 1);
  return e;
}

// Independent reachability check for classic instances: BFS over sorted
// token tuples with moves derived from the definition.
inline bool naive_classic_reachable(const Instance& inst) {
  const GalacticGraph& g = inst.graph;
  auto independent = [&](const std::vector<VertexId>& s) {
    for (std::size_t a = 0; a < s.size(); ++a) {
      for (std::size_t b = a + 1; b < s.size(); ++b) {
        if (s[a] == s[b] || g.adjacent_ids(s[a], s[b])) return false;
      }
    }
    return true;
  };
  std::vector<VertexId> start = inst.source.support();
  std::vector<VertexId> goal = inst.target.support();
  std::set<std::vector<VertexId>> seen{start};
  std::deque<std::vector<VertexId>> queue{start};
  while (!queue.empty()) {
    auto cur = queue.front();
    queue.pop_front();
    if (cur == goal) return true;
    for (std::size_t i = 0; i < cur.size(); ++i) {
      for (VertexId w : g.neighbor_ids(cur[i])) {
        auto next = cur;
        next[i] = w;
        std::sort(next.begin(), next.end());
        if (!independent(next)) continue;
        if (seen.insert(next).second) queue.push_back(next);
      }
    }
  }
  return false;
}

// Random galactic instance with vertices 1..n; tokens placed greedily on
// random vertices, skipping placements that would break independence.
template <typename Rng>
Instance random_instance(Rng& rng, VertexId n, double edge_p, double hole_p,
                         Weight k) {
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  Edges e;
  VertexSet holes;
  for (VertexId a = 1; a <= n; ++a) {
    if (coin(rng) < hole_p) holes.push_back(a);
    for (VertexId b = a + 1; b <= n; ++b) {
      if (coin(rng) < edge_p) e.emplace_back(a, b);
    }
  }
  GalacticGraph g = make_graph(n, e, holes);
  auto place = [&]() -> std::optional<TokenConfig> {
    for (int attempt = 0; attempt < 50; ++attempt) {
      TokenConfig c;
      bool ok = true;
      for (Weight t = 0; t < k && ok; ++t) {
        bool placed = false;
        for (int tries = 0; tries < 20 && !placed; ++tries) {
          VertexId v = 1 + static_cast<VertexId>(rng() % n);
          TokenConfig next = c.with(v, c.weight(v) + 1);
          if (is_galactic_independent(g, next)) {
            c = next;
            placed = true;
          }
        }
        ok = placed;
      }
      if (ok) return c;
    }
    return std::nullopt;
  };
  Instance inst;
  inst.graph = g;
  inst.k = k;
  auto s = place();
  auto t = place();
  if (!s || !t) {
    inst.k = 0;
    return inst;
  }
  inst.source = *s;
  inst.target = *t;
  return inst;
}

// Independent galactic reachability: BFS over id -> weight maps, a move
// being any unit of weight crossing an edge into a planet free of tokens in
// its closed neighborhood, or into a black hole.
inline bool naive_galactic_reachable(const Instance& inst) {
  const GalacticGraph& g = inst.graph;
  using State = std::map<VertexId, Weight>;
  auto to_state = [](const TokenConfig& c) {
    State s;
    for (auto [v, w] : c.entries()) s[v] = w;
    return s;
  };
  State start = to_state(inst.source);
  State goal = to_state(inst.target);
  std::set<State> seen{start};
  std::deque<State> queue{start};
  while (!queue.empty()) {
    State cur = queue.front();
    queue.pop_front();
    if (cur == goal) return true;
    for (auto [u, w] : cur) {
      for (VertexId v : g.neighbor_ids(u)) {
        if (g.kind_of(v) == VertexKind::kPlanet) {
          bool free = !cur.count(v);
          for (VertexId x : g.neighbor_ids(v)) {
            if (x != u && cur.count(x) &&
                g.kind_of(x) == VertexKind::kPlanet) {
              free = false;
            }
          }
          if (!free) continue;
        }
        State next = cur;
        if (--next[u] == 0) next.erase(u);
        ++next[v];
        if (seen.insert(next).second) queue.push_back(next);
      }
    }
  }
  return false;
}

}  // namespace gts::testing

#endif  // GTS_TESTS_TEST_UTIL_HPP_
