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

#include "gts/planar.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <numeric>
#include <set>
#include <string>

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/boyer_myrvold_planar_test.hpp>

#include "gts/graph_algo.hpp"
#include "gts/rewrite.hpp"

namespace gts {

namespace {

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

Error bad_embedding(const std::string& what) {
  return Error(ErrorCode::kMalformedEmbedding, what);
}

std::size_t find_root(std::vector<std::size_t>& parent, std::size_t x) {
  while (parent[x] != x) {
    parent[x] = parent[parent[x]];
    x = parent[x];
  }
  return x;
}

using BoostGraph =
    boost::adjacency_list<boost::vecS, boost::vecS, boost::undirectedS,
                          boost::property<boost::vertex_index_t, int>,
                          boost::property<boost::edge_index_t, int>>;
using BoostEdge = boost::graph_traits<BoostGraph>::edge_descriptor;

// Runs Boyer-Myrvold; nullopt for a non-planar graph.
std::optional<RotationSystem> boyer_myrvold(const GalacticGraph& g) {
  BoostGraph bg(g.size());
  int next = 0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    for (auto j : g.neighbors(i)) {
      if (i < j) {
        auto e = boost::add_edge(i, j, bg).first;
        boost::put(boost::edge_index, bg, e, next++);
      }
    }
  }
  std::vector<std::vector<BoostEdge>> emb(g.size());
  bool planar = boost::boyer_myrvold_planarity_test(
      boost::boyer_myrvold_params::graph = bg,
      boost::boyer_myrvold_params::embedding = boost::make_iterator_property_map(
          emb.begin(), boost::get(boost::vertex_index, bg)));
  if (!planar) return std::nullopt;
  RotationSystem rs;
  for (std::size_t i = 0; i < g.size(); ++i) {
    std::vector<VertexId> order;
    for (const BoostEdge& e : emb[i]) {
      std::size_t s = boost::source(e, bg);
      std::size_t t = boost::target(e, bg);
      order.push_back(g.id(s == i ? t : s));
    }
    rs.order.emplace_back(g.id(i), std::move(order));
  }
  return rs;
}

std::vector<char> token_mask(const Instance& inst) {
  const GalacticGraph& g = inst.graph;
  std::vector<char> mark(g.size(), 0);
  for (const TokenConfig* c : {&inst.source, &inst.target}) {
    for (auto [v, w] : c->entries()) {
      if (w > 0) mark[g.index(v)] = 1;
    }
  }
  return mark;
}

Reduced make_reduced(const Instance& inst, std::string rule,
                     std::vector<VertexId> witness, const Rewrite& rw,
                     bool sound) {
  auto [out, entry] = apply_rule_rewrite(inst, std::move(rule),
                                         std::move(witness), rw,
                                         sound);
  return Reduced{std::move(out), std::move(entry)};
}

// Paths around u in rotation order with the vertex sets of the wedges
// between consecutive ones: wedge j lies clockwise between P_j and P_{j+1}.
struct CyclicFamily {
  VertexId u = 0;
  VertexId v = 0;
  std::vector<Path> paths;
  std::vector<VertexSet> wedges;
  VertexSet elsewhere;  // In no wedge: other components of G.
};

CyclicFamily cyclic_family(const GalacticGraph& g, const Embedding& emb,
                           VertexId u, VertexId v, std::vector<Path> paths) {
  const std::size_t ui = g.index(u);
  g.index(v);
  std::vector<char> on_path(g.size(), 0);
  std::vector<Path> kept;
  for (Path& p : paths) {
    if (p.size() < 2 || p.front() != u || p.back() != v) {
      throw Error(ErrorCode::kInvalidArgument, "path does not join u and v");
    }
    for (std::size_t i = 0; i + 1 < p.size(); ++i) {
      if (!g.adjacent_ids(p[i], p[i + 1])) {
        throw Error(ErrorCode::kInvalidArgument, "path uses a non-edge");
      }
    }
    if (p.size() == 2) continue;
    for (std::size_t i = 1; i + 1 < p.size(); ++i) {
      std::size_t w = g.index(p[i]);
      if (on_path[w] || p[i] == u || p[i] == v) {
        throw Error(ErrorCode::kInvalidArgument,
                    "paths are not internally vertex-disjoint");
      }
      on_path[w] = 1;
    }
    kept.push_back(std::move(p));
  }
  if (kept.size() < 2) {
    throw Error(ErrorCode::kInvalidArgument,
                "need at least two paths with inner vertices");
  }
  std::sort(kept.begin(), kept.end(), [&](const Path& a, const Path& b) {
    return emb.position(ui, g.index(a[1])) < emb.position(ui, g.index(b[1]));
  });

  std::vector<std::pair<std::size_t, std::size_t>> walls;
  for (const Path& p : kept) {
    for (std::size_t i = 0; i + 1 < p.size(); ++i) {
      walls.emplace_back(g.index(p[i]), g.index(p[i + 1]));
    }
  }
  std::vector<std::size_t> region = emb.regions(walls);
  const std::size_t q = kept.size();
  std::vector<std::size_t> wedge_region(q);
  for (std::size_t j = 0; j < q; ++j) {
    wedge_region[j] = region[emb.face(g.index(kept[j][1]), ui)];
    for (std::size_t i = 0; i < j; ++i) {
      if (wedge_region[i] == wedge_region[j]) {
        throw bad_embedding("paths do not separate the embedding");
      }
    }
  }
  CyclicFamily out;
  out.u = u;
  out.v = v;
  out.wedges.resize(q);
  for (std::size_t w = 0; w < g.size(); ++w) {
    if (on_path[w] || w == ui || g.id(w) == v) continue;
    std::size_t slot = kNone;
    if (g.degree(w) > 0) {
      std::size_t r = region[emb.face(w, emb.rotation(w)[0])];
      for (std::size_t j = 0; j < q; ++j) {
        if (wedge_region[j] == r) slot = j;
      }
    }
    if (slot == kNone) {
      out.elsewhere.push_back(g.id(w));
    } else {
      out.wedges[slot].push_back(g.id(w));
    }
  }
  out.paths = std::move(kept);
  return out;
}

VertexSet inner(const Path& p) {
  if (p.size() < 2) return {};
  return make_set(VertexSet(p.begin() + 1, p.end() - 1));
}

VertexSet set_union(const VertexSet& a, const VertexSet& b) {
  VertexSet out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(),
                 std::back_inserter(out));
  return out;
}

bool connected_within(const GalacticGraph& g, const VertexSet& s) {
  if (s.empty()) return true;
  auto comps = connected_components(induced_subgraph(g, s));
  return comps.size() == 1;
}

// Family made of the `len` paths starting at `start` in cyclic order.
ConsecutivePathFamily family_from(const GalacticGraph& g,
                                  const CyclicFamily& cyc, std::size_t start,
                                  std::size_t len) {
  const std::size_t q = cyc.paths.size();
  ConsecutivePathFamily fam;
  fam.u = cyc.u;
  fam.v = cyc.v;
  for (std::size_t i = 0; i < len; ++i) {
    fam.paths.push_back(cyc.paths[(start + i) % q]);
  }
  for (std::size_t i = 0; i + 1 < len; ++i) {
    const VertexSet& in = cyc.wedges[(start + i) % q];
    fam.interiors.push_back(in);
    VertexSet body = set_union(inner(fam.paths[i]), inner(fam.paths[i + 1]));
    body = set_union(body, in);
    fam.consecutive.push_back(connected_within(g, body) ? 1 : 0);
    fam.sections.push_back(set_union(body, make_set({cyc.u, cyc.v})));
  }
  VertexSet rest = cyc.elsewhere;
  for (std::size_t i = len; i < q; ++i) {
    rest = set_union(rest, inner(cyc.paths[(start + i) % q]));
  }
  for (std::size_t i = len - 1; i < q; ++i) {
    rest = set_union(rest, cyc.wedges[(start + i) % q]);
  }
  fam.outside = std::move(rest);
  return fam;
}

std::size_t widest_gap(const CyclicFamily& cyc) {
  std::size_t best = 0;
  for (std::size_t j = 1; j < cyc.wedges.size(); ++j) {
    if (cyc.wedges[j].size() > cyc.wedges[best].size()) best = j;
  }
  return best;
}

// Vertices of G_{P_a,P_b} - {u,v} for 0-based a < b, strictly inside when
// `strict` (no vertex of P_a or P_b).
VertexSet region_between(const ConsecutivePathFamily& fam, std::size_t a,
                         std::size_t b, bool strict) {
  VertexSet out;
  for (std::size_t i = a; i <= b; ++i) {
    if (strict && (i == a || i == b)) continue;
    out = set_union(out, inner(fam.paths[i]));
  }
  for (std::size_t i = a; i < b; ++i) out = set_union(out, fam.interiors[i]);
  return out;
}

// Picks the crossing-path edge inside G^o_{P_3,P_{q-2}}, preferring one
// whose endpoints avoid N(u) Δ N(v). Returns an empty pair when none.
std::pair<VertexId, VertexId> pick_edge(const GalacticGraph& g,
                                        const ConsecutivePathFamily& fam,
                                        const Path& cross) {
  const std::size_t q = fam.size();
  if (q < 6) return {0, 0};
  VertexSet zone = region_between(fam, 2, q - 3, true);
  std::vector<char> in_zone = mask_of(g, zone);
  auto asym = [&](VertexId w) {
    return g.adjacent_ids(w, fam.u) != g.adjacent_ids(w, fam.v);
  };
  std::pair<VertexId, VertexId> fallback{0, 0};
  for (std::size_t i = 0; i + 1 < cross.size(); ++i) {
    VertexId a = cross[i];
    VertexId b = cross[i + 1];
    if (!in_zone[g.index(a)] || !in_zone[g.index(b)]) continue;
    if (!asym(a) && !asym(b)) return {a, b};
    if (fallback.first == 0) fallback = {a, b};
  }
  return fallback;
}

// Maximal runs of token-free, hole-free consecutive paths around u.
std::vector<ConsecutivePathFamily> clean_runs(const Instance& inst,
                                              const CyclicFamily& cyc) {
  const GalacticGraph& g = inst.graph;
  std::vector<char> tokens = token_mask(inst);
  auto clean = [&](const VertexSet& s) {
    return std::all_of(s.begin(), s.end(), [&](VertexId w) {
      std::size_t i = g.index(w);
      return !tokens[i] && g.is_planet(i);
    });
  };
  const std::size_t q = cyc.paths.size();
  std::vector<char> path_ok(q), wedge_ok(q);
  for (std::size_t j = 0; j < q; ++j) {
    path_ok[j] = clean(inner(cyc.paths[j]));
  }
  for (std::size_t j = 0; j < q; ++j) {
    VertexSet body = set_union(inner(cyc.paths[j]),
                               inner(cyc.paths[(j + 1) % q]));
    body = set_union(body, cyc.wedges[j]);
    wedge_ok[j] = clean(cyc.wedges[j]) && connected_within(g, body);
  }
  std::vector<ConsecutivePathFamily> runs;
  bool all = std::all_of(path_ok.begin(), path_ok.end(),
                         [](char c) { return c; }) &&
             std::all_of(wedge_ok.begin(), wedge_ok.end(),
                         [](char c) { return c; });
  if (all) {
    runs.push_back(family_from(g, cyc, (widest_gap(cyc) + 1) % q, q));
    return runs;
  }
  // Start right after a break so that no run wraps past its own start.
  std::size_t start = 0;
  for (std::size_t j = 0; j < q; ++j) {
    if (!path_ok[j]) {
      start = (j + 1) % q;
      break;
    }
    if (!wedge_ok[j]) {
      start = (j + 1) % q;
      break;
    }
  }
  std::size_t i = 0;
  while (i < q) {
    std::size_t j = (start + i) % q;
    if (!path_ok[j]) {
      ++i;
      continue;
    }
    std::size_t len = 1;
    while (i + len < q && wedge_ok[(start + i + len - 1) % q] &&
           path_ok[(start + i + len) % q]) {
      ++len;
    }
    if (len >= 2) runs.push_back(family_from(g, cyc, j, len));
    i += len;
  }
  return runs;
}

std::size_t sections_missing(const GalacticGraph& g,
                             const ConsecutivePathFamily& fam, VertexId a,
                             VertexId other) {
  std::size_t count = 0;
  for (const VertexSet& s : fam.sections) {
    for (VertexId w : s) {
      if (w == a || w == other) continue;
      if (!g.adjacent_ids(a, w)) {
        ++count;
        break;
      }
    }
  }
  return count;
}

bool complete_to(const GalacticGraph& g, const ConsecutivePathFamily& fam,
                 VertexId a, VertexId other) {
  for (const VertexSet& s : fam.sections) {
    for (VertexId w : s) {
      if (w != a && w != other && !g.adjacent_ids(a, w)) return false;
    }
  }
  return true;
}

enum class PathRule { kP1, kP2 };

RuleOutcome path_rule(const Instance& inst, const Embedding& emb,
                      const PlanarThresholds& th, PathRule which) {
  const GalacticGraph& g = inst.graph;
  if (inst.k < 2) return NotApplicable{"needs k >= 2"};
  if (emb.size() != g.size()) {
    throw bad_embedding("embedding does not match the graph");
  }
  const std::uint64_t need =
      which == PathRule::kP1 ? th.p1_paths : th.p2_paths;
  for (std::size_t ui = 0; ui < g.size(); ++ui) {
    if (g.degree(ui) < need) continue;
    for (std::size_t vi = ui + 1; vi < g.size(); ++vi) {
      if (g.degree(vi) < need) continue;
      VertexId u = g.id(ui);
      VertexId v = g.id(vi);
      std::vector<Path> paths = max_disjoint_paths(g, u, v);
      std::size_t long_paths = std::count_if(
          paths.begin(), paths.end(),
          [](const Path& p) { return p.size() > 2; });
      if (long_paths < need || long_paths < 2) continue;
      CyclicFamily cyc = cyclic_family(g, emb, u, v, paths);
      for (const ConsecutivePathFamily& fam : clean_runs(inst, cyc)) {
        if (fam.size() < need || fam.size() < 6) continue;
        if (which == PathRule::kP1) {
          if (sections_missing(g, fam, u, v) < th.p1_sections ||
              sections_missing(g, fam, v, u) < th.p1_sections) {
            continue;
          }
        } else if (!complete_to(g, fam, u, v) && !complete_to(g, fam, v, u)) {
          continue;
        }
        std::optional<Path> cross = crossing_path(g, fam);
        if (!cross) continue;
        auto [a, b] = pick_edge(g, fam, *cross);
        if (a == 0) continue;
        Rewrite rw;
        rw.merges.push_back(
            Merge{make_set({a, b}), fresh_id(g), VertexKind::kPlanet});
        return make_reduced(inst, which == PathRule::kP1 ? "p1" : "p2",
                            {u, v, a, b}, rw, th.sound);
      }
    }
  }
  return NotApplicable{which == PathRule::kP1
                           ? "no family with enough sections"
                           : "no family dominated by an endpoint"};
}

// Spine x_1..x_r: a shortest x_1-x_r path through K.
Path spine_through(const GalacticGraph& g, const std::vector<char>& in_k,
                   std::size_t a, std::size_t b) {
  std::vector<std::size_t> parent(g.size(), kNone);
  std::vector<char> seen(g.size(), 0);
  std::deque<std::size_t> queue;
  for (auto w : g.neighbors(a)) {
    if (in_k[w]) {
      seen[w] = 1;
      parent[w] = a;
      queue.push_back(w);
    }
  }
  while (!queue.empty()) {
    std::size_t w = queue.front();
    queue.pop_front();
    if (g.adjacent(w, b)) {
      Path p{g.id(b)};
      for (std::size_t c = w; c != a; c = parent[c]) p.push_back(g.id(c));
      p.push_back(g.id(a));
      std::reverse(p.begin(), p.end());
      return p;
    }
    for (auto z : g.neighbors(w)) {
      if (in_k[z] && !seen[z]) {
        seen[z] = 1;
        parent[z] = w;
        queue.push_back(z);
      }
    }
  }
  return {};
}

std::vector<Fan> fans_at(const Instance& inst, const std::vector<char>& tokens,
                         std::size_t x, std::size_t min_r) {
  const GalacticGraph& g = inst.graph;
  std::vector<Fan> out;
  if (!g.is_planet(x) || tokens[x]) return out;
  std::vector<char> near(g.size(), 0);
  for (auto w : g.neighbors(x)) near[w] = 1;
  std::vector<char> closed(g.size(), 0);
  for (auto w : g.neighbors(x)) {
    bool ok = true;
    for (auto z : g.neighbors(w)) {
      if (z != x && !near[z]) ok = false;
    }
    closed[w] = ok;
  }
  std::vector<char> done(g.size(), 0);
  for (auto s : g.neighbors(x)) {
    if (!closed[s] || done[s]) continue;
    std::vector<std::size_t> comp{s};
    done[s] = 1;
    for (std::size_t h = 0; h < comp.size(); ++h) {
      for (auto z : g.neighbors(comp[h])) {
        if (closed[z] && !done[z]) {
          done[z] = 1;
          comp.push_back(z);
        }
      }
    }
    std::vector<char> in_k(g.size(), 0);
    for (auto w : comp) in_k[w] = 1;
    std::set<std::size_t> boundary;
    for (auto w : comp) {
      for (auto z : g.neighbors(w)) {
        if (z != x && !in_k[z]) boundary.insert(z);
      }
    }
    if (boundary.size() != 2) continue;
    std::size_t a = *boundary.begin();
    std::size_t b = *boundary.rbegin();
    if (g.adjacent(a, b)) continue;
    bool clean = g.is_planet(a) && g.is_planet(b) && !tokens[a] && !tokens[b];
    for (auto w : comp) clean = clean && g.is_planet(w) && !tokens[w];
    if (!clean) continue;
    Path spine = spine_through(g, in_k, a, b);
    if (spine.size() < min_r) continue;
    VertexSet k_ids;
    for (auto w : comp) k_ids.push_back(g.id(w));
    k_ids = make_set(std::move(k_ids));
    VertexSet on_spine = make_set(Path(spine.begin(), spine.end()));
    VertexSet interior;
    std::set_difference(k_ids.begin(), k_ids.end(), on_spine.begin(),
                        on_spine.end(), std::back_inserter(interior));
    out.push_back(Fan{g.id(x), std::move(spine), std::move(interior)});
  }
  std::sort(out.begin(), out.end(), [](const Fan& p, const Fan& q) {
    return p.spine < q.spine;
  });
  return out;
}

// Adds a path of `len` fresh planets between a and b, complete to x.
void add_fresh_path(const GalacticGraph& g, Rewrite& rw, VertexId x,
                    VertexId a, VertexId b, std::size_t len) {
  VertexId next = fresh_id(g);
  VertexId prev = a;
  for (std::size_t i = 0; i < len; ++i, ++next) {
    rw.additions.emplace_back(next, VertexKind::kPlanet);
    rw.new_edges.emplace_back(prev, next);
    rw.new_edges.emplace_back(x, next);
    prev = next;
  }
  rw.new_edges.emplace_back(prev, b);
}

std::optional<Reduced> p3_at(const Instance& inst, const Fan& fan,
                             const PlanarThresholds& th) {
  const std::size_t r = fan.spine.size();
  const std::size_t len = 3 * static_cast<std::size_t>(inst.k);
  const std::size_t k_size = r - 2 + fan.interior.size();
  if (inst.k < 1 || r < th.fan || r < len + 2 || k_size <= len) {
    return std::nullopt;
  }
  Rewrite rw;
  rw.removals = make_set(set_union(
      fan.interior, make_set(Path(fan.spine.begin() + 1, fan.spine.end() - 1))));
  add_fresh_path(inst.graph, rw, fan.center, fan.spine.front(),
                 fan.spine.back(), len);
  return make_reduced(inst, "p3",
                      {fan.center, fan.spine.front(), fan.spine.back()}, rw,
                      th.sound);
}

// P4 on a fan whose interior is made of pendants of inner spine vertices.
std::optional<Reduced> p4_at(const Instance& inst, const Embedding& emb,
                             const Fan& fan, const PlanarThresholds& th,
                             std::string* why) {
  const GalacticGraph& g = inst.graph;
  const std::size_t r = fan.spine.size();
  const std::size_t len = 3 * static_cast<std::size_t>(inst.k);
  if (inst.k < 1 || r < th.comb || r < len + 2 || fan.interior.empty()) {
    return std::nullopt;
  }
  const std::size_t x = g.index(fan.center);
  std::vector<std::size_t> spine;
  for (VertexId s : fan.spine) spine.push_back(g.index(s));
  std::vector<std::size_t> where(g.size(), kNone);
  for (std::size_t i = 0; i < r; ++i) where[spine[i]] = i;
  std::vector<std::size_t> pendants(r, 0);
  for (VertexId w : fan.interior) {
    std::size_t wi = g.index(w);
    if (g.degree(wi) != 2) return std::nullopt;
    std::size_t host = kNone;
    for (auto z : g.neighbors(wi)) {
      if (z != x) host = z;
    }
    if (host == kNone || where[host] == kNone || where[host] == 0 ||
        where[host] == r - 1) {
      return std::nullopt;
    }
    ++pendants[where[host]];
  }
  if (pendants[1] == 0 || pendants[r - 2] == 0) return std::nullopt;

  // Side of each neighbor of an inner spine vertex: true when it sits in
  // the clockwise arc from x_{i+1} to x_{i-1}.
  auto far_arc = [&](std::size_t i, std::size_t z) {
    std::size_t p = spine[i];
    std::size_t deg = emb.rotation(p).size();
    std::size_t from = emb.position(p, spine[i + 1]);
    std::size_t to = emb.position(p, spine[i - 1]);
    std::size_t at = emb.position(p, z);
    std::size_t span = (to + deg - from) % deg;
    std::size_t off = (at + deg - from) % deg;
    return off > 0 && off < span;
  };
  bool x_side = far_arc(1, x);
  for (std::size_t i = 2; i + 1 < r; ++i) {
    if (far_arc(i, x) != x_side) {
      if (why) *why = "x meets the spine from both sides";
      return std::nullopt;
    }
  }
  std::vector<std::size_t> b_side;
  for (std::size_t i = 1; i + 1 < r; ++i) {
    for (auto z : g.neighbors(spine[i])) {
      if (z == x || where[z] != kNone) continue;
      if (far_arc(i, z) != x_side) {
        b_side.push_back(i);
        break;
      }
    }
  }
  if (b_side.size() < 2) {
    if (why) *why = "fewer than two spine vertices see the B side";
    return std::nullopt;
  }
  const std::size_t i1 = b_side.front();
  const std::size_t id = b_side.back();
  const std::size_t removed = id - i1 - 1;
  if (removed == 0) return std::nullopt;
  const std::size_t m = std::min(len, removed);
  if (r - 2 - removed + m < len) return std::nullopt;
  Rewrite rw;
  rw.removals = make_set(set_union(
      fan.interior,
      make_set(Path(fan.spine.begin() + i1 + 1, fan.spine.begin() + id))));
  add_fresh_path(g, rw, fan.center, fan.spine[i1], fan.spine[id], m);
  return make_reduced(inst, "p4",
                      {fan.center, fan.spine[i1], fan.spine[id]}, rw,
                      th.sound);
}

std::uint64_t saturating_square(std::uint64_t a) {
  if (a != 0 && a > std::numeric_limits<std::uint64_t>::max() / a) {
    return std::numeric_limits<std::uint64_t>::max();
  }
  return a * a;
}

}  // namespace

Embedding::Embedding(const GalacticGraph& g, const RotationSystem& rs) {
  const std::size_t n = g.size();
  rot_.resize(n);
  pos_.resize(n);
  offset_.assign(n + 1, 0);
  for (const auto& [id, order] : rs.order) {
    if (!g.contains(id)) {
      throw bad_embedding("rotation names unknown vertex " +
                          std::to_string(id));
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    const std::vector<VertexId>* order = rs.at(g.id(i));
    if (order == nullptr) {
      if (g.degree(i) > 0) {
        throw bad_embedding("rotation missing for vertex " +
                            std::to_string(g.id(i)));
      }
      continue;
    }
    for (VertexId w : *order) {
      auto j = g.find(w);
      if (!j) {
        throw bad_embedding("rotation names unknown vertex " +
                            std::to_string(w));
      }
      rot_[i].push_back(static_cast<std::uint32_t>(*j));
    }
    std::vector<std::uint32_t> sorted = rot_[i];
    std::sort(sorted.begin(), sorted.end());
    auto nb = g.neighbors(i);
    if (!std::equal(sorted.begin(), sorted.end(), nb.begin(), nb.end())) {
      throw bad_embedding("rotation of vertex " + std::to_string(g.id(i)) +
                          " does not list its neighbors");
    }
    for (std::size_t p = 0; p < rot_[i].size(); ++p) {
      pos_[i].emplace_back(rot_[i][p], static_cast<std::uint32_t>(p));
    }
    std::sort(pos_[i].begin(), pos_[i].end());
    offset_[i + 1] = rot_[i].size();
  }
  std::partial_sum(offset_.begin(), offset_.end(), offset_.begin());
  face_.assign(offset_[n], kNone);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t p = 0; p < rot_[i].size(); ++p) {
      if (face_[offset_[i] + p] != kNone) continue;
      std::size_t a = i;
      std::size_t pa = p;
      while (face_[offset_[a] + pa] == kNone) {
        face_[offset_[a] + pa] = num_faces_;
        std::size_t b = rot_[a][pa];
        std::size_t back = position(b, a);
        pa = (back + 1) % rot_[b].size();
        a = b;
      }
      ++num_faces_;
    }
  }
  std::size_t isolated = 0;
  for (std::size_t i = 0; i < n; ++i) isolated += g.degree(i) == 0;
  const std::size_t comps = connected_components(g).size();
  if (n + num_faces_ + isolated != g.num_edges() + 2 * comps) {
    throw bad_embedding("rotation system is not planar (Euler check)");
  }
}

std::size_t Embedding::position(std::size_t i, std::size_t j) const {
  const auto& p = pos_[i];
  auto it = std::lower_bound(
      p.begin(), p.end(), std::make_pair(static_cast<std::uint32_t>(j), 0u));
  if (it == p.end() || it->first != j) {
    throw Error(ErrorCode::kInvalidArgument, "not an edge of the embedding");
  }
  return it->second;
}

std::size_t Embedding::face(std::size_t i, std::size_t j) const {
  return face_[offset_[i] + position(i, j)];
}

std::vector<std::size_t> Embedding::regions(
    const std::vector<std::pair<std::size_t, std::size_t>>& walls) const {
  std::set<std::pair<std::size_t, std::size_t>> wall_set;
  for (auto [a, b] : walls) wall_set.emplace(std::min(a, b), std::max(a, b));
  std::vector<std::size_t> parent(num_faces_);
  std::iota(parent.begin(), parent.end(), 0);
  for (std::size_t i = 0; i < rot_.size(); ++i) {
    for (std::uint32_t j : rot_[i]) {
      if (i > j || wall_set.count({i, j})) continue;
      std::size_t f = find_root(parent, face(i, j));
      std::size_t h = find_root(parent, face(j, i));
      if (f != h) parent[std::max(f, h)] = std::min(f, h);
    }
  }
  for (std::size_t f = 0; f < num_faces_; ++f) parent[f] = find_root(parent, f);
  return parent;
}

RotationSystem Embedding::to_rotation_system(const GalacticGraph& g) const {
  RotationSystem rs;
  for (std::size_t i = 0; i < rot_.size(); ++i) {
    std::vector<VertexId> order;
    for (std::uint32_t j : rot_[i]) order.push_back(g.id(j));
    rs.order.emplace_back(g.id(i), std::move(order));
  }
  return rs;
}

bool is_planar(const GalacticGraph& g) { return boyer_myrvold(g).has_value(); }

Embedding embedding_of(const Instance& inst) {
  if (inst.rotation) return Embedding(inst.graph, *inst.rotation);
  std::optional<RotationSystem> rs = boyer_myrvold(inst.graph);
  if (!rs) throw bad_embedding("graph is not planar");
  return Embedding(inst.graph, *rs);
}

std::vector<Path> max_disjoint_paths(const GalacticGraph& g, VertexId u,
                                     VertexId v) {
  if (u == v) throw Error(ErrorCode::kInvalidArgument, "u equals v");
  const std::size_t ui = g.index(u);
  const std::size_t vi = g.index(v);
  const std::size_t n = g.size();
  // Node 2w is w_in, 2w+1 is w_out; arcs come in forward/reverse pairs.
  struct Arc {
    std::size_t to;
    int cap;
  };
  std::vector<Arc> arcs;
  std::vector<std::vector<std::size_t>> out(2 * n);
  auto add = [&](std::size_t a, std::size_t b, int cap) {
    out[a].push_back(arcs.size());
    arcs.push_back({b, cap});
    out[b].push_back(arcs.size());
    arcs.push_back({a, 0});
  };
  const int big = static_cast<int>(n) + 1;
  for (std::size_t w = 0; w < n; ++w) {
    add(2 * w, 2 * w + 1, (w == ui || w == vi) ? big : 1);
  }
  for (std::size_t a = 0; a < n; ++a) {
    for (auto b : g.neighbors(a)) {
      if (b == ui || a == vi) continue;
      add(2 * a + 1, 2 * b, 1);
    }
  }
  const std::size_t source = 2 * ui + 1;
  const std::size_t sink = 2 * vi;
  std::size_t flow = 0;
  while (true) {
    std::vector<std::size_t> via(2 * n, kNone);
    std::vector<char> seen(2 * n, 0);
    std::deque<std::size_t> queue{source};
    seen[source] = 1;
    while (!queue.empty() && !seen[sink]) {
      std::size_t a = queue.front();
      queue.pop_front();
      for (std::size_t e : out[a]) {
        if (arcs[e].cap > 0 && !seen[arcs[e].to]) {
          seen[arcs[e].to] = 1;
          via[arcs[e].to] = e;
          queue.push_back(arcs[e].to);
        }
      }
    }
    if (!seen[sink]) break;
    for (std::size_t b = sink; b != source;) {
      std::size_t e = via[b];
      arcs[e].cap -= 1;
      arcs[e ^ 1].cap += 1;
      b = arcs[e ^ 1].to;
    }
    ++flow;
  }
  // Saturated original arcs out of w_out carry the paths; the forward arc of
  // a pair has an even index.
  std::vector<Path> paths;
  for (std::size_t t = 0; t < flow; ++t) {
    Path p{u};
    std::size_t at = ui;
    while (at != vi) {
      std::size_t next = kNone;
      for (std::size_t e : out[2 * at + 1]) {
        if (e % 2 == 0 && arcs[e].cap == 0 && arcs[e].to % 2 == 0 &&
            arcs[e].to != 2 * at) {
          next = e;
          break;
        }
      }
      arcs[next].cap = -1;  // Consumed.
      at = arcs[next].to / 2;
      p.push_back(g.id(at));
    }
    paths.push_back(std::move(p));
  }
  std::sort(paths.begin(), paths.end());
  return paths;
}

ConsecutivePathFamily order_consecutive(const GalacticGraph& g,
                                        const Embedding& emb, VertexId u,
                                        VertexId v, std::vector<Path> paths) {
  CyclicFamily cyc = cyclic_family(g, emb, u, v, std::move(paths));
  const std::size_t q = cyc.paths.size();
  return family_from(g, cyc, (widest_gap(cyc) + 1) % q, q);
}

ConsecutivePathFamily consecutive_subfamily(const ConsecutivePathFamily& fam) {
  std::size_t best_start = 0;
  std::size_t best_len = 0;
  for (std::size_t i = 0; i < fam.consecutive.size();) {
    if (!fam.consecutive[i]) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < fam.consecutive.size() && fam.consecutive[j]) ++j;
    if (j - i > best_len) {
      best_start = i;
      best_len = j - i;
    }
    i = j;
  }
  ConsecutivePathFamily out;
  out.u = fam.u;
  out.v = fam.v;
  out.outside = fam.outside;
  const std::size_t last = best_start + best_len;  // Index of the last path.
  for (std::size_t i = 0; i < fam.size(); ++i) {
    if (i >= best_start && i <= last) {
      out.paths.push_back(fam.paths[i]);
    } else {
      out.outside = set_union(out.outside, inner(fam.paths[i]));
    }
  }
  for (std::size_t i = 0; i < fam.interiors.size(); ++i) {
    if (i >= best_start && i < last) {
      out.interiors.push_back(fam.interiors[i]);
      out.sections.push_back(fam.sections[i]);
      out.consecutive.push_back(fam.consecutive[i]);
    } else {
      out.outside = set_union(out.outside, fam.interiors[i]);
    }
  }
  return out;
}

std::optional<Path> crossing_path(const GalacticGraph& g,
                                  const ConsecutivePathFamily& fam) {
  const std::size_t q = fam.size();
  if (q < 3) {
    throw Error(ErrorCode::kInvalidArgument,
                "a crossing path needs at least three paths");
  }
  std::vector<char> allowed = mask_of(g, region_between(fam, 0, q - 1, true));
  std::vector<char> target = mask_of(g, inner(fam.paths.back()));
  std::vector<std::size_t> parent(g.size(), kNone);
  std::vector<char> seen(g.size(), 0);
  std::deque<std::size_t> queue;
  for (VertexId s : inner(fam.paths.front())) {
    std::size_t i = g.index(s);
    seen[i] = 1;
    queue.push_back(i);
  }
  while (!queue.empty()) {
    std::size_t a = queue.front();
    queue.pop_front();
    for (auto b : g.neighbors(a)) {
      if (seen[b] || !(allowed[b] || target[b])) continue;
      seen[b] = 1;
      parent[b] = a;
      if (target[b]) {
        Path p;
        for (std::size_t c = b; c != kNone; c = parent[c]) p.push_back(g.id(c));
        std::reverse(p.begin(), p.end());
        return p;
      }
      queue.push_back(b);
    }
  }
  return std::nullopt;
}

PlanarThresholds full_thresholds(Weight k) {
  PlanarThresholds th;
  const std::uint64_t kk = k;
  th.p1_paths = 10 * kk + 21;
  th.p1_sections = 5 * kk + 10;
  th.p2_paths = saturating_square(10 * kk + 21);
  th.fan = 3 * kk + 2;
  th.comb = saturating_square(3 * kk + 2);
  // (l+1)^(18(3k+2)^2 k l^3) with l >= 1 overflows for every k >= 1.
  th.high_degree = k == 0 ? 1 : std::numeric_limits<std::uint64_t>::max();
  th.sound = true;
  return th;
}

PlanarThresholds desk_thresholds(Weight k) {
  PlanarThresholds th = full_thresholds(k);
  th.p1_paths = 7;
  th.p1_sections = 2;
  th.p2_paths = 8;
  th.comb = 8;
  th.high_degree = 5;
  th.sound = false;
  return th;
}

RuleOutcome rule_p1(const Instance& inst, const Embedding& emb,
                    const PlanarThresholds& th) {
  return path_rule(inst, emb, th, PathRule::kP1);
}

RuleOutcome rule_p1(const Instance& inst) {
  return rule_p1(inst, embedding_of(inst), full_thresholds(inst.k));
}

RuleOutcome rule_p2(const Instance& inst, const Embedding& emb,
                    const PlanarThresholds& th) {
  return path_rule(inst, emb, th, PathRule::kP2);
}

RuleOutcome rule_p2(const Instance& inst) {
  return rule_p2(inst, embedding_of(inst), full_thresholds(inst.k));
}

std::vector<Fan> find_fans(const Instance& inst, std::size_t min_r) {
  std::vector<char> tokens = token_mask(inst);
  std::vector<Fan> out;
  for (std::size_t x = 0; x < inst.graph.size(); ++x) {
    for (Fan& f : fans_at(inst, tokens, x, min_r)) out.push_back(std::move(f));
  }
  return out;
}

RuleOutcome rule_p3(const Instance& inst, const Embedding& emb,
                    const PlanarThresholds& th) {
  if (emb.size() != inst.graph.size()) {
    throw bad_embedding("embedding does not match the graph");
  }
  for (const Fan& fan : find_fans(inst, std::max<std::uint64_t>(th.fan, 3))) {
    if (auto red = p3_at(inst, fan, th)) return std::move(*red);
  }
  return NotApplicable{"no reducible fan"};
}

RuleOutcome rule_p3(const Instance& inst) {
  return rule_p3(inst, embedding_of(inst), full_thresholds(inst.k));
}

RuleOutcome rule_p4(const Instance& inst, const Embedding& emb,
                    const PlanarThresholds& th) {
  if (emb.size() != inst.graph.size()) {
    throw bad_embedding("embedding does not match the graph");
  }
  std::string why = "no one-sided complete comb";
  for (const Fan& fan : find_fans(inst, std::max<std::uint64_t>(th.comb, 4))) {
    if (auto red = p4_at(inst, emb, fan, th, &why)) return std::move(*red);
  }
  return NotApplicable{why};
}

RuleOutcome rule_p4(const Instance& inst) {
  return rule_p4(inst, embedding_of(inst), full_thresholds(inst.k));
}

Comb extract_subdivided_comb(const GalacticGraph& tree, const VertexSet& marks,
                             std::size_t degree_bound) {
  const std::size_t n = tree.size();
  Comb comb;
  if (n == 0) return comb;
  if (tree.num_edges() != n - 1 || !is_connected(tree)) {
    throw Error(ErrorCode::kInvalidArgument, "input is not a tree");
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (tree.degree(i) > degree_bound) {
      throw Error(ErrorCode::kInvalidArgument,
                  "vertex " + std::to_string(tree.id(i)) +
                      " exceeds the degree bound");
    }
  }
  std::vector<char> marked(n, 0);
  for (VertexId m : marks) marked[tree.index(m)] = 1;
  std::size_t f = 0;
  while (f < n && tree.degree(f) > 1) ++f;
  // Root at f; order lists parents before children.
  std::vector<std::size_t> parent(n, kNone), order{f};
  std::vector<char> seen(n, 0);
  seen[f] = 1;
  for (std::size_t h = 0; h < order.size(); ++h) {
    for (auto c : tree.neighbors(order[h])) {
      if (!seen[c]) {
        seen[c] = 1;
        parent[c] = order[h];
        order.push_back(c);
      }
    }
  }
  std::vector<std::size_t> weight(n, 0);
  for (std::size_t h = n; h-- > 0;) {
    std::size_t w = order[h];
    weight[w] += marked[w];
    if (parent[w] != kNone) weight[parent[w]] += weight[w];
  }
  std::vector<char> on_spine(n, 0);
  std::vector<std::size_t> spine{f};
  on_spine[f] = 1;
  for (std::size_t y = f;;) {
    std::size_t best = kNone;
    for (auto c : tree.neighbors(y)) {
      if (c == parent[y]) continue;
      if (best == kNone || weight[c] > weight[best]) best = c;
    }
    if (best == kNone) break;
    spine.push_back(best);
    on_spine[best] = 1;
    y = best;
  }
  for (std::size_t y : spine) {
    comb.spine.push_back(tree.id(y));
    if (marked[y]) comb.marked.push_back(tree.id(y));
    // Nearest mark hanging off y outside the spine.
    std::vector<std::size_t> from(n, kNone);
    std::deque<std::size_t> queue;
    for (auto c : tree.neighbors(y)) {
      if (!on_spine[c]) {
        from[c] = y;
        queue.push_back(c);
      }
    }
    while (!queue.empty()) {
      std::size_t w = queue.front();
      queue.pop_front();
      if (marked[w]) {
        Path tooth;
        for (std::size_t c = w; c != y; c = from[c]) tooth.push_back(tree.id(c));
        tooth.push_back(tree.id(y));
        std::reverse(tooth.begin(), tooth.end());
        comb.marked.push_back(tree.id(w));
        comb.teeth.push_back(std::move(tooth));
        break;
      }
      for (auto c : tree.neighbors(w)) {
        if (c != from[w] && !on_spine[c]) {
          from[c] = w;
          queue.push_back(c);
        }
      }
    }
  }
  comb.marked = make_set(std::move(comb.marked));
  return comb;
}

GalacticGraph steiner_tree(const GalacticGraph& g, VertexId v,
                           const VertexSet& component) {
  std::vector<char> allowed = mask_of(g, component);
  VertexSet terminals;
  for (auto w : g.neighbors(g.index(v))) {
    if (allowed[w]) terminals.push_back(g.id(w));
  }
  terminals = make_set(std::move(terminals));
  if (terminals.empty()) return GalacticGraph();
  std::size_t root = g.index(terminals.front());
  auto [dist, parent] = bfs_tree(g, root, allowed);
  std::set<VertexId> keep{g.id(root)};
  std::set<std::pair<VertexId, VertexId>> edges;
  for (VertexId t : terminals) {
    for (std::size_t c = g.index(t); static_cast<int>(c) != -1 && c != root;) {
      std::size_t p = static_cast<std::size_t>(parent[c]);
      keep.insert(g.id(c));
      edges.emplace(std::min(g.id(c), g.id(p)), std::max(g.id(c), g.id(p)));
      c = p;
    }
  }
  std::vector<std::pair<VertexId, VertexKind>> verts;
  for (VertexId w : keep) verts.emplace_back(w, g.kind_of(w));
  return GalacticGraph(std::move(verts),
                       std::vector<std::pair<VertexId, VertexId>>(
                           edges.begin(), edges.end()));
}

RuleOutcome reduce_high_degree(const Instance& inst, const Embedding& emb,
                               const PlanarThresholds& th) {
  const GalacticGraph& g = inst.graph;
  if (emb.size() != g.size()) {
    throw bad_embedding("embedding does not match the graph");
  }
  std::vector<std::pair<std::size_t, std::size_t>> by_degree;
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (!g.is_planet(i)) continue;
    std::size_t d = 0;
    for (auto w : g.neighbors(i)) d += g.is_planet(w);
    if (d > th.high_degree) by_degree.emplace_back(d, i);
  }
  if (by_degree.empty()) return NotApplicable{"planetary degree below bound"};
  std::sort(by_degree.begin(), by_degree.end(), [](auto a, auto b) {
    return a.first != b.first ? a.first > b.first : a.second < b.second;
  });
  std::vector<char> tokens = token_mask(inst);
  std::size_t best_marks = 0;
  for (auto [d, x] : by_degree) {
    for (const VertexSet& comp : connected_components(g, {g.id(x)})) {
      GalacticGraph tree = steiner_tree(g, g.id(x), comp);
      if (tree.size() == 0) continue;
      std::size_t max_deg = 1;
      for (std::size_t i = 0; i < tree.size(); ++i) {
        max_deg = std::max(max_deg, tree.degree(i));
      }
      VertexSet marks;
      for (auto w : g.neighbors(x)) {
        if (tree.contains(g.id(w))) marks.push_back(g.id(w));
      }
      Comb comb = extract_subdivided_comb(tree, make_set(std::move(marks)),
                                          max_deg);
      best_marks = std::max(best_marks, comb.marked.size());
    }
    for (const Fan& fan : fans_at(inst, tokens, x, 3)) {
      if (auto red = p3_at(inst, fan, th)) return std::move(*red);
    }
    for (const Fan& fan : fans_at(inst, tokens, x, 4)) {
      if (auto red = p4_at(inst, emb, fan, th, nullptr)) {
        return std::move(*red);
      }
    }
  }
  RuleOutcome p1 = rule_p1(inst, emb, th);
  if (applied(p1)) return p1;
  RuleOutcome p2 = rule_p2(inst, emb, th);
  if (applied(p2)) return p2;
  return NotApplicable{"no reducible structure (comb with " +
                       std::to_string(best_marks) + " marked rays)"};
}

std::vector<NamedRule> planar_rules(
    const std::optional<PlanarThresholds>& override_thresholds) {
  auto pick = [override_thresholds](const Instance& inst) {
    return override_thresholds ? *override_thresholds
                               : full_thresholds(inst.k);
  };
  using Fn = RuleOutcome (*)(const Instance&, const Embedding&,
                             const PlanarThresholds&);
  std::vector<NamedRule> rules;
  for (auto [id, fn] : {std::pair<const char*, Fn>{"p1", &rule_p1},
                        {"p2", &rule_p2},
                        {"p3", &rule_p3},
                        {"p4", &rule_p4}}) {
    rules.push_back(NamedRule{id, [pick, fn](const Instance& inst) {
                                return fn(inst, embedding_of(inst), pick(inst));
                              }});
  }
  return rules;
}

std::pair<Instance, ReductionTrace> planar_kernel(
    const Instance& inst,
    const std::optional<PlanarThresholds>& override_thresholds) {
  embedding_of(inst);
  std::vector<NamedRule> rules = basic_rules({"r1", "r2", "r3", "r4", "r5"});
  for (NamedRule& r : planar_rules(override_thresholds)) {
    rules.push_back(std::move(r));
  }
  return exhaust(inst, rules);
}

}  // namespace gts
