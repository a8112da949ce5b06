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

#include "gts/chordal.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "gts/graph_algo.hpp"
#include "gts/multicomponent.hpp"
#include "gts/rewrite.hpp"

namespace gts {

namespace {

std::string join_ids(const std::vector<VertexId>& v) {
  std::string out;
  for (VertexId x : v) {
    if (!out.empty()) out += ' ';
    out += std::to_string(x);
  }
  return out;
}

VertexSet set_union(const VertexSet& a, const VertexSet& b) {
  VertexSet out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(),
                 std::back_inserter(out));
  return out;
}

bool contains(const VertexSet& s, VertexId v) {
  return std::binary_search(s.begin(), s.end(), v);
}

bool is_clique(const GalacticGraph& g, const VertexSet& s) {
  for (std::size_t a = 0; a < s.size(); ++a) {
    for (std::size_t b = a + 1; b < s.size(); ++b) {
      if (!g.adjacent_ids(s[a], s[b])) return false;
    }
  }
  return true;
}

// Perfect elimination order by index (reverse MCS).
std::vector<std::size_t> peo_indices(const GalacticGraph& g) {
  const std::size_t n = g.size();
  std::vector<std::size_t> weight(n, 0);
  std::vector<char> done(n, 0);
  std::vector<std::size_t> order;
  order.reserve(n);
  for (std::size_t step = 0; step < n; ++step) {
    std::size_t best = n;
    for (std::size_t i = 0; i < n; ++i) {
      if (!done[i] && (best == n || weight[i] > weight[best])) best = i;
    }
    done[best] = 1;
    order.push_back(best);
    for (auto j : g.neighbors(best)) {
      if (!done[j]) ++weight[j];
    }
  }
  std::reverse(order.begin(), order.end());
  return order;
}

// Later neighbors of each vertex in the elimination order.
std::vector<std::vector<std::size_t>> later_neighbors(
    const GalacticGraph& g, const std::vector<std::size_t>& peo) {
  std::vector<std::size_t> pos(g.size());
  for (std::size_t i = 0; i < peo.size(); ++i) pos[peo[i]] = i;
  std::vector<std::vector<std::size_t>> later(g.size());
  for (std::size_t v = 0; v < g.size(); ++v) {
    for (auto w : g.neighbors(v)) {
      if (pos[w] > pos[v]) later[v].push_back(w);
    }
    std::sort(later[v].begin(), later[v].end(),
              [&](std::size_t a, std::size_t b) { return pos[a] < pos[b]; });
  }
  return later;
}

bool is_peo(const GalacticGraph& g, const std::vector<std::size_t>& peo) {
  auto later = later_neighbors(g, peo);
  for (std::size_t v = 0; v < g.size(); ++v) {
    if (later[v].size() < 2) continue;
    std::size_t parent = later[v].front();
    for (std::size_t i = 1; i < later[v].size(); ++i) {
      if (!g.adjacent(parent, later[v][i])) return false;
    }
  }
  return true;
}

void require_chordal(const GalacticGraph& g) {
  if (auto cycle = chordless_cycle(g)) throw NotChordalError(*cycle);
}

std::vector<std::size_t> bag_counts(const CliqueTree& t,
                                    const GalacticGraph& g) {
  std::vector<std::size_t> count(g.size(), 0);
  for (const VertexSet& bag : t.bags) {
    for (VertexId v : bag) ++count[g.index(v)];
  }
  return count;
}

// Vertices lying in exactly one bag, per bag.
std::vector<VertexSet> private_vertices(const CliqueTree& t,
                                        const GalacticGraph& g) {
  auto count = bag_counts(t, g);
  std::vector<VertexSet> out(t.size());
  for (std::size_t b = 0; b < t.size(); ++b) {
    for (VertexId v : t.bags[b]) {
      if (count[g.index(v)] == 1) out[b].push_back(v);
    }
  }
  return out;
}

// Union of the bags of `nodes`.
VertexSet vertices_of(const CliqueTree& t,
                      const std::vector<std::size_t>& nodes) {
  VertexSet out;
  for (std::size_t b : nodes) out = set_union(out, t.bags[b]);
  return out;
}

}  // namespace

NotChordalError::NotChordalError(std::vector<VertexId> cycle)
    : Error(ErrorCode::kNotChordal,
            "graph is not chordal; chordless cycle " + join_ids(cycle)),
      cycle_(std::move(cycle)) {}

std::vector<VertexId> mcs_order(const GalacticGraph& g) {
  auto peo = peo_indices(g);
  std::vector<VertexId> out;
  for (auto it = peo.rbegin(); it != peo.rend(); ++it) out.push_back(g.id(*it));
  return out;
}

bool is_chordal(const GalacticGraph& g) { return is_peo(g, peo_indices(g)); }

std::optional<std::vector<VertexId>> chordless_cycle(const GalacticGraph& g) {
  if (is_chordal(g)) return std::nullopt;
  // Around some v, two non-adjacent neighbors joined by a shortest path
  // avoiding the rest of N[v].
  std::optional<std::vector<VertexId>> best;
  for (std::size_t v = 0; v < g.size(); ++v) {
    auto nb = g.neighbors(v);
    std::vector<char> allowed(g.size(), 1);
    allowed[v] = 0;
    for (auto w : nb) allowed[w] = 0;
    for (std::size_t x = 0; x < nb.size(); ++x) {
      for (std::size_t y = x + 1; y < nb.size(); ++y) {
        std::size_t a = nb[x], b = nb[y];
        if (g.adjacent(a, b)) continue;
        allowed[b] = 1;
        auto path = shortest_path(g, a, b, allowed);
        allowed[b] = 0;
        if (path.empty()) continue;
        std::vector<VertexId> cycle{g.id(v)};
        for (auto i : path) cycle.push_back(g.id(i));
        if (!best || cycle.size() < best->size()) best = std::move(cycle);
      }
    }
    if (best) return best;
  }
  throw Error(ErrorCode::kInvalidArgument, "chordless cycle search failed");
}

std::size_t clique_number(const GalacticGraph& g) {
  auto peo = peo_indices(g);
  auto later = later_neighbors(g, peo);
  std::size_t best = 0;
  for (const auto& l : later) best = std::max(best, l.size() + 1);
  return g.size() == 0 ? 0 : best;
}

std::vector<std::vector<std::size_t>> CliqueTree::adjacency() const {
  std::vector<std::vector<std::size_t>> adj(bags.size());
  for (auto [a, b] : edges) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  for (auto& a : adj) std::sort(a.begin(), a.end());
  return adj;
}

std::size_t CliqueTree::width() const {
  std::size_t w = 0;
  for (const VertexSet& b : bags) w = std::max(w, b.size());
  return w == 0 ? 0 : w - 1;
}

std::vector<std::size_t> CliqueTree::bags_of(VertexId v) const {
  std::vector<std::size_t> out;
  for (std::size_t b = 0; b < bags.size(); ++b) {
    if (contains(bags[b], v)) out.push_back(b);
  }
  return out;
}

CliqueTree clique_tree(const GalacticGraph& g) {
  auto peo = peo_indices(g);
  if (!is_peo(g, peo)) require_chordal(g);
  auto later = later_neighbors(g, peo);
  std::vector<VertexSet> cliques;
  for (std::size_t v = 0; v < g.size(); ++v) {
    VertexSet c{g.id(v)};
    for (auto w : later[v]) c.push_back(g.id(w));
    cliques.push_back(make_set(c));
  }
  std::sort(cliques.begin(), cliques.end());
  cliques.erase(std::unique(cliques.begin(), cliques.end()), cliques.end());
  CliqueTree t;
  for (std::size_t i = 0; i < cliques.size(); ++i) {
    bool maximal = true;
    for (std::size_t j = 0; j < cliques.size() && maximal; ++j) {
      if (i != j && cliques[j].size() > cliques[i].size() &&
          std::includes(cliques[j].begin(), cliques[j].end(),
                        cliques[i].begin(), cliques[i].end())) {
        maximal = false;
      }
    }
    if (maximal) t.bags.push_back(cliques[i]);
  }
  // Kruskal on intersection sizes, heaviest first, then by index pair.
  struct Cand {
    std::size_t weight, a, b;
  };
  std::vector<Cand> cands;
  for (std::size_t a = 0; a < t.size(); ++a) {
    for (std::size_t b = a + 1; b < t.size(); ++b) {
      VertexSet common;
      std::set_intersection(t.bags[a].begin(), t.bags[a].end(),
                            t.bags[b].begin(), t.bags[b].end(),
                            std::back_inserter(common));
      cands.push_back({common.size(), a, b});
    }
  }
  std::stable_sort(cands.begin(), cands.end(), [](const Cand& x, const Cand& y) {
    return x.weight > y.weight;
  });
  std::vector<std::size_t> parent(t.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto root = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const Cand& c : cands) {
    std::size_t ra = root(c.a), rb = root(c.b);
    if (ra == rb) continue;
    parent[ra] = rb;
    t.edges.emplace_back(c.a, c.b);
  }
  std::sort(t.edges.begin(), t.edges.end());
  return t;
}

std::string check_clique_tree(const GalacticGraph& g, const CliqueTree& t) {
  if (g.size() == 0) return t.size() == 0 ? "" : "bags on an empty graph";
  if (t.edges.size() + 1 != t.size()) return "not a tree: wrong edge count";
  auto adj = t.adjacency();
  {
    std::vector<char> seen(t.size(), 0);
    std::vector<std::size_t> stack{0};
    seen[0] = 1;
    std::size_t reached = 1;
    while (!stack.empty()) {
      auto b = stack.back();
      stack.pop_back();
      for (auto c : adj[b]) {
        if (!seen[c]) {
          seen[c] = 1;
          ++reached;
          stack.push_back(c);
        }
      }
    }
    if (reached != t.size()) return "not a tree: disconnected";
  }
  for (std::size_t b = 0; b < t.size(); ++b) {
    for (VertexId v : t.bags[b]) {
      if (!g.contains(v)) return "bag " + std::to_string(b + 1) + " has unknown vertex";
    }
    if (!is_clique(g, t.bags[b])) {
      return "bag " + std::to_string(b + 1) + " is not a clique";
    }
  }
  for (VertexId v : g.ids()) {
    auto nodes = t.bags_of(v);
    if (nodes.empty()) return "vertex " + std::to_string(v) + " uncovered";
    std::set<std::size_t> in(nodes.begin(), nodes.end());
    std::vector<std::size_t> stack{nodes.front()};
    std::set<std::size_t> seen{nodes.front()};
    while (!stack.empty()) {
      auto b = stack.back();
      stack.pop_back();
      for (auto c : adj[b]) {
        if (in.count(c) && seen.insert(c).second) stack.push_back(c);
      }
    }
    if (seen.size() != in.size()) {
      return "bags of vertex " + std::to_string(v) + " are not a subtree";
    }
  }
  for (auto [u, v] : g.edge_list()) {
    bool covered = false;
    for (const VertexSet& bag : t.bags) {
      covered = covered || (contains(bag, u) && contains(bag, v));
    }
    if (!covered) {
      return "edge " + std::to_string(u) + "-" + std::to_string(v) +
             " uncovered";
    }
  }
  for (auto [a, b] : t.edges) {
    const VertexSet& x = t.bags[a];
    const VertexSet& y = t.bags[b];
    if (std::includes(x.begin(), x.end(), y.begin(), y.end()) ||
        std::includes(y.begin(), y.end(), x.begin(), x.end())) {
      return "adjacent bags " + std::to_string(a + 1) + " and " +
             std::to_string(b + 1) + " are nested";
    }
  }
  return "";
}

std::string format_clique_tree(const CliqueTree& t) {
  std::ostringstream out;
  for (std::size_t b = 0; b < t.size(); ++b) {
    out << "bag " << b + 1;
    for (VertexId v : t.bags[b]) out << ' ' << v;
    out << '\n';
  }
  for (auto [a, b] : t.edges) out << "tedge " << a + 1 << ' ' << b + 1 << '\n';
  return out.str();
}

CliqueTree parse_clique_tree(std::string_view text) {
  CliqueTree t;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string word;
    if (!(ls >> word) || word[0] == '#') continue;
    if (word == "bag") {
      std::size_t id = 0;
      if (!(ls >> id) || id != t.size() + 1) {
        throw ParseError(lineno, "bag ids must run 1, 2, ...");
      }
      VertexSet bag;
      VertexId v;
      while (ls >> v) bag.push_back(v);
      if (!ls.eof()) throw ParseError(lineno, "bad vertex id");
      t.bags.push_back(make_set(bag));
    } else if (word == "tedge") {
      std::size_t a = 0, b = 0;
      if (!(ls >> a >> b) || a == 0 || b == 0 || a > t.size() ||
          b > t.size() || a == b) {
        throw ParseError(lineno, "bad tree edge");
      }
      t.edges.emplace_back(std::min(a, b) - 1, std::max(a, b) - 1);
    } else {
      throw ParseError(lineno, "unknown record '" + word + "'");
    }
  }
  std::sort(t.edges.begin(), t.edges.end());
  for (auto [a, b] : t.edges) {
    const VertexSet& x = t.bags[a];
    const VertexSet& y = t.bags[b];
    if (std::includes(x.begin(), x.end(), y.begin(), y.end()) ||
        std::includes(y.begin(), y.end(), x.begin(), x.end())) {
      t.compact = false;
    }
  }
  return t;
}

std::vector<std::size_t> rooted_nodes(const CliqueTree& t,
                                      const std::vector<std::size_t>& path) {
  auto adj = t.adjacency();
  std::vector<char> seen(t.size(), 0);
  for (auto b : path) seen[b] = 1;
  std::vector<std::size_t> out(path.begin(), path.end());
  for (std::size_t i = 1; i + 1 < path.size(); ++i) {
    std::vector<std::size_t> stack{path[i]};
    while (!stack.empty()) {
      auto b = stack.back();
      stack.pop_back();
      for (auto c : adj[b]) {
        if (!seen[c]) {
          seen[c] = 1;
          out.push_back(c);
          stack.push_back(c);
        }
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::optional<BlockPartition> block_partition(
    const CliqueTree& t, const std::vector<std::size_t>& path,
    std::size_t alpha, std::size_t beta) {
  if (alpha == 0 || path.size() < alpha * std::max<std::size_t>(beta, 1)) {
    return std::nullopt;
  }
  auto adj = t.adjacency();
  std::vector<char> on_path(t.size(), 0);
  for (auto b : path) on_path[b] = 1;
  BlockPartition bp;
  bp.path = path;
  const std::size_t len = path.size() / alpha;
  for (std::size_t s = 0; s < alpha; ++s) {
    std::size_t lo = s * len;
    std::size_t hi = s + 1 == alpha ? path.size() : lo + len;
    std::vector<std::size_t> pn(path.begin() + lo, path.begin() + hi);
    std::vector<std::size_t> nodes = pn;
    for (std::size_t i = lo; i < hi; ++i) {
      if (i == 0 || i + 1 == path.size()) continue;
      std::vector<std::size_t> stack{path[i]};
      std::set<std::size_t> seen{path[i]};
      while (!stack.empty()) {
        auto b = stack.back();
        stack.pop_back();
        for (auto c : adj[b]) {
          if (!on_path[c] && seen.insert(c).second) {
            nodes.push_back(c);
            stack.push_back(c);
          }
        }
      }
    }
    std::sort(nodes.begin(), nodes.end());
    bp.path_nodes.push_back(std::move(pn));
    bp.nodes.push_back(std::move(nodes));
  }
  return bp;
}

std::vector<std::size_t> longest_path(const CliqueTree& t) {
  if (t.size() == 0) return {};
  auto adj = t.adjacency();
  auto bfs = [&](std::size_t src) {
    std::vector<std::size_t> dist(t.size(), SIZE_MAX), parent(t.size(), SIZE_MAX);
    std::deque<std::size_t> q{src};
    dist[src] = 0;
    while (!q.empty()) {
      auto b = q.front();
      q.pop_front();
      for (auto c : adj[b]) {
        if (dist[c] == SIZE_MAX) {
          dist[c] = dist[b] + 1;
          parent[c] = b;
          q.push_back(c);
        }
      }
    }
    std::size_t far = src;
    for (std::size_t b = 0; b < t.size(); ++b) {
      if (dist[b] != SIZE_MAX && dist[b] > dist[far]) far = b;
    }
    return std::make_pair(far, parent);
  };
  auto [a, ignored] = bfs(0);
  auto [b, parent] = bfs(a);
  std::vector<std::size_t> path{b};
  while (path.back() != a) path.push_back(parent[path.back()]);
  if (path.front() > path.back()) std::reverse(path.begin(), path.end());
  return path;
}

std::size_t bag_bound(std::size_t omega, Weight k) {
  return (3 * omega + 3) * static_cast<std::size_t>(k) * k;
}

namespace {

struct Normalizer {
  const GalacticGraph& g;
  const CliqueTree& t;
  std::vector<std::vector<std::size_t>> adj;
  std::vector<std::size_t> count;
  std::vector<VertexSet> priv;
  std::size_t bound = 0;
  Weight k = 0;
  TokenConfig cfg;
  std::vector<Move> prefix;

  Normalizer(const GalacticGraph& graph, const CliqueTree& tree)
      : g(graph), t(tree), adj(tree.adjacency()),
        count(bag_counts(tree, graph)), priv(private_vertices(tree, graph)) {}

  std::size_t bags(VertexId v) const { return count[g.index(v)]; }

  // Candidate targets for token v under the three cases, then fallback.
  std::vector<VertexSet> targets(VertexId v) const {
    std::vector<VertexSet> out;
    auto tv = t.bags_of(v);
    std::vector<char> in_tv(t.size(), 0);
    for (auto b : tv) in_tv[b] = 1;
    // A leaf of T inside T_v.
    VertexSet leaf_private;
    for (auto b : tv) {
      if (adj[b].size() <= 1) {
        leaf_private.insert(leaf_private.end(), priv[b].begin(), priv[b].end());
      }
    }
    out.push_back(make_set(leaf_private));
    // Leaves of T below the leaves of T_v.
    std::vector<std::size_t> tv_leaves;
    for (auto b : tv) {
      std::size_t inside = 0;
      for (auto c : adj[b]) inside += in_tv[c];
      if (inside <= 1) tv_leaves.push_back(b);
    }
    VertexSet below;
    if (tv_leaves.size() >= k) {
      std::vector<char> seen = in_tv;
      std::vector<std::size_t> stack;
      for (auto b : tv_leaves) {
        for (auto c : adj[b]) {
          if (!seen[c]) {
            seen[c] = 1;
            stack.push_back(c);
          }
        }
      }
      while (!stack.empty()) {
        auto b = stack.back();
        stack.pop_back();
        if (adj[b].size() <= 1) {
          below.insert(below.end(), priv[b].begin(), priv[b].end());
        }
        for (auto c : adj[b]) {
          if (!seen[c]) {
            seen[c] = 1;
            stack.push_back(c);
          }
        }
      }
    }
    out.push_back(make_set(below));
    // Inner bags of degree-two runs of T inside T_v, avoiding the run ends.
    VertexSet middle;
    std::vector<char> done(t.size(), 0);
    for (auto b : tv) {
      if (done[b] || adj[b].size() != 2) continue;
      std::vector<std::size_t> run{b};
      done[b] = 1;
      for (int side = 0; side < 2; ++side) {
        std::size_t prev = b, cur = adj[b][side];
        std::vector<std::size_t> ext;
        while (in_tv[cur] && adj[cur].size() == 2 && !done[cur]) {
          done[cur] = 1;
          ext.push_back(cur);
          std::size_t nxt = adj[cur][0] == prev ? adj[cur][1] : adj[cur][0];
          prev = cur;
          cur = nxt;
        }
        if (side == 0) {
          std::reverse(ext.begin(), ext.end());
          run.insert(run.begin(), ext.begin(), ext.end());
        } else {
          run.insert(run.end(), ext.begin(), ext.end());
        }
      }
      if (run.size() < 3) continue;
      VertexSet ends = set_union(t.bags[run.front()], t.bags[run.back()]);
      for (std::size_t i = 1; i + 1 < run.size(); ++i) {
        for (VertexId w : t.bags[run[i]]) {
          if (!contains(ends, w) && bags(w) < bags(v)) middle.push_back(w);
        }
      }
    }
    out.push_back(make_set(middle));
    VertexSet any;
    for (VertexId w : g.ids()) {
      if (bags(w) <= bound) any.push_back(w);
    }
    out.push_back(any);
    return out;
  }

  // Vertices v may pass through: not a token and not next to one.
  std::vector<char> free_mask(VertexId v) const {
    std::vector<char> allowed(g.size(), 1);
    for (VertexId u : cfg.support()) {
      if (u == v) continue;
      std::size_t i = g.index(u);
      allowed[i] = 0;
      for (auto j : g.neighbors(i)) allowed[j] = 0;
    }
    return allowed;
  }

  std::vector<std::size_t> route(VertexId v, const VertexSet& goal,
                                 const std::vector<char>& allowed) const {
    std::size_t src = g.index(v);
    auto [dist, parent] = bfs_tree(g, src, allowed);
    std::size_t best = SIZE_MAX;
    for (VertexId w : goal) {
      std::size_t i = g.index(w);
      if (w == v || !allowed[i] || dist[i] == kUnreachable) continue;
      if (best == SIZE_MAX || dist[i] < dist[best]) best = i;
    }
    if (best == SIZE_MAX) return {};
    std::vector<std::size_t> path{best};
    while (path.back() != src) path.push_back(parent[path.back()]);
    std::reverse(path.begin(), path.end());
    return path;
  }

  void slide(const std::vector<std::size_t>& path) {
    for (std::size_t i = 0; i + 1 < path.size(); ++i) {
      Move m{g.id(path[i]), g.id(path[i + 1])};
      cfg = apply_move(g, cfg, m);
      prefix.push_back(m);
    }
  }

  // Moves v below the bound; recursion relocates a blocking token first.
  bool relocate(VertexId v, int depth, VertexId* blocker) {
    auto goals = targets(v);
    for (const VertexSet& goal : goals) {
      VertexSet useful;
      for (VertexId w : goal) {
        if (bags(w) < bags(v) || bags(w) <= bound) useful.push_back(w);
      }
      auto path = route(v, useful, free_mask(v));
      if (!path.empty()) {
        slide(path);
        return true;
      }
    }
    // Find who blocks the route to the first non-empty goal.
    std::vector<char> open(g.size(), 1);
    for (VertexId u : cfg.support()) {
      if (u != v) open[g.index(u)] = 0;
    }
    for (const VertexSet& goal : goals) {
      auto path = route(v, goal, open);
      if (path.empty()) continue;
      for (std::size_t i : path) {
        for (VertexId u : cfg.support()) {
          if (u == v) continue;
          std::size_t ui = g.index(u);
          if (i == ui || g.adjacent(i, ui)) {
            *blocker = u;
            if (depth >= static_cast<int>(k)) return false;
            VertexId deeper = 0;
            if (!relocate(u, depth + 1, &deeper)) return false;
            return relocate(v, depth + 1, blocker);
          }
        }
      }
    }
    return false;
  }
};

}  // namespace

Normalization normalize_token_bags(const Instance& inst, const CliqueTree& t) {
  if (!inst.is_classic()) {
    throw Error(ErrorCode::kInvalidArgument,
                "normalize_token_bags expects a classic instance");
  }
  const GalacticGraph& g = inst.graph;
  Normalizer nz(g, t);
  nz.k = inst.k;
  nz.bound = bag_bound(t.width() + 1, inst.k);
  nz.cfg = inst.source;
  Normalization out;
  const std::size_t cap = 4 * g.size() + 4;
  for (std::size_t round = 0; round <= cap; ++round) {
    VertexSet over;
    for (VertexId v : nz.cfg.support()) {
      if (nz.bags(v) > nz.bound) over.push_back(v);
    }
    if (over.empty()) break;
    std::stable_sort(over.begin(), over.end(), [&](VertexId a, VertexId b) {
      return nz.bags(a) > nz.bags(b);
    });
    VertexId v = over.front();
    VertexId blocker = 0;
    if (round == cap || !nz.relocate(v, 0, &blocker)) {
      out.ok = false;
      out.blocking = v;
      out.failure = "token on " + std::to_string(v) + " stays in " +
                    std::to_string(nz.bags(v)) + " bags (bound " +
                    std::to_string(nz.bound) + ")";
      if (blocker != 0) {
        out.failure += ", blocked by token on " + std::to_string(blocker);
      }
      break;
    }
  }
  out.instance = inst;
  out.instance.source = nz.cfg;
  out.instance.rotation.reset();
  out.prefix = std::move(nz.prefix);
  return out;
}

std::string check_c1(const Instance& inst, const C1Parts& parts) {
  const GalacticGraph& g = inst.graph;
  if (!inst.is_classic()) return "instance has black holes";
  for (const VertexSet* s : {&parts.w, &parts.x1, &parts.x2, &parts.y,
                             &parts.c, &parts.r}) {
    if (!std::is_sorted(s->begin(), s->end()) ||
        std::adjacent_find(s->begin(), s->end()) != s->end()) {
      return "part is not a sorted set";
    }
    for (VertexId v : *s) {
      if (!g.contains(v)) return "unknown vertex " + std::to_string(v);
    }
  }
  VertexSet x = set_union(parts.x1, parts.x2);
  if (x.size() != parts.x1.size() + parts.x2.size()) {
    return "X1 and X2 overlap";
  }
  if (!is_clique(g, parts.w)) return "W is not a clique";
  if (!is_clique(g, x)) return "X is not a clique";
  if (!is_clique(g, parts.y)) return "Y is not a clique";
  VertexSet z = set_union(set_union(parts.w, x), parts.y);
  VertexSet tokens = set_union(inst.source.support(), inst.target.support());
  for (VertexId v : z) {
    if (contains(tokens, v)) return "Z holds a token";
  }
  if (parts.c.empty()) return "C is empty";
  for (VertexId v : parts.c) {
    if (contains(z, v)) return "C meets Z";
    if (contains(tokens, v)) return "C holds a token";
  }
  auto comps = connected_components(g, z);
  if (std::find(comps.begin(), comps.end(), parts.c) == comps.end()) {
    return "C is not a component of G - Z";
  }
  VertexSet wy = set_union(parts.w, parts.y);
  VertexSet cwy = set_union(parts.c, wy);
  for (VertexId a : parts.x1) {
    for (VertexId b : cwy) {
      if (a != b && !g.adjacent_ids(a, b)) return "X1 is not complete to C, W, Y";
    }
  }
  if (parts.r.size() < inst.k) return "R has fewer than k vertices";
  for (VertexId r : parts.r) {
    if (!contains(parts.c, r)) return "R is not inside C";
    for (VertexId w : wy) {
      if (g.adjacent_ids(r, w)) return "R meets N(W) or N(Y)";
    }
  }
  for (std::size_t a = 0; a < parts.r.size(); ++a) {
    for (std::size_t b = a + 1; b < parts.r.size(); ++b) {
      VertexId ra = parts.r[a], rb = parts.r[b];
      if (g.adjacent_ids(ra, rb)) return "R is not 2-independent";
      for (VertexId c : parts.c) {
        if (g.adjacent_ids(c, ra) && g.adjacent_ids(c, rb)) {
          return "R is not 2-independent";
        }
      }
    }
  }
  {
    // Paths may run through C, W and Y but not through X.
    std::vector<char> allowed = mask_of(g, cwy);
    auto dist = bfs_distances(g, g.index(parts.r.front()), allowed);
    for (VertexId z0 : wy) {
      if (dist[g.index(z0)] == kUnreachable) {
        return "a vertex of W or Y does not reach R";
      }
    }
  }
  for (VertexId xv : parts.x2) {
    std::size_t missed = 0;
    for (VertexId r : parts.r) missed += !g.adjacent_ids(xv, r);
    if (missed < inst.k) return "a vertex of X2 misses fewer than k of R";
  }
  return "";
}

RuleOutcome rule_c1(const Instance& inst, const C1Parts& parts) {
  if (std::string why = check_c1(inst, parts); !why.empty()) {
    return NotApplicable{"c1: " + why};
  }
  const std::size_t len = 5 * static_cast<std::size_t>(inst.k);
  if (parts.c.size() <= len) return NotApplicable{"c1: C has at most 5k vertices"};
  Rewrite rw;
  rw.removals = parts.c;
  VertexId first = fresh_id(inst.graph);
  for (std::size_t i = 0; i < len; ++i) {
    VertexId p = first + static_cast<VertexId>(i);
    rw.additions.emplace_back(p, VertexKind::kPlanet);
    if (i > 0) rw.new_edges.emplace_back(p - 1, p);
    for (VertexId x : parts.x1) rw.new_edges.emplace_back(x, p);
  }
  for (const VertexSet* s : {&parts.x2, &parts.w, &parts.y}) {
    for (VertexId v : *s) rw.new_edges.emplace_back(v, first);
  }
  auto [out, entry] = apply_rule_rewrite(inst, "c1", parts.r, rw);
  if (!is_chordal(out.graph)) return NotApplicable{"c1: result is not chordal"};
  if (clique_number(out.graph) > clique_number(inst.graph)) {
    return NotApplicable{"c1: result has a larger clique"};
  }
  return Reduced{std::move(out), std::move(entry)};
}

namespace {

// Path nodes whose bag meets `s`.
std::vector<std::size_t> path_nodes_meeting(const CliqueTree& t,
                                            const std::vector<std::size_t>& p,
                                            const VertexSet& s) {
  std::vector<std::size_t> out;
  for (auto b : p) {
    for (VertexId v : t.bags[b]) {
      if (contains(s, v)) {
        out.push_back(b);
        break;
      }
    }
  }
  return out;
}

VertexSet common_vertices(const CliqueTree& t,
                          const std::vector<std::size_t>& nodes) {
  if (nodes.empty()) return {};
  VertexSet out = t.bags[nodes.front()];
  for (auto b : nodes) {
    VertexSet next;
    std::set_intersection(out.begin(), out.end(), t.bags[b].begin(),
                          t.bags[b].end(), std::back_inserter(next));
    out = std::move(next);
  }
  return out;
}

}  // namespace

std::optional<C1Parts> find_c1_application(const Instance& inst,
                                           const CliqueTree& t,
                                           const C1Search& search) {
  if (!inst.is_classic() || inst.k == 0 || t.size() == 0) return std::nullopt;
  const GalacticGraph& g = inst.graph;
  const std::size_t k = inst.k;
  const std::size_t omega = t.width() + 1;
  std::size_t gamma = search.gamma;
  if (gamma == 0) {
    for (const auto& a : t.adjacency()) gamma = std::max(gamma, a.size());
  }
  const std::size_t alpha = search.alpha ? search.alpha : 6 * k * omega * gamma;
  const std::size_t beta = search.beta ? search.beta : 5 * k * k * omega * omega;

  // Longest token-free stretch of the longest path.
  VertexSet tokens = set_union(inst.source.support(), inst.target.support());
  std::vector<std::size_t> path;
  {
    std::vector<std::size_t> cur;
    for (auto b : longest_path(t)) {
      bool clean = true;
      for (VertexId v : t.bags[b]) clean = clean && !contains(tokens, v);
      if (clean) {
        cur.push_back(b);
      } else {
        cur.clear();
      }
      if (cur.size() > path.size()) path = cur;
    }
  }
  auto bp = block_partition(t, path, alpha, beta);
  if (!bp) return std::nullopt;

  // Stage one: vertices spanning the path bags of a section.
  for (;;) {
    VertexSet everywhere = common_vertices(t, path);
    std::optional<std::vector<std::size_t>> narrower;
    for (const auto& pn : bp->path_nodes) {
      for (VertexId v : common_vertices(t, pn)) {
        if (!contains(everywhere, v)) {
          narrower = pn;
          break;
        }
      }
      if (narrower) break;
    }
    if (!narrower) break;
    auto next = block_partition(t, *narrower, alpha, beta);
    if (!next) break;
    path = *narrower;
    bp = std::move(next);
  }
  VertexSet x = common_vertices(t, path);

  // Stage two: X1 spans every bag of T_P.
  VertexSet x1, x2;
  for (;;) {
    VertexSet all_rooted = common_vertices(t, rooted_nodes(t, path));
    x1.clear();
    x2.clear();
    for (VertexId v : x) (contains(all_rooted, v) ? x1 : x2).push_back(v);
    std::optional<std::vector<std::size_t>> narrower;
    for (std::size_t s = 0; s < bp->nodes.size() && !narrower; ++s) {
      VertexSet span = common_vertices(t, bp->nodes[s]);
      for (VertexId v : x2) {
        if (contains(span, v)) {
          narrower = bp->path_nodes[s];
          break;
        }
      }
    }
    if (!narrower) break;
    auto next = block_partition(t, *narrower, alpha, beta);
    if (!next) break;
    path = *narrower;
    bp = std::move(next);
  }

  // Components of G - Z inside T_P.
  VertexSet inside = vertices_of(t, rooted_nodes(t, path));
  auto pick_component = [&](const VertexSet& z, const VertexSet& prefer)
      -> std::optional<VertexSet> {
    std::vector<VertexSet> comps;
    for (auto& c : connected_components(g, z)) {
      bool within = std::includes(inside.begin(), inside.end(), c.begin(),
                                  c.end());
      if (within) comps.push_back(std::move(c));
    }
    if (comps.empty() || comps.size() > gamma) return std::nullopt;
    std::size_t best = 0, best_score = 0;
    for (std::size_t i = 0; i < comps.size(); ++i) {
      std::size_t score = 0;
      if (prefer.empty()) {
        for (const auto& pn : bp->path_nodes) {
          score += !path_nodes_meeting(t, pn, comps[i]).empty();
        }
      } else {
        for (VertexId v : comps[i]) score += contains(prefer, v);
      }
      if (score > best_score) {
        best = i;
        best_score = score;
      }
    }
    return comps[best];
  };
  VertexSet z = set_union(set_union(t.bags[path.front()], x),
                          t.bags[path.back()]);
  auto c = pick_component(z, {});
  if (!c) return std::nullopt;
  auto pc = path_nodes_meeting(t, path, *c);
  if (pc.empty()) return std::nullopt;
  // W and Y: separators where C enters and leaves the path.
  auto at = [&](std::size_t node) {
    return static_cast<std::size_t>(
        std::find(path.begin(), path.end(), node) - path.begin());
  };
  auto separator = [&](std::size_t i, std::size_t j) {
    VertexSet out;
    const VertexSet& a = t.bags[path[i]];
    const VertexSet& b = t.bags[path[j]];
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                          std::back_inserter(out));
    VertexSet rest;
    std::set_difference(out.begin(), out.end(), x.begin(), x.end(),
                        std::back_inserter(rest));
    return rest;
  };
  C1Parts parts;
  std::size_t first = at(pc.front()), last = at(pc.back());
  if (first > 0) parts.w = separator(first - 1, first);
  if (last + 1 < path.size()) parts.y = separator(last, last + 1);
  parts.x1 = x1;
  parts.x2 = x2;
  z = set_union(set_union(parts.w, parts.y), x);
  auto c2 = pick_component(z, *c);
  if (!c2) return std::nullopt;
  parts.c = *c2;

  // R: one vertex from every fifth section, skipping the last four.
  VertexSet near_wy;
  for (VertexId v : parts.c) {
    for (VertexId w : set_union(parts.w, parts.y)) {
      if (g.adjacent_ids(v, w)) {
        near_wy.push_back(v);
        break;
      }
    }
  }
  auto two_apart = [&](VertexId a, VertexId b) {
    if (g.adjacent_ids(a, b)) return false;
    for (VertexId m : parts.c) {
      if (g.adjacent_ids(m, a) && g.adjacent_ids(m, b)) return false;
    }
    return true;
  };
  const std::size_t sections = bp->path_nodes.size();
  for (std::size_t s = 5; s + 4 <= sections; s += 5) {
    VertexSet pool;
    for (auto b : bp->path_nodes[s - 1]) {
      for (VertexId v : t.bags[b]) {
        if (contains(parts.c, v) && !contains(near_wy, v)) pool.push_back(v);
      }
    }
    pool = make_set(pool);
    std::optional<VertexId> pick;
    std::size_t pick_hits = SIZE_MAX;
    for (VertexId v : pool) {
      bool ok = true;
      for (VertexId r : parts.r) ok = ok && two_apart(v, r);
      if (!ok) continue;
      std::size_t hits = 0;
      for (VertexId xv : x2) hits += g.adjacent_ids(v, xv);
      if (hits < pick_hits) {
        pick = v;
        pick_hits = hits;
      }
    }
    if (pick) parts.r.push_back(*pick);
  }
  parts.r = make_set(parts.r);
  if (!check_c1(inst, parts).empty()) return std::nullopt;
  return parts;
}

NamedRule c1_rule(const C1Search& search) {
  return {"c1", [search](const Instance& inst) -> RuleOutcome {
            if (!inst.is_classic()) return NotApplicable{"c1: not classic"};
            if (!is_chordal(inst.graph)) return NotApplicable{"c1: not chordal"};
            CliqueTree t = clique_tree(inst.graph);
            auto parts = find_c1_application(inst, t, search);
            if (!parts) return NotApplicable{"c1: no application found"};
            return rule_c1(inst, *parts);
          }};
}

ChordalRun chordal_kernel(const Instance& inst, const C1Search& search) {
  inst.validate();
  if (!inst.is_classic()) {
    throw Error(ErrorCode::kInvalidArgument,
                "the chordal pipeline expects a classic instance");
  }
  require_chordal(inst.graph);
  ChordalRun run;
  if (auto small = decide_small_k(inst)) {
    run.kernel = *small;
    run.source_normalization.instance = inst;
    run.target_normalization.instance = inst;
    return run;
  }
  CliqueTree t = clique_tree(inst.graph);
  run.source_normalization = normalize_token_bags(inst, t);
  Instance flipped = run.source_normalization.instance;
  std::swap(flipped.source, flipped.target);
  run.target_normalization = normalize_token_bags(flipped, t);
  Instance start = run.source_normalization.instance;
  start.target = run.target_normalization.instance.source;

  std::vector<NamedRule> rules = basic_rules({"r1", "r3", "r5"});
  rules.push_back({"r6", [](const Instance& i) { return rule_r6_auto(i); }});
  rules.push_back(c1_rule(search));
  auto [kernel, trace] = exhaust(start, rules);
  run.kernel = std::move(kernel);
  run.trace = std::move(trace);
  return run;
}

ChordalRun chordal_fpt_driver(const Instance& inst, const C1Search& search,
                              std::uint64_t budget) {
  ChordalRun run = chordal_kernel(inst, search);
  run.verdict = solve(run.kernel, budget);
  return run;
}

std::optional<Instance> random_chordal_instance(std::mt19937_64& rng,
                                                std::uint32_t n,
                                                std::size_t omega, Weight k) {
  if (n == 0 || omega == 0) {
    throw Error(ErrorCode::kInvalidArgument, "need n >= 1 and omega >= 1");
  }
  std::vector<VertexSet> cliques{{1}};
  std::vector<std::pair<VertexId, VertexId>> edges;
  for (VertexId v = 2; v <= n; ++v) {
    const VertexSet& base = cliques[rng() % cliques.size()];
    std::size_t top = std::min(omega - 1, base.size());
    std::size_t size = top == 0 ? 0 : 1 + rng() % top;
    VertexSet pick = base;
    std::shuffle(pick.begin(), pick.end(), rng);
    pick.resize(size);
    for (VertexId u : pick) edges.emplace_back(u, v);
    pick.push_back(v);
    cliques.push_back(make_set(pick));
  }
  std::vector<std::pair<VertexId, VertexKind>> vs;
  for (VertexId v = 1; v <= n; ++v) vs.emplace_back(v, VertexKind::kPlanet);
  GalacticGraph g(vs, edges);
  auto draw = [&]() -> std::optional<VertexSet> {
    for (int attempt = 0; attempt < 200; ++attempt) {
      VertexSet pick;
      std::vector<VertexId> order(n);
      std::iota(order.begin(), order.end(), 1);
      std::shuffle(order.begin(), order.end(), rng);
      for (VertexId v : order) {
        if (pick.size() == k) break;
        bool ok = true;
        for (VertexId u : pick) ok = ok && !g.adjacent_ids(u, v);
        if (ok) pick.push_back(v);
      }
      if (pick.size() == k) return make_set(pick);
    }
    return std::nullopt;
  };
  auto s = draw();
  auto tt = draw();
  if (!s || !tt) return std::nullopt;
  Instance inst;
  inst.graph = std::move(g);
  inst.k = k;
  inst.source = TokenConfig::FromVertices(*s);
  inst.target = TokenConfig::FromVertices(*tt);
  inst.validate();
  return inst;
}

}  // namespace gts
