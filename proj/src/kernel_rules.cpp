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

#include "gts/kernel_rules.hpp"

#include <algorithm>
#include <sstream>
#include <string>

#include "gts/graph_algo.hpp"

namespace gts {

namespace {

Reduced make_reduced(const Instance& inst, std::string rule,
                     std::vector<VertexId> witness, const Rewrite& rw,
                     bool sound = true) {
  auto [out, entry] = apply_rule_rewrite(inst, std::move(rule),
                                         std::move(witness), rw,
                                         sound);
  return Reduced{std::move(out), std::move(entry)};
}

Rewrite merge_rewrite(const GalacticGraph& g, VertexSet group,
                      VertexKind kind = VertexKind::kBlackHole) {
  Rewrite rw;
  rw.merges.push_back(Merge{make_set(std::move(group)), fresh_id(g), kind});
  return rw;
}

// Marks planets carrying a token in I_s or I_t.
std::vector<char> token_planets(const Instance& inst) {
  const GalacticGraph& g = inst.graph;
  std::vector<char> mark(g.size(), 0);
  for (const TokenConfig* c : {&inst.source, &inst.target}) {
    for (auto [v, w] : c->entries()) {
      std::size_t i = g.index(v);
      if (g.is_planet(i)) mark[i] = 1;
    }
  }
  return mark;
}

bool has_token(const Instance& inst, VertexId v) {
  return inst.source.weight(v) > 0 || inst.target.weight(v) > 0;
}

// Number of I_s/I_t planets in N[v] ∩ A.
std::size_t closed_planet_tokens(const GalacticGraph& g,
                                 const std::vector<char>& tokens,
                                 std::size_t v) {
  std::size_t c = tokens[v] ? 1 : 0;
  for (auto w : g.neighbors(v)) {
    if (g.is_planet(w) && tokens[w]) ++c;
  }
  return c;
}

}  // namespace

RuleOutcome rule_r1(const Instance& inst) {
  const GalacticGraph& g = inst.graph;
  for (std::size_t u = 0; u < g.size(); ++u) {
    if (!g.is_hole(u)) continue;
    for (auto v : g.neighbors(u)) {
      if (v > u && g.is_hole(v)) {
        return make_reduced(inst, "r1", {g.id(u), g.id(v)},
                            merge_rewrite(g, {g.id(u), g.id(v)}));
      }
    }
  }
  return NotApplicable{"no two adjacent black holes"};
}

RuleOutcome rule_r2(const Instance& inst) {
  const GalacticGraph& g = inst.graph;
  for (std::size_t u = 0; u < g.size(); ++u) {
    if (!g.is_hole(u) || has_token(inst, g.id(u))) continue;
    auto nu = g.neighbors(u);
    for (std::size_t v = 0; v < g.size(); ++v) {
      if (v == u || !g.is_hole(v)) continue;
      auto nv = g.neighbors(v);
      if (std::includes(nv.begin(), nv.end(), nu.begin(), nu.end())) {
        Rewrite rw;
        rw.removals = {g.id(u)};
        return make_reduced(inst, "r2", {g.id(u), g.id(v)}, rw);
      }
    }
  }
  return NotApplicable{"no dominated weight-free black hole"};
}

RuleOutcome rule_r3(const Instance& inst) {
  const GalacticGraph& g = inst.graph;
  std::vector<char> tokens = token_planets(inst);
  for (std::size_t u = 0; u < g.size(); ++u) {
    if (!g.is_hole(u)) continue;
    for (auto v : g.neighbors(u)) {
      if (!g.is_planet(v)) continue;
      if (closed_planet_tokens(g, tokens, v) <= 1) {
        return make_reduced(inst, "r3", {g.id(u), g.id(v)},
                            merge_rewrite(g, {g.id(u), g.id(v)}));
      }
    }
  }
  return NotApplicable{"every planet next to a black hole sees two tokens"};
}

RuleOutcome rule_r4(const Instance& inst) {
  const GalacticGraph& g = inst.graph;
  auto in_s = [&](std::size_t i) { return inst.source.weight(g.id(i)) > 0; };
  auto in_t = [&](std::size_t i) { return inst.target.weight(g.id(i)) > 0; };
  for (std::size_t u = 0; u < g.size(); ++u) {
    if (!g.is_planet(u)) continue;
    for (std::size_t v = u + 1; v < g.size(); ++v) {
      if (!g.is_planet(v)) continue;
      bool adjacent = g.adjacent(u, v);
      std::vector<std::uint32_t> nu(g.neighbors(u).begin(),
                                    g.neighbors(u).end());
      std::vector<std::uint32_t> nv(g.neighbors(v).begin(),
                                    g.neighbors(v).end());
      if (adjacent) {
        nu.insert(std::lower_bound(nu.begin(), nu.end(), u),
                  static_cast<std::uint32_t>(u));
        nv.insert(std::lower_bound(nv.begin(), nv.end(), v),
                  static_cast<std::uint32_t>(v));
      }
      if (nu != nv) continue;
      std::vector<VertexId> witness{g.id(u), g.id(v)};
      bool tu = in_s(u) || in_t(u);
      bool tv = in_s(v) || in_t(v);
      if (!tu || !tv) {
        Rewrite rw;
        rw.removals = {g.id(!tu ? u : v)};
        return make_reduced(inst, "r4", witness, rw);
      }
      if (adjacent) continue;
      // A token next to a black hole can always leave, so the frozen-token
      // cases below only hold when every neighbor is a planet.
      bool frozen = std::all_of(nu.begin(), nu.end(),
                                [&](std::uint32_t w) { return g.is_planet(w); });
      if (!frozen) continue;
      bool both_s = in_s(u) && in_s(v);
      bool both_t = in_t(u) && in_t(v);
      if (both_s != both_t) {
        Rewrite rw;
        rw.trivial_no = true;
        Instance no = trivial_no_instance();
        if (no == inst) continue;
        return make_reduced(inst, "r4", witness, rw);
      }
      if (both_s && both_t) {
        VertexSet removed{g.id(u), g.id(v)};
        for (auto w : g.neighbors(u)) removed.push_back(g.id(w));
        Rewrite rw;
        rw.removals = make_set(std::move(removed));
        rw.k_delta = -2;
        return make_reduced(inst, "r4", witness, rw);
      }
    }
  }
  return NotApplicable{"no reducible twin planets"};
}

RuleOutcome rule_r5(const Instance& inst) {
  if (inst.k == 0) return NotApplicable{"k = 0"};
  const GalacticGraph& g = inst.graph;
  const std::size_t len = 5 * static_cast<std::size_t>(inst.k);
  std::vector<char> tokens = token_planets(inst);
  // blocked[w]: some I_s/I_t planet lies in N[w].
  std::vector<char> blocked(g.size(), 0);
  std::vector<char> planets(g.size(), 0);
  for (std::size_t i = 0; i < g.size(); ++i) {
    planets[i] = g.is_planet(i);
    if (!g.is_planet(i)) continue;
    blocked[i] = closed_planet_tokens(g, tokens, i) > 0;
  }
  for (std::size_t s = 0; s < g.size(); ++s) {
    if (!planets[s]) continue;
    auto [dist, parent] = bfs_tree(g, s, planets);
    for (std::size_t t = 0; t < g.size(); ++t) {
      if (dist[t] == kUnreachable || static_cast<std::size_t>(dist[t]) < len) {
        continue;
      }
      std::vector<std::size_t> path;
      for (int cur = static_cast<int>(t); cur != -1; cur = parent[cur]) {
        path.push_back(static_cast<std::size_t>(cur));
      }
      std::reverse(path.begin(), path.end());
      std::size_t run = 0;  // Unblocked vertices ending at path[j].
      for (std::size_t j = 0; j < path.size(); ++j) {
        run = blocked[path[j]] ? 0 : run + 1;
        if (run < len + 1) continue;
        std::vector<VertexId> window;
        for (std::size_t x = j - len; x <= j; ++x) {
          window.push_back(g.id(path[x]));
        }
        if (!is_a_geodesic(g, window)) continue;
        return make_reduced(inst, "r5", window, merge_rewrite(g, window));
      }
    }
  }
  return NotApplicable{"no token-free A-geodesic of length 5k"};
}

std::pair<Instance, ReductionTrace> exhaust(
    const Instance& inst, const std::vector<NamedRule>& rules) {
  Instance cur = inst;
  ReductionTrace trace;
  bool progress = true;
  while (progress) {
    progress = false;
    for (const auto& rule : rules) {
      RuleOutcome o = rule.fn(cur);
      if (auto* r = std::get_if<Reduced>(&o)) {
        cur = std::move(r->instance);
        trace.entries.push_back(std::move(r->entry));
        progress = true;
        break;
      }
    }
  }
  return {std::move(cur), std::move(trace)};
}

std::vector<NamedRule> basic_rules(const std::vector<std::string>& ids) {
  std::vector<NamedRule> out;
  for (const auto& id : ids) {
    if (id == "r1") {
      out.push_back({id, rule_r1});
    } else if (id == "r2") {
      out.push_back({id, rule_r2});
    } else if (id == "r3") {
      out.push_back({id, rule_r3});
    } else if (id == "r4") {
      out.push_back({id, rule_r4});
    } else if (id == "r5") {
      out.push_back({id, rule_r5});
    } else {
      throw Error(ErrorCode::kInvalidArgument, "unknown rule '" + id + "'");
    }
  }
  return out;
}

std::string AuditReport::to_string() const {
  std::ostringstream out;
  if (ok) {
    out << "audit pass\n";
    return out.str();
  }
  out << "audit fail " << violated << " witness";
  for (VertexId v : witness) out << ' ' << v;
  out << '\n';
  return out.str();
}

AuditReport audit(const Instance& inst) {
  const GalacticGraph& g = inst.graph;
  AuditReport report;
  auto fail = [&](std::string what, std::vector<VertexId> witness) {
    report.ok = false;
    report.violated = std::move(what);
    report.witness = std::move(witness);
    return report;
  };
  for (std::size_t u = 0; u < g.size(); ++u) {
    if (!g.is_hole(u)) continue;
    for (auto v : g.neighbors(u)) {
      if (g.is_hole(v)) return fail("adjacent-holes", {g.id(u), g.id(v)});
    }
  }
  std::vector<char> tokens = token_planets(inst);
  for (std::size_t v = 0; v < g.size(); ++v) {
    if (!g.is_planet(v)) continue;
    bool next_to_hole = false;
    for (auto w : g.neighbors(v)) next_to_hole |= g.is_hole(w);
    if (next_to_hole && closed_planet_tokens(g, tokens, v) < 2) {
      return fail("hole-neighbor-tokens", {g.id(v)});
    }
  }
  auto comps = planetary_components(g);
  if (inst.k >= 2 && comps.size() > inst.k) {
    std::vector<VertexId> reps;
    for (const auto& c : comps) reps.push_back(c.front());
    return fail("planetary-components", reps);
  }
  const std::size_t k = inst.k;
  for (const auto& c : comps) {
    if (diameter_within(g, c) >= 5 * k * (k + 1)) {
      return fail("component-diameter", {c.front()});
    }
  }
  if (graph_diameter(g) > 25 * k * k) return fail("graph-diameter", {});
  return report;
}

std::optional<Instance> decide_small_k(const Instance& inst) {
  if (inst.k >= 2) return std::nullopt;
  if (inst.k == 0 || inst.source == inst.target) return trivial_yes_instance();
  const GalacticGraph& g = inst.graph;
  auto dist = bfs_distances(g, g.index(inst.source.support().front()));
  bool connected = dist[g.index(inst.target.support().front())] != kUnreachable;
  return connected ? trivial_yes_instance() : trivial_no_instance();
}

std::pair<Instance, ReductionTrace> bounded_degree_kernel(
    const Instance& inst) {
  if (!inst.is_classic()) {
    throw Error(ErrorCode::kInvalidArgument,
                "bounded_degree_kernel expects a classic instance");
  }
  if (auto small = decide_small_k(inst)) {
    ReductionTrace trace;
    Rewrite rw;
    bool yes = small->graph.size() == 1;
    rw.trivial_yes = yes;
    rw.trivial_no = !yes;
    auto [out, entry] = apply_rule_rewrite(inst, "k1", {}, rw);
    trace.entries.push_back(std::move(entry));
    return {std::move(out), std::move(trace)};
  }
  return exhaust(inst, basic_rules({"r1", "r2", "r3", "r4", "r5"}));
}

}  // namespace gts
