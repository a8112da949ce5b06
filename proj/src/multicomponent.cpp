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

#include "gts/multicomponent.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <map>
#include <sstream>

#include "gts/graph_algo.hpp"

namespace gts {

namespace {

constexpr std::size_t kMaxTuples = std::size_t{1} << 20;

using Anchors = std::vector<std::uint32_t>;  // Sorted local indices.

std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a) {
    return std::numeric_limits<std::uint64_t>::max();
  }
  return a * b;
}

std::uint64_t saturating_pow(std::uint64_t base, std::size_t exp) {
  std::uint64_t r = 1;
  for (std::size_t i = 0; i < exp; ++i) r = saturating_mul(r, base);
  return r;
}

VertexSet sorted_cutset(const GalacticGraph& g, VertexSet x) {
  x = make_set(std::move(x));
  for (VertexId v : x) g.index(v);
  if (x.size() > kMaxCutset) {
    throw ResourceLimitError(0, "cutset of size " + std::to_string(x.size()) +
                                    " exceeds " + std::to_string(kMaxCutset));
  }
  return x;
}

// Trace mask of every vertex of g (0 for members of x).
std::vector<TraceMask> all_traces(const GalacticGraph& g, const VertexSet& x) {
  std::vector<int> bit(g.size(), -1);
  for (std::size_t b = 0; b < x.size(); ++b) bit[g.index(x[b])] = static_cast<int>(b);
  std::vector<TraceMask> out(g.size(), 0);
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (bit[i] >= 0) continue;
    for (auto j : g.neighbors(i)) {
      if (bit[j] >= 0) out[i] |= TraceMask{1} << bit[j];
    }
  }
  return out;
}

// Walk automaton of one component of G - x; states are anchor sets.
class ComponentAutomaton {
 public:
  ComponentAutomaton(const GalacticGraph& g, const std::vector<TraceMask>& traces,
                     const VertexSet& component) {
    std::map<std::size_t, std::uint32_t> local;
    for (VertexId v : component) {
      std::size_t i = g.index(v);
      local.emplace(i, static_cast<std::uint32_t>(ids_.size()));
      ids_.push_back(v);
      trace_.push_back(traces[i]);
    }
    adj_.resize(ids_.size());
    for (auto [i, li] : local) {
      for (auto j : g.neighbors(i)) {
        auto it = local.find(j);
        if (it != local.end()) adj_[li].push_back(it->second);
      }
    }
  }

  std::size_t size() const { return ids_.size(); }
  TraceMask trace(std::uint32_t i) const { return trace_[i]; }
  std::uint32_t local_of(VertexId v) const {
    return static_cast<std::uint32_t>(
        std::lower_bound(ids_.begin(), ids_.end(), v) - ids_.begin());
  }

  Anchors initial(TraceMask t) const {
    Anchors a;
    for (std::uint32_t i = 0; i < size(); ++i) {
      if (trace_[i] == t) a.push_back(i);
    }
    return a;
  }

  // Anchors of trace `w` reachable from `a` through one transition walk of
  // trace `y`. `allow_stay` lets the new anchor be the old one.
  Anchors step(const Anchors& a, Slot y, TraceMask w, bool allow_stay) const {
    std::vector<char> hit(size(), 0);
    if (a.empty()) return {};
    if (y == kBottom) {
      for (auto u : a) {
        for (auto v : adj_[u]) hit[v] = 1;
      }
      if (allow_stay && trace_[a.front()] == w) {
        for (auto u : a) hit[u] = 1;
      }
    } else {
      const Decomposition& d = decomposition(static_cast<TraceMask>(y));
      std::vector<char> good(d.valid.size(), 0);
      for (auto u : a) {
        for (auto v : adj_[u]) {
          if (d.part[v] >= 0 && d.valid[d.part[v]]) good[d.part[v]] = 1;
        }
      }
      for (std::uint32_t b = 0; b < size(); ++b) {
        for (auto v : adj_[b]) {
          if (d.part[v] >= 0 && good[d.part[v]]) {
            hit[b] = 1;
            break;
          }
        }
      }
    }
    Anchors out;
    for (std::uint32_t b = 0; b < size(); ++b) {
      if (hit[b] && trace_[b] == w) out.push_back(b);
    }
    return out;
  }

 private:
  struct Decomposition {
    std::vector<int> part;     // -1 when the trace is not inside y.
    std::vector<char> valid;   // Union of traces equals y.
  };

  const Decomposition& decomposition(TraceMask y) const {
    auto it = cache_.find(y);
    if (it != cache_.end()) return it->second;
    Decomposition d;
    d.part.assign(size(), -1);
    std::vector<TraceMask> unions;
    for (std::uint32_t s = 0; s < size(); ++s) {
      if (d.part[s] >= 0 || (trace_[s] & ~y) != 0) continue;
      int id = static_cast<int>(unions.size());
      unions.push_back(0);
      std::vector<std::uint32_t> stack{s};
      d.part[s] = id;
      while (!stack.empty()) {
        auto u = stack.back();
        stack.pop_back();
        unions[id] |= trace_[u];
        for (auto v : adj_[u]) {
          if (d.part[v] < 0 && (trace_[v] & ~y) == 0) {
            d.part[v] = id;
            stack.push_back(v);
          }
        }
      }
    }
    for (TraceMask u : unions) d.valid.push_back(u == y);
    return cache_.emplace(y, std::move(d)).first->second;
  }

  std::vector<VertexId> ids_;
  std::vector<TraceMask> trace_;
  std::vector<std::vector<std::uint32_t>> adj_;
  mutable std::map<TraceMask, Decomposition> cache_;
};

std::vector<Slot> slots(std::size_t x_size) {
  std::vector<Slot> s{kBottom};
  for (TraceMask m = 0; m < (TraceMask{1} << x_size); ++m) {
    s.push_back(static_cast<Slot>(m));
  }
  return s;
}

void collect(const ComponentAutomaton& au, const Anchors& a, std::size_t depth,
             std::size_t ell, std::size_t x_size, EllType& prefix,
             Signature& out) {
  const TraceMask limit = TraceMask{1} << x_size;
  for (Slot y : slots(x_size)) {
    for (TraceMask f = 1; f < limit; ++f) {
      if (au.step(a, y, f, true).empty()) continue;
      prefix.tail = y;
      prefix.final_trace = f;
      out.insert(prefix);
    }
  }
  if (depth == ell) return;
  for (Slot y : slots(x_size)) {
    for (TraceMask w = 0; w < limit; ++w) {
      Anchors b = au.step(a, y, w, depth == 0);
      if (b.empty()) continue;
      prefix.blocks.emplace_back(y, w);
      collect(au, b, depth + 1, ell, x_size, prefix, out);
      prefix.blocks.pop_back();
    }
  }
  prefix.tail = kBottom;
  prefix.final_trace = 0;
}

Signature signature_from(const ComponentAutomaton& au,
                         const std::vector<std::pair<TraceMask, Anchors>>& starts,
                         std::size_t ell, std::size_t x_size) {
  if (ell > kMaxEll) {
    throw ResourceLimitError(0, "ell " + std::to_string(ell) + " exceeds " +
                                    std::to_string(kMaxEll));
  }
  Signature out;
  for (const auto& [initial, anchors] : starts) {
    if (anchors.empty()) continue;
    EllType prefix;
    prefix.initial = initial;
    collect(au, anchors, 0, ell, x_size, prefix, out);
  }
  return out;
}

VertexSet component_of(const GalacticGraph& g, const VertexSet& x, VertexId v) {
  for (auto& c : connected_components(g, x)) {
    if (std::binary_search(c.begin(), c.end(), v)) return c;
  }
  throw Error(ErrorCode::kInvalidArgument,
              "vertex " + std::to_string(v) + " lies in the cutset");
}

}  // namespace

std::string format_type(const EllType& t, const VertexSet& x) {
  auto set = [&](TraceMask m) {
    std::string s = "{";
    bool first = true;
    for (std::size_t b = 0; b < x.size(); ++b) {
      if (!(m >> b & 1)) continue;
      if (!first) s += ',';
      s += std::to_string(x[b]);
      first = false;
    }
    return s + "}";
  };
  auto slot = [&](Slot y) {
    return y == kBottom ? std::string("_") : set(static_cast<TraceMask>(y));
  };
  std::string out = set(t.initial);
  for (auto [y, w] : t.blocks) out += ' ' + slot(y) + ' ' + set(w);
  out += ' ' + slot(t.tail) + ' ' + set(t.final_trace);
  return out;
}

VertexSet x_trace(const GalacticGraph& g, const VertexSet& x,
                  const VertexSet& s) {
  VertexSet xs = make_set(x);
  VertexSet out;
  for (VertexId v : s) {
    if (std::binary_search(xs.begin(), xs.end(), v)) {
      throw Error(ErrorCode::kInvalidArgument,
                  "vertex " + std::to_string(v) + " is in the cutset");
    }
    for (VertexId w : g.neighbor_ids(v)) {
      if (std::binary_search(xs.begin(), xs.end(), w)) out.push_back(w);
    }
  }
  return make_set(std::move(out));
}

std::uint64_t type_count(std::size_t x_size, std::size_t ell) {
  std::uint64_t p = std::uint64_t{1} << x_size;
  return saturating_mul(saturating_mul((p - 1) * (p - 1), saturating_pow(p, ell)),
                        saturating_pow(p + 1, ell + 1));
}

std::uint64_t type_bound(std::size_t x_size, std::size_t ell) {
  return saturating_pow((std::uint64_t{1} << x_size) + 1, 2 * (ell + 2));
}

void enumerate_types(std::size_t x_size, std::size_t ell,
                     const std::function<void(const EllType&)>& fn) {
  if (x_size > kMaxCutset || ell > kMaxEll) {
    throw ResourceLimitError(0, "type enumeration beyond |X| <= 4, ell <= 4");
  }
  const TraceMask limit = TraceMask{1} << x_size;
  const std::vector<Slot> ys = slots(x_size);
  EllType t;
  t.blocks.assign(ell, {kBottom, 0});
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i < ell) {
      for (Slot y : ys) {
        for (TraceMask w = 0; w < limit; ++w) {
          t.blocks[i] = {y, w};
          rec(i + 1);
        }
      }
      return;
    }
    for (Slot y : ys) {
      t.tail = y;
      fn(t);
    }
  };
  for (TraceMask i = 1; i < limit; ++i) {
    for (TraceMask f = 1; f < limit; ++f) {
      t.initial = i;
      t.final_trace = f;
      rec(0);
    }
  }
}

Signature vertex_signature(const GalacticGraph& g, const VertexSet& x,
                           VertexId v, std::size_t ell) {
  VertexSet xs = sorted_cutset(g, x);
  ComponentAutomaton au(g, all_traces(g, xs), component_of(g, xs, v));
  std::uint32_t lv = au.local_of(v);
  TraceMask t = au.trace(lv);
  if (t == 0) return {};
  return signature_from(au, {{t, Anchors{lv}}}, ell, xs.size());
}

Signature component_signature(const GalacticGraph& g, const VertexSet& x,
                              const VertexSet& component, std::size_t ell) {
  VertexSet xs = sorted_cutset(g, x);
  ComponentAutomaton au(g, all_traces(g, xs), component);
  std::vector<std::pair<TraceMask, Anchors>> starts;
  for (TraceMask i = 1; i < (TraceMask{1} << xs.size()); ++i) {
    starts.emplace_back(i, au.initial(i));
  }
  return signature_from(au, starts, ell, xs.size());
}

std::vector<std::size_t> dangerous_components(
    const GalacticGraph& g, const VertexSet& x,
    const std::vector<VertexSet>& family, std::size_t ell) {
  VertexSet xs = sorted_cutset(g, x);
  std::vector<TraceMask> traces = all_traces(g, xs);
  std::vector<ComponentAutomaton> au;
  au.reserve(family.size());
  for (const auto& c : family) au.emplace_back(g, traces, c);
  const TraceMask limit = TraceMask{1} << xs.size();
  const std::vector<Slot> ys = slots(xs.size());
  using Tuple = std::vector<Anchors>;

  std::vector<char> dangerous(family.size(), 0);
  std::set<Tuple> seen;
  std::deque<std::pair<Tuple, std::size_t>> queue;
  for (TraceMask i = 1; i < limit; ++i) {
    Tuple t;
    bool any = false;
    for (const auto& a : au) {
      t.push_back(a.initial(i));
      any |= !t.back().empty();
    }
    if (any) queue.emplace_back(std::move(t), 0);
  }
  while (!queue.empty()) {
    auto [tuple, depth] = std::move(queue.front());
    queue.pop_front();
    for (Slot y : ys) {
      for (TraceMask f = 1; f < limit; ++f) {
        std::vector<std::size_t> accepting;
        for (std::size_t c = 0; c < au.size(); ++c) {
          if (!tuple[c].empty() && !au[c].step(tuple[c], y, f, true).empty()) {
            accepting.push_back(c);
          }
        }
        if (!accepting.empty() && accepting.size() <= ell) {
          for (auto c : accepting) dangerous[c] = 1;
        }
      }
    }
    if (depth == ell) continue;
    for (Slot y : ys) {
      for (TraceMask w = 0; w < limit; ++w) {
        Tuple next(au.size());
        bool any = false;
        for (std::size_t c = 0; c < au.size(); ++c) {
          if (tuple[c].empty()) continue;
          next[c] = au[c].step(tuple[c], y, w, depth == 0);
          any |= !next[c].empty();
        }
        if (!any || !seen.insert(next).second) continue;
        if (seen.size() > kMaxTuples) {
          throw ResourceLimitError(seen.size(),
                                   "component type search exceeded its budget");
        }
        queue.emplace_back(std::move(next), depth + 1);
      }
    }
  }
  std::vector<std::size_t> out;
  for (std::size_t c = 0; c < family.size(); ++c) {
    if (dangerous[c]) out.push_back(c);
  }
  return out;
}

std::vector<VertexSet> peel_components(const GalacticGraph& g,
                                       const VertexSet& x,
                                       std::vector<VertexSet> family,
                                       std::size_t ell) {
  while (!family.empty()) {
    std::vector<std::size_t> drop = dangerous_components(g, x, family, ell);
    if (drop.empty()) break;
    std::vector<VertexSet> next;
    std::size_t d = 0;
    for (std::size_t c = 0; c < family.size(); ++c) {
      if (d < drop.size() && drop[d] == c) {
        ++d;
      } else {
        next.push_back(std::move(family[c]));
      }
    }
    family = std::move(next);
  }
  return family;
}

std::vector<VertexSet> safe_components(const GalacticGraph& g,
                                       const VertexSet& x, Weight k) {
  VertexSet xs = sorted_cutset(g, x);
  std::size_t ell = 5 * xs.size() * k;
  return peel_components(g, xs, connected_components(g, xs), ell);
}

RuleOutcome rule_r6(const Instance& inst, const VertexSet& x) {
  if (!inst.is_classic()) return NotApplicable{"R6 needs a classic instance"};
  const GalacticGraph& g = inst.graph;
  VertexSet xs = sorted_cutset(g, x);
  std::vector<VertexSet> safe = safe_components(g, xs, inst.k);
  const std::size_t need = 4 * static_cast<std::size_t>(inst.k) + 2;
  if (safe.size() < need) {
    return NotApplicable{std::to_string(safe.size()) + " safe components, " +
                         std::to_string(need) + " needed"};
  }
  for (const auto& c : safe) {
    bool token_free = std::none_of(c.begin(), c.end(), [&](VertexId v) {
      return inst.source.weight(v) > 0 || inst.target.weight(v) > 0;
    });
    if (!token_free) continue;
    Rewrite rw;
    rw.removals = c;
    std::vector<VertexId> witness = xs;
    witness.insert(witness.end(), c.begin(), c.end());
    auto [out, entry] = apply_rule_rewrite(inst, "r6", witness, rw);
    return Reduced{std::move(out), std::move(entry)};
  }
  return NotApplicable{"every safe component carries a token"};
}

RuleOutcome rule_r6_auto(const Instance& inst, std::size_t max_cutset) {
  if (!inst.is_classic()) return NotApplicable{"R6 needs a classic instance"};
  const GalacticGraph& g = inst.graph;
  const std::size_t need = 4 * static_cast<std::size_t>(inst.k) + 2;
  const std::size_t n = g.size();
  for (std::size_t size = 1; size <= std::min(max_cutset, kMaxCutset); ++size) {
    if (size > n) break;
    std::vector<std::size_t> pick(size);
    for (std::size_t i = 0; i < size; ++i) pick[i] = i;
    while (true) {
      VertexSet x;
      for (auto i : pick) x.push_back(g.id(i));
      if (connected_components(g, x).size() >= need) {
        RuleOutcome o = rule_r6(inst, x);
        if (applied(o)) return o;
      }
      std::size_t i = size;
      while (i > 0 && pick[i - 1] == n - size + i - 1) --i;
      if (i == 0) break;
      ++pick[i - 1];
      for (std::size_t j = i; j < size; ++j) pick[j] = pick[j - 1] + 1;
    }
  }
  return NotApplicable{"no cutset with enough safe components"};
}

std::vector<Journey> extract_journeys(const std::vector<Move>& witness,
                                      const Instance& inst,
                                      const VertexSet& x) {
  if (!inst.is_classic()) {
    throw Error(ErrorCode::kInvalidArgument, "journeys need a classic instance");
  }
  check_witness(inst, witness);
  const GalacticGraph& g = inst.graph;
  VertexSet xs = make_set(x);
  std::vector<char> in_x = mask_of(g, xs);

  // history[c][t]: vertex of token t in configuration c.
  std::vector<std::vector<VertexId>> history{inst.source.support()};
  for (const Move& m : witness) {
    std::vector<VertexId> next = history.back();
    for (auto& v : next) {
      if (v == m.from) {
        v = m.to;
        break;
      }
    }
    history.push_back(std::move(next));
  }
  const std::size_t tokens = history.front().size();

  std::vector<int> comp(g.size(), -1);
  std::vector<VertexSet> comps = connected_components(g, xs);
  for (std::size_t c = 0; c < comps.size(); ++c) {
    for (VertexId v : comps[c]) comp[g.index(v)] = static_cast<int>(c);
  }

  // True when a token other than t sits in X next to a vertex of `walk`
  // (positions lo..hi) in some configuration of [from, to].
  auto x_conflict = [&](std::size_t t, const std::vector<VertexId>& walk,
                        std::size_t lo, std::size_t hi, std::size_t from,
                        std::size_t to) {
    std::vector<char> near(g.size(), 0);
    for (std::size_t p = lo; p <= hi; ++p) {
      for (auto j : g.neighbors(g.index(walk[p]))) near[j] = 1;
    }
    for (std::size_t c = from; c <= to; ++c) {
      for (std::size_t o = 0; o < tokens; ++o) {
        if (o == t) continue;
        std::size_t i = g.index(history[c][o]);
        if (in_x[i] && near[i]) return true;
      }
    }
    return false;
  };
  // True when a token other than t is on or next to a vertex of `walk`
  // (positions lo..hi) in some configuration of [from, to].
  auto any_conflict = [&](std::size_t t, const std::vector<VertexId>& walk,
                          std::size_t lo, std::size_t hi, std::size_t from,
                          std::size_t to) {
    std::vector<char> near(g.size(), 0);
    for (std::size_t p = lo; p <= hi; ++p) {
      std::size_t i = g.index(walk[p]);
      near[i] = 1;
      for (auto j : g.neighbors(i)) near[j] = 1;
    }
    for (std::size_t c = from; c <= to; ++c) {
      for (std::size_t o = 0; o < tokens; ++o) {
        if (o != t && near[g.index(history[c][o])]) return true;
      }
    }
    return false;
  };

  std::vector<Journey> out;
  for (std::size_t t = 0; t < tokens; ++t) {
    std::size_t c = 0;
    while (c < history.size()) {
      int h = comp[g.index(history[c][t])];
      if (h < 0) {
        ++c;
        continue;
      }
      Journey j;
      j.token = t;
      j.component = comps[h].front();
      j.first_config = c;
      while (c < history.size() && comp[g.index(history[c][t])] == h) {
        j.vertices.push_back(history[c][t]);
        ++c;
      }
      for (std::size_t p = 0; p < j.vertices.size();) {
        std::size_t q = p;
        while (q + 1 < j.vertices.size() && j.vertices[q + 1] == j.vertices[p]) {
          ++q;
        }
        if (q > p) {
          j.waiting.push_back({j.walk.size(), j.vertices[p], j.first_config + p,
                               j.first_config + q});
        }
        j.walk.push_back(j.vertices[p]);
        p = q + 1;
      }
      const std::size_t w = j.waiting.size();
      auto upto = [&](std::size_t k) {
        return k < w ? j.waiting[k].walk_pos : j.walk.size() - 1;
      };
      if (w > 0) {
        j.x_important.push_back(0);
        for (std::size_t i = 0;;) {
          std::size_t found = w;
          for (std::size_t k = i + 1; k < w && found == w; ++k) {
            if (x_conflict(t, j.walk, j.waiting[i].walk_pos, upto(k + 1),
                           j.waiting[i].last, j.waiting[k].last)) {
              found = k;
            }
          }
          if (found == w) break;
          j.x_important.push_back(found);
          i = found;
        }
        j.important.push_back(0);
        for (std::size_t i = 0; i + 1 < w;) {
          std::size_t best = i + 1;
          for (std::size_t k = i + 2; k < w; ++k) {
            if (any_conflict(t, j.walk, j.waiting[i].walk_pos,
                             j.waiting[k].walk_pos, j.waiting[i].last,
                             j.waiting[k].first)) {
              break;
            }
            best = k;
          }
          j.important.push_back(best);
          i = best;
        }
      }
      out.push_back(std::move(j));
    }
  }
  return out;
}

}  // namespace gts
