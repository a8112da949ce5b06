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

#include "gts/hardness.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>

namespace gts {

namespace {

std::vector<std::string_view> words_of(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' ||
                               line[i] == '\r')) {
      ++i;
    }
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' &&
           line[j] != '\r') {
      ++j;
    }
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

std::uint32_t number(std::string_view w, int line) {
  std::uint32_t v = 0;
  auto [ptr, ec] = std::from_chars(w.data(), w.data() + w.size(), v);
  if (ec != std::errc() || ptr != w.data() + w.size()) {
    throw ParseError(line, "expected a non-negative integer, got '" +
                               std::string(w) + "'");
  }
  return v;
}

MisInstance::Vertex class_vertex(std::string_view w, int line) {
  auto colon = w.find(':');
  if (colon == std::string_view::npos) {
    throw ParseError(line, "expected <class>:<index>, got '" +
                               std::string(w) + "'");
  }
  return {number(w.substr(0, colon), line), number(w.substr(colon + 1), line)};
}

std::uint64_t choose2(std::uint64_t k) { return k * (k - 1) / 2; }

// Subgroup of class i's gadget that serves the pair {i, j}; 0-based.
std::uint32_t subgroup(std::uint32_t i, std::uint32_t j) {
  return j < i ? j - 1 : j - 2;
}

}  // namespace

void MisInstance::normalize() {
  for (auto& [a, b] : edges) {
    for (const Vertex& v : {a, b}) {
      if (v.cls < 1 || v.cls > k || v.idx < 1 || v.idx > n) {
        throw Error(ErrorCode::kInvalidArgument,
                    "vertex " + std::to_string(v.cls) + ":" +
                        std::to_string(v.idx) + " out of range");
      }
    }
    if (a.cls == b.cls) {
      throw Error(ErrorCode::kInvalidArgument,
                  "edges inside a class are implicit");
    }
    if (b < a) std::swap(a, b);
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
}

bool MisInstance::adjacent(Vertex a, Vertex b) const {
  if (a.cls == b.cls) return a.idx != b.idx;
  if (b < a) std::swap(a, b);
  return std::binary_search(edges.begin(), edges.end(), std::make_pair(a, b));
}

std::uint64_t MisInstance::non_edges(std::uint32_t i, std::uint32_t j) const {
  std::uint64_t count = 0;
  for (std::uint32_t a = 1; a <= n; ++a) {
    for (std::uint32_t b = 1; b <= n; ++b) {
      if (!adjacent({i, a}, {j, b})) ++count;
    }
  }
  return count;
}

std::uint64_t MisInstance::non_edges() const {
  std::uint64_t total = 0;
  for (std::uint32_t i = 1; i <= k; ++i) {
    for (std::uint32_t j = i + 1; j <= k; ++j) total += non_edges(i, j);
  }
  return total;
}

MisInstance parse_mis(std::string_view text) {
  MisInstance mis;
  bool header = false;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    auto w = words_of(line);
    if (w.empty()) continue;
    if (!header) {
      if (w.size() != 4 || w[0] != "p" || w[1] != "mis") {
        throw ParseError(line_no, "expected header 'p mis <k> <n>'");
      }
      mis.k = number(w[2], line_no);
      mis.n = number(w[3], line_no);
      header = true;
      continue;
    }
    if (w[0] != "e" || w.size() != 3) {
      throw ParseError(line_no, "expected 'e <i>:<a> <j>:<b>'");
    }
    auto a = class_vertex(w[1], line_no);
    auto b = class_vertex(w[2], line_no);
    for (const auto& v : {a, b}) {
      if (v.cls < 1 || v.cls > mis.k || v.idx < 1 || v.idx > mis.n) {
        throw ParseError(line_no, "vertex out of range");
      }
    }
    if (a.cls == b.cls) {
      throw ParseError(line_no, "edges inside a class are implicit");
    }
    mis.edges.emplace_back(a, b);
  }
  if (!header) throw ParseError(0, "missing header 'p mis <k> <n>'");
  mis.normalize();
  return mis;
}

std::string format_mis(const MisInstance& mis) {
  std::ostringstream out;
  out << "p mis " << mis.k << ' ' << mis.n << '\n';
  for (const auto& [a, b] : mis.edges) {
    out << "e " << a.cls << ':' << a.idx << ' ' << b.cls << ':' << b.idx
        << '\n';
  }
  return out.str();
}

SplitSizes expected_split_sizes(std::uint64_t k, std::uint64_t n,
                                std::uint64_t mbar) {
  SplitSizes s;
  s.c = n * k * k + mbar + 1;
  s.u = k * k + choose2(k) + 1;
  s.d = k * (n * (k - 1) + 1) + choose2(k) + 1;
  s.k_prime = s.u;
  return s;
}

SplitInstance build_split_instance(const MisInstance& input) {
  if (input.k < 2 || input.n < 2) {
    throw Error(ErrorCode::kInvalidArgument, "hardness needs k >= 2, n >= 2");
  }
  MisInstance mis = input;
  mis.normalize();
  const std::uint32_t k = mis.k, n = mis.n;

  // Positions inside C, U and D in construction order; ids come later.
  struct Sel {
    std::vector<std::uint32_t> u;
    std::vector<std::vector<std::uint32_t>> c, d;
    std::uint32_t d_lock = 0;
  };
  struct Ne {
    std::uint32_t i, j, u, d;
    std::uint32_t first;  // C position where M starts.
    std::vector<std::uint32_t> m;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
  };
  std::uint32_t nc = 0, nu = 0, nd = 0;
  std::vector<Sel> sel(k);
  for (auto& g : sel) {
    for (std::uint32_t j = 0; j < k; ++j) g.u.push_back(nu++);
    g.c.assign(k, {});
    for (auto& grp : g.c) {
      for (std::uint32_t q = 0; q < n; ++q) grp.push_back(nc++);
    }
    g.d.assign(k - 1, {});
    for (auto& grp : g.d) {
      for (std::uint32_t q = 0; q < n; ++q) grp.push_back(nd++);
    }
    g.d_lock = nd++;
  }
  std::vector<Ne> ne;
  for (std::uint32_t i = 1; i <= k; ++i) {
    for (std::uint32_t j = i + 1; j <= k; ++j) {
      Ne g{i, j, nu++, nd++, nc, {}, {}};
      for (std::uint32_t a = 1; a <= n; ++a) {
        for (std::uint32_t b = 1; b <= n; ++b) {
          if (mis.adjacent({i, a}, {j, b})) continue;
          g.m.push_back(nc++);
          g.pairs.emplace_back(a, b);
        }
      }
      ne.push_back(std::move(g));
    }
  }
  const std::uint32_t sc = nc++, su = nu++, sd = nd++;

  auto cid = [&](std::uint32_t p) { return static_cast<VertexId>(p + 1); };
  auto uid = [&](std::uint32_t p) { return static_cast<VertexId>(nc + p + 1); };
  auto did = [&](std::uint32_t p) {
    return static_cast<VertexId>(nc + nu + p + 1);
  };

  std::set<std::pair<VertexId, VertexId>> edges;
  auto add = [&](VertexId a, VertexId b) {
    edges.emplace(std::min(a, b), std::max(a, b));
  };
  for (std::uint32_t a = 0; a < nc; ++a) {
    for (std::uint32_t b = a + 1; b < nc; ++b) add(cid(a), cid(b));
  }
  // A U vertex sees every clique vertex from its own group onwards; the
  // switch vertex only c_|C|.
  auto u_from = [&](std::uint32_t u, std::uint32_t first) {
    for (std::uint32_t c = first; c < nc; ++c) add(uid(u), cid(c));
  };
  for (std::uint32_t i = 0; i < k; ++i) {
    const Sel& g = sel[i];
    for (std::uint32_t j = 0; j < k; ++j) u_from(g.u[j], g.c[j].front());
    const std::uint32_t first_ci = g.c.front().front();
    for (std::uint32_t j = 0; j + 1 < k; ++j) {
      for (std::uint32_t q = 0; q < n; ++q) {
        VertexId d = did(g.d[j][q]);
        for (std::uint32_t c = 0; c < first_ci; ++c) add(d, cid(c));
        add(d, cid(g.c[j][q]));
        for (std::uint32_t jj = 0; jj < j; ++jj) {
          for (std::uint32_t c : g.c[jj]) add(d, cid(c));
        }
        for (std::uint32_t jj = j + 1; jj < k; ++jj) {
          for (std::uint32_t qq = 0; qq < n; ++qq) {
            if (qq != q) add(d, cid(g.c[jj][qq]));
          }
        }
      }
    }
    VertexId lock = did(g.d_lock);
    for (std::uint32_t c = 0; c < first_ci; ++c) add(lock, cid(c));
    for (const auto& grp : g.c) {
      for (std::uint32_t c : grp) add(lock, cid(c));
    }
  }
  for (const Ne& g : ne) {
    const std::uint32_t first = g.first;
    u_from(g.u, first);
    for (std::uint32_t c = 0; c < first; ++c) add(did(g.d), cid(c));
    for (std::uint32_t c : g.m) add(did(g.d), cid(c));
    const auto& di = sel[g.i - 1].d[subgroup(g.i, g.j)];
    const auto& dj = sel[g.j - 1].d[subgroup(g.j, g.i)];
    for (std::size_t x = 0; x < g.m.size(); ++x) {
      auto [a, b] = g.pairs[x];
      for (std::uint32_t q = 0; q < n; ++q) {
        if (q + 1 != a) add(cid(g.m[x]), did(di[q]));
        if (q + 1 != b) add(cid(g.m[x]), did(dj[q]));
      }
    }
  }
  add(uid(su), cid(sc));
  add(did(sd), cid(sc));

  SplitInstance out;
  out.mis = mis;
  SplitLayout& lay = out.layout;
  for (std::uint32_t p = 0; p < nc; ++p) lay.c.push_back(cid(p));
  for (std::uint32_t p = 0; p < nu; ++p) lay.u.push_back(uid(p));
  for (std::uint32_t p = 0; p < nd; ++p) lay.d.push_back(did(p));
  for (const Sel& g : sel) {
    SelectionGadget s;
    for (auto p : g.u) s.u.push_back(uid(p));
    for (const auto& grp : g.c) {
      s.c.emplace_back();
      for (auto p : grp) s.c.back().push_back(cid(p));
    }
    for (const auto& grp : g.d) {
      s.d.emplace_back();
      for (auto p : grp) s.d.back().push_back(did(p));
    }
    s.d_lock = did(g.d_lock);
    lay.selection.push_back(std::move(s));
  }
  for (const Ne& g : ne) {
    NonEdgeGadget s{g.i, g.j, uid(g.u), did(g.d), {}};
    for (auto p : g.m) s.m.push_back(cid(p));
    lay.non_edge.push_back(std::move(s));
  }

  std::vector<std::pair<VertexId, VertexKind>> vertices;
  const VertexId total = nc + nu + nd;
  for (VertexId v = 1; v <= total; ++v) {
    vertices.emplace_back(v, VertexKind::kPlanet);
  }
  Instance& inst = out.instance;
  inst.graph = GalacticGraph(
      std::move(vertices),
      std::vector<std::pair<VertexId, VertexId>>(edges.begin(), edges.end()));
  inst.k = nu;
  inst.source = TokenConfig::FromVertices(lay.u);
  VertexSet t(lay.u.begin(), lay.u.end() - 1);
  t.push_back(did(sd));
  inst.target = TokenConfig::FromVertices(make_set(t));
  inst.validate();
  return out;
}

std::string check_split_structure(const SplitInstance& s) {
  const GalacticGraph& g = s.instance.graph;
  const SplitLayout& lay = s.layout;
  VertexSet all = make_set(lay.c);
  VertexSet side;
  side.insert(side.end(), lay.u.begin(), lay.u.end());
  side.insert(side.end(), lay.d.begin(), lay.d.end());
  side = make_set(side);
  if (side.size() != lay.u.size() + lay.d.size()) return "U and D overlap";
  VertexSet both;
  std::set_union(all.begin(), all.end(), side.begin(), side.end(),
                 std::back_inserter(both));
  if (both.size() != all.size() + side.size()) return "C meets U u D";
  if (!std::equal(both.begin(), both.end(), g.ids().begin(), g.ids().end())) {
    return "C u U u D is not the vertex set";
  }
  for (std::size_t a = 0; a < lay.c.size(); ++a) {
    for (std::size_t b = a + 1; b < lay.c.size(); ++b) {
      if (!g.adjacent_ids(lay.c[a], lay.c[b])) return "C is not a clique";
    }
  }
  for (VertexId v : side) {
    for (VertexId w : g.neighbor_ids(v)) {
      if (std::binary_search(side.begin(), side.end(), w)) {
        return "U u D is not independent";
      }
    }
  }
  return "";
}

bool has_multicolored_independent_set(const MisInstance& mis) {
  std::vector<std::uint32_t> pick(mis.k, 1);
  // Odometer over one vertex per class with early pruning.
  std::size_t depth = 0;
  auto consistent = [&](std::size_t upto) {
    for (std::size_t a = 0; a < upto; ++a) {
      if (mis.adjacent({static_cast<std::uint32_t>(a + 1), pick[a]},
                       {static_cast<std::uint32_t>(upto + 1), pick[upto]})) {
        return false;
      }
    }
    return true;
  };
  if (mis.k == 0) return true;
  while (true) {
    if (pick[depth] > mis.n) {
      if (depth == 0) return false;
      pick[depth] = 1;
      ++pick[--depth];
      continue;
    }
    if (!consistent(depth)) {
      ++pick[depth];
      continue;
    }
    if (depth + 1 == mis.k) return true;
    ++depth;
  }
}

EquivalenceCheck check_equivalence(const MisInstance& mis,
                                   std::uint64_t budget) {
  EquivalenceCheck out;
  out.mis_yes = has_multicolored_independent_set(mis);
  auto split = build_split_instance(mis);
  Verdict v = solve(split.instance, budget);
  out.ts_yes = v.reachable;
  out.states = v.states;
  return out;
}

bool verify_equivalence_small(const MisInstance& mis, std::uint64_t budget) {
  return check_equivalence(mis, budget).agree();
}

WellBehavedReport well_behaved_check(const std::vector<Move>& witness,
                                     const SplitInstance& s) {
  WellBehavedReport rep;
  const Instance& inst = s.instance;
  const SplitLayout& lay = s.layout;
  rep.gadget_well_behaved.assign(lay.selection.size(), true);
  if (witness.empty()) {
    rep.vacuous = true;
    return rep;
  }

  // Replay, cutting out every stretch between two equal configurations.
  std::vector<TokenConfig> configs{inst.source};
  std::vector<Move> moves;
  std::map<TokenConfig, std::size_t> seen{{inst.source, 0}};
  for (std::size_t i = 0; i < witness.size(); ++i) {
    TokenConfig next;
    try {
      next = apply_move(inst.graph, configs.back(), witness[i]);
    } catch (const Error&) {
      rep.violations.push_back("move " + std::to_string(i + 1) + " (" +
                               std::to_string(witness[i].from) + " -> " +
                               std::to_string(witness[i].to) +
                               ") is not legal");
      return rep;
    }
    if (auto it = seen.find(next); it != seen.end()) {
      std::size_t keep = it->second;
      for (std::size_t j = keep + 1; j < configs.size(); ++j) {
        seen.erase(configs[j]);
      }
      configs.resize(keep + 1);
      moves.resize(keep);
      ++rep.loops_removed;
      continue;
    }
    seen.emplace(next, configs.size());
    configs.push_back(std::move(next));
    moves.push_back(witness[i]);
  }
  if (configs.back() != inst.target) {
    rep.violations.push_back("witness does not end at the target");
    return rep;
  }

  const std::size_t nu = lay.u.size();
  std::map<VertexId, std::size_t> u_pos;
  for (std::size_t i = 0; i < nu; ++i) u_pos[lay.u[i]] = i;
  VertexSet dset = make_set(lay.d);
  auto in_d = [&](VertexId v) {
    return std::binary_search(dset.begin(), dset.end(), v);
  };

  // Token identities follow their moves; token i starts on u_{i+1}.
  std::map<VertexId, std::size_t> token_at;
  for (std::size_t i = 0; i < nu; ++i) token_at[lay.u[i]] = i;
  std::vector<VertexId> where(lay.u.begin(), lay.u.end());
  std::vector<bool> moved(nu, false);

  auto canonical = [&](std::size_t free_prefix) {
    for (std::size_t i = 0; i < nu; ++i) {
      bool home = where[i] == lay.u[i];
      if (i < free_prefix ? !in_d(where[i]) : !home) return false;
    }
    return true;
  };
  const std::size_t k = lay.selection.size();
  for (std::size_t step = 0; step < moves.size(); ++step) {
    std::size_t t = token_at.at(moves[step].from);
    if (!moved[t]) {
      moved[t] = true;
      for (std::size_t j = 0; j < t; ++j) {
        if (!in_d(where[j])) {
          rep.ordering_holds = false;
          rep.violations.push_back(
              "token of u_" + std::to_string(t + 1) + " moves while the token of u_" +
              std::to_string(j + 1) + " is outside D");
          break;
        }
      }
    }
    token_at.erase(moves[step].from);
    token_at[moves[step].to] = t;
    where[t] = moves[step].to;
    if (!rep.alpha_found && canonical(k * k)) {
      rep.alpha_found = true;
      rep.alpha = step + 1;
    } else if (rep.alpha_found && !rep.beta_found && canonical(nu - 1)) {
      rep.beta_found = true;
      rep.beta = step + 1;
    }
  }
  if (!rep.alpha_found) rep.violations.push_back("no canonical set I_alpha");
  if (!rep.beta_found) rep.violations.push_back("no canonical set I_beta");
  if (!rep.alpha_found || !rep.beta_found) return rep;

  // Each gadget: one token per subgroup, all on a common row, plus the
  // lock, all still in place at I_beta. Later tokens may join D_i.
  rep.rows.assign(k, 0);
  const TokenConfig& at_alpha = configs[rep.alpha];
  for (std::size_t i = 0; i < k; ++i) {
    const SelectionGadget& g = lay.selection[i];
    auto fail = [&](const std::string& why) {
      if (rep.gadget_well_behaved[i]) {
        rep.violations.push_back("gadget " + std::to_string(i + 1) + ": " +
                                 why);
      }
      rep.gadget_well_behaved[i] = false;
    };
    VertexSet held;
    for (const auto& grp : g.d) held.insert(held.end(), grp.begin(), grp.end());
    held.push_back(g.d_lock);
    held = make_set(held);
    auto tokens_in = [&](const TokenConfig& c) {
      VertexSet out;
      for (VertexId v : held) {
        if (c.weight(v) > 0) out.push_back(v);
      }
      return out;
    };
    if (at_alpha.weight(g.d_lock) == 0) fail("lock token is not on D_L");
    std::size_t row = 0;
    for (std::size_t j = 0; j < g.d.size(); ++j) {
      std::size_t count = 0, q = 0;
      for (std::size_t p = 0; p < g.d[j].size(); ++p) {
        if (at_alpha.weight(g.d[j][p]) > 0) {
          ++count;
          q = p + 1;
        }
      }
      if (count != 1) {
        fail("subgroup " + std::to_string(j + 1) + " holds " +
             std::to_string(count) + " tokens");
      } else if (row == 0) {
        row = q;
      } else if (row != q) {
        fail("subgroups select different rows");
      }
    }
    if (rep.gadget_well_behaved[i]) rep.rows[i] = static_cast<std::uint32_t>(row);
    VertexSet fixed = tokens_in(at_alpha);
    for (std::size_t c = rep.alpha + 1; c <= rep.beta; ++c) {
      VertexSet now = tokens_in(configs[c]);
      if (!std::includes(now.begin(), now.end(), fixed.begin(), fixed.end())) {
        fail("tokens move between I_alpha and I_beta");
        break;
      }
    }
  }
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) {
      if (rep.rows[i] == 0 || rep.rows[j] == 0) continue;
      MisInstance::Vertex a{static_cast<std::uint32_t>(i + 1), rep.rows[i]};
      MisInstance::Vertex b{static_cast<std::uint32_t>(j + 1), rep.rows[j]};
      if (s.mis.adjacent(a, b)) {
        rep.violations.push_back("selected rows of classes " +
                                 std::to_string(i + 1) + " and " +
                                 std::to_string(j + 1) + " are adjacent");
      }
    }
  }
  return rep;
}

}  // namespace gts
