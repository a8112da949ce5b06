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

#include "gts/rewrite.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <string>

namespace gts {

VertexId fresh_id(const GalacticGraph& g) { return g.max_id() + 1; }

Instance apply_rewrite(const Instance& inst, const Rewrite& rw) {
  if (rw.trivial_no) return trivial_no_instance();
  if (rw.trivial_yes) return trivial_yes_instance();
  const GalacticGraph& g = inst.graph;
  std::map<VertexId, VertexId> image;  // Old id -> new id; absent = removed.
  std::map<VertexId, VertexKind> kinds;
  for (std::size_t i = 0; i < g.size(); ++i) {
    image[g.id(i)] = g.id(i);
    kinds[g.id(i)] = g.kind(i);
  }
  for (const Merge& m : rw.merges) {
    if (m.group.empty()) {
      throw Error(ErrorCode::kInvalidArgument, "empty merge group");
    }
    for (VertexId v : m.group) {
      auto it = image.find(v);
      if (it == image.end() || it->second != v) {
        throw Error(ErrorCode::kInvalidArgument,
                    "merge group names vertex " + std::to_string(v) +
                        " twice or unknown");
      }
      it->second = m.new_id;
      kinds.erase(v);
    }
    kinds[m.new_id] = m.kind;
  }
  for (VertexId v : rw.removals) {
    auto it = image.find(v);
    if (it == image.end()) {
      throw Error(ErrorCode::kInvalidArgument,
                  "removal of unknown vertex " + std::to_string(v));
    }
    if (it->second == v) kinds.erase(v);
    image.erase(it);
  }
  for (auto [v, kind] : rw.additions) {
    if (kinds.count(v)) {
      throw Error(ErrorCode::kInvalidArgument,
                  "added vertex " + std::to_string(v) + " already exists");
    }
    kinds[v] = kind;
  }
  std::vector<std::pair<VertexId, VertexKind>> vertices(kinds.begin(),
                                                        kinds.end());
  std::vector<std::pair<VertexId, VertexId>> edges;
  for (auto [a, b] : g.edge_list()) {
    auto ia = image.find(a);
    auto ib = image.find(b);
    if (ia == image.end() || ib == image.end()) continue;
    if (ia->second == ib->second) continue;
    if (!kinds.count(ia->second) || !kinds.count(ib->second)) continue;
    edges.emplace_back(ia->second, ib->second);
  }
  for (auto e : rw.new_edges) edges.push_back(e);

  auto map_config = [&](const TokenConfig& c) {
    std::vector<TokenConfig::Entry> out;
    for (auto [v, w] : c.entries()) {
      auto it = image.find(v);
      if (it != image.end() && kinds.count(it->second)) {
        out.emplace_back(it->second, w);
      }
    }
    return TokenConfig(std::move(out));
  };

  Instance out;
  out.graph = GalacticGraph(std::move(vertices), edges);
  out.k = static_cast<Weight>(static_cast<int>(inst.k) + rw.k_delta);
  out.source = map_config(inst.source);
  out.target = map_config(inst.target);
  if (rw == Rewrite{}) out.rotation = inst.rotation;
  out.validate();
  return out;
}

std::pair<Instance, TraceEntry> apply_rule_rewrite(
    const Instance& inst, std::string rule, std::vector<VertexId> witness,
    const Rewrite& rw, bool sound) {
  Instance out = apply_rewrite(inst, rw);
  TraceEntry entry;
  entry.rule = std::move(rule);
  entry.witness = std::move(witness);
  entry.rewrite = rw;
  entry.delta_planets = static_cast<int>(out.graph.num_planets()) -
                        static_cast<int>(inst.graph.num_planets());
  entry.delta_holes = static_cast<int>(out.graph.num_holes()) -
                      static_cast<int>(inst.graph.num_holes());
  entry.sound = sound;
  return {std::move(out), std::move(entry)};
}

Instance replay(const Instance& original, const ReductionTrace& trace) {
  Instance cur = original;
  for (const auto& e : trace.entries) cur = apply_rewrite(cur, e.rewrite);
  return cur;
}

std::string format_trace(const ReductionTrace& trace) {
  std::ostringstream out;
  for (const auto& e : trace.entries) {
    out << "rule " << e.rule << " witness";
    for (VertexId v : e.witness) out << ' ' << v;
    out << '\n';
    if (!e.sound) out << "# unsafe-thresholds\n";
  }
  return out.str();
}

}  // namespace gts
