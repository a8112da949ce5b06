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

#include "gts/instance_io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <vector>

namespace gts {

namespace {

std::vector<std::string_view> split_words(std::string_view line) {
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

std::uint64_t to_number(std::string_view word, int line) {
  std::uint64_t value = 0;
  auto [ptr, ec] = std::from_chars(word.data(), word.data() + word.size(), value);
  if (ec != std::errc() || ptr != word.data() + word.size()) {
    throw ParseError(line, "expected a non-negative integer, got '" +
                               std::string(word) + "'");
  }
  return value;
}

VertexId to_id(std::string_view word, int line) {
  auto v = to_number(word, line);
  if (v == 0 || v > 0xffffffffULL) {
    throw ParseError(line, "vertex ids are positive 32-bit integers");
  }
  return static_cast<VertexId>(v);
}

void expect_words(const std::vector<std::string_view>& w, std::size_t count,
                  int line) {
  if (w.size() != count) {
    throw ParseError(line, "expected " + std::to_string(count) +
                               " fields on '" + std::string(w[0]) + "' line");
  }
}

}  // namespace

Instance parse_instance(std::string_view text) {
  bool have_header = false;
  std::uint64_t n = 0;
  std::uint64_t k = 0;
  std::map<VertexId, std::pair<VertexKind, int>> declared;
  std::vector<std::pair<std::pair<VertexId, VertexId>, int>> edges;
  std::map<VertexId, std::pair<Weight, int>> source;
  std::map<VertexId, std::pair<Weight, int>> target;
  std::map<VertexId, std::pair<std::vector<VertexId>, int>> rotation;

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
    auto w = split_words(line);
    if (w.empty()) continue;
    if (!have_header) {
      if (w[0] != "p" || w.size() != 4 || w[1] != "gts") {
        throw ParseError(line_no, "expected header 'p gts <n> <k>'");
      }
      n = to_number(w[2], line_no);
      k = to_number(w[3], line_no);
      if (k > 0xffffffffULL || n > 0xffffffffULL) {
        throw ParseError(line_no, "header value out of range");
      }
      have_header = true;
      continue;
    }
    if (w[0] == "n") {
      expect_words(w, 3, line_no);
      VertexId v = to_id(w[1], line_no);
      VertexKind kind;
      if (w[2] == "P") {
        kind = VertexKind::kPlanet;
      } else if (w[2] == "B") {
        kind = VertexKind::kBlackHole;
      } else {
        throw ParseError(line_no, "vertex kind must be P or B");
      }
      if (!declared.emplace(v, std::make_pair(kind, line_no)).second) {
        throw ParseError(line_no, "vertex " + std::to_string(v) +
                                      " declared twice");
      }
    } else if (w[0] == "e") {
      expect_words(w, 3, line_no);
      VertexId a = to_id(w[1], line_no);
      VertexId b = to_id(w[2], line_no);
      if (a == b) throw ParseError(line_no, "self loop");
      edges.push_back({{a, b}, line_no});
    } else if (w[0] == "s" || w[0] == "t") {
      expect_words(w, 3, line_no);
      VertexId v = to_id(w[1], line_no);
      auto weight = to_number(w[2], line_no);
      if (weight > 0xffffffffULL) throw ParseError(line_no, "weight too large");
      auto& dest = w[0] == "s" ? source : target;
      if (!dest.emplace(v, std::make_pair(static_cast<Weight>(weight), line_no))
               .second) {
        throw ParseError(line_no, "weight for vertex " + std::to_string(v) +
                                      " given twice");
      }
    } else if (w[0] == "r") {
      if (w.size() < 2) throw ParseError(line_no, "rotation needs a vertex");
      VertexId v = to_id(w[1], line_no);
      std::vector<VertexId> order;
      for (std::size_t i = 2; i < w.size(); ++i) {
        order.push_back(to_id(w[i], line_no));
      }
      if (!rotation.emplace(v, std::make_pair(order, line_no)).second) {
        throw ParseError(line_no, "rotation for vertex " + std::to_string(v) +
                                      " given twice");
      }
    } else if (w[0] == "p") {
      throw ParseError(line_no, "duplicate header");
    } else {
      throw ParseError(line_no, "unknown line type '" + std::string(w[0]) + "'");
    }
  }
  if (!have_header) throw ParseError(line_no, "missing header");

  std::set<VertexId> vertex_set;
  if (declared.size() == n) {
    for (const auto& [v, unused] : declared) vertex_set.insert(v);
  } else {
    for (VertexId v = 1; v <= n; ++v) vertex_set.insert(v);
    for (const auto& [v, info] : declared) {
      if (v > n) {
        throw ParseError(info.second,
                         "vertex " + std::to_string(v) + " exceeds n");
      }
    }
  }
  auto require_known = [&](VertexId v, int line) {
    if (!vertex_set.count(v)) {
      throw ParseError(line, "unknown vertex " + std::to_string(v));
    }
  };
  std::vector<std::pair<VertexId, VertexKind>> vertices;
  for (VertexId v : vertex_set) {
    auto it = declared.find(v);
    vertices.emplace_back(v, it == declared.end() ? VertexKind::kPlanet
                                                  : it->second.first);
  }
  std::vector<std::pair<VertexId, VertexId>> edge_pairs;
  std::set<std::pair<VertexId, VertexId>> seen;
  for (const auto& [e, line] : edges) {
    require_known(e.first, line);
    require_known(e.second, line);
    auto key = std::minmax(e.first, e.second);
    if (!seen.insert(key).second) {
      throw ParseError(line, "duplicate edge " + std::to_string(key.first) +
                                 " " + std::to_string(key.second));
    }
    edge_pairs.push_back(e);
  }
  Instance inst;
  inst.graph = GalacticGraph(std::move(vertices), edge_pairs);
  inst.k = static_cast<Weight>(k);
  std::vector<TokenConfig::Entry> s;
  std::vector<TokenConfig::Entry> t;
  for (const auto& [v, info] : source) {
    require_known(v, info.second);
    s.emplace_back(v, info.first);
  }
  for (const auto& [v, info] : target) {
    require_known(v, info.second);
    t.emplace_back(v, info.first);
  }
  inst.source = TokenConfig(std::move(s));
  inst.target = TokenConfig(std::move(t));
  if (!rotation.empty()) {
    RotationSystem rs;
    for (auto& [v, info] : rotation) {
      require_known(v, info.second);
      for (VertexId u : info.first) require_known(u, info.second);
      rs.order.emplace_back(v, std::move(info.first));
    }
    inst.rotation = std::move(rs);
  }
  inst.validate();
  return inst;
}

Instance read_instance_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(0, "cannot open " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_instance(buffer.str());
}

std::string serialize_instance(const Instance& inst) {
  std::ostringstream out;
  const auto& g = inst.graph;
  out << "p gts " << g.size() << ' ' << inst.k << '\n';
  for (std::size_t i = 0; i < g.size(); ++i) {
    out << "n " << g.id(i) << ' ' << (g.is_planet(i) ? 'P' : 'B') << '\n';
  }
  for (auto [a, b] : g.edge_list()) out << "e " << a << ' ' << b << '\n';
  for (auto [v, w] : inst.source.entries()) out << "s " << v << ' ' << w << '\n';
  for (auto [v, w] : inst.target.entries()) out << "t " << v << ' ' << w << '\n';
  if (inst.rotation) {
    for (const auto& [v, order] : inst.rotation->order) {
      out << "r " << v;
      for (VertexId u : order) out << ' ' << u;
      out << '\n';
    }
  }
  return out.str();
}

}  // namespace gts
