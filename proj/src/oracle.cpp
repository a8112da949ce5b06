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

#include "gts/oracle.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <limits>
#include <queue>
#include <sstream>
#include <string>
#include <tuple>

namespace gts {

namespace {

using Pos = std::uint32_t;

// Flat store of canonical states (sorted position multisets of length k)
// with an open addressing index.
class StateStore {
 public:
  explicit StateStore(std::size_t k) : k_(k) { slots_.assign(1024, kEmpty); }

  std::size_t size() const { return count_; }
  const Pos* get(std::size_t i) const { return data_.data() + i * k_; }

  // Returns (index, inserted).
  std::pair<std::size_t, bool> insert(const Pos* s) {
    if ((count_ + 1) * 2 > slots_.size()) grow();
    std::size_t h = hash(s) & (slots_.size() - 1);
    while (slots_[h] != kEmpty) {
      if (std::equal(s, s + k_, get(slots_[h]))) return {slots_[h], false};
      h = (h + 1) & (slots_.size() - 1);
    }
    slots_[h] = count_;
    data_.insert(data_.end(), s, s + k_);
    return {count_++, true};
  }

  std::optional<std::size_t> find(const Pos* s) const {
    std::size_t h = hash(s) & (slots_.size() - 1);
    while (slots_[h] != kEmpty) {
      if (std::equal(s, s + k_, get(slots_[h]))) return slots_[h];
      h = (h + 1) & (slots_.size() - 1);
    }
    return std::nullopt;
  }

 private:
  static constexpr std::size_t kEmpty = std::numeric_limits<std::size_t>::max();

  std::size_t hash(const Pos* s) const {
    std::uint64_t h = 0x9e3779b97f4a7c15ULL;
    for (std::size_t i = 0; i < k_; ++i) {
      h ^= s[i] + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
      h *= 0xff51afd7ed558ccdULL;
    }
    return static_cast<std::size_t>(h ^ (h >> 29));
  }

  void grow() {
    std::vector<std::size_t> old(slots_.size() * 2, kEmpty);
    old.swap(slots_);
    for (std::size_t i = 0; i < count_; ++i) {
      std::size_t h = hash(get(i)) & (slots_.size() - 1);
      while (slots_[h] != kEmpty) h = (h + 1) & (slots_.size() - 1);
      slots_[h] = i;
    }
  }

  std::size_t k_;
  std::size_t count_ = 0;
  std::vector<Pos> data_;
  std::vector<std::size_t> slots_;
};

// Successor generation over canonical states.
class Mover {
 public:
  explicit Mover(const GalacticGraph& g) : g_(g), occupied_(g.size(), 0) {}

  // Calls emit(from, to, successor) in (from, to) order.
  template <typename Emit>
  void expand(const Pos* s, std::size_t k, Emit&& emit) {
    for (std::size_t i = 0; i < k; ++i) ++occupied_[s[i]];
    std::vector<Pos> next(s, s + k);
    for (std::size_t i = 0; i < k; ++i) {
      if (i > 0 && s[i] == s[i - 1]) continue;
      Pos u = s[i];
      for (auto v : g_.neighbors(u)) {
        if (g_.is_planet(v)) {
          if (occupied_[v]) continue;
          bool blocked = false;
          for (std::size_t j = 0; j < k && !blocked; ++j) {
            Pos t = s[j];
            if (t == u || !g_.is_planet(t)) continue;
            blocked = g_.adjacent(t, v);
          }
          if (blocked) continue;
        }
        std::copy(s, s + k, next.begin());
        next[i] = v;
        std::sort(next.begin(), next.end());
        emit(u, static_cast<Pos>(v), next.data());
      }
    }
    for (std::size_t i = 0; i < k; ++i) --occupied_[s[i]];
  }

 private:
  const GalacticGraph& g_;
  std::vector<std::uint32_t> occupied_;
};

std::vector<Pos> encode(const GalacticGraph& g, const TokenConfig& c) {
  std::vector<Pos> out;
  for (auto [v, w] : c.entries()) {
    auto i = g.index(v);
    for (Weight j = 0; j < w; ++j) out.push_back(static_cast<Pos>(i));
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::uint64_t resolve_budget(std::uint64_t budget) {
  return budget == 0 ? default_state_budget() : budget;
}

void check_instance(const Instance& inst) {
  require_valid_config(inst.graph, inst.source);
  require_valid_config(inst.graph, inst.target);
  if (inst.source.total() != inst.k || inst.target.total() != inst.k) {
    throw Error(ErrorCode::kMalformedConfig,
                "configuration total differs from k");
  }
}

std::vector<Move> rebuild(const GalacticGraph& g,
                          const std::vector<std::size_t>& parent,
                          const std::vector<Move>& via, std::size_t end) {
  std::vector<Move> out;
  for (std::size_t cur = end; cur != 0; cur = parent[cur]) {
    out.push_back(via[cur]);
  }
  std::reverse(out.begin(), out.end());
  for (auto& m : out) m = {g.id(m.from), g.id(m.to)};
  return out;
}

}  // namespace

std::uint64_t default_state_budget() {
  if (const char* env = std::getenv("GTS_STATE_BUDGET")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return v;
  }
  return kDefaultStateBudget;
}

std::vector<Move> legal_moves(const GalacticGraph& g, const TokenConfig& c) {
  require_valid_config(g, c);
  std::vector<Pos> s = encode(g, c);
  std::vector<Move> out;
  Mover mover(g);
  mover.expand(s.data(), s.size(), [&](Pos u, Pos v, const Pos*) {
    out.push_back({g.id(u), g.id(v)});
  });
  return out;
}

TokenConfig apply_move(const GalacticGraph& g, const TokenConfig& c, Move m) {
  auto from = g.find(m.from);
  auto to = g.find(m.to);
  if (!from || !to || !g.adjacent(*from, *to) || c.weight(m.from) == 0) {
    throw Error(ErrorCode::kMalformedWitness,
                "illegal move " + std::to_string(m.from) + " -> " +
                    std::to_string(m.to));
  }
  TokenConfig next = c.with(m.from, c.weight(m.from) - 1)
                         .with(m.to, c.weight(m.to) + 1);
  if (!is_galactic_independent(g, next)) {
    throw Error(ErrorCode::kMalformedWitness,
                "move " + std::to_string(m.from) + " -> " +
                    std::to_string(m.to) + " breaks independence");
  }
  return next;
}

void check_witness(const Instance& inst, const std::vector<Move>& witness) {
  TokenConfig cur = inst.source;
  for (const Move& m : witness) cur = apply_move(inst.graph, cur, m);
  if (cur != inst.target) {
    throw Error(ErrorCode::kMalformedWitness, "witness does not reach target");
  }
}

Verdict solve(const Instance& inst, std::uint64_t budget) {
  check_instance(inst);
  budget = resolve_budget(budget);
  const GalacticGraph& g = inst.graph;
  std::vector<Pos> start = encode(g, inst.source);
  std::vector<Pos> goal = encode(g, inst.target);
  Verdict verdict;
  if (start == goal) {
    verdict.reachable = true;
    verdict.states = 1;
    return verdict;
  }
  const std::size_t k = start.size();
  StateStore store(k);
  store.insert(start.data());
  std::vector<std::size_t> parent{0};
  std::vector<Move> via{Move{}};
  Mover mover(g);
  std::vector<Pos> current(k);
  for (std::size_t head = 0; head < store.size(); ++head) {
    std::copy(store.get(head), store.get(head) + k, current.begin());
    bool found = false;
    std::size_t found_at = 0;
    mover.expand(current.data(), k, [&](Pos u, Pos v, const Pos* next) {
      if (found) return;
      auto [idx, inserted] = store.insert(next);
      if (!inserted) return;
      parent.push_back(head);
      via.push_back({u, v});
      if (std::equal(next, next + k, goal.begin())) {
        found = true;
        found_at = idx;
      }
      if (store.size() > budget) {
        throw ResourceLimitError(store.size(),
                                 "state budget of " + std::to_string(budget) +
                                     " exceeded after " +
                                     std::to_string(store.size()) + " states");
      }
    });
    if (found) {
      verdict.reachable = true;
      verdict.witness = rebuild(g, parent, via, found_at);
      verdict.states = store.size();
      return verdict;
    }
  }
  verdict.states = store.size();
  return verdict;
}

Verdict solve_x_reduced(const Instance& inst, const VertexSet& x,
                        std::uint64_t budget) {
  check_instance(inst);
  budget = resolve_budget(budget);
  const GalacticGraph& g = inst.graph;
  std::vector<char> in_x(g.size(), 0);
  for (VertexId v : x) in_x[g.index(v)] = 1;
  std::vector<Pos> start = encode(g, inst.source);
  std::vector<Pos> goal = encode(g, inst.target);
  const std::size_t k = start.size();
  StateStore store(k);
  store.insert(start.data());
  using Cost = std::pair<std::uint64_t, std::uint64_t>;
  constexpr Cost kInf{std::numeric_limits<std::uint64_t>::max(), 0};
  std::vector<Cost> best{Cost{0, 0}};
  std::vector<char> done{0};
  std::vector<std::size_t> parent{0};
  std::vector<Move> via{Move{}};
  using Item = std::tuple<std::uint64_t, std::uint64_t, std::size_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<Item>> queue;
  queue.emplace(0, 0, 0);
  Mover mover(g);
  std::vector<Pos> current(k);
  Verdict verdict;
  while (!queue.empty()) {
    auto [cx, ct, head] = queue.top();
    queue.pop();
    if (done[head]) continue;
    done[head] = 1;
    std::copy(store.get(head), store.get(head) + k, current.begin());
    if (current == goal) {
      verdict.reachable = true;
      verdict.witness = rebuild(g, parent, via, head);
      verdict.states = store.size();
      return verdict;
    }
    mover.expand(current.data(), k, [&](Pos u, Pos v, const Pos* next) {
      Cost c{cx + ((in_x[u] || in_x[v]) ? 1 : 0), ct + 1};
      auto [idx, inserted] = store.insert(next);
      if (inserted) {
        best.push_back(kInf);
        done.push_back(0);
        parent.push_back(0);
        via.push_back(Move{});
        if (store.size() > budget) {
          throw ResourceLimitError(store.size(),
                                   "state budget of " +
                                       std::to_string(budget) + " exceeded");
        }
      }
      if (c < best[idx]) {
        best[idx] = c;
        parent[idx] = head;
        via[idx] = {u, v};
        queue.emplace(c.first, c.second, idx);
      }
    });
  }
  verdict.states = store.size();
  return verdict;
}

std::uint64_t count_configs(const GalacticGraph& g, Weight k) {
  std::vector<std::size_t> planets;
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (g.is_planet(i)) planets.push_back(i);
  }
  const std::uint64_t holes = g.num_holes();
  // by_size[s] = number of independent planet sets of size s.
  std::vector<std::uint64_t> by_size(k + 1, 0);
  std::vector<std::size_t> chosen;
  std::function<void(std::size_t)> rec = [&](std::size_t from) {
    ++by_size[chosen.size()];
    if (chosen.size() == k) return;
    for (std::size_t j = from; j < planets.size(); ++j) {
      bool ok = true;
      for (std::size_t c : chosen) {
        if (g.adjacent(c, planets[j])) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      chosen.push_back(planets[j]);
      rec(j + 1);
      chosen.pop_back();
    }
  };
  rec(0);
  auto multisets = [&](std::uint64_t r) -> std::uint64_t {
    if (holes == 0) return r == 0 ? 1 : 0;
    // C(r + holes - 1, r)
    std::uint64_t result = 1;
    for (std::uint64_t i = 1; i <= r; ++i) {
      result = result * (holes - 1 + i) / i;
    }
    return result;
  };
  std::uint64_t total = 0;
  for (Weight s = 0; s <= k; ++s) total += by_size[s] * multisets(k - s);
  return total;
}

std::string format_verdict(const Verdict& v) {
  std::ostringstream out;
  if (!v.reachable) {
    out << "NO\n";
    return out.str();
  }
  out << "YES " << v.witness.size() << '\n';
  for (const Move& m : v.witness) out << "move " << m.from << ' ' << m.to << '\n';
  return out.str();
}

}  // namespace gts
