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

#ifndef GTS_TESTS_SIGNATURE_ORACLE_HPP_
#define GTS_TESTS_SIGNATURE_ORACLE_HPP_

#include <deque>
#include <set>
#include <tuple>
#include <vector>

#include "gts/graph.hpp"
#include "gts/multicomponent.hpp"

namespace gts::testing {

// Brute-force signature: explores walks from v one vertex at a time,
// deciding for every walk position whether it is the next anchor or part of
// a transition walk, memoised on (vertex, type prefix, role, walk trace).
inline Signature brute_force_signature(const GalacticGraph& g,
                                       const VertexSet& x, VertexId v,
                                       std::size_t ell) {
  auto trace = [&](VertexId u) {
    TraceMask m = 0;
    for (std::size_t b = 0; b < x.size(); ++b) {
      if (g.adjacent_ids(u, x[b])) m |= TraceMask{1} << b;
    }
    return m;
  };
  auto in_x = [&](VertexId u) {
    return std::find(x.begin(), x.end(), u) != x.end();
  };
  Signature out;
  if (trace(v) == 0) return out;

  // role: 0 = standing on an anchor, 1 = inside a transition walk.
  struct State {
    VertexId at;
    EllType prefix;
    int role;
    TraceMask acc;
    bool start;
    auto operator<=>(const State&) const = default;
  };
  std::set<State> seen;
  std::deque<State> queue;
  auto push = [&](State s) {
    if (seen.insert(s).second) queue.push_back(std::move(s));
  };
  EllType first;
  first.initial = trace(v);
  push({v, first, 0, 0, true});
  while (!queue.empty()) {
    State s = queue.front();
    queue.pop_front();
    if (s.role == 0 && trace(s.at) != 0) {
      EllType done = s.prefix;
      done.tail = kBottom;
      done.final_trace = trace(s.at);
      out.insert(done);
    }
    if (s.role == 0) {
      if (s.start && s.prefix.ell() < ell) {
        State stay = s;
        stay.start = false;
        stay.prefix.blocks.emplace_back(kBottom, trace(s.at));
        push(stay);
      }
    }
    for (VertexId u : g.neighbor_ids(s.at)) {
      if (in_x(u)) continue;
      TraceMask tu = trace(u);
      Slot y = s.role == 0 ? kBottom : static_cast<Slot>(s.acc);
      if (tu != 0) {
        EllType done = s.prefix;
        done.tail = y;
        done.final_trace = tu;
        out.insert(done);
      }
      if (s.prefix.ell() < ell) {
        State anchor{u, s.prefix, 0, 0, false};
        anchor.prefix.blocks.emplace_back(y, tu);
        push(anchor);
      }
      TraceMask acc = s.role == 0 ? tu : (s.acc | tu);
      push({u, s.prefix, 1, acc, false});
    }
  }
  return out;
}

}  // namespace gts::testing

#endif  // GTS_TESTS_SIGNATURE_ORACLE_HPP_
