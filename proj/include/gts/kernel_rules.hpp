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

#ifndef GTS_KERNEL_RULES_HPP_
#define GTS_KERNEL_RULES_HPP_

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "gts/graph.hpp"
#include "gts/rewrite.hpp"

namespace gts {

struct Reduced {
  Instance instance;
  TraceEntry entry;
};

struct NotApplicable {
  std::string reason;
};

using RuleOutcome = std::variant<Reduced, NotApplicable>;

inline bool applied(const RuleOutcome& o) {
  return std::holds_alternative<Reduced>(o);
}

using RuleFn = std::function<RuleOutcome(const Instance&)>;

struct NamedRule {
  std::string id;
  RuleFn fn;
};

// Adjacent black holes are contracted into one.
RuleOutcome rule_r1(const Instance& inst);
// A weight-free black hole whose neighborhood is inside another black hole's
// neighborhood is deleted.
RuleOutcome rule_r2(const Instance& inst);
// A planet with at most one I_s/I_t vertex in its closed planet
// neighborhood is absorbed by an adjacent black hole.
RuleOutcome rule_r3(const Instance& inst);
// Twin planets.
RuleOutcome rule_r4(const Instance& inst);
// A token-free A-geodesic window of 5k edges is contracted into a black hole.
RuleOutcome rule_r5(const Instance& inst);

// Applies rules in priority order, restarting from the first after every
// success.
std::pair<Instance, ReductionTrace> exhaust(const Instance& inst,
                                            const std::vector<NamedRule>& rules);

std::vector<NamedRule> basic_rules(const std::vector<std::string>& ids);

struct AuditReport {
  bool ok = true;
  std::string violated;  // Empty when ok.
  std::vector<VertexId> witness;

  std::string to_string() const;
};

AuditReport audit(const Instance& inst);

// Single token instances: reachability is connectivity. Returns the
// canonical yes or no instance, or nullopt for k >= 2.
std::optional<Instance> decide_small_k(const Instance& inst);

// Classic instances only; exhausts R1-R5 (k <= 1 answered directly).
std::pair<Instance, ReductionTrace> bounded_degree_kernel(const Instance& inst);

}  // namespace gts

#endif  // GTS_KERNEL_RULES_HPP_
