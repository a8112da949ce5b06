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

#include "gts/harness.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "gts/instance_io.hpp"
#include "gts/oracle.hpp"

namespace gts {

namespace {

using Edges = std::vector<std::pair<VertexId, VertexId>>;

double uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

std::uint32_t pick(Rng& rng, std::uint32_t lo, std::uint32_t hi) {
  return std::uniform_int_distribution<std::uint32_t>(lo, hi)(rng);
}

Edges random_edges(Rng& rng, std::uint32_t n, const EnsembleParams& p) {
  Edges e;
  if (pick(rng, 0, 2) == 0) {
    // Path-biased tree plus sparse chords.
    std::vector<VertexId> perm(n);
    std::iota(perm.begin(), perm.end(), 1);
    std::shuffle(perm.begin(), perm.end(), rng);
    for (std::uint32_t i = 1; i < n; ++i) {
      std::uint32_t parent = uniform(rng, 0, 1) < 0.7 ? i - 1 : pick(rng, 0, i - 1);
      e.emplace_back(perm[parent], perm[i]);
    }
    for (VertexId a = 1; a <= n; ++a) {
      for (VertexId b = a + 1; b <= n; ++b) {
        if (uniform(rng, 0, 1) < 0.05) e.emplace_back(a, b);
      }
    }
    return e;
  }
  double density = uniform(rng, p.min_density, p.max_density);
  for (VertexId a = 1; a <= n; ++a) {
    for (VertexId b = a + 1; b <= n; ++b) {
      if (uniform(rng, 0, 1) < density) e.emplace_back(a, b);
    }
  }
  return e;
}

std::optional<TokenConfig> place_tokens(Rng& rng, const GalacticGraph& g,
                                        Weight k) {
  for (int attempt = 0; attempt < 20; ++attempt) {
    TokenConfig c;
    bool ok = true;
    for (Weight t = 0; t < k && ok; ++t) {
      bool placed = false;
      for (int tries = 0; tries < 20 && !placed; ++tries) {
        VertexId v = g.id(pick(rng, 0, static_cast<std::uint32_t>(g.size() - 1)));
        TokenConfig next = c.with(v, c.weight(v) + 1);
        if (is_galactic_independent(g, next)) {
          c = std::move(next);
          placed = true;
        }
      }
      ok = placed;
    }
    if (ok) return c;
  }
  return std::nullopt;
}

std::optional<Instance> random_instance(Rng& rng, const EnsembleParams& p,
                                        double hole_prob) {
  std::uint32_t n = pick(rng, p.min_vertices, p.max_vertices);
  Weight k = pick(rng, 1, p.max_k);
  std::vector<std::pair<VertexId, VertexKind>> vertices;
  for (VertexId v = 1; v <= n; ++v) {
    bool hole = uniform(rng, 0, 1) < hole_prob;
    vertices.emplace_back(v, hole ? VertexKind::kBlackHole : VertexKind::kPlanet);
  }
  Edges e = random_edges(rng, n, p);
  Instance inst;
  inst.graph = GalacticGraph(std::move(vertices), e);
  inst.k = k;
  auto s = place_tokens(rng, inst.graph, k);
  if (!s) return std::nullopt;
  auto t = place_tokens(rng, inst.graph, k);
  if (!t) return std::nullopt;
  inst.source = std::move(*s);
  inst.target = std::move(*t);
  return inst;
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream,
                          std::uint64_t trial) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed),
                    static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream),
                    static_cast<std::uint32_t>(trial),
                    static_cast<std::uint32_t>(trial >> 32)};
  std::uint32_t out[2];
  seq.generate(out, out + 2);
  return (static_cast<std::uint64_t>(out[0]) << 32) | out[1];
}

std::optional<Instance> random_galactic_instance(Rng& rng,
                                                 const EnsembleParams& p) {
  return random_instance(rng, p, p.hole_prob);
}

std::optional<Instance> random_classic_instance(Rng& rng,
                                                const EnsembleParams& p) {
  return random_instance(rng, p, 0.0);
}

std::string check_application(const Instance& before, const Instance& after,
                              std::uint64_t budget) {
  bool a = solve(before, budget).reachable;
  bool b = solve(after, budget).reachable;
  if (a == b) return {};
  std::ostringstream out;
  out << "verdict " << (a ? "YES" : "NO") << " became " << (b ? "YES" : "NO");
  return out.str();
}

std::uint32_t HarnessSummary::discrepancies() const {
  std::uint32_t d = 0;
  for (const auto& t : tallies) d += t.discrepancies;
  return d;
}

std::string HarnessSummary::to_string() const {
  std::ostringstream out;
  out << "rule,applications,discrepancies,exhausted,samples\n";
  for (const auto& t : tallies) {
    out << t.rule << ',' << t.applications << ',' << t.discrepancies << ','
        << t.exhausted << ',' << t.samples << '\n';
  }
  if (!first_failure.empty()) out << first_failure;
  return out.str();
}

HarnessSummary run_harness(const HarnessConfig& cfg,
                           const std::vector<NamedRule>& rules) {
  HarnessSummary summary;
  for (std::size_t r = 0; r < cfg.rules.size(); ++r) {
    const std::string& id = cfg.rules[r];
    RuleFn fn;
    for (const auto& named : rules) {
      if (named.id == id) fn = named.fn;
    }
    if (!fn) fn = basic_rules({id}).front().fn;
    RuleTally tally;
    tally.rule = id;
    for (std::uint32_t trial = 0; trial < cfg.trials; ++trial) {
      Rng rng(derive_seed(cfg.seed, r, trial));
      bool found = false;
      for (std::uint32_t attempt = 0; attempt < cfg.max_attempts && !found;
           ++attempt) {
        ++tally.samples;
        auto inst = random_galactic_instance(rng, cfg.ensemble);
        if (!inst) continue;
        std::string problem;
        std::optional<Instance> after;
        try {
          RuleOutcome o = fn(*inst);
          if (auto* red = std::get_if<Reduced>(&o)) after = red->instance;
        } catch (const Error& e) {
          problem = std::string("rule raised ") + e.what();
        }
        if (!after && problem.empty()) continue;
        found = true;
        ++tally.applications;
        if (problem.empty()) {
          problem = check_application(*inst, *after, cfg.state_budget);
        }
        if (problem.empty()) continue;
        ++tally.discrepancies;
        if (summary.first_failure.empty()) {
          std::ostringstream out;
          out << "# discrepancy rule " << id << " trial " << trial << ": "
              << problem << '\n'
              << serialize_instance(*inst);
          summary.first_failure = out.str();
        }
      }
      if (!found) ++tally.exhausted;
    }
    summary.tallies.push_back(std::move(tally));
  }
  return summary;
}

}  // namespace gts
