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

#ifndef GTS_HARNESS_HPP_
#define GTS_HARNESS_HPP_

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "gts/graph.hpp"
#include "gts/kernel_rules.hpp"

namespace gts {

using Rng = std::mt19937_64;

// Seed for trial `trial` of stream `stream`.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream,
                          std::uint64_t trial);

struct EnsembleParams {
  std::uint32_t min_vertices = 4;
  std::uint32_t max_vertices = 9;
  Weight max_k = 3;
  // Edge density is drawn uniformly from [min_density, max_density].
  double min_density = 0.15;
  double max_density = 0.6;
  double hole_prob = 0.25;
};

// Erdos-Renyi graph on ids 1..n with random black holes; a third of the
// samples are sparse (random tree plus a few chords) so that long planet
// paths show up. Token placements are rejection sampled; returns nullopt
// when no valid placement was found.
std::optional<Instance> random_galactic_instance(Rng& rng,
                                                 const EnsembleParams& p);

// Same, all planets.
std::optional<Instance> random_classic_instance(Rng& rng,
                                                const EnsembleParams& p);

struct HarnessConfig {
  std::vector<std::string> rules{"r1", "r2", "r3", "r4", "r5"};
  EnsembleParams ensemble;
  std::uint64_t seed = 1;
  std::uint32_t trials = 500;
  std::uint32_t max_attempts = 20000;  // Samples per trial before giving up.
  std::uint64_t state_budget = 0;
};

struct RuleTally {
  std::string rule;
  std::uint32_t applications = 0;
  std::uint32_t discrepancies = 0;
  std::uint32_t exhausted = 0;  // Trials that never found an application.
  std::uint64_t samples = 0;
};

struct HarnessSummary {
  std::vector<RuleTally> tallies;
  // First offending instance, serialized, with a one-line header.
  std::string first_failure;

  std::uint32_t discrepancies() const;
  std::string to_string() const;
};

// For each rule and trial, samples instances until the rule applies and
// compares oracle verdicts before and after. Rules in `rules` are looked up
// by id first, then among the basic rules.
HarnessSummary run_harness(const HarnessConfig& cfg,
                           const std::vector<NamedRule>& rules = {});

// Oracle comparison of one application; empty string when consistent,
// otherwise a description.
std::string check_application(const Instance& before, const Instance& after,
                              std::uint64_t budget = 0);

}  // namespace gts

#endif  // GTS_HARNESS_HPP_
