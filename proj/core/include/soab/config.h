// Copyright 2026 The SOAB Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SOAB_CONFIG_H_
#define SOAB_CONFIG_H_

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "soab/cfr.h"
#include "soab/experiment.h"
#include "soab/game.h"

namespace soab {

// Flat key=value experiment configuration. Blank lines and lines starting
// with '#' are ignored; unknown keys are errors.
//
//   game=numeral211            holes, ante, bet.phase1, bet.postflop, max_raises
//   abstraction.algorithm=paaemd
//   abstraction.k=0,1,2        abstraction.buckets=0,225,396
//   abstraction.seed=3         scenario=asymmetric
//   reference=auto             auto, none or li: the lossless side of asymmetric runs
//   cfr.variant=vanilla        cfr.iterations, cfr.checkpoint_every, cfr.seed,
//                              cfr.memory_limit_gb
//   game_value=-0.0759         optional, player 1's value for eps1 and eps2
//   seed=0                     master seed for unset sub-seeds
//   out=runs/paaemd3
struct ExperimentConfig {
  std::string game = "leduc";
  std::map<std::string, std::string> game_overrides;
  AbstractionSpec abstraction;
  Scenario scenario = Scenario::kSymmetric;
  std::string reference = "auto";
  CfrOptions cfr;
  std::optional<double> game_value;
  std::uint64_t seed = 0;
  std::string out = "out";

  // Explicit sub-seeds; unset ones derive from `seed`.
  std::optional<std::uint64_t> abstraction_seed;
  std::optional<std::uint64_t> cfr_seed;

  GameSpec MakeSpec() const;  // registry spec plus overrides
  // Copies with sub-seeds resolved.
  AbstractionSpec ResolvedAbstraction() const;
  CfrOptions ResolvedCfr() const;
};

// Sets one key; throws ParameterError for unknown keys or bad values.
void SetConfigKey(ExperimentConfig& config, std::string_view key, std::string_view value);

ExperimentConfig ParseConfig(std::istream& in, const std::string& source = "<config>");
ExperimentConfig LoadConfig(const std::string& path);  // DependencyError if absent
// Writes every key, so that ParseConfig(WriteConfig(c)) reproduces c.
void WriteConfig(std::ostream& out, const ExperimentConfig& config);

std::vector<int> ParseIntList(std::string_view key, std::string_view value);

}  // namespace soab

#endif  // SOAB_CONFIG_H_
