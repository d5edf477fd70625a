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

#ifndef SOAB_EXPERIMENT_H_
#define SOAB_EXPERIMENT_H_

#include <array>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "soab/abstraction_map.h"
#include "soab/best_response.h"
#include "soab/cfr.h"
#include "soab/features.h"
#include "soab/game.h"
#include "soab/indexing.h"
#include "soab/strategy.h"

namespace soab {

// A hand abstraction algorithm with its parameters. `k` (kroi) and
// `buckets` (ehs, paaemd) hold one entry per phase.
struct AbstractionSpec {
  std::string algorithm = "paoi";  // none, li, paoi, kroi, froi, ehs, paaemd
  std::vector<int> k;
  std::vector<int> buckets;
  std::uint64_t seed = 0;
};

std::vector<std::string> AbstractionAlgorithms();
// Upper-case tag used in curves: IDENTITY, LI, PAOI, KROI, FROI, EHS, PAAEMD.
std::string AlgorithmTag(std::string_view algorithm);
// Whether the algorithm uses `seed`.
bool IsSeeded(std::string_view algorithm);

struct BuiltAbstraction {
  AbstractionMap map;
  std::vector<std::string> warnings;
};

// Throws ParameterError for unknown algorithms or malformed parameters.
BuiltAbstraction BuildAbstraction(const FeatureContext& ctx, const AbstractionSpec& spec);

enum class Scenario { kAsymmetric, kSymmetric };
std::string ToString(Scenario s);
Scenario ParseScenario(std::string_view s);  // throws ParameterError

struct ExperimentCurve {
  Scenario scenario = Scenario::kSymmetric;
  std::string algorithm;
  std::uint64_t seed = 0;
  int ante = 1;                               // for the milli-ante column
  std::vector<ExploitabilityReport> points;   // strictly increasing iterations

  const ExploitabilityReport& final() const { return points.back(); }
};

struct ExperimentResult {
  ExperimentCurve curve;
  // Symmetric: one profile. Asymmetric: the solves of (alpha_1, theta_2)
  // and (theta_1, alpha_2); the joint strategy takes player 1 from the
  // first and player 2 from the second.
  std::vector<StrategyProfile> strategies;
  std::vector<std::array<AbstractionMap, 2>> profiles;
};

struct ExperimentOptions {
  CfrOptions cfr;
  std::optional<double> game_value;
  // Called after each evaluated checkpoint.
  std::function<void(const std::string& stage, const ExploitabilityReport&)> progress;
};

// Both players abstracted by `alpha`.
ExperimentResult RunSymmetric(const Game& game, const ObservationIndexer& ix,
                              const std::array<AbstractionMap, 2>& alpha,
                              const ExperimentOptions& options);

// Each player's abstraction is tested against an opponent using `reference`
// (normally lossless): solves (alpha_1, ref_2) and (ref_1, alpha_2) and
// evaluates the joint strategy. When alpha equals the reference the two
// solves coincide and one is run.
ExperimentResult RunAsymmetric(const Game& game, const ObservationIndexer& ix,
                               const std::array<AbstractionMap, 2>& alpha,
                               const std::array<AbstractionMap, 2>& reference,
                               const ExperimentOptions& options);

// Evaluates a joint strategy assembled as in RunAsymmetric.
ExploitabilityReport EvaluateAsymmetric(const Game& game, const ObservationIndexer& ix,
                                        const std::array<std::array<AbstractionMap, 2>, 2>& profiles,
                                        const std::array<StrategyProfile, 2>& strategies,
                                        std::optional<double> game_value = std::nullopt);

// Curve CSV with header
// scenario,algorithm,seed,iteration,eps1_chips,eps2_chips,eps_chips,eps_milliante.
void WriteCurveCsv(std::ostream& out, const std::vector<ExperimentCurve>& curves,
                   bool header = true);
// Rows grouped back into curves by (scenario, algorithm, seed). The ante is
// recovered from the milli-ante column. Throws FormatError on bad input.
std::vector<ExperimentCurve> ReadCurveCsv(std::istream& in);

// JSON summary with the final values of every curve.
std::string SummaryJson(const std::vector<ExperimentCurve>& curves);

}  // namespace soab

#endif  // SOAB_EXPERIMENT_H_
