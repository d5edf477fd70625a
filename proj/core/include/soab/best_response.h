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

#ifndef SOAB_BEST_RESPONSE_H_
#define SOAB_BEST_RESPONSE_H_

#include <optional>
#include <string>
#include <vector>

#include "soab/abstracted_game.h"
#include "soab/strategy.h"

namespace soab {

// Chips per hand. br1 is player 1's best-response value against sigma_2 and
// br2 player 2's against sigma_1. With game value v for player 1,
// eps1 = v + br2 and eps2 = br1 - v measure each player's own strategy;
// eps is their mean, which does not depend on v.
struct ExploitabilityReport {
  int iteration = 0;
  double br1 = 0;
  double br2 = 0;
  double game_value = 0;
  double eps1 = 0;
  double eps2 = 0;
  double eps = 0;
  std::string abstraction1;
  std::string abstraction2;
};

// Report from both best-response values; the midpoint game value is used
// when none is given.
ExploitabilityReport MakeReport(double br1, double br2,
                                std::optional<double> game_value = std::nullopt);

// Exact best responses in the original game against strategies expressed
// over an abstracted game's buckets. Not thread-safe.
class Evaluator {
 public:
  explicit Evaluator(const AbstractedGame& game);

  // Max over all strategies of `responder` of its expected payoff against
  // the other player's part of sigma. Throws ValidationError if sigma does
  // not fit the game or is not normalized.
  double BestResponseValue(const StrategyProfile& sigma, Actor responder) const;
  // Player 1's expected payoff under sigma.
  double ExpectedValue(const StrategyProfile& sigma) const;
  // Without a game value the midpoint (br1 - br2) / 2 is used, which splits
  // eps evenly.
  ExploitabilityReport Exploitability(const StrategyProfile& sigma,
                                      std::optional<double> game_value = std::nullopt) const;

 private:
  void Check(const StrategyProfile& sigma) const;
  void BrWalk(const StrategyProfile& sigma, Actor responder, int node, int board,
              const double* opp, double* out, int depth) const;
  void EvWalk(const StrategyProfile& sigma, int node, int board, const double* r0,
              const double* r1, double* v0, double* v1, int depth) const;

  const AbstractedGame& game_;
  mutable std::vector<std::vector<double>> levels_;
};

}  // namespace soab

#endif  // SOAB_BEST_RESPONSE_H_
