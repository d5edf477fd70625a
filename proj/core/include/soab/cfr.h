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

#ifndef SOAB_CFR_H_
#define SOAB_CFR_H_

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "soab/abstracted_game.h"
#include "soab/strategy.h"

namespace soab {

// kVanilla: simultaneous updates, regret matching, uniform averaging.
// kPlus: alternating updates, clamped regrets, linearly weighted averaging.
enum class CfrVariant { kVanilla, kPlus };

std::string ToString(CfrVariant v);
CfrVariant ParseCfrVariant(std::string_view s);  // throws ParameterError

struct CfrOptions {
  CfrVariant variant = CfrVariant::kVanilla;
  int iterations = 1000;
  int checkpoint_every = 0;  // 0: only the final iteration
  std::uint64_t seed = 0;    // unused by the deterministic variants
  double memory_limit_gb = 4.0;
};

// Iterations at which a run of `iterations` reports, ascending and always
// ending with `iterations`.
std::vector<int> CheckpointSchedule(int iterations, int every);

// Full-width CFR over the public tree of an abstracted game. Each pass
// carries one reach vector per player over all hole hands and reads the
// acting player's strategy through its bucket table.
class CfrSolver {
 public:
  CfrSolver(const AbstractedGame& game, CfrOptions options);

  // Bytes of regret, average and current-strategy tables the solver would allocate.
  static double TableBytes(const AbstractedGame& game);

  void Iterate();
  // Runs to options.iterations, calling `checkpoint(t)` at each scheduled
  // iteration.
  void Solve(const std::function<void(int)>& checkpoint = {});

  int iteration() const { return iteration_; }
  const CfrOptions& options() const { return options_; }
  const AbstractedGame& game() const { return game_; }

  StrategyProfile AverageStrategy() const;
  StrategyProfile CurrentStrategy() const;
  // Cumulative regrets of player p in `phase`, laid out [slot][bucket].
  const std::vector<double>& Regrets(Actor p, int phase) const { return regret_[p][phase - 1]; }
  // Unnormalized average-strategy sums, same layout.
  const std::vector<double>& AverageSums(Actor p, int phase) const { return average_[p][phase - 1]; }

 private:
  struct Level {
    std::vector<double> sigma;   // actions x hands
    std::vector<double> values;  // 2 x actions x hands
    std::vector<double> reach;   // 2 x hands
  };

  void Walk(int node, int board, const double* r0, const double* r1, double* v0, double* v1,
            int depth);
  // Values for update_ only, as needed by alternating passes.
  void WalkOne(int node, int board, const double* r0, const double* r1, double* v, int depth);
  void RefreshCurrent(Actor p);
  void ClampRegrets(Actor p);

  const AbstractedGame& game_;
  CfrOptions options_;
  int iteration_ = 0;
  int update_ = -1;  // player updated by this pass; -1 for both
  double avg_weight_ = 1;
  std::array<std::vector<std::vector<double>>, 2> regret_;
  std::array<std::vector<std::vector<double>>, 2> average_;
  // Strategy of the current iteration, fixed for the whole pass.
  std::array<std::vector<std::vector<double>>, 2> current_;
  std::vector<Level> levels_;
  std::vector<double> root_;
};

}  // namespace soab

#endif  // SOAB_CFR_H_
