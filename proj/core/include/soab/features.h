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

#ifndef SOAB_FEATURES_H_
#define SOAB_FEATURES_H_

#include <array>
#include <cstdint>
#include <functional>
#include <memory>
#include <mutex>
#include <vector>

#include "soab/indexing.h"
#include "soab/soog.h"

namespace soab {

// Exact count vector with its shared denominator. Under uniform dealing the
// chance weights are proportional to counts, so equality of reduced vectors
// is equality of the underlying distributions.
struct OutcomeFeature {
  int phase = 0;
  std::vector<std::int64_t> counts;
  std::int64_t denominator = 0;

  // Divides counts and denominator by their common gcd.
  OutcomeFeature Reduced() const;
  bool operator==(const OutcomeFeature&) const = default;
};

// (loss, tie, win) counts, in that order.
using Wtl = std::array<std::int64_t, 3>;

// Shared, lazily built tables over one game's canonical observations:
// final-phase outcome counts, successor lists, and showdown counts summed
// over every final extension. Tables are built once and then read-only.
class FeatureContext {
 public:
  explicit FeatureContext(const ObservationIndexer& ix);

  const ObservationIndexer& indexer() const { return ix_; }
  const GameSpec& spec() const { return ix_.spec(); }
  int num_phases() const { return ix_.num_phases(); }

  // Outcome counts of a final-phase observation over every opponent hole.
  Wtl FinalOutcome(const ObservationInfoset& obs) const;
  const std::vector<Wtl>& FinalOutcomes() const;  // per canonical final index

  // Number of next-phase deals from any phase-r observation.
  int Fanout(int phase) const;
  // Flat table: successors of canonical index c are entries
  // [c * Fanout(r), (c + 1) * Fanout(r)), as canonical phase-(r+1) indices.
  const std::vector<std::uint32_t>& CanonicalSuccessors(int phase) const;
  void ForEachRawSuccessor(int phase, std::uint64_t raw,
                           const std::function<void(std::uint64_t)>& fn) const;

  // Outcome counts summed over all final-phase extensions, per canonical
  // index of `phase`.
  const std::vector<Wtl>& ShowdownCounts(int phase) const;

 private:
  const ObservationIndexer& ix_;
  mutable std::mutex mu_;
  mutable std::unique_ptr<std::vector<Wtl>> final_;
  mutable std::vector<std::unique_ptr<std::vector<std::uint32_t>>> successors_;
  mutable std::vector<std::unique_ptr<std::vector<Wtl>>> showdown_;
};

// Final-phase winrate outcome feature (loss, tie, win). Throws PhaseError
// for non-final observations.
OutcomeFeature WinrateOutcomeFeature(const FeatureContext& ctx, const ObservationInfoset& obs);

}  // namespace soab

#endif  // SOAB_FEATURES_H_
