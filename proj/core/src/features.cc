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

#include "soab/features.h"

#include <numeric>

#include "soab/errors.h"
#include "soab/hand_eval.h"

namespace soab {

OutcomeFeature OutcomeFeature::Reduced() const {
  std::int64_t g = denominator;
  for (std::int64_t c : counts) g = std::gcd(g, c);
  OutcomeFeature out = *this;
  if (g > 1) {
    for (std::int64_t& c : out.counts) c /= g;
    out.denominator /= g;
  }
  return out;
}

FeatureContext::FeatureContext(const ObservationIndexer& ix) : ix_(ix) {
  successors_.resize(ix_.num_phases() + 1);
  showdown_.resize(ix_.num_phases() + 1);
}

Wtl FeatureContext::FinalOutcome(const ObservationInfoset& obs) const {
  const GameSpec& s = spec();
  if (obs.phase() != s.num_phases()) throw PhaseError("winrate feature needs a final-phase observation");
  ix_.Validate(obs);
  const CardSet board = obs.board_cards();
  const std::uint32_t mine = HandStrength(s.hand_rule, s.deck, obs.own | board);
  Wtl out{0, 0, 0};
  ForEachSubset(s.deck.all() - obs.own - board, s.holes, [&](CardSet opp) {
    const std::uint32_t theirs = HandStrength(s.hand_rule, s.deck, opp | board);
    out[mine < theirs ? 0 : (mine == theirs ? 1 : 2)] += 1;
  });
  return out;
}

const std::vector<Wtl>& FeatureContext::FinalOutcomes() const {
  std::lock_guard<std::mutex> lock(mu_);
  if (!final_) {
    const int last = num_phases();
    auto t = std::make_unique<std::vector<Wtl>>(ix_.CanonicalCount(last));
    for (std::uint32_t c = 0; c < t->size(); ++c) (*t)[c] = FinalOutcome(ix_.Representative(last, c));
    final_ = std::move(t);
  }
  return *final_;
}

int FeatureContext::Fanout(int phase) const {
  if (phase < 1 || phase >= num_phases()) throw PhaseError("no successors from this phase");
  const int left = spec().deck.size() - spec().holes - spec().board_cards_through(phase);
  return static_cast<int>(Choose(left, spec().board_per_phase[phase - 1]));
}

const std::vector<std::uint32_t>& FeatureContext::CanonicalSuccessors(int phase) const {
  const int fan = Fanout(phase);
  std::lock_guard<std::mutex> lock(mu_);
  auto& slot = successors_[phase];
  if (!slot) {
    const std::uint64_t n = ix_.CanonicalCount(phase);
    auto t = std::make_unique<std::vector<std::uint32_t>>();
    t->reserve(n * fan);
    const int b = spec().board_per_phase[phase - 1];
    for (std::uint32_t c = 0; c < n; ++c) {
      ObservationInfoset obs = ix_.Representative(phase, c);
      CardSet avail = spec().deck.all() - obs.own - obs.board_cards();
      obs.boards.emplace_back();
      ForEachSubset(avail, b, [&](CardSet deal) {
        obs.boards.back() = deal;
        t->push_back(ix_.CanonicalIndex(obs));
      });
    }
    slot = std::move(t);
  }
  return *slot;
}

void FeatureContext::ForEachRawSuccessor(int phase, std::uint64_t raw,
                                         const std::function<void(std::uint64_t)>& fn) const {
  if (phase < 1 || phase >= num_phases()) throw PhaseError("no successors from this phase");
  ObservationInfoset obs = ix_.RawDecode(phase, raw);
  CardSet avail = spec().deck.all() - obs.own - obs.board_cards();
  // The next digit of the mixed-radix raw index is the deal's rank among
  // the remaining cards, so successors are contiguous.
  const std::uint64_t fan = Choose(avail.size(), spec().board_per_phase[phase - 1]);
  for (std::uint64_t j = 0; j < fan; ++j) fn(raw * fan + j);
}

const std::vector<Wtl>& FeatureContext::ShowdownCounts(int phase) const {
  if (phase == num_phases()) return FinalOutcomes();
  const std::vector<Wtl>& next = ShowdownCounts(phase + 1);
  const std::vector<std::uint32_t>& succ = CanonicalSuccessors(phase);
  const int fan = Fanout(phase);
  std::lock_guard<std::mutex> lock(mu_);
  auto& slot = showdown_[phase];
  if (!slot) {
    auto t = std::make_unique<std::vector<Wtl>>(succ.size() / fan, Wtl{0, 0, 0});
    for (std::size_t c = 0; c < t->size(); ++c) {
      for (int j = 0; j < fan; ++j) {
        const Wtl& w = next[succ[c * fan + j]];
        for (int k = 0; k < 3; ++k) (*t)[c][k] += w[k];
      }
    }
    slot = std::move(t);
  }
  return *slot;
}

OutcomeFeature WinrateOutcomeFeature(const FeatureContext& ctx, const ObservationInfoset& obs) {
  Wtl w = ctx.FinalOutcome(obs);
  return OutcomeFeature{obs.phase(), {w[0], w[1], w[2]}, w[0] + w[1] + w[2]};
}

}  // namespace soab
