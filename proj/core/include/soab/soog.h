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

#ifndef SOAB_SOOG_H_
#define SOAB_SOOG_H_

// Signal observation ordered game model: actions, histories, traces, signals,
// chance weights and per-player observations. Everything here is a value type
// shared by the games, abstraction and solver layers.

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <boost/rational.hpp>

#include "soab/cards.h"

namespace soab {

using Rational = boost::rational<std::int64_t>;

// Players are 0..N-1; chance is kChance.
using Actor = int;
inline constexpr Actor kChance = -1;
inline constexpr int kMaxActors = 8;

enum class BetToken : std::uint8_t { kFold, kCheck, kCall, kBet, kRaise };

std::string ToString(BetToken t);
char ToChar(BetToken t);

// One chance action deals a whole phase: sets[i] is player i's hole at
// phase 1, and the single board deal afterwards.
struct Deal {
  std::vector<CardSet> sets;
  bool operator==(const Deal&) const = default;
};

struct Action {
  Actor actor = kChance;
  std::variant<BetToken, Deal> payload;

  static Action Bet(Actor a, BetToken t) { return Action{a, t}; }
  static Action Chance(Deal d) { return Action{kChance, std::move(d)}; }

  bool is_chance() const { return actor == kChance; }
  const BetToken* token() const { return std::get_if<BetToken>(&payload); }
  const Deal* deal() const { return std::get_if<Deal>(&payload); }
  bool operator==(const Action&) const = default;
};

// Phase convention: the number of chance histories on the path from the root,
// counting the history itself when chance acts next. The root is a chance
// history, so an empty history is in phase 1.
int PhaseOf(const std::vector<Action>& actions, bool chance_to_act);

struct History {
  std::vector<Action> actions;
  int phase = 1;

  std::size_t size() const { return actions.size(); }
  bool empty() const { return actions.empty(); }
  bool operator==(const History& o) const { return actions == o.actions; }
};

// A subset of actors, as used by the trace extraction operators.
class PlayerSelector {
 public:
  static PlayerSelector Only(Actor a) { return PlayerSelector(Bit(a)); }
  static PlayerSelector AllExcept(Actor a) { return PlayerSelector(~Bit(a)); }
  static PlayerSelector All() { return PlayerSelector(~0U); }

  bool contains(Actor a) const { return (mask_ & Bit(a)) != 0; }
  PlayerSelector complement() const { return PlayerSelector(~mask_); }

 private:
  explicit PlayerSelector(unsigned mask) : mask_(mask) {}
  static unsigned Bit(Actor a) { return 1U << (a + 1); }
  unsigned mask_;
};

// A slot keeps the owner even when the action is replaced by a wildcard.
struct TraceSlot {
  Actor owner = kChance;
  std::optional<Action> action;

  bool is_wildcard() const { return !action.has_value(); }
  bool operator==(const TraceSlot&) const = default;
};

// Position-indexed over the full history length.
struct Trace {
  std::vector<TraceSlot> slots;
  bool operator==(const Trace&) const = default;
};

// Keeps actions of selected actors in place and replaces others by their
// wildcard.
Trace ExtractTrace(const History& h, PlayerSelector keep);

// ExtractTrace followed by wildcard elimination.
std::vector<Action> ExtractSequence(const History& h, PlayerSelector keep);

// Removes wildcards from a trace.
std::vector<Action> EliminateWildcards(const Trace& t);

bool AreComplementary(const Trace& a, const Trace& b);

// Position-wise merge of two complementary traces. Throws
// ComplementarityError otherwise. The phase of the result is recomputed with
// the given chance-to-act flag.
History Splice(const Trace& a, const Trace& b, bool chance_to_act = false);

// All dealt cards so far: players' holes plus one board set per later phase.
struct Signal {
  std::vector<CardSet> holes;
  std::vector<CardSet> boards;

  int phase() const { return 1 + static_cast<int>(boards.size()); }
  CardSet board_cards() const;
  CardSet all_cards() const;
  bool operator==(const Signal&) const = default;
};

// A player's view of a signal: own hole cards and the public board.
struct ObservationInfoset {
  Actor owner = 0;
  CardSet own;
  std::vector<CardSet> boards;

  int phase() const { return 1 + static_cast<int>(boards.size()); }
  CardSet board_cards() const;
  bool operator==(const ObservationInfoset&) const = default;
};

// Observation function: what `player` sees of `signal`.
ObservationInfoset Observe(const Signal& signal, Actor player);

// Signal seen by chance in a history (the sequence-extraction operator for
// chance, folded into a Signal).
Signal SignalOf(const History& h);

// Card dealing layout shared by all games.
struct DealLayout {
  int deck_size = 0;
  int num_players = 2;
  int holes_per_player = 1;
  std::vector<int> board_per_phase;  // cards dealt at phases 2..num_phases

  int num_phases() const { return 1 + static_cast<int>(board_per_phase.size()); }
  int cards_through(int phase) const;  // total dealt by end of `phase`
};

// Uniform chance model realized by exact integer successor counts.
class ChanceModel {
 public:
  explicit ChanceModel(DealLayout layout);

  const DealLayout& layout() const { return layout_; }

  // Number of legal successors of any phase-(r-1) signal at phase r; for r = 1
  // this is the number of joint hole deals.
  std::uint64_t SuccessorCount(int phase) const;

  // True if `next` extends `prev` by one legal phase deal.
  bool IsSuccessor(const Signal& prev, const Signal& next) const;

  // Transition weight; the empty signal is the root.
  Rational Transition(const Signal& prev, const Signal& next) const;

  // Product of transition weights along the prefix chain.
  Rational Reach(const Signal& s) const;

  // Number of phase-r signals, the reciprocal of Reach for any of them.
  std::uint64_t SignalCount(int phase) const;

  void ValidateSignal(const Signal& s) const;

 private:
  DealLayout layout_;
};

}  // namespace soab

#endif  // SOAB_SOOG_H_
