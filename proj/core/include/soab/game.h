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

#ifndef SOAB_GAME_H_
#define SOAB_GAME_H_

#include <array>
#include <functional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "soab/cards.h"
#include "soab/hand_eval.h"
#include "soab/soog.h"

namespace soab {

// Rules of a two-player limit hold'em style game. Phase 1 deals the hole
// cards; every later phase deals board_per_phase[phase - 2] public cards.
struct GameSpec {
  std::string id;
  Deck deck;
  HandRule hand_rule = HandRule::kLeduc;
  int holes = 1;
  std::vector<int> board_per_phase;
  int ante = 1;
  std::vector<int> bet_size;  // per phase
  int max_raises = 2;         // bets plus raises allowed per phase
  std::vector<Actor> first_actor;  // per phase

  int num_players() const { return 2; }
  int num_phases() const { return 1 + static_cast<int>(board_per_phase.size()); }
  int board_cards_through(int phase) const;
  DealLayout layout() const;
  void Validate() const;  // throws ParameterError
};

GameSpec LeducSpec();
GameSpec Numeral211Spec();
GameSpec HulhCardsSpec();

// Registry lookup by id: "leduc", "numeral211", "hulh-cards". Unknown ids
// throw DomainError.
GameSpec MakeGameSpec(std::string_view id);
std::vector<std::string> RegisteredGames();

// Applies one `key=value` rule override (holes, ante, bet.phase1,
// bet.postflop, max_raises). Returns false for keys it does not own.
bool ApplyGameOverride(GameSpec& spec, std::string_view key, std::string_view value);

// Betting state of a history, indepedent of the cards.
struct BettingState {
  int phase = 1;
  Actor to_act = kChance;  // kChance when a deal is due
  std::array<int, 2> committed{};
  int aggressive = 0;  // bets plus raises in the current phase
  int actions = 0;     // betting actions in the current phase
  Actor folded = kChance;  // player who folded, if any
  bool terminal = false;

  bool showdown() const { return terminal && folded == kChance; }
  int to_call() const {
    return to_act < 0 ? 0 : committed[1 - to_act] - committed[to_act];
  }
  bool operator==(const BettingState&) const = default;
};

struct TerminalPayoff {
  std::array<int, 2> utility{};
  std::array<bool, 2> survived{true, true};
  bool showdown = false;
};

// Total order over players at a final-phase signal: i precedes j iff i's
// best hand ranks no higher than j's.
struct ShowdownOrder {
  std::array<std::uint32_t, 2> strength{};
  std::vector<HandRank> hands;

  bool Precedes(Actor i, Actor j) const { return strength[i] <= strength[j]; }
};

using StepResult = std::variant<History, TerminalPayoff>;

class Game {
 public:
  explicit Game(GameSpec spec);

  const GameSpec& spec() const { return spec_; }
  const Deck& deck() const { return spec_.deck; }
  const ChanceModel& chance() const { return chance_; }
  int num_phases() const { return spec_.num_phases(); }

  BettingState Initial() const;
  std::vector<BetToken> LegalBets(const BettingState& s) const;
  // Throws RuleError if the token is not legal in `s`.
  BettingState ApplyBet(const BettingState& s, BetToken t) const;
  BettingState ApplyDeal(const BettingState& s) const;

  // Chip payoff of a terminal state. `signal` must be final-phase for
  // showdowns and may be empty for folds.
  TerminalPayoff Payoff(const BettingState& s, const Signal& signal) const;

  // Replays a full history, validating every action.
  BettingState Replay(const History& h) const;

  // Legality of one action after `h`, including card checks for deals.
  bool IsLegal(const History& h, const Action& a) const;

  // Bet actions legal after `h`; empty when chance acts or h is terminal.
  std::vector<Action> LegalBetActions(const History& h) const;

  // Calls fn(Action) for every chance deal legal after `h`.
  void ForEachDeal(const History& h, const std::function<void(const Action&)>& fn) const;

  // Appends `a` to `h`, returning the child history or, if terminal, the
  // payoff. Throws RuleError for illegal actions.
  StepResult Step(const History& h, const Action& a) const;

  ShowdownOrder Showdown(const Signal& final_signal) const;

  // Packed strength of a player's best hand, no validation.
  std::uint32_t Strength(CardSet hole, CardSet board) const {
    return HandStrength(spec_.hand_rule, spec_.deck, hole | board);
  }

 private:
  GameSpec spec_;
  ChanceModel chance_;
};

}  // namespace soab

#endif  // SOAB_GAME_H_
