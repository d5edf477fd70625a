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

#include "soab/game.h"

#include <algorithm>
#include <charconv>

#include "soab/errors.h"

namespace soab {

int GameSpec::board_cards_through(int phase) const {
  int n = 0;
  for (int r = 2; r <= phase && r <= num_phases(); ++r) n += board_per_phase[r - 2];
  return n;
}

DealLayout GameSpec::layout() const {
  return DealLayout{deck.size(), num_players(), holes, board_per_phase};
}

void GameSpec::Validate() const {
  if (num_phases() < 2) throw ParameterError(id + ": need at least two phases");
  if (holes < 1) throw ParameterError(id + ": holes must be positive");
  if (num_players() * holes + board_cards_through(num_phases()) > deck.size()) {
    throw ParameterError(id + ": more cards dealt than the deck holds");
  }
  if (deck.size() > kMaxDeckSize) throw ParameterError(id + ": deck too large");
  if (ante <= 0) throw ParameterError(id + ": ante must be positive");
  if (static_cast<int>(bet_size.size()) != num_phases() ||
      static_cast<int>(first_actor.size()) != num_phases()) {
    throw ParameterError(id + ": per-phase rule lists have wrong length");
  }
  for (int b : bet_size) {
    if (b <= 0) throw ParameterError(id + ": bet sizes must be positive");
  }
  if (max_raises < 1) throw ParameterError(id + ": max_raises must be positive");
  for (Actor a : first_actor) {
    if (a != 0 && a != 1) throw ParameterError(id + ": bad first actor");
  }
  for (int b : board_per_phase) {
    if (b < 1) throw ParameterError(id + ": every later phase deals a card");
  }
  // EvaluateHand must accept the final card count.
  std::vector<int> sizes = AcceptedHandSizes(hand_rule);
  const int final_cards = holes + board_cards_through(num_phases());
  bool ok = false;
  for (int s : sizes) ok = ok || s == final_cards;
  if (!ok) throw ParameterError(id + ": hand rule does not accept the dealt card count");
}

GameSpec LeducSpec() {
  GameSpec g;
  g.id = "leduc";
  g.deck = Deck{3, 2, "JQK", "hs"};
  g.hand_rule = HandRule::kLeduc;
  g.holes = 1;
  g.board_per_phase = {1};
  g.ante = 1;
  g.bet_size = {2, 2};
  g.max_raises = 2;
  g.first_actor = {0, 0};
  return g;
}

GameSpec Numeral211Spec() {
  GameSpec g;
  g.id = "numeral211";
  g.deck = Deck{10, 4, "23456789TA", "shdc"};
  g.hand_rule = HandRule::kNumeral211;
  g.holes = 2;
  g.board_per_phase = {1, 1};
  g.ante = 5;
  g.bet_size = {10, 20, 20};
  g.max_raises = 4;
  g.first_actor = {0, 0, 0};
  return g;
}

GameSpec HulhCardsSpec() {
  GameSpec g;
  g.id = "hulh-cards";
  g.deck = Deck{13, 4, "23456789TJQKA", "shdc"};
  g.hand_rule = HandRule::kHoldem;
  g.holes = 2;
  g.board_per_phase = {3, 1, 1};
  // Card layer only. Forced bets are modeled as equal antes so the generic
  // engine stays well defined; the game is never solved.
  g.ante = 1;
  g.bet_size = {2, 4, 4, 4};
  g.max_raises = 4;
  g.first_actor = {0, 1, 1, 1};
  return g;
}

GameSpec MakeGameSpec(std::string_view id) {
  if (id == "leduc") return LeducSpec();
  if (id == "numeral211") return Numeral211Spec();
  if (id == "hulh-cards") return HulhCardsSpec();
  throw DomainError("unknown game '" + std::string(id) + "'");
}

std::vector<std::string> RegisteredGames() { return {"leduc", "numeral211", "hulh-cards"}; }

namespace {

int ParsePositive(std::string_view key, std::string_view value) {
  int v = 0;
  auto [p, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
  if (ec != std::errc() || p != value.data() + value.size() || v <= 0) {
    throw ParameterError(std::string(key) + " must be a positive integer, got '" +
                         std::string(value) + "'");
  }
  return v;
}

}  // namespace

bool ApplyGameOverride(GameSpec& spec, std::string_view key, std::string_view value) {
  if (key == "holes") {
    spec.holes = ParsePositive(key, value);
  } else if (key == "ante") {
    spec.ante = ParsePositive(key, value);
  } else if (key == "bet.phase1") {
    spec.bet_size[0] = ParsePositive(key, value);
  } else if (key == "bet.postflop") {
    int v = ParsePositive(key, value);
    for (std::size_t r = 1; r < spec.bet_size.size(); ++r) spec.bet_size[r] = v;
  } else if (key == "max_raises") {
    spec.max_raises = ParsePositive(key, value);
  } else {
    return false;
  }
  return true;
}

Game::Game(GameSpec spec) : spec_((spec.Validate(), std::move(spec))), chance_(spec_.layout()) {}

BettingState Game::Initial() const {
  BettingState s;
  s.committed = {spec_.ante, spec_.ante};
  return s;
}

std::vector<BetToken> Game::LegalBets(const BettingState& s) const {
  if (s.terminal || s.to_act == kChance) return {};
  std::vector<BetToken> out;
  const bool can_raise = s.aggressive < spec_.max_raises;
  if (s.to_call() > 0) {
    out.push_back(BetToken::kFold);
    out.push_back(BetToken::kCall);
    if (can_raise) out.push_back(BetToken::kRaise);
  } else {
    out.push_back(BetToken::kCheck);
    if (can_raise) out.push_back(BetToken::kBet);
  }
  return out;
}

BettingState Game::ApplyBet(const BettingState& s, BetToken t) const {
  std::vector<BetToken> legal = LegalBets(s);
  if (std::find(legal.begin(), legal.end(), t) == legal.end()) {
    throw RuleError("illegal action '" + ToString(t) + "' in phase " + std::to_string(s.phase));
  }
  BettingState n = s;
  const Actor me = s.to_act;
  const Actor other = 1 - me;
  const int bet = spec_.bet_size[s.phase - 1];
  ++n.actions;
  auto end_phase = [&]() {
    if (s.phase == spec_.num_phases()) {
      n.terminal = true;
      n.to_act = kChance;
    } else {
      n.to_act = kChance;
    }
  };
  switch (t) {
    case BetToken::kFold:
      n.folded = me;
      n.terminal = true;
      n.to_act = kChance;
      break;
    case BetToken::kCheck:
      // A check closes the phase when it is the second action.
      if (s.actions >= 1) {
        end_phase();
      } else {
        n.to_act = other;
      }
      break;
    case BetToken::kCall:
      n.committed[me] = s.committed[other];
      end_phase();
      break;
    case BetToken::kBet:
    case BetToken::kRaise:
      n.committed[me] = s.committed[other] + bet;
      ++n.aggressive;
      n.to_act = other;
      break;
  }
  return n;
}

BettingState Game::ApplyDeal(const BettingState& s) const {
  if (s.terminal || s.to_act != kChance) throw RuleError("chance is not to act");
  BettingState n = s;
  n.actions = 0;
  n.aggressive = 0;
  return n;
}

TerminalPayoff Game::Payoff(const BettingState& s, const Signal& signal) const {
  if (!s.terminal) throw RuleError("payoff requested at a non-terminal state");
  TerminalPayoff p;
  if (s.folded != kChance) {
    const Actor f = s.folded;
    p.survived[f] = false;
    p.utility[f] = -s.committed[f];
    p.utility[1 - f] = s.committed[f];
    return p;
  }
  p.showdown = true;
  ShowdownOrder order = Showdown(signal);
  const int stake = s.committed[0];  // equal at showdown
  if (order.strength[0] > order.strength[1]) {
    p.utility = {stake, -stake};
  } else if (order.strength[0] < order.strength[1]) {
    p.utility = {-stake, stake};
  }
  return p;
}

ShowdownOrder Game::Showdown(const Signal& signal) const {
  if (signal.phase() != spec_.num_phases()) {
    throw PhaseError("showdown needs a final-phase signal");
  }
  chance_.ValidateSignal(signal);
  ShowdownOrder o;
  CardSet board = signal.board_cards();
  for (int i = 0; i < 2; ++i) {
    o.hands.push_back(EvaluateHand(spec_.hand_rule, spec_.deck, signal.holes[i] | board));
    o.strength[i] = o.hands.back().packed;
  }
  return o;
}

namespace {

// Internal replay that also tracks the signal dealt so far.
struct Replayed {
  BettingState state;
  Signal signal;
  bool dealt_root = false;
};

}  // namespace

static bool DealIsLegal(const Game& g, const Replayed& r, const Deal& d) {
  const GameSpec& spec = g.spec();
  CardSet used = r.signal.all_cards();
  CardSet all = spec.deck.all();
  if (!r.dealt_root) {
    if (static_cast<int>(d.sets.size()) != spec.num_players()) return false;
    CardSet seen;
    for (CardSet c : d.sets) {
      if (c.size() != spec.holes || seen.intersects(c) || (c - all).bits()) return false;
      seen |= c;
    }
    return true;
  }
  const int next_phase = r.state.phase + 1;
  if (next_phase > spec.num_phases() || d.sets.size() != 1) return false;
  CardSet c = d.sets[0];
  return c.size() == spec.board_per_phase[next_phase - 2] && !c.intersects(used) &&
         (c - all).bits() == 0;
}

static Replayed ReplayImpl(const Game& g, const History& h) {
  Replayed r;
  r.state = g.Initial();
  for (const Action& a : h.actions) {
    if (r.state.terminal) throw RuleError("action after a terminal history");
    if (a.is_chance()) {
      if (r.state.to_act != kChance) throw RuleError("chance acted out of turn");
      const Deal* d = a.deal();
      if (d == nullptr || !DealIsLegal(g, r, *d)) throw RuleError("illegal deal");
      if (!r.dealt_root) {
        r.signal.holes = d->sets;
        r.dealt_root = true;
      } else {
        r.signal.boards.push_back(d->sets[0]);
        ++r.state.phase;
      }
      r.state = g.ApplyDeal(r.state);
      r.state.to_act = g.spec().first_actor[r.state.phase - 1];
    } else {
      if (a.actor != r.state.to_act) throw RuleError("player acted out of turn");
      const BetToken* t = a.token();
      if (t == nullptr) throw RuleError("player action without a bet token");
      r.state = g.ApplyBet(r.state, *t);
    }
  }
  return r;
}

BettingState Game::Replay(const History& h) const { return ReplayImpl(*this, h).state; }

bool Game::IsLegal(const History& h, const Action& a) const {
  Replayed r;
  try {
    r = ReplayImpl(*this, h);
  } catch (const RuleError&) {
    return false;
  }
  if (r.state.terminal) return false;
  if (a.is_chance()) {
    const Deal* d = a.deal();
    return r.state.to_act == kChance && d != nullptr && DealIsLegal(*this, r, *d);
  }
  const BetToken* t = a.token();
  if (t == nullptr || a.actor != r.state.to_act) return false;
  std::vector<BetToken> legal = LegalBets(r.state);
  return std::find(legal.begin(), legal.end(), *t) != legal.end();
}

std::vector<Action> Game::LegalBetActions(const History& h) const {
  BettingState s = Replay(h);
  std::vector<Action> out;
  for (BetToken t : LegalBets(s)) out.push_back(Action::Bet(s.to_act, t));
  return out;
}

void Game::ForEachDeal(const History& h, const std::function<void(const Action&)>& fn) const {
  Replayed r = ReplayImpl(*this, h);
  if (r.state.terminal || r.state.to_act != kChance) return;
  CardSet avail = spec_.deck.all() - r.signal.all_cards();
  if (!r.dealt_root) {
    ForEachSubset(avail, spec_.holes, [&](CardSet a) {
      ForEachSubset(avail - a, spec_.holes, [&](CardSet b) {
        fn(Action::Chance(Deal{{a, b}}));
      });
    });
    return;
  }
  ForEachSubset(avail, spec_.board_per_phase[r.state.phase - 1], [&](CardSet b) {
    fn(Action::Chance(Deal{{b}}));
  });
}

StepResult Game::Step(const History& h, const Action& a) const {
  if (!IsLegal(h, a)) throw RuleError("illegal action");
  History child = h;
  child.actions.push_back(a);
  Replayed r = ReplayImpl(*this, child);
  if (r.state.terminal) return Payoff(r.state, r.signal);
  child.phase = PhaseOf(child.actions, r.state.to_act == kChance);
  return child;
}

}  // namespace soab
