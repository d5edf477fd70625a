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

#include "soab/soog.h"

#include "soab/errors.h"

namespace soab {

std::string ToString(BetToken t) {
  switch (t) {
    case BetToken::kFold: return "fold";
    case BetToken::kCheck: return "check";
    case BetToken::kCall: return "call";
    case BetToken::kBet: return "bet";
    case BetToken::kRaise: return "raise";
  }
  return "?";
}

char ToChar(BetToken t) {
  switch (t) {
    case BetToken::kFold: return 'f';
    case BetToken::kCheck: return 'k';
    case BetToken::kCall: return 'c';
    case BetToken::kBet: return 'b';
    case BetToken::kRaise: return 'r';
  }
  return '?';
}

int PhaseOf(const std::vector<Action>& actions, bool chance_to_act) {
  int chance = 0;
  for (const Action& a : actions) chance += a.is_chance() ? 1 : 0;
  int phase = chance + (chance_to_act ? 1 : 0);
  return phase < 1 ? 1 : phase;
}

Trace ExtractTrace(const History& h, PlayerSelector keep) {
  Trace t;
  t.slots.reserve(h.size());
  for (const Action& a : h.actions) {
    TraceSlot slot{a.actor, std::nullopt};
    if (keep.contains(a.actor)) slot.action = a;
    t.slots.push_back(std::move(slot));
  }
  return t;
}

std::vector<Action> EliminateWildcards(const Trace& t) {
  std::vector<Action> out;
  for (const TraceSlot& s : t.slots) {
    if (s.action) out.push_back(*s.action);
  }
  return out;
}

std::vector<Action> ExtractSequence(const History& h, PlayerSelector keep) {
  return EliminateWildcards(ExtractTrace(h, keep));
}

bool AreComplementary(const Trace& a, const Trace& b) {
  if (a.slots.size() != b.slots.size()) return false;
  for (std::size_t i = 0; i < a.slots.size(); ++i) {
    const TraceSlot& x = a.slots[i];
    const TraceSlot& y = b.slots[i];
    if (x.owner != y.owner) return false;
    if (x.is_wildcard() == y.is_wildcard()) return false;
  }
  return true;
}

History Splice(const Trace& a, const Trace& b, bool chance_to_act) {
  if (a.slots.size() != b.slots.size()) {
    throw ComplementarityError("traces differ in length: " +
                               std::to_string(a.slots.size()) + " vs " +
                               std::to_string(b.slots.size()));
  }
  History h;
  h.actions.reserve(a.slots.size());
  for (std::size_t i = 0; i < a.slots.size(); ++i) {
    const TraceSlot& x = a.slots[i];
    const TraceSlot& y = b.slots[i];
    if (x.owner != y.owner || x.is_wildcard() == y.is_wildcard()) {
      throw ComplementarityError("traces are not complementary at position " +
                                 std::to_string(i));
    }
    h.actions.push_back(x.action ? *x.action : *y.action);
  }
  h.phase = PhaseOf(h.actions, chance_to_act);
  return h;
}

CardSet Signal::board_cards() const {
  CardSet s;
  for (CardSet b : boards) s |= b;
  return s;
}

CardSet Signal::all_cards() const {
  CardSet s = board_cards();
  for (CardSet h : holes) s |= h;
  return s;
}

CardSet ObservationInfoset::board_cards() const {
  CardSet s;
  for (CardSet b : boards) s |= b;
  return s;
}

ObservationInfoset Observe(const Signal& signal, Actor player) {
  if (player < 0 || player >= static_cast<int>(signal.holes.size())) {
    throw DomainError("player " + std::to_string(player) + " not dealt in signal");
  }
  return ObservationInfoset{player, signal.holes[player], signal.boards};
}

Signal SignalOf(const History& h) {
  Signal s;
  bool first = true;
  for (const Action& a : ExtractSequence(h, PlayerSelector::Only(kChance))) {
    const Deal* d = a.deal();
    if (d == nullptr) continue;
    if (first) {
      s.holes = d->sets;
      first = false;
    } else {
      CardSet b;
      for (CardSet x : d->sets) b |= x;
      s.boards.push_back(b);
    }
  }
  return s;
}

int DealLayout::cards_through(int phase) const {
  int n = num_players * holes_per_player;
  for (int r = 2; r <= phase && r - 2 < static_cast<int>(board_per_phase.size()); ++r) {
    n += board_per_phase[r - 2];
  }
  return n;
}

ChanceModel::ChanceModel(DealLayout layout) : layout_(std::move(layout)) {
  if (layout_.cards_through(layout_.num_phases()) > layout_.deck_size) {
    throw ParameterError("deal layout uses more cards than the deck holds");
  }
}

std::uint64_t ChanceModel::SuccessorCount(int phase) const {
  if (phase < 1 || phase > layout_.num_phases()) {
    throw PhaseError("phase " + std::to_string(phase) + " out of range");
  }
  if (phase == 1) {
    std::uint64_t n = 1;
    int left = layout_.deck_size;
    for (int p = 0; p < layout_.num_players; ++p) {
      n *= Choose(left, layout_.holes_per_player);
      left -= layout_.holes_per_player;
    }
    return n;
  }
  int left = layout_.deck_size - layout_.cards_through(phase - 1);
  return Choose(left, layout_.board_per_phase[phase - 2]);
}

std::uint64_t ChanceModel::SignalCount(int phase) const {
  std::uint64_t n = 1;
  for (int r = 1; r <= phase; ++r) n *= SuccessorCount(r);
  return n;
}

void ChanceModel::ValidateSignal(const Signal& s) const {
  if (static_cast<int>(s.holes.size()) != layout_.num_players) {
    throw DomainError("signal must deal every player");
  }
  if (s.phase() > layout_.num_phases()) {
    throw PhaseError("signal longer than the number of phases");
  }
  CardSet seen;
  const CardSet deck(layout_.deck_size == 64 ? ~0ULL : ((1ULL << layout_.deck_size) - 1));
  auto add = [&](CardSet c, int expected) {
    if (c.size() != expected) throw DomainError("wrong number of dealt cards");
    if (seen.intersects(c)) throw DomainError("dealt cards overlap");
    if ((c - deck).bits() != 0) throw DomainError("card outside deck");
    seen |= c;
  };
  for (CardSet h : s.holes) add(h, layout_.holes_per_player);
  for (std::size_t i = 0; i < s.boards.size(); ++i) add(s.boards[i], layout_.board_per_phase[i]);
}

bool ChanceModel::IsSuccessor(const Signal& prev, const Signal& next) const {
  try {
    ValidateSignal(next);
  } catch (const Error&) {
    return false;
  }
  if (prev.holes.empty()) return next.boards.empty();
  if (next.phase() != prev.phase() + 1) return false;
  if (next.holes != prev.holes) return false;
  for (std::size_t i = 0; i < prev.boards.size(); ++i) {
    if (prev.boards[i] != next.boards[i]) return false;
  }
  return true;
}

Rational ChanceModel::Transition(const Signal& prev, const Signal& next) const {
  if (!IsSuccessor(prev, next)) return Rational(0);
  return Rational(1, static_cast<std::int64_t>(SuccessorCount(next.phase())));
}

Rational ChanceModel::Reach(const Signal& s) const {
  ValidateSignal(s);
  return Rational(1, static_cast<std::int64_t>(SignalCount(s.phase())));
}

}  // namespace soab
