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

#include <gtest/gtest.h>

#include "soab/errors.h"
#include "soab/game.h"

namespace soab {
namespace {

// Actors of the worked example: i and j are players, k is chance.
constexpr Actor kI = 0;
constexpr Actor kJ = 1;

History Example() {
  History h;
  h.actions = {Action::Bet(kI, BetToken::kBet), Action::Bet(kJ, BetToken::kCall),
               Action::Chance(Deal{{CardSet::Single(3)}}), Action::Bet(kI, BetToken::kCheck)};
  h.phase = PhaseOf(h.actions, false);
  return h;
}

TEST(SoogTest, ExtractTraceAllExceptI) {
  History h = Example();
  Trace t = ExtractTrace(h, PlayerSelector::AllExcept(kI));
  ASSERT_EQ(t.slots.size(), 4u);
  EXPECT_TRUE(t.slots[0].is_wildcard());
  EXPECT_EQ(t.slots[0].owner, kI);
  EXPECT_EQ(*t.slots[1].action, h.actions[1]);
  EXPECT_EQ(*t.slots[2].action, h.actions[2]);
  EXPECT_TRUE(t.slots[3].is_wildcard());
  EXPECT_EQ(t.slots[3].owner, kI);
}

TEST(SoogTest, ExtractTraceOnlyI) {
  History h = Example();
  Trace t = ExtractTrace(h, PlayerSelector::Only(kI));
  EXPECT_EQ(*t.slots[0].action, h.actions[0]);
  EXPECT_TRUE(t.slots[1].is_wildcard());
  EXPECT_EQ(t.slots[1].owner, kJ);
  EXPECT_TRUE(t.slots[2].is_wildcard());
  EXPECT_EQ(t.slots[2].owner, kChance);
  EXPECT_EQ(*t.slots[3].action, h.actions[3]);
}

TEST(SoogTest, ExtractSequence) {
  History h = Example();
  std::vector<Action> others = ExtractSequence(h, PlayerSelector::AllExcept(kI));
  ASSERT_EQ(others.size(), 2u);
  EXPECT_EQ(others[0], h.actions[1]);
  EXPECT_EQ(others[1], h.actions[2]);
  std::vector<Action> mine = ExtractSequence(h, PlayerSelector::Only(kI));
  ASSERT_EQ(mine.size(), 2u);
  EXPECT_EQ(mine[0], h.actions[0]);
  EXPECT_EQ(mine[1], h.actions[3]);
}

TEST(SoogTest, EmptyHistory) {
  History h;
  EXPECT_EQ(h.phase, 1);
  EXPECT_EQ(PhaseOf({}, true), 1);
  EXPECT_TRUE(ExtractTrace(h, PlayerSelector::All()).slots.empty());
  EXPECT_TRUE(ExtractSequence(h, PlayerSelector::Only(kI)).empty());
  History s = Splice(Trace{}, Trace{});
  EXPECT_TRUE(s.empty());
  EXPECT_EQ(s.phase, 1);
}

TEST(SoogTest, SpliceReconstructs) {
  History h = Example();
  History back = Splice(ExtractTrace(h, PlayerSelector::AllExcept(kI)),
                        ExtractTrace(h, PlayerSelector::Only(kI)));
  EXPECT_EQ(back, h);
  EXPECT_EQ(back.phase, 1);  // one chance action, player to act
}

TEST(SoogTest, SpliceRejectsNonComplementary) {
  History h = Example();
  Trace a = ExtractTrace(h, PlayerSelector::All());
  EXPECT_FALSE(AreComplementary(a, a));
  EXPECT_THROW(Splice(a, a), ComplementarityError);
  Trace shorter = a;
  shorter.slots.pop_back();
  EXPECT_THROW(Splice(shorter, ExtractTrace(h, PlayerSelector::All().complement())),
               ComplementarityError);
}

TEST(SoogTest, PhaseCountsChanceHistories) {
  std::vector<Action> a = {Action::Chance(Deal{{CardSet::Single(0), CardSet::Single(1)}})};
  EXPECT_EQ(PhaseOf(a, false), 1);
  a.push_back(Action::Bet(0, BetToken::kCheck));
  a.push_back(Action::Bet(1, BetToken::kCheck));
  EXPECT_EQ(PhaseOf(a, true), 2);
}

TEST(SoogTest, ChanceReachSumsToOne) {
  for (const char* id : {"leduc", "numeral211"}) {
    Game g(MakeGameSpec(id));
    const ChanceModel& c = g.chance();
    for (int r = 1; r <= g.num_phases(); ++r) {
      // Every phase-r signal has the same reach, so the sum is count * reach.
      Signal s;
      s.holes = {CardSet::Single(0) | (g.spec().holes == 2 ? CardSet::Single(1) : CardSet()),
                 CardSet::Single(4) | (g.spec().holes == 2 ? CardSet::Single(5) : CardSet())};
      for (int q = 2; q <= r; ++q) s.boards.push_back(CardSet::Single(static_cast<Card>(q)));
      Rational reach = c.Reach(s);
      EXPECT_EQ(reach * Rational(static_cast<std::int64_t>(c.SignalCount(r))), Rational(1)) << id;
    }
  }
}

TEST(SoogTest, TransitionsSumToOneOnLeduc) {
  Game g(LeducSpec());
  const ChanceModel& c = g.chance();
  Rational total(0);
  Rational reach_total(0);
  Signal root;
  // Enumerate all full signals: two distinct holes then one board card.
  for (Card a = 0; a < 6; ++a) {
    for (Card b = 0; b < 6; ++b) {
      if (a == b) continue;
      Signal s1{{CardSet::Single(a), CardSet::Single(b)}, {}};
      total += c.Transition(root, s1);
      Rational sub(0);
      for (Card x = 0; x < 6; ++x) {
        Signal s2 = s1;
        s2.boards.push_back(CardSet::Single(x));
        sub += c.Transition(s1, s2);
        if (x != a && x != b) reach_total += c.Reach(s2);
      }
      EXPECT_EQ(sub, Rational(1));
    }
  }
  EXPECT_EQ(total, Rational(1));
  EXPECT_EQ(reach_total, Rational(1));
}

TEST(SoogTest, ObserveKeepsOwnCardsAndBoard) {
  Signal s{{CardSet::Single(1), CardSet::Single(2)}, {CardSet::Single(5)}};
  ObservationInfoset o = Observe(s, 1);
  EXPECT_EQ(o.owner, 1);
  EXPECT_EQ(o.own, CardSet::Single(2));
  EXPECT_EQ(o.phase(), 2);
  EXPECT_FALSE(o.own.intersects(o.board_cards()));
  EXPECT_THROW(Observe(s, 2), DomainError);
}

}  // namespace
}  // namespace soab
