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

#ifndef SOAB_HAND_EVAL_H_
#define SOAB_HAND_EVAL_H_

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "soab/cards.h"

namespace soab {

enum class HandRule : std::uint8_t {
  kLeduc,       // hole + one board card; pair beats high card
  kNumeral211,  // best 3 of hole(2) + board(2), 3-card categories
  kHoldem,      // best 5 of up to 7, standard poker categories
};

// Categories are numbered ascending in strength within each rule.
namespace leduc {
enum Category { kHighCard = 0, kPair = 1 };
}
namespace numeral211 {
enum Category {
  kHighCard = 0,
  kPair = 1,
  kFlush = 2,
  kStraight = 3,
  kThreeOfAKind = 4,
  kStraightFlush = 5,
};
}
namespace holdem {
enum Category {
  kHighCard = 0,
  kPair = 1,
  kTwoPair = 2,
  kThreeOfAKind = 3,
  kStraight = 4,
  kFlush = 5,
  kFullHouse = 6,
  kFourOfAKind = 7,
  kStraightFlush = 8,
};
}

// Category plus rank tiebreaks, compared lexicographically. `packed` holds
// the same order in one integer: category in bits 20+, then up to five
// four-bit tiebreak ranks.
struct HandRank {
  int category = 0;
  std::vector<int> tiebreak;
  std::uint32_t packed = 0;

  std::strong_ordering operator<=>(const HandRank& o) const { return packed <=> o.packed; }
  bool operator==(const HandRank& o) const { return packed == o.packed; }
};

int NumCategories(HandRule rule);
std::string CategoryName(HandRule rule, int category);

// Number of cards EvaluateHand expects (all of them are used to pick the
// best hand).
std::vector<int> AcceptedHandSizes(HandRule rule);

// Best hand reachable from `cards` under `rule`. Throws DomainError on a wrong
// card count or cards outside the deck.
HandRank EvaluateHand(HandRule rule, const Deck& deck, CardSet cards);

// Unchecked fast path returning HandRank::packed.
std::uint32_t HandStrength(HandRule rule, const Deck& deck, CardSet cards);

}  // namespace soab

#endif  // SOAB_HAND_EVAL_H_
