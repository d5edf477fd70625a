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

#include "soab/hand_eval.h"

#include <algorithm>
#include <array>

#include "soab/errors.h"

namespace soab {
namespace {

std::uint32_t Pack(int category, std::initializer_list<int> ranks) {
  std::uint32_t p = static_cast<std::uint32_t>(category) << 20;
  int shift = 16;
  for (int r : ranks) {
    p |= static_cast<std::uint32_t>(r) << shift;
    shift -= 4;
  }
  return p;
}

int TiebreakLength(HandRule rule, int category) {
  switch (rule) {
    case HandRule::kLeduc:
      return category == leduc::kPair ? 1 : 2;
    case HandRule::kNumeral211:
      switch (category) {
        case numeral211::kStraightFlush:
        case numeral211::kStraight:
        case numeral211::kThreeOfAKind:
          return 1;
        case numeral211::kPair:
          return 2;
        default:
          return 3;
      }
    case HandRule::kHoldem:
      switch (category) {
        case holdem::kStraightFlush:
        case holdem::kStraight:
          return 1;
        case holdem::kFourOfAKind:
        case holdem::kFullHouse:
          return 2;
        case holdem::kThreeOfAKind:
        case holdem::kTwoPair:
          return 3;
        case holdem::kPair:
          return 4;
        default:
          return 5;
      }
  }
  return 0;
}

std::uint32_t EvalLeduc(const Deck& deck, CardSet cards) {
  std::array<int, 2> r{};
  int n = 0;
  for (std::uint64_t b = cards.bits(); b; b &= b - 1) {
    r[n++] = deck.rank(static_cast<Card>(std::countr_zero(b)));
  }
  if (r[0] == r[1]) return Pack(leduc::kPair, {r[0]});
  return Pack(leduc::kHighCard, {std::max(r[0], r[1]), std::min(r[0], r[1])});
}

// Exactly three cards. Ranks are consecutive across the whole rank list, so
// the top three ranks form a straight and there is no wrap-around.
std::uint32_t Eval3(int r0, int s0, int r1, int s1, int r2, int s2) {
  if (r0 < r1) std::swap(r0, r1), std::swap(s0, s1);
  if (r1 < r2) std::swap(r1, r2), std::swap(s1, s2);
  if (r0 < r1) std::swap(r0, r1), std::swap(s0, s1);
  const bool flush = s0 == s1 && s1 == s2;
  const bool straight = r0 != r1 && r1 != r2 && r0 - r2 == 2;
  if (straight && flush) return Pack(numeral211::kStraightFlush, {r0});
  if (r0 == r2) return Pack(numeral211::kThreeOfAKind, {r0});
  if (straight) return Pack(numeral211::kStraight, {r0});
  if (flush) return Pack(numeral211::kFlush, {r0, r1, r2});
  if (r0 == r1) return Pack(numeral211::kPair, {r0, r2});
  if (r1 == r2) return Pack(numeral211::kPair, {r1, r0});
  return Pack(numeral211::kHighCard, {r0, r1, r2});
}

std::uint32_t EvalNumeral211(const Deck& deck, CardSet cards) {
  std::array<int, 4> r{};
  std::array<int, 4> s{};
  int n = 0;
  for (std::uint64_t b = cards.bits(); b; b &= b - 1) {
    Card c = static_cast<Card>(std::countr_zero(b));
    r[n] = deck.rank(c);
    s[n] = deck.suit(c);
    ++n;
  }
  if (n == 3) return Eval3(r[0], s[0], r[1], s[1], r[2], s[2]);
  std::uint32_t best = 0;
  for (int skip = 0; skip < 4; ++skip) {
    std::array<int, 3> idx{};
    int m = 0;
    for (int i = 0; i < 4; ++i) {
      if (i != skip) idx[m++] = i;
    }
    best = std::max(best, Eval3(r[idx[0]], s[idx[0]], r[idx[1]], s[idx[1]],
                                r[idx[2]], s[idx[2]]));
  }
  return best;
}

// Exactly five cards, ace-low straight allowed when the deck has an ace on top.
std::uint32_t Eval5(const std::array<int, 5>& rank, const std::array<int, 5>& suit,
                    int num_ranks) {
  std::array<int, 16> count{};
  bool flush = true;
  for (int i = 0; i < 5; ++i) {
    ++count[rank[i]];
    if (suit[i] != suit[0]) flush = false;
  }
  // Groups sorted by (count, rank) descending.
  std::array<std::pair<int, int>, 5> groups{};
  int g = 0;
  for (int r = num_ranks - 1; r >= 0; --r) {
    if (count[r] > 0) groups[g++] = {count[r], r};
  }
  std::stable_sort(groups.begin(), groups.begin() + g,
                   [](const auto& a, const auto& b) { return a.first > b.first; });
  int straight_top = -1;
  if (g == 5) {
    if (groups[0].second - groups[4].second == 4) {
      straight_top = groups[0].second;
    } else if (groups[0].second == num_ranks - 1 && groups[1].second == 3 &&
               groups[4].second == 0) {
      straight_top = 3;  // wheel: A-2-3-4-5 with the ace playing low
    }
  }
  if (straight_top >= 0 && flush) return Pack(holdem::kStraightFlush, {straight_top});
  if (groups[0].first == 4) return Pack(holdem::kFourOfAKind, {groups[0].second, groups[1].second});
  if (groups[0].first == 3 && groups[1].first == 2) {
    return Pack(holdem::kFullHouse, {groups[0].second, groups[1].second});
  }
  const int r0 = groups[0].second, r1 = groups[1].second, r2 = groups[2].second;
  if (flush) {
    return Pack(holdem::kFlush, {r0, r1, r2, groups[3].second, groups[4].second});
  }
  if (straight_top >= 0) return Pack(holdem::kStraight, {straight_top});
  if (groups[0].first == 3) return Pack(holdem::kThreeOfAKind, {r0, r1, r2});
  if (groups[0].first == 2 && groups[1].first == 2) return Pack(holdem::kTwoPair, {r0, r1, r2});
  if (groups[0].first == 2) return Pack(holdem::kPair, {r0, r1, r2, groups[3].second});
  return Pack(holdem::kHighCard, {r0, r1, r2, groups[3].second, groups[4].second});
}

std::uint32_t EvalHoldem(const Deck& deck, CardSet cards) {
  std::vector<Card> cs = cards.cards();
  const int n = static_cast<int>(cs.size());
  std::uint32_t best = 0;
  std::array<int, 5> rank{};
  std::array<int, 5> suit{};
  // Iterate the 5-subsets by choosing which (n - 5) cards to drop.
  ForEachSubset(CardSet((1ULL << n) - 1), 5, [&](CardSet pick) {
    int m = 0;
    for (std::uint64_t b = pick.bits(); b; b &= b - 1) {
      Card c = cs[std::countr_zero(b)];
      rank[m] = deck.rank(c);
      suit[m] = deck.suit(c);
      ++m;
    }
    best = std::max(best, Eval5(rank, suit, deck.num_ranks));
  });
  return best;
}

}  // namespace

int NumCategories(HandRule rule) {
  switch (rule) {
    case HandRule::kLeduc: return 2;
    case HandRule::kNumeral211: return 6;
    case HandRule::kHoldem: return 9;
  }
  return 0;
}

std::string CategoryName(HandRule rule, int category) {
  static const char* kLeducNames[] = {"HighCard", "Pair"};
  static const char* kNumeralNames[] = {"HighCard", "Pair", "Flush",
                                        "Straight", "ThreeOfAKind", "StraightFlush"};
  static const char* kHoldemNames[] = {"HighCard", "Pair", "TwoPair",
                                       "ThreeOfAKind", "Straight", "Flush",
                                       "FullHouse", "FourOfAKind", "StraightFlush"};
  if (category < 0 || category >= NumCategories(rule)) {
    throw DomainError("category out of range");
  }
  switch (rule) {
    case HandRule::kLeduc: return kLeducNames[category];
    case HandRule::kNumeral211: return kNumeralNames[category];
    case HandRule::kHoldem: return kHoldemNames[category];
  }
  return "";
}

std::vector<int> AcceptedHandSizes(HandRule rule) {
  switch (rule) {
    case HandRule::kLeduc: return {2};
    case HandRule::kNumeral211: return {3, 4};
    case HandRule::kHoldem: return {5, 6, 7};
  }
  return {};
}

std::uint32_t HandStrength(HandRule rule, const Deck& deck, CardSet cards) {
  switch (rule) {
    case HandRule::kLeduc: return EvalLeduc(deck, cards);
    case HandRule::kNumeral211: return EvalNumeral211(deck, cards);
    case HandRule::kHoldem: return EvalHoldem(deck, cards);
  }
  return 0;
}

HandRank EvaluateHand(HandRule rule, const Deck& deck, CardSet cards) {
  deck.Validate(cards);
  std::vector<int> sizes = AcceptedHandSizes(rule);
  if (std::find(sizes.begin(), sizes.end(), cards.size()) == sizes.end()) {
    throw DomainError("hand of " + std::to_string(cards.size()) +
                      " cards not accepted by this game");
  }
  HandRank hr;
  hr.packed = HandStrength(rule, deck, cards);
  hr.category = static_cast<int>(hr.packed >> 20);
  const int len = TiebreakLength(rule, hr.category);
  for (int i = 0; i < len; ++i) {
    hr.tiebreak.push_back(static_cast<int>((hr.packed >> (16 - 4 * i)) & 0xF));
  }
  return hr;
}

}  // namespace soab
