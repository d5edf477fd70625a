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

#include "soab/cards.h"

#include <array>
#include <cctype>

#include "soab/errors.h"

namespace soab {

CardSet CardSet::Of(std::span<const Card> cards) {
  CardSet s;
  for (Card c : cards) s.insert(c);
  return s;
}

std::vector<Card> CardSet::cards() const {
  std::vector<Card> out;
  out.reserve(size());
  for (std::uint64_t b = bits_; b != 0; b &= b - 1) {
    out.push_back(static_cast<Card>(std::countr_zero(b)));
  }
  return out;
}

std::string Deck::Format(Card c) const {
  std::string s;
  s += rank_chars[rank(c)];
  s += suit_chars[suit(c)];
  return s;
}

std::string Deck::Format(CardSet set) const {
  std::string s;
  // Highest rank first reads like poker notation.
  std::vector<Card> cs = set.cards();
  for (auto it = cs.rbegin(); it != cs.rend(); ++it) s += Format(*it);
  return s;
}

Card Deck::Parse(std::string_view text) const {
  if (text.size() != 2) {
    throw DomainError("card must be two characters: '" + std::string(text) + "'");
  }
  auto r = rank_chars.find(static_cast<char>(std::toupper(text[0])));
  auto s = suit_chars.find(static_cast<char>(std::tolower(text[1])));
  if (r == std::string::npos || s == std::string::npos) {
    throw DomainError("unknown card '" + std::string(text) + "'");
  }
  return make(static_cast<int>(r), static_cast<int>(s));
}

CardSet Deck::ParseSet(std::string_view text) const {
  CardSet out;
  std::string compact;
  for (char ch : text) {
    if (!std::isspace(static_cast<unsigned char>(ch)) && ch != ',') compact += ch;
  }
  if (compact.size() % 2 != 0) {
    throw DomainError("odd-length card list '" + std::string(text) + "'");
  }
  for (std::size_t i = 0; i < compact.size(); i += 2) {
    Card c = Parse(std::string_view(compact).substr(i, 2));
    if (out.contains(c)) throw DomainError("duplicate card " + Format(c));
    out.insert(c);
  }
  return out;
}

void Deck::Validate(Card c) const {
  if (c >= size()) {
    throw DomainError("card id " + std::to_string(c) + " outside deck of " +
                      std::to_string(size()));
  }
}

void Deck::Validate(CardSet s) const {
  if ((s - all()).bits() != 0) {
    throw DomainError("card set contains ids outside the deck");
  }
}

std::uint64_t Choose(int n, int k) {
  static const auto table = [] {
    std::array<std::array<std::uint64_t, kMaxDeckSize + 1>, kMaxDeckSize + 1> t{};
    for (int i = 0; i <= kMaxDeckSize; ++i) {
      t[i][0] = 1;
      for (int j = 1; j <= i; ++j) t[i][j] = t[i - 1][j - 1] + (j <= i - 1 ? t[i - 1][j] : 0);
    }
    return t;
  }();
  if (k < 0 || n < 0 || k > n) return 0;
  return table[n][k];
}

std::uint64_t RankSubset(CardSet subset, CardSet universe) {
  std::uint64_t rank = 0;
  int j = 1;
  for (Card c : subset.cards()) {
    // position of c among universe cards
    std::uint64_t below = universe.bits() & ((1ULL << c) - 1);
    int pos = std::popcount(below);
    rank += Choose(pos, j);
    ++j;
  }
  return rank;
}

CardSet UnrankSubset(std::uint64_t rank, int k, CardSet universe) {
  std::vector<Card> pool = universe.cards();
  CardSet out;
  int n = static_cast<int>(pool.size());
  for (int j = k; j >= 1; --j) {
    // largest pos with Choose(pos, j) <= rank
    int pos = j - 1;
    while (pos + 1 < n && Choose(pos + 1, j) <= rank) ++pos;
    rank -= Choose(pos, j);
    out.insert(pool[pos]);
    n = pos;
  }
  return out;
}

}  // namespace soab
