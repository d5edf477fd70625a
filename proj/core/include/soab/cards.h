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

#ifndef SOAB_CARDS_H_
#define SOAB_CARDS_H_

#include <bit>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace soab {

// A card is rank * num_suits + suit, dense in [0, deck size).
using Card = std::uint8_t;

inline constexpr int kMaxDeckSize = 64;

// Bitmask over card ids.
class CardSet {
 public:
  constexpr CardSet() = default;
  constexpr explicit CardSet(std::uint64_t bits) : bits_(bits) {}

  static CardSet Of(std::span<const Card> cards);
  static constexpr CardSet Single(Card c) { return CardSet(1ULL << c); }

  constexpr std::uint64_t bits() const { return bits_; }
  constexpr int size() const { return std::popcount(bits_); }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr bool contains(Card c) const { return (bits_ >> c) & 1ULL; }
  constexpr bool intersects(CardSet o) const { return (bits_ & o.bits_) != 0; }

  constexpr void insert(Card c) { bits_ |= 1ULL << c; }
  constexpr void erase(Card c) { bits_ &= ~(1ULL << c); }

  constexpr CardSet operator|(CardSet o) const { return CardSet(bits_ | o.bits_); }
  constexpr CardSet operator&(CardSet o) const { return CardSet(bits_ & o.bits_); }
  constexpr CardSet operator-(CardSet o) const { return CardSet(bits_ & ~o.bits_); }
  constexpr CardSet& operator|=(CardSet o) {
    bits_ |= o.bits_;
    return *this;
  }
  constexpr bool operator==(const CardSet&) const = default;

  // Cards in ascending id order.
  std::vector<Card> cards() const;

  // Lowest card; undefined on an empty set.
  constexpr Card lowest() const { return static_cast<Card>(std::countr_zero(bits_)); }

 private:
  std::uint64_t bits_ = 0;
};

// Rank/suit layout of a deck plus the glyphs used to print and parse cards.
struct Deck {
  int num_ranks = 0;
  int num_suits = 0;
  std::string rank_chars;  // one char per rank, ascending strength
  std::string suit_chars;  // one char per suit

  int size() const { return num_ranks * num_suits; }
  int rank(Card c) const { return c / num_suits; }
  int suit(Card c) const { return c % num_suits; }
  Card make(int rank, int suit) const {
    return static_cast<Card>(rank * num_suits + suit);
  }
  CardSet all() const {
    return CardSet(size() == 64 ? ~0ULL : ((1ULL << size()) - 1));
  }

  std::string Format(Card c) const;
  std::string Format(CardSet s) const;
  // Parses "Ts" style cards; throws DomainError on unknown glyphs.
  Card Parse(std::string_view text) const;
  // Parses a concatenation such as "Ts9s" or a space separated list.
  CardSet ParseSet(std::string_view text) const;
  void Validate(Card c) const;
  void Validate(CardSet s) const;
};

// Binomial coefficient for the small arguments used by card enumeration.
std::uint64_t Choose(int n, int k);

// Colex rank of a k-subset of `universe`, where positions are counted among
// the cards of `universe` only. `subset` must be contained in `universe`.
std::uint64_t RankSubset(CardSet subset, CardSet universe);
// Inverse of RankSubset.
CardSet UnrankSubset(std::uint64_t rank, int k, CardSet universe);

// Calls fn(CardSet) for every k-subset of `universe` in colex order, which
// matches RankSubset: the i-th call receives the subset of rank i.
template <typename Fn>
void ForEachSubset(CardSet universe, int k, Fn&& fn) {
  std::vector<Card> pool = universe.cards();
  const int n = static_cast<int>(pool.size());
  if (k < 0 || k > n) return;
  if (k == 0) {
    fn(CardSet());
    return;
  }
  const std::uint64_t limit = n == 64 ? 0 : (1ULL << n);
  std::uint64_t v = (k == 64) ? ~0ULL : ((1ULL << k) - 1);
  while (true) {
    CardSet s;
    for (std::uint64_t b = v; b != 0; b &= b - 1) s.insert(pool[std::countr_zero(b)]);
    fn(s);
    // Gosper's hack: next integer with the same popcount.
    std::uint64_t t = v | (v - 1);
    std::uint64_t next = (t + 1) | (((~t & (t + 1)) - 1) >> (std::countr_zero(v) + 1));
    if (next <= v || (limit != 0 && next >= limit)) return;
    v = next;
  }
}

}  // namespace soab

#endif  // SOAB_CARDS_H_
