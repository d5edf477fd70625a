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

#ifndef SOAB_SRC_TREE_EVAL_H_
#define SOAB_SRC_TREE_EVAL_H_

// Terminal and chance kernels shared by the vectorized traversals. Values
// are counterfactual: for each own hand, the sum over compatible opponent
// hands of opponent reach times deal probability times payoff.

#include <array>
#include <vector>

#include "soab/public_tree.h"

namespace soab::internal {

// Opponent reach summed over all hands and per card. Own hand i then meets
// compatible opponents worth total - card[c1] - card[c2] + r[i] with two
// hole cards (the opponent holding exactly i is subtracted twice) and
// total - card[c1] with one.
struct CardSums {
  double total = 0;
  double card[kMaxDeckSize] = {};

  void Clear(int deck) {
    total = 0;
    std::fill(card, card + deck, 0.0);
  }
};

template <int kHoles>
inline void AddHand(CardSums& s, const std::array<Card, 2>& c, double r) {
  s.total += r;
  s.card[c[0]] += r;
  if constexpr (kHoles == 2) s.card[c[1]] += r;
}

template <int kHoles>
inline double Compatible(const CardSums& s, const std::array<Card, 2>& c) {
  if constexpr (kHoles == 2) return s.total - s.card[c[0]] - s.card[c[1]];
  return s.total - s.card[c[0]];
}

// Self term of the inclusion-exclusion, for sums that contain hand i.
template <int kHoles>
inline double SelfTerm(double r) {
  return kHoles == 2 ? r : 0.0;
}

// Fold at `b`: out[i] = u * (compatible opponent reach).
template <int kHoles>
void FoldValuesT(const BoardNode& b, int deck, const double* opp, double u, double* out) {
  CardSums s;
  s.Clear(deck);
  const int n = b.size();
  for (int i = 0; i < n; ++i) AddHand<kHoles>(s, b.cards_at[i], opp[i]);
  for (int i = 0; i < n; ++i) {
    out[i] = u * (Compatible<kHoles>(s, b.cards_at[i]) + SelfTerm<kHoles>(opp[i]));
  }
}

// Showdown at a final board: out[i] = stake * (weaker - stronger) over
// compatible opponents. Positions are sorted by strength, so one ascending
// pass yields "strictly weaker" and "weaker or tied"; stronger is the
// complement in the totals.
template <int kHoles>
void ShowdownValuesT(const BoardNode& b, int deck, const double* opp, double stake, double* out) {
  CardSums s;
  s.Clear(deck);
  const int groups = static_cast<int>(b.tie_start.size()) - 1;
  for (int g = 0; g < groups; ++g) {
    const int lo = b.tie_start[g];
    const int hi = b.tie_start[g + 1];
    for (int i = lo; i < hi; ++i) out[i] = Compatible<kHoles>(s, b.cards_at[i]);
    for (int i = lo; i < hi; ++i) AddHand<kHoles>(s, b.cards_at[i], opp[i]);
    for (int i = lo; i < hi; ++i) {
      out[i] += Compatible<kHoles>(s, b.cards_at[i]) + SelfTerm<kHoles>(opp[i]);
    }
  }
  // s now holds the totals: weaker - stronger = lt + le - all.
  const int n = b.size();
  for (int i = 0; i < n; ++i) {
    out[i] = stake * (out[i] - Compatible<kHoles>(s, b.cards_at[i]) - SelfTerm<kHoles>(opp[i]));
  }
}

// Payoff of a terminal to `player` in chips, scaled by the deal probability.
inline double TerminalScale(const PublicTree& t, const BettingNode& n, Actor player) {
  const double p = t.deal_probability(n.phase);
  if (n.kind == BettingNode::Kind::kFold) {
    const double chips = n.committed[n.player];
    return (n.player == player ? -chips : chips) * p;
  }
  return n.committed[0] * p;
}

inline void TerminalValues(const PublicTree& t, const BettingNode& n, const BoardNode& b,
                           const double* opp, Actor player, double* out) {
  const double u = TerminalScale(t, n, player);
  const int deck = t.game().deck().size();
  const bool two = t.hands().holes() == 2;
  if (n.kind == BettingNode::Kind::kFold) {
    two ? FoldValuesT<2>(b, deck, opp, u, out) : FoldValuesT<1>(b, deck, opp, u, out);
  } else {
    two ? ShowdownValuesT<2>(b, deck, opp, u, out) : ShowdownValuesT<1>(b, deck, opp, u, out);
  }
}

// Reach entering a child board, in the child's positions.
inline void ChildReach(const BoardNode& child, const double* parent, double* out) {
  const int n = child.size();
  const int* pos = child.parent_pos.data();
  for (int i = 0; i < n; ++i) out[i] = parent[pos[i]];
}

// Adds a representative board's values for every board in its orbit.
inline void AccumulateOrbit(const BoardNode& child, const double* in, double* out) {
  const int n = child.size();
  for (const std::vector<int>& pos : child.orbit_pos) {
    const int* p = pos.data();
    for (int i = 0; i < n; ++i) out[p[i]] += in[i];
  }
}

}  // namespace soab::internal

#endif  // SOAB_SRC_TREE_EVAL_H_
