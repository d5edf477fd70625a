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

#ifndef SOAB_PUBLIC_TREE_H_
#define SOAB_PUBLIC_TREE_H_

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "soab/abstraction_map.h"
#include "soab/cards.h"
#include "soab/game.h"
#include "soab/indexing.h"

namespace soab {

// Betting skeleton of a game, independent of the cards. Every decision node
// is identified with its betting trace; chance nodes mark phase boundaries.
struct BettingNode {
  enum class Kind : std::uint8_t { kDecision, kChance, kFold, kShowdown };
  Kind kind = Kind::kDecision;
  int phase = 1;
  Actor player = kChance;  // acting player at decision nodes, folder at folds
  std::array<int, 2> committed{};
  std::vector<BetToken> actions;
  std::vector<int> children;  // parallel to actions; one child at chance
  int parent = -1;
  int slot = 0;  // first action slot of this node within (player, phase)
  std::string sequence;  // e.g. "crc/b", phases separated by '/'
};

class BettingTree {
 public:
  explicit BettingTree(const Game& game);

  int size() const { return static_cast<int>(nodes_.size()); }
  const BettingNode& node(int id) const { return nodes_[id]; }
  int num_phases() const { return num_phases_; }

  // Action slots owned by `player` in `phase`: the width of one bucket's
  // row in regret and strategy tables.
  int slot_count(Actor player, int phase) const { return slots_[player][phase - 1]; }
  int decision_count(Actor player, int phase) const { return decisions_[player][phase - 1]; }
  const std::vector<int>& decision_nodes() const { return decision_nodes_; }

  std::optional<int> Find(std::string_view sequence) const;

 private:
  int Build(const Game& game, const BettingState& s, int parent, const std::string& seq);

  std::vector<BettingNode> nodes_;
  std::vector<int> decision_nodes_;
  int num_phases_ = 0;
  std::array<std::vector<int>, 2> slots_;
  std::array<std::vector<int>, 2> decisions_;
};

// Every possible hole-card set of one player, indexed by colex rank.
class HandSpace {
 public:
  HandSpace(const Deck& deck, int holes);
  int size() const { return static_cast<int>(hands_.size()); }
  int holes() const { return holes_; }
  CardSet hand(int h) const { return hands_[h]; }
  const std::array<Card, 2>& cards(int h) const { return cards_[h]; }
  int Index(CardSet hand) const;

 private:
  CardSet universe_;
  int holes_;
  std::vector<CardSet> hands_;
  std::vector<std::array<Card, 2>> cards_;
};

// One public chance outcome, up to suit symmetry. Per-hand vectors at a
// node use compact positions: only hands disjoint from the board, and on
// final-phase boards in ascending strength order. `cosets` holds one group
// element per board in this node's orbit under the parent's stabilizer, each
// mapping the representative board onto that orbit member.
struct BoardNode {
  int phase = 1;
  CardSet cards;
  std::vector<CardSet> boards;  // per dealt phase
  int parent = -1;
  std::vector<int> children;
  std::vector<int> cosets;
  std::vector<int> stabilizer;
  double multiplicity = 1;  // orbit size in the full game

  std::vector<int> hand_ids;                // position -> hand index
  std::vector<int> position;                // hand index -> position or -1
  std::vector<std::array<Card, 2>> cards_at;  // per position
  std::vector<int> parent_pos;              // position -> parent position
  // orbit_pos[k][i]: parent position of hand i relabeled by cosets[k].
  std::vector<std::vector<int>> orbit_pos;
  // Final phase: strength per position and starts of equal-strength runs,
  // closed by a sentinel equal to the hand count.
  std::vector<std::uint32_t> strength;
  std::vector<int> tie_start;

  int size() const { return static_cast<int>(hand_ids.size()); }
};

// Betting tree plus the public card tree that vectorized traversals walk.
// With symmetry enabled, only one board per orbit is kept; this is exact
// when every strategy involved is invariant under the group.
class PublicTree {
 public:
  PublicTree(const Game& game, bool use_symmetry);

  const Game& game() const { return game_; }
  const BettingTree& betting() const { return betting_; }
  const HandSpace& hands() const { return hands_; }
  const SymmetryGroup& group() const { return group_; }
  bool symmetric() const { return group_.size() > 1; }
  const std::vector<BoardNode>& boards() const { return boards_; }
  const BoardNode& board(int id) const { return boards_[id]; }
  // hand_perm(g)[h] is the index of hand h relabeled by group element g.
  const std::vector<int>& hand_perm(int g) const { return hand_perm_[g]; }
  // Probability of one specific ordered pair of holes together with one
  // specific board sequence through `phase`.
  double deal_probability(int phase) const { return deal_prob_[phase - 1]; }

 private:
  void Expand(int node);

  Game game_;
  BettingTree betting_;
  HandSpace hands_;
  SymmetryGroup group_;
  std::vector<BoardNode> boards_;
  std::vector<std::vector<int>> hand_perm_;
  std::vector<double> deal_prob_;
};

// True when the map assigns one bucket to every suit-isomorphism class.
bool IsSymmetric(const AbstractionMap& map, const ObservationIndexer& ix);

// bucket[board node][position] for one player.
inline constexpr std::uint32_t kNoBucket = 0xffffffffu;
using BucketTable = std::vector<std::vector<std::uint32_t>>;
BucketTable BuildBucketTable(const PublicTree& tree, const AbstractionMap& map,
                             const ObservationIndexer& ix, Actor player);

}  // namespace soab

#endif  // SOAB_PUBLIC_TREE_H_
