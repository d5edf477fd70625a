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

#ifndef SOAB_ABSTRACTED_GAME_H_
#define SOAB_ABSTRACTED_GAME_H_

#include <array>
#include <cstdint>
#include <memory>
#include <string>

#include "soab/abstraction_map.h"
#include "soab/game.h"
#include "soab/indexing.h"
#include "soab/public_tree.h"
#include "soab/strategy.h"

namespace soab {

// Original infosets with equal betting trace and equal owner bucket merge.
struct AbstractedInfoset {
  Actor owner = 0;
  std::string sequence;
  std::uint32_t bucket = 0;
  int phase = 1;
  bool operator==(const AbstractedInfoset&) const = default;
  auto operator<=>(const AbstractedInfoset&) const = default;
};

// The game seen through one abstraction map per player. Suit symmetry is
// exploited in traversals whenever both maps are symmetric and
// `allow_symmetry` is set.
class AbstractedGame {
 public:
  AbstractedGame(const Game& game, const ObservationIndexer& ix,
                 std::array<AbstractionMap, 2> maps, bool allow_symmetry = true);

  const Game& game() const { return tree_->game(); }
  const ObservationIndexer& indexer() const { return ix_; }
  const PublicTree& tree() const { return *tree_; }
  const BettingTree& betting() const { return tree_->betting(); }
  const AbstractionMap& map(Actor p) const { return maps_[p]; }
  const BucketTable& buckets(Actor p) const { return buckets_[p]; }
  const std::array<BucketTable, 2>& bucket_tables() const { return buckets_; }
  std::array<std::vector<std::uint32_t>, 2> bucket_counts() const {
    return {maps_[0].bucket_counts(), maps_[1].bucket_counts()};
  }
  std::uint64_t profile_hash() const { return hash_; }

  std::uint64_t InfosetCount(Actor p, int phase) const;
  std::uint64_t InfosetCount() const;

  // Abstracted infoset containing the original infoset of `obs.owner` at
  // decision node `node`.
  AbstractedInfoset Infoset(int node, const ObservationInfoset& obs) const;

  StrategyProfile UniformStrategy() const {
    return StrategyProfile::Uniform(game().spec().id, betting(), bucket_counts(), hash_);
  }
  LiftedStrategy Lift(const StrategyProfile& sigma) const {
    return LiftedStrategy(sigma, betting(), {&maps_[0], &maps_[1]}, ix_);
  }

 private:
  const ObservationIndexer& ix_;
  std::array<AbstractionMap, 2> maps_;
  std::unique_ptr<PublicTree> tree_;
  std::array<BucketTable, 2> buckets_;
  std::uint64_t hash_ = 0;
};

}  // namespace soab

#endif  // SOAB_ABSTRACTED_GAME_H_
