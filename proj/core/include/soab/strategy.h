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

#ifndef SOAB_STRATEGY_H_
#define SOAB_STRATEGY_H_

#include <array>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "soab/abstraction_map.h"
#include "soab/indexing.h"
#include "soab/public_tree.h"

namespace soab {

// Action distributions over abstracted infosets. An abstracted infoset is a
// decision node (its betting trace) together with the owner's bucket. For
// every player and phase the table is laid out as [slot][bucket], a node's
// actions occupying consecutive slots, so that one action's probabilities
// over all buckets are contiguous.
class StrategyProfile {
 public:
  StrategyProfile() = default;
  StrategyProfile(std::string game_id, const BettingTree& tree,
                  std::array<std::vector<std::uint32_t>, 2> bucket_counts,
                  std::uint64_t profile_hash = 0);

  // Every infoset plays uniformly.
  static StrategyProfile Uniform(std::string game_id, const BettingTree& tree,
                                 std::array<std::vector<std::uint32_t>, 2> bucket_counts,
                                 std::uint64_t profile_hash = 0);

  const std::string& game_id() const { return game_id_; }
  std::uint64_t profile_hash() const { return hash_; }
  int num_phases() const { return static_cast<int>(slots_[0].size()); }
  std::uint32_t bucket_count(Actor p, int phase) const { return buckets_[p][phase - 1]; }
  int slot_count(Actor p, int phase) const { return slots_[p][phase - 1]; }
  const std::vector<std::uint32_t>& bucket_counts(Actor p) const { return buckets_[p]; }

  std::vector<double>& table(Actor p, int phase) { return tables_[p][phase - 1]; }
  const std::vector<double>& table(Actor p, int phase) const { return tables_[p][phase - 1]; }

  // Probabilities of action `a` at `node`, indexed by bucket.
  const double* ActionRow(const BettingNode& node, int a) const {
    return tables_[node.player][node.phase - 1].data() +
           static_cast<std::size_t>(node.slot + a) * buckets_[node.player][node.phase - 1];
  }
  double* MutableActionRow(const BettingNode& node, int a) {
    return tables_[node.player][node.phase - 1].data() +
           static_cast<std::size_t>(node.slot + a) * buckets_[node.player][node.phase - 1];
  }
  double Prob(const BettingNode& node, std::uint32_t bucket, int a) const {
    return ActionRow(node, a)[bucket];
  }
  std::vector<double> Distribution(const BettingNode& node, std::uint32_t bucket) const;
  void SetDistribution(const BettingNode& node, std::uint32_t bucket, std::span<const double> d);

  // Throws ValidationError unless every distribution is nonnegative and sums
  // to one within `tolerance`, or the layout disagrees with `tree`.
  void Validate(const BettingTree& tree, double tolerance = 1e-9) const;

  // Replaces one player's tables with another profile's, for joining
  // strategies solved in different abstracted games.
  void AdoptPlayer(Actor p, const StrategyProfile& from);

  bool operator==(const StrategyProfile&) const = default;

 private:
  std::string game_id_;
  std::uint64_t hash_ = 0;
  std::array<std::vector<std::uint32_t>, 2> buckets_;
  std::array<std::vector<int>, 2> slots_;
  std::array<std::vector<std::vector<double>>, 2> tables_;
};

// FNV-1a over the maps' game id, index space and bucket entries.
std::uint64_t ProfileHash(const AbstractionMap& p1, const AbstractionMap& p2);

// View of an abstracted strategy as a strategy of the original game: an
// original infoset plays the distribution of the abstracted infoset that
// contains it.
class LiftedStrategy {
 public:
  LiftedStrategy(const StrategyProfile& sigma, const BettingTree& tree,
                 std::array<const AbstractionMap*, 2> maps, const ObservationIndexer& ix);

  // Distribution at decision node `node` for the observation `obs` of the
  // acting player.
  std::vector<double> Policy(int node, const ObservationInfoset& obs) const;

 private:
  const StrategyProfile& sigma_;
  const BettingTree& tree_;
  std::array<const AbstractionMap*, 2> maps_;
  const ObservationIndexer& ix_;
};

inline constexpr std::uint32_t kStrategyFormatVersion = 1;

// Binary layout: "SOST", u32 version, u16-prefixed game id, u64 profile
// hash, per player the bucket count of every phase, then a u64 entry count
// and entries (u8 player, u32 node, u32 bucket, u8 actions, f64 each).
void WriteStrategy(std::ostream& out, const StrategyProfile& sigma, const BettingTree& tree);
StrategyProfile ReadStrategy(std::istream& in, const BettingTree& tree);
void SaveStrategy(const std::string& path, const StrategyProfile& sigma, const BettingTree& tree);
StrategyProfile LoadStrategy(const std::string& path, const BettingTree& tree);

// CSV mirror: player,phase,sequence,bucket,action,probability.
void WriteStrategyCsv(std::ostream& out, const StrategyProfile& sigma, const BettingTree& tree);

}  // namespace soab

#endif  // SOAB_STRATEGY_H_
