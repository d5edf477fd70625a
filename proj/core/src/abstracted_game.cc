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

#include "soab/abstracted_game.h"

#include "soab/errors.h"

namespace soab {

AbstractedGame::AbstractedGame(const Game& game, const ObservationIndexer& ix,
                               std::array<AbstractionMap, 2> maps, bool allow_symmetry)
    : ix_(ix), maps_(std::move(maps)) {
  if (ix.spec().id != game.spec().id) throw DomainError("indexer and game disagree");
  for (const AbstractionMap& m : maps_) m.CheckCompatible(ix);
  const bool sym = allow_symmetry && IsSymmetric(maps_[0], ix) && IsSymmetric(maps_[1], ix);
  tree_ = std::make_unique<PublicTree>(game, sym);
  for (Actor p : {0, 1}) buckets_[p] = BuildBucketTable(*tree_, maps_[p], ix, p);
  hash_ = ProfileHash(maps_[0], maps_[1]);
}

std::uint64_t AbstractedGame::InfosetCount(Actor p, int phase) const {
  return static_cast<std::uint64_t>(betting().decision_count(p, phase)) * maps_[p].bucket_count(phase);
}

std::uint64_t AbstractedGame::InfosetCount() const {
  std::uint64_t n = 0;
  for (Actor p : {0, 1}) {
    for (int r = 1; r <= betting().num_phases(); ++r) n += InfosetCount(p, r);
  }
  return n;
}

AbstractedInfoset AbstractedGame::Infoset(int node, const ObservationInfoset& obs) const {
  const BettingNode& n = betting().node(node);
  if (n.kind != BettingNode::Kind::kDecision || n.player != obs.owner) {
    throw DomainError("observation owner does not act at this node");
  }
  if (obs.phase() != n.phase) throw PhaseError("observation phase does not match the node");
  return {obs.owner, n.sequence, maps_[obs.owner].BucketOf(ix_, obs), n.phase};
}

}  // namespace soab
