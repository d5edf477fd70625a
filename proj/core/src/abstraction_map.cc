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

#include "soab/abstraction_map.h"

#include "soab/errors.h"

namespace soab {

AbstractionMap::AbstractionMap(std::string game_id, IndexSpace space,
                               std::vector<std::vector<std::uint32_t>> buckets)
    : game_id_(std::move(game_id)), space_(space), buckets_(std::move(buckets)) {
  for (std::size_t r = 0; r < buckets_.size(); ++r) {
    const auto& b = buckets_[r];
    std::uint32_t n = 0;
    for (std::uint32_t x : b) n = std::max(n, x + 1);
    std::vector<char> used(n, 0);
    for (std::uint32_t x : b) used[x] = 1;
    if (std::find(used.begin(), used.end(), 0) != used.end()) {
      throw ValidationError("phase " + std::to_string(r + 1) + " bucket ids are not dense");
    }
    counts_.push_back(n);
  }
}

std::uint32_t AbstractionMap::BucketOfRaw(const ObservationIndexer& ix, int phase,
                                          std::uint64_t raw) const {
  if (space_ == IndexSpace::kRaw) return buckets_[phase - 1][raw];
  return buckets_[phase - 1][ix.RawToCanonical(phase, raw)];
}

std::uint32_t AbstractionMap::BucketOf(const ObservationIndexer& ix,
                                       const ObservationInfoset& obs) const {
  if (space_ == IndexSpace::kRaw) return buckets_[obs.phase() - 1][ix.RawIndex(obs)];
  return buckets_[obs.phase() - 1][ix.CanonicalIndex(obs)];
}

AbstractionMap AbstractionMap::ToRaw(const ObservationIndexer& ix) const {
  if (space_ == IndexSpace::kRaw) return *this;
  std::vector<std::vector<std::uint32_t>> out(buckets_.size());
  for (int r = 1; r <= num_phases(); ++r) {
    const auto& table = ix.RawToCanonicalTable(r);
    out[r - 1].resize(table.size());
    for (std::size_t i = 0; i < table.size(); ++i) out[r - 1][i] = buckets_[r - 1][table[i]];
  }
  return AbstractionMap(game_id_, IndexSpace::kRaw, std::move(out));
}

void AbstractionMap::CheckCompatible(const ObservationIndexer& ix) const {
  if (game_id_ != ix.spec().id) {
    throw DomainError("map for game '" + game_id_ + "' used with game '" + ix.spec().id + "'");
  }
  if (num_phases() != ix.num_phases()) throw DomainError("map phase count mismatch");
  for (int r = 1; r <= num_phases(); ++r) {
    std::uint64_t want = space_ == IndexSpace::kRaw ? ix.RawCount(r) : ix.CanonicalCount(r);
    if (entries(r).size() != want) {
      throw DomainError("phase " + std::to_string(r) + " map has " +
                        std::to_string(entries(r).size()) + " entries, expected " +
                        std::to_string(want));
    }
  }
}

std::uint32_t DenseRelabel(std::vector<std::uint32_t>* ids) {
  std::vector<std::uint32_t> labels;
  std::uint32_t n = LabelByValue(*ids, &labels);
  *ids = std::move(labels);
  return n;
}

AbstractionMap BuildIdentity(const ObservationIndexer& ix) {
  std::vector<std::vector<std::uint32_t>> b(ix.num_phases());
  for (int r = 1; r <= ix.num_phases(); ++r) {
    b[r - 1].resize(ix.RawCount(r));
    for (std::size_t i = 0; i < b[r - 1].size(); ++i) b[r - 1][i] = static_cast<std::uint32_t>(i);
  }
  return AbstractionMap(ix.spec().id, IndexSpace::kRaw, std::move(b));
}

AbstractionMap BuildLi(const ObservationIndexer& ix) {
  std::vector<std::vector<std::uint32_t>> b(ix.num_phases());
  for (int r = 1; r <= ix.num_phases(); ++r) {
    b[r - 1].resize(ix.CanonicalCount(r));
    for (std::size_t i = 0; i < b[r - 1].size(); ++i) b[r - 1][i] = static_cast<std::uint32_t>(i);
  }
  return AbstractionMap(ix.spec().id, IndexSpace::kCanonical, std::move(b));
}

std::vector<bool> CheckRefinement(const AbstractionMap& a, const AbstractionMap& b,
                                  const ObservationIndexer* ix) {
  if (a.game_id() != b.game_id()) throw DomainError("refinement check across different games");
  if (a.num_phases() != b.num_phases()) throw DomainError("maps differ in phase count");
  if (a.index_space() != b.index_space()) {
    if (ix == nullptr) throw DependencyError("mixed index spaces need an indexer");
    return CheckRefinement(a.ToRaw(*ix), b.ToRaw(*ix), nullptr);
  }
  std::vector<bool> out;
  for (int r = 1; r <= a.num_phases(); ++r) {
    const auto& ea = a.entries(r);
    const auto& eb = b.entries(r);
    if (ea.size() != eb.size()) throw DomainError("maps differ in entry count");
    // Each a bucket must sit inside a single b bucket.
    std::vector<std::int64_t> parent(a.bucket_count(r), -1);
    bool ok = true;
    for (std::size_t i = 0; i < ea.size() && ok; ++i) {
      std::int64_t& p = parent[ea[i]];
      if (p < 0) {
        p = eb[i];
      } else if (p != static_cast<std::int64_t>(eb[i])) {
        ok = false;
      }
    }
    out.push_back(ok);
  }
  return out;
}

}  // namespace soab
