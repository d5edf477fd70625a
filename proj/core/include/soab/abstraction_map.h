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

#ifndef SOAB_ABSTRACTION_MAP_H_
#define SOAB_ABSTRACTION_MAP_H_

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "soab/indexing.h"

namespace soab {

// Which observation index a map's entries are keyed by. Canonical maps are
// valid only for suit-invariant abstractions; the identity abstraction needs
// raw keys because it separates suit-isomorphic observations.
enum class IndexSpace : std::uint8_t { kCanonical = 0, kRaw = 1 };

// Per-phase total map from observation index to a dense bucket id.
class AbstractionMap {
 public:
  AbstractionMap() = default;
  // Validates that every phase's bucket ids are dense in [0, max + 1).
  AbstractionMap(std::string game_id, IndexSpace space,
                 std::vector<std::vector<std::uint32_t>> buckets);

  const std::string& game_id() const { return game_id_; }
  IndexSpace index_space() const { return space_; }
  int num_phases() const { return static_cast<int>(buckets_.size()); }
  std::uint32_t bucket_count(int phase) const { return counts_.at(phase - 1); }
  std::vector<std::uint32_t> bucket_counts() const { return counts_; }
  const std::vector<std::uint32_t>& entries(int phase) const { return buckets_.at(phase - 1); }
  std::uint32_t Bucket(int phase, std::uint64_t index) const { return buckets_[phase - 1][index]; }

  // Bucket of a raw observation index, mapping through the canonical table
  // for canonical maps.
  std::uint32_t BucketOfRaw(const ObservationIndexer& ix, int phase, std::uint64_t raw) const;
  std::uint32_t BucketOf(const ObservationIndexer& ix, const ObservationInfoset& obs) const;

  // Same partition keyed by raw indices.
  AbstractionMap ToRaw(const ObservationIndexer& ix) const;

  // Throws DomainError if the map does not fit the indexer's game.
  void CheckCompatible(const ObservationIndexer& ix) const;

  bool operator==(const AbstractionMap&) const = default;

 private:
  std::string game_id_;
  IndexSpace space_ = IndexSpace::kCanonical;
  std::vector<std::vector<std::uint32_t>> buckets_;
  std::vector<std::uint32_t> counts_;
};

// Labels items by the rank of their value among the distinct values, so
// equal values share a label and labels are dense. Returns the label count.
template <typename T>
std::uint32_t LabelByValue(const std::vector<T>& values, std::vector<std::uint32_t>* labels) {
  std::vector<T> distinct = values;
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  labels->resize(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    (*labels)[i] = static_cast<std::uint32_t>(
        std::lower_bound(distinct.begin(), distinct.end(), values[i]) - distinct.begin());
  }
  return static_cast<std::uint32_t>(distinct.size());
}

// Relabels arbitrary ids densely, preserving their relative order.
std::uint32_t DenseRelabel(std::vector<std::uint32_t>* ids);

// Identity abstraction: every raw observation is its own bucket.
AbstractionMap BuildIdentity(const ObservationIndexer& ix);
// Lossless isomorphism: one bucket per suit-isomorphism class.
AbstractionMap BuildLi(const ObservationIndexer& ix);

// a refines b (a is at least as fine) per phase: every b bucket is a union
// of a buckets. Maps in different index spaces are compared on raw keys.
// Throws DomainError for maps of different games.
std::vector<bool> CheckRefinement(const AbstractionMap& a, const AbstractionMap& b,
                                  const ObservationIndexer* ix = nullptr);

}  // namespace soab

#endif  // SOAB_ABSTRACTION_MAP_H_
