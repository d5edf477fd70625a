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

#ifndef SOAB_INDEXING_H_
#define SOAB_INDEXING_H_

#include <array>
#include <cstdint>
#include <functional>
#include <memory>
#include <mutex>
#include <vector>

#include "soab/cards.h"
#include "soab/game.h"
#include "soab/soog.h"

namespace soab {

// Card permutations under which a game's hand strengths are invariant.
// Games whose hand rule ignores suits allow independent suit relabeling per
// rank; the others allow one global suit relabeling.
class SymmetryGroup {
 public:
  using Perm = std::array<Card, kMaxDeckSize>;

  static SymmetryGroup For(const GameSpec& spec);
  static SymmetryGroup Trivial(const Deck& deck);

  int size() const { return static_cast<int>(perms_.size()); }
  const Perm& perm(int g) const { return perms_[g]; }
  CardSet Apply(int g, CardSet s) const;

  // Index of the inverse of element g.
  int Inverse(int g) const { return inverse_[g]; }

 private:
  std::vector<Perm> perms_;
  std::vector<int> inverse_;
  int deck_size_ = 0;
  void Finish();
};

// Dense indexing of one player's observations (own hole cards plus board
// cards per phase). The raw index enumerates every observation; the
// canonical index enumerates classes under the symmetry group, with the
// lexicographically least relabeling as the representative.
class ObservationIndexer {
 public:
  explicit ObservationIndexer(const GameSpec& spec);

  const GameSpec& spec() const { return spec_; }
  const SymmetryGroup& group() const { return group_; }
  int num_phases() const { return spec_.num_phases(); }

  std::uint64_t RawCount(int phase) const;
  std::uint64_t RawIndex(const ObservationInfoset& obs) const;
  ObservationInfoset RawDecode(int phase, std::uint64_t index, Actor owner = 0) const;

  // Order-independent canonical key; equal iff observations are symmetric.
  std::uint64_t CanonicalKey(const ObservationInfoset& obs) const;
  static ObservationInfoset DecodeKey(const GameSpec& spec, int phase, std::uint64_t key,
                                      Actor owner = 0);

  // Canonical tables are built on first use and cached. Building phase r
  // walks every raw observation of that phase.
  std::uint64_t CanonicalCount(int phase) const;
  std::uint32_t CanonicalIndex(const ObservationInfoset& obs) const;
  std::uint32_t RawToCanonical(int phase, std::uint64_t raw) const;
  ObservationInfoset Representative(int phase, std::uint32_t canon, Actor owner = 0) const;
  std::uint64_t RepresentativeRaw(int phase, std::uint32_t canon) const;
  // Number of raw observations in canonical class `canon`.
  std::uint32_t ClassSize(int phase, std::uint32_t canon) const;
  const std::vector<std::uint32_t>& RawToCanonicalTable(int phase) const;

  // Throws DomainError when the observation does not fit the game and phase.
  void Validate(const ObservationInfoset& obs) const;

 private:
  struct PhaseTable {
    std::vector<std::uint32_t> raw_to_canon;
    std::vector<std::uint64_t> keys;  // sorted
    std::vector<std::uint32_t> class_size;
    std::vector<std::uint64_t> rep_raw;
  };
  const PhaseTable& Table(int phase) const;

  GameSpec spec_;
  SymmetryGroup group_;
  mutable std::vector<std::unique_ptr<PhaseTable>> tables_;
  mutable std::mutex mu_;
};

// Raw and canonical observation counts for one phase, plus a raw iterator.
struct InfosetEnumeration {
  int phase = 1;
  std::uint64_t raw_count = 0;
  std::uint64_t canonical_count = 0;
};

InfosetEnumeration EnumerateInfosets(const ObservationIndexer& indexer, int phase,
                                     bool with_canonical = true);
// Visits each raw observation of `phase` exactly once in raw-index order.
void ForEachRawObservation(const ObservationIndexer& indexer, int phase,
                           const std::function<void(std::uint64_t, const ObservationInfoset&)>& fn);

}  // namespace soab

#endif  // SOAB_INDEXING_H_
