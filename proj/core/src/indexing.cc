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

#include "soab/indexing.h"

#include <algorithm>
#include <numeric>

#include "soab/errors.h"

namespace soab {

CardSet SymmetryGroup::Apply(int g, CardSet s) const {
  const Perm& p = perms_[g];
  CardSet out;
  for (std::uint64_t b = s.bits(); b; b &= b - 1) out.insert(p[std::countr_zero(b)]);
  return out;
}

void SymmetryGroup::Finish() {
  inverse_.assign(perms_.size(), -1);
  for (std::size_t g = 0; g < perms_.size(); ++g) {
    for (std::size_t h = 0; h < perms_.size(); ++h) {
      bool ok = true;
      for (int c = 0; c < deck_size_ && ok; ++c) ok = perms_[h][perms_[g][c]] == c;
      if (ok) {
        inverse_[g] = static_cast<int>(h);
        break;
      }
    }
  }
}

SymmetryGroup SymmetryGroup::Trivial(const Deck& deck) {
  SymmetryGroup grp;
  grp.deck_size_ = deck.size();
  Perm id{};
  std::iota(id.begin(), id.end(), 0);
  grp.perms_.push_back(id);
  grp.Finish();
  return grp;
}

SymmetryGroup SymmetryGroup::For(const GameSpec& spec) {
  const Deck& d = spec.deck;
  SymmetryGroup grp;
  grp.deck_size_ = d.size();
  std::vector<int> suits(d.num_suits);
  std::iota(suits.begin(), suits.end(), 0);
  std::vector<std::vector<int>> suit_perms;
  do {
    suit_perms.push_back(suits);
  } while (std::next_permutation(suits.begin(), suits.end()));

  if (spec.hand_rule == HandRule::kLeduc) {
    // Suits never matter, so each rank may relabel its suits independently.
    std::vector<int> choice(d.num_ranks, 0);
    while (true) {
      Perm p{};
      std::iota(p.begin(), p.end(), 0);
      for (int r = 0; r < d.num_ranks; ++r) {
        for (int s = 0; s < d.num_suits; ++s) p[d.make(r, s)] = d.make(r, suit_perms[choice[r]][s]);
      }
      grp.perms_.push_back(p);
      int r = 0;
      while (r < d.num_ranks && ++choice[r] == static_cast<int>(suit_perms.size())) choice[r++] = 0;
      if (r == d.num_ranks) break;
    }
  } else {
    for (const auto& sp : suit_perms) {
      Perm p{};
      std::iota(p.begin(), p.end(), 0);
      for (int r = 0; r < d.num_ranks; ++r) {
        for (int s = 0; s < d.num_suits; ++s) p[d.make(r, s)] = d.make(r, sp[s]);
      }
      grp.perms_.push_back(p);
    }
  }
  grp.Finish();
  return grp;
}

ObservationIndexer::ObservationIndexer(const GameSpec& spec)
    : spec_(spec), group_(SymmetryGroup::For(spec)) {
  spec_.Validate();
  tables_.resize(spec_.num_phases() + 1);
}

std::uint64_t ObservationIndexer::RawCount(int phase) const {
  if (phase < 1 || phase > num_phases()) throw PhaseError("phase out of range");
  int left = spec_.deck.size();
  std::uint64_t n = Choose(left, spec_.holes);
  left -= spec_.holes;
  for (int r = 2; r <= phase; ++r) {
    const int b = spec_.board_per_phase[r - 2];
    n *= Choose(left, b);
    left -= b;
  }
  return n;
}

void ObservationIndexer::Validate(const ObservationInfoset& obs) const {
  const int phase = obs.phase();
  if (phase < 1 || phase > num_phases()) throw PhaseError("observation phase out of range");
  spec_.deck.Validate(obs.own);
  if (obs.own.size() != spec_.holes) throw DomainError("wrong number of hole cards");
  CardSet seen = obs.own;
  for (int r = 2; r <= phase; ++r) {
    CardSet b = obs.boards[r - 2];
    spec_.deck.Validate(b);
    if (b.size() != spec_.board_per_phase[r - 2]) throw DomainError("wrong board size");
    if (seen.intersects(b)) throw DomainError("board overlaps other cards");
    seen |= b;
  }
}

std::uint64_t ObservationIndexer::RawIndex(const ObservationInfoset& obs) const {
  Validate(obs);
  CardSet universe = spec_.deck.all();
  std::uint64_t idx = RankSubset(obs.own, universe);
  universe = universe - obs.own;
  for (std::size_t i = 0; i < obs.boards.size(); ++i) {
    const int b = spec_.board_per_phase[i];
    idx = idx * Choose(universe.size(), b) + RankSubset(obs.boards[i], universe);
    universe = universe - obs.boards[i];
  }
  return idx;
}

ObservationInfoset ObservationIndexer::RawDecode(int phase, std::uint64_t index, Actor owner) const {
  if (index >= RawCount(phase)) throw DomainError("raw index out of range");
  // Peel mixed-radix digits from the last phase backwards.
  std::vector<std::uint64_t> radix;
  std::vector<int> left_at;
  int left = spec_.deck.size() - spec_.holes;
  for (int r = 2; r <= phase; ++r) {
    const int b = spec_.board_per_phase[r - 2];
    radix.push_back(Choose(left, b));
    left_at.push_back(left);
    left -= b;
  }
  std::vector<std::uint64_t> digit(radix.size());
  for (int i = static_cast<int>(radix.size()) - 1; i >= 0; --i) {
    digit[i] = index % radix[i];
    index /= radix[i];
  }
  ObservationInfoset obs;
  obs.owner = owner;
  CardSet universe = spec_.deck.all();
  obs.own = UnrankSubset(index, spec_.holes, universe);
  universe = universe - obs.own;
  for (std::size_t i = 0; i < digit.size(); ++i) {
    CardSet b = UnrankSubset(digit[i], spec_.board_per_phase[i], universe);
    obs.boards.push_back(b);
    universe = universe - b;
  }
  return obs;
}

namespace {

// Appends the cards of `s` in ascending order, six bits each.
inline std::uint64_t PushCards(std::uint64_t key, CardSet s) {
  for (std::uint64_t b = s.bits(); b; b &= b - 1) {
    key = (key << 6) | static_cast<std::uint64_t>(std::countr_zero(b));
  }
  return key;
}

}  // namespace

std::uint64_t ObservationIndexer::CanonicalKey(const ObservationInfoset& obs) const {
  std::uint64_t best = ~0ULL;
  for (int g = 0; g < group_.size(); ++g) {
    std::uint64_t key = PushCards(0, group_.Apply(g, obs.own));
    for (CardSet b : obs.boards) key = PushCards(key, group_.Apply(g, b));
    best = std::min(best, key);
  }
  return best;
}

ObservationInfoset ObservationIndexer::DecodeKey(const GameSpec& spec, int phase,
                                                 std::uint64_t key, Actor owner) {
  std::vector<int> sizes{spec.holes};
  for (int r = 2; r <= phase; ++r) sizes.push_back(spec.board_per_phase[r - 2]);
  int total = std::accumulate(sizes.begin(), sizes.end(), 0);
  ObservationInfoset obs;
  obs.owner = owner;
  int shift = 6 * (total - 1);
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    CardSet s;
    for (int j = 0; j < sizes[i]; ++j) {
      s.insert(static_cast<Card>((key >> shift) & 63));
      shift -= 6;
    }
    if (i == 0) {
      obs.own = s;
    } else {
      obs.boards.push_back(s);
    }
  }
  return obs;
}

const ObservationIndexer::PhaseTable& ObservationIndexer::Table(int phase) const {
  if (phase < 1 || phase > num_phases()) throw PhaseError("phase out of range");
  std::lock_guard<std::mutex> lock(mu_);
  if (tables_[phase]) return *tables_[phase];
  const std::uint64_t n = RawCount(phase);
  if (n > (1ULL << 31)) {
    throw ParameterError("phase " + std::to_string(phase) +
                         " has too many raw observations to tabulate");
  }
  auto t = std::make_unique<PhaseTable>();
  std::vector<std::uint64_t> raw_keys(n);
  ForEachRawObservation(*this, phase, [&](std::uint64_t i, const ObservationInfoset& obs) {
    raw_keys[i] = CanonicalKey(obs);
  });
  t->keys = raw_keys;
  std::sort(t->keys.begin(), t->keys.end());
  t->keys.erase(std::unique(t->keys.begin(), t->keys.end()), t->keys.end());
  t->raw_to_canon.resize(n);
  t->class_size.assign(t->keys.size(), 0);
  for (std::uint64_t i = 0; i < n; ++i) {
    auto it = std::lower_bound(t->keys.begin(), t->keys.end(), raw_keys[i]);
    auto c = static_cast<std::uint32_t>(it - t->keys.begin());
    t->raw_to_canon[i] = c;
    ++t->class_size[c];
  }
  t->rep_raw.resize(t->keys.size());
  for (std::size_t c = 0; c < t->keys.size(); ++c) {
    t->rep_raw[c] = RawIndex(DecodeKey(spec_, phase, t->keys[c]));
  }
  tables_[phase] = std::move(t);
  return *tables_[phase];
}

std::uint64_t ObservationIndexer::CanonicalCount(int phase) const { return Table(phase).keys.size(); }

std::uint32_t ObservationIndexer::CanonicalIndex(const ObservationInfoset& obs) const {
  Validate(obs);
  const PhaseTable& t = Table(obs.phase());
  std::uint64_t key = CanonicalKey(obs);
  auto it = std::lower_bound(t.keys.begin(), t.keys.end(), key);
  return static_cast<std::uint32_t>(it - t.keys.begin());
}

std::uint32_t ObservationIndexer::RawToCanonical(int phase, std::uint64_t raw) const {
  const PhaseTable& t = Table(phase);
  if (raw >= t.raw_to_canon.size()) throw DomainError("raw index out of range");
  return t.raw_to_canon[raw];
}

const std::vector<std::uint32_t>& ObservationIndexer::RawToCanonicalTable(int phase) const {
  return Table(phase).raw_to_canon;
}

ObservationInfoset ObservationIndexer::Representative(int phase, std::uint32_t canon,
                                                      Actor owner) const {
  const PhaseTable& t = Table(phase);
  if (canon >= t.keys.size()) throw DomainError("canonical index out of range");
  return DecodeKey(spec_, phase, t.keys[canon], owner);
}

std::uint64_t ObservationIndexer::RepresentativeRaw(int phase, std::uint32_t canon) const {
  const PhaseTable& t = Table(phase);
  if (canon >= t.keys.size()) throw DomainError("canonical index out of range");
  return t.rep_raw[canon];
}

std::uint32_t ObservationIndexer::ClassSize(int phase, std::uint32_t canon) const {
  const PhaseTable& t = Table(phase);
  if (canon >= t.keys.size()) throw DomainError("canonical index out of range");
  return t.class_size[canon];
}

void ForEachRawObservation(const ObservationIndexer& indexer, int phase,
                           const std::function<void(std::uint64_t, const ObservationInfoset&)>& fn) {
  const GameSpec& spec = indexer.spec();
  if (phase < 1 || phase > spec.num_phases()) throw PhaseError("phase out of range");
  // Nested colex enumeration yields raw indices in increasing order.
  ObservationInfoset obs;
  obs.boards.resize(phase - 1);
  std::uint64_t next = 0;
  std::function<void(int, CardSet)> rec = [&](int r, CardSet universe) {
    if (r > phase) {
      fn(next++, obs);
      return;
    }
    ForEachSubset(universe, spec.board_per_phase[r - 2], [&](CardSet b) {
      obs.boards[r - 2] = b;
      rec(r + 1, universe - b);
    });
  };
  ForEachSubset(spec.deck.all(), spec.holes, [&](CardSet h) {
    obs.own = h;
    rec(2, spec.deck.all() - h);
  });
}

InfosetEnumeration EnumerateInfosets(const ObservationIndexer& indexer, int phase,
                                     bool with_canonical) {
  InfosetEnumeration e;
  e.phase = phase;
  e.raw_count = indexer.RawCount(phase);
  if (with_canonical) e.canonical_count = indexer.CanonicalCount(phase);
  return e;
}

}  // namespace soab
