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

#include "soab/paoi.h"

#include <map>
#include <numeric>
#include <utility>

#include "soab/errors.h"

namespace soab {
namespace {

using Sparse = std::vector<std::pair<std::uint32_t, std::int64_t>>;

Sparse Reduce(Sparse v) {
  std::int64_t g = 0;
  for (const auto& [k, c] : v) g = std::gcd(g, c);
  if (g > 1) {
    for (auto& [k, c] : v) c /= g;
  }
  return v;
}

// Adds `weight` times the histogram of `labels` into `acc` (sorted sparse).
void Accumulate(std::map<std::uint32_t, std::int64_t>* acc, const Sparse& hist, std::int64_t weight) {
  for (const auto& [k, c] : hist) (*acc)[k] += c * weight;
}

Sparse Histogram(std::vector<std::uint32_t> labels) {
  std::sort(labels.begin(), labels.end());
  Sparse out;
  for (std::uint32_t l : labels) {
    if (out.empty() || out.back().first != l) {
      out.emplace_back(l, 1);
    } else {
      ++out.back().second;
    }
  }
  return out;
}

// Labels base buckets by their aggregated, reduced feature and broadcasts
// the label to every index of the bucket.
std::vector<std::uint32_t> LabelBuckets(const std::vector<std::map<std::uint32_t, std::int64_t>>& agg,
                                        const std::vector<std::uint32_t>& bucket_of_index) {
  std::vector<Sparse> feats(agg.size());
  for (std::size_t b = 0; b < agg.size(); ++b) feats[b] = Reduce(Sparse(agg[b].begin(), agg[b].end()));
  std::vector<std::uint32_t> label_of_bucket;
  LabelByValue(feats, &label_of_bucket);
  std::vector<std::uint32_t> out(bucket_of_index.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = label_of_bucket[bucket_of_index[i]];
  return out;
}

}  // namespace

OutcomeFeature Paof(const FeatureContext& ctx, const ObservationInfoset& obs,
                    const AbstractionMap& next) {
  const int r = obs.phase();
  if (r >= ctx.num_phases()) throw PhaseError("potential-aware feature needs a non-final phase");
  if (next.num_phases() < r + 1 || next.entries(r + 1).empty()) {
    throw DependencyError("next-phase classes missing for phase " + std::to_string(r + 1));
  }
  const ObservationIndexer& ix = ctx.indexer();
  ix.Validate(obs);
  OutcomeFeature f;
  f.phase = r;
  f.counts.assign(next.bucket_count(r + 1), 0);
  ObservationInfoset succ = obs;
  succ.boards.emplace_back();
  ForEachSubset(ctx.spec().deck.all() - obs.own - obs.board_cards(),
                ctx.spec().board_per_phase[r - 1], [&](CardSet deal) {
                  succ.boards.back() = deal;
                  ++f.counts[next.BucketOf(ix, succ)];
                  ++f.denominator;
                });
  return f;
}

AbstractionMap BuildPaoiOver(const FeatureContext& ctx, const AbstractionMap& base) {
  const ObservationIndexer& ix = ctx.indexer();
  base.CheckCompatible(ix);
  const int last = ctx.num_phases();
  const bool raw = base.index_space() == IndexSpace::kRaw;
  std::vector<std::vector<std::uint32_t>> out(last);

  auto weight = [&](int r, std::uint64_t i) -> std::int64_t {
    return raw ? 1 : ix.ClassSize(r, static_cast<std::uint32_t>(i));
  };

  // Final phase: aggregated (loss, tie, win) counts.
  {
    const auto& wtl = ctx.FinalOutcomes();
    const auto& entries = base.entries(last);
    std::vector<std::map<std::uint32_t, std::int64_t>> agg(base.bucket_count(last));
    for (std::uint64_t i = 0; i < entries.size(); ++i) {
      const std::uint32_t c = raw ? ix.RawToCanonical(last, i) : static_cast<std::uint32_t>(i);
      for (std::uint32_t k = 0; k < 3; ++k) agg[entries[i]][k] += wtl[c][k] * weight(last, i);
    }
    out[last - 1] = LabelBuckets(agg, entries);
  }

  // Earlier phases: histograms over next-phase labels.
  for (int r = last - 1; r >= 1; --r) {
    const auto& entries = base.entries(r);
    const auto& next = out[r];
    std::vector<std::map<std::uint32_t, std::int64_t>> agg(base.bucket_count(r));
    if (raw) {
      std::vector<std::uint32_t> labels;
      for (std::uint64_t i = 0; i < entries.size(); ++i) {
        labels.clear();
        ctx.ForEachRawSuccessor(r, i, [&](std::uint64_t s) { labels.push_back(next[s]); });
        Accumulate(&agg[entries[i]], Histogram(labels), 1);
      }
    } else {
      const auto& succ = ctx.CanonicalSuccessors(r);
      const int fan = ctx.Fanout(r);
      std::vector<std::uint32_t> labels(fan);
      for (std::uint64_t i = 0; i < entries.size(); ++i) {
        for (int j = 0; j < fan; ++j) labels[j] = next[succ[i * fan + j]];
        Accumulate(&agg[entries[i]], Histogram(labels), weight(r, i));
      }
    }
    out[r - 1] = LabelBuckets(agg, entries);
  }
  return AbstractionMap(base.game_id(), base.index_space(), std::move(out));
}

AbstractionMap BuildPaoi(const FeatureContext& ctx) {
  return BuildPaoiOver(ctx, BuildLi(ctx.indexer()));
}

std::vector<std::uint32_t> KRecallFeature(const FeatureContext& ctx, const AbstractionMap& paoi,
                                          const ObservationInfoset& obs, int k) {
  const int r = obs.phase();
  if (k < 0 || k > r - 1) {
    throw ParameterError("recall " + std::to_string(k) + " out of range for phase " + std::to_string(r));
  }
  std::vector<std::uint32_t> f;
  ObservationInfoset cur = obs;
  for (int j = 0; j <= k; ++j) {
    f.push_back(paoi.BucketOf(ctx.indexer(), cur));
    if (!cur.boards.empty()) cur.boards.pop_back();
  }
  return f;
}

AbstractionMap BuildKroi(const FeatureContext& ctx, const AbstractionMap& paoi,
                         const std::vector<int>& k) {
  const ObservationIndexer& ix = ctx.indexer();
  paoi.CheckCompatible(ix);
  const int last = ctx.num_phases();
  if (static_cast<int>(k.size()) != last) throw ParameterError("need one recall value per phase");
  if (paoi.index_space() != IndexSpace::kCanonical) {
    throw ParameterError("k-recall classes are built over canonical PAOI maps");
  }
  std::vector<std::vector<std::uint32_t>> out(last);
  for (int r = 1; r <= last; ++r) {
    if (k[r - 1] < 0 || k[r - 1] > r - 1) {
      throw ParameterError("recall " + std::to_string(k[r - 1]) + " out of range for phase " +
                           std::to_string(r));
    }
    const std::uint64_t n = ix.CanonicalCount(r);
    std::vector<std::vector<std::uint32_t>> feats(n);
    for (std::uint32_t c = 0; c < n; ++c) {
      feats[c] = KRecallFeature(ctx, paoi, ix.Representative(r, c), k[r - 1]);
    }
    LabelByValue(feats, &out[r - 1]);
  }
  return AbstractionMap(paoi.game_id(), IndexSpace::kCanonical, std::move(out));
}

AbstractionMap BuildFroi(const FeatureContext& ctx, const AbstractionMap& paoi) {
  std::vector<int> k;
  for (int r = 1; r <= ctx.num_phases(); ++r) k.push_back(r - 1);
  return BuildKroi(ctx, paoi, k);
}

}  // namespace soab
