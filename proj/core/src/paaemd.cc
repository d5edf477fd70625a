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

#include "soab/paaemd.h"

#include <map>

#include "soab/ehs.h"
#include "soab/emd.h"
#include "soab/errors.h"
#include "soab/kmeans.h"

namespace soab {

std::vector<double> TransitionHistogram::Probabilities() const {
  std::vector<double> p(counts.size());
  for (std::size_t i = 0; i < counts.size(); ++i) {
    p[i] = static_cast<double>(counts[i]) / static_cast<double>(denominator);
  }
  return p;
}

TransitionHistogram TransitionHistogramOf(const FeatureContext& ctx, const ObservationInfoset& obs,
                                          const AbstractionMap& next_clusters) {
  const int r = obs.phase();
  if (r >= ctx.num_phases()) throw PhaseError("no transition from the final phase");
  if (next_clusters.num_phases() < r + 1 || next_clusters.entries(r + 1).empty()) {
    throw DependencyError("next-phase clustering missing for phase " + std::to_string(r + 1));
  }
  ctx.indexer().Validate(obs);
  TransitionHistogram h;
  h.phase = r;
  h.counts.assign(next_clusters.bucket_count(r + 1), 0);
  ObservationInfoset succ = obs;
  succ.boards.emplace_back();
  ForEachSubset(ctx.spec().deck.all() - obs.own - obs.board_cards(),
                ctx.spec().board_per_phase[r - 1], [&](CardSet deal) {
                  succ.boards.back() = deal;
                  ++h.counts[next_clusters.BucketOf(ctx.indexer(), succ)];
                  ++h.denominator;
                });
  return h;
}

namespace {

// Ground metric over the clusters of one phase.
struct Ground {
  bool line = false;
  std::unique_ptr<LineGround> line_ground;
  GroundMatrix matrix;

  double Distance(const std::vector<double>& a, const std::vector<double>& b) const {
    return line ? line_ground->Emd(a, b) : Emd(a, b, matrix);
  }
};

}  // namespace

PaaemdResult BuildPaaemd(const FeatureContext& ctx, const PaaemdOptions& options) {
  const ObservationIndexer& ix = ctx.indexer();
  const int last = ctx.num_phases();
  if (static_cast<int>(options.clusters.size()) != last) {
    throw ParameterError("need one cluster count per phase");
  }
  for (int m : options.clusters) {
    if (m < 0) throw ParameterError("cluster counts must be nonnegative");
  }
  PaaemdResult res;
  std::vector<std::vector<std::uint32_t>> labels(last);
  res.centroids.resize(last);
  KMeansOptions ko;
  ko.max_iterations = options.max_iterations;
  ko.tolerance = options.tolerance;

  // Final phase: equities.
  {
    std::vector<Rational> eq = EhsEquities(ctx, last);
    const int m = options.clusters[last - 1];
    auto& lab = labels[last - 1];
    std::vector<std::uint32_t> feat_id;
    const std::uint32_t nf = LabelByValue(eq, &feat_id);
    std::vector<std::vector<double>> points(nf);
    std::vector<double> weights(nf, 0.0);
    for (std::size_t c = 0; c < eq.size(); ++c) {
      points[feat_id[c]] = {boost::rational_cast<double>(eq[c])};
      weights[feat_id[c]] += ix.ClassSize(last, static_cast<std::uint32_t>(c));
    }
    if (m == 0) {
      lab.resize(eq.size());
      for (std::uint32_t c = 0; c < eq.size(); ++c) {
        lab[c] = c;
        res.centroids[last - 1].push_back({boost::rational_cast<double>(eq[c])});
      }
    } else {
      if (m > static_cast<int>(nf)) {
        res.warnings.push_back("phase " + std::to_string(last) + ": " + std::to_string(m) +
                               " clusters requested but only " + std::to_string(nf) +
                               " distinct features; using " + std::to_string(nf));
      }
      ko.k = m;
      ko.seed = SubSeed(options.seed, static_cast<std::uint64_t>(last));
      KMeansResult km = WeightedKMeans(
          points, weights,
          [](const std::vector<double>& a, const std::vector<double>& b) {
            const double d = a[0] - b[0];
            return d * d;
          },
          ko);
      lab.resize(eq.size());
      for (std::size_t c = 0; c < eq.size(); ++c) lab[c] = km.assignment[feat_id[c]];
      res.centroids[last - 1] = km.centroids;
    }
  }

  // Ground metric over the clusters of phase r, built from their centroids.
  auto make_ground = [&](int r, const Ground* below) {
    Ground g;
    if (r == last) {
      std::vector<double> pos;
      for (const auto& c : res.centroids[r - 1]) pos.push_back(c[0]);
      g.line = true;
      g.line_ground = std::make_unique<LineGround>(pos);
    } else {
      const auto& cent = res.centroids[r - 1];
      const std::size_t n = cent.size();
      g.matrix.assign(n, std::vector<double>(n, 0.0));
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
          g.matrix[i][j] = g.matrix[j][i] = below->Distance(cent[i], cent[j]);
        }
      }
    }
    return g;
  };

  Ground ground_next = make_ground(last, nullptr);
  for (int r = last - 1; r >= 1; --r) {
    const auto& next_lab = labels[r];
    const std::uint32_t k_next = static_cast<std::uint32_t>(res.centroids[r].size());
    const auto& succ = ctx.CanonicalSuccessors(r);
    const int fan = ctx.Fanout(r);
    const std::uint64_t count = ix.CanonicalCount(r);
    // Exact count histograms, deduplicated.
    std::vector<std::vector<std::int64_t>> hist(count, std::vector<std::int64_t>(k_next, 0));
    for (std::uint64_t c = 0; c < count; ++c) {
      for (int j = 0; j < fan; ++j) ++hist[c][next_lab[succ[c * fan + j]]];
    }
    std::vector<std::uint32_t> feat_id;
    const std::uint32_t nf = LabelByValue(hist, &feat_id);
    std::vector<std::vector<double>> points(nf);
    std::vector<double> weights(nf, 0.0);
    for (std::uint64_t c = 0; c < count; ++c) {
      auto& p = points[feat_id[c]];
      if (p.empty()) {
        p.resize(k_next);
        for (std::uint32_t d = 0; d < k_next; ++d) p[d] = static_cast<double>(hist[c][d]) / fan;
      }
      weights[feat_id[c]] += ix.ClassSize(r, static_cast<std::uint32_t>(c));
    }
    hist.clear();
    hist.shrink_to_fit();
    auto& lab = labels[r - 1];
    lab.resize(count);
    const int m = options.clusters[r - 1];
    if (m == 0) {
      res.centroids[r - 1].resize(count);
      for (std::uint64_t c = 0; c < count; ++c) {
        lab[c] = static_cast<std::uint32_t>(c);
        res.centroids[r - 1][c] = points[feat_id[c]];
      }
    } else {
      if (m > static_cast<int>(nf)) {
        res.warnings.push_back("phase " + std::to_string(r) + ": " + std::to_string(m) +
                               " clusters requested but only " + std::to_string(nf) +
                               " distinct features; using " + std::to_string(nf));
      }
      ko.k = m;
      ko.seed = SubSeed(options.seed, static_cast<std::uint64_t>(r));
      KMeansResult km;
      if (ground_next.line) {
        // Work in sorted bin order so each distance is one linear scan.
        const LineGround& lg = *ground_next.line_ground;
        std::vector<std::vector<double>> sorted(nf);
        for (std::uint32_t f = 0; f < nf; ++f) sorted[f] = lg.Permute(points[f]);
        km = WeightedKMeans(
            sorted, weights,
            [&lg](const std::vector<double>& a, const std::vector<double>& b) {
              return lg.SortedEmd(a, b);
            },
            ko);
        // Undo the permutation on the centroids.
        for (auto& cvec : km.centroids) {
          std::vector<double> orig(cvec.size());
          for (std::size_t i = 0; i < cvec.size(); ++i) orig[lg.order()[i]] = cvec[i];
          cvec = std::move(orig);
        }
      } else {
        const GroundMatrix& gm = ground_next.matrix;
        km = WeightedKMeans(
            points, weights,
            [&gm](const std::vector<double>& a, const std::vector<double>& b) { return Emd(a, b, gm); },
            ko);
      }
      for (std::uint64_t c = 0; c < count; ++c) lab[c] = km.assignment[feat_id[c]];
      res.centroids[r - 1] = std::move(km.centroids);
    }
    if (r > 1) ground_next = make_ground(r, &ground_next);
  }
  res.map = AbstractionMap(ctx.spec().id, IndexSpace::kCanonical, std::move(labels));
  return res;
}

}  // namespace soab
