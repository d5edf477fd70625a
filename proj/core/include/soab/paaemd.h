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

#ifndef SOAB_PAAEMD_H_
#define SOAB_PAAEMD_H_

#include <cstdint>
#include <string>
#include <vector>

#include "soab/abstraction_map.h"
#include "soab/features.h"

namespace soab {

// Probability of moving from an observation into each next-phase cluster,
// kept as exact counts over the one-step deals.
struct TransitionHistogram {
  int phase = 0;
  std::vector<std::int64_t> counts;
  std::int64_t denominator = 0;

  std::vector<double> Probabilities() const;
  bool operator==(const TransitionHistogram&) const = default;
};

// Throws DependencyError if `next_clusters` lacks the next phase.
TransitionHistogram TransitionHistogramOf(const FeatureContext& ctx, const ObservationInfoset& obs,
                                          const AbstractionMap& next_clusters);

struct PaaemdOptions {
  std::vector<int> clusters;  // per phase; 0 keeps the phase lossless
  std::uint64_t seed = 0;
  int max_iterations = 100;
  double tolerance = 1e-9;
};

struct PaaemdResult {
  AbstractionMap map;
  std::vector<std::string> warnings;
  // Centroid of every cluster: equity in the final phase, a probability
  // histogram over next-phase clusters otherwise.
  std::vector<std::vector<std::vector<double>>> centroids;
};

// Potential-aware clustering: squared-L2 k-means on equity in the final
// phase, then EMD k-means on transition histograms phase by phase upwards.
// Ground distances: |centroid equity difference| between final clusters;
// EMD between next-phase centroids for earlier phases.
PaaemdResult BuildPaaemd(const FeatureContext& ctx, const PaaemdOptions& options);

}  // namespace soab

#endif  // SOAB_PAAEMD_H_
