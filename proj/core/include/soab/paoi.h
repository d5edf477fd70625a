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

#ifndef SOAB_PAOI_H_
#define SOAB_PAOI_H_

#include <cstdint>
#include <vector>

#include "soab/abstraction_map.h"
#include "soab/features.h"

namespace soab {

// Potential-aware outcome feature of a phase-r observation (r below the
// final phase): histogram of its one-step successors over the next phase's
// classes in `next`. Throws DependencyError if `next` lacks phase r + 1.
OutcomeFeature Paof(const FeatureContext& ctx, const ObservationInfoset& obs,
                    const AbstractionMap& next);

// Potential-aware outcome isomorphism, built bottom-up from the final phase.
AbstractionMap BuildPaoi(const FeatureContext& ctx);

// Same construction with base classes taken from `base` instead of single
// observations: features are aggregated over each base bucket and reduced.
// The result is keyed like `base`. BuildPaoi(ctx) equals BuildPaoiOver(LI).
AbstractionMap BuildPaoiOver(const FeatureContext& ctx, const AbstractionMap& base);

// k-recall outcome isomorphism: phase-r classes are equal tuples of PAOI
// labels of the observation and its k predecessors. k[r - 1] must lie in
// [0, r - 1]; throws ParameterError otherwise.
AbstractionMap BuildKroi(const FeatureContext& ctx, const AbstractionMap& paoi,
                         const std::vector<int>& k);

// Full recall: k = r - 1 in every phase.
AbstractionMap BuildFroi(const FeatureContext& ctx, const AbstractionMap& paoi);

// k-recall feature of one observation.
std::vector<std::uint32_t> KRecallFeature(const FeatureContext& ctx, const AbstractionMap& paoi,
                                          const ObservationInfoset& obs, int k);

}  // namespace soab

#endif  // SOAB_PAOI_H_
