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

#ifndef SOAB_KMEANS_H_
#define SOAB_KMEANS_H_

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace soab {

struct KMeansOptions {
  int k = 1;
  int max_iterations = 100;
  double tolerance = 1e-9;  // relative change in inertia
  std::uint64_t seed = 0;
};

struct KMeansResult {
  std::vector<std::uint32_t> assignment;  // dense cluster id per point
  std::vector<std::vector<double>> centroids;
  double inertia = 0;
  int iterations = 0;
  bool reduced = false;  // k exceeded the number of points
};

// Cost of assigning a point to a centroid (squared distance for L2, the
// distance itself for EMD).
using KMeansCost = std::function<double(const std::vector<double>&, const std::vector<double>&)>;

// Weighted Lloyd iterations with centroids as weighted means. The first
// center is drawn from `seed`; the rest are chosen greedily farthest from
// the chosen set. Assignment ties go to the lowest cluster id. Callers pass
// distinct points only; with k at or above the point count every point gets
// its own cluster and `reduced` is set.
KMeansResult WeightedKMeans(const std::vector<std::vector<double>>& points,
                            const std::vector<double>& weights, const KMeansCost& cost,
                            const KMeansOptions& options);

// Deterministic sub-seed derivation (splitmix64).
std::uint64_t SubSeed(std::uint64_t seed, std::uint64_t stream);

}  // namespace soab

#endif  // SOAB_KMEANS_H_
