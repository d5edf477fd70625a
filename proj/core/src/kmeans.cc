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

#include "soab/kmeans.h"

#include <cmath>
#include <limits>
#include <random>

#include "soab/errors.h"

namespace soab {

std::uint64_t SubSeed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

KMeansResult WeightedKMeans(const std::vector<std::vector<double>>& points,
                            const std::vector<double>& weights, const KMeansCost& cost,
                            const KMeansOptions& options) {
  const int n = static_cast<int>(points.size());
  if (n == 0) throw ParameterError("k-means needs at least one point");
  if (static_cast<int>(weights.size()) != n) throw ParameterError("one weight per point");
  if (options.k < 1) throw ParameterError("k must be positive");
  KMeansResult res;
  if (options.k >= n) {
    res.reduced = options.k > n;
    res.assignment.resize(n);
    for (int i = 0; i < n; ++i) res.assignment[i] = static_cast<std::uint32_t>(i);
    res.centroids = points;
    return res;
  }
  const int k = options.k;
  const std::size_t dim = points[0].size();

  // Farthest-point seeding.
  std::mt19937_64 rng(options.seed);
  std::vector<int> centers{static_cast<int>(rng() % static_cast<std::uint64_t>(n))};
  std::vector<double> nearest(n, std::numeric_limits<double>::infinity());
  while (static_cast<int>(centers.size()) < k) {
    const auto& c = points[centers.back()];
    int best = -1;
    for (int i = 0; i < n; ++i) {
      nearest[i] = std::min(nearest[i], cost(points[i], c));
      if (best < 0 || nearest[i] > nearest[best]) best = i;
    }
    centers.push_back(best);
  }
  std::vector<std::vector<double>> cent;
  for (int c : centers) cent.push_back(points[c]);

  std::vector<std::uint32_t> assign(n, 0);
  double prev = std::numeric_limits<double>::infinity();
  for (int it = 0; it < options.max_iterations; ++it) {
    double inertia = 0;
    for (int i = 0; i < n; ++i) {
      std::uint32_t best = 0;
      double bd = cost(points[i], cent[0]);
      for (int c = 1; c < k; ++c) {
        const double d = cost(points[i], cent[c]);
        if (d < bd) {
          bd = d;
          best = static_cast<std::uint32_t>(c);
        }
      }
      assign[i] = best;
      inertia += weights[i] * bd;
    }
    res.iterations = it + 1;
    res.inertia = inertia;
    // Update; an empty cluster keeps its previous centroid.
    std::vector<std::vector<double>> sum(k, std::vector<double>(dim, 0.0));
    std::vector<double> mass(k, 0.0);
    for (int i = 0; i < n; ++i) {
      mass[assign[i]] += weights[i];
      for (std::size_t d = 0; d < dim; ++d) sum[assign[i]][d] += weights[i] * points[i][d];
    }
    for (int c = 0; c < k; ++c) {
      if (mass[c] <= 0) continue;
      for (std::size_t d = 0; d < dim; ++d) cent[c][d] = sum[c][d] / mass[c];
    }
    if (std::isfinite(prev) && std::abs(prev - inertia) <= options.tolerance * std::max(prev, 1e-300)) {
      break;
    }
    prev = inertia;
  }
  // Final assignment against the updated centroids, then drop empty ids.
  for (int i = 0; i < n; ++i) {
    std::uint32_t best = 0;
    double bd = cost(points[i], cent[0]);
    for (int c = 1; c < k; ++c) {
      const double d = cost(points[i], cent[c]);
      if (d < bd) {
        bd = d;
        best = static_cast<std::uint32_t>(c);
      }
    }
    assign[i] = best;
  }
  std::vector<int> remap(k, -1);
  int next = 0;
  for (int c = 0; c < k; ++c) {
    for (int i = 0; i < n; ++i) {
      if (assign[i] == static_cast<std::uint32_t>(c)) {
        remap[c] = next++;
        break;
      }
    }
  }
  res.assignment.resize(n);
  for (int i = 0; i < n; ++i) res.assignment[i] = static_cast<std::uint32_t>(remap[assign[i]]);
  // Centroids recomputed from the final assignment.
  res.centroids.assign(next, std::vector<double>(dim, 0.0));
  std::vector<double> mass(next, 0.0);
  res.inertia = 0;
  for (int i = 0; i < n; ++i) {
    const std::uint32_t c = res.assignment[i];
    mass[c] += weights[i];
    for (std::size_t d = 0; d < dim; ++d) res.centroids[c][d] += weights[i] * points[i][d];
  }
  for (int c = 0; c < next; ++c) {
    for (std::size_t d = 0; d < dim; ++d) res.centroids[c][d] /= mass[c];
  }
  for (int i = 0; i < n; ++i) res.inertia += weights[i] * cost(points[i], res.centroids[res.assignment[i]]);
  return res;
}

}  // namespace soab
