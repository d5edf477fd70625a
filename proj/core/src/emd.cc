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

#include "soab/emd.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "soab/errors.h"

namespace soab {
namespace {

constexpr double kMassEps = 1e-15;

}  // namespace

double Emd(std::span<const double> a, std::span<const double> b, const GroundMatrix& ground) {
  const std::size_t n = a.size();
  if (b.size() != n || ground.size() != n) throw DomainError("histogram dimension mismatch");
  for (const auto& row : ground) {
    if (row.size() != n) throw DomainError("ground matrix is not square");
  }
  // Net supply and demand after cancelling in-place mass.
  std::vector<int> src, dst;
  std::vector<double> supply, demand;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = a[i] - b[i];
    if (d > kMassEps) {
      src.push_back(static_cast<int>(i));
      supply.push_back(d);
    } else if (d < -kMassEps) {
      dst.push_back(static_cast<int>(i));
      demand.push_back(-d);
    }
  }
  const int S = static_cast<int>(src.size());
  const int T = static_cast<int>(dst.size());
  if (S == 0 || T == 0) return 0.0;
  if (S == 1 || T == 1) {
    // Star transport is forced.
    double cost = 0;
    if (S == 1) {
      for (int t = 0; t < T; ++t) cost += demand[t] * ground[src[0]][dst[t]];
    } else {
      for (int s = 0; s < S; ++s) cost += supply[s] * ground[src[s]][dst[0]];
    }
    return cost;
  }
  // Successive shortest paths on the bipartite residual graph with node
  // potentials (Dijkstra on reduced costs). Nodes: sources 0..S-1, sinks
  // S..S+T-1. Forward arcs s->t have unbounded capacity; reverse arcs carry
  // the current flow.
  std::vector<double> flow(static_cast<std::size_t>(S) * T, 0.0);
  auto cost = [&](int s, int t) { return ground[src[s]][dst[t]]; };
  std::vector<double> pot(S + T, 0.0);
  // Initial potentials: sinks at their cheapest incoming arc.
  for (int t = 0; t < T; ++t) {
    double m = std::numeric_limits<double>::infinity();
    for (int s = 0; s < S; ++s) m = std::min(m, cost(s, t));
    pot[S + t] = m;
  }
  double total = 0;
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> dist(S + T);
  std::vector<int> prev(S + T);
  std::vector<char> done(S + T);
  while (true) {
    double remaining = 0;
    for (double x : supply) remaining += x;
    if (remaining <= 1e-12) break;
    std::fill(dist.begin(), dist.end(), inf);
    std::fill(prev.begin(), prev.end(), -1);
    std::fill(done.begin(), done.end(), 0);
    for (int s = 0; s < S; ++s) {
      if (supply[s] > kMassEps) dist[s] = 0;
    }
    int target = -1;
    for (int it = 0; it < S + T; ++it) {
      int u = -1;
      for (int v = 0; v < S + T; ++v) {
        if (!done[v] && dist[v] < inf && (u < 0 || dist[v] < dist[u])) u = v;
      }
      if (u < 0) break;
      done[u] = 1;
      if (u >= S && demand[u - S] > kMassEps) {
        target = u;
        break;
      }
      if (u < S) {
        for (int t = 0; t < T; ++t) {
          const int v = S + t;
          const double rc = cost(u, t) + pot[u] - pot[v];
          if (dist[u] + rc < dist[v] - 1e-15) {
            dist[v] = dist[u] + rc;
            prev[v] = u;
          }
        }
      } else {
        const int t = u - S;
        for (int s = 0; s < S; ++s) {
          if (flow[static_cast<std::size_t>(s) * T + t] <= kMassEps) continue;
          const double rc = -cost(s, t) + pot[u] - pot[s];
          if (dist[u] + rc < dist[s] - 1e-15) {
            dist[s] = dist[u] + rc;
            prev[s] = u;
          }
        }
      }
    }
    if (target < 0) {
      if (remaining < 1e-9) break;  // rounding residue
      throw ValidationError("histograms have different total mass");
    }
    const double dt = dist[target];
    for (int v = 0; v < S + T; ++v) {
      pot[v] += std::min(dist[v], dt);
    }
    // Bottleneck along the path.
    double push = demand[target - S];
    int v = target;
    while (prev[v] >= 0) {
      const int u = prev[v];
      if (u >= S) push = std::min(push, flow[static_cast<std::size_t>(v) * T + (u - S)]);
      v = u;
    }
    push = std::min(push, supply[v]);
    v = target;
    while (prev[v] >= 0) {
      const int u = prev[v];
      if (u < S) {
        flow[static_cast<std::size_t>(u) * T + (v - S)] += push;
        total += push * cost(u, v - S);
      } else {
        flow[static_cast<std::size_t>(v) * T + (u - S)] -= push;
        total -= push * cost(v, u - S);
      }
      v = u;
    }
    supply[v] -= push;
    demand[target - S] -= push;
  }
  return std::max(0.0, total);
}

LineGround::LineGround(std::vector<double> positions) : positions_(std::move(positions)) {
  order_.resize(positions_.size());
  std::iota(order_.begin(), order_.end(), 0);
  std::stable_sort(order_.begin(), order_.end(),
                   [&](int x, int y) { return positions_[x] < positions_[y]; });
  for (std::size_t i = 0; i + 1 < order_.size(); ++i) {
    gaps_.push_back(positions_[order_[i + 1]] - positions_[order_[i]]);
  }
}

std::vector<double> LineGround::Permute(std::span<const double> h) const {
  if (h.size() != order_.size()) throw DomainError("histogram dimension mismatch");
  std::vector<double> out(h.size());
  for (std::size_t i = 0; i < h.size(); ++i) out[i] = h[order_[i]];
  return out;
}

double LineGround::SortedEmd(std::span<const double> a, std::span<const double> b) const {
  double ca = 0, cb = 0, d = 0;
  const std::size_t n = gaps_.size();
  for (std::size_t i = 0; i < n; ++i) {
    ca += a[i];
    cb += b[i];
    d += std::abs(ca - cb) * gaps_[i];
  }
  return d;
}

double LineGround::Emd(std::span<const double> a, std::span<const double> b) const {
  if (a.size() != order_.size() || b.size() != order_.size()) {
    throw DomainError("histogram dimension mismatch");
  }
  std::vector<double> pa = Permute(a), pb = Permute(b);
  return SortedEmd(pa, pb);
}

GroundMatrix LineGround::Matrix() const {
  const std::size_t n = positions_.size();
  GroundMatrix m(n, std::vector<double>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) m[i][j] = std::abs(positions_[i] - positions_[j]);
  }
  return m;
}

}  // namespace soab
