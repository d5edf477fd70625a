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

#ifndef SOAB_EMD_H_
#define SOAB_EMD_H_

#include <span>
#include <vector>

namespace soab {

using GroundMatrix = std::vector<std::vector<double>>;

// Earth mover's distance between two histograms of equal total mass under
// a ground metric (nonnegative, symmetric, zero diagonal). Exact min-cost
// transport; mass that stays in its own bin is cancelled first, which is
// optimal for metrics. Throws DomainError on dimension mismatch.
double Emd(std::span<const double> a, std::span<const double> b, const GroundMatrix& ground);

// Ground metric |x_i - x_j| over points on a line, with bins pre-sorted by
// position. The distance is the L1 distance between the CDFs weighted by the
// gaps between consecutive positions.
class LineGround {
 public:
  explicit LineGround(std::vector<double> positions);

  int size() const { return static_cast<int>(order_.size()); }
  // Bin order by ascending position; callers permute histograms with it.
  const std::vector<int>& order() const { return order_; }
  std::vector<double> Permute(std::span<const double> h) const;
  // Both histograms already permuted into sorted order.
  double SortedEmd(std::span<const double> a, std::span<const double> b) const;
  double Emd(std::span<const double> a, std::span<const double> b) const;
  GroundMatrix Matrix() const;

 private:
  std::vector<double> positions_;
  std::vector<int> order_;
  std::vector<double> gaps_;  // gaps_[i] = sorted[i + 1] - sorted[i]
};

}  // namespace soab

#endif  // SOAB_EMD_H_
