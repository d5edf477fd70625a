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

#ifndef SOAB_EHS_H_
#define SOAB_EHS_H_

#include <cstdint>
#include <vector>

#include "soab/abstraction_map.h"
#include "soab/features.h"
#include "soab/soog.h"

namespace soab {

// Expected showdown equity w + t/2 over every final-phase extension.
Rational EhsEquity(const FeatureContext& ctx, const ObservationInfoset& obs);
Rational EquityOf(const Wtl& counts);

// Exact equities of every canonical index of a phase.
std::vector<Rational> EhsEquities(const FeatureContext& ctx, int phase);

// Range id m - 1 of the range ((m - 1)/n, m/n] holding e, with the lowest
// range closed at 0.
std::uint32_t EquityRange(const Rational& e, int n);

// Buckets equities into n[r - 1] contiguous ranges per phase; empty ranges
// are skipped so ids stay dense. n = 0 keeps the phase lossless (one bucket
// per canonical index).
AbstractionMap BuildEhs(const FeatureContext& ctx, const std::vector<int>& n);

}  // namespace soab

#endif  // SOAB_EHS_H_
