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

#include "soab/ehs.h"

#include "soab/errors.h"

namespace soab {

Rational EquityOf(const Wtl& w) {
  const std::int64_t total = w[0] + w[1] + w[2];
  if (total == 0) throw ValidationError("empty outcome counts");
  return Rational(2 * w[2] + w[1], 2 * total);
}

Rational EhsEquity(const FeatureContext& ctx, const ObservationInfoset& obs) {
  const ObservationIndexer& ix = ctx.indexer();
  ix.Validate(obs);
  if (obs.phase() == ctx.num_phases()) return EquityOf(ctx.FinalOutcome(obs));
  return EquityOf(ctx.ShowdownCounts(obs.phase())[ix.CanonicalIndex(obs)]);
}

std::vector<Rational> EhsEquities(const FeatureContext& ctx, int phase) {
  const auto& counts = ctx.ShowdownCounts(phase);
  std::vector<Rational> out;
  out.reserve(counts.size());
  for (const Wtl& w : counts) out.push_back(EquityOf(w));
  return out;
}

std::uint32_t EquityRange(const Rational& e, int n) {
  if (n < 1) throw ParameterError("range count must be positive");
  if (e < Rational(0) || e > Rational(1)) throw DomainError("equity outside [0, 1]");
  // ceil(e * n) - 1, with e = 0 falling into the first range.
  Rational x = e * Rational(n);
  std::int64_t c = x.numerator() / x.denominator();
  if (c * x.denominator() != x.numerator()) ++c;
  return static_cast<std::uint32_t>(c > 0 ? c - 1 : 0);
}

AbstractionMap BuildEhs(const FeatureContext& ctx, const std::vector<int>& n) {
  const int last = ctx.num_phases();
  if (static_cast<int>(n.size()) != last) throw ParameterError("need one bucket count per phase");
  std::vector<std::vector<std::uint32_t>> out(last);
  for (int r = 1; r <= last; ++r) {
    if (n[r - 1] < 0) throw ParameterError("bucket count must be nonnegative");
    const std::uint64_t count = ctx.indexer().CanonicalCount(r);
    auto& b = out[r - 1];
    b.resize(count);
    if (n[r - 1] == 0) {
      for (std::uint32_t c = 0; c < count; ++c) b[c] = c;
      continue;
    }
    std::vector<Rational> eq = EhsEquities(ctx, r);
    for (std::uint32_t c = 0; c < count; ++c) b[c] = EquityRange(eq[c], n[r - 1]);
    DenseRelabel(&b);
  }
  return AbstractionMap(ctx.spec().id, IndexSpace::kCanonical, std::move(out));
}

}  // namespace soab
