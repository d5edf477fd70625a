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

#include <cstdint>
#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "soab/abstracted_game.h"
#include "soab/best_response.h"
#include "soab/cards.h"
#include "soab/cfr.h"
#include "soab/emd.h"
#include "soab/hand_eval.h"
#include "soab/indexing.h"
#include "soab/paoi.h"

namespace soab {
namespace {

std::vector<CardSet> AllSubsets(const Deck& deck, int k) {
  std::vector<CardSet> out;
  ForEachSubset(deck.all(), k, [&](CardSet s) { out.push_back(s); });
  return out;
}

void BM_Numeral211HandStrength(benchmark::State& state) {
  const Deck deck = Numeral211Spec().deck;
  const std::vector<CardSet> hands = AllSubsets(deck, 4);
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(HandStrength(HandRule::kNumeral211, deck, hands[i]));
    if (++i == hands.size()) i = 0;
  }
}
BENCHMARK(BM_Numeral211HandStrength);

void BM_HoldemHandStrength(benchmark::State& state) {
  const Deck deck = HulhCardsSpec().deck;
  std::mt19937_64 rng(7);
  std::vector<CardSet> hands;
  for (int n = 0; n < 4096; ++n) {
    CardSet s;
    while (s.size() < 7) s.insert(static_cast<Card>(rng() % deck.size()));
    hands.push_back(s);
  }
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(HandStrength(HandRule::kHoldem, deck, hands[i]));
    i = (i + 1) & 4095;
  }
}
BENCHMARK(BM_HoldemHandStrength);

void BM_CanonicalIndex(benchmark::State& state) {
  static const ObservationIndexer* ix = new ObservationIndexer(Numeral211Spec());
  const int phase = static_cast<int>(state.range(0));
  std::vector<ObservationInfoset> obs;
  for (std::uint64_t r = 0; r < ix->RawCount(phase); r += 97) obs.push_back(ix->RawDecode(phase, r));
  ix->CanonicalIndex(obs[0]);  // builds the phase table outside the timed loop
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(ix->CanonicalIndex(obs[i]));
    if (++i == obs.size()) i = 0;
  }
}
BENCHMARK(BM_CanonicalIndex)->DenseRange(1, 3);

void BM_LineEmd(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0, 1);
  std::vector<double> pos(n), a(n), b(n);
  double sa = 0, sb = 0;
  for (int i = 0; i < n; ++i) {
    pos[i] = u(rng);
    sa += a[i] = u(rng);
    sb += b[i] = u(rng);
  }
  for (int i = 0; i < n; ++i) {
    a[i] /= sa;
    b[i] /= sb;
  }
  LineGround g(pos);
  for (auto _ : state) benchmark::DoNotOptimize(g.Emd(a, b));
}
BENCHMARK(BM_LineEmd)->Arg(16)->Arg(256);

void BM_GeneralEmd(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0, 1);
  std::vector<double> pos(n), a(n, 0.0), b(n, 0.0);
  for (int i = 0; i < n; ++i) pos[i] = u(rng);
  for (int i = 0; i < n; ++i) (i % 2 ? a : b)[i] = 2.0 / n;
  const GroundMatrix m = LineGround(pos).Matrix();
  for (auto _ : state) benchmark::DoNotOptimize(Emd(a, b, m));
}
BENCHMARK(BM_GeneralEmd)->Arg(8)->Arg(32);

struct LeducFixture {
  Game game{LeducSpec()};
  ObservationIndexer ix{game.spec()};
  AbstractedGame ag{game, ix, {BuildIdentity(ix), BuildIdentity(ix)}};
};

const LeducFixture& Leduc() {
  static const LeducFixture* f = new LeducFixture;
  return *f;
}

void BM_LeducCfrIteration(benchmark::State& state) {
  CfrOptions o;
  o.variant = state.range(0) ? CfrVariant::kPlus : CfrVariant::kVanilla;
  o.iterations = 1 << 30;
  CfrSolver s(Leduc().ag, o);
  for (auto _ : state) s.Iterate();
}
BENCHMARK(BM_LeducCfrIteration)->Arg(0)->Arg(1);

void BM_LeducBestResponse(benchmark::State& state) {
  Evaluator ev(Leduc().ag);
  const StrategyProfile u = Leduc().ag.UniformStrategy();
  for (auto _ : state) benchmark::DoNotOptimize(ev.BestResponseValue(u, 0));
}
BENCHMARK(BM_LeducBestResponse);

// One full Numeral211 iteration under PAOI on both sides: the showdown and
// fold kernels dominate.
void BM_Numeral211PaoiIteration(benchmark::State& state) {
  Game game(Numeral211Spec());
  ObservationIndexer ix(game.spec());
  FeatureContext ctx(ix);
  const AbstractionMap paoi = BuildPaoi(ctx);
  AbstractedGame ag(game, ix, {paoi, paoi});
  CfrOptions o;
  o.iterations = 1 << 30;
  CfrSolver s(ag, o);
  for (auto _ : state) s.Iterate();
}
BENCHMARK(BM_Numeral211PaoiIteration)->Unit(benchmark::kSecond)->Iterations(2);

}  // namespace
}  // namespace soab

BENCHMARK_MAIN();
