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

#include <map>
#include <set>
#include <sstream>

#include <gtest/gtest.h>

#include "soab/abstracted_game.h"
#include "soab/best_response.h"
#include "soab/cfr.h"
#include "soab/errors.h"
#include "soab/paoi.h"
#include "soab/public_tree.h"
#include "soab/strategy.h"
#include "test_util.h"

namespace soab {
namespace {

// Betting sequence of a history in BettingTree notation.
std::string SequenceOf(const History& h) {
  std::string s;
  for (std::size_t i = 0; i < h.actions.size(); ++i) {
    const Action& a = h.actions[i];
    if (a.is_chance()) {
      if (i > 0) s += '/';
    } else {
      s += ToChar(*a.token());
    }
  }
  return s;
}

struct OriginalInfoset {
  Actor owner;
  std::string sequence;
  ObservationInfoset obs;
  std::vector<BetToken> legal;
};

// Every decision history of Leduc as an original infoset instance.
std::vector<OriginalInfoset> LeducInfosets(const Game& g) {
  std::vector<OriginalInfoset> out;
  testing::ForEachHistory(g, [&](const History& h, const BettingState& s) {
    if (s.terminal || s.to_act == kChance) return;
    Signal sig = SignalOf(h);
    out.push_back({s.to_act, SequenceOf(h), Observe(sig, s.to_act), g.LegalBets(s)});
  });
  return out;
}

TEST(BettingTreeTest, SequencesMatchHistoryEnumeration) {
  Game g(LeducSpec());
  BettingTree t(g);
  std::set<std::string> want;
  for (const OriginalInfoset& o : LeducInfosets(g)) want.insert(o.sequence);
  std::set<std::string> got;
  for (int id : t.decision_nodes()) got.insert(t.node(id).sequence);
  EXPECT_EQ(got, want);
  int chance = 0;
  for (int i = 0; i < t.size(); ++i) chance += t.node(i).kind == BettingNode::Kind::kChance;
  EXPECT_EQ(chance, 5);  // kk, bc, brc, kbc, kbrc
  ASSERT_TRUE(t.Find("kbr").has_value());
  EXPECT_EQ(t.node(*t.Find("kbr")).actions,
            (std::vector<BetToken>{BetToken::kFold, BetToken::kCall}));
}

TEST(BettingTreeTest, Numeral211Shape) {
  BettingTree t{Game(Numeral211Spec())};
  int chance = 0;
  for (int i = 0; i < t.size(); ++i) chance += t.node(i).kind == BettingNode::Kind::kChance;
  EXPECT_EQ(chance, 9 + 81);
  EXPECT_EQ(t.decision_count(0, 1) + t.decision_count(1, 1), 10);
  EXPECT_EQ(t.slot_count(0, 1) + t.slot_count(1, 1), 26);
  EXPECT_EQ(t.decision_count(0, 3) + t.decision_count(1, 3), 810);
}

TEST(PublicTreeTest, OrbitsCoverEveryBoard) {
  for (bool sym : {false, true}) {
    for (GameSpec spec : {LeducSpec(), Numeral211Spec()}) {
      PublicTree t(Game(spec), sym);
      double final_boards = 0;
      for (const BoardNode& b : t.boards()) {
        if (b.phase == spec.num_phases()) final_boards += b.multiplicity;
        EXPECT_EQ(b.cosets.size(), b.orbit_pos.size() + (b.parent < 0 ? 1 : 0));
      }
      const double want = spec.id == "leduc" ? 6 : 40 * 39;
      EXPECT_EQ(final_boards, want) << spec.id << " sym=" << sym;
      // Probabilities of all deals through the last phase sum to one.
      const double hands = static_cast<double>(t.hands().size());
      const double opp = static_cast<double>(Choose(spec.deck.size() - spec.holes, spec.holes));
      const int left = spec.deck.size() - 2 * spec.holes;
      const double boards = spec.id == "leduc" ? left : static_cast<double>(left) * (left - 1);
      EXPECT_NEAR(t.deal_probability(spec.num_phases()) * hands * opp * boards, 1.0, 1e-12);
    }
  }
}

TEST(PublicTreeTest, FinalBoardsSortedByStrength) {
  Game g(Numeral211Spec());
  PublicTree t(g, true);
  for (const BoardNode& b : t.boards()) {
    if (b.phase != 3) continue;
    for (int i = 1; i < b.size(); ++i) ASSERT_LE(b.strength[i - 1], b.strength[i]);
    for (int i = 0; i < b.size(); ++i) {
      ASSERT_EQ(b.strength[i], g.Strength(t.hands().hand(b.hand_ids[i]), b.cards));
      ASSERT_FALSE(t.hands().hand(b.hand_ids[i]).intersects(b.cards));
    }
  }
}

class LeducSolverTest : public ::testing::Test {
 protected:
  Game game_{LeducSpec()};
  ObservationIndexer ix_{game_.spec()};
  FeatureContext ctx_{ix_};
};

TEST_F(LeducSolverTest, IdentityReproducesOriginalInfosetCounts) {
  std::map<std::pair<Actor, int>, std::set<std::string>> originals;
  for (const OriginalInfoset& o : LeducInfosets(game_)) {
    std::string key = o.sequence + "|" + std::to_string(o.obs.own.bits());
    for (CardSet b : o.obs.boards) key += "|" + std::to_string(b.bits());
    originals[{o.owner, o.obs.phase()}].insert(key);
  }
  const AbstractedGame ag(game_, ix_, {BuildIdentity(ix_), BuildIdentity(ix_)});
  std::uint64_t total = 0;
  for (Actor p : {0, 1}) {
    for (int r = 1; r <= 2; ++r) {
      const std::uint64_t want = originals[std::make_pair(p, r)].size();
      EXPECT_EQ(ag.InfosetCount(p, r), want);
      total += want;
    }
  }
  EXPECT_EQ(ag.InfosetCount(), total);
  EXPECT_EQ(total, 936u);
}

TEST_F(LeducSolverTest, PaoiMergingIsTraceAndBucket) {
  AbstractionMap paoi = BuildPaoi(ctx_);
  AbstractedGame ag(game_, ix_, {paoi, paoi});
  std::map<AbstractedInfoset, std::set<std::vector<BetToken>>> legal;
  std::map<AbstractedInfoset, std::set<std::string>> members;
  for (const OriginalInfoset& o : LeducInfosets(game_)) {
    const int node = *ag.betting().Find(o.sequence);
    AbstractedInfoset ai = ag.Infoset(node, o.obs);
    // Merge iff equal trace and equal bucket.
    EXPECT_EQ(ai.sequence, o.sequence);
    EXPECT_EQ(ai.bucket, paoi.BucketOf(ix_, o.obs));
    legal[ai].insert(o.legal);
    members[ai].insert(std::to_string(o.obs.own.bits()));
  }
  for (auto& [ai, sets] : legal) EXPECT_EQ(sets.size(), 1u) << ai.sequence;
  std::map<int, std::uint64_t> per_phase;
  for (auto& entry : members) per_phase[entry.first.phase]++;
  for (int r = 1; r <= 2; ++r) {
    const int seqs = ag.betting().decision_count(0, r) + ag.betting().decision_count(1, r);
    EXPECT_EQ(per_phase[r], static_cast<std::uint64_t>(3 * seqs));
    const std::uint64_t counted = ag.InfosetCount(0, r) + ag.InfosetCount(1, r);
    EXPECT_EQ(counted, per_phase[r]);
  }
}

TEST_F(LeducSolverTest, OneIterationIsUniform) {
  for (CfrVariant v : {CfrVariant::kVanilla, CfrVariant::kPlus}) {
    AbstractedGame ag(game_, ix_, {BuildIdentity(ix_), BuildIdentity(ix_)});
    CfrSolver s(ag, {v, 1});
    s.Solve();
    EXPECT_EQ(s.iteration(), 1);
    StrategyProfile avg = s.AverageStrategy();
    StrategyProfile uni = ag.UniformStrategy();
    for (Actor p : {0, 1}) {
      for (int r = 1; r <= 2; ++r) {
        ASSERT_EQ(avg.table(p, r).size(), uni.table(p, r).size());
        for (std::size_t i = 0; i < uni.table(p, r).size(); ++i) {
          EXPECT_NEAR(avg.table(p, r)[i], uni.table(p, r)[i], 1e-7);
        }
      }
    }
  }
}

TEST_F(LeducSolverTest, DeterministicAndNormalized) {
  AbstractionMap paoi = BuildPaoi(ctx_);
  AbstractedGame ag(game_, ix_, {paoi, BuildIdentity(ix_)});
  CfrSolver a(ag, {CfrVariant::kVanilla, 300});
  CfrSolver b(ag, {CfrVariant::kVanilla, 300});
  a.Solve();
  b.Solve();
  EXPECT_EQ(a.AverageStrategy(), b.AverageStrategy());
  std::stringstream sa, sb;
  WriteStrategy(sa, a.AverageStrategy(), ag.betting());
  WriteStrategy(sb, b.AverageStrategy(), ag.betting());
  EXPECT_EQ(sa.str(), sb.str());
  EXPECT_NO_THROW(a.AverageStrategy().Validate(ag.betting()));
  EXPECT_NO_THROW(a.CurrentStrategy().Validate(ag.betting()));
}

// Exploiting suit symmetry must not change the computation: compare a
// symmetric run with the same maps on the full board tree.
TEST_F(LeducSolverTest, SymmetryReductionIsExact) {
  AbstractionMap li = BuildLi(ix_);
  AbstractedGame sym(game_, ix_, {li, li}, true);
  AbstractedGame full(game_, ix_, {li, li}, false);
  ASSERT_TRUE(sym.tree().symmetric());
  ASSERT_FALSE(full.tree().symmetric());
  ASSERT_LT(sym.tree().boards().size(), full.tree().boards().size());
  // CFR+ leaves rounding-noise regrets (~1e-18) where the exact regret is
  // zero, and regret matching turns their sign into a pure action. The two
  // summation orders therefore drift apart chaotically after ~40
  // iterations, so CFR+ is compared over a horizon where rounding has not
  // yet been amplified.
  for (auto [v, iterations] : {std::pair{CfrVariant::kVanilla, 200}, std::pair{CfrVariant::kPlus, 30}}) {
    CfrSolver a(sym, {v, iterations});
    CfrSolver b(full, {v, iterations});
    a.Solve();
    b.Solve();
    StrategyProfile x = a.AverageStrategy(), y = b.AverageStrategy();
    for (Actor p : {0, 1}) {
      for (int r = 1; r <= 2; ++r) {
        for (std::size_t i = 0; i < x.table(p, r).size(); ++i) {
          ASSERT_NEAR(x.table(p, r)[i], y.table(p, r)[i], 1e-9) << ToString(v);
        }
      }
    }
    EXPECT_NEAR(Evaluator(sym).Exploitability(x).eps, Evaluator(full).Exploitability(x).eps, 1e-12);
  }
}

TEST(Numeral211SolverTest, SymmetryReductionIsExact) {
  GameSpec spec = Numeral211Spec();
  ApplyGameOverride(spec, "max_raises", "1");
  Game g(spec);
  ObservationIndexer ix(spec);
  AbstractionMap li = BuildLi(ix);
  AbstractedGame sym(g, ix, {li, li}, true);
  AbstractedGame full(g, ix, {li, li}, false);
  CfrSolver a(sym, {CfrVariant::kVanilla, 3});
  CfrSolver b(full, {CfrVariant::kVanilla, 3});
  a.Solve();
  b.Solve();
  StrategyProfile x = a.AverageStrategy(), y = b.AverageStrategy();
  double worst = 0;
  for (Actor p : {0, 1}) {
    for (int r = 1; r <= 3; ++r) {
      for (std::size_t i = 0; i < x.table(p, r).size(); ++i) {
        worst = std::max(worst, std::abs(x.table(p, r)[i] - y.table(p, r)[i]));
      }
    }
  }
  EXPECT_LT(worst, 1e-6);
  Evaluator es(sym), ef(full);
  EXPECT_NEAR(es.BestResponseValue(x, 0), ef.BestResponseValue(x, 0), 1e-9);
  EXPECT_NEAR(es.ExpectedValue(x), ef.ExpectedValue(x), 1e-9);
}

TEST_F(LeducSolverTest, LiftSharesDistributionWithinBuckets) {
  AbstractionMap paoi = BuildPaoi(ctx_);
  AbstractedGame ag(game_, ix_, {paoi, paoi});
  CfrSolver s(ag, {CfrVariant::kVanilla, 100});
  s.Solve();
  StrategyProfile avg = s.AverageStrategy();
  LiftedStrategy lift = ag.Lift(avg);
  std::map<AbstractedInfoset, std::vector<double>> seen;
  for (const OriginalInfoset& o : LeducInfosets(game_)) {
    const int node = *ag.betting().Find(o.sequence);
    std::vector<double> d = lift.Policy(node, o.obs);
    double sum = 0;
    for (double x : d) sum += x;
    EXPECT_NEAR(sum, 1.0, 1e-12);
    auto [it, fresh] = seen.emplace(ag.Infoset(node, o.obs), d);
    if (!fresh) EXPECT_EQ(it->second, d);
  }
  // Identity maps lift to themselves.
  AbstractedGame id(game_, ix_, {BuildIdentity(ix_), BuildIdentity(ix_)});
  CfrSolver t(id, {CfrVariant::kVanilla, 10});
  t.Solve();
  StrategyProfile sid = t.AverageStrategy();
  LiftedStrategy lid = id.Lift(sid);
  for (const OriginalInfoset& o : LeducInfosets(game_)) {
    const int node = *id.betting().Find(o.sequence);
    EXPECT_EQ(lid.Policy(node, o.obs), sid.Distribution(id.betting().node(node), ix_.RawIndex(o.obs)));
  }
}

TEST_F(LeducSolverTest, StrategyFileRoundTrip) {
  AbstractionMap paoi = BuildPaoi(ctx_);
  AbstractedGame ag(game_, ix_, {paoi, BuildIdentity(ix_)});
  CfrSolver s(ag, {CfrVariant::kPlus, 50});
  s.Solve();
  StrategyProfile avg = s.AverageStrategy();
  EXPECT_EQ(avg.profile_hash(), ag.profile_hash());
  std::stringstream buf;
  WriteStrategy(buf, avg, ag.betting());
  EXPECT_EQ(buf.str().substr(0, 4), "SOST");
  EXPECT_EQ(ReadStrategy(buf, ag.betting()), avg);
  std::stringstream bad("SOSX....");
  EXPECT_THROW(ReadStrategy(bad, ag.betting()), FormatError);
  std::stringstream csv;
  WriteStrategyCsv(csv, avg, ag.betting());
  std::string header;
  std::getline(csv, header);
  EXPECT_EQ(header, "player,phase,sequence,bucket,action,probability");
  EXPECT_THROW(LoadStrategy("/nonexistent/s.sost", ag.betting()), DependencyError);
}

TEST_F(LeducSolverTest, ValidationRejectsBadStrategies) {
  AbstractedGame ag(game_, ix_, {BuildIdentity(ix_), BuildIdentity(ix_)});
  StrategyProfile u = ag.UniformStrategy();
  u.table(0, 1)[0] = 0.9;
  EXPECT_THROW(u.Validate(ag.betting()), ValidationError);
  EXPECT_THROW(Evaluator(ag).BestResponseValue(u, 1), ValidationError);
}

TEST(CfrOptionsTest, ScheduleAndLimits) {
  EXPECT_EQ(CheckpointSchedule(10, 0), (std::vector<int>{10}));
  EXPECT_EQ(CheckpointSchedule(10, 4), (std::vector<int>{4, 8, 10}));
  EXPECT_EQ(CheckpointSchedule(10, 5), (std::vector<int>{5, 10}));
  EXPECT_EQ(ParseCfrVariant("plus"), CfrVariant::kPlus);
  EXPECT_THROW(ParseCfrVariant("mccfr"), ParameterError);
  Game g(LeducSpec());
  ObservationIndexer ix(g.spec());
  AbstractedGame ag(g, ix, {BuildIdentity(ix), BuildIdentity(ix)});
  EXPECT_THROW(CfrSolver(ag, {CfrVariant::kVanilla, 0}), ParameterError);
  CfrOptions tiny;
  tiny.memory_limit_gb = 1e-9;
  EXPECT_THROW(CfrSolver(ag, tiny), ParameterError);
  std::vector<int> seen;
  CfrSolver s(ag, {CfrVariant::kVanilla, 7, 3});
  s.Solve([&](int t) { seen.push_back(t); });
  EXPECT_EQ(seen, (std::vector<int>{3, 6, 7}));
}

TEST(AbstractedGameTest, RejectsMismatchedMaps) {
  Game g(LeducSpec());
  ObservationIndexer ix(g.spec());
  ObservationIndexer other(Numeral211Spec());
  EXPECT_THROW(AbstractedGame(g, ix, {BuildIdentity(ix), BuildLi(other)}), DomainError);
}

}  // namespace
}  // namespace soab
