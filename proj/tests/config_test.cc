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

#include <sstream>

#include <gtest/gtest.h>

#include "soab/config.h"
#include "soab/errors.h"
#include "soab/kmeans.h"

namespace soab {
namespace {

ExperimentConfig Parse(const std::string& text) {
  std::istringstream in(text);
  return ParseConfig(in);
}

TEST(ConfigTest, ParsesEveryKey) {
  ExperimentConfig c = Parse(
      "# numeral run\n"
      "game = numeral211\n"
      "max_raises=3\n"
      "bet.postflop=40\n"
      "abstraction.algorithm=paaemd\n"
      "abstraction.buckets=0, 225,396\n"
      "abstraction.seed=4\n"
      "scenario=asymmetric\n"
      "reference=li\n"
      "cfr.variant=plus\n"
      "cfr.iterations=64\n"
      "cfr.checkpoint_every=8\n"
      "cfr.seed=9\n"
      "cfr.memory_limit_gb=2.5\n"
      "game_value=-0.25\n"
      "seed=17\n"
      "\n"
      "out=runs/a\n");
  EXPECT_EQ(c.game, "numeral211");
  EXPECT_EQ(c.abstraction.algorithm, "paaemd");
  EXPECT_EQ(c.abstraction.buckets, (std::vector<int>{0, 225, 396}));
  EXPECT_EQ(c.scenario, Scenario::kAsymmetric);
  EXPECT_EQ(c.reference, "li");
  EXPECT_EQ(c.cfr.variant, CfrVariant::kPlus);
  EXPECT_EQ(c.cfr.iterations, 64);
  EXPECT_EQ(c.cfr.checkpoint_every, 8);
  EXPECT_DOUBLE_EQ(c.cfr.memory_limit_gb, 2.5);
  EXPECT_EQ(c.game_value, -0.25);
  EXPECT_EQ(c.ResolvedAbstraction().seed, 4u);
  EXPECT_EQ(c.ResolvedCfr().seed, 9u);
  EXPECT_EQ(c.out, "runs/a");
  GameSpec spec = c.MakeSpec();
  EXPECT_EQ(spec.max_raises, 3);
  EXPECT_EQ(spec.bet_size, (std::vector<int>{10, 40, 40}));
  EXPECT_EQ(spec.ante, 5);
}

TEST(ConfigTest, SubSeedsDeriveFromMasterSeed) {
  ExperimentConfig a = Parse("seed=5\n");
  ExperimentConfig b = Parse("seed=6\n");
  EXPECT_EQ(a.ResolvedAbstraction().seed, SubSeed(5, 1));
  EXPECT_EQ(a.ResolvedCfr().seed, SubSeed(5, 2));
  EXPECT_NE(a.ResolvedAbstraction().seed, b.ResolvedAbstraction().seed);
  EXPECT_NE(a.ResolvedAbstraction().seed, a.ResolvedCfr().seed);
}

TEST(ConfigTest, RejectsUnknownKeysAndBadValues) {
  for (const char* text : {"cfr.iterationz=5\n", "cfr.iterations=0\n", "cfr.iterations=ten\n",
                           "scenario=both\n", "abstraction.algorithm=kmeans\n", "holes=-1\n",
                           "reference=full\n", "no equals sign\n", "abstraction.k=1,,2\n"}) {
    EXPECT_THROW(Parse(text), ParameterError) << text;
  }
  try {
    Parse("game=leduc\n\nbogus=1\n");
    FAIL();
  } catch (const ParameterError& e) {
    EXPECT_NE(std::string(e.what()).find(":3:"), std::string::npos) << e.what();
  }
  EXPECT_THROW(Parse("game=chess\n"), ParameterError);
  EXPECT_THROW(LoadConfig("/nonexistent/run.cfg"), DependencyError);
}

TEST(ConfigTest, WriteParseRoundTrip) {
  ExperimentConfig c = Parse(
      "game=numeral211\nante=7\nabstraction.algorithm=kroi\nabstraction.k=0,1,1\n"
      "scenario=symmetric\ncfr.iterations=12\ncfr.memory_limit_gb=0.1\ngame_value=0.125\n"
      "seed=3\nout=x\n");
  std::ostringstream a;
  WriteConfig(a, c);
  ExperimentConfig d = Parse(a.str());
  std::ostringstream b;
  WriteConfig(b, d);
  EXPECT_EQ(a.str(), b.str());
  EXPECT_EQ(d.abstraction.k, (std::vector<int>{0, 1, 1}));
  EXPECT_EQ(d.MakeSpec().ante, 7);
  EXPECT_EQ(d.game_value, 0.125);
}

}  // namespace
}  // namespace soab
