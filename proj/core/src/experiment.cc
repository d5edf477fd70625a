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

#include "soab/experiment.h"

#include <cctype>
#include <cmath>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "soab/abstracted_game.h"
#include "soab/ehs.h"
#include "soab/errors.h"
#include "soab/paaemd.h"
#include "soab/paoi.h"

namespace soab {

std::vector<std::string> AbstractionAlgorithms() {
  return {"none", "li", "paoi", "kroi", "froi", "ehs", "paaemd"};
}

std::string AlgorithmTag(std::string_view algorithm) {
  if (algorithm == "none") return "IDENTITY";
  std::string out(algorithm);
  for (char& c : out) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return out;
}

bool IsSeeded(std::string_view algorithm) { return algorithm == "paaemd"; }

namespace {

void CheckPhases(const std::vector<int>& v, int phases, const char* what) {
  if (static_cast<int>(v.size()) != phases) {
    throw ParameterError(std::string(what) + " needs " + std::to_string(phases) +
                         " per-phase values, got " + std::to_string(v.size()));
  }
}

}  // namespace

BuiltAbstraction BuildAbstraction(const FeatureContext& ctx, const AbstractionSpec& spec) {
  const ObservationIndexer& ix = ctx.indexer();
  const std::string& a = spec.algorithm;
  if (a == "none") return {BuildIdentity(ix), {}};
  if (a == "li") return {BuildLi(ix), {}};
  if (a == "paoi") return {BuildPaoi(ctx), {}};
  if (a == "froi") return {BuildFroi(ctx, BuildPaoi(ctx)), {}};
  if (a == "kroi") {
    CheckPhases(spec.k, ctx.num_phases(), "abstraction.k");
    return {BuildKroi(ctx, BuildPaoi(ctx), spec.k), {}};
  }
  if (a == "ehs") {
    CheckPhases(spec.buckets, ctx.num_phases(), "abstraction.buckets");
    return {BuildEhs(ctx, spec.buckets), {}};
  }
  if (a == "paaemd") {
    CheckPhases(spec.buckets, ctx.num_phases(), "abstraction.buckets");
    PaaemdOptions o;
    o.clusters = spec.buckets;
    o.seed = spec.seed;
    PaaemdResult r = BuildPaaemd(ctx, o);
    return {std::move(r.map), std::move(r.warnings)};
  }
  throw ParameterError("unknown abstraction algorithm '" + a + "'");
}

std::string ToString(Scenario s) { return s == Scenario::kAsymmetric ? "asymmetric" : "symmetric"; }

Scenario ParseScenario(std::string_view s) {
  if (s == "asymmetric") return Scenario::kAsymmetric;
  if (s == "symmetric") return Scenario::kSymmetric;
  throw ParameterError("scenario must be asymmetric or symmetric, got '" + std::string(s) + "'");
}

namespace {

ExperimentCurve NewCurve(const Game& game, Scenario s) {
  ExperimentCurve c;
  c.scenario = s;
  c.ante = game.spec().ante;
  return c;
}

void Tag(ExploitabilityReport& r, int t, const std::string& stage, const ExperimentOptions& o) {
  r.iteration = t;
  if (o.progress) o.progress(stage, r);
}

}  // namespace

ExperimentResult RunSymmetric(const Game& game, const ObservationIndexer& ix,
                              const std::array<AbstractionMap, 2>& alpha,
                              const ExperimentOptions& options) {
  ExperimentResult res;
  res.curve = NewCurve(game, Scenario::kSymmetric);
  AbstractedGame ag(game, ix, alpha);
  Evaluator ev(ag);
  CfrSolver solver(ag, options.cfr);
  solver.Solve([&](int t) {
    ExploitabilityReport r = ev.Exploitability(solver.AverageStrategy(), options.game_value);
    Tag(r, t, "symmetric", options);
    res.curve.points.push_back(r);
  });
  res.strategies.push_back(solver.AverageStrategy());
  res.profiles.push_back(alpha);
  return res;
}

ExperimentResult RunAsymmetric(const Game& game, const ObservationIndexer& ix,
                               const std::array<AbstractionMap, 2>& alpha,
                               const std::array<AbstractionMap, 2>& reference,
                               const ExperimentOptions& options) {
  ExperimentResult res;
  res.curve = NewCurve(game, Scenario::kAsymmetric);
  const bool single = alpha == reference;
  const std::array<std::array<AbstractionMap, 2>, 2> profiles = {
      std::array{alpha[0], reference[1]}, std::array{reference[0], alpha[1]}};
  // br[p][k]: player p's best response at checkpoint k, against the other
  // player's half of the joint strategy.
  std::array<std::vector<double>, 2> br;
  std::vector<int> iterations;
  for (int side = 0; side < (single ? 1 : 2); ++side) {
    AbstractedGame ag(game, ix, profiles[side]);
    Evaluator ev(ag);
    CfrSolver solver(ag, options.cfr);
    const Actor responder = side == 0 ? 1 : 0;
    solver.Solve([&](int t) {
      const StrategyProfile sigma = solver.AverageStrategy();
      if (side == 0) iterations.push_back(t);
      ExploitabilityReport partial;
      if (single) {
        partial = ev.Exploitability(sigma, options.game_value);
        br[0].push_back(partial.br1);
        br[1].push_back(partial.br2);
      } else {
        const double v = ev.BestResponseValue(sigma, responder);
        br[responder].push_back(v);
        (responder == 0 ? partial.br1 : partial.br2) = v;
      }
      Tag(partial, t, side == 0 ? "asymmetric:solve1" : "asymmetric:solve2", options);
    });
    res.strategies.push_back(solver.AverageStrategy());
    res.profiles.push_back(profiles[side]);
  }
  if (single) {
    res.strategies.push_back(res.strategies[0]);
    res.profiles.push_back(profiles[1]);
  }
  for (std::size_t k = 0; k < iterations.size(); ++k) {
    ExploitabilityReport r = MakeReport(br[0][k], br[1][k], options.game_value);
    r.iteration = iterations[k];
    res.curve.points.push_back(r);
  }
  return res;
}

ExploitabilityReport EvaluateAsymmetric(const Game& game, const ObservationIndexer& ix,
                                        const std::array<std::array<AbstractionMap, 2>, 2>& profiles,
                                        const std::array<StrategyProfile, 2>& strategies,
                                        std::optional<double> game_value) {
  double br[2];
  for (int side = 0; side < 2; ++side) {
    AbstractedGame ag(game, ix, profiles[side]);
    const Actor responder = side == 0 ? 1 : 0;
    br[responder] = Evaluator(ag).BestResponseValue(strategies[side], responder);
  }
  return MakeReport(br[0], br[1], game_value);
}

namespace {

std::vector<std::string> SplitCsv(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

constexpr const char* kCurveHeader =
    "scenario,algorithm,seed,iteration,eps1_chips,eps2_chips,eps_chips,eps_milliante";

}  // namespace

void WriteCurveCsv(std::ostream& out, const std::vector<ExperimentCurve>& curves, bool header) {
  if (header) out << kCurveHeader << "\n";
  char buf[256];
  for (const ExperimentCurve& c : curves) {
    for (const ExploitabilityReport& r : c.points) {
      std::snprintf(buf, sizeof(buf), "%s,%s,%llu,%d,%.17g,%.17g,%.17g,%.17g\n",
                    ToString(c.scenario).c_str(), c.algorithm.c_str(),
                    static_cast<unsigned long long>(c.seed), r.iteration, r.eps1, r.eps2, r.eps,
                    1000.0 * r.eps / c.ante);
      out << buf;
    }
  }
}

std::vector<ExperimentCurve> ReadCurveCsv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kCurveHeader) {
    throw FormatError("curve CSV must start with '" + std::string(kCurveHeader) + "'");
  }
  std::vector<ExperimentCurve> curves;
  std::map<std::tuple<std::string, std::string, std::uint64_t>, std::size_t> index;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::vector<std::string> f = SplitCsv(line);
    if (f.size() != 8) throw FormatError("curve CSV line " + std::to_string(lineno) + ": 8 fields expected");
    try {
      const Scenario s = ParseScenario(f[0]);
      const std::uint64_t seed = std::stoull(f[2]);
      auto key = std::make_tuple(f[0], f[1], seed);
      auto it = index.find(key);
      if (it == index.end()) {
        it = index.emplace(key, curves.size()).first;
        curves.emplace_back();
        curves.back().scenario = s;
        curves.back().algorithm = f[1];
        curves.back().seed = seed;
      }
      ExperimentCurve& c = curves[it->second];
      ExploitabilityReport r;
      r.iteration = std::stoi(f[3]);
      r.eps1 = std::stod(f[4]);
      r.eps2 = std::stod(f[5]);
      r.eps = std::stod(f[6]);
      const double milli = std::stod(f[7]);
      if (r.eps != 0 && milli != 0) c.ante = static_cast<int>(std::lround(1000.0 * r.eps / milli));
      if (!c.points.empty() && r.iteration <= c.points.back().iteration) {
        throw FormatError("iterations must increase within a curve");
      }
      r.abstraction1 = r.abstraction2 = c.algorithm;
      c.points.push_back(r);
    } catch (const FormatError&) {
      throw;
    } catch (const std::exception& e) {
      throw FormatError("curve CSV line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return curves;
}

std::string SummaryJson(const std::vector<ExperimentCurve>& curves) {
  nlohmann::ordered_json runs = nlohmann::ordered_json::array();
  for (const ExperimentCurve& c : curves) {
    if (c.points.empty()) continue;
    const ExploitabilityReport& r = c.final();
    nlohmann::ordered_json j;
    j["scenario"] = ToString(c.scenario);
    j["algorithm"] = c.algorithm;
    j["seed"] = c.seed;
    j["iteration"] = r.iteration;
    j["eps1_chips"] = r.eps1;
    j["eps2_chips"] = r.eps2;
    j["eps_chips"] = r.eps;
    j["eps_milliante"] = 1000.0 * r.eps / c.ante;
    runs.push_back(j);
  }
  nlohmann::ordered_json out;
  out["runs"] = runs;
  return out.dump(2) + "\n";
}

}  // namespace soab
