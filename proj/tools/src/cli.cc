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

#include "cli.h"

#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <nlohmann/json.hpp>
#include <spdlog/sinks/ostream_sink.h>
#include <spdlog/spdlog.h>

#include "soab/abstracted_game.h"
#include "soab/abstraction_io.h"
#include "soab/best_response.h"
#include "soab/config.h"
#include "soab/errors.h"
#include "soab/experiment.h"
#include "soab/features.h"
#include "soab/indexing.h"
#include "soab/public_tree.h"
#include "soab/strategy.h"

namespace soab::cli {
namespace {

namespace fs = std::filesystem;

// Thrown for internal invariant failures detected by a command.
class InvariantError : public Error {
 public:
  using Error::Error;
};

struct Globals {
  std::string game;
  std::string config;
  std::string out;
  int jobs = 1;
  std::optional<std::uint64_t> seed;
};

ExperimentConfig ResolveConfig(const Globals& g) {
  ExperimentConfig c = g.config.empty() ? ExperimentConfig{} : LoadConfig(g.config);
  if (!g.game.empty()) SetConfigKey(c, "game", g.game);
  if (g.seed) c.seed = *g.seed;
  if (!g.out.empty()) c.out = g.out;
  return c;
}

std::string PathIn(const std::string& dir, const char* name) { return (fs::path(dir) / name).string(); }

void EnsureDir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw DependencyError("cannot create output directory " + dir + ": " + ec.message());
}

std::string Counts(const std::vector<std::uint64_t>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + std::to_string(v[i]);
  return s;
}

// Lossless side of asymmetric runs: the identity abstraction when its
// regret tables fit the memory limit, otherwise LI (which a solver started
// from uniform play cannot tell apart from identity).
AbstractionMap ReferenceMap(const ExperimentConfig& c, const Game& game, const ObservationIndexer& ix,
                            std::shared_ptr<spdlog::logger> log) {
  std::string ref = c.reference;
  if (ref == "auto") {
    BettingTree t(game);
    double bytes = 0;
    for (Actor p : {0, 1}) {
      for (int r = 1; r <= game.num_phases(); ++r) {
        bytes += 3.0 * sizeof(double) * static_cast<double>(ix.RawCount(r)) * t.slot_count(p, r);
      }
    }
    // One player of each asymmetric solve uses the reference.
    ref = bytes / 2 <= c.cfr.memory_limit_gb * (1ULL << 30) ? "none" : "li";
    log->info("reference abstraction: {}", ref == "none" ? "identity" : "li");
  }
  return ref == "none" ? BuildIdentity(ix) : BuildLi(ix);
}

void WriteText(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw DependencyError("cannot write " + path);
  f << text;
}

std::uint64_t CurveSeed(const ExperimentConfig& c) {
  return IsSeeded(c.abstraction.algorithm) ? c.ResolvedAbstraction().seed : 0;
}

// ---- count ----

int Count(const Globals& g, std::string game_arg, std::string algorithm, const std::string& k,
          const std::string& buckets, int phases, std::ostream& out,
          std::shared_ptr<spdlog::logger> log) {
  ExperimentConfig c = ResolveConfig(g);
  if (!game_arg.empty()) SetConfigKey(c, "game", game_arg);
  if (!algorithm.empty()) SetConfigKey(c, "abstraction.algorithm", algorithm);
  if (!k.empty()) SetConfigKey(c, "abstraction.k", k);
  if (!buckets.empty()) SetConfigKey(c, "abstraction.buckets", buckets);
  const GameSpec spec = c.MakeSpec();
  ObservationIndexer ix(spec);
  const int n = phases > 0 ? std::min(phases, spec.num_phases()) : spec.num_phases();
  const std::string& alg = c.abstraction.algorithm;
  std::vector<std::uint64_t> counts;
  if (alg == "none" || alg == "li") {
    for (int r = 1; r <= n; ++r) counts.push_back(alg == "none" ? ix.RawCount(r) : ix.CanonicalCount(r));
  } else {
    if (n != spec.num_phases()) throw ParameterError("--phases applies to none and li only");
    FeatureContext ctx(ix);
    BuiltAbstraction built = BuildAbstraction(ctx, c.ResolvedAbstraction());
    for (const std::string& w : built.warnings) log->warn("{}", w);
    // Every algorithm here is suit-invariant: LI must refine it.
    for (bool ok : CheckRefinement(BuildLi(ix), built.map, &ix)) {
      if (!ok) throw InvariantError("LI does not refine the " + alg + " abstraction");
    }
    for (int r = 1; r <= n; ++r) counts.push_back(built.map.bucket_count(r));
  }
  out << Counts(counts) << "\n";
  if (!g.out.empty()) {
    EnsureDir(g.out);
    std::ostringstream csv;
    csv << "game,algorithm,phase,classes\n";
    for (int r = 1; r <= n; ++r) csv << spec.id << "," << alg << "," << r << "," << counts[r - 1] << "\n";
    WriteText(PathIn(g.out, "counts.csv"), csv.str());
  }
  return kOk;
}

// ---- build ----

int Build(const Globals& g, std::ostream& out, std::shared_ptr<spdlog::logger> log) {
  const ExperimentConfig c = ResolveConfig(g);
  const GameSpec spec = c.MakeSpec();
  ObservationIndexer ix(spec);
  FeatureContext ctx(ix);
  BuiltAbstraction built = BuildAbstraction(ctx, c.ResolvedAbstraction());
  for (const std::string& w : built.warnings) log->warn("{}", w);
  if (c.abstraction.algorithm != "none") {
    for (bool ok : CheckRefinement(BuildLi(ix), built.map, &ix)) {
      if (!ok) throw InvariantError("LI does not refine the built abstraction");
    }
  }
  EnsureDir(c.out);
  SaveAbstractionMap(PathIn(c.out, kAbstractionFile), built.map);
  std::ostringstream cfg;
  WriteConfig(cfg, c);
  WriteText(PathIn(c.out, kConfigFile), cfg.str());
  std::vector<std::uint64_t> counts;
  for (std::uint32_t n : built.map.bucket_counts()) counts.push_back(n);
  out << AlgorithmTag(c.abstraction.algorithm) << " buckets: " << Counts(counts) << "\n";
  out << "wrote " << PathIn(c.out, kAbstractionFile) << "\n";
  return kOk;
}

// ---- solve ----

struct Loaded {
  ExperimentConfig config;
  GameSpec spec;
  std::unique_ptr<Game> game;
  std::unique_ptr<ObservationIndexer> ix;
  AbstractionMap alpha;
};

Loaded LoadRun(const Globals& g) {
  Loaded l;
  l.config = ResolveConfig(g);
  l.spec = l.config.MakeSpec();
  l.game = std::make_unique<Game>(l.spec);
  l.ix = std::make_unique<ObservationIndexer>(l.spec);
  l.alpha = LoadAbstractionMap(PathIn(l.config.out, kAbstractionFile));
  l.alpha.CheckCompatible(*l.ix);
  return l;
}

int Solve(const Globals& g, bool csv, std::ostream& out, std::shared_ptr<spdlog::logger> log) {
  Loaded l = LoadRun(g);
  const ExperimentConfig& c = l.config;
  ExperimentOptions o;
  o.cfr = c.ResolvedCfr();
  o.game_value = c.game_value;
  o.progress = [&](const std::string& stage, const ExploitabilityReport& r) {
    log->info("{} t={} br1={:.6g} br2={:.6g}", stage, r.iteration, r.br1, r.br2);
  };
  ExperimentResult res;
  if (c.scenario == Scenario::kSymmetric) {
    res = RunSymmetric(*l.game, *l.ix, {l.alpha, l.alpha}, o);
  } else {
    AbstractionMap ref = ReferenceMap(c, *l.game, *l.ix, log);
    res = RunAsymmetric(*l.game, *l.ix, {l.alpha, l.alpha}, {ref, ref}, o);
  }
  res.curve.algorithm = AlgorithmTag(c.abstraction.algorithm);
  res.curve.seed = CurveSeed(c);
  BettingTree tree(*l.game);
  std::vector<std::string> files =
      c.scenario == Scenario::kSymmetric ? std::vector<std::string>{kStrategyFile}
                                         : std::vector<std::string>{kStrategyFile1, kStrategyFile2};
  for (std::size_t i = 0; i < files.size(); ++i) {
    SaveStrategy(PathIn(c.out, files[i].c_str()), res.strategies[i], tree);
    if (csv) {
      std::ofstream f(PathIn(c.out, (files[i].substr(0, files[i].size() - 5) + ".csv").c_str()));
      WriteStrategyCsv(f, res.strategies[i], tree);
    }
  }
  std::ostringstream curve;
  WriteCurveCsv(curve, {res.curve});
  WriteText(PathIn(c.out, kCurveFile), curve.str());
  const ExploitabilityReport& f = res.curve.final();
  out << fmt::format("{} {} T={} eps={:.6g} eps1={:.6g} eps2={:.6g} chips\n", ToString(c.scenario),
                     res.curve.algorithm, f.iteration, f.eps, f.eps1, f.eps2);
  return kOk;
}

// ---- eval ----

int Eval(const Globals& g, std::ostream& out, std::shared_ptr<spdlog::logger> log) {
  Loaded l = LoadRun(g);
  const ExperimentConfig& c = l.config;
  BettingTree tree(*l.game);
  ExploitabilityReport r;
  if (c.scenario == Scenario::kSymmetric) {
    StrategyProfile s = LoadStrategy(PathIn(c.out, kStrategyFile), tree);
    AbstractedGame ag(*l.game, *l.ix, {l.alpha, l.alpha});
    if (s.profile_hash() != ag.profile_hash()) {
      throw ValidationError("strategy was not solved for this abstraction profile");
    }
    r = Evaluator(ag).Exploitability(s, c.game_value);
  } else {
    AbstractionMap ref = ReferenceMap(c, *l.game, *l.ix, log);
    std::array<std::array<AbstractionMap, 2>, 2> profiles = {std::array{l.alpha, ref},
                                                             std::array{ref, l.alpha}};
    std::array<StrategyProfile, 2> s = {LoadStrategy(PathIn(c.out, kStrategyFile1), tree),
                                        LoadStrategy(PathIn(c.out, kStrategyFile2), tree)};
    for (int i = 0; i < 2; ++i) {
      if (s[i].profile_hash() != ProfileHash(profiles[i][0], profiles[i][1])) {
        throw ValidationError("strategy " + std::to_string(i + 1) +
                              " was not solved for this abstraction profile");
      }
    }
    r = EvaluateAsymmetric(*l.game, *l.ix, profiles, s, c.game_value);
  }
  nlohmann::ordered_json j;
  j["scenario"] = ToString(c.scenario);
  j["algorithm"] = AlgorithmTag(c.abstraction.algorithm);
  j["seed"] = CurveSeed(c);
  j["br1_chips"] = r.br1;
  j["br2_chips"] = r.br2;
  j["game_value"] = r.game_value;
  j["eps1_chips"] = r.eps1;
  j["eps2_chips"] = r.eps2;
  j["eps_chips"] = r.eps;
  j["eps_milliante"] = 1000.0 * r.eps / l.spec.ante;
  WriteText(PathIn(c.out, kEvalFile), j.dump(2) + "\n");
  out << fmt::format("eps={:.6g} eps1={:.6g} eps2={:.6g} br1={:.6g} br2={:.6g} chips\n", r.eps,
                     r.eps1, r.eps2, r.br1, r.br2);
  return kOk;
}

// ---- report ----

int Report(const Globals& g, const std::vector<std::string>& inputs, std::ostream& out) {
  if (g.out.empty()) throw ParameterError("report needs --out");
  std::vector<ExperimentCurve> curves;
  for (const std::string& in : inputs) {
    const std::string path = fs::is_directory(in) ? PathIn(in, kCurveFile) : in;
    std::ifstream f(path);
    if (!f) throw DependencyError("curve file not found: " + path);
    for (ExperimentCurve& c : ReadCurveCsv(f)) curves.push_back(std::move(c));
  }
  EnsureDir(g.out);
  std::ostringstream csv;
  WriteCurveCsv(csv, curves);
  WriteText(PathIn(g.out, kCurveFile), csv.str());
  WriteText(PathIn(g.out, kSummaryFile), SummaryJson(curves));
  // Mean final exploitability per scenario and algorithm.
  std::map<std::pair<std::string, std::string>, std::pair<double, int>> mean;
  for (const ExperimentCurve& c : curves) {
    auto& [sum, n] = mean[{ToString(c.scenario), c.algorithm}];
    sum += c.final().eps;
    ++n;
  }
  out << "scenario,algorithm,runs,mean_final_eps_chips\n";
  for (const auto& [key, v] : mean) {
    out << fmt::format("{},{},{},{:.6g}\n", key.first, key.second, v.second, v.first / v.second);
  }
  return kOk;
}

}  // namespace

int Run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  auto sink = std::make_shared<spdlog::sinks::ostream_sink_mt>(err);
  auto log = std::make_shared<spdlog::logger>("soab", sink);
  log->set_pattern("[%l] %v");

  CLI::App app{"Signal observation abstraction toolkit"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--game", g.game, "Game id: leduc, numeral211, hulh-cards");
  app.add_option("--config", g.config, "key=value configuration file");
  app.add_option("--out", g.out, "Output directory");
  app.add_option("--jobs", g.jobs, "Worker cap (traversals are single-threaded)")
      ->check(CLI::PositiveNumber);
  app.add_option("--seed", g.seed, "Master seed");

  std::string count_game, count_alg, count_k, count_buckets;
  int count_phases = 0;
  CLI::App* count = app.add_subcommand("count", "Per-phase class counts of an abstraction");
  count->add_option("game", count_game, "Game id");
  count->add_option("algorithm", count_alg, "none, li, paoi, kroi, froi, ehs, paaemd");
  count->add_option("--k", count_k, "Per-phase recall depths for kroi, e.g. 0,1,2");
  count->add_option("--buckets", count_buckets, "Per-phase bucket counts for ehs and paaemd");
  count->add_option("--phases", count_phases, "Count only the first N phases (none, li)");
  CLI::App* build = app.add_subcommand("build", "Build the configured abstraction map");
  bool csv = false;
  CLI::App* solve = app.add_subcommand("solve", "Solve the abstracted game(s) with CFR");
  solve->add_flag("--csv", csv, "Also export strategies as CSV");
  CLI::App* eval = app.add_subcommand("eval", "Exploitability of the solved strategy");
  std::vector<std::string> inputs;
  CLI::App* report = app.add_subcommand("report", "Merge curves of several runs");
  report->add_option("inputs", inputs, "Run directories or curve CSV files")->required();

  std::vector<const char*> argv;
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }
  if (g.jobs > 1) log->info("--jobs {}: traversal is single-threaded", g.jobs);

  try {
    if (count->parsed()) return Count(g, count_game, count_alg, count_k, count_buckets, count_phases, out, log);
    if (build->parsed()) return Build(g, out, log);
    if (solve->parsed()) return Solve(g, csv, out, log);
    if (eval->parsed()) return Eval(g, out, log);
    if (report->parsed()) return Report(g, inputs, out);
  } catch (const ParameterError& e) {
    log->error("{}", e.what());
    return kUsage;
  } catch (const DomainError& e) {
    log->error("{}", e.what());
    return kUsage;
  } catch (const DependencyError& e) {
    log->error("{}", e.what());
    return kDependency;
  } catch (const FormatError& e) {
    log->error("unreadable artifact: {}", e.what());
    return kDependency;
  } catch (const std::exception& e) {
    log->error("{}", e.what());
    return kInvariant;
  }
  return kUsage;
}

}  // namespace soab::cli
