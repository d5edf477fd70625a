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

#include "soab/config.h"

#include <cctype>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "soab/errors.h"
#include "soab/kmeans.h"

namespace soab {

namespace {

std::string_view Trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

template <typename T>
T ParseNumber(std::string_view key, std::string_view value) {
  T out{};
  const char* end = value.data() + value.size();
  auto [ptr, ec] = std::from_chars(value.data(), end, out);
  if (ec != std::errc() || ptr != end || value.empty()) {
    throw ParameterError(std::string(key) + ": cannot parse '" + std::string(value) + "'");
  }
  return out;
}

double ParseDouble(std::string_view key, std::string_view value) {
  try {
    std::size_t used = 0;
    const std::string v(value);
    const double d = std::stod(v, &used);
    if (used == v.size()) return d;
  } catch (const std::exception&) {
  }
  throw ParameterError(std::string(key) + ": cannot parse '" + std::string(value) + "'");
}

std::string Join(const std::vector<int>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s;
}

constexpr std::uint64_t kAbstractionStream = 1;
constexpr std::uint64_t kCfrStream = 2;

}  // namespace

std::vector<int> ParseIntList(std::string_view key, std::string_view value) {
  std::vector<int> out;
  std::size_t start = 0;
  while (start <= value.size()) {
    std::size_t comma = value.find(',', start);
    if (comma == std::string_view::npos) comma = value.size();
    out.push_back(ParseNumber<int>(key, Trim(value.substr(start, comma - start))));
    start = comma + 1;
  }
  return out;
}

GameSpec ExperimentConfig::MakeSpec() const {
  GameSpec spec = MakeGameSpec(game);
  for (const auto& [k, v] : game_overrides) ApplyGameOverride(spec, k, v);
  spec.Validate();
  return spec;
}

AbstractionSpec ExperimentConfig::ResolvedAbstraction() const {
  AbstractionSpec a = abstraction;
  a.seed = abstraction_seed.value_or(SubSeed(seed, kAbstractionStream));
  return a;
}

CfrOptions ExperimentConfig::ResolvedCfr() const {
  CfrOptions c = cfr;
  c.seed = cfr_seed.value_or(SubSeed(seed, kCfrStream));
  return c;
}

void SetConfigKey(ExperimentConfig& c, std::string_view key, std::string_view value) {
  if (key == "game") {
    MakeGameSpec(value);  // DomainError for unknown ids
    c.game = std::string(value);
  } else if (key == "holes" || key == "ante" || key == "bet.phase1" || key == "bet.postflop" ||
             key == "max_raises") {
    GameSpec probe = LeducSpec();
    probe.bet_size.assign(3, 1);
    ApplyGameOverride(probe, key, value);  // validates the value
    c.game_overrides[std::string(key)] = std::string(value);
  } else if (key == "abstraction.algorithm") {
    bool known = false;
    for (const std::string& a : AbstractionAlgorithms()) known |= a == value;
    if (!known) throw ParameterError("unknown abstraction algorithm '" + std::string(value) + "'");
    c.abstraction.algorithm = std::string(value);
  } else if (key == "abstraction.k") {
    c.abstraction.k = ParseIntList(key, value);
  } else if (key == "abstraction.buckets") {
    c.abstraction.buckets = ParseIntList(key, value);
  } else if (key == "abstraction.seed") {
    c.abstraction_seed = ParseNumber<std::uint64_t>(key, value);
  } else if (key == "scenario") {
    c.scenario = ParseScenario(value);
  } else if (key == "reference") {
    if (value != "auto" && value != "none" && value != "li") {
      throw ParameterError("reference must be auto, none or li");
    }
    c.reference = std::string(value);
  } else if (key == "cfr.variant") {
    c.cfr.variant = ParseCfrVariant(value);
  } else if (key == "cfr.iterations") {
    c.cfr.iterations = ParseNumber<int>(key, value);
    if (c.cfr.iterations < 1) throw ParameterError("cfr.iterations must be at least 1");
  } else if (key == "cfr.checkpoint_every") {
    c.cfr.checkpoint_every = ParseNumber<int>(key, value);
    if (c.cfr.checkpoint_every < 0) throw ParameterError("cfr.checkpoint_every must be >= 0");
  } else if (key == "cfr.seed") {
    c.cfr_seed = ParseNumber<std::uint64_t>(key, value);
  } else if (key == "cfr.memory_limit_gb") {
    c.cfr.memory_limit_gb = ParseDouble(key, value);
    if (!(c.cfr.memory_limit_gb > 0)) throw ParameterError("cfr.memory_limit_gb must be positive");
  } else if (key == "game_value") {
    c.game_value = ParseDouble(key, value);
  } else if (key == "seed") {
    c.seed = ParseNumber<std::uint64_t>(key, value);
  } else if (key == "out") {
    if (value.empty()) throw ParameterError("out must not be empty");
    c.out = std::string(value);
  } else {
    throw ParameterError("unknown config key '" + std::string(key) + "'");
  }
}

ExperimentConfig ParseConfig(std::istream& in, const std::string& source) {
  ExperimentConfig c;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view s = Trim(line);
    if (s.empty() || s.front() == '#') continue;
    const std::size_t eq = s.find('=');
    if (eq == std::string_view::npos) {
      throw ParameterError(source + ":" + std::to_string(lineno) + ": expected key=value");
    }
    try {
      SetConfigKey(c, Trim(s.substr(0, eq)), Trim(s.substr(eq + 1)));
    } catch (const Error& e) {
      throw ParameterError(source + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
  return c;
}

ExperimentConfig LoadConfig(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DependencyError("config file not found: " + path);
  return ParseConfig(in, path);
}

void WriteConfig(std::ostream& out, const ExperimentConfig& c) {
  out << "game=" << c.game << "\n";
  for (const auto& [k, v] : c.game_overrides) out << k << "=" << v << "\n";
  out << "abstraction.algorithm=" << c.abstraction.algorithm << "\n";
  if (!c.abstraction.k.empty()) out << "abstraction.k=" << Join(c.abstraction.k) << "\n";
  if (!c.abstraction.buckets.empty()) out << "abstraction.buckets=" << Join(c.abstraction.buckets) << "\n";
  if (c.abstraction_seed) out << "abstraction.seed=" << *c.abstraction_seed << "\n";
  out << "scenario=" << ToString(c.scenario) << "\n";
  out << "reference=" << c.reference << "\n";
  out << "cfr.variant=" << ToString(c.cfr.variant) << "\n";
  out << "cfr.iterations=" << c.cfr.iterations << "\n";
  out << "cfr.checkpoint_every=" << c.cfr.checkpoint_every << "\n";
  if (c.cfr_seed) out << "cfr.seed=" << *c.cfr_seed << "\n";
  std::ostringstream mem;
  mem.precision(17);
  mem << c.cfr.memory_limit_gb;
  out << "cfr.memory_limit_gb=" << mem.str() << "\n";
  if (c.game_value) {
    std::ostringstream v;
    v.precision(17);
    v << *c.game_value;
    out << "game_value=" << v.str() << "\n";
  }
  out << "seed=" << c.seed << "\n";
  out << "out=" << c.out << "\n";
}

}  // namespace soab
