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

#include "soab/strategy.h"

#include <cmath>
#include <filesystem>
#include <fstream>

#include "soab/binary_io.h"
#include "soab/errors.h"

namespace soab {

StrategyProfile::StrategyProfile(std::string game_id, const BettingTree& tree,
                                 std::array<std::vector<std::uint32_t>, 2> bucket_counts,
                                 std::uint64_t profile_hash)
    : game_id_(std::move(game_id)), hash_(profile_hash), buckets_(std::move(bucket_counts)) {
  for (Actor p : {0, 1}) {
    if (static_cast<int>(buckets_[p].size()) != tree.num_phases()) {
      throw DomainError("bucket counts do not cover every phase");
    }
    slots_[p].resize(tree.num_phases());
    tables_[p].resize(tree.num_phases());
    for (int r = 1; r <= tree.num_phases(); ++r) {
      slots_[p][r - 1] = tree.slot_count(p, r);
      tables_[p][r - 1].assign(static_cast<std::size_t>(buckets_[p][r - 1]) * slots_[p][r - 1], 0.0);
    }
  }
}

StrategyProfile StrategyProfile::Uniform(std::string game_id, const BettingTree& tree,
                                         std::array<std::vector<std::uint32_t>, 2> bucket_counts,
                                         std::uint64_t profile_hash) {
  StrategyProfile s(std::move(game_id), tree, std::move(bucket_counts), profile_hash);
  for (int id : tree.decision_nodes()) {
    const BettingNode& n = tree.node(id);
    const double u = 1.0 / static_cast<double>(n.actions.size());
    for (std::uint32_t b = 0; b < s.bucket_count(n.player, n.phase); ++b) {
      for (std::size_t a = 0; a < n.actions.size(); ++a) s.MutableActionRow(n, a)[b] = u;
    }
  }
  return s;
}

std::vector<double> StrategyProfile::Distribution(const BettingNode& node,
                                                  std::uint32_t bucket) const {
  std::vector<double> d(node.actions.size());
  for (std::size_t a = 0; a < d.size(); ++a) d[a] = Prob(node, bucket, static_cast<int>(a));
  return d;
}

void StrategyProfile::SetDistribution(const BettingNode& node, std::uint32_t bucket,
                                      std::span<const double> d) {
  if (d.size() != node.actions.size()) throw DomainError("distribution size mismatch");
  for (std::size_t a = 0; a < d.size(); ++a) MutableActionRow(node, static_cast<int>(a))[bucket] = d[a];
}

void StrategyProfile::Validate(const BettingTree& tree, double tolerance) const {
  for (Actor p : {0, 1}) {
    if (static_cast<int>(slots_[p].size()) != tree.num_phases()) {
      throw ValidationError("strategy phase count does not match the game");
    }
    for (int r = 1; r <= tree.num_phases(); ++r) {
      if (slots_[p][r - 1] != tree.slot_count(p, r)) {
        throw ValidationError("strategy layout does not match the betting tree");
      }
    }
  }
  for (int id : tree.decision_nodes()) {
    const BettingNode& n = tree.node(id);
    for (std::uint32_t b = 0; b < bucket_count(n.player, n.phase); ++b) {
      double sum = 0;
      for (std::size_t a = 0; a < n.actions.size(); ++a) {
        const double x = Prob(n, b, static_cast<int>(a));
        if (!(x >= 0) || !std::isfinite(x)) {
          throw ValidationError("negative or non-finite probability at '" + n.sequence + "'");
        }
        sum += x;
      }
      if (std::abs(sum - 1.0) > tolerance) {
        throw ValidationError("distribution at '" + n.sequence + "' bucket " + std::to_string(b) +
                              " sums to " + std::to_string(sum));
      }
    }
  }
}

void StrategyProfile::AdoptPlayer(Actor p, const StrategyProfile& from) {
  if (from.game_id_ != game_id_ || from.slots_[p] != slots_[p]) {
    throw DomainError("strategies come from different games");
  }
  buckets_[p] = from.buckets_[p];
  tables_[p] = from.tables_[p];
}

namespace {

constexpr std::uint64_t kFnvOffset = 1469598103934665603ULL;
constexpr std::uint64_t kFnvPrime = 1099511628211ULL;

void Mix(std::uint64_t& h, std::uint64_t v, int bytes) {
  for (int i = 0; i < bytes; ++i) {
    h ^= (v >> (8 * i)) & 0xff;
    h *= kFnvPrime;
  }
}

void MixMap(std::uint64_t& h, const AbstractionMap& m) {
  for (char c : m.game_id()) Mix(h, static_cast<unsigned char>(c), 1);
  Mix(h, static_cast<std::uint8_t>(m.index_space()), 1);
  for (int r = 1; r <= m.num_phases(); ++r) {
    Mix(h, m.entries(r).size(), 8);
    for (std::uint32_t b : m.entries(r)) Mix(h, b, 4);
  }
}

}  // namespace

std::uint64_t ProfileHash(const AbstractionMap& p1, const AbstractionMap& p2) {
  std::uint64_t h = kFnvOffset;
  MixMap(h, p1);
  MixMap(h, p2);
  return h;
}

LiftedStrategy::LiftedStrategy(const StrategyProfile& sigma, const BettingTree& tree,
                               std::array<const AbstractionMap*, 2> maps,
                               const ObservationIndexer& ix)
    : sigma_(sigma), tree_(tree), maps_(maps), ix_(ix) {}

std::vector<double> LiftedStrategy::Policy(int node, const ObservationInfoset& obs) const {
  const BettingNode& n = tree_.node(node);
  if (n.kind != BettingNode::Kind::kDecision) throw DomainError("not a decision node");
  if (obs.phase() != n.phase) throw PhaseError("observation phase does not match the node");
  return sigma_.Distribution(n, maps_[n.player]->BucketOf(ix_, obs));
}

void WriteStrategy(std::ostream& out, const StrategyProfile& sigma, const BettingTree& tree) {
  out.write("SOST", 4);
  io::WriteLe<std::uint32_t>(out, kStrategyFormatVersion);
  io::WriteString16(out, sigma.game_id());
  io::WriteLe<std::uint64_t>(out, sigma.profile_hash());
  io::WriteLe<std::uint8_t>(out, static_cast<std::uint8_t>(tree.num_phases()));
  std::uint64_t entries = 0;
  for (Actor p : {0, 1}) {
    for (int r = 1; r <= tree.num_phases(); ++r) {
      io::WriteLe<std::uint32_t>(out, sigma.bucket_count(p, r));
      entries += static_cast<std::uint64_t>(tree.decision_count(p, r)) * sigma.bucket_count(p, r);
    }
  }
  io::WriteLe<std::uint64_t>(out, entries);
  for (int id : tree.decision_nodes()) {
    const BettingNode& n = tree.node(id);
    for (std::uint32_t b = 0; b < sigma.bucket_count(n.player, n.phase); ++b) {
      io::WriteLe<std::uint8_t>(out, static_cast<std::uint8_t>(n.player));
      io::WriteLe<std::uint32_t>(out, static_cast<std::uint32_t>(id));
      io::WriteLe<std::uint32_t>(out, b);
      io::WriteLe<std::uint8_t>(out, static_cast<std::uint8_t>(n.actions.size()));
      for (std::size_t a = 0; a < n.actions.size(); ++a) {
        io::WriteLe<double>(out, sigma.Prob(n, b, static_cast<int>(a)));
      }
    }
  }
  if (!out) throw FormatError("write failed");
}

StrategyProfile ReadStrategy(std::istream& in, const BettingTree& tree) {
  io::ExpectMagic(in, "SOST");
  const auto version = io::ReadLe<std::uint32_t>(in);
  if (version != kStrategyFormatVersion) {
    throw FormatError("unsupported strategy format version " + std::to_string(version));
  }
  std::string game = io::ReadString16(in);
  const auto hash = io::ReadLe<std::uint64_t>(in);
  const int phases = io::ReadLe<std::uint8_t>(in);
  if (phases != tree.num_phases()) throw FormatError("strategy phase count does not match the game");
  std::array<std::vector<std::uint32_t>, 2> counts;
  for (Actor p : {0, 1}) {
    for (int r = 1; r <= phases; ++r) counts[p].push_back(io::ReadLe<std::uint32_t>(in));
  }
  StrategyProfile sigma(game, tree, counts, hash);
  const auto entries = io::ReadLe<std::uint64_t>(in);
  for (std::uint64_t e = 0; e < entries; ++e) {
    const Actor p = io::ReadLe<std::uint8_t>(in);
    const auto id = io::ReadLe<std::uint32_t>(in);
    const auto b = io::ReadLe<std::uint32_t>(in);
    const int k = io::ReadLe<std::uint8_t>(in);
    if (id >= static_cast<std::uint32_t>(tree.size())) throw FormatError("node id out of range");
    const BettingNode& n = tree.node(static_cast<int>(id));
    if (n.kind != BettingNode::Kind::kDecision || n.player != p ||
        k != static_cast<int>(n.actions.size()) || b >= sigma.bucket_count(p, n.phase)) {
      throw FormatError("strategy entry does not match the betting tree");
    }
    for (int a = 0; a < k; ++a) sigma.MutableActionRow(n, a)[b] = io::ReadLe<double>(in);
  }
  return sigma;
}

void SaveStrategy(const std::string& path, const StrategyProfile& sigma, const BettingTree& tree) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FormatError("cannot open " + path + " for writing");
  WriteStrategy(out, sigma, tree);
}

StrategyProfile LoadStrategy(const std::string& path, const BettingTree& tree) {
  if (!std::filesystem::exists(path)) throw DependencyError("missing strategy file: " + path);
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DependencyError("cannot open strategy file: " + path);
  return ReadStrategy(in, tree);
}

void WriteStrategyCsv(std::ostream& out, const StrategyProfile& sigma, const BettingTree& tree) {
  out << "player,phase,sequence,bucket,action,probability\n";
  char buf[32];
  for (int id : tree.decision_nodes()) {
    const BettingNode& n = tree.node(id);
    for (std::uint32_t b = 0; b < sigma.bucket_count(n.player, n.phase); ++b) {
      const std::vector<double> d = sigma.Distribution(n, b);
      for (std::size_t a = 0; a < d.size(); ++a) {
        std::snprintf(buf, sizeof(buf), "%.17g", d[a]);
        out << (n.player + 1) << ',' << n.phase << ',' << n.sequence << ',' << b << ','
            << ToChar(n.actions[a]) << ',' << buf << '\n';
      }
    }
  }
}

}  // namespace soab
