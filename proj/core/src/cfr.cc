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

#include "soab/cfr.h"

#include <algorithm>

#include "soab/errors.h"
#include "tree_eval.h"

namespace soab {

std::string ToString(CfrVariant v) { return v == CfrVariant::kPlus ? "plus" : "vanilla"; }

CfrVariant ParseCfrVariant(std::string_view s) {
  if (s == "vanilla") return CfrVariant::kVanilla;
  if (s == "plus") return CfrVariant::kPlus;
  throw ParameterError("cfr.variant must be vanilla or plus, got '" + std::string(s) + "'");
}

std::vector<int> CheckpointSchedule(int iterations, int every) {
  std::vector<int> out;
  if (every > 0) {
    for (int t = every; t < iterations; t += every) out.push_back(t);
  }
  out.push_back(iterations);
  return out;
}

namespace {

int MaxDepth(const BettingTree& t, int node) {
  const BettingNode& n = t.node(node);
  int d = 0;
  for (int c : n.children) d = std::max(d, MaxDepth(t, c));
  return n.children.empty() ? 0 : d + 1;
}

}  // namespace

double CfrSolver::TableBytes(const AbstractedGame& game) {
  double n = 0;
  for (Actor p : {0, 1}) {
    for (int r = 1; r <= game.betting().num_phases(); ++r) {
      n += static_cast<double>(game.map(p).bucket_count(r)) * game.betting().slot_count(p, r);
    }
  }
  return (3 * sizeof(double)) * n;
}

CfrSolver::CfrSolver(const AbstractedGame& game, CfrOptions options)
    : game_(game), options_(options) {
  if (options_.iterations < 1) throw ParameterError("cfr.iterations must be at least 1");
  if (options_.checkpoint_every < 0) throw ParameterError("cfr.checkpoint_every must be >= 0");
  const double bytes = TableBytes(game);
  if (bytes > options_.memory_limit_gb * (1ULL << 30)) {
    throw ParameterError("regret tables need " + std::to_string(bytes / (1ULL << 30)) +
                         " GiB, above the " + std::to_string(options_.memory_limit_gb) +
                         " GiB limit");
  }
  const BettingTree& t = game.betting();
  for (Actor p : {0, 1}) {
    regret_[p].resize(t.num_phases());
    average_[p].resize(t.num_phases());
    current_[p].resize(t.num_phases());
    for (int r = 1; r <= t.num_phases(); ++r) {
      const std::size_t n = static_cast<std::size_t>(game.map(p).bucket_count(r)) * t.slot_count(p, r);
      regret_[p][r - 1].assign(n, 0.0);
      average_[p][r - 1].assign(n, 0.0);
      current_[p][r - 1].assign(n, 0.0);
    }
  }
  const int h = game.tree().hands().size();
  levels_.resize(MaxDepth(t, 0) + 1);
  for (Level& l : levels_) {
    l.sigma.resize(3 * h);
    l.values.resize(2 * 3 * h);
    l.reach.resize(2 * h);
  }
  root_.resize(4 * h);
}

void CfrSolver::Walk(int node, int board, const double* r0, const double* r1, double* v0,
                     double* v1, int depth) {
  const PublicTree& tree = game_.tree();
  const BettingNode& n = tree.betting().node(node);
  const BoardNode& b = tree.board(board);
  const int hands = b.size();

  switch (n.kind) {
    case BettingNode::Kind::kFold:
    case BettingNode::Kind::kShowdown:
      internal::TerminalValues(tree, n, b, r1, 0, v0);
      internal::TerminalValues(tree, n, b, r0, 1, v1);
      return;
    case BettingNode::Kind::kChance: {
      Level& l = levels_[depth];
      std::fill(v0, v0 + hands, 0.0);
      std::fill(v1, v1 + hands, 0.0);
      double* c0 = l.reach.data();
      double* c1 = c0 + l.reach.size() / 2;
      double* w0 = l.values.data();
      double* w1 = w0 + l.values.size() / 2;
      for (int child : b.children) {
        const BoardNode& cb = tree.board(child);
        internal::ChildReach(cb, r0, c0);
        internal::ChildReach(cb, r1, c1);
        Walk(n.children[0], child, c0, c1, w0, w1, depth + 1);
        internal::AccumulateOrbit(cb, w0, v0);
        internal::AccumulateOrbit(cb, w1, v1);
      }
      return;
    }
    case BettingNode::Kind::kDecision:
      break;
  }

  const Actor p = n.player;
  const int na = static_cast<int>(n.actions.size());
  const std::size_t nb = game_.map(p).bucket_count(n.phase);
  const std::uint32_t* bucket = game_.buckets(p)[board].data();
  const double* current = current_[p][n.phase - 1].data() + n.slot * nb;
  Level& l = levels_[depth];
  const int stride = static_cast<int>(l.reach.size() / 2);
  double* sigma = l.sigma.data();
  const double* rp = p == 0 ? r0 : r1;
  double* child_reach = l.reach.data();
  for (int a = 0; a < na; ++a) {
    const double* row = current + a * nb;
    double* s = sigma + a * stride;
    for (int i = 0; i < hands; ++i) {
      s[i] = row[bucket[i]];
      child_reach[i] = rp[i] * s[i];
    }
    double* cv0 = l.values.data() + (2 * a) * stride;
    double* cv1 = cv0 + stride;
    if (p == 0) {
      Walk(n.children[a], board, child_reach, r1, cv0, cv1, depth + 1);
    } else {
      Walk(n.children[a], board, r0, child_reach, cv0, cv1, depth + 1);
    }
  }
  auto child_value = [&](int a, Actor who) { return l.values.data() + (2 * a + who) * stride; };
  double* vp = p == 0 ? v0 : v1;
  double* vo = p == 0 ? v1 : v0;
  {
    const double* cp = child_value(0, p);
    const double* co = child_value(0, 1 - p);
    for (int i = 0; i < hands; ++i) {
      vp[i] = sigma[i] * cp[i];
      vo[i] = co[i];
    }
  }
  for (int a = 1; a < na; ++a) {
    const double* s = sigma + a * stride;
    const double* cp = child_value(a, p);
    const double* co = child_value(a, 1 - p);
    for (int i = 0; i < hands; ++i) {
      vp[i] += s[i] * cp[i];
      vo[i] += co[i];
    }
  }
  if (update_ != -1 && update_ != p) return;

  const double mult = b.multiplicity;
  const double wmult = mult * avg_weight_;
  for (int a = 0; a < na; ++a) {
    double* regret = regret_[p][n.phase - 1].data() + (n.slot + a) * nb;
    double* avg = average_[p][n.phase - 1].data() + (n.slot + a) * nb;
    const double* cp = child_value(a, p);
    const double* s = sigma + a * stride;
    for (int i = 0; i < hands; ++i) {
      regret[bucket[i]] += mult * (cp[i] - vp[i]);
      avg[bucket[i]] += wmult * rp[i] * s[i];
    }
  }
}

void CfrSolver::WalkOne(int node, int board, const double* r0, const double* r1, double* v,
                        int depth) {
  const PublicTree& tree = game_.tree();
  const BettingNode& n = tree.betting().node(node);
  const BoardNode& b = tree.board(board);
  const int hands = b.size();
  const Actor u = update_;

  switch (n.kind) {
    case BettingNode::Kind::kFold:
    case BettingNode::Kind::kShowdown:
      internal::TerminalValues(tree, n, b, u == 0 ? r1 : r0, u, v);
      return;
    case BettingNode::Kind::kChance: {
      Level& l = levels_[depth];
      std::fill(v, v + hands, 0.0);
      double* c0 = l.reach.data();
      double* c1 = c0 + l.reach.size() / 2;
      double* w = l.values.data();
      for (int child : b.children) {
        const BoardNode& cb = tree.board(child);
        internal::ChildReach(cb, r0, c0);
        internal::ChildReach(cb, r1, c1);
        WalkOne(n.children[0], child, c0, c1, w, depth + 1);
        internal::AccumulateOrbit(cb, w, v);
      }
      return;
    }
    case BettingNode::Kind::kDecision:
      break;
  }

  const Actor p = n.player;
  const int na = static_cast<int>(n.actions.size());
  const std::size_t nb = game_.map(p).bucket_count(n.phase);
  const std::uint32_t* bucket = game_.buckets(p)[board].data();
  const double* current = current_[p][n.phase - 1].data() + n.slot * nb;
  Level& l = levels_[depth];
  const int stride = static_cast<int>(l.reach.size() / 2);
  double* sigma = l.sigma.data();
  const double* rp = p == 0 ? r0 : r1;
  double* child_reach = l.reach.data();
  for (int a = 0; a < na; ++a) {
    const double* row = current + a * nb;
    double* s = sigma + a * stride;
    double* cv = l.values.data() + a * stride;
    // Own reach only feeds the average; opponent reach feeds the values.
    for (int i = 0; i < hands; ++i) {
      s[i] = row[bucket[i]];
      child_reach[i] = rp[i] * s[i];
    }
    WalkOne(n.children[a], board, p == 0 ? child_reach : r0, p == 0 ? r1 : child_reach, cv,
            depth + 1);
  }
  if (p != u) {
    std::copy(l.values.data(), l.values.data() + hands, v);
    for (int a = 1; a < na; ++a) {
      const double* cv = l.values.data() + a * stride;
      for (int i = 0; i < hands; ++i) v[i] += cv[i];
    }
    return;
  }
  const double mult = b.multiplicity;
  const double wmult = mult * avg_weight_;
  double* regret = regret_[p][n.phase - 1].data() + n.slot * nb;
  double* avg = average_[p][n.phase - 1].data() + n.slot * nb;
  const double* cv = l.values.data();
  // One pass per hand: node value, then every action's regret and average.
  for (int i = 0; i < hands; ++i) {
    double vi = 0;
    for (int a = 0; a < na; ++a) vi += sigma[a * stride + i] * cv[a * stride + i];
    v[i] = vi;
    const std::size_t k = bucket[i];
    const double w = wmult * rp[i];
    for (int a = 0; a < na; ++a) {
      regret[a * nb + k] += mult * (cv[a * stride + i] - vi);
      avg[a * nb + k] += w * sigma[a * stride + i];
    }
  }
}

void CfrSolver::RefreshCurrent(Actor p) {
  const BettingTree& t = game_.betting();
  for (int id : t.decision_nodes()) {
    const BettingNode& n = t.node(id);
    if (n.player != p) continue;
    const std::size_t nb = game_.map(p).bucket_count(n.phase);
    const int na = static_cast<int>(n.actions.size());
    const double* reg = regret_[p][n.phase - 1].data() + n.slot * nb;
    double* cur = current_[p][n.phase - 1].data() + n.slot * nb;
    for (std::size_t b = 0; b < nb; ++b) {
      double pos = 0;
      for (int a = 0; a < na; ++a) pos += std::max(reg[a * nb + b], 0.0);
      for (int a = 0; a < na; ++a) {
        cur[a * nb + b] = pos > 0 ? std::max(reg[a * nb + b], 0.0) / pos : 1.0 / na;
      }
    }
  }
}

void CfrSolver::ClampRegrets(Actor p) {
  for (std::vector<double>& table : regret_[p]) {
    for (double& r : table) r = std::max(r, 0.0);
  }
}

void CfrSolver::Iterate() {
  ++iteration_;
  const int hands = game_.tree().hands().size();
  double* r0 = root_.data();
  double* r1 = r0 + hands;
  double* v0 = r1 + hands;
  double* v1 = v0 + hands;
  std::fill(r0, r0 + 2 * hands, 1.0);
  if (options_.variant == CfrVariant::kVanilla) {
    update_ = -1;
    avg_weight_ = 1;
    RefreshCurrent(0);
    RefreshCurrent(1);
    Walk(0, 0, r0, r1, v0, v1, 0);
  } else {
    avg_weight_ = iteration_;
    for (Actor p : {0, 1}) {
      update_ = p;
      // Only the player updated by the previous pass has new regrets.
      if (iteration_ == 1 && p == 0) RefreshCurrent(0);
      RefreshCurrent(1 - p);
      WalkOne(0, 0, r0, r1, v0, 0);
      ClampRegrets(p);
    }
  }
}

void CfrSolver::Solve(const std::function<void(int)>& checkpoint) {
  const std::vector<int> at = CheckpointSchedule(options_.iterations, options_.checkpoint_every);
  std::size_t next = 0;
  while (next < at.size() && at[next] <= iteration_) ++next;
  while (iteration_ < options_.iterations) {
    Iterate();
    if (next < at.size() && iteration_ == at[next]) {
      if (checkpoint) checkpoint(iteration_);
      ++next;
    }
  }
}

StrategyProfile CfrSolver::AverageStrategy() const {
  StrategyProfile s(game_.game().spec().id, game_.betting(), game_.bucket_counts(),
                    game_.profile_hash());
  for (int id : game_.betting().decision_nodes()) {
    const BettingNode& n = game_.betting().node(id);
    const std::size_t nb = game_.map(n.player).bucket_count(n.phase);
    const int na = static_cast<int>(n.actions.size());
    const double* avg = average_[n.player][n.phase - 1].data() + n.slot * nb;
    for (std::size_t b = 0; b < nb; ++b) {
      double sum = 0;
      for (int a = 0; a < na; ++a) sum += avg[a * nb + b];
      for (int a = 0; a < na; ++a) {
        s.MutableActionRow(n, a)[b] = sum > 0 ? avg[a * nb + b] / sum : 1.0 / na;
      }
    }
  }
  return s;
}

StrategyProfile CfrSolver::CurrentStrategy() const {
  StrategyProfile s(game_.game().spec().id, game_.betting(), game_.bucket_counts(),
                    game_.profile_hash());
  for (int id : game_.betting().decision_nodes()) {
    const BettingNode& n = game_.betting().node(id);
    const std::size_t nb = game_.map(n.player).bucket_count(n.phase);
    const int na = static_cast<int>(n.actions.size());
    const double* reg = regret_[n.player][n.phase - 1].data() + n.slot * nb;
    for (std::size_t b = 0; b < nb; ++b) {
      double pos = 0;
      for (int a = 0; a < na; ++a) pos += std::max(reg[a * nb + b], 0.0);
      for (int a = 0; a < na; ++a) {
        s.MutableActionRow(n, a)[b] = pos > 0 ? std::max(reg[a * nb + b], 0.0) / pos : 1.0 / na;
      }
    }
  }
  return s;
}

}  // namespace soab
