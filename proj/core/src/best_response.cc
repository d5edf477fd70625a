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

#include "soab/best_response.h"

#include <algorithm>

#include "soab/errors.h"
#include "tree_eval.h"

namespace soab {
namespace {

int Depth(const BettingTree& t, int node) {
  int d = 0;
  for (int c : t.node(node).children) d = std::max(d, Depth(t, c));
  return t.node(node).children.empty() ? 0 : d + 1;
}

}  // namespace

Evaluator::Evaluator(const AbstractedGame& game) : game_(game) {
  const int h = game.tree().hands().size();
  // Per level: 3 actions x 2 players of values plus 2 reach vectors.
  levels_.assign(Depth(game.betting(), 0) + 2, std::vector<double>(8 * h));
}

void Evaluator::Check(const StrategyProfile& sigma) const {
  if (sigma.game_id() != game_.game().spec().id) throw ValidationError("strategy is for another game");
  for (Actor p : {0, 1}) {
    if (sigma.bucket_counts(p) != game_.map(p).bucket_counts()) {
      throw ValidationError("strategy buckets do not match the abstraction profile");
    }
  }
  sigma.Validate(game_.betting(), 1e-6);
}

void Evaluator::BrWalk(const StrategyProfile& sigma, Actor responder, int node, int board,
                       const double* opp, double* out, int depth) const {
  const PublicTree& tree = game_.tree();
  const BettingNode& n = tree.betting().node(node);
  const BoardNode& b = tree.board(board);
  const int hands = b.size();
  const int stride = tree.hands().size();
  double* l = levels_[depth].data();
  switch (n.kind) {
    case BettingNode::Kind::kFold:
    case BettingNode::Kind::kShowdown:
      internal::TerminalValues(tree, n, b, opp, responder, out);
      return;
    case BettingNode::Kind::kChance: {
      std::fill(out, out + hands, 0.0);
      double* reach = l;
      double* val = l + stride;
      for (int child : b.children) {
        const BoardNode& cb = tree.board(child);
        internal::ChildReach(cb, opp, reach);
        BrWalk(sigma, responder, n.children[0], child, reach, val, depth + 1);
        internal::AccumulateOrbit(cb, val, out);
      }
      return;
    }
    case BettingNode::Kind::kDecision:
      break;
  }
  const int na = static_cast<int>(n.actions.size());
  double* val = l;
  if (n.player == responder) {
    for (int a = 0; a < na; ++a) {
      BrWalk(sigma, responder, n.children[a], board, opp, a == 0 ? out : val, depth + 1);
      if (a == 0) continue;
      // Strict comparison keeps the lowest action id on ties.
      for (int i = 0; i < hands; ++i) out[i] = val[i] > out[i] ? val[i] : out[i];
    }
    return;
  }
  const std::uint32_t* bucket = game_.buckets(n.player)[board].data();
  double* reach = l + stride;
  std::fill(out, out + hands, 0.0);
  for (int a = 0; a < na; ++a) {
    const double* row = sigma.ActionRow(n, a);
    for (int i = 0; i < hands; ++i) reach[i] = opp[i] * row[bucket[i]];
    BrWalk(sigma, responder, n.children[a], board, reach, val, depth + 1);
    for (int i = 0; i < hands; ++i) out[i] += val[i];
  }
}

void Evaluator::EvWalk(const StrategyProfile& sigma, int node, int board, const double* r0,
                       const double* r1, double* v0, double* v1, int depth) const {
  const PublicTree& tree = game_.tree();
  const BettingNode& n = tree.betting().node(node);
  const BoardNode& b = tree.board(board);
  const int hands = b.size();
  const int stride = tree.hands().size();
  double* l = levels_[depth].data();
  switch (n.kind) {
    case BettingNode::Kind::kFold:
    case BettingNode::Kind::kShowdown:
      internal::TerminalValues(tree, n, b, r1, 0, v0);
      internal::TerminalValues(tree, n, b, r0, 1, v1);
      return;
    case BettingNode::Kind::kChance: {
      std::fill(v0, v0 + hands, 0.0);
      std::fill(v1, v1 + hands, 0.0);
      double* c0 = l;
      double* c1 = c0 + stride;
      double* w0 = c1 + stride;
      double* w1 = w0 + stride;
      for (int child : b.children) {
        const BoardNode& cb = tree.board(child);
        internal::ChildReach(cb, r0, c0);
        internal::ChildReach(cb, r1, c1);
        EvWalk(sigma, n.children[0], child, c0, c1, w0, w1, depth + 1);
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
  const std::uint32_t* bucket = game_.buckets(p)[board].data();
  double* reach = l;
  double* w0 = reach + stride;
  double* w1 = w0 + stride;
  double* vp = p == 0 ? v0 : v1;
  double* vo = p == 0 ? v1 : v0;
  const double* rp = p == 0 ? r0 : r1;
  std::fill(v0, v0 + hands, 0.0);
  std::fill(v1, v1 + hands, 0.0);
  for (int a = 0; a < na; ++a) {
    const double* row = sigma.ActionRow(n, a);
    for (int i = 0; i < hands; ++i) reach[i] = rp[i] * row[bucket[i]];
    if (p == 0) {
      EvWalk(sigma, n.children[a], board, reach, r1, w0, w1, depth + 1);
    } else {
      EvWalk(sigma, n.children[a], board, r0, reach, w0, w1, depth + 1);
    }
    const double* cp = p == 0 ? w0 : w1;
    const double* co = p == 0 ? w1 : w0;
    for (int i = 0; i < hands; ++i) {
      vp[i] += row[bucket[i]] * cp[i];
      vo[i] += co[i];
    }
  }
}

double Evaluator::BestResponseValue(const StrategyProfile& sigma, Actor responder) const {
  Check(sigma);
  const int hands = game_.tree().hands().size();
  std::vector<double> opp(hands, 1.0), out(hands, 0.0);
  BrWalk(sigma, responder, 0, 0, opp.data(), out.data(), 0);
  double v = 0;
  for (double x : out) v += x;
  return v;
}

double Evaluator::ExpectedValue(const StrategyProfile& sigma) const {
  Check(sigma);
  const int hands = game_.tree().hands().size();
  std::vector<double> r0(hands, 1.0), r1(hands, 1.0), v0(hands), v1(hands);
  EvWalk(sigma, 0, 0, r0.data(), r1.data(), v0.data(), v1.data(), 0);
  double v = 0;
  for (double x : v0) v += x;
  return v;
}

ExploitabilityReport MakeReport(double br1, double br2, std::optional<double> game_value) {
  ExploitabilityReport r;
  r.br1 = br1;
  r.br2 = br2;
  r.game_value = game_value.value_or((r.br1 - r.br2) / 2);
  r.eps1 = r.game_value + r.br2;
  r.eps2 = r.br1 - r.game_value;
  r.eps = (r.br1 + r.br2) / 2;
  return r;
}

ExploitabilityReport Evaluator::Exploitability(const StrategyProfile& sigma,
                                               std::optional<double> game_value) const {
  return MakeReport(BestResponseValue(sigma, 0), BestResponseValue(sigma, 1), game_value);
}

}  // namespace soab
