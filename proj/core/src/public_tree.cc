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

#include "soab/public_tree.h"

#include <algorithm>
#include <map>

#include "soab/errors.h"

namespace soab {

BettingTree::BettingTree(const Game& game) : num_phases_(game.num_phases()) {
  for (Actor p : {0, 1}) {
    slots_[p].assign(num_phases_, 0);
    decisions_[p].assign(num_phases_, 0);
  }
  BettingState s = game.ApplyDeal(game.Initial());
  s.to_act = game.spec().first_actor[0];
  Build(game, s, -1, "");
}

int BettingTree::Build(const Game& game, const BettingState& s, int parent,
                       const std::string& seq) {
  const int id = size();
  nodes_.emplace_back();
  {
    BettingNode& n = nodes_.back();
    n.phase = s.phase;
    n.committed = s.committed;
    n.parent = parent;
    n.sequence = seq;
  }
  if (s.terminal) {
    BettingNode& n = nodes_[id];
    n.kind = s.showdown() ? BettingNode::Kind::kShowdown : BettingNode::Kind::kFold;
    n.player = s.folded;
    return id;
  }
  if (s.to_act == kChance) {
    nodes_[id].kind = BettingNode::Kind::kChance;
    BettingState n = s;
    ++n.phase;
    n = game.ApplyDeal(n);
    n.to_act = game.spec().first_actor[n.phase - 1];
    const int child = Build(game, n, id, seq + "/");
    nodes_[id].children.push_back(child);
    return id;
  }
  std::vector<BetToken> legal = game.LegalBets(s);
  {
    BettingNode& n = nodes_[id];
    n.kind = BettingNode::Kind::kDecision;
    n.player = s.to_act;
    n.actions = legal;
    n.slot = slots_[s.to_act][s.phase - 1];
  }
  slots_[s.to_act][s.phase - 1] += static_cast<int>(legal.size());
  decisions_[s.to_act][s.phase - 1]++;
  decision_nodes_.push_back(id);
  for (BetToken t : legal) {
    const int child = Build(game, game.ApplyBet(s, t), id, seq + ToChar(t));
    nodes_[id].children.push_back(child);
  }
  return id;
}

std::optional<int> BettingTree::Find(std::string_view sequence) const {
  for (int i = 0; i < size(); ++i) {
    if (nodes_[i].sequence == sequence && nodes_[i].kind != BettingNode::Kind::kChance) return i;
  }
  return std::nullopt;
}

HandSpace::HandSpace(const Deck& deck, int holes) : universe_(deck.all()), holes_(holes) {
  if (holes < 1 || holes > 2) {
    throw ParameterError("the solver supports one or two hole cards, got " + std::to_string(holes));
  }
  ForEachSubset(universe_, holes, [&](CardSet s) {
    hands_.push_back(s);
    std::vector<Card> cs = s.cards();
    cards_.push_back({cs[0], cs.size() > 1 ? cs[1] : cs[0]});
  });
}

int HandSpace::Index(CardSet hand) const { return static_cast<int>(RankSubset(hand, universe_)); }

namespace {

bool IsIdentity(const SymmetryGroup::Perm& p, int n) {
  for (int c = 0; c < n; ++c) {
    if (p[c] != c) return false;
  }
  return true;
}

// Public boards without symmetry reduction, for the size guard.
double RawBoardCount(const GameSpec& spec) {
  double total = 1, n = 1;
  int left = spec.deck.size() - 2 * spec.holes;
  for (int b : spec.board_per_phase) {
    n *= static_cast<double>(Choose(left, b));
    left -= b;
    total += n;
  }
  return total;
}

constexpr double kMaxBoardNodes = 2e6;

}  // namespace

PublicTree::PublicTree(const Game& game, bool use_symmetry)
    : game_(game),
      betting_(game),
      hands_(game.deck(), game.spec().holes),
      group_(use_symmetry ? SymmetryGroup::For(game.spec()) : SymmetryGroup::Trivial(game.deck())) {
  const GameSpec& spec = game.spec();
  if (RawBoardCount(spec) / group_.size() > kMaxBoardNodes) {
    throw ParameterError("game '" + spec.id + "' is too large for exact tree traversal");
  }
  hand_perm_.resize(group_.size());
  for (int g = 0; g < group_.size(); ++g) {
    hand_perm_[g].resize(hands_.size());
    for (int h = 0; h < hands_.size(); ++h) hand_perm_[g][h] = hands_.Index(group_.Apply(g, hands_.hand(h)));
  }
  int left = spec.deck.size();
  double p = 1.0 / static_cast<double>(Choose(left, spec.holes));
  left -= spec.holes;
  p /= static_cast<double>(Choose(left, spec.holes));
  left -= spec.holes;
  deal_prob_.push_back(p);
  for (int b : spec.board_per_phase) {
    p /= static_cast<double>(Choose(left, b));
    left -= b;
    deal_prob_.push_back(p);
  }

  BoardNode root;
  for (int g = 0; g < group_.size(); ++g) root.stabilizer.push_back(g);
  for (int g = 0; g < group_.size(); ++g) {
    if (IsIdentity(group_.perm(g), spec.deck.size())) {
      root.cosets = {g};
      break;
    }
  }
  boards_.push_back(std::move(root));
  for (int i = 0; i < static_cast<int>(boards_.size()); ++i) Expand(i);
}

void PublicTree::Expand(int id) {
  const GameSpec& spec = game_.spec();
  {
    BoardNode& n = boards_[id];
    for (int h = 0; h < hands_.size(); ++h) {
      if (!hands_.hand(h).intersects(n.cards)) n.hand_ids.push_back(h);
    }
    const bool final_phase = n.phase == spec.num_phases();
    if (final_phase) {
      std::vector<std::uint32_t> st(hands_.size(), 0);
      for (int h : n.hand_ids) st[h] = game_.Strength(hands_.hand(h), n.cards);
      std::stable_sort(n.hand_ids.begin(), n.hand_ids.end(),
                       [&](int a, int b) { return st[a] < st[b]; });
      for (int h : n.hand_ids) n.strength.push_back(st[h]);
      for (int i = 0; i < n.size(); ++i) {
        if (i == 0 || n.strength[i] != n.strength[i - 1]) n.tie_start.push_back(i);
      }
      n.tie_start.push_back(n.size());
    }
    n.position.assign(hands_.size(), -1);
    for (int i = 0; i < n.size(); ++i) {
      n.position[n.hand_ids[i]] = i;
      n.cards_at.push_back(hands_.cards(n.hand_ids[i]));
    }
    if (n.parent >= 0) {
      const BoardNode& up = boards_[n.parent];
      for (int h : n.hand_ids) n.parent_pos.push_back(up.position[h]);
      for (int g : n.cosets) {
        std::vector<int> pos;
        for (int h : n.hand_ids) pos.push_back(up.position[hand_perm_[g][h]]);
        n.orbit_pos.push_back(std::move(pos));
      }
    }
    if (final_phase) return;
  }
  const BoardNode& parent = boards_[id];
  const int b = spec.board_per_phase[parent.phase - 1];
  // Group the next deals into orbits under the parent's stabilizer.
  std::map<std::uint64_t, std::vector<CardSet>> orbits;
  ForEachSubset(spec.deck.all() - parent.cards, b, [&](CardSet s) {
    std::uint64_t best = s.bits();
    for (int g : parent.stabilizer) best = std::min(best, group_.Apply(g, s).bits());
    orbits[best].push_back(s);
  });
  std::vector<BoardNode> kids;
  for (auto& [rep_bits, members] : orbits) {
    const CardSet rep(rep_bits);
    BoardNode c;
    c.phase = parent.phase + 1;
    c.cards = parent.cards | rep;
    c.boards = parent.boards;
    c.boards.push_back(rep);
    c.parent = id;
    for (CardSet m : members) {
      for (int g : parent.stabilizer) {
        if (group_.Apply(g, rep) == m) {
          c.cosets.push_back(g);
          break;
        }
      }
    }
    for (int g : parent.stabilizer) {
      if (group_.Apply(g, rep) == rep) c.stabilizer.push_back(g);
    }
    c.multiplicity = parent.multiplicity * static_cast<double>(members.size());
    kids.push_back(std::move(c));
  }
  for (BoardNode& c : kids) {
    boards_[id].children.push_back(static_cast<int>(boards_.size()));
    boards_.push_back(std::move(c));
  }
}

bool IsSymmetric(const AbstractionMap& map, const ObservationIndexer& ix) {
  if (map.index_space() == IndexSpace::kCanonical) return true;
  for (int r = 1; r <= map.num_phases(); ++r) {
    const std::vector<std::uint32_t>& canon = ix.RawToCanonicalTable(r);
    std::vector<std::uint32_t> seen(ix.CanonicalCount(r), kNoBucket);
    const std::vector<std::uint32_t>& buckets = map.entries(r);
    for (std::size_t raw = 0; raw < buckets.size(); ++raw) {
      std::uint32_t& s = seen[canon[raw]];
      if (s == kNoBucket) {
        s = buckets[raw];
      } else if (s != buckets[raw]) {
        return false;
      }
    }
  }
  return true;
}

BucketTable BuildBucketTable(const PublicTree& tree, const AbstractionMap& map,
                             const ObservationIndexer& ix, Actor player) {
  map.CheckCompatible(ix);
  const HandSpace& hs = tree.hands();
  BucketTable out(tree.boards().size());
  for (std::size_t b = 0; b < tree.boards().size(); ++b) {
    const BoardNode& n = tree.board(static_cast<int>(b));
    out[b].resize(n.size());
    for (int i = 0; i < n.size(); ++i) {
      out[b][i] = map.BucketOf(ix, ObservationInfoset{player, hs.hand(n.hand_ids[i]), n.boards});
    }
  }
  return out;
}

}  // namespace soab
