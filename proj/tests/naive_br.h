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

#ifndef SOAB_TESTS_NAIVE_BR_H_
#define SOAB_TESTS_NAIVE_BR_H_

// Reference best response by explicit per-deal tree walking. Builds the full
// game tree through Game::Step, groups the responder's histories into
// information sets, and fixes the responder's choice at each information set
// deepest first. Only practical for games the size of Leduc.

#include <algorithm>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "soab/game.h"
#include "soab/soog.h"

namespace soab::oracle {

// Action distribution of `player` at its infoset: the betting sequence
// ("cr/b" style) and its observation.
using PolicyFn =
    std::function<std::vector<double>(Actor, const std::string&, const ObservationInfoset&)>;

class NaiveTree {
 public:
  explicit NaiveTree(const Game& game) {
    nodes_.reserve(1 << 16);
    Build(game, History{}, "", Signal{}, 0);
  }

  int size() const { return static_cast<int>(nodes_.size()); }

  // Player 0's expected payoff.
  double Expected(const PolicyFn& policy) const { return Value(0, policy, 0, nullptr); }

  double BestResponse(const PolicyFn& policy, Actor responder) const {
    // Opponent-and-chance reach of every node.
    std::vector<double> w(nodes_.size(), 0.0);
    w[0] = 1.0;
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
      const Node& n = nodes_[i];
      if (n.terminal) continue;
      std::vector<double> p = Probs(n, policy, responder);
      for (std::size_t a = 0; a < n.children.size(); ++a) w[n.children[a]] = w[i] * p[a];
    }
    std::map<std::string, std::vector<int>> infosets;
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
      const Node& n = nodes_[i];
      if (!n.terminal && n.actor == responder) infosets[n.key].push_back(static_cast<int>(i));
    }
    std::vector<std::pair<int, std::string>> order;
    for (auto& [k, v] : infosets) order.push_back({nodes_[v[0]].depth, k});
    std::sort(order.begin(), order.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
    std::map<std::string, int> choice;
    for (auto& [depth, key] : order) {
      const std::vector<int>& members = infosets[key];
      const std::size_t na = nodes_[members[0]].children.size();
      int best = 0;
      double best_v = 0;
      for (std::size_t a = 0; a < na; ++a) {
        double v = 0;
        for (int i : members) v += w[i] * Value(nodes_[i].children[a], policy, responder, &choice);
        if (a == 0 || v > best_v) {
          best_v = v;
          best = static_cast<int>(a);
        }
      }
      choice[key] = best;
    }
    return Value(0, policy, responder, &choice);
  }

  struct CfrInfoset {
    Actor owner = 0;
    std::string sequence;
    ObservationInfoset obs;
    std::vector<double> regret;
    std::vector<double> average;
  };

  // One simultaneous regret update of both players under `policy`, per
  // original infoset key, with the infosets' sequence and observation.
  std::map<std::string, CfrInfoset> RegretIncrements(const PolicyFn& policy) const {
    std::map<std::string, std::vector<double>> sigma, dr, da;
    std::map<std::string, CfrInfoset> sets;
    for (const Node& n : nodes_) {
      if (n.terminal || n.actor == kChance) continue;
      sigma[n.key] = policy(n.actor, n.sequence, n.obs);
      sets[n.key] = {n.actor, n.sequence, n.obs, {}, {}};
    }
    CfrWalk(0, sigma, {1.0, 1.0}, 1.0, -1, 1.0, dr, da);
    for (auto& [k, s] : sets) {
      s.regret = dr[k];
      s.average = da[k];
    }
    return sets;
  }

  // Tabular CFR over original infosets. Vanilla updates both players
  // against the same iterate; plus alternates players, clamps regrets and
  // weights the average by t. Returns the infosets with summed averages.
  std::map<std::string, CfrInfoset> Cfr(int iterations, bool plus) const {
    std::map<std::string, CfrInfoset> sets;
    for (const Node& n : nodes_) {
      if (n.terminal || n.actor == kChance) continue;
      CfrInfoset& s = sets[n.key];
      s.owner = n.actor;
      s.sequence = n.sequence;
      s.obs = n.obs;
      s.regret.assign(n.children.size(), 0.0);
      s.average.assign(n.children.size(), 0.0);
    }
    for (int t = 1; t <= iterations; ++t) {
      for (int pass = 0; pass < (plus ? 2 : 1); ++pass) {
        std::map<std::string, std::vector<double>> sigma;
        for (auto& [k, s] : sets) sigma[k] = Matching(s.regret);
        std::map<std::string, std::vector<double>> dr, da;
        CfrWalk(0, sigma, {1.0, 1.0}, 1.0, plus ? pass : -1, plus ? t : 1, dr, da);
        for (auto& [k, s] : sets) {
          if (plus && s.owner != pass) continue;
          for (std::size_t a = 0; a < s.regret.size(); ++a) {
            if (dr.count(k)) s.regret[a] += dr[k][a];
            if (da.count(k)) s.average[a] += da[k][a];
            if (plus) s.regret[a] = std::max(s.regret[a], 0.0);
          }
        }
      }
    }
    return sets;
  }

 private:
  static std::vector<double> Matching(const std::vector<double>& r) {
    double pos = 0;
    for (double x : r) pos += std::max(x, 0.0);
    std::vector<double> out(r.size());
    for (std::size_t a = 0; a < r.size(); ++a) {
      out[a] = pos > 0 ? std::max(r[a], 0.0) / pos : 1.0 / static_cast<double>(r.size());
    }
    return out;
  }

  // Returns player payoffs weighted by nothing; reach carries own and
  // opponent probabilities, `chance` the chance reach.
  std::array<double, 2> CfrWalk(int i, const std::map<std::string, std::vector<double>>& sigma,
                                std::array<double, 2> reach, double chance, int update,
                                double weight, std::map<std::string, std::vector<double>>& dr,
                                std::map<std::string, std::vector<double>>& da) const {
    const Node& n = nodes_[i];
    if (n.terminal) return n.payoff;
    std::array<double, 2> v{};
    if (n.actor == kChance) {
      for (std::size_t a = 0; a < n.children.size(); ++a) {
        std::array<double, 2> c =
            CfrWalk(n.children[a], sigma, reach, chance * n.chance[a], update, weight, dr, da);
        v[0] += n.chance[a] * c[0];
        v[1] += n.chance[a] * c[1];
      }
      return v;
    }
    const Actor p = n.actor;
    const std::vector<double>& s = sigma.at(n.key);
    std::vector<double> vp(s.size());
    for (std::size_t a = 0; a < s.size(); ++a) {
      std::array<double, 2> r = reach;
      r[p] *= s[a];
      std::array<double, 2> c = CfrWalk(n.children[a], sigma, r, chance, update, weight, dr, da);
      vp[a] = c[p];
      v[0] += s[a] * c[0];
      v[1] += s[a] * c[1];
    }
    if (update != -1 && update != p) return v;
    std::vector<double>& r = dr[n.key];
    std::vector<double>& avg = da[n.key];
    r.resize(s.size(), 0.0);
    avg.resize(s.size(), 0.0);
    for (std::size_t a = 0; a < s.size(); ++a) {
      r[a] += chance * reach[1 - p] * (vp[a] - v[p]);
      // Own reach is shared by all histories of the infoset; count it once.
      avg[a] += weight * reach[p] * s[a] / members_.at(n.key);
    }
    return v;
  }

  struct Node {
    bool terminal = false;
    Actor actor = kChance;
    int depth = 0;
    std::vector<int> children;
    std::vector<double> chance;
    std::array<double, 2> payoff{};
    std::string sequence;
    ObservationInfoset obs;
    std::string key;
  };

  int Build(const Game& g, const History& h, const std::string& seq, const Signal& sig, int depth) {
    const int id = static_cast<int>(nodes_.size());
    nodes_.emplace_back();
    nodes_[id].depth = depth;
    nodes_[id].sequence = seq;
    const BettingState s = g.Replay(h);
    if (s.to_act == kChance) {
      std::vector<std::pair<Action, Signal>> deals;
      g.ForEachDeal(h, [&](const Action& a) {
        Signal next = sig;
        if (next.holes.empty()) {
          next.holes = a.deal()->sets;
        } else {
          next.boards.push_back(a.deal()->sets[0]);
        }
        deals.push_back({a, next});
      });
      const std::string child_seq = h.actions.empty() ? seq : seq + "/";
      for (auto& [a, next] : deals) {
        StepResult r = g.Step(h, a);
        const int c = Build(g, std::get<History>(r), child_seq, next, depth + 1);
        nodes_[id].children.push_back(c);
        nodes_[id].chance.push_back(1.0 / static_cast<double>(deals.size()));
      }
      return id;
    }
    nodes_[id].actor = s.to_act;
    nodes_[id].obs = ObservationInfoset{s.to_act, sig.holes[s.to_act], sig.boards};
    std::string key = seq + "|" + std::to_string(sig.holes[s.to_act].bits());
    for (CardSet b : sig.boards) key += "|" + std::to_string(b.bits());
    nodes_[id].key = key;
    ++members_[key];
    for (const Action& a : g.LegalBetActions(h)) {
      StepResult r = g.Step(h, a);
      const std::string child_seq = seq + ToChar(*a.token());
      if (const TerminalPayoff* t = std::get_if<TerminalPayoff>(&r)) {
        const int c = static_cast<int>(nodes_.size());
        nodes_.emplace_back();
        nodes_[c].terminal = true;
        nodes_[c].depth = depth + 1;
        nodes_[c].payoff = {static_cast<double>(t->utility[0]), static_cast<double>(t->utility[1])};
        nodes_[id].children.push_back(c);
      } else {
        const int c = Build(g, std::get<History>(r), child_seq, sig, depth + 1);
        nodes_[id].children.push_back(c);
      }
    }
    return id;
  }

  std::vector<double> Probs(const Node& n, const PolicyFn& policy, Actor responder) const {
    if (n.actor == kChance) return n.chance;
    if (n.actor == responder) return std::vector<double>(n.children.size(), 1.0);
    return policy(n.actor, n.sequence, n.obs);
  }

  // Value to `who` under the policy, with the responder's choices fixed
  // where `choice` has them.
  double Value(int i, const PolicyFn& policy, Actor who, const std::map<std::string, int>* choice) const {
    const Node& n = nodes_[i];
    if (n.terminal) return n.payoff[who];
    if (choice != nullptr && n.actor == who) {
      auto it = choice->find(n.key);
      return Value(n.children[it->second], policy, who, choice);
    }
    std::vector<double> p = n.actor == kChance ? n.chance : policy(n.actor, n.sequence, n.obs);
    double v = 0;
    for (std::size_t a = 0; a < n.children.size(); ++a) {
      if (p[a] != 0) v += p[a] * Value(n.children[a], policy, who, choice);
    }
    return v;
  }

  std::vector<Node> nodes_;
  std::map<std::string, int> members_;
};

}  // namespace soab::oracle

#endif  // SOAB_TESTS_NAIVE_BR_H_
