// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "mdtk/contracts.h"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <queue>
#include <stdexcept>
#include <tuple>

namespace mdtk::contracts {
namespace {

std::vector<Contract> FromMask(const std::vector<Contract>& universe,
                               uint32_t mask) {
  std::vector<Contract> out;
  for (size_t k = 0; k < universe.size(); ++k) {
    if (mask & (1u << k)) out.push_back(universe[k]);
  }
  return out;
}

ConditionVerdict Violation(const std::vector<Contract>& universe,
                           uint32_t smaller, uint32_t larger, int contract) {
  ConditionVerdict v;
  v.holds = false;
  v.smaller = FromMask(universe, smaller);
  v.larger = FromMask(universe, larger);
  v.contract = universe[contract];
  return v;
}

}  // namespace

std::vector<int> ContractsInstance::OmlRank() const {
  std::vector<int> rank(num_cadets(), -1);
  for (int k = 0; k < static_cast<int>(oml.size()); ++k) rank[oml[k]] = k;
  return rank;
}

Ranking ContractsInstance::ItemRanking(int cadet) const {
  Ranking r;
  for (const Term& t : prefs[cadet]) r.push_back(ItemOf(t));
  return r;
}

void ContractsInstance::SetItemRanking(int cadet, const Ranking& items) {
  prefs[cadet].clear();
  for (int item : items) prefs[cadet].push_back(TermOf(item));
  if (!branch_prefs.empty()) DeriveUsmaReport(*this, cadet);
}

std::vector<std::string> Validate(const ContractsInstance& inst) {
  std::vector<std::string> errors;
  const int n = inst.num_cadets();
  const int nb = inst.num_branches();
  const int nt = inst.num_tiers();
  if (nt < 1) errors.push_back("price ladder must have at least one tier");
  std::vector<int> sorted = inst.oml;
  std::sort(sorted.begin(), sorted.end());
  if (sorted != Iota(n)) errors.push_back("oml must list every cadet once");
  for (int c = 0; c < n; ++c) {
    std::vector<bool> seen(std::max(nb * nt, 0), false);
    for (const Term& t : inst.prefs[c]) {
      if (t.branch < 0 || t.branch >= nb || t.tier < 0 || t.tier >= nt) {
        errors.push_back("dangling reference: ranking of " +
                         inst.names.agents[c]);
      } else if (seen[inst.ItemOf(t)]) {
        errors.push_back("non-strict ranking: " + inst.names.agents[c]);
      } else {
        seen[inst.ItemOf(t)] = true;
      }
    }
  }
  for (int b = 0; b < nb; ++b) {
    const Branch& br = inst.branches[b];
    const std::string& name = inst.names.resources[b];
    if (br.capacity < 1) errors.push_back("capacity of " + name + " must be >= 1");
    if (br.flexible < 0 || br.flexible > br.capacity) {
      errors.push_back("flexible slots of " + name + " exceed capacity");
    }
    if (br.scheme.kind == SchemeKind::kTiered) {
      for (int g : br.scheme.group_sizes) {
        if (g < 1) errors.push_back("tier groups of " + name + " must be >= 1");
      }
    }
    if (br.scheme.kind == SchemeKind::kScoring) {
      if (static_cast<int>(br.scheme.boost.size()) != nt) {
        errors.push_back("boost of " + name + " must cover every tier");
      } else if (!std::is_sorted(br.scheme.boost.begin(),
                                 br.scheme.boost.end())) {
        errors.push_back("boost of " + name + " must be weakly increasing");
      }
    }
  }
  bool any_score = false;
  for (const auto& s : inst.score) any_score |= s.has_value();
  if (any_score && static_cast<int>(inst.oml.size()) == n) {
    for (int k = 0; k < n; ++k) {
      if (!inst.score[inst.oml[k]]) {
        errors.push_back("scores must be given for every cadet or none");
        break;
      }
      if (k > 0 && *inst.score[inst.oml[k]] >= *inst.score[inst.oml[k - 1]]) {
        errors.push_back("inconsistent score/order: oml and scores disagree");
        break;
      }
    }
  }
  return errors;
}

std::vector<int> SchemeRanks(const ContractsInstance& inst, int b) {
  const int n = inst.num_cadets();
  const int nt = inst.num_tiers();
  const Scheme& scheme = inst.branches[b].scheme;
  const auto oml = inst.OmlRank();
  std::vector<int> group(n, 0);
  if (scheme.kind == SchemeKind::kTiered) {
    int g = 0, left = scheme.group_sizes.empty() ? n : scheme.group_sizes[0];
    for (int k = 0; k < n; ++k) {
      while (left == 0) {
        ++g;
        left = g < static_cast<int>(scheme.group_sizes.size())
                   ? scheme.group_sizes[g]
                   : n;
      }
      group[inst.oml[k]] = g;
      --left;
    }
  }
  std::vector<std::tuple<long long, long long, int, int, int>> keyed;
  for (int c = 0; c < n; ++c) {
    for (int t = 0; t < nt; ++t) {
      long long primary = 0, secondary = -t;
      switch (scheme.kind) {
        case SchemeKind::kUltimate:
          primary = -t;
          secondary = 0;
          break;
        case SchemeKind::kTiered:
          primary = group[c];
          break;
        case SchemeKind::kScoring: {
          long long base = inst.score.empty() || !inst.score[c]
                               ? static_cast<long long>(n - oml[c])
                               : *inst.score[c];
          primary = -(base + scheme.boost[t]);
          break;
        }
      }
      keyed.emplace_back(primary, secondary, oml[c], c, t);
    }
  }
  std::sort(keyed.begin(), keyed.end());
  std::vector<int> rank(n * nt);
  for (int k = 0; k < static_cast<int>(keyed.size()); ++k) {
    rank[std::get<3>(keyed[k]) * nt + std::get<4>(keyed[k])] = k;
  }
  return rank;
}

std::vector<Contract> SlotChoice(const ContractsInstance& inst, int branch,
                                 const std::vector<Contract>& offers,
                                 std::vector<int>* slot_of) {
  const Branch& br = inst.branches[branch];
  const int nt = inst.num_tiers();
  const auto oml = inst.OmlRank();
  const auto scheme = SchemeRanks(inst, branch);
  std::vector<Contract> base, all;
  std::vector<int> cheapest(inst.num_cadets(), -1);
  for (const Contract& c : offers) {
    if (c.branch != branch) continue;
    all.push_back(c);
    int& k = cheapest[c.cadet];
    if (k < 0 || c.tier < all[k].tier) k = static_cast<int>(all.size()) - 1;
  }
  for (int k : cheapest) {
    if (k >= 0) base.push_back(all[k]);
  }
  std::sort(base.begin(), base.end(), [&](const Contract& a, const Contract& b) {
    return oml[a.cadet] < oml[b.cadet];
  });
  std::sort(all.begin(), all.end(), [&](const Contract& a, const Contract& b) {
    return scheme[a.cadet * nt + a.tier] < scheme[b.cadet * nt + b.tier];
  });
  std::vector<Contract> chosen;
  std::vector<bool> taken(inst.num_cadets(), false);
  if (slot_of) slot_of->clear();
  int regular = br.capacity - br.flexible;
  for (const Contract& c : base) {
    if (regular == 0) break;
    if (taken[c.cadet]) continue;
    taken[c.cadet] = true;
    chosen.push_back(c);
    if (slot_of) slot_of->push_back(0);
    --regular;
  }
  int flexible = br.flexible;
  for (const Contract& c : all) {
    if (flexible == 0) break;
    if (taken[c.cadet]) continue;
    taken[c.cadet] = true;
    chosen.push_back(c);
    if (slot_of) slot_of->push_back(1);
    --flexible;
  }
  return chosen;
}

ChoiceRule SlotChoiceRule(const ContractsInstance& inst, int branch) {
  return [&inst, branch](const std::vector<Contract>& offers) {
    return SlotChoice(inst, branch, offers);
  };
}

std::vector<Contract> BranchUniverse(const ContractsInstance& inst,
                                     int branch) {
  std::vector<Contract> out;
  for (int c = 0; c < inst.num_cadets(); ++c) {
    for (const Term& t : inst.prefs[c]) {
      if (t.branch == branch) out.push_back({c, t.branch, t.tier});
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

ConditionReport CheckChoiceConditions(const ChoiceRule& rule,
                                      const std::vector<Contract>& universe) {
  const int n = static_cast<int>(universe.size());
  if (n > 12) throw CapError("check_choice_conditions: more than 12 contracts");
  const uint32_t full = (1u << n) - 1;
  std::vector<uint32_t> chosen(full + 1, 0);
  for (uint32_t mask = 0; mask <= full; ++mask) {
    for (const Contract& c : rule(FromMask(universe, mask))) {
      auto it = std::find(universe.begin(), universe.end(), c);
      if (it == universe.end()) {
        throw std::invalid_argument("choice rule chose a contract not offered");
      }
      chosen[mask] |= 1u << (it - universe.begin());
    }
  }
  std::vector<uint32_t> same_cadet(n, 0);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      if (universe[a].cadet == universe[b].cadet) same_cadet[a] |= 1u << b;
    }
  }
  auto cadets_in = [&](uint32_t mask) {
    uint32_t out = 0;
    for (int k = 0; k < n; ++k) {
      if (mask & (1u << k)) out |= same_cadet[k];
    }
    return out;
  };
  ConditionReport report;
  for (uint32_t x = 0; x <= full; ++x) {
    const uint32_t rej_x = x & ~chosen[x];
    for (int z = 0; z < n; ++z) {
      const uint32_t bit = 1u << z;
      if (x & bit) continue;
      const uint32_t y = x | bit;
      const uint32_t rej_y = y & ~chosen[y];
      if (report.substitutable.holds && (rej_x & ~rej_y)) {
        report.substitutable =
            Violation(universe, x, y, std::countr_zero(rej_x & ~rej_y));
      }
      if (report.irc.holds && !(chosen[y] & bit) && chosen[y] != chosen[x]) {
        report.irc = Violation(universe, x, y, z);
      }
      if (report.lad.holds &&
          std::popcount(chosen[y]) < std::popcount(chosen[x])) {
        report.lad = Violation(universe, x, y, z);
      }
      // z is its cadet's only contract in y and is rejected there; adding
      // any other contract must keep it rejected.
      if (report.unilaterally_substitutable.holds && !(same_cadet[z] & x) &&
          !(chosen[y] & bit)) {
        for (int w = 0; w < n; ++w) {
          const uint32_t wb = 1u << w;
          if (y & wb) continue;
          if (chosen[y | wb] & bit) {
            report.unilaterally_substitutable =
                Violation(universe, y, y | wb, z);
            break;
          }
        }
      }
    }
  }
  std::vector<bool> reached(full + 1, false);
  std::queue<uint32_t> frontier;
  reached[0] = true;
  frontier.push(0);
  while (!frontier.empty()) {
    uint32_t x = frontier.front();
    frontier.pop();
    const uint32_t held = cadets_in(chosen[x]);
    const uint32_t rej_x = x & ~chosen[x];
    for (int z = 0; z < n; ++z) {
      const uint32_t bit = 1u << z;
      if ((x & bit) || (held & bit)) continue;
      const uint32_t y = x | bit;
      const uint32_t rej_y = y & ~chosen[y];
      if (report.observably_substitutable.holds && (rej_x & ~rej_y)) {
        report.observably_substitutable =
            Violation(universe, x, y, std::countr_zero(rej_x & ~rej_y));
      }
      if (!reached[y]) {
        reached[y] = true;
        frontier.push(y);
      }
    }
  }
  return report;
}

Allocation CumulativeOffer(const ContractsInstance& inst,
                           const std::vector<ChoiceRule>& rules,
                           const std::vector<int>& proposer_order,
                           Trace* trace) {
  const int n = inst.num_cadets();
  const int nb = inst.num_branches();
  const std::vector<int>& order = proposer_order.empty() ? inst.oml
                                                         : proposer_order;
  std::vector<size_t> next(n, 0);
  std::vector<std::vector<Contract>> offers(nb), held(nb);
  auto held_at = [&](int c) {
    int count = 0;
    for (int b = 0; b < nb; ++b) {
      for (const Contract& k : held[b]) count += (k.cadet == c);
    }
    return count;
  };
  for (int step = 1;; ++step) {
    int proposer = -1;
    for (int c : order) {
      if (held_at(c) == 0 && next[c] < inst.prefs[c].size()) {
        proposer = c;
        break;
      }
    }
    if (proposer < 0) break;
    const Term t = inst.prefs[proposer][next[proposer]++];
    const Contract offer{proposer, t.branch, t.tier};
    offers[t.branch].push_back(offer);
    held[t.branch] = rules[t.branch](offers[t.branch]);
    if (trace) {
      std::string line = "step " + std::to_string(step) + ": " +
                         ContractName(inst, offer) + " proposed; " +
                         inst.names.resources[t.branch] + " holds";
      for (const Contract& k : held[t.branch]) {
        line += " " + ContractName(inst, k);
      }
      trace->push_back(line);
    }
    for (const Contract& k : held[t.branch]) {
      if (held_at(k.cadet) > 1) {
        throw std::runtime_error("cumulative offer: " + ContractName(inst, k) +
                                 " re-held while its cadet is held elsewhere");
      }
    }
  }
  Allocation out(n);
  for (int b = 0; b < nb; ++b) {
    for (const Contract& k : held[b]) out.Assign(k.cadet, b, k.tier);
  }
  return out;
}

Allocation Mpco(const ContractsInstance& inst, Trace* trace) {
  std::vector<ChoiceRule> rules;
  for (int b = 0; b < inst.num_branches(); ++b) {
    rules.push_back(SlotChoiceRule(inst, b));
  }
  return CumulativeOffer(inst, rules, {}, trace);
}

void DeriveUsmaReport(ContractsInstance& inst, int cadet) {
  const int n = inst.num_cadets();
  const int nb = inst.num_branches();
  inst.branch_prefs.resize(n);
  inst.bradso.resize(n, std::vector<bool>(nb, false));
  auto& order = inst.branch_prefs[cadet];
  order.clear();
  inst.bradso[cadet].assign(nb, false);
  for (const Term& t : inst.prefs[cadet]) {
    if (std::find(order.begin(), order.end(), t.branch) == order.end()) {
      order.push_back(t.branch);
    }
    if (t.tier == inst.num_tiers() - 1 && t.tier > 0) {
      inst.bradso[cadet][t.branch] = true;
    }
  }
}

Allocation Usma2006(const ContractsInstance& inst, Trace* trace) {
  if (inst.num_tiers() != 2) {
    throw std::invalid_argument("usma2006 requires exactly two price tiers");
  }
  ContractsInstance work = inst;
  if (work.branch_prefs.empty()) {
    for (int c = 0; c < work.num_cadets(); ++c) DeriveUsmaReport(work, c);
  }
  const int n = work.num_cadets();
  const int nb = work.num_branches();
  const auto oml = work.OmlRank();
  std::vector<size_t> next(n, 0);
  std::vector<int> at(n, kUnmatched), price(n, 0);
  std::vector<std::vector<int>> held(nb);
  for (int round = 1;; ++round) {
    std::vector<std::vector<int>> pool = held;
    bool any = false;
    for (int c = 0; c < n; ++c) {
      if (at[c] != kUnmatched || next[c] >= work.branch_prefs[c].size()) {
        continue;
      }
      pool[work.branch_prefs[c][next[c]++]].push_back(c);
      any = true;
    }
    if (!any) break;
    std::string line = "round " + std::to_string(round) + ":";
    for (int b = 0; b < nb; ++b) {
      auto& p = pool[b];
      std::sort(p.begin(), p.end(), [&](int x, int y) { return oml[x] < oml[y]; });
      const int cap = work.branches[b].capacity;
      const int last = work.branches[b].flexible;
      std::vector<int> chosen(p.begin(), p.begin() + std::min<int>(
                                                         cap - last, p.size()));
      std::vector<int> rest(p.begin() + chosen.size(), p.end());
      std::stable_partition(rest.begin(), rest.end(),
                            [&](int c) { return work.bradso[c][b]; });
      for (int c : chosen) price[c] = 0;
      for (int k = 0; k < static_cast<int>(rest.size()); ++k) {
        int c = rest[k];
        if (k < last) {
          chosen.push_back(c);
          price[c] = work.bradso[c][b] ? 1 : 0;
        } else {
          at[c] = kUnmatched;
        }
      }
      for (int c : chosen) at[c] = b;
      held[b] = chosen;
      line += " " + work.names.resources[b] + "{";
      for (int c : chosen) {
        line += work.names.agents[c] + (price[c] ? "+" : "") + ",";
      }
      if (line.back() == ',') line.pop_back();
      line += "}";
    }
    if (trace) trace->push_back(line);
  }
  Allocation out(n);
  for (int c = 0; c < n; ++c) {
    if (at[c] != kUnmatched) out.Assign(c, at[c], price[c]);
  }
  return out;
}

std::string ContractName(const ContractsInstance& inst, const Contract& c) {
  return "(" + inst.names.agents[c.cadet] + "," +
         inst.names.resources[c.branch] + "," + inst.tiers[c.tier] + ")";
}

}  // namespace mdtk::contracts
