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

// Matching with contracts for branch assignment with price tiers.

#ifndef MDTK_CONTRACTS_H_
#define MDTK_CONTRACTS_H_

#include <compare>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "mdtk/core.h"

namespace mdtk::contracts {

enum class SchemeKind { kUltimate, kTiered, kScoring };

// Strict order over (cadet, price) pairs derived from the OML.
//   ultimate: every higher-price pair above every lower-price pair.
//   tiered:   OML groups of the given sizes; inside a group, price first.
//   scoring:  base score plus boost[price], ties to higher price then OML.
struct Scheme {
  SchemeKind kind = SchemeKind::kUltimate;
  std::vector<int> group_sizes;
  std::vector<int> boost;
};

struct Branch {
  int capacity = 1;
  int flexible = 0;  // slots open to every price tier; the rest base-only
  Scheme scheme;
};

struct Term {
  int branch;
  int tier;
  bool operator==(const Term&) const = default;
};

struct Contract {
  int cadet;
  int branch;
  int tier;
  auto operator<=>(const Contract&) const = default;
};

struct ContractsInstance {
  Names names;                       // cadets, branches
  std::vector<std::string> tiers;    // price ladder, base first
  std::vector<int> oml;              // cadets, best first
  std::vector<std::optional<int>> score;
  std::vector<Branch> branches;
  std::vector<std::vector<Term>> prefs;
  // Report for the USMA-2006 mechanism; derived from prefs when empty.
  std::vector<std::vector<int>> branch_prefs;
  std::vector<std::vector<bool>> bradso;

  int num_cadets() const { return static_cast<int>(prefs.size()); }
  int num_branches() const { return static_cast<int>(branches.size()); }
  int num_tiers() const { return static_cast<int>(tiers.size()); }
  std::vector<int> OmlRank() const;
  // Report items are (branch, tier) terms numbered branch * tiers + tier.
  int ItemOf(Term t) const { return t.branch * num_tiers() + t.tier; }
  Term TermOf(int item) const {
    return {item / num_tiers(), item % num_tiers()};
  }
  Ranking ItemRanking(int cadet) const;
  void SetItemRanking(int cadet, const Ranking& items);
};

std::vector<std::string> Validate(const ContractsInstance& inst);

// rank[cadet * tiers + tier] under branch b's scheme, 0 = highest.
std::vector<int> SchemeRanks(const ContractsInstance& inst, int b);

using ChoiceRule =
    std::function<std::vector<Contract>(const std::vector<Contract>&)>;

// Regular slots go to the highest-OML cadets with any offer, each at the
// cheapest price that cadet offered; flexible slots then
// take the best remaining offer under the scheme. `slot_of`, when given,
// receives 0 (regular) or 1 (flexible) for each chosen contract.
std::vector<Contract> SlotChoice(const ContractsInstance& inst, int branch,
                                 const std::vector<Contract>& offers,
                                 std::vector<int>* slot_of = nullptr);

ChoiceRule SlotChoiceRule(const ContractsInstance& inst, int branch);

// Every contract the cadets' preferences name at `branch`.
std::vector<Contract> BranchUniverse(const ContractsInstance& inst,
                                     int branch);

struct ConditionVerdict {
  bool holds = true;
  std::vector<Contract> smaller;  // witness sets, when violated
  std::vector<Contract> larger;
  std::optional<Contract> contract;
};

struct ConditionReport {
  ConditionVerdict substitutable;
  ConditionVerdict unilaterally_substitutable;
  ConditionVerdict irc;
  ConditionVerdict lad;
  // Substitutability restricted to offer sets a cumulative offer process can
  // reach: contracts only arrive from cadets the branch is not holding.
  ConditionVerdict observably_substitutable;
};

// Full powerset scan; throws CapError above 12 contracts.
ConditionReport CheckChoiceConditions(const ChoiceRule& rule,
                                      const std::vector<Contract>& universe);

// Proposals come from the unheld cadet earliest in `proposer_order` (the OML
// when empty). Throws std::runtime_error when a cadet ends up held twice.
Allocation CumulativeOffer(const ContractsInstance& inst,
                           const std::vector<ChoiceRule>& rules,
                           const std::vector<int>& proposer_order = {},
                           Trace* trace = nullptr);

Allocation Mpco(const ContractsInstance& inst, Trace* trace = nullptr);

// Branch order by first appearance; volunteer at b iff (b, top tier) listed.
void DeriveUsmaReport(ContractsInstance& inst, int cadet);

// Requires exactly two tiers. Volunteers placed in the last `flexible`
// positions pay the increased price.
Allocation Usma2006(const ContractsInstance& inst, Trace* trace = nullptr);

std::string ContractName(const ContractsInstance& inst, const Contract& c);

}  // namespace mdtk::contracts

#endif  // MDTK_CONTRACTS_H_
