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

// Axiom checks, brute-force oracles and equilibrium scans.

#ifndef MDTK_AXIOMS_H_
#define MDTK_AXIOMS_H_

#include <optional>
#include <string>
#include <vector>

#include "mdtk/core.h"
#include "mdtk/registry.h"

namespace mdtk::axioms {

// Offending parties of a violation. Field meaning depends on the axiom:
// `agents` lists the claimant first; `items` holds family report items
// (houses, schools, branch-price terms, institutions) or, for the reserve
// axioms, the category; `report` is a misreport or a dominating allocation.
struct Witness {
  std::string axiom;
  std::vector<int> agents;
  std::vector<int> items;
  Ranking report;
  std::string replay;
  bool third_party = false;
};

struct Verdict {
  bool holds = true;
  std::optional<Witness> witness;
  // NJE-india violations that need other holders relabelled.
  std::vector<Witness> flagged;
};

struct AxiomResult {
  std::string axiom;
  Verdict verdict;
};
using AxiomReport = std::vector<AxiomResult>;

// IR, PE, NW, NJE, NJE-basic, NJE-india, NJE-india-hetero, stability, NPR,
// scheme-respect, VR-compliance, max-HR-accommodation.
std::vector<std::string> KnownAxioms();
bool Applies(const std::string& axiom, const Instance& inst);
// Comma separated; trims blanks and resolves the aliases SP, PI, MAHR.
std::vector<std::string> ParseAxiomList(const std::string& text);

// Empty when the allocation is feasible for the instance.
std::vector<std::string> FeasibilityErrors(const Instance& inst,
                                           const Allocation& a);

// Throws ValidationError on unknown axioms, family mismatch or an infeasible
// allocation.
AxiomReport CheckAllocation(const Instance& inst, const Allocation& a,
                            const std::vector<std::string>& axioms);

Verdict CheckAxiom(const Instance& inst, const Allocation& a,
                   const std::string& axiom);
bool AllHold(const AxiomReport& report);

// Re-derives a violation from the witness alone.
bool ReplayWitness(const Instance& inst, const Allocation& a,
                   const Witness& w);

struct Caps {
  int agents = 4;
  int resources = 4;
  int tiers = 2;
  int enumerate_agents = 8;
  int enumerate_units = 8;
  static Caps Parse(const std::string& text);
};

// Every alternative report of every agent; the first improving misreport in
// (agent, report) order is the witness.
Verdict CheckStrategyProofness(const MechanismCall& call, const Instance& inst,
                               const Caps& caps = {});

bool ReplaySpWitness(const MechanismCall& call, const Instance& inst,
                     const Witness& w);

// Two-sided only: raise each agent one position at one school (at the school's
// field when priorities come from fields).
Verdict CheckPriorityImprovements(const MechanismCall& call,
                                  const Instance& inst, const Caps& caps = {});

// All feasible allocations; throws CapError beyond the enumeration caps.
std::vector<Allocation> EnumerateFeasible(const Instance& inst,
                                          const Caps& caps = {});
std::vector<Allocation> EnumerateSatisfying(
    const Instance& inst, const std::vector<std::string>& axioms,
    const Caps& caps = {});

// Removes every candidate for which some agent has a misreport under which
// all allocations satisfying `axioms` are strictly better for that agent.
std::vector<Allocation> SpWitnessedFilter(
    const Instance& inst, const std::vector<Allocation>& candidates,
    const std::vector<std::string>& axioms, const Caps& caps = {});

// Student placement.
std::vector<Allocation> StableSet(const twosided::SchoolInstance& inst);

struct NashResult {
  std::vector<Allocation> equilibria;  // distinct outcomes, sorted
  std::vector<Allocation> stable;      // stable set of `adjusted`
  twosided::SchoolInstance adjusted;   // strategic students in the top tier
};
// Throws CapError above 3 students or 3 schools.
NashResult BostonNashSet(const twosided::SchoolInstance& inst,
                         const std::vector<bool>& sincere);

// Tier k at a school holds the sincere students ranking it k-th (from 0);
// strategic students join tier 0. Base priority inside a tier.
twosided::SchoolInstance AdjustedPriorities(
    const twosided::SchoolInstance& inst, const std::vector<bool>& sincere);

// Cutoffs use per-school scores num_students - priority position.
inline constexpr long long kNoCutoff = 1LL << 40;
std::vector<long long> SchoolScores(const twosided::SchoolInstance& inst,
                                    int school);
bool SupportsCutoffs(const twosided::SchoolInstance& inst, const Allocation& a,
                     const std::vector<long long>& cutoffs);
// Lowest admitted score per school (kNoCutoff when empty), if it supports.
std::optional<std::vector<long long>> ConstructCutoffs(
    const twosided::SchoolInstance& inst, const Allocation& a);
// True when no vector over the candidate values supports `a`.
bool CertifyNoCutoffs(const twosided::SchoolInstance& inst,
                      const Allocation& a);

}  // namespace mdtk::axioms

#endif  // MDTK_AXIOMS_H_
