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

// Vertical and horizontal reservation choice rules.

#ifndef MDTK_RESERVES_H_
#define MDTK_RESERVES_H_

#include <string>
#include <vector>

#include "mdtk/core.h"

namespace mdtk::reserves {

inline constexpr int kOpen = 0;

// Per-category seats at one institution.
struct Seats {
  std::vector<int> capacity;                 // category -> positions
  std::vector<std::vector<int>> hr_reserve;  // category -> HR group -> count
};

// One position in a precedence sequence. `category` is the vertical category
// whose members are eligible (kOpen admits everyone); `hr_group`, when set,
// further restricts eligibility to that HR group.
struct Slot {
  int category = kOpen;
  int hr_group = -1;
  bool operator==(const Slot&) const = default;
};

struct ReserveInstance {
  Names names;  // applicants, categories (index 0 is open)
  std::vector<std::string> hr_groups;
  std::vector<int> merit;             // strict, higher is better
  std::vector<int> vr;                // applicant -> category, kOpen = general
  std::vector<std::vector<int>> hr;   // applicant -> HR groups
  Seats seats;
  std::vector<Slot> precedence;
  // Multi-institution form; empty for a single institution.
  std::vector<std::string> institutions;
  std::vector<Seats> institution_seats;
  std::vector<Ranking> prefs;         // applicant -> institutions

  int num_applicants() const { return static_cast<int>(merit.size()); }
  int num_categories() const {
    return static_cast<int>(names.resources.size());
  }
  int num_groups() const { return static_cast<int>(hr_groups.size()); }
  bool multi() const { return !institutions.empty(); }
  bool Eligible(int applicant, int category) const {
    return category == kOpen || vr[applicant] == category;
  }
  bool HasTrait(int applicant, int group) const;
  // True when no applicant belongs to more than one HR group.
  bool HrNonOverlapping() const;
  // Applicants sorted by decreasing merit.
  std::vector<int> ByMerit() const;
};

std::vector<std::string> Validate(const ReserveInstance& inst);

// Maximum number of HR positions of `category` honored by `members` under a
// one-to-one matching. `group_of`, when given, receives the matched group per
// member (parallel to `members`, -1 if unmatched).
int HonoredHr(const ReserveInstance& inst, const Seats& seats, int category,
              const std::vector<int>& members,
              std::vector<int>* group_of = nullptr);

// A categorized pick: who gets a seat of `category`, honoring `hr_group`.
struct Pick {
  int applicant;
  int category;
  int hr_group;
  bool operator==(const Pick&) const = default;
};

// Slots are filled one at a time in order by the highest-merit eligible
// applicant still unassigned; an HR slot without a group member goes to the
// category at large. Allocation label = slot index.
Allocation ReserveSequenceChoice(const ReserveInstance& inst,
                                 const std::vector<Slot>& slots);

enum class PrecedenceKind { kOpenFirst, kReservedFirst, kCompromise };
// `open` open slots and `reserved` copies of `reserved_slot`. The compromise
// puts half the reserved slots first, then every open slot, then the rest.
std::vector<Slot> MakePrecedence(PrecedenceKind kind, int open, int reserved,
                                 Slot reserved_slot);

// Single-category rules over a pool of eligible applicants.
std::vector<Pick> MinimumGuarantee(const ReserveInstance& inst,
                                   const Seats& seats, int category,
                                   const std::vector<int>& pool);
std::vector<Pick> MeritoriousHorizontal(const ReserveInstance& inst,
                                        const Seats& seats, int category,
                                        const std::vector<int>& pool);

// Two-step rules over the whole applicant pool at `seats`.
std::vector<Pick> Tsmg(const ReserveInstance& inst, const Seats& seats,
                       const std::vector<int>& pool);
std::vector<Pick> Tsmh(const ReserveInstance& inst, const Seats& seats,
                       const std::vector<int>& pool);
std::vector<Pick> SciAkg(const ReserveInstance& inst, const Seats& seats,
                         const std::vector<int>& pool);

// Allocation: resource = category, slot = honored HR group.
Allocation TsmgChoice(const ReserveInstance& inst, Trace* trace = nullptr);
Allocation TsmhChoice(const ReserveInstance& inst, Trace* trace = nullptr);
Allocation SciAkgChoice(const ReserveInstance& inst, Trace* trace = nullptr);

// Applicant-proposing deferred acceptance with 2SMH at every institution.
// Allocation: resource = institution, label = category, slot = HR group.
Allocation TsmhDa(const ReserveInstance& inst, Trace* trace = nullptr);

}  // namespace mdtk::reserves

#endif  // MDTK_RESERVES_H_
