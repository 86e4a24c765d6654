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

// Student placement and school choice over priority structures.

#ifndef MDTK_TWOSIDED_H_
#define MDTK_TWOSIDED_H_

#include <optional>
#include <string>
#include <vector>

#include "mdtk/core.h"

namespace mdtk::twosided {

struct SchoolInstance {
  Names names;                               // students, schools
  std::vector<Ranking> prefs;                // student -> schools
  std::vector<int> capacity;                 // school -> seats
  std::vector<std::vector<int>> priority;    // school -> eligible students
  std::vector<std::optional<int>> score;     // student -> common exam score
  std::vector<int> field;                    // school -> field, or empty
  std::vector<std::string> field_names;
  std::vector<std::vector<int>> field_ranking;  // field -> students

  int num_students() const { return static_cast<int>(prefs.size()); }
  int num_schools() const { return static_cast<int>(capacity.size()); }
  bool HasScores() const;
  bool HasFields() const { return !field.empty(); }
  // rank[s][i]: position of student i at school s, -1 if ineligible.
  std::vector<std::vector<int>> PriorityRanks() const;
};

std::vector<std::string> Validate(const SchoolInstance& inst);

// Copy of `inst` whose school priorities are replaced by their field rankings.
SchoolInstance InducedByFields(const SchoolInstance& inst);

Allocation DaStudent(const SchoolInstance& inst, Trace* trace = nullptr);
Allocation DaCollege(const SchoolInstance& inst, Trace* trace = nullptr);
Allocation Boston(const SchoolInstance& inst, Trace* trace = nullptr);
Allocation ScTtc(const SchoolInstance& inst, Trace* trace = nullptr);
Allocation Mcsd(const SchoolInstance& inst, Trace* trace = nullptr);

// Effective score at the k-th listed school is score - rule[k-1].
Allocation TaiwanDeduction(const SchoolInstance& inst,
                           const std::vector<int>& rule,
                           Trace* trace = nullptr);

// Schools rank applicants by the band holding the school in their list, then
// by base priority.
Allocation ParallelMechanism(const SchoolInstance& inst,
                             const std::vector<int>& bands,
                             Trace* trace = nullptr);

// The priority-adjusted instances behind the last two mechanisms.
SchoolInstance TaiwanAdjusted(const SchoolInstance& inst,
                              const std::vector<int>& rule);
SchoolInstance ParallelAdjusted(const SchoolInstance& inst,
                                const std::vector<int>& bands);

}  // namespace mdtk::twosided

#endif  // MDTK_TWOSIDED_H_
