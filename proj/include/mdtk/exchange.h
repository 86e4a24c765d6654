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

// Living-donor kidney exchange clearing.

#ifndef MDTK_EXCHANGE_H_
#define MDTK_EXCHANGE_H_

#include <string>
#include <vector>

#include "mdtk/core.h"

namespace mdtk::exchange {

// Kidneys are numbered with pair donors first (kidney i belongs to pair i),
// then non-directed donors. kWaitlist in a ranking stands for the option "w".
struct ExchangePool {
  Names names;                        // pairs, kidneys
  std::vector<Ranking> prefs;         // pair -> kidneys and kWaitlist; may be empty
  std::vector<std::vector<bool>> compatible;  // kidney -> pair
  std::vector<int> priority;          // pairs, highest first

  int num_pairs() const { return static_cast<int>(names.agents.size()); }
  int num_kidneys() const { return static_cast<int>(names.resources.size()); }
  int num_ndds() const { return num_kidneys() - num_pairs(); }
  bool HasPreferences() const { return !prefs.empty(); }
};

std::vector<std::string> Validate(const ExchangePool& pool);

// Pairs are listed in donation order. In a cycle each pair's donor gives to
// the next pair (the last gives to the first). A chain starts at `source` (an
// NDD kidney, a pair's kidney in TTCC, or -1 for the list) and each listed
// pair receives the previous kidney.
struct Structure {
  bool chain = false;
  int source = -1;
  std::vector<int> pairs;
  bool operator==(const Structure&) const = default;
};

struct ClearingResult {
  std::vector<Structure> structures;
  int transplants = 0;
  // resource = kidney received, kWaitlist for list priority.
  Allocation allocation;
};

enum class ChainPolicy { kRemoveChain, kKeepTail };

ClearingResult Ttcc(const ExchangePool& pool, ChainPolicy policy,
                    Trace* trace = nullptr);

// Two-way exchanges only; locks pairs in by priority while a matching that
// covers every locked pair exists.
ClearingResult PriorityMatching2Way(const ExchangePool& pool,
                                    Trace* trace = nullptr);

// Cycles of length <= cycle_cap (rotation-canonical, smallest pair first)
// and NDD chains with 1..chain_cap pairs.
std::vector<Structure> EnumerateStructures(const ExchangePool& pool,
                                           int cycle_cap, int chain_cap);

// Exact maximum packing; throws CapError above 15 pairs.
ClearingResult MaxTransplants(const ExchangePool& pool, int cycle_cap,
                              int chain_cap, Trace* trace = nullptr);

std::string StructureName(const ExchangePool& pool, const Structure& s);

}  // namespace mdtk::exchange

#endif  // MDTK_EXCHANGE_H_
