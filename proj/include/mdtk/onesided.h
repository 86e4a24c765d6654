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

// House allocation with existing tenants.

#ifndef MDTK_ONESIDED_H_
#define MDTK_ONESIDED_H_

#include <cstdint>
#include <string>
#include <vector>

#include "mdtk/core.h"

namespace mdtk::onesided {

struct HousingInstance {
  Names names;                  // agents, houses
  std::vector<int> endowment;   // agent -> house, kUnmatched for newcomers
  std::vector<Ranking> prefs;   // agent -> houses
  std::vector<int> queue;       // all agents, head first

  int num_agents() const { return static_cast<int>(prefs.size()); }
  int num_houses() const { return static_cast<int>(names.resources.size()); }
  std::vector<int> Newcomers() const;
  std::vector<int> Tenants() const;
  std::vector<int> VacantHouses() const;
};

// Structural checks; returns every violation found.
std::vector<std::string> Validate(const HousingInstance& inst);

Allocation Ssd(const HousingInstance& inst, const std::vector<int>& queue,
               Trace* trace = nullptr);

Allocation Rsd(const HousingInstance& inst, uint64_t seed,
               Trace* trace = nullptr);

// optin[t] is true when tenant t enters the lottery instead of squatting.
Allocation SsdWithSquattingRights(const HousingInstance& inst,
                                  const std::vector<int>& queue,
                                  const std::vector<bool>& optin,
                                  Trace* trace = nullptr);

// Gale's top trading cycles; requires a pure housing market.
Allocation Gttc(const HousingInstance& inst, Trace* trace = nullptr);

// You request my house, I get your turn.
Allocation YrmhIgyt(const HousingInstance& inst, const std::vector<int>& queue,
                    Trace* trace = nullptr);

// Random endowment of vacants to newcomers drawn from `seed`; the returned
// vector maps each vacant house (in VacantHouses() order) to its newcomer.
std::vector<int> DrawEndowments(const HousingInstance& inst, uint64_t seed);

// Core of the market induced by the given vacant -> newcomer endowment.
Allocation CoreFromEndowments(const HousingInstance& inst,
                              const std::vector<int>& vacant_owner,
                              Trace* trace = nullptr);

Allocation TechnocraticCore(const HousingInstance& inst, uint64_t seed,
                            Trace* trace = nullptr);

}  // namespace mdtk::onesided

#endif  // MDTK_ONESIDED_H_
