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

// Instances of every family and mechanisms looked up by name.

#ifndef MDTK_REGISTRY_H_
#define MDTK_REGISTRY_H_

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "mdtk/contracts.h"
#include "mdtk/core.h"
#include "mdtk/exchange.h"
#include "mdtk/onesided.h"
#include "mdtk/reserves.h"
#include "mdtk/twosided.h"

namespace mdtk {

enum class Family { kOneSided, kTwoSided, kContracts, kReserves, kExchange };

using Instance =
    std::variant<onesided::HousingInstance, twosided::SchoolInstance,
                 contracts::ContractsInstance, reserves::ReserveInstance,
                 exchange::ExchangePool>;

Family FamilyOf(const Instance& inst);
std::string FamilyName(Family f);
std::optional<Family> ParseFamily(const std::string& name);

std::vector<std::string> ValidateInstance(const Instance& inst);

// Throws ValidationError when the instance is invalid.
void RequireValid(const Instance& inst);

// String parameters, e.g. {"k": "3", "rule": "0,2,4"}.
class Params {
 public:
  Params() = default;
  // Parses "key=value" items separated by commas or semicolons.
  static Params Parse(const std::string& text);

  void Set(const std::string& key, const std::string& value);
  bool Has(const std::string& key) const { return values_.count(key) > 0; }
  int GetInt(const std::string& key, int fallback) const;
  uint64_t GetSeed(uint64_t fallback) const;
  std::string GetString(const std::string& key,
                        const std::string& fallback) const;
  // Integers separated by '/' or spaces.
  std::vector<int> GetIntList(const std::string& key) const;
  const std::map<std::string, std::string>& values() const { return values_; }
  std::string ToString() const;

 private:
  std::map<std::string, std::string> values_;
};

struct Outcome {
  Allocation allocation;
  std::optional<exchange::ClearingResult> clearing;
};

struct Mechanism {
  std::string name;
  Family family;
  std::function<Outcome(const Instance&, const Params&, Trace*)> run;
};

// Throws std::invalid_argument for unknown names.
const Mechanism& FindMechanism(const std::string& name);
std::vector<std::string> MechanismNames();

// "name" or "name:key=value,key=value".
struct MechanismCall {
  std::string name;
  Params params;
  std::string Label() const;
};
MechanismCall ParseMechanismCall(const std::string& text);

// Validates, checks the family and runs.
Outcome Run(const MechanismCall& call, const Instance& inst,
            Trace* trace = nullptr);

// Report access: the strategic agents of an instance rank a universe of report
// items (houses, schools, branch-price terms, institutions, kidneys + w).
int NumReporters(const Instance& inst);
int NumReportItems(const Instance& inst);
Ranking GetReport(const Instance& inst, int agent);
void SetReport(Instance& inst, int agent, const Ranking& report);
// The report item an allocation gives the agent, or kUnmatched.
int OutcomeItem(const Instance& inst, const Allocation& a, int agent);
std::string AgentName(const Instance& inst, int agent);
std::string ItemName(const Instance& inst, int item);

}  // namespace mdtk

#endif  // MDTK_REGISTRY_H_
