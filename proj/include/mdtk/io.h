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

// JSON instance, allocation and report formats, and instance generators.

#ifndef MDTK_IO_H_
#define MDTK_IO_H_

#include <cstdint>
#include <string>

#include "json.hpp"
#include "mdtk/axioms.h"
#include "mdtk/registry.h"

namespace mdtk::io {

using Json = nlohmann::ordered_json;

// Parses and validates. Throws ValidationError carrying every problem found.
Instance ParseInstance(const Json& doc);
Instance ParseInstanceText(const std::string& text);
Instance ReadInstanceFile(const std::string& path);

Json InstanceToJson(const Instance& inst);

Json AllocationToJson(const Instance& inst, const Allocation& a);
// Accepts a result document or a bare agent map.
Allocation ParseAllocation(const Instance& inst, const Json& doc);

Json OutcomeToJson(const Instance& inst, const Outcome& outcome,
                   const Trace* trace);

Json WitnessToJson(const Instance& inst, const axioms::Witness& w);
Json VerdictToJson(const Instance& inst, const axioms::Verdict& v);
Json ReportToJson(const Instance& inst, const axioms::AxiomReport& report);

// Random valid instance of `family`; size knobs come from `size`.
Instance Generate(Family family, const Params& size, uint64_t seed);

}  // namespace mdtk::io

#endif  // MDTK_IO_H_
