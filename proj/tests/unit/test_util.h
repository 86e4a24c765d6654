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

#ifndef MDTK_TESTS_UNIT_TEST_UTIL_H_
#define MDTK_TESTS_UNIT_TEST_UTIL_H_

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "mdtk/axioms.h"
#include "mdtk/io.h"
#include "mdtk/registry.h"

namespace mdtk::testing {

inline std::string DataPath(const std::string& name) {
  return std::string(MDTK_TESTDATA) + "/" + name;
}

inline Instance Load(const std::string& name) {
  return io::ReadInstanceFile(DataPath(name));
}

template <typename T>
T LoadAs(const std::string& name) {
  return std::get<T>(Load(name));
}

// Agent name -> serialized assignment, e.g. "X" or {"branch":"I",...}.
inline io::Json View(const Instance& inst, const Allocation& a) {
  return io::AllocationToJson(inst, a);
}

inline Allocation FromJson(const Instance& inst, const std::string& text) {
  return io::ParseAllocation(inst, io::Json::parse(text));
}

inline Allocation RunNamed(const std::string& call, const Instance& inst) {
  return Run(ParseMechanismCall(call), inst).allocation;
}

inline bool HasError(const std::vector<std::string>& errors,
                     const std::string& needle) {
  for (const auto& e : errors) {
    if (e.find(needle) != std::string::npos) return true;
  }
  return false;
}

// Discrete version of a continuum reserve economy: one applicant per integer
// score in [1, 100] per copy of each group.
struct GroupSpec {
  int copies;
  int vr;  // category index
  bool woman;
};

inline reserves::ReserveInstance IndiaEconomy() {
  reserves::ReserveInstance r;
  r.names.resources = {"open", "R"};
  r.hr_groups = {"W"};
  const GroupSpec groups[] = {{3, 0, false}, {3, 1, false}, {1, 0, true},
                              {2, 1, true}};
  const char* tags[] = {"GM", "RM", "GW", "RW"};
  for (int score = 1; score <= 100; ++score) {
    int k = 0;
    for (int g = 0; g < 4; ++g) {
      for (int c = 0; c < groups[g].copies; ++c) {
        r.names.agents.push_back(std::string(tags[g]) + std::to_string(score) +
                                 "_" + std::to_string(c));
        r.merit.push_back(score * 10 + k++);
        r.vr.push_back(groups[g].vr);
        r.hr.push_back(groups[g].woman ? std::vector<int>{0}
                                       : std::vector<int>{});
      }
    }
  }
  r.seats.capacity = {360, 60};
  r.seats.hr_reserve = {{150}, {18}};
  return r;
}

inline int ScoreOf(const reserves::ReserveInstance& r, int a) {
  return r.merit[a] / 10;
}

inline std::string TagOf(const reserves::ReserveInstance& r, int a) {
  return r.names.agents[a].substr(0, 2);
}

// Score range [lo, hi] per (tag, category); -1 category = unmatched.
inline std::map<std::pair<std::string, int>, std::pair<int, int>> Ranges(
    const reserves::ReserveInstance& r, const Allocation& a) {
  std::map<std::pair<std::string, int>, std::pair<int, int>> out;
  for (int i = 0; i < r.num_applicants(); ++i) {
    auto key = std::make_pair(TagOf(r, i), a.resource[i]);
    const int s = ScoreOf(r, i);
    auto it = out.find(key);
    if (it == out.end()) {
      out[key] = {s, s};
    } else {
      it->second.first = std::min(it->second.first, s);
      it->second.second = std::max(it->second.second, s);
    }
  }
  return out;
}

// Independent maximum matching in a general graph by subset DP.
inline int MaxMatchingBrute(int n, const std::vector<std::vector<bool>>& adj) {
  std::vector<int> best(1 << n, 0);
  for (int mask = 1; mask < (1 << n); ++mask) {
    int v = __builtin_ctz(mask);
    int rest = mask & ~(1 << v);
    int b = best[rest];
    for (int u = v + 1; u < n; ++u) {
      if ((rest >> u & 1) && adj[v][u]) {
        b = std::max(b, 1 + best[rest & ~(1 << u)]);
      }
    }
    best[mask] = b;
  }
  return best[(1 << n) - 1];
}

}  // namespace mdtk::testing

#endif  // MDTK_TESTS_UNIT_TEST_UTIL_H_
