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

#include "mdtk/twosided.h"

#include <algorithm>
#include <stdexcept>
#include <tuple>

namespace mdtk::twosided {
namespace {

std::string Stu(const SchoolInstance& inst, int i) {
  return inst.names.agents[i];
}
std::string Sch(const SchoolInstance& inst, int s) {
  return inst.names.resources[s];
}

void CheckRanking(const Ranking& r, int universe, const std::string& who,
                  std::vector<std::string>& errors) {
  std::vector<bool> seen(universe, false);
  for (int x : r) {
    if (x < 0 || x >= universe) {
      errors.push_back("dangling reference: " + who);
    } else if (seen[x]) {
      errors.push_back("non-strict ranking: " + who);
    } else {
      seen[x] = true;
    }
  }
}

size_t LongestList(const SchoolInstance& inst) {
  size_t longest = 0;
  for (const auto& p : inst.prefs) longest = std::max(longest, p.size());
  return longest;
}

}  // namespace

bool SchoolInstance::HasScores() const {
  if (score.empty()) return false;
  for (const auto& s : score) {
    if (!s.has_value()) return false;
  }
  return true;
}

std::vector<std::vector<int>> SchoolInstance::PriorityRanks() const {
  std::vector<std::vector<int>> rank(num_schools(),
                                     std::vector<int>(num_students(), -1));
  for (int s = 0; s < num_schools(); ++s) {
    for (int k = 0; k < static_cast<int>(priority[s].size()); ++k) {
      rank[s][priority[s][k]] = k;
    }
  }
  return rank;
}

std::vector<std::string> Validate(const SchoolInstance& inst) {
  std::vector<std::string> errors;
  const int n = inst.num_students();
  const int m = inst.num_schools();
  for (int i = 0; i < n; ++i) {
    CheckRanking(inst.prefs[i], m, "ranking of " + Stu(inst, i), errors);
  }
  if (static_cast<int>(inst.priority.size()) != m) {
    errors.push_back("priority list count mismatch");
    return errors;
  }
  for (int s = 0; s < m; ++s) {
    if (inst.capacity[s] < 1) {
      errors.push_back("capacity of " + Sch(inst, s) + " must be >= 1");
    }
    CheckRanking(inst.priority[s], n, "priority of " + Sch(inst, s), errors);
  }
  if (inst.HasFields()) {
    const int f = static_cast<int>(inst.field_ranking.size());
    for (int s = 0; s < m; ++s) {
      if (inst.field[s] < 0 || inst.field[s] >= f) {
        errors.push_back("dangling reference: field of " + Sch(inst, s));
      }
    }
    for (int k = 0; k < f; ++k) {
      CheckRanking(inst.field_ranking[k], n, "field " + inst.field_names[k],
                   errors);
    }
  }
  return errors;
}

SchoolInstance InducedByFields(const SchoolInstance& inst) {
  SchoolInstance out = inst;
  for (int s = 0; s < inst.num_schools(); ++s) {
    out.priority[s] = inst.field_ranking[inst.field[s]];
  }
  return out;
}

Allocation DaStudent(const SchoolInstance& inst, Trace* trace) {
  const int n = inst.num_students();
  const int m = inst.num_schools();
  const auto rank = inst.PriorityRanks();
  std::vector<size_t> next(n, 0);
  std::vector<std::vector<int>> held(m);
  std::vector<int> at(n, kUnmatched);
  for (int round = 1;; ++round) {
    std::vector<std::vector<int>> applicants(m);
    bool any = false;
    for (int i = 0; i < n; ++i) {
      if (at[i] != kUnmatched || next[i] >= inst.prefs[i].size()) continue;
      applicants[inst.prefs[i][next[i]++]].push_back(i);
      any = true;
    }
    if (!any) break;
    std::string line = "round " + std::to_string(round) + ":";
    for (int s = 0; s < m; ++s) {
      if (applicants[s].empty()) continue;
      std::vector<int> pool = held[s];
      for (int i : applicants[s]) {
        if (rank[s][i] >= 0) {
          pool.push_back(i);
        } else {
          line += " " + Sch(inst, s) + " rejects " + Stu(inst, i) + ";";
        }
      }
      std::sort(pool.begin(), pool.end(),
                [&](int a, int b) { return rank[s][a] < rank[s][b]; });
      for (size_t k = 0; k < pool.size(); ++k) {
        if (static_cast<int>(k) < inst.capacity[s]) {
          at[pool[k]] = s;
        } else {
          at[pool[k]] = kUnmatched;
          line += " " + Sch(inst, s) + " rejects " + Stu(inst, pool[k]) + ";";
        }
      }
      if (static_cast<int>(pool.size()) > inst.capacity[s]) {
        pool.resize(inst.capacity[s]);
      }
      held[s] = pool;
      line += " " + Sch(inst, s) + " holds";
      for (int i : pool) line += " " + Stu(inst, i);
      line += ";";
    }
    if (trace) trace->push_back(line);
  }
  Allocation out(n);
  for (int i = 0; i < n; ++i) out.Assign(i, at[i]);
  return out;
}

Allocation DaCollege(const SchoolInstance& inst, Trace* trace) {
  const int n = inst.num_students();
  const int m = inst.num_schools();
  std::vector<std::vector<int>> pref_rank(n);
  for (int i = 0; i < n; ++i) pref_rank[i] = RankTable(inst.prefs[i], m);
  std::vector<size_t> next(m, 0);
  std::vector<int> holds(n, kUnmatched);
  std::vector<int> count(m, 0);
  for (int round = 1;; ++round) {
    bool any = false;
    std::string line = "round " + std::to_string(round) + ":";
    for (int s = 0; s < m; ++s) {
      while (count[s] < inst.capacity[s] && next[s] < inst.priority[s].size()) {
        int i = inst.priority[s][next[s]++];
        any = true;
        int pos = pref_rank[i][s];
        int cur = holds[i];
        bool accept =
            pos >= 0 && (cur == kUnmatched || pos < pref_rank[i][cur]);
        line += " " + Sch(inst, s) + " offers " + Stu(inst, i) +
                (accept ? " (held)" : " (declined)") + ";";
        if (!accept) continue;
        if (cur != kUnmatched) --count[cur];
        holds[i] = s;
        ++count[s];
      }
    }
    if (!any) break;
    if (trace) trace->push_back(line);
  }
  Allocation out(n);
  for (int i = 0; i < n; ++i) out.Assign(i, holds[i]);
  return out;
}

Allocation Boston(const SchoolInstance& inst, Trace* trace) {
  const int n = inst.num_students();
  const int m = inst.num_schools();
  const auto rank = inst.PriorityRanks();
  std::vector<int> seats = inst.capacity;
  Allocation out(n);
  size_t longest = LongestList(inst);
  for (size_t k = 0; k < longest; ++k) {
    std::vector<std::vector<int>> applicants(m);
    for (int i = 0; i < n; ++i) {
      if (out.resource[i] != kUnmatched || k >= inst.prefs[i].size()) continue;
      int s = inst.prefs[i][k];
      if (rank[s][i] >= 0) applicants[s].push_back(i);
    }
    std::string line = "choice " + std::to_string(k + 1) + ":";
    for (int s = 0; s < m; ++s) {
      auto& pool = applicants[s];
      std::sort(pool.begin(), pool.end(),
                [&](int a, int b) { return rank[s][a] < rank[s][b]; });
      for (int i : pool) {
        if (seats[s] == 0) break;
        --seats[s];
        out.Assign(i, s);
        line += " " + Stu(inst, i) + "->" + Sch(inst, s);
      }
    }
    if (trace) trace->push_back(line);
  }
  return out;
}

Allocation ScTtc(const SchoolInstance& inst, Trace* trace) {
  const int n = inst.num_students();
  const int m = inst.num_schools();
  const auto rank = inst.PriorityRanks();
  std::vector<int> seats = inst.capacity;
  std::vector<bool> active(n, true);
  Allocation out(n);
  int remaining = n;
  for (int round = 1; remaining > 0; ++round) {
    std::vector<int> to_school(n, -1);
    for (int i = 0; i < n; ++i) {
      if (!active[i]) continue;
      for (int s : inst.prefs[i]) {
        if (seats[s] > 0 && rank[s][i] >= 0) {
          to_school[i] = s;
          break;
        }
      }
      if (to_school[i] < 0) {
        active[i] = false;
        --remaining;
      }
    }
    std::vector<int> to_student(m, -1);
    for (int s = 0; s < m; ++s) {
      if (seats[s] == 0) continue;
      for (int i : inst.priority[s]) {
        if (active[i]) {
          to_student[s] = i;
          break;
        }
      }
    }
    if (remaining == 0) break;
    // Every active student points at a school that in turn points at an
    // active student, so each round clears at least one cycle.
    std::vector<int> color(n, 0);
    std::string line = "round " + std::to_string(round) + ":";
    std::vector<std::pair<int, int>> cleared;
    for (int start = 0; start < n; ++start) {
      if (!active[start] || color[start] != 0) continue;
      std::vector<int> path;
      int v = start;
      while (color[v] == 0) {
        color[v] = 1;
        path.push_back(v);
        v = to_student[to_school[v]];
      }
      if (color[v] == 1) {
        auto it = std::find(path.begin(), path.end(), v);
        line += " cycle";
        for (; it != path.end(); ++it) {
          cleared.emplace_back(*it, to_school[*it]);
          line += " " + Stu(inst, *it) + "->" + Sch(inst, to_school[*it]);
        }
        line += ";";
      }
      for (int a : path) color[a] = 2;
    }
    for (auto [i, s] : cleared) {
      out.Assign(i, s);
      active[i] = false;
      --seats[s];
      --remaining;
    }
    if (trace) trace->push_back(line);
  }
  return out;
}

Allocation Mcsd(const SchoolInstance& inst, Trace* trace) {
  if (!inst.HasFields()) throw std::invalid_argument("mcsd requires fields");
  const int n = inst.num_students();
  const int m = inst.num_schools();
  const int f = static_cast<int>(inst.field_ranking.size());
  std::vector<Ranking> lists = inst.prefs;
  for (int step = 1;; ++step) {
    std::vector<std::vector<int>> holding(n);
    for (int k = 0; k < f; ++k) {
      std::vector<int> seats(m, 0);
      for (int s = 0; s < m; ++s) {
        if (inst.field[s] == k) seats[s] = inst.capacity[s];
      }
      for (int i : inst.field_ranking[k]) {
        for (int s : lists[i]) {
          if (seats[s] > 0) {
            --seats[s];
            holding[i].push_back(s);
            break;
          }
        }
      }
    }
    bool multi = false;
    std::string line = "step " + std::to_string(step) + ":";
    for (int i = 0; i < n; ++i) {
      if (holding[i].empty()) continue;
      line += " " + Stu(inst, i) + "{";
      for (int s : holding[i]) line += Sch(inst, s) + ",";
      line.back() = '}';
      if (holding[i].size() < 2) continue;
      multi = true;
      int best = *std::min_element(
          holding[i].begin(), holding[i].end(),
          [&](int a, int b) { return Prefers(lists[i], a, b); });
      lists[i].resize(RankOf(lists[i], best) + 1);
    }
    if (trace) trace->push_back(line);
    if (!multi) {
      Allocation out(n);
      for (int i = 0; i < n; ++i) {
        if (!holding[i].empty()) out.Assign(i, holding[i][0]);
      }
      return out;
    }
  }
}

SchoolInstance TaiwanAdjusted(const SchoolInstance& inst,
                              const std::vector<int>& rule) {
  if (!inst.HasScores()) {
    throw std::invalid_argument("taiwan_deduction requires student scores");
  }
  if (rule.size() < LongestList(inst)) {
    throw std::invalid_argument(
        "deduction rule shorter than the longest submitted list");
  }
  SchoolInstance out = inst;
  const auto rank = inst.PriorityRanks();
  for (int s = 0; s < inst.num_schools(); ++s) {
    std::vector<std::tuple<int, int, std::string, int>> keyed;
    for (int i = 0; i < inst.num_students(); ++i) {
      int pos = RankOf(inst.prefs[i], s);
      if (pos < 0 || rank[s][i] < 0) continue;
      int base = *inst.score[i];
      keyed.emplace_back(-(base - rule[pos]), -base, inst.names.agents[i], i);
    }
    std::sort(keyed.begin(), keyed.end());
    out.priority[s].clear();
    for (const auto& k : keyed) out.priority[s].push_back(std::get<3>(k));
  }
  return out;
}

Allocation TaiwanDeduction(const SchoolInstance& inst,
                           const std::vector<int>& rule, Trace* trace) {
  return DaStudent(TaiwanAdjusted(inst, rule), trace);
}

SchoolInstance ParallelAdjusted(const SchoolInstance& inst,
                                const std::vector<int>& bands) {
  std::vector<int> band_of;
  for (int b = 0; b < static_cast<int>(bands.size()); ++b) {
    if (bands[b] < 1) throw std::invalid_argument("band sizes must be >= 1");
    band_of.insert(band_of.end(), bands[b], b);
  }
  if (band_of.size() < LongestList(inst)) {
    throw std::invalid_argument("bands do not cover the longest list");
  }
  SchoolInstance out = inst;
  const auto rank = inst.PriorityRanks();
  for (int s = 0; s < inst.num_schools(); ++s) {
    std::vector<std::tuple<int, int, int>> keyed;
    for (int i = 0; i < inst.num_students(); ++i) {
      int pos = RankOf(inst.prefs[i], s);
      if (pos < 0 || rank[s][i] < 0) continue;
      keyed.emplace_back(band_of[pos], rank[s][i], i);
    }
    std::sort(keyed.begin(), keyed.end());
    out.priority[s].clear();
    for (const auto& k : keyed) out.priority[s].push_back(std::get<2>(k));
  }
  return out;
}

Allocation ParallelMechanism(const SchoolInstance& inst,
                             const std::vector<int>& bands, Trace* trace) {
  return DaStudent(ParallelAdjusted(inst, bands), trace);
}

}  // namespace mdtk::twosided
