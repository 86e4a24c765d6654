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

#include "mdtk/onesided.h"

#include <algorithm>
#include <stdexcept>

namespace mdtk::onesided {
namespace {

const std::string& AgentName(const HousingInstance& inst, int a) {
  return inst.names.agents[a];
}
const std::string& HouseName(const HousingInstance& inst, int h) {
  return inst.names.resources[h];
}

// Top trading cycles over agents that each own exactly one house. Agents with
// no acceptable house left depart unmatched and take their house off the
// market.
Allocation TradeCycles(const HousingInstance& inst,
                       const std::vector<int>& owner_of,
                       const std::vector<int>& participants, Trace* trace) {
  const int n = inst.num_agents();
  Allocation out(n);
  std::vector<int> house_of(n, kUnmatched);
  for (int h = 0; h < static_cast<int>(owner_of.size()); ++h) {
    if (owner_of[h] >= 0) house_of[owner_of[h]] = h;
  }
  std::vector<bool> active(n, false);
  for (int a : participants) active[a] = true;
  int remaining = static_cast<int>(participants.size());
  int round = 0;
  while (remaining > 0) {
    ++round;
    std::vector<int> points(n, -1);
    bool dropped = false;
    for (int a = 0; a < n; ++a) {
      if (!active[a]) continue;
      for (int h : inst.prefs[a]) {
        int o = owner_of[h];
        if (o >= 0 && active[o]) {
          points[a] = o;
          break;
        }
      }
      if (points[a] < 0) {
        active[a] = false;
        --remaining;
        dropped = true;
        if (trace) trace->push_back("round " + std::to_string(round) + ": " +
                                    AgentName(inst, a) + " leaves unmatched");
      }
    }
    if (dropped) continue;
    std::vector<int> color(n, 0);
    for (int start = 0; start < n; ++start) {
      if (!active[start] || color[start] != 0) continue;
      std::vector<int> path;
      int v = start;
      while (color[v] == 0) {
        color[v] = 1;
        path.push_back(v);
        v = points[v];
      }
      if (color[v] == 1) {
        std::string line = "round " + std::to_string(round) + ": cycle";
        auto it = std::find(path.begin(), path.end(), v);
        std::vector<int> cycle(it, path.end());
        for (int a : cycle) {
          out.Assign(a, house_of[points[a]]);
          line += " " + AgentName(inst, a) + "->" +
                  HouseName(inst, house_of[points[a]]);
        }
        for (int a : cycle) {
          active[a] = false;
          --remaining;
        }
        if (trace) trace->push_back(line);
      }
      for (int a : path) color[a] = 2;
    }
  }
  return out;
}

}  // namespace

std::vector<int> HousingInstance::Newcomers() const {
  std::vector<int> out;
  for (int a = 0; a < num_agents(); ++a) {
    if (endowment[a] == kUnmatched) out.push_back(a);
  }
  return out;
}

std::vector<int> HousingInstance::Tenants() const {
  std::vector<int> out;
  for (int a = 0; a < num_agents(); ++a) {
    if (endowment[a] != kUnmatched) out.push_back(a);
  }
  return out;
}

std::vector<int> HousingInstance::VacantHouses() const {
  std::vector<bool> occupied(num_houses(), false);
  for (int h : endowment) {
    if (h >= 0) occupied[h] = true;
  }
  std::vector<int> out;
  for (int h = 0; h < num_houses(); ++h) {
    if (!occupied[h]) out.push_back(h);
  }
  return out;
}

std::vector<std::string> Validate(const HousingInstance& inst) {
  std::vector<std::string> errors;
  const int n = inst.num_agents();
  const int m = inst.num_houses();
  if (static_cast<int>(inst.endowment.size()) != n) {
    errors.push_back("endowment size mismatch");
    return errors;
  }
  std::vector<int> owner(m, -1);
  for (int a = 0; a < n; ++a) {
    int h = inst.endowment[a];
    if (h == kUnmatched) continue;
    if (h < 0 || h >= m) {
      errors.push_back("dangling reference: endowment of " + AgentName(inst, a));
      continue;
    }
    if (owner[h] >= 0) {
      errors.push_back("duplicate id: house " + HouseName(inst, h) +
                       " endowed twice");
    }
    owner[h] = a;
    if (RankOf(inst.prefs[a], h) < 0) {
      errors.push_back("tenant " + AgentName(inst, a) +
                       " must rank own house");
    }
  }
  for (int a = 0; a < n; ++a) {
    std::vector<bool> seen(m, false);
    for (int h : inst.prefs[a]) {
      if (h < 0 || h >= m) {
        errors.push_back("dangling reference: ranking of " + AgentName(inst, a));
      } else if (seen[h]) {
        errors.push_back("non-strict ranking: " + AgentName(inst, a));
      } else {
        seen[h] = true;
      }
    }
  }
  std::vector<int> q = inst.queue;
  std::sort(q.begin(), q.end());
  if (q != Iota(n)) errors.push_back("queue must list every agent once");
  return errors;
}

Allocation Ssd(const HousingInstance& inst, const std::vector<int>& queue,
               Trace* trace) {
  Allocation out(inst.num_agents());
  std::vector<bool> taken(inst.num_houses(), false);
  for (int a : queue) {
    for (int h : inst.prefs[a]) {
      if (!taken[h]) {
        taken[h] = true;
        out.Assign(a, h);
        break;
      }
    }
    if (trace) {
      trace->push_back(AgentName(inst, a) + " takes " +
                       (out.resource[a] >= 0 ? HouseName(inst, out.resource[a])
                                             : std::string("nothing")));
    }
  }
  return out;
}

Allocation Rsd(const HousingInstance& inst, uint64_t seed, Trace* trace) {
  std::vector<int> queue = Iota(inst.num_agents());
  SplitMix64 rng(seed);
  Shuffle(queue, rng);
  return Ssd(inst, queue, trace);
}

Allocation SsdWithSquattingRights(const HousingInstance& inst,
                                  const std::vector<int>& queue,
                                  const std::vector<bool>& optin,
                                  Trace* trace) {
  const int n = inst.num_agents();
  Allocation out(n);
  HousingInstance market = inst;
  std::vector<bool> squatter(n, false);
  std::vector<bool> blocked(inst.num_houses(), false);
  for (int a = 0; a < n; ++a) {
    if (inst.endowment[a] != kUnmatched && !optin[a]) {
      squatter[a] = true;
      blocked[inst.endowment[a]] = true;
      out.Assign(a, inst.endowment[a]);
      if (trace) trace->push_back(AgentName(inst, a) + " squats");
    }
  }
  for (auto& pref : market.prefs) {
    std::erase_if(pref, [&](int h) { return blocked[h]; });
  }
  std::vector<int> lottery;
  for (int a : queue) {
    if (!squatter[a]) lottery.push_back(a);
  }
  Allocation rest = Ssd(market, lottery, trace);
  for (int a : lottery) out.Assign(a, rest.resource[a]);
  return out;
}

Allocation Gttc(const HousingInstance& inst, Trace* trace) {
  if (!inst.Newcomers().empty() || !inst.VacantHouses().empty()) {
    throw std::invalid_argument("gttc requires a pure housing market");
  }
  std::vector<int> owner_of(inst.num_houses(), -1);
  for (int a = 0; a < inst.num_agents(); ++a) owner_of[inst.endowment[a]] = a;
  return TradeCycles(inst, owner_of, Iota(inst.num_agents()), trace);
}

Allocation YrmhIgyt(const HousingInstance& inst, const std::vector<int>& queue,
                    Trace* trace) {
  const int n = inst.num_agents();
  const int m = inst.num_houses();
  Allocation out(n);
  std::vector<int> owner(m, -1);
  for (int a = 0; a < n; ++a) {
    if (inst.endowment[a] >= 0) owner[inst.endowment[a]] = a;
  }
  std::vector<bool> present(n, true);
  std::vector<bool> assigned(m, false);
  // A house is requestable while unassigned; it is "occupied" while its
  // tenant is still present.
  auto occupant = [&](int h) {
    int o = owner[h];
    return (o >= 0 && present[o]) ? o : -1;
  };
  size_t next = 0;
  std::vector<int> stack;
  auto depart = [&](int a, int h) {
    out.Assign(a, h);
    assigned[h] = true;
    present[a] = false;
  };
  while (true) {
    if (stack.empty()) {
      while (next < queue.size() && !present[queue[next]]) ++next;
      if (next == queue.size()) break;
      stack.push_back(queue[next]);
    }
    int a = stack.back();
    int want = -1;
    for (int h : inst.prefs[a]) {
      if (!assigned[h]) {
        want = h;
        break;
      }
    }
    if (want < 0) {
      present[a] = false;
      stack.pop_back();
      if (trace) trace->push_back(AgentName(inst, a) + " leaves unmatched");
      continue;
    }
    if (trace) {
      trace->push_back(AgentName(inst, a) + " requests " +
                       HouseName(inst, want));
    }
    int t = occupant(want);
    if (t < 0) {
      std::string line = "chain:";
      for (size_t k = 0; k + 1 < stack.size(); ++k) {
        int h = inst.endowment[stack[k + 1]];
        line += " " + AgentName(inst, stack[k]) + "->" + HouseName(inst, h);
      }
      line += " " + AgentName(inst, a) + "->" + HouseName(inst, want);
      for (size_t k = 0; k + 1 < stack.size(); ++k) {
        depart(stack[k], inst.endowment[stack[k + 1]]);
      }
      depart(a, want);
      stack.clear();
      if (trace) trace->push_back(line);
      continue;
    }
    auto it = std::find(stack.begin(), stack.end(), t);
    if (it == stack.end()) {
      stack.push_back(t);
      if (trace) trace->push_back("promote " + AgentName(inst, t));
      continue;
    }
    size_t k0 = it - stack.begin();
    std::string line = "cycle:";
    std::vector<std::pair<int, int>> moves;
    for (size_t k = k0; k < stack.size(); ++k) {
      int h = (k + 1 < stack.size()) ? inst.endowment[stack[k + 1]] : want;
      moves.emplace_back(stack[k], h);
      line += " " + AgentName(inst, stack[k]) + "->" + HouseName(inst, h);
    }
    for (auto [agent, h] : moves) depart(agent, h);
    stack.resize(k0);
    if (trace) trace->push_back(line);
  }
  return out;
}

std::vector<int> DrawEndowments(const HousingInstance& inst, uint64_t seed) {
  std::vector<int> newcomers = inst.Newcomers();
  std::vector<int> vacants = inst.VacantHouses();
  if (newcomers.size() < vacants.size()) {
    throw std::invalid_argument(
        "technocratic_core needs at least as many newcomers as vacant houses");
  }
  SplitMix64 rng(seed);
  Shuffle(newcomers, rng);
  newcomers.resize(vacants.size());
  return newcomers;
}

Allocation CoreFromEndowments(const HousingInstance& inst,
                              const std::vector<int>& vacant_owner,
                              Trace* trace) {
  std::vector<int> owner_of(inst.num_houses(), -1);
  std::vector<int> participants;
  for (int a = 0; a < inst.num_agents(); ++a) {
    if (inst.endowment[a] >= 0) {
      owner_of[inst.endowment[a]] = a;
      participants.push_back(a);
    }
  }
  std::vector<int> vacants = inst.VacantHouses();
  if (vacant_owner.size() != vacants.size()) {
    throw std::invalid_argument("one owner per vacant house expected");
  }
  std::vector<bool> endowed(inst.num_agents(), false);
  for (int o : vacant_owner) {
    if (o < 0 || o >= inst.num_agents() || inst.endowment[o] >= 0 ||
        endowed[o]) {
      throw std::invalid_argument("vacant houses go to distinct newcomers");
    }
    endowed[o] = true;
  }
  for (size_t i = 0; i < vacants.size(); ++i) {
    owner_of[vacants[i]] = vacant_owner[i];
    participants.push_back(vacant_owner[i]);
    if (trace) {
      trace->push_back("endow " + AgentName(inst, vacant_owner[i]) + " with " +
                       HouseName(inst, vacants[i]));
    }
  }
  std::sort(participants.begin(), participants.end());
  return TradeCycles(inst, owner_of, participants, trace);
}

Allocation TechnocraticCore(const HousingInstance& inst, uint64_t seed,
                            Trace* trace) {
  return CoreFromEndowments(inst, DrawEndowments(inst, seed), trace);
}

}  // namespace mdtk::onesided
