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

#include "mdtk/reserves.h"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>

namespace mdtk::reserves {
namespace {

using CategoryRule = std::function<std::vector<Pick>(
    const ReserveInstance&, const Seats&, int, const std::vector<int>&)>;

std::vector<int> SortByMerit(const ReserveInstance& inst,
                             std::vector<int> pool) {
  std::sort(pool.begin(), pool.end(),
            [&](int a, int b) { return inst.merit[a] > inst.merit[b]; });
  return pool;
}

bool Augment(int u, const std::vector<std::vector<int>>& adj,
             std::vector<int>& unit_owner, std::vector<bool>& seen) {
  for (int unit : adj[u]) {
    if (seen[unit]) continue;
    seen[unit] = true;
    if (unit_owner[unit] < 0 || Augment(unit_owner[unit], adj, unit_owner, seen)) {
      unit_owner[unit] = u;
      return true;
    }
  }
  return false;
}

// Two steps: open over everyone, then each VR category over its remaining
// members, both with `rule`.
std::vector<Pick> TwoStep(const ReserveInstance& inst, const Seats& seats,
                          const std::vector<int>& pool,
                          const std::vector<int>& open_pool,
                          const CategoryRule& rule) {
  std::vector<Pick> picks = rule(inst, seats, kOpen, open_pool);
  std::set<int> taken;
  for (const Pick& p : picks) taken.insert(p.applicant);
  for (int v = 1; v < inst.num_categories(); ++v) {
    std::vector<int> members;
    for (int a : pool) {
      if (inst.vr[a] == v && !taken.count(a)) members.push_back(a);
    }
    for (const Pick& p : rule(inst, seats, v, members)) picks.push_back(p);
  }
  return picks;
}

Allocation ToAllocation(const ReserveInstance& inst,
                        const std::vector<Pick>& picks, Trace* trace) {
  Allocation out(inst.num_applicants());
  for (const Pick& p : picks) out.Assign(p.applicant, p.category, -1, p.hr_group);
  if (trace) {
    for (int v = 0; v < inst.num_categories(); ++v) {
      std::string line = inst.names.resources[v] + ":";
      for (const Pick& p : picks) {
        if (p.category != v) continue;
        line += " " + inst.names.agents[p.applicant];
        if (p.hr_group >= 0) line += "[" + inst.hr_groups[p.hr_group] + "]";
      }
      trace->push_back(line);
    }
  }
  return out;
}

void ValidateSeats(const ReserveInstance& inst, const Seats& seats,
                   const std::string& where, std::vector<std::string>& errors) {
  const int nc = inst.num_categories();
  if (static_cast<int>(seats.capacity.size()) != nc ||
      static_cast<int>(seats.hr_reserve.size()) != nc) {
    errors.push_back(where + "every category needs a capacity");
    return;
  }
  for (int v = 0; v < nc; ++v) {
    const std::string& name = inst.names.resources[v];
    if (seats.capacity[v] < 0) {
      errors.push_back(where + "capacity of " + name + " must be >= 0");
    }
    if (static_cast<int>(seats.hr_reserve[v].size()) != inst.num_groups()) {
      errors.push_back(where + "hr_reserves of " + name +
                       " must list every HR group");
      continue;
    }
    int total = 0;
    for (int r : seats.hr_reserve[v]) {
      if (r < 0) errors.push_back(where + "hr_reserves of " + name + " negative");
      total += r;
    }
    if (total > seats.capacity[v]) {
      errors.push_back(where + "hr_reserve exceeds capacity in category " + name);
    }
  }
}

}  // namespace

bool ReserveInstance::HasTrait(int applicant, int group) const {
  const auto& t = hr[applicant];
  return std::find(t.begin(), t.end(), group) != t.end();
}

bool ReserveInstance::HrNonOverlapping() const {
  for (const auto& t : hr) {
    if (t.size() > 1) return false;
  }
  return true;
}

std::vector<int> ReserveInstance::ByMerit() const {
  return SortByMerit(*this, Iota(num_applicants()));
}

std::vector<std::string> Validate(const ReserveInstance& inst) {
  std::vector<std::string> errors;
  const int n = inst.num_applicants();
  const int nc = inst.num_categories();
  if (nc < 1) errors.push_back("at least the open category is required");
  std::vector<int> order = inst.ByMerit();
  for (int k = 1; k < n; ++k) {
    if (inst.merit[order[k]] == inst.merit[order[k - 1]]) {
      errors.push_back("merit ties are not allowed: " +
                       inst.names.agents[order[k - 1]] + " and " +
                       inst.names.agents[order[k]]);
    }
  }
  for (int a = 0; a < n; ++a) {
    if (inst.vr[a] < 0 || inst.vr[a] >= nc) {
      errors.push_back("dangling reference: category of " + inst.names.agents[a]);
    }
    std::set<int> seen;
    for (int g : inst.hr[a]) {
      if (g < 0 || g >= inst.num_groups()) {
        errors.push_back("dangling reference: HR group of " +
                         inst.names.agents[a]);
      } else if (!seen.insert(g).second) {
        errors.push_back("duplicate HR group for " + inst.names.agents[a]);
      }
    }
  }
  if (!inst.multi()) {
    ValidateSeats(inst, inst.seats, "", errors);
  } else {
    const int ni = static_cast<int>(inst.institutions.size());
    if (static_cast<int>(inst.institution_seats.size()) != ni) {
      errors.push_back("every institution needs categories");
    }
    for (int s = 0; s < std::min<int>(ni, inst.institution_seats.size()); ++s) {
      ValidateSeats(inst, inst.institution_seats[s],
                    inst.institutions[s] + ": ", errors);
    }
    if (static_cast<int>(inst.prefs.size()) != n) {
      errors.push_back("every applicant needs preferences");
    } else {
      for (int a = 0; a < n; ++a) {
        std::set<int> seen;
        for (int s : inst.prefs[a]) {
          if (s < 0 || s >= ni) {
            errors.push_back("dangling reference: ranking of " +
                             inst.names.agents[a]);
          } else if (!seen.insert(s).second) {
            errors.push_back("non-strict ranking: " + inst.names.agents[a]);
          }
        }
      }
    }
  }
  for (const Slot& slot : inst.precedence) {
    if (slot.category < 0 || slot.category >= nc ||
        slot.hr_group < -1 || slot.hr_group >= inst.num_groups()) {
      errors.push_back("dangling reference: precedence slot");
    }
  }
  return errors;
}

int HonoredHr(const ReserveInstance& inst, const Seats& seats, int category,
              const std::vector<int>& members, std::vector<int>* group_of) {
  std::vector<int> unit_group;
  for (int g = 0; g < inst.num_groups(); ++g) {
    for (int k = 0; k < seats.hr_reserve[category][g]; ++k) {
      unit_group.push_back(g);
    }
  }
  std::vector<std::vector<int>> adj(members.size());
  for (size_t m = 0; m < members.size(); ++m) {
    for (size_t u = 0; u < unit_group.size(); ++u) {
      if (inst.HasTrait(members[m], unit_group[u])) adj[m].push_back(u);
    }
  }
  std::vector<int> unit_owner(unit_group.size(), -1);
  int size = 0;
  for (size_t m = 0; m < members.size(); ++m) {
    std::vector<bool> seen(unit_group.size(), false);
    if (Augment(m, adj, unit_owner, seen)) ++size;
  }
  if (group_of) {
    group_of->assign(members.size(), -1);
    for (size_t u = 0; u < unit_group.size(); ++u) {
      if (unit_owner[u] >= 0) (*group_of)[unit_owner[u]] = unit_group[u];
    }
  }
  return size;
}

Allocation ReserveSequenceChoice(const ReserveInstance& inst,
                                 const std::vector<Slot>& slots) {
  Allocation out(inst.num_applicants());
  const auto order = inst.ByMerit();
  for (int k = 0; k < static_cast<int>(slots.size()); ++k) {
    const Slot& slot = slots[k];
    int pick = -1;
    for (int a : order) {
      if (out.resource[a] != kUnmatched) continue;
      if (!inst.Eligible(a, slot.category)) continue;
      if (slot.hr_group >= 0 && !inst.HasTrait(a, slot.hr_group)) continue;
      pick = a;
      break;
    }
    if (pick >= 0) {
      out.Assign(pick, slot.category, k, slot.hr_group);
      continue;
    }
    // An HR position nobody in the group can take reverts to its category.
    if (slot.hr_group < 0) continue;
    for (int a : order) {
      if (out.resource[a] == kUnmatched && inst.Eligible(a, slot.category)) {
        out.Assign(a, slot.category, k, -1);
        break;
      }
    }
  }
  return out;
}

std::vector<Slot> MakePrecedence(PrecedenceKind kind, int open, int reserved,
                                 Slot reserved_slot) {
  std::vector<Slot> out;
  auto add = [&](int count, Slot s) { out.insert(out.end(), count, s); };
  switch (kind) {
    case PrecedenceKind::kOpenFirst:
      add(open, Slot{});
      add(reserved, reserved_slot);
      break;
    case PrecedenceKind::kReservedFirst:
      add(reserved, reserved_slot);
      add(open, Slot{});
      break;
    case PrecedenceKind::kCompromise:
      add(reserved / 2, reserved_slot);
      add(open, Slot{});
      add(reserved - reserved / 2, reserved_slot);
      break;
  }
  return out;
}

std::vector<Pick> MinimumGuarantee(const ReserveInstance& inst,
                                   const Seats& seats, int category,
                                   const std::vector<int>& pool) {
  const auto order = SortByMerit(inst, pool);
  std::vector<Pick> picks;
  std::set<int> taken;
  for (int g = 0; g < inst.num_groups(); ++g) {
    int left = seats.hr_reserve[category][g];
    for (int a : order) {
      if (left == 0) break;
      if (taken.count(a) || !inst.HasTrait(a, g)) continue;
      picks.push_back({a, category, g});
      taken.insert(a);
      --left;
    }
  }
  for (int a : order) {
    if (static_cast<int>(picks.size()) >= seats.capacity[category]) break;
    if (taken.count(a)) continue;
    picks.push_back({a, category, -1});
    taken.insert(a);
  }
  return picks;
}

std::vector<Pick> MeritoriousHorizontal(const ReserveInstance& inst,
                                        const Seats& seats, int category,
                                        const std::vector<int>& pool) {
  const auto order = SortByMerit(inst, pool);
  const int units = std::accumulate(seats.hr_reserve[category].begin(),
                                    seats.hr_reserve[category].end(), 0);
  std::vector<int> beneficiaries;
  for (int a : order) {
    if (static_cast<int>(beneficiaries.size()) == units) break;
    beneficiaries.push_back(a);
    if (HonoredHr(inst, seats, category, beneficiaries) !=
        static_cast<int>(beneficiaries.size())) {
      beneficiaries.pop_back();
    }
  }
  std::vector<int> group_of;
  HonoredHr(inst, seats, category, beneficiaries, &group_of);
  std::vector<Pick> picks;
  std::set<int> taken(beneficiaries.begin(), beneficiaries.end());
  for (size_t k = 0; k < beneficiaries.size(); ++k) {
    picks.push_back({beneficiaries[k], category, group_of[k]});
  }
  for (int a : order) {
    if (static_cast<int>(picks.size()) >= seats.capacity[category]) break;
    if (taken.count(a)) continue;
    picks.push_back({a, category, -1});
    taken.insert(a);
  }
  return picks;
}

std::vector<Pick> Tsmg(const ReserveInstance& inst, const Seats& seats,
                       const std::vector<int>& pool) {
  return TwoStep(inst, seats, pool, pool, MinimumGuarantee);
}

std::vector<Pick> Tsmh(const ReserveInstance& inst, const Seats& seats,
                       const std::vector<int>& pool) {
  return TwoStep(inst, seats, pool, pool, MeritoriousHorizontal);
}

std::vector<Pick> SciAkg(const ReserveInstance& inst, const Seats& seats,
                         const std::vector<int>& pool) {
  // Open competition is limited to general applicants plus those reserved
  // applicants who make the open cut on merit alone.
  const auto order = SortByMerit(inst, pool);
  std::vector<int> open_pool;
  for (int k = 0; k < static_cast<int>(order.size()); ++k) {
    if (inst.vr[order[k]] == kOpen || k < seats.capacity[kOpen]) {
      open_pool.push_back(order[k]);
    }
  }
  return TwoStep(inst, seats, pool, open_pool, MinimumGuarantee);
}

Allocation TsmgChoice(const ReserveInstance& inst, Trace* trace) {
  return ToAllocation(inst, Tsmg(inst, inst.seats, Iota(inst.num_applicants())),
                      trace);
}

Allocation TsmhChoice(const ReserveInstance& inst, Trace* trace) {
  return ToAllocation(inst, Tsmh(inst, inst.seats, Iota(inst.num_applicants())),
                      trace);
}

Allocation SciAkgChoice(const ReserveInstance& inst, Trace* trace) {
  return ToAllocation(
      inst, SciAkg(inst, inst.seats, Iota(inst.num_applicants())), trace);
}

Allocation TsmhDa(const ReserveInstance& inst, Trace* trace) {
  const int n = inst.num_applicants();
  const int ni = static_cast<int>(inst.institutions.size());
  std::vector<size_t> next(n, 0);
  std::vector<std::vector<Pick>> held(ni);
  std::vector<bool> is_held(n, false);
  for (int round = 1;; ++round) {
    std::vector<std::vector<int>> pool(ni);
    for (int s = 0; s < ni; ++s) {
      for (const Pick& p : held[s]) pool[s].push_back(p.applicant);
    }
    bool any = false;
    for (int a = 0; a < n; ++a) {
      if (is_held[a] || next[a] >= inst.prefs[a].size()) continue;
      pool[inst.prefs[a][next[a]++]].push_back(a);
      any = true;
    }
    if (!any) break;
    std::string line = "round " + std::to_string(round) + ":";
    std::fill(is_held.begin(), is_held.end(), false);
    for (int s = 0; s < ni; ++s) {
      held[s] = Tsmh(inst, inst.institution_seats[s], pool[s]);
      line += " " + inst.institutions[s] + "{";
      for (const Pick& p : held[s]) {
        is_held[p.applicant] = true;
        line += inst.names.agents[p.applicant] + ",";
      }
      if (line.back() == ',') line.pop_back();
      line += "}";
    }
    if (trace) trace->push_back(line);
  }
  Allocation out(n);
  for (int s = 0; s < ni; ++s) {
    for (const Pick& p : held[s]) out.Assign(p.applicant, s, p.category, p.hr_group);
  }
  return out;
}

}  // namespace mdtk::reserves
