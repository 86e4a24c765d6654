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

#include "mdtk/axioms.h"

#include <algorithm>
#include <array>
#include <functional>
#include <map>
#include <set>
#include <sstream>

namespace mdtk::axioms {
namespace {

using contracts::ContractsInstance;
using exchange::ExchangePool;
using onesided::HousingInstance;
using reserves::ReserveInstance;
using reserves::Seats;
using twosided::SchoolInstance;

const std::vector<std::string> kAxioms = {
    "IR",           "PE",  "NW",           "NJE",
    "NJE-basic",    "NJE-india",           "NJE-india-hetero",
    "stability",    "NPR", "scheme-respect", "VR-compliance",
    "max-HR-accommodation"};

Verdict Violated(std::string axiom, std::vector<int> agents,
                 std::vector<int> items, std::string replay) {
  Verdict v;
  v.holds = false;
  v.witness = Witness{std::move(axiom), std::move(agents), std::move(items),
                      {}, std::move(replay), false};
  return v;
}

std::string Agent(const Instance& inst, int a) { return AgentName(inst, a); }

// ---------------------------------------------------------------- housing

Verdict HousingIr(const HousingInstance& h, const Allocation& a) {
  for (int i = 0; i < h.num_agents(); ++i) {
    const int got = a.resource[i];
    const Ranking& r = h.prefs[i];
    bool bad = got != kUnmatched && RankOf(r, got) < 0;
    if (h.endowment[i] != kUnmatched &&
        OutcomeRank(r, got) > OutcomeRank(r, h.endowment[i])) {
      bad = true;
    }
    if (bad) {
      return Violated("IR", {i}, {got},
                      h.names.agents[i] + " is worse off than their endowment "
                      "or holds an unacceptable house");
    }
  }
  return {};
}

Verdict HousingNw(const HousingInstance& h, const Allocation& a) {
  std::vector<bool> used(h.num_houses(), false);
  for (int r : a.resource) {
    if (r >= 0) used[r] = true;
  }
  for (int i = 0; i < h.num_agents(); ++i) {
    for (int house = 0; house < h.num_houses(); ++house) {
      if (!used[house] && Prefers(h.prefs[i], house, a.resource[i])) {
        return Violated("NW", {i}, {house},
                        h.names.agents[i] + " prefers the empty house " +
                            h.names.resources[house]);
      }
    }
  }
  return {};
}

// ------------------------------------------------------------- two-sided

bool TwoIrFails(const SchoolInstance& s, const std::vector<std::vector<int>>& rank,
                const Allocation& a, int i) {
  const int got = a.resource[i];
  return got != kUnmatched && (RankOf(s.prefs[i], got) < 0 || rank[got][i] < 0);
}

Verdict TwoIr(const SchoolInstance& s, const Allocation& a) {
  const auto rank = s.PriorityRanks();
  for (int i = 0; i < s.num_students(); ++i) {
    if (TwoIrFails(s, rank, a, i)) {
      return Violated("IR", {i}, {a.resource[i]},
                      s.names.agents[i] + " is placed at " +
                          s.names.resources[a.resource[i]] +
                          ", which they find unacceptable or are ineligible for");
    }
  }
  return {};
}

std::vector<int> SchoolCounts(const SchoolInstance& s, const Allocation& a) {
  std::vector<int> count(s.num_schools(), 0);
  for (int r : a.resource) {
    if (r >= 0) ++count[r];
  }
  return count;
}

Verdict TwoNw(const SchoolInstance& s, const Allocation& a) {
  const auto rank = s.PriorityRanks();
  const auto count = SchoolCounts(s, a);
  for (int i = 0; i < s.num_students(); ++i) {
    for (int sc = 0; sc < s.num_schools(); ++sc) {
      if (count[sc] < s.capacity[sc] && rank[sc][i] >= 0 &&
          Prefers(s.prefs[i], sc, a.resource[i])) {
        return Violated("NW", {i}, {sc},
                        s.names.agents[i] + " prefers " + s.names.resources[sc] +
                            ", which has an idle seat");
      }
    }
  }
  return {};
}

bool TwoEnvy(const SchoolInstance& s, const std::vector<std::vector<int>>& rank,
             const Allocation& a, int i, int j, int sc) {
  return i != j && a.resource[j] == sc && rank[sc][i] >= 0 &&
         rank[sc][i] < rank[sc][j] && Prefers(s.prefs[i], sc, a.resource[i]);
}

Verdict TwoNje(const SchoolInstance& s, const Allocation& a,
               const std::string& name) {
  const auto rank = s.PriorityRanks();
  for (int i = 0; i < s.num_students(); ++i) {
    for (int sc = 0; sc < s.num_schools(); ++sc) {
      for (int j = 0; j < s.num_students(); ++j) {
        if (TwoEnvy(s, rank, a, i, j, sc)) {
          return Violated(name, {i, j}, {sc},
                          s.names.agents[i] + " has justified envy toward " +
                              s.names.agents[j] + " at " +
                              s.names.resources[sc]);
        }
      }
    }
  }
  return {};
}

Verdict TwoStability(const SchoolInstance& s, const Allocation& a) {
  Verdict ir = TwoIr(s, a);
  if (!ir.holds) {
    ir.witness->axiom = "stability";
    return ir;
  }
  const auto rank = s.PriorityRanks();
  const auto count = SchoolCounts(s, a);
  for (int i = 0; i < s.num_students(); ++i) {
    for (int sc = 0; sc < s.num_schools(); ++sc) {
      if (rank[sc][i] < 0 || !Prefers(s.prefs[i], sc, a.resource[i])) continue;
      if (count[sc] < s.capacity[sc]) {
        return Violated("stability", {i}, {sc},
                        s.names.agents[i] + " and " + s.names.resources[sc] +
                            " block: idle seat");
      }
      for (int j = 0; j < s.num_students(); ++j) {
        if (TwoEnvy(s, rank, a, i, j, sc)) {
          return Violated("stability", {i, j}, {sc},
                          s.names.agents[i] + " and " + s.names.resources[sc] +
                              " block, displacing " + s.names.agents[j]);
        }
      }
    }
  }
  return {};
}

// ------------------------------------------------------------- contracts

struct ArmyView {
  const ContractsInstance& c;
  const Allocation& a;
  std::vector<Ranking> items;
  std::vector<int> oml;
  explicit ArmyView(const ContractsInstance& ci, const Allocation& al)
      : c(ci), a(al), oml(ci.OmlRank()) {
    for (int k = 0; k < c.num_cadets(); ++k) items.push_back(c.ItemRanking(k));
  }
  int Own(int k) const {
    return a.resource[k] == kUnmatched ? kUnmatched
                                       : c.ItemOf({a.resource[k], a.label[k]});
  }
  std::string Term(int item) const {
    auto t = c.TermOf(item);
    return "(" + c.names.resources[t.branch] + "," + c.tiers[t.tier] + ")";
  }
  bool ElevatedFeasible(int cadet, int d, int b, int t_new) const {
    int nonbase = 0;
    for (int k = 0; k < c.num_cadets(); ++k) {
      if (k != d && k != cadet && a.resource[k] == b && a.label[k] > 0) ++nonbase;
    }
    return nonbase + (t_new > 0 ? 1 : 0) <= c.branches[b].flexible;
  }
};

Verdict ArmyIr(const ArmyView& v) {
  for (int k = 0; k < v.c.num_cadets(); ++k) {
    int own = v.Own(k);
    if (own != kUnmatched && RankOf(v.items[k], own) < 0) {
      return Violated("IR", {k}, {own},
                      v.c.names.agents[k] + " did not list " + v.Term(own));
    }
  }
  return {};
}

Verdict ArmyNw(const ArmyView& v) {
  std::vector<int> count(v.c.num_branches(), 0);
  for (int r : v.a.resource) {
    if (r >= 0) ++count[r];
  }
  for (int b = 0; b < v.c.num_branches(); ++b) {
    if (count[b] >= v.c.branches[b].capacity) continue;
    const int base = v.c.ItemOf({b, 0});
    for (int k = 0; k < v.c.num_cadets(); ++k) {
      if (Prefers(v.items[k], base, v.Own(k))) {
        return Violated("NW", {k}, {base},
                        v.c.names.agents[k] + " prefers " + v.Term(base) +
                            " and " + v.c.names.resources[b] +
                            " has an idle position");
      }
    }
  }
  return {};
}

bool NprClaim(const ArmyView& v, int c, int d) {
  if (c == d || v.a.resource[d] == kUnmatched) return false;
  return v.oml[c] < v.oml[d] && Prefers(v.items[c], v.Own(d), v.Own(c));
}

Verdict ArmyNpr(const ArmyView& v) {
  for (int c = 0; c < v.c.num_cadets(); ++c) {
    for (int d = 0; d < v.c.num_cadets(); ++d) {
      if (NprClaim(v, c, d)) {
        return Violated("NPR", {c, d}, {v.Own(d)},
                        v.c.names.agents[c] + " has a higher OML ranking than " +
                            v.c.names.agents[d] + " and prefers " +
                            v.Term(v.Own(d)));
      }
    }
  }
  return {};
}

bool SchemeClaim(const ArmyView& v, const std::vector<std::vector<int>>& ranks,
                 int c, int d, int t_new) {
  if (c == d || v.a.resource[d] == kUnmatched) return false;
  const int b = v.a.resource[d];
  const int t = v.a.label[d];
  const int T = v.c.num_tiers();
  if (t_new == t || t_new < 0 || t_new >= T) return false;
  if (!Prefers(v.items[c], v.c.ItemOf({b, t_new}), v.Own(c))) return false;
  if (ranks[b][c * T + t_new] > ranks[b][d * T + t]) return false;
  return t_new < t || v.ElevatedFeasible(c, d, b, t_new);
}

Verdict ArmyScheme(const ArmyView& v) {
  std::vector<std::vector<int>> ranks;
  for (int b = 0; b < v.c.num_branches(); ++b) {
    ranks.push_back(contracts::SchemeRanks(v.c, b));
  }
  for (int c = 0; c < v.c.num_cadets(); ++c) {
    for (int d = 0; d < v.c.num_cadets(); ++d) {
      for (int t = 0; t < v.c.num_tiers(); ++t) {
        if (!SchemeClaim(v, ranks, c, d, t)) continue;
        const int claimed = v.c.ItemOf({v.a.resource[d], t});
        return Violated(
            "scheme-respect", {c, d}, {claimed, v.Own(d)},
            v.c.names.agents[c] + " has a legitimate claim for a price-" +
                (t > v.a.label[d] ? "elevated" : "reduced") + " version of " +
                v.c.names.agents[d] + "'s " + v.Term(v.Own(d)) + ": " +
                v.Term(claimed));
      }
    }
  }
  return {};
}

// -------------------------------------------------------------- reserves

std::vector<int> Without(std::vector<int> v, int x) {
  std::erase(v, x);
  return v;
}

std::vector<int> With(std::vector<int> v, int x) {
  v.push_back(x);
  return v;
}

// Honored-HR counts for one (institution, category) holder set S under
// single swaps: H(S + i) and H(S - j + i) for every holder j, from one
// augmentation and one alternating search per newcomer i.
class HrSwap {
 public:
  HrSwap(const ReserveInstance& r, const Seats& seats, int c,
         std::vector<int> members)
      : r_(r), members_(std::move(members)) {
    for (int g = 0; g < r.num_groups(); ++g) {
      for (int k = 0; k < seats.hr_reserve[c][g]; ++k) unit_group_.push_back(g);
    }
    for (int m : members_) adj_.push_back(Units(m));
    owner_.assign(unit_group_.size(), -1);
    for (size_t m = 0; m < members_.size(); ++m) {
      std::vector<bool> seen(unit_group_.size(), false);
      if (Augment(static_cast<int>(m), adj_, owner_, seen)) ++base_;
    }
  }

  int Base() const { return base_; }

  struct Row {
    int plus = 0;                   // H(S + i)
    std::map<int, int> swap;        // holder j -> H(S - j + i)
  };

  Row For(int i) const {
    auto adj = adj_;
    adj.push_back(Units(i));
    auto owner = owner_;
    const int n = static_cast<int>(adj.size());
    std::vector<bool> seen(unit_group_.size(), false);
    Row row;
    row.plus = base_ + (Augment(n - 1, adj, owner, seen) ? 1 : 0);
    // Nodes some maximum matching leaves uncovered: start from the uncovered
    // ones and walk back along matched units.
    std::vector<bool> matched(n, false), free_node(n, false);
    for (int o : owner) {
      if (o >= 0) matched[o] = true;
    }
    std::vector<int> queue;
    for (int x = 0; x < n; ++x) {
      if (!matched[x]) {
        free_node[x] = true;
        queue.push_back(x);
      }
    }
    for (size_t q = 0; q < queue.size(); ++q) {
      for (int u : adj[queue[q]]) {
        const int y = owner[u];
        if (y >= 0 && !free_node[y]) {
          free_node[y] = true;
          queue.push_back(y);
        }
      }
    }
    for (int m = 0; m + 1 < n; ++m) {
      row.swap[members_[m]] = row.plus - (free_node[m] ? 0 : 1);
    }
    return row;
  }

 private:
  std::vector<int> Units(int applicant) const {
    std::vector<int> out;
    for (size_t u = 0; u < unit_group_.size(); ++u) {
      if (r_.HasTrait(applicant, unit_group_[u])) out.push_back(static_cast<int>(u));
    }
    return out;
  }

  static bool Augment(int x, const std::vector<std::vector<int>>& adj,
                      std::vector<int>& owner, std::vector<bool>& seen) {
    for (int u : adj[x]) {
      if (seen[u]) continue;
      seen[u] = true;
      if (owner[u] < 0 || Augment(owner[u], adj, owner, seen)) {
        owner[u] = x;
        return true;
      }
    }
    return false;
  }

  const ReserveInstance& r_;
  std::vector<int> members_;
  std::vector<int> unit_group_;
  std::vector<std::vector<int>> adj_;
  std::vector<int> owner_;
  int base_ = 0;
};

struct ReserveView {
  ReserveView(const ReserveInstance& r_in, const Allocation& a_in)
      : r(r_in), a(a_in) {}
  const ReserveInstance& r;
  const Allocation& a;
  mutable std::map<std::pair<int, int>, std::vector<int>> members_cache;
  mutable std::map<std::pair<int, int>, HrSwap> swap_cache;
  mutable std::map<std::array<int, 3>, HrSwap::Row> row_cache;

  const HrSwap& Swap(int s, int v) const {
    auto key = std::make_pair(s, v);
    auto it = swap_cache.find(key);
    if (it == swap_cache.end()) {
      it = swap_cache.emplace(key, HrSwap(r, SeatsAt(s), v, Members(s, v))).first;
    }
    return it->second;
  }
  const HrSwap::Row& RowFor(int s, int v, int i) const {
    std::array<int, 3> key{s, v, i};
    auto it = row_cache.find(key);
    if (it == row_cache.end()) it = row_cache.emplace(key, Swap(s, v).For(i)).first;
    return it->second;
  }
  bool IsMember(int s, int v, int i) const {
    return InstitutionOf(i) == s && CategoryOf(i) == v;
  }
  int Base(int s, int v) const { return Swap(s, v).Base(); }
  // H(S + i) for a non-holder i.
  int Plus(int s, int v, int i) const {
    if (IsMember(s, v, i)) return Base(s, v);
    return RowFor(s, v, i).plus;
  }
  // H(S - j + i) for holder j and non-holder i.
  int Swapped(int s, int v, int j, int i) const {
    if (IsMember(s, v, i)) return H(s, v, With(Without(Members(s, v), j), i));
    return RowFor(s, v, i).swap.at(j);
  }
  int Institutions() const {
    return r.multi() ? static_cast<int>(r.institutions.size()) : 1;
  }
  const Seats& SeatsAt(int s) const {
    return r.multi() ? r.institution_seats[s] : r.seats;
  }
  int InstitutionOf(int i) const {
    return r.multi() ? a.resource[i] : (a.resource[i] == kUnmatched ? -1 : 0);
  }
  int CategoryOf(int i) const {
    return r.multi() ? a.label[i] : a.resource[i];
  }
  const std::vector<int>& Members(int s, int v) const {
    auto key = std::make_pair(s, v);
    auto it = members_cache.find(key);
    if (it == members_cache.end()) {
      std::vector<int> out;
      for (int i = 0; i < r.num_applicants(); ++i) {
        if (InstitutionOf(i) == s && CategoryOf(i) == v) out.push_back(i);
      }
      it = members_cache.emplace(key, std::move(out)).first;
    }
    return it->second;
  }
  int H(int s, int v, const std::vector<int>& members) const {
    return reserves::HonoredHr(r, SeatsAt(s), v, members);
  }
  std::vector<int> Items(int s, int v) const {
    return r.multi() ? std::vector<int>{s, v} : std::vector<int>{v};
  }
  std::string Where(int s, int v) const {
    return (r.multi() ? r.institutions[s] + "/" : std::string()) +
           r.names.resources[v];
  }
  // Hetero claims need a strict preference for s; single-institution claims
  // need the claimant to be unassigned.
  bool Wants(int i, int s) const {
    if (!r.multi()) return a.resource[i] == kUnmatched;
    return Prefers(r.prefs[i], s, a.resource[i]);
  }
};

Verdict ReserveIr(const ReserveView& v) {
  for (int i = 0; i < v.r.num_applicants(); ++i) {
    int s = v.a.resource[i];
    if (s != kUnmatched && RankOf(v.r.prefs[i], s) < 0) {
      return Violated("IR", {i}, {s},
                      v.r.names.agents[i] + " did not list " +
                          v.r.institutions[s]);
    }
  }
  return {};
}

Verdict ReserveNw(const ReserveView& v) {
  for (int s = 0; s < v.Institutions(); ++s) {
    for (int c = 0; c < v.r.num_categories(); ++c) {
      if (static_cast<int>(v.Members(s, c).size()) >= v.SeatsAt(s).capacity[c]) {
        continue;
      }
      for (int i = 0; i < v.r.num_applicants(); ++i) {
        if (v.r.Eligible(i, c) && v.Wants(i, s)) {
          return Violated("NW", {i}, v.Items(s, c),
                          v.r.names.agents[i] + " is eligible for an idle " +
                              v.Where(s, c) + " position");
        }
      }
    }
  }
  return {};
}

bool IndiaEnvy(const ReserveView& v, int i, int j, int s, int c) {
  if (i == j || v.InstitutionOf(j) != s || v.CategoryOf(j) != c) return false;
  if (!v.r.Eligible(i, c) || !v.Wants(i, s)) return false;
  if (v.r.merit[i] <= v.r.merit[j]) return false;
  return v.Swapped(s, c, j, i) >= v.Base(s, c);
}

Verdict ReserveNje(const ReserveView& v, const std::string& name) {
  Verdict out;
  for (int i = 0; i < v.r.num_applicants(); ++i) {
    for (int s = 0; s < v.Institutions(); ++s) {
      for (int c = 0; c < v.r.num_categories(); ++c) {
        for (int j = 0; j < v.r.num_applicants(); ++j) {
          if (!IndiaEnvy(v, i, j, s, c)) continue;
          // Stepping into j's own labelled slot needs no one else to move.
          const bool third = v.a.slot[j] >= 0 && !v.r.HasTrait(i, v.a.slot[j]);
          Witness w{name, {i, j}, v.Items(s, c), {},
                    v.r.names.agents[i] + " has justified envy toward " +
                        v.r.names.agents[j] + " in " + v.Where(s, c),
                    third};
          if (third) out.flagged.push_back(w);
          if (out.holds) {
            out.holds = false;
            out.witness = w;
          }
        }
      }
    }
  }
  return out;
}

// Can i, placed in (s, c) with or without displacing someone, raise the
// number of honored HR positions there? Returns the displaced applicant
// (-1 for an idle seat) or -2 when not.
int HrGain(const ReserveView& v, int i, int s, int c) {
  const auto& members = v.Members(s, c);
  const int base = v.Base(s, c);
  if (static_cast<int>(members.size()) < v.SeatsAt(s).capacity[c] &&
      v.Plus(s, c, i) > base) {
    return -1;
  }
  if (v.Plus(s, c, i) <= base) return -2;
  for (int j : members) {
    if (v.Swapped(s, c, j, i) > base) return j;
  }
  return -2;
}

bool MahrClaim(const ReserveView& v, int i, int s, int c) {
  if (!v.r.Eligible(i, c)) return false;
  if (v.r.multi()) {
    if (v.a.resource[i] == s) return false;
    if (Prefers(v.r.prefs[i], v.a.resource[i], s)) return false;
  } else if (v.a.resource[i] != kUnmatched) {
    return false;
  }
  return HrGain(v, i, s, c) != -2;
}

Verdict ReserveMahr(const ReserveView& v) {
  for (int i = 0; i < v.r.num_applicants(); ++i) {
    for (int s = 0; s < v.Institutions(); ++s) {
      for (int c = 0; c < v.r.num_categories(); ++c) {
        if (!MahrClaim(v, i, s, c)) continue;
        const int j = HrGain(v, i, s, c);
        std::vector<int> agents{i};
        if (j >= 0) agents.push_back(j);
        return Violated("max-HR-accommodation", agents, v.Items(s, c),
                        v.r.names.agents[i] + " would raise the honored HR "
                        "positions in " + v.Where(s, c) +
                            (j >= 0 ? " by replacing " + v.r.names.agents[j]
                                    : std::string(" through an idle seat")));
      }
    }
  }
  return {};
}

// 0 when compliant, else the failed condition (1..3); `other` gets the open
// holder involved, -1 if none.
int VrFailure(const ReserveView& v, int i, int* other) {
  *other = -1;
  const int s = v.InstitutionOf(i);
  const auto& open = v.Members(s, reserves::kOpen);
  const int cap = v.SeatsAt(s).capacity[reserves::kOpen];
  if (static_cast<int>(open.size()) < cap) return 1;
  const int h = v.Base(s, reserves::kOpen);
  for (int j : open) {
    const int swapped = v.Swapped(s, reserves::kOpen, j, i);
    if (v.r.merit[j] < v.r.merit[i] && swapped >= h) {
      *other = j;
      return 2;
    }
    if (swapped > h) {
      *other = j;
      return 3;
    }
  }
  return 0;
}

Verdict ReserveVr(const ReserveView& v) {
  for (int i = 0; i < v.r.num_applicants(); ++i) {
    const int c = v.CategoryOf(i);
    if (v.InstitutionOf(i) < 0 || c == reserves::kOpen) continue;
    int j;
    const int cond = VrFailure(v, i, &j);
    if (cond == 0) continue;
    std::vector<int> agents{i};
    if (j >= 0) agents.push_back(j);
    auto items = v.Items(v.InstitutionOf(i), c);
    items.push_back(cond);
    return Violated("VR-compliance", agents, items,
                    v.r.names.agents[i] + " holds a " +
                        v.Where(v.InstitutionOf(i), c) +
                        " position although condition " + std::to_string(cond) +
                        " fails" +
                        (j >= 0 ? " against " + v.r.names.agents[j] : ""));
  }
  return {};
}

// -------------------------------------------------------------- exchange

bool ExchangeIrFails(const ExchangePool& p, const Allocation& a, int i) {
  const int got = a.resource[i];
  if (got == kUnmatched) return false;
  if (p.HasPreferences()) return RankOf(p.prefs[i], got) < 0;
  return got == kWaitlist || !p.compatible[got][i];
}

Verdict ExchangeIr(const ExchangePool& p, const Allocation& a) {
  for (int i = 0; i < p.num_pairs(); ++i) {
    if (ExchangeIrFails(p, a, i)) {
      return Violated("IR", {i}, {a.resource[i]},
                      p.names.agents[i] + " receives an unacceptable kidney");
    }
  }
  return {};
}

// ------------------------------------------------------------ generic PE

std::vector<int> Items(const Instance& inst, const Allocation& a) {
  std::vector<int> out;
  for (int i = 0; i < a.size(); ++i) out.push_back(OutcomeItem(inst, a, i));
  return out;
}

bool Dominates(const Instance& inst, const std::vector<int>& better,
               const std::vector<int>& base, int* strict_agent) {
  bool strict = false;
  for (int i = 0; i < static_cast<int>(base.size()); ++i) {
    const Ranking truth = GetReport(inst, i);
    const int rb = OutcomeRank(truth, better[i]);
    const int ra = OutcomeRank(truth, base[i]);
    if (rb > ra) return false;
    if (rb < ra && !strict) {
      strict = true;
      *strict_agent = i;
    }
  }
  return strict;
}

Verdict GenericPe(const Instance& inst, const Allocation& a) {
  const auto base = Items(inst, a);
  for (const Allocation& b : EnumerateFeasible(inst)) {
    const auto better = Items(inst, b);
    int who = -1;
    if (Dominates(inst, better, base, &who)) {
      Verdict v = Violated("PE", {who}, {better[who]},
                           "a feasible allocation makes nobody worse off and " +
                               Agent(inst, who) + " better off");
      v.witness->report = better;
      return v;
    }
  }
  return {};
}

// ------------------------------------------------------------ dispatch

std::string Canonical(const std::string& axiom) {
  if (axiom == "MAHR") return "max-HR-accommodation";
  if (axiom == "stable") return "stability";
  if (axiom == "SP" || axiom == "sp") return "strategy-proofness";
  if (axiom == "PI") return "priority-improvements";
  return axiom;
}

void Require(bool ok, const std::string& axiom, const Instance& inst) {
  if (!ok) {
    throw ValidationError({"axiom " + axiom + " does not apply to " +
                           FamilyName(FamilyOf(inst)) + " instances"});
  }
}

void EnumerateInto(const Instance& inst, Allocation& cur, int agent,
                   const std::function<bool(int, int, int)>& fits,
                   const std::function<void(int, int, int, int)>& apply,
                   const std::vector<std::array<int, 3>>& options,
                   std::vector<Allocation>& out) {
  if (agent == cur.size()) {
    out.push_back(cur);
    return;
  }
  EnumerateInto(inst, cur, agent + 1, fits, apply, options, out);
  for (const auto& o : options) {
    if (!fits(agent, o[0], o[1])) continue;
    cur.Assign(agent, o[0], o[1], o[2]);
    apply(agent, o[0], o[1], +1);
    EnumerateInto(inst, cur, agent + 1, fits, apply, options, out);
    apply(agent, o[0], o[1], -1);
    cur.Assign(agent, kUnmatched);
  }
}

}  // namespace

std::vector<std::string> KnownAxioms() { return kAxioms; }

bool Applies(const std::string& raw, const Instance& inst) {
  const std::string axiom = Canonical(raw);
  const Family f = FamilyOf(inst);
  const bool multi = f == Family::kReserves &&
                     std::get<ReserveInstance>(inst).multi();
  const bool single_res = f == Family::kReserves && !multi;
  if (axiom == "IR") return !single_res;
  if (axiom == "PE") return f != Family::kExchange && !single_res;
  if (axiom == "NW") return f != Family::kExchange;
  if (axiom == "NJE") {
    return f == Family::kTwoSided || f == Family::kContracts ||
           f == Family::kReserves;
  }
  if (axiom == "NJE-basic" || axiom == "stability") return f == Family::kTwoSided;
  if (axiom == "NJE-india") return single_res;
  if (axiom == "NJE-india-hetero") return multi;
  if (axiom == "NPR" || axiom == "scheme-respect") return f == Family::kContracts;
  if (axiom == "VR-compliance" || axiom == "max-HR-accommodation") {
    return f == Family::kReserves;
  }
  return false;
}

std::vector<std::string> ParseAxiomList(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto b = item.find_first_not_of(" \t");
    if (b == std::string::npos) continue;
    item = item.substr(b, item.find_last_not_of(" \t") - b + 1);
    out.push_back(Canonical(item));
  }
  return out;
}

std::vector<std::string> FeasibilityErrors(const Instance& inst,
                                           const Allocation& a) {
  std::vector<std::string> errors;
  const int n = std::visit([](const auto& x) {
    return static_cast<int>(x.names.agents.size());
  }, inst);
  if (a.size() != n || static_cast<int>(a.label.size()) != n ||
      static_cast<int>(a.slot.size()) != n) {
    return {"allocation must cover every agent"};
  }
  switch (FamilyOf(inst)) {
    case Family::kOneSided: {
      const auto& h = std::get<HousingInstance>(inst);
      std::set<int> used;
      for (int i = 0; i < n; ++i) {
        int r = a.resource[i];
        if (r == kUnmatched) continue;
        if (r < 0 || r >= h.num_houses()) {
          errors.push_back("unknown house for " + h.names.agents[i]);
        } else if (!used.insert(r).second) {
          errors.push_back("house " + h.names.resources[r] + " assigned twice");
        }
      }
      break;
    }
    case Family::kTwoSided: {
      const auto& s = std::get<SchoolInstance>(inst);
      std::vector<int> count(s.num_schools(), 0);
      for (int i = 0; i < n; ++i) {
        int r = a.resource[i];
        if (r == kUnmatched) continue;
        if (r < 0 || r >= s.num_schools()) {
          errors.push_back("unknown school for " + s.names.agents[i]);
        } else if (++count[r] > s.capacity[r]) {
          errors.push_back("capacity of " + s.names.resources[r] + " exceeded");
        }
      }
      break;
    }
    case Family::kContracts: {
      const auto& c = std::get<ContractsInstance>(inst);
      std::vector<int> count(c.num_branches(), 0), nonbase(c.num_branches(), 0);
      for (int i = 0; i < n; ++i) {
        int b = a.resource[i];
        if (b == kUnmatched) continue;
        if (b < 0 || b >= c.num_branches() || a.label[i] < 0 ||
            a.label[i] >= c.num_tiers()) {
          errors.push_back("unknown branch or price for " + c.names.agents[i]);
          continue;
        }
        if (++count[b] > c.branches[b].capacity) {
          errors.push_back("capacity of " + c.names.resources[b] + " exceeded");
        }
        if (a.label[i] > 0 && ++nonbase[b] > c.branches[b].flexible) {
          errors.push_back("flexible positions of " + c.names.resources[b] +
                           " exceeded");
        }
      }
      break;
    }
    case Family::kReserves: {
      const auto& r = std::get<ReserveInstance>(inst);
      const int ni = r.multi() ? static_cast<int>(r.institutions.size()) : 1;
      std::map<std::pair<int, int>, int> count;
      std::map<std::tuple<int, int, int>, int> slots;
      for (int i = 0; i < n; ++i) {
        if (a.resource[i] == kUnmatched) continue;
        int s = r.multi() ? a.resource[i] : 0;
        int v = r.multi() ? a.label[i] : a.resource[i];
        if (s < 0 || s >= ni || v < 0 || v >= r.num_categories()) {
          errors.push_back("unknown category for " + r.names.agents[i]);
          continue;
        }
        const Seats& seats = r.multi() ? r.institution_seats[s] : r.seats;
        if (!r.Eligible(i, v)) {
          errors.push_back(r.names.agents[i] + " is not eligible for " +
                           r.names.resources[v]);
        }
        if (++count[{s, v}] > seats.capacity[v]) {
          errors.push_back("capacity of " + r.names.resources[v] + " exceeded");
        }
        int g = a.slot[i];
        if (g >= 0) {
          if (g >= r.num_groups() || !r.HasTrait(i, g)) {
            errors.push_back(r.names.agents[i] + " cannot honor that HR slot");
          } else if (++slots[{s, v, g}] > seats.hr_reserve[v][g]) {
            errors.push_back("HR slots of " + r.hr_groups[g] + " exceeded");
          }
        }
      }
      break;
    }
    case Family::kExchange: {
      const auto& p = std::get<ExchangePool>(inst);
      std::set<int> used;
      for (int i = 0; i < n; ++i) {
        int k = a.resource[i];
        if (k == kUnmatched || k == kWaitlist) continue;
        if (k < 0 || k >= p.num_kidneys()) {
          errors.push_back("unknown kidney for " + p.names.agents[i]);
        } else if (!used.insert(k).second) {
          errors.push_back("kidney " + p.names.resources[k] + " used twice");
        }
      }
      break;
    }
  }
  return errors;
}

Verdict CheckAxiom(const Instance& inst, const Allocation& a,
                   const std::string& raw) {
  const std::string axiom = Canonical(raw);
  if (std::find(kAxioms.begin(), kAxioms.end(), axiom) == kAxioms.end()) {
    throw ValidationError({"unknown axiom: " + raw});
  }
  Require(Applies(axiom, inst), axiom, inst);
  if (axiom == "PE") return GenericPe(inst, a);
  switch (FamilyOf(inst)) {
    case Family::kOneSided: {
      const auto& h = std::get<HousingInstance>(inst);
      return axiom == "IR" ? HousingIr(h, a) : HousingNw(h, a);
    }
    case Family::kTwoSided: {
      const auto& s = std::get<SchoolInstance>(inst);
      if (axiom == "IR") return TwoIr(s, a);
      if (axiom == "NW") return TwoNw(s, a);
      if (axiom == "stability") return TwoStability(s, a);
      return TwoNje(s, a, axiom);
    }
    case Family::kContracts: {
      ArmyView v(std::get<ContractsInstance>(inst), a);
      if (axiom == "IR") return ArmyIr(v);
      if (axiom == "NW") return ArmyNw(v);
      if (axiom == "NPR") return ArmyNpr(v);
      if (axiom == "scheme-respect") return ArmyScheme(v);
      Verdict npr = ArmyNpr(v);
      if (!npr.holds) return npr;
      return ArmyScheme(v);
    }
    case Family::kReserves: {
      const auto& r = std::get<ReserveInstance>(inst);
      ReserveView v{r, a};
      if (axiom == "IR") return ReserveIr(v);
      if (axiom == "NW") return ReserveNw(v);
      if (axiom == "VR-compliance") return ReserveVr(v);
      if (axiom == "max-HR-accommodation") return ReserveMahr(v);
      if (axiom == "NJE") {
        return ReserveNje(v, r.multi() ? "NJE-india-hetero" : "NJE-india");
      }
      return ReserveNje(v, axiom);
    }
    case Family::kExchange:
      return ExchangeIr(std::get<ExchangePool>(inst), a);
  }
  return {};
}

AxiomReport CheckAllocation(const Instance& inst, const Allocation& a,
                            const std::vector<std::string>& axioms) {
  for (const auto& axiom : axioms) {
    const std::string c = Canonical(axiom);
    if (std::find(kAxioms.begin(), kAxioms.end(), c) == kAxioms.end()) {
      throw ValidationError({"unknown axiom: " + axiom});
    }
    Require(Applies(c, inst), c, inst);
  }
  auto errors = FeasibilityErrors(inst, a);
  if (!errors.empty()) throw ValidationError(errors);
  AxiomReport report;
  for (const auto& axiom : axioms) {
    report.push_back({axiom, CheckAxiom(inst, a, axiom)});
  }
  return report;
}

bool AllHold(const AxiomReport& report) {
  return std::all_of(report.begin(), report.end(),
                     [](const AxiomResult& r) { return r.verdict.holds; });
}

bool ReplayWitness(const Instance& inst, const Allocation& a,
                   const Witness& w) {
  const std::string axiom = Canonical(w.axiom);
  auto arg = [&](const std::vector<int>& v, size_t k) {
    return k < v.size() ? v[k] : -1;
  };
  const int i = arg(w.agents, 0), j = arg(w.agents, 1);
  if (axiom == "PE") {
    int who = -1;
    return Dominates(inst, w.report, Items(inst, a), &who);
  }
  switch (FamilyOf(inst)) {
    case Family::kOneSided: {
      const auto& h = std::get<HousingInstance>(inst);
      if (axiom == "IR") {
        const int got = a.resource[i];
        return (got != kUnmatched && RankOf(h.prefs[i], got) < 0) ||
               (h.endowment[i] != kUnmatched &&
                OutcomeRank(h.prefs[i], got) >
                    OutcomeRank(h.prefs[i], h.endowment[i]));
      }
      const int house = w.items[0];
      return std::find(a.resource.begin(), a.resource.end(), house) ==
                 a.resource.end() &&
             Prefers(h.prefs[i], house, a.resource[i]);
    }
    case Family::kTwoSided: {
      const auto& s = std::get<SchoolInstance>(inst);
      const auto rank = s.PriorityRanks();
      const int sc = w.items[0];
      if (axiom == "IR") return TwoIrFails(s, rank, a, i);
      if (axiom == "NW" || (axiom == "stability" && j < 0)) {
        if (axiom == "stability" && TwoIrFails(s, rank, a, i)) return true;
        return SchoolCounts(s, a)[sc] < s.capacity[sc] && rank[sc][i] >= 0 &&
               Prefers(s.prefs[i], sc, a.resource[i]);
      }
      return TwoEnvy(s, rank, a, i, j, sc);
    }
    case Family::kContracts: {
      ArmyView v(std::get<ContractsInstance>(inst), a);
      if (axiom == "IR") {
        return v.Own(i) != kUnmatched && RankOf(v.items[i], v.Own(i)) < 0;
      }
      if (axiom == "NW") {
        const auto t = v.c.TermOf(w.items[0]);
        int count = 0;
        for (int r : a.resource) count += (r == t.branch);
        return count < v.c.branches[t.branch].capacity &&
               Prefers(v.items[i], w.items[0], v.Own(i));
      }
      if (axiom == "NPR" || w.items.size() == 1) return NprClaim(v, i, j);
      std::vector<std::vector<int>> ranks;
      for (int b = 0; b < v.c.num_branches(); ++b) {
        ranks.push_back(contracts::SchemeRanks(v.c, b));
      }
      return v.Own(j) == w.items[1] &&
             SchemeClaim(v, ranks, i, j, v.c.TermOf(w.items[0]).tier);
    }
    case Family::kReserves: {
      const auto& r = std::get<ReserveInstance>(inst);
      ReserveView v{r, a};
      const int s = r.multi() ? w.items[0] : 0;
      const int c = r.multi() ? w.items[1] : w.items[0];
      if (axiom == "IR") {
        return a.resource[i] != kUnmatched && RankOf(r.prefs[i], a.resource[i]) < 0;
      }
      if (axiom == "NW") {
        return static_cast<int>(v.Members(s, c).size()) <
                   v.SeatsAt(s).capacity[c] &&
               r.Eligible(i, c) && v.Wants(i, s);
      }
      if (axiom == "max-HR-accommodation") return MahrClaim(v, i, s, c);
      if (axiom == "VR-compliance") {
        int other;
        return VrFailure(v, i, &other) == w.items.back();
      }
      return IndiaEnvy(v, i, j, s, c);
    }
    case Family::kExchange:
      return ExchangeIrFails(std::get<ExchangePool>(inst), a, i);
  }
  return false;
}

Caps Caps::Parse(const std::string& text) {
  Caps caps;
  Params p = Params::Parse(text);
  for (const auto& [k, v] : p.values()) {
    if (k != "agents" && k != "resources" && k != "tiers" && k != "enumerate" &&
        k != "units") {
      throw ValidationError({"unknown cap: " + k});
    }
  }
  caps.agents = p.GetInt("agents", caps.agents);
  caps.resources = p.GetInt("resources", caps.resources);
  caps.tiers = p.GetInt("tiers", caps.tiers);
  caps.enumerate_agents = p.GetInt("enumerate", caps.enumerate_agents);
  caps.enumerate_units = p.GetInt("units", caps.enumerate_units);
  return caps;
}

namespace {

void CheckGridCaps(const Instance& inst, const Caps& caps) {
  if (NumReporters(inst) > caps.agents) {
    throw CapError("more than " + std::to_string(caps.agents) + " agents");
  }
  if (FamilyOf(inst) == Family::kContracts) {
    const auto& c = std::get<ContractsInstance>(inst);
    if (c.num_branches() > caps.resources || c.num_tiers() > caps.tiers) {
      throw CapError("more than " + std::to_string(caps.resources) +
                     " branches or " + std::to_string(caps.tiers) + " tiers");
    }
  } else {
    int items = NumReportItems(inst);
    if (FamilyOf(inst) == Family::kExchange) --items;
    if (items > caps.resources) {
      throw CapError("more than " + std::to_string(caps.resources) +
                     " resources");
    }
  }
}

}  // namespace

Verdict CheckStrategyProofness(const MechanismCall& call, const Instance& inst,
                               const Caps& caps) {
  const Mechanism& mech = FindMechanism(call.name);
  if (mech.family != FamilyOf(inst)) {
    throw ValidationError({"mechanism " + mech.name + " expects a " +
                           FamilyName(mech.family) + " instance"});
  }
  RequireValid(inst);
  CheckGridCaps(inst, caps);
  const int n = NumReporters(inst);
  const int items = NumReportItems(inst);
  const auto reports = EnumerateRankings(items, items);
  const Allocation truthful = mech.run(inst, call.params, nullptr).allocation;
  for (int i = 0; i < n; ++i) {
    const Ranking truth = GetReport(inst, i);
    const int base = OutcomeItem(inst, truthful, i);
    for (const Ranking& r : reports) {
      if (r == truth) continue;
      Instance lie = inst;
      SetReport(lie, i, r);
      if (!ValidateInstance(lie).empty()) continue;
      const Allocation got = mech.run(lie, call.params, nullptr).allocation;
      const int item = OutcomeItem(lie, got, i);
      if (Prefers(truth, item, base)) {
        std::string shown;
        for (int x : r) shown += (shown.empty() ? "" : " ") + ItemName(inst, x);
        Verdict v = Violated(
            "strategy-proofness", {i}, {item, base},
            AgentName(inst, i) + " reports [" + shown + "] and gets " +
                ItemName(inst, item) + " instead of " + ItemName(inst, base));
        v.witness->report = r;
        return v;
      }
    }
  }
  return {};
}

bool ReplaySpWitness(const MechanismCall& call, const Instance& inst,
                     const Witness& w) {
  const Mechanism& mech = FindMechanism(call.name);
  const int i = w.agents.at(0);
  const Ranking truth = GetReport(inst, i);
  const int base = OutcomeItem(
      inst, mech.run(inst, call.params, nullptr).allocation, i);
  Instance lie = inst;
  SetReport(lie, i, w.report);
  const int got =
      OutcomeItem(lie, mech.run(lie, call.params, nullptr).allocation, i);
  return Prefers(truth, got, base);
}

namespace {

std::optional<SchoolInstance> RaiseOnce(const SchoolInstance& s, int i,
                                        int school) {
  SchoolInstance out = s;
  if (s.HasFields()) {
    const int f = s.field[school];
    auto& r = out.field_ranking[f];
    auto it = std::find(r.begin(), r.end(), i);
    if (it == r.end() || it == r.begin()) return std::nullopt;
    std::iter_swap(it, it - 1);
    for (int k = 0; k < s.num_schools(); ++k) {
      if (s.field[k] == f) out.priority[k] = r;
    }
    return out;
  }
  auto& r = out.priority[school];
  auto it = std::find(r.begin(), r.end(), i);
  if (it == r.end() || it == r.begin()) return std::nullopt;
  std::iter_swap(it, it - 1);
  return out;
}

}  // namespace

Verdict CheckPriorityImprovements(const MechanismCall& call,
                                  const Instance& inst, const Caps& caps) {
  const Mechanism& mech = FindMechanism(call.name);
  if (FamilyOf(inst) != Family::kTwoSided || mech.family != Family::kTwoSided) {
    throw ValidationError(
        {"priority improvements apply to two-sided mechanisms and instances"});
  }
  RequireValid(inst);
  CheckGridCaps(inst, caps);
  const auto& s = std::get<SchoolInstance>(inst);
  const Allocation before = mech.run(inst, call.params, nullptr).allocation;
  for (int i = 0; i < s.num_students(); ++i) {
    for (int school = 0; school < s.num_schools(); ++school) {
      auto raised = RaiseOnce(s, i, school);
      if (!raised) continue;
      const Allocation after =
          mech.run(Instance(*raised), call.params, nullptr).allocation;
      if (Prefers(s.prefs[i], before.resource[i], after.resource[i])) {
        return Violated(
            "priority-improvements", {i}, {school, after.resource[i]},
            s.names.agents[i] + " is raised at " + s.names.resources[school] +
                " and drops from " + ItemName(inst, before.resource[i]) +
                " to " + ItemName(inst, after.resource[i]));
      }
    }
  }
  return {};
}

std::vector<Allocation> EnumerateFeasible(const Instance& inst,
                                          const Caps& caps) {
  std::vector<Allocation> out;
  const int n = std::visit(
      [](const auto& x) { return static_cast<int>(x.names.agents.size()); },
      inst);
  if (n > caps.enumerate_agents) {
    throw CapError("enumeration: more than " +
                   std::to_string(caps.enumerate_agents) + " agents");
  }
  Allocation cur(n);
  std::vector<std::array<int, 3>> options;
  std::map<std::pair<int, int>, int> used;
  std::function<bool(int, int, int)> fits;
  std::function<void(int, int, int, int)> apply =
      [&](int, int r, int l, int d) { used[{r, l}] += d; };
  int units = 0;
  switch (FamilyOf(inst)) {
    case Family::kOneSided: {
      const auto& h = std::get<HousingInstance>(inst);
      units = h.num_houses();
      for (int k = 0; k < h.num_houses(); ++k) options.push_back({k, -1, -1});
      fits = [&](int, int r, int) { return used[{r, -1}] == 0; };
      break;
    }
    case Family::kTwoSided: {
      const auto& s = std::get<SchoolInstance>(inst);
      const auto rank = s.PriorityRanks();
      for (int k = 0; k < s.num_schools(); ++k) {
        units += s.capacity[k];
        options.push_back({k, -1, -1});
      }
      fits = [&s, rank, &used](int i, int r, int) {
        return rank[r][i] >= 0 && used[{r, -1}] < s.capacity[r];
      };
      break;
    }
    case Family::kContracts: {
      const auto& c = std::get<ContractsInstance>(inst);
      for (int b = 0; b < c.num_branches(); ++b) {
        units += c.branches[b].capacity;
        for (int t = 0; t < c.num_tiers(); ++t) options.push_back({b, t, -1});
      }
      fits = [&](int, int b, int t) {
        int total = 0, nonbase = 0;
        for (int k = 0; k < c.num_tiers(); ++k) {
          total += used[{b, k}];
          if (k > 0) nonbase += used[{b, k}];
        }
        return total < c.branches[b].capacity &&
               (t == 0 || nonbase < c.branches[b].flexible);
      };
      break;
    }
    case Family::kReserves: {
      const auto& r = std::get<ReserveInstance>(inst);
      if (!r.multi()) {
        for (int v = 0; v < r.num_categories(); ++v) {
          units += r.seats.capacity[v];
          options.push_back({v, -1, -1});
        }
        fits = [&](int i, int v, int) {
          return r.Eligible(i, v) && used[{v, -1}] < r.seats.capacity[v];
        };
      } else {
        for (int s = 0; s < static_cast<int>(r.institutions.size()); ++s) {
          for (int v = 0; v < r.num_categories(); ++v) {
            units += r.institution_seats[s].capacity[v];
            options.push_back({s, v, -1});
          }
        }
        fits = [&](int i, int s, int v) {
          return r.Eligible(i, v) &&
                 used[{s, v}] < r.institution_seats[s].capacity[v];
        };
      }
      break;
    }
    case Family::kExchange:
      throw ValidationError({"enumeration is not defined for exchange pools"});
  }
  if (units > caps.enumerate_units) {
    throw CapError("enumeration: more than " +
                   std::to_string(caps.enumerate_units) + " resource units");
  }
  EnumerateInto(inst, cur, 0, fits, apply, options, out);
  return out;
}

std::vector<Allocation> EnumerateSatisfying(
    const Instance& inst, const std::vector<std::string>& axioms,
    const Caps& caps) {
  for (const auto& axiom : axioms) {
    Require(Applies(axiom, inst), axiom, inst);
  }
  std::vector<Allocation> out;
  for (const Allocation& a : EnumerateFeasible(inst, caps)) {
    bool ok = true;
    for (const auto& axiom : axioms) {
      if (!CheckAxiom(inst, a, axiom).holds) {
        ok = false;
        break;
      }
    }
    if (ok) out.push_back(a);
  }
  return out;
}

std::vector<Allocation> SpWitnessedFilter(
    const Instance& inst, const std::vector<Allocation>& candidates,
    const std::vector<std::string>& axioms, const Caps& caps) {
  if (candidates.size() <= 1) return candidates;
  const int n = NumReporters(inst);
  const int items = NumReportItems(inst);
  const auto reports = EnumerateRankings(items, items);
  // worst[i][r]: the worst true-preference rank agent i gets across every
  // axiom-satisfying allocation under misreport r (-1 when there is none).
  std::vector<std::vector<int>> worst(n, std::vector<int>(reports.size(), -1));
  for (int i = 0; i < n; ++i) {
    const Ranking truth = GetReport(inst, i);
    for (size_t k = 0; k < reports.size(); ++k) {
      if (reports[k] == truth) continue;
      Instance lie = inst;
      SetReport(lie, i, reports[k]);
      if (!ValidateInstance(lie).empty()) continue;
      for (const Allocation& b : EnumerateSatisfying(lie, axioms, caps)) {
        worst[i][k] = std::max(worst[i][k],
                               OutcomeRank(truth, OutcomeItem(lie, b, i)));
      }
    }
  }
  std::vector<Allocation> out;
  for (const Allocation& a : candidates) {
    bool eliminated = false;
    for (int i = 0; i < n && !eliminated; ++i) {
      const int have = OutcomeRank(GetReport(inst, i), OutcomeItem(inst, a, i));
      for (size_t k = 0; k < reports.size(); ++k) {
        if (worst[i][k] >= 0 && worst[i][k] < have) {
          eliminated = true;
          break;
        }
      }
    }
    if (!eliminated) out.push_back(a);
  }
  return out;
}

std::vector<Allocation> StableSet(const SchoolInstance& inst) {
  return EnumerateSatisfying(Instance(inst), {"stability"});
}

SchoolInstance AdjustedPriorities(const SchoolInstance& inst,
                                  const std::vector<bool>& sincere) {
  SchoolInstance out = inst;
  const int m = inst.num_schools();
  for (int s = 0; s < m; ++s) {
    auto& p = out.priority[s];
    std::stable_sort(p.begin(), p.end(), [&](int a, int b) {
      auto tier = [&](int i) {
        if (!sincere[i]) return 0;
        int pos = RankOf(inst.prefs[i], s);
        return pos < 0 ? m : pos;
      };
      return tier(a) < tier(b);
    });
  }
  if (out.HasFields()) {
    out.field.clear();
    out.field_names.clear();
    out.field_ranking.clear();
  }
  return out;
}

NashResult BostonNashSet(const SchoolInstance& inst,
                         const std::vector<bool>& sincere) {
  const int n = inst.num_students();
  const int m = inst.num_schools();
  if (n > 3 || m > 3) throw CapError("boston_nash_set: more than 3 students/schools");
  const auto all = EnumerateRankings(m, m);
  std::vector<std::vector<Ranking>> strategies(n);
  for (int i = 0; i < n; ++i) {
    strategies[i] = sincere[i] ? std::vector<Ranking>{inst.prefs[i]} : all;
  }
  std::vector<int> radix(n, 1);
  int profiles = 1;
  for (int i = 0; i < n; ++i) {
    radix[i] = profiles;
    profiles *= static_cast<int>(strategies[i].size());
  }
  std::vector<Allocation> outcome(profiles);
  for (int p = 0; p < profiles; ++p) {
    SchoolInstance play = inst;
    for (int i = 0; i < n; ++i) {
      play.prefs[i] = strategies[i][(p / radix[i]) % strategies[i].size()];
    }
    outcome[p] = twosided::Boston(play);
  }
  std::set<Allocation> eq;
  for (int p = 0; p < profiles; ++p) {
    bool stable = true;
    for (int i = 0; i < n && stable; ++i) {
      const int size = static_cast<int>(strategies[i].size());
      const int own = (p / radix[i]) % size;
      for (int k = 0; k < size; ++k) {
        if (k == own) continue;
        const int q = p + (k - own) * radix[i];
        if (Prefers(inst.prefs[i], outcome[q].resource[i],
                    outcome[p].resource[i])) {
          stable = false;
          break;
        }
      }
    }
    if (stable) eq.insert(outcome[p]);
  }
  NashResult result;
  result.equilibria.assign(eq.begin(), eq.end());
  result.adjusted = AdjustedPriorities(inst, sincere);
  result.stable = StableSet(result.adjusted);
  std::sort(result.stable.begin(), result.stable.end());
  return result;
}

std::vector<long long> SchoolScores(const SchoolInstance& inst, int school) {
  const int n = inst.num_students();
  std::vector<long long> score(n, -kNoCutoff);
  const auto& p = inst.priority[school];
  for (int k = 0; k < static_cast<int>(p.size()); ++k) score[p[k]] = n - k;
  return score;
}

bool SupportsCutoffs(const SchoolInstance& inst, const Allocation& a,
                     const std::vector<long long>& cutoffs) {
  for (int s = 0; s < inst.num_schools(); ++s) {
    const auto score = SchoolScores(inst, s);
    for (int i = 0; i < inst.num_students(); ++i) {
      if (a.resource[i] == s && score[i] < cutoffs[s]) return false;
      if (score[i] >= cutoffs[s] && Prefers(inst.prefs[i], s, a.resource[i])) {
        return false;
      }
    }
  }
  return true;
}

std::optional<std::vector<long long>> ConstructCutoffs(
    const SchoolInstance& inst, const Allocation& a) {
  std::vector<long long> cutoffs(inst.num_schools(), kNoCutoff);
  for (int s = 0; s < inst.num_schools(); ++s) {
    const auto score = SchoolScores(inst, s);
    for (int i = 0; i < inst.num_students(); ++i) {
      if (a.resource[i] == s) cutoffs[s] = std::min(cutoffs[s], score[i]);
    }
  }
  if (SupportsCutoffs(inst, a, cutoffs)) return cutoffs;
  return std::nullopt;
}

bool CertifyNoCutoffs(const SchoolInstance& inst, const Allocation& a) {
  const int m = inst.num_schools();
  std::vector<std::vector<long long>> candidates(m);
  double total = 1;
  for (int s = 0; s < m; ++s) {
    std::set<long long> values{kNoCutoff};
    for (long long v : SchoolScores(inst, s)) {
      if (v > -kNoCutoff) values.insert(v);
    }
    candidates[s].assign(values.begin(), values.end());
    total *= static_cast<double>(values.size());
  }
  if (total > 1e7) throw CapError("cutoff certification: too many candidates");
  std::vector<size_t> idx(m, 0);
  std::vector<long long> cur(m);
  while (true) {
    for (int s = 0; s < m; ++s) cur[s] = candidates[s][idx[s]];
    if (SupportsCutoffs(inst, a, cur)) return false;
    int s = 0;
    while (s < m && ++idx[s] == candidates[s].size()) idx[s++] = 0;
    if (s == m) return true;
  }
}

}  // namespace mdtk::axioms
