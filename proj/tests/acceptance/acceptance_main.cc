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


// Acceptance run: one PASS/FAIL line per criterion, exit 1 on any FAIL.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "../unit/test_util.h"
#include "mdtk/axioms.h"
#include "mdtk/io.h"
#include "mdtk/registry.h"

namespace {

using namespace mdtk;
using io::Json;
using testing::Load;

// Collects the first few failure notes of a criterion.
class Tally {
 public:
  void Expect(bool ok, const std::string& what) {
    ++checks_;
    if (ok) return;
    ++failures_;
    if (notes_.size() < 3) notes_.push_back(what);
  }
  bool ok() const { return failures_ == 0; }
  std::string Summary() const {
    std::string s = std::to_string(checks_ - failures_) + "/" +
                    std::to_string(checks_) + " checks";
    for (const auto& n : notes_) s += "; " + n;
    return s;
  }

 private:
  int checks_ = 0;
  int failures_ = 0;
  std::vector<std::string> notes_;
};

double Seconds(std::chrono::steady_clock::time_point since) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - since)
      .count();
}

// Runs `body` and fails it when it exceeds `budget` seconds.
void Timed(Tally& t, const std::string& label, double budget,
           const std::function<void()>& body) {
  const auto start = std::chrono::steady_clock::now();
  body();
  const double s = Seconds(start);
  char buf[96];
  std::snprintf(buf, sizeof buf, "%s took %.2fs (budget %.0fs)", label.c_str(),
                s, budget);
  t.Expect(s <= budget, buf);
}

Instance Gen(Family f, const std::string& knobs, SplitMix64& rng) {
  return io::Generate(f, Params::Parse(knobs), rng.Next());
}

std::string N(int v) { return std::to_string(v); }

// ---------------------------------------------------------------- 1

bool Golden(const std::string& file, const std::string& mech,
            const char* expected) {
  auto inst = Load(file);
  auto a = Run(ParseMechanismCall(mech), inst).allocation;
  return io::AllocationToJson(inst, a) == Json::parse(expected);
}

reserves::ReserveInstance MenAndWomen() {
  reserves::ReserveInstance r;
  r.names.resources = {"open"};
  r.hr_groups = {"W"};
  for (int s = 1; s <= 100; ++s) {
    for (int w = 0; w < 2; ++w) {
      r.names.agents.push_back((w ? "W" : "M") + N(s));
      r.merit.push_back(2 * s + w);
      r.vr.push_back(reserves::kOpen);
      r.hr.push_back(w ? std::vector<int>{0} : std::vector<int>{});
    }
  }
  r.seats.capacity = {100};
  r.seats.hr_reserve = {{30}};
  return r;
}

std::pair<int, int> WomenMen(const reserves::ReserveInstance& r,
                             const Allocation& a) {
  int w = 0, m = 0;
  for (int i = 0; i < r.num_applicants(); ++i) {
    if (a.resource[i] == kUnmatched) continue;
    (r.HasTrait(i, 0) ? w : m)++;
  }
  return {w, m};
}

Tally GoldenExamples() {
  Tally t;
  auto one = [&](const std::string& label, const std::function<bool()>& f) {
    bool ok = false;
    Timed(t, label, 1.0, [&] { ok = f(); });
    t.Expect(ok, label + " differs");
  };
  one("IPDA", [] {
    return Golden("ipda.json", "da_student",
                  R"({"Alp":"X","Banu":"Y","Cora":"Z","Diya":"X"})");
  });
  one("college DA", [] {
    return Golden("ipda.json", "da_college",
                  R"({"Alp":"X","Banu":"Z","Cora":"Y","Diya":"X"})");
  });
  one("SC-TTC", [] {
    return Golden("ipda.json", "sc_ttc",
                  R"({"Alp":"X","Banu":"Z","Cora":"X","Diya":"Y"})");
  });
  one("Boston", [] {
    return Golden("ipda.json", "boston",
                  R"({"Alp":"X","Banu":"Z","Cora":"X","Diya":"Y"})");
  });
  one("MCSD", [] {
    return Golden("mcsd.json", "mcsd",
                  R"({"Alp":"Y","Banu":"X","Cora":"X","Diya":null,"Ezra":"Z"})");
  });
  one("YRMH-IGYT", [] {
    return Golden("yrmh2.json", "yrmh_igyt",
                  R"({"Alp":"HD","Banu":"V","Cora":"HB","Diya":"HA",
                      "Ezra":"HE","Frank":"HC"})");
  });
  one("MPCO", [] {
    return Golden("mpco.json", "mpco", R"({
      "Alp":{"branch":"I","price":"base"},
      "Banu":{"branch":"I","price":"extended"},
      "Cora":{"branch":"M","price":"base"},
      "Diya":{"branch":"Q","price":"base"},
      "Ezra":{"branch":"M","price":"base"}})");
  });
  one("precedence", [] {
    using reserves::PrecedenceKind;
    auto r = MenAndWomen();
    auto open = reserves::ReserveSequenceChoice(
        r, reserves::MakePrecedence(PrecedenceKind::kOpenFirst, 70, 30,
                                    {reserves::kOpen, 0}));
    auto res = reserves::ReserveSequenceChoice(
        r, reserves::MakePrecedence(PrecedenceKind::kReservedFirst, 70, 30,
                                    {reserves::kOpen, 0}));
    return WomenMen(r, open) == std::make_pair(65, 35) &&
           WomenMen(r, res) == std::make_pair(50, 50);
  });
  one("overlapping HR, NJE", [] {
    auto inst = Load("overlap_nje.json");
    auto v = io::AllocationToJson(inst, Run(ParseMechanismCall("tsmh"), inst)
                                            .allocation);
    return v["Amita"]["hr"] == "PwD" && v["Bhaskar"]["hr"].is_null() &&
           v["Bhaskar"]["category"] == "open" && v["Chandra"]["hr"] == "W" &&
           v["Debraj"].is_null();
  });
  one("overlapping HR, MAHR", [] {
    auto inst = Load("overlap_mahr.json");
    auto v = io::AllocationToJson(inst, Run(ParseMechanismCall("tsmh"), inst)
                                            .allocation);
    return v["Amita"]["hr"] == "PwD" && v["Chandra"]["hr"] == "W" &&
           v["Bhaskar"].is_null();
  });
  return t;
}

// ---------------------------------------------------------------- 2

using Dist = std::map<std::vector<int>, long long>;

// Exact outcome distribution, scaled so both sides share a denominator.
Dist Scale(const Dist& d, long long by) {
  Dist out;
  for (const auto& [k, v] : d) out[k] = v * by;
  return out;
}

std::set<std::vector<int>> Outcomes(const std::vector<Allocation>& as) {
  std::set<std::vector<int>> out;
  for (const auto& a : as) out.insert(a.resource);
  return out;
}

Tally Equivalences() {
  Tally t;
  Timed(t, "mcsd vs college DA", 10, [&] {
    SplitMix64 rng(201);
    for (int k = 0; k < 500; ++k) {
      const int n = 2 + k % 4, m = 1 + k % 3, f = 1 + k % m;
      auto s = std::get<twosided::SchoolInstance>(
          Gen(Family::kTwoSided,
              "n=" + N(n) + ",m=" + N(m) + ",capacity=" + N(1 + k % 2) +
                  ",fields=" + N(f),
              rng));
      t.Expect(twosided::Mcsd(s) ==
                   twosided::DaCollege(twosided::InducedByFields(s)),
               "mcsd instance " + N(k));
    }
  });
  Timed(t, "technocratic core", 10, [&] {
    SplitMix64 rng(202);
    for (int k = 0; k < 500; ++k) {
      const int nw = 1 + k % 3, ten = k % 4;
      auto h = std::get<onesided::HousingInstance>(
          Gen(Family::kOneSided,
              "tenants=" + N(ten) + ",newcomers=" + N(nw) + ",vacant=" +
                  N(nw) + ",complete=1",
              rng));
      auto newcomers = h.Newcomers();
      auto tenants = h.Tenants();
      // core over every vacant -> newcomer endowment
      Dist core;
      long long core_n = 0;
      auto owners = newcomers;
      std::sort(owners.begin(), owners.end());
      do {
        ++core[onesided::CoreFromEndowments(h, owners).resource];
        ++core_n;
      } while (std::next_permutation(owners.begin(), owners.end()));
      // YRMH-IGYT over newcomer-first queues
      Dist yrmh;
      long long yrmh_n = 0;
      std::sort(newcomers.begin(), newcomers.end());
      do {
        std::sort(tenants.begin(), tenants.end());
        do {
          auto q = newcomers;
          q.insert(q.end(), tenants.begin(), tenants.end());
          ++yrmh[onesided::YrmhIgyt(h, q).resource];
          ++yrmh_n;
        } while (std::next_permutation(tenants.begin(), tenants.end()));
      } while (std::next_permutation(newcomers.begin(), newcomers.end()));
      t.Expect(Scale(core, yrmh_n) == Scale(yrmh, core_n),
               "technocratic distribution, instance " + N(k));
      for (int s = 0; s < 10; ++s) {
        const uint64_t seed = rng.Next();
        auto a = onesided::TechnocraticCore(h, seed);
        t.Expect(a == onesided::CoreFromEndowments(
                          h, onesided::DrawEndowments(h, seed)) &&
                     yrmh.count(a.resource) > 0,
                 "technocratic draw, instance " + N(k));
      }
    }
  });
  Timed(t, "Boston equilibria", 10, [&] {
    SplitMix64 rng(203);
    for (int k = 0; k < 200; ++k) {
      const int n = 1 + k % 3, m = 1 + (k / 3) % 3;
      auto s = std::get<twosided::SchoolInstance>(Gen(
          Family::kTwoSided,
          "n=" + N(n) + ",m=" + N(m) + ",capacity=" + N(1 + k % 2), rng));
      auto strategic = axioms::BostonNashSet(s, std::vector<bool>(n, false));
      t.Expect(Outcomes(strategic.equilibria) ==
                   Outcomes(axioms::StableSet(s)),
               "Nash vs stable, instance " + N(k));
      for (int mask = 1; mask < (1 << n); ++mask) {
        std::vector<bool> sincere(n);
        for (int i = 0; i < n; ++i) sincere[i] = mask >> i & 1;
        auto r = axioms::BostonNashSet(s, sincere);
        t.Expect(Outcomes(r.equilibria) ==
                     Outcomes(axioms::StableSet(
                         axioms::AdjustedPriorities(s, sincere))),
                 "Nash vs adjusted stable, instance " + N(k));
      }
    }
  });
  return t;
}

// ---------------------------------------------------------------- 3

Tally Uniqueness() {
  Tally t;
  Timed(t, "DA uniqueness", 60, [&] {
    SplitMix64 rng(301);
    const std::vector<std::string> ax = {"IR", "NW", "NJE-basic"};
    for (int k = 0; k < 200; ++k) {
      Instance inst = Gen(Family::kTwoSided,
                          "n=" + N(2 + k % 3) + ",m=" + N(2 + k % 2) +
                              ",capacity=" + N(1 + k % 2),
                          rng);
      auto kept = axioms::SpWitnessedFilter(
          inst, axioms::EnumerateSatisfying(inst, ax), ax);
      t.Expect(kept.size() == 1 &&
                   kept[0] == twosided::DaStudent(
                                  std::get<twosided::SchoolInstance>(inst)),
               "DA instance " + N(k));
    }
  });
  Timed(t, "reserves uniqueness", 60, [&] {
    SplitMix64 rng(302);
    const std::vector<std::string> ax = {"NW", "NJE-india",
                                         "max-HR-accommodation",
                                         "VR-compliance"};
    for (int k = 0; k < 100; ++k) {
      const bool overlap = k % 2 == 1;
      Instance inst = Gen(Family::kReserves,
                          "applicants=" + N(4 + k % 5) + ",categories=" +
                              N(1 + k % 3) + ",groups=" + N(overlap ? 2 : 1) +
                              ",capacity=2,hr_reserve=1,overlap=" +
                              N(overlap),
                          rng);
      const auto& r = std::get<reserves::ReserveInstance>(inst);
      auto all = axioms::EnumerateSatisfying(inst, ax);
      const auto want =
          overlap ? reserves::TsmhChoice(r) : reserves::TsmgChoice(r);
      t.Expect(all.size() == 1 && all[0].resource == want.resource,
               "reserves instance " + N(k) + " survivors " + N(all.size()));
    }
  });
  Timed(t, "contracts uniqueness", 60, [&] {
    SplitMix64 rng(303);
    const std::vector<std::string> ax = {"IR", "NW", "NJE"};
    for (int k = 0; k < 100; ++k) {
      Instance inst = Gen(Family::kContracts,
                          "cadets=" + N(2 + k % 2) + ",branches=" +
                              N(1 + k % 2) + ",capacity=" + N(1 + k % 2),
                          rng);
      auto kept = axioms::SpWitnessedFilter(
          inst, axioms::EnumerateSatisfying(inst, ax), ax);
      t.Expect(kept.size() == 1 &&
                   kept[0] == contracts::Mpco(
                                  std::get<contracts::ContractsInstance>(inst)),
               "contracts instance " + N(k));
    }
  });
  return t;
}

// ---------------------------------------------------------------- 4

// Desk-scale grid: every (agents, resources) shape up to 4 x 4, `per` seeded
// instances each. Contracts keep two branches so reports stay at 4 terms.
std::vector<Instance> Grid(Family f, int per, uint64_t seed,
                           const std::string& extra = "") {
  SplitMix64 rng(seed);
  std::vector<Instance> out;
  for (int a = 2; a <= 4; ++a) {
    for (int r = 2; r <= 4; ++r) {
      for (int k = 0; k < per; ++k) {
        std::string knobs;
        switch (f) {
          case Family::kTwoSided:
            knobs = "n=" + N(a) + ",m=" + N(r) + ",capacity=" + N(1 + k % 2);
            break;
          case Family::kOneSided: {
            const int ten = std::min(a - 1, r - 1 - k % 2);
            knobs = "tenants=" + N(ten) + ",newcomers=" + N(a - ten) +
                    ",vacant=" + N(r - ten);
            break;
          }
          case Family::kContracts:
            knobs = "cadets=" + N(a) + ",branches=" + N(1 + r % 2) +
                    ",tiers=2,capacity=" + N(1 + k % 2);
            break;
          case Family::kReserves:
            knobs = "applicants=" + N(a) + ",institutions=" + N(r) +
                    ",categories=2,groups=1,capacity=1,hr_reserve=1";
            break;
          default:
            break;
        }
        out.push_back(Gen(f, knobs + extra, rng));
      }
    }
  }
  return out;
}

Tally StrategyProofness() {
  Tally t;
  Timed(t, "strategy-proofness grid", 300, [&] {
    struct Row {
      const char* call;
      Family family;
      const char* extra;
      bool manipulable;
    };
    const Row rows[] = {
        {"da_student", Family::kTwoSided, "", false},
        {"sc_ttc", Family::kTwoSided, "", false},
        {"yrmh_igyt", Family::kOneSided, "", false},
        {"mpco", Family::kContracts, "", false},
        {"tsmh_da", Family::kReserves, "", false},
        {"boston", Family::kTwoSided, "", true},
        {"mcsd", Family::kTwoSided, ",fields=2", true},
        {"usma2006", Family::kContracts, "", true},
        {"taiwan_deduction:rule=0/15/30/45", Family::kTwoSided, ",scores=1", true},
        {"parallel:bands=2/2", Family::kTwoSided, "", true},
    };
    int seed = 400;
    for (const Row& row : rows) {
      const auto call = ParseMechanismCall(row.call);
      int witnesses = 0, checked = 0;
      for (const Instance& inst : Grid(row.family, 40, ++seed, row.extra)) {
        auto v = axioms::CheckStrategyProofness(call, inst);
        ++checked;
        if (v.holds) continue;
        ++witnesses;
        t.Expect(axioms::ReplaySpWitness(call, inst, *v.witness),
                 std::string(row.call) + " witness does not replay");
        if (row.manipulable) break;
      }
      if (row.manipulable) {
        t.Expect(witnesses > 0, std::string(row.call) + " no witness in " +
                                    N(checked) + " instances");
      } else {
        t.Expect(witnesses == 0, std::string(row.call) + " has " +
                                     N(witnesses) + " witnesses");
      }
    }
  });
  return t;
}

// ---------------------------------------------------------------- 5

std::vector<std::vector<bool>> Mutual(const exchange::ExchangePool& p) {
  const int n = p.num_pairs();
  std::vector<std::vector<bool>> adj(n, std::vector<bool>(n, false));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      adj[i][j] = i != j && p.compatible[i][j] && p.compatible[j][i];
    }
  }
  return adj;
}

exchange::ExchangePool Pool(SplitMix64& rng, int pairs) {
  return std::get<exchange::ExchangePool>(
      Gen(Family::kExchange,
          "pairs=" + N(pairs) + ",pra=" + N(rng.Below(60)), rng));
}

Tally Exchange() {
  Tally t;
  Timed(t, "twelve-pair pool", 10, [&] {
    auto pool = std::get<exchange::ExchangePool>(Load("kidney12.json"));
    const int want[] = {4, 5, 6};
    for (int k = 2; k <= 4; ++k) {
      const int got = exchange::MaxTransplants(pool, k, 0).transplants;
      t.Expect(got == want[k - 2], "k=" + N(k) + " gives " + N(got));
    }
  });
  Timed(t, "two-way priority matching", 60, [&] {
    SplitMix64 rng(501);
    for (int k = 0; k < 500; ++k) {
      auto pool = Pool(rng, 2 + k % 13);
      const int got = exchange::PriorityMatching2Way(pool).transplants;
      t.Expect(got == 2 * testing::MaxMatchingBrute(pool.num_pairs(),
                                                    Mutual(pool)),
               "matching pool " + N(k));
    }
  });
  Timed(t, "cycle cap monotonicity", 120, [&] {
    SplitMix64 rng(502);
    for (int k = 0; k < 1000; ++k) {
      auto pool = Pool(rng, 3 + k % 8);
      int prev = 0;
      for (int cap = 2; cap <= 4; ++cap) {
        const int got = exchange::MaxTransplants(pool, cap, 0).transplants;
        t.Expect(got >= prev, "monotonicity pool " + N(k));
        prev = got;
      }
    }
  });
  return t;
}

// ---------------------------------------------------------------- 6

bool Contains(const std::vector<contracts::Contract>& v,
              const contracts::Contract& c) {
  return std::find(v.begin(), v.end(), c) != v.end();
}

Tally Conditions() {
  Tally t;
  auto inst = testing::LoadAs<contracts::ContractsInstance>("mpco.json");
  const auto rule = contracts::SlotChoiceRule(inst, 0);
  const auto universe = contracts::BranchUniverse(inst, 0);
  t.Expect(universe.size() <= 12, "universe over 12 contracts");
  contracts::ConditionReport rep;
  Timed(t, "powerset scan", 10,
        [&] { rep = contracts::CheckChoiceConditions(rule, universe); });
  const auto& sub = rep.substitutable;
  t.Expect(!sub.holds, "substitutability holds");
  if (!sub.holds && sub.contract) {
    const auto x = *sub.contract;
    bool nested = true;
    for (const auto& c : sub.smaller) nested &= Contains(sub.larger, c);
    t.Expect(nested && Contains(sub.smaller, x) &&
                 !Contains(rule(sub.smaller), x) &&
                 Contains(rule(sub.larger), x),
             "substitutability witness does not re-derive");
  }
  t.Expect(rep.unilaterally_substitutable.holds,
           "unilateral substitutability fails");
  t.Expect(rep.irc.holds, "IRC fails");
  t.Expect(rep.lad.holds, "LAD fails");
  return t;
}

// ---------------------------------------------------------------- 7

Tally Cutoffs() {
  Tally t;
  Timed(t, "cutoffs", 60, [&] {
    SplitMix64 rng(701);
    for (int k = 0; k < 500; ++k) {
      auto s = std::get<twosided::SchoolInstance>(
          Gen(Family::kTwoSided,
              "n=" + N(2 + k % 7) + ",m=" + N(1 + k % 4) + ",capacity=" +
                  N(1 + k % 3),
              rng));
      auto a = twosided::DaStudent(s);
      auto c = axioms::ConstructCutoffs(s, a);
      t.Expect(c && axioms::SupportsCutoffs(s, a, *c),
               "no cutoffs for DA, instance " + N(k));
    }
    int found = 0;
    for (int k = 0; found < 100 && k < 10000; ++k) {
      auto s = std::get<twosided::SchoolInstance>(Gen(
          Family::kTwoSided, "n=" + N(3 + k % 2) + ",m=" + N(2 + k % 2), rng));
      Instance inst = s;
      std::vector<Allocation> bad;
      for (const auto& a : axioms::EnumerateSatisfying(inst, {"IR"})) {
        if (!axioms::CheckAxiom(inst, a, "NJE-basic").holds) bad.push_back(a);
      }
      if (bad.empty()) continue;
      const auto& a = bad[rng.Below(bad.size())];
      ++found;
      t.Expect(axioms::CertifyNoCutoffs(s, a),
               "cutoffs for an envious allocation, instance " + N(k));
    }
    t.Expect(found == 100, "only " + N(found) + " envious allocations");
  });
  return t;
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    Tally (*run)();
  };
  const Criterion criteria[] = {
      {"golden examples", GoldenExamples},
      {"equivalences", Equivalences},
      {"uniqueness oracles", Uniqueness},
      {"strategy-proofness grid", StrategyProofness},
      {"exchange counts", Exchange},
      {"choice rule conditions", Conditions},
      {"cutoff characterization", Cutoffs},
  };
  int failed = 0, k = 0;
  for (const auto& c : criteria) {
    ++k;
    const auto start = std::chrono::steady_clock::now();
    Tally t;
    try {
      t = c.run();
    } catch (const std::exception& e) {
      t.Expect(false, std::string("threw: ") + e.what());
    }
    failed += !t.ok();
    std::printf("%s %d %s (%.1fs): %s\n", t.ok() ? "PASS" : "FAIL", k, c.name,
                Seconds(start), t.Summary().c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
