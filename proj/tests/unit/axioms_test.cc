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


#include <algorithm>
#include <set>

#include "doctest.h"
#include "mdtk/twosided.h"
#include "test_util.h"

namespace mdtk::axioms {
namespace {

using testing::Load;
using twosided::SchoolInstance;

SchoolInstance Random(SplitMix64& rng, int n, int m, int cap = 1) {
  auto p = Params::Parse("n=" + std::to_string(n) + ",m=" + std::to_string(m) +
                         ",capacity=" + std::to_string(cap));
  return std::get<SchoolInstance>(
      io::Generate(Family::kTwoSided, p, rng.Next()));
}

bool Holds(const Instance& inst, const Allocation& a, const char* axiom) {
  return CheckAxiom(inst, a, axiom).holds;
}

std::set<std::vector<int>> Outcomes(const std::vector<Allocation>& as) {
  std::set<std::vector<int>> out;
  for (const auto& a : as) out.insert(a.resource);
  return out;
}

// sum_k C(n,k) * m!/(m-k)! for unit capacities and complete lists.
long long PartialInjections(int n, int m) {
  long long total = 0;
  for (int k = 0; k <= std::min(n, m); ++k) {
    long long c = 1, p = 1;
    for (int i = 0; i < k; ++i) {
      c = c * (n - i) / (i + 1);
      p *= m - i;
    }
    total += c * p;
  }
  return total;
}

TEST_CASE("stability is IR plus NW plus basic NJE") {
  SplitMix64 rng(11);
  int unstable = 0;
  for (int t = 0; t < 60; ++t) {
    Instance inst = Random(rng, 3, 3, 1 + t % 2);
    for (const auto& a : EnumerateFeasible(inst)) {
      const bool st = Holds(inst, a, "stability");
      const bool parts = Holds(inst, a, "IR") && Holds(inst, a, "NW") &&
                         Holds(inst, a, "NJE-basic");
      CHECK(st == parts);
      unstable += !st;
    }
  }
  CHECK(unstable > 0);
}

TEST_CASE("violation witnesses replay on their own") {
  SplitMix64 rng(12);
  int replayed = 0;
  for (int t = 0; t < 40; ++t) {
    Instance inst = Random(rng, 3, 2, 1 + t % 2);
    for (const auto& a : EnumerateFeasible(inst)) {
      for (const char* ax : {"IR", "PE", "NW", "NJE-basic", "stability"}) {
        auto v = CheckAxiom(inst, a, ax);
        if (v.holds) continue;
        REQUIRE(v.witness.has_value());
        CHECK(ReplayWitness(inst, a, *v.witness));
        CHECK(!v.witness->replay.empty());
        ++replayed;
      }
    }
  }
  CHECK(replayed > 100);
}

TEST_CASE("a tampered witness does not replay") {
  auto inst = Load("ipda.json");
  auto a = twosided::ScTtc(std::get<SchoolInstance>(inst));
  auto v = CheckAxiom(inst, a, "NJE");
  REQUIRE(!v.holds);
  auto w = *v.witness;
  std::swap(w.agents[0], w.agents[1]);
  CHECK(!ReplayWitness(inst, a, w));
}

TEST_CASE("DA is stable and SC-TTC is not on the four-student example") {
  auto inst = Load("ipda.json");
  const auto& s = std::get<SchoolInstance>(inst);
  auto report = CheckAllocation(inst, twosided::DaStudent(s),
                                {"stability", "NJE", "IR", "NW"});
  CHECK(AllHold(report));
  CHECK(report.size() == 4);
  CHECK(!Holds(inst, twosided::ScTtc(s), "stability"));
}

TEST_CASE("unknown axioms and family mismatches are rejected") {
  auto inst = Load("ipda.json");
  auto a = twosided::DaStudent(std::get<SchoolInstance>(inst));
  CHECK_THROWS_AS(CheckAllocation(inst, a, {"bogus"}), ValidationError);
  CHECK_THROWS_AS(CheckAllocation(inst, a, {"VR-compliance"}),
                  ValidationError);
  Allocation bad = a;
  bad.resource[0] = 7;
  CHECK(!FeasibilityErrors(inst, bad).empty());
  CHECK_THROWS_AS(CheckAllocation(inst, bad, {"IR"}), ValidationError);
}

TEST_CASE("basic NJE rules out giving Alp X on the efficiency example") {
  auto inst = Load("nje_pe.json");
  auto survivors = EnumerateSatisfying(inst, {"NJE-basic"});
  REQUIRE(!survivors.empty());
  for (const auto& a : survivors) CHECK(a.resource[0] != 0);
  auto all = EnumerateFeasible(inst);
  bool alp_x = false;
  for (const auto& a : all) alp_x |= a.resource[0] == 0;
  CHECK(alp_x);
}

TEST_CASE("no axioms leaves every feasible allocation") {
  auto inst = Load("nje_pe.json");
  CHECK(EnumerateSatisfying(inst, {}).size() == 13);
  CHECK(PartialInjections(3, 2) == 13);
  SplitMix64 rng(13);
  for (int t = 0; t < 10; ++t) {
    auto s = Random(rng, 2 + t % 3, 2 + t % 2);
    for (auto& p : s.prefs) {
      p.clear();
      for (int k = 0; k < s.num_schools(); ++k) p.push_back(k);
    }
    Instance inst2 = s;
    CHECK(static_cast<long long>(EnumerateSatisfying(inst2, {}).size()) ==
          PartialInjections(s.num_students(), s.num_schools()));
  }
}

TEST_CASE("enumeration refuses oversized instances") {
  SplitMix64 rng(14);
  Instance big = Random(rng, 9, 3);
  CHECK_THROWS_AS(EnumerateFeasible(big), CapError);
}

TEST_CASE("IR, NW and NJE single out DA once manipulable rivals drop out") {
  SplitMix64 rng(15);
  for (int t = 0; t < 40; ++t) {
    Instance inst = Random(rng, 3, 3, 1);
    const std::vector<std::string> ax = {"IR", "NW", "NJE-basic"};
    auto fair = EnumerateSatisfying(inst, ax);
    auto kept = SpWitnessedFilter(inst, fair, ax);
    REQUIRE(kept.size() == 1);
    CHECK(kept[0] == twosided::DaStudent(std::get<SchoolInstance>(inst)));
  }
}

TEST_CASE("stable set matches the enumeration") {
  SplitMix64 rng(16);
  for (int t = 0; t < 40; ++t) {
    auto s = Random(rng, 3, 3, 1 + t % 2);
    Instance inst = s;
    CHECK(Outcomes(StableSet(s)) ==
          Outcomes(EnumerateSatisfying(inst, {"stability"})));
  }
}

TEST_CASE("Boston equilibria with strategic students are the stable outcomes") {
  auto s = std::get<SchoolInstance>(Load("nje_pe.json"));
  auto r = BostonNashSet(s, {false, false, false});
  CHECK(Outcomes(r.equilibria) == Outcomes(StableSet(s)));
  SplitMix64 rng(17);
  for (int t = 0; t < 40; ++t) {
    auto x = Random(rng, 3, 1 + t % 3, 1 + t % 2);
    auto n = BostonNashSet(x, {false, false, false});
    CHECK(Outcomes(n.equilibria) == Outcomes(StableSet(x)));
  }
}

TEST_CASE("Boston equilibria with sincere students match adjusted priorities") {
  auto s = std::get<SchoolInstance>(Load("nje_pe.json"));
  auto all = BostonNashSet(s, {true, true, true});
  REQUIRE(all.equilibria.size() == 1);
  CHECK(all.equilibria[0] == twosided::Boston(s));
  SplitMix64 rng(18);
  for (int t = 0; t < 60; ++t) {
    auto x = Random(rng, 3, 2 + t % 2, 1);
    std::vector<bool> sincere = {t % 2 == 0, t % 3 == 0, t % 5 == 0};
    auto n = BostonNashSet(x, sincere);
    CHECK(Outcomes(n.equilibria) == Outcomes(n.stable));
    CHECK(Outcomes(n.stable) == Outcomes(StableSet(n.adjusted)));
  }
  CHECK_THROWS_AS(BostonNashSet(Random(rng, 4, 2), {false, false, false, false}),
                  CapError);
}

TEST_CASE("adjusted priorities put strategic students on top") {
  auto s = std::get<SchoolInstance>(Load("nje_pe.json"));
  auto adj = AdjustedPriorities(s, {true, false, true});
  for (int k = 0; k < s.num_schools(); ++k) {
    REQUIRE(!adj.priority[k].empty());
    CHECK(adj.priority[k][0] == 1);
  }
}

TEST_CASE("cutoffs exist exactly for allocations without justified envy") {
  SplitMix64 rng(19);
  int with = 0, without = 0;
  for (int t = 0; t < 40; ++t) {
    auto s = Random(rng, 3, 2 + t % 2, 1 + t % 2);
    Instance inst = s;
    for (const auto& a : EnumerateSatisfying(inst, {"IR"})) {
      if (Holds(inst, a, "NJE-basic")) {
        auto c = ConstructCutoffs(s, a);
        REQUIRE(c.has_value());
        CHECK(SupportsCutoffs(s, a, *c));
        ++with;
      } else {
        CHECK(!ConstructCutoffs(s, a).has_value());
        CHECK(CertifyNoCutoffs(s, a));
        ++without;
      }
    }
  }
  CHECK(with > 0);
  CHECK(without > 0);
}

TEST_CASE("strategy-proofness: DA holds, Boston falls to Banu ranking Y") {
  auto inst = Load("ipda.json");
  auto da = CheckStrategyProofness(ParseMechanismCall("da_student"), inst);
  CHECK(da.holds);
  auto bos = CheckStrategyProofness(ParseMechanismCall("boston"), inst);
  REQUIRE(!bos.holds);
  CHECK(bos.witness->agents.front() == 1);
  REQUIRE(!bos.witness->report.empty());
  CHECK(bos.witness->report.front() == 1);
  CHECK(ReplaySpWitness(ParseMechanismCall("boston"), inst, *bos.witness));
}

TEST_CASE("strategy-proofness: MCSD falls to Alp reporting only X") {
  auto inst = Load("mcsd_efficiency.json");
  auto call = ParseMechanismCall("mcsd");
  auto v = CheckStrategyProofness(call, inst);
  REQUIRE(!v.holds);
  CHECK(v.witness->agents.front() == 0);
  CHECK(v.witness->report == Ranking{0});
  CHECK(ReplaySpWitness(call, inst, *v.witness));
}

TEST_CASE("strategy-proofness holds for DA and SC-TTC on random instances") {
  SplitMix64 rng(20);
  for (int t = 0; t < 15; ++t) {
    Instance inst = Random(rng, 3, 3, 1 + t % 2);
    CHECK(CheckStrategyProofness(ParseMechanismCall("da_student"), inst).holds);
    CHECK(CheckStrategyProofness(ParseMechanismCall("sc_ttc"), inst).holds);
  }
}

TEST_CASE("strategy-proofness respects the caps") {
  SplitMix64 rng(21);
  Instance inst = Random(rng, 5, 2);
  CHECK_THROWS_AS(
      CheckStrategyProofness(ParseMechanismCall("da_student"), inst),
      CapError);
  auto caps = Caps::Parse("agents=5");
  CHECK(caps.agents == 5);
  CHECK(CheckStrategyProofness(ParseMechanismCall("da_student"), inst, caps)
            .holds);
}

TEST_CASE("priority improvements: MCSD can punish a raised student") {
  auto inst = Load("mcsd_priority_loss.json");
  auto v = CheckPriorityImprovements(ParseMechanismCall("mcsd"), inst);
  CHECK(!v.holds);
  REQUIRE(v.witness.has_value());
}

TEST_CASE("priority improvements hold for DA and SC-TTC") {
  SplitMix64 rng(22);
  for (int t = 0; t < 30; ++t) {
    Instance inst = Random(rng, 4, 3, 1 + t % 2);
    CHECK(CheckPriorityImprovements(ParseMechanismCall("da_student"), inst)
              .holds);
    CHECK(CheckPriorityImprovements(ParseMechanismCall("sc_ttc"), inst).holds);
  }
}

TEST_CASE("axiom lists parse with aliases") {
  auto v = ParseAxiomList("IR,NW, SP,MAHR");
  REQUIRE(v.size() == 4);
  CHECK(v[2] == "strategy-proofness");
  CHECK(v[3] == "max-HR-accommodation");
  auto inst = Load("ipda.json");
  auto a = twosided::DaStudent(std::get<SchoolInstance>(inst));
  CHECK_THROWS_AS(CheckAllocation(inst, a, ParseAxiomList("IR,nonsense")),
                  ValidationError);
}

}  // namespace
}  // namespace mdtk::axioms
