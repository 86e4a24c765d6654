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
#include <functional>

#include "doctest.h"
#include "mdtk/twosided.h"
#include "test_util.h"

namespace mdtk::twosided {
namespace {

using testing::Load;
using testing::View;

io::Json J(const char* text) { return io::Json::parse(text); }

SchoolInstance Random(SplitMix64& rng, int n, int m, int cap = 1,
                      const char* extra = "") {
  auto p = Params::Parse("n=" + std::to_string(n) + ",m=" + std::to_string(m) +
                         ",capacity=" + std::to_string(cap) + extra);
  return std::get<SchoolInstance>(io::Generate(Family::kTwoSided, p, rng.Next()));
}

int PrioPos(const SchoolInstance& s, int school, int student) {
  return RankOf(s.priority[school], student);
}

// Students-side DA written from scratch for the oracle tests; `rank` is the
// priority position (lower is better, -1 ineligible).
std::vector<int> PlainDa(const std::vector<Ranking>& prefs,
                         const std::vector<int>& cap,
                         const std::vector<std::vector<int>>& rank) {
  const int n = static_cast<int>(prefs.size());
  std::vector<int> next(n, 0), match(n, kUnmatched);
  std::vector<std::vector<int>> held(cap.size());
  bool moved = true;
  while (moved) {
    moved = false;
    for (int i = 0; i < n; ++i) {
      if (match[i] != kUnmatched) continue;
      while (next[i] < static_cast<int>(prefs[i].size())) {
        const int s = prefs[i][next[i]++];
        if (rank[s][i] < 0) continue;
        held[s].push_back(i);
        std::sort(held[s].begin(), held[s].end(),
                  [&](int a, int b) { return rank[s][a] < rank[s][b]; });
        match[i] = s;
        moved = true;
        if (static_cast<int>(held[s].size()) > cap[s]) {
          const int out = held[s].back();
          held[s].pop_back();
          match[out] = kUnmatched;
          if (out == i) continue;
        }
        break;
      }
    }
  }
  return match;
}

std::vector<std::vector<int>> Ranks(const SchoolInstance& s) {
  std::vector<std::vector<int>> r(s.num_schools(),
                                  std::vector<int>(s.num_students(), -1));
  for (int k = 0; k < s.num_schools(); ++k) {
    for (int i = 0; i < s.num_students(); ++i) r[k][i] = PrioPos(s, k, i);
  }
  return r;
}

std::vector<Allocation> AllFeasible(const SchoolInstance& s) {
  std::vector<Allocation> out;
  Allocation a(s.num_students());
  std::vector<int> load(s.num_schools(), 0);
  std::function<void(int)> go = [&](int i) {
    if (i == s.num_students()) {
      out.push_back(a);
      return;
    }
    a.resource[i] = kUnmatched;
    go(i + 1);
    for (int k = 0; k < s.num_schools(); ++k) {
      if (load[k] == s.capacity[k] || PrioPos(s, k, i) < 0) continue;
      ++load[k];
      a.resource[i] = k;
      go(i + 1);
      --load[k];
    }
    a.resource[i] = kUnmatched;
  };
  go(0);
  return out;
}

bool Ir(const SchoolInstance& s, const Allocation& a) {
  for (int i = 0; i < s.num_students(); ++i) {
    if (a.resource[i] >= 0 && RankOf(s.prefs[i], a.resource[i]) < 0) return false;
  }
  return true;
}

bool Nje(const SchoolInstance& s, const Allocation& a) {
  for (int i = 0; i < s.num_students(); ++i) {
    for (int j = 0; j < s.num_students(); ++j) {
      const int k = a.resource[j];
      if (k < 0 || i == j) continue;
      if (!Prefers(s.prefs[i], k, a.resource[i])) continue;
      const int pi = PrioPos(s, k, i);
      if (pi >= 0 && pi < PrioPos(s, k, j)) return false;
    }
  }
  return true;
}

bool Nw(const SchoolInstance& s, const Allocation& a) {
  std::vector<int> load(s.num_schools(), 0);
  for (int r : a.resource) {
    if (r >= 0) ++load[r];
  }
  for (int i = 0; i < s.num_students(); ++i) {
    for (int k = 0; k < s.num_schools(); ++k) {
      if (load[k] < s.capacity[k] && PrioPos(s, k, i) >= 0 &&
          Prefers(s.prefs[i], k, a.resource[i])) {
        return false;
      }
    }
  }
  return true;
}

// -1: a worse for someone and never better, 1: weakly better for all and
// strictly for one, 0 otherwise.
int Dominance(const SchoolInstance& s, const Allocation& a, const Allocation& b) {
  bool better = false, worse = false;
  for (int i = 0; i < s.num_students(); ++i) {
    const int ra = OutcomeRank(s.prefs[i], a.resource[i]);
    const int rb = OutcomeRank(s.prefs[i], b.resource[i]);
    if (ra < rb) better = true;
    if (ra > rb) worse = true;
  }
  if (better && !worse) return 1;
  if (worse && !better) return -1;
  return 0;
}

TEST_CASE("student-proposing DA on the four-student example") {
  auto inst = Load("ipda.json");
  auto a = DaStudent(std::get<SchoolInstance>(inst));
  CHECK(View(inst, a) ==
        J(R"({"Alp":"X","Banu":"Y","Cora":"Z","Diya":"X"})"));
}

TEST_CASE("college-proposing DA on the four-student example") {
  auto inst = Load("ipda.json");
  auto a = DaCollege(std::get<SchoolInstance>(inst));
  CHECK(View(inst, a) ==
        J(R"({"Alp":"X","Banu":"Z","Cora":"Y","Diya":"X"})"));
}

TEST_CASE("Boston and SC-TTC on the four-student example") {
  auto inst = Load("ipda.json");
  const auto& s = std::get<SchoolInstance>(inst);
  const auto expected = J(R"({"Alp":"X","Banu":"Z","Cora":"X","Diya":"Y"})");
  CHECK(View(inst, Boston(s)) == expected);
  Trace trace;
  CHECK(View(inst, ScTtc(s, &trace)) == expected);
  CHECK(!trace.empty());
}

TEST_CASE("Boston rewards Banu for ranking Y first") {
  auto inst = Load("ipda.json");
  auto s = std::get<SchoolInstance>(inst);
  s.prefs[1] = {1, 0, 2};
  CHECK(Boston(s).resource[1] == 1);
}

TEST_CASE("DA on the NJE versus efficiency example") {
  auto inst = Load("nje_pe.json");
  auto a = DaStudent(std::get<SchoolInstance>(inst));
  CHECK(View(inst, a) == J(R"({"Alp":"Y","Banu":"X","Cora":null})"));
}

TEST_CASE("first choices are granted when they are all distinct") {
  SchoolInstance s;
  s.names.agents = {"a", "b", "c"};
  s.names.resources = {"x", "y", "z"};
  s.prefs = {{2, 0}, {0, 1}, {1, 2}};
  s.capacity = {1, 1, 1};
  s.priority = {{0, 1, 2}, {2, 1, 0}, {1, 0, 2}};
  s.score.assign(3, std::nullopt);
  for (auto mech : {DaStudent, Boston, ScTtc, DaCollege}) {
    CHECK(mech(s, nullptr).resource == std::vector<int>{2, 0, 1});
  }
}

TEST_CASE("single mutually acceptable pair is matched by both DA variants") {
  SchoolInstance s;
  s.names.agents = {"a"};
  s.names.resources = {"x"};
  s.prefs = {{0}};
  s.capacity = {1};
  s.priority = {{0}};
  s.score = {std::nullopt};
  CHECK(DaCollege(s).resource[0] == 0);
  CHECK(DaStudent(s).resource[0] == 0);
  CHECK(ScTtc(s).resource[0] == 0);
}

TEST_CASE("MCSD worked example leaves Diya unmatched") {
  auto inst = Load("mcsd.json");
  Trace trace;
  auto a = Mcsd(std::get<SchoolInstance>(inst), &trace);
  CHECK(View(inst, a) ==
        J(R"({"Alp":"Y","Banu":"X","Cora":"X","Diya":null,"Ezra":"Z"})"));
  CHECK(trace.size() >= 3);
}

TEST_CASE("MCSD gives both students their second choices") {
  auto inst = Load("mcsd_efficiency.json");
  const auto& s = std::get<SchoolInstance>(inst);
  auto a = Mcsd(s);
  CHECK(View(inst, a) == J(R"({"Alp":"Y","Banu":"X"})"));
  CHECK(Dominance(s, DaStudent(s), a) == 1);
}

TEST_CASE("MCSD equals college-proposing DA with fields as proposers") {
  SplitMix64 rng(12);
  for (int k = 0; k < 150; ++k) {
    auto s = Random(rng, 2 + k % 4, 3, 1 + k % 2, ",fields=2");
    CHECK(Mcsd(s) == DaCollege(InducedByFields(s)));
  }
}

TEST_CASE("DA outputs match a from-scratch implementation") {
  SplitMix64 rng(1);
  for (int k = 0; k < 300; ++k) {
    auto s = Random(rng, 1 + k % 6, 1 + k % 4, 1 + k % 2);
    CHECK(DaStudent(s).resource == PlainDa(s.prefs, s.capacity, Ranks(s)));
  }
}

TEST_CASE("both DA outputs are stable") {
  SplitMix64 rng(2);
  for (int k = 0; k < 200; ++k) {
    auto s = Random(rng, 1 + k % 5, 1 + k % 3, 1 + k % 2);
    for (const auto& a : {DaStudent(s), DaCollege(s)}) {
      CHECK(Ir(s, a));
      CHECK(Nw(s, a));
      CHECK(Nje(s, a));
    }
  }
}

TEST_CASE("DA is the best and college DA the worst fair allocation") {
  SplitMix64 rng(3);
  for (int k = 0; k < 120; ++k) {
    auto s = Random(rng, 2 + k % 3, 2 + k % 2);
    const auto best = DaStudent(s);
    const auto worst = DaCollege(s);
    for (const auto& a : AllFeasible(s)) {
      if (!Nje(s, a)) continue;
      CHECK(Dominance(s, a, best) != 1);
      if (Ir(s, a) && Nw(s, a)) CHECK(Dominance(s, a, worst) != -1);
    }
  }
}

TEST_CASE("Boston is Pareto efficient under the submitted preferences") {
  SplitMix64 rng(4);
  for (int k = 0; k < 120; ++k) {
    auto s = Random(rng, 2 + k % 3, 2 + k % 2, 1 + k % 2);
    const auto b = Boston(s);
    for (const auto& a : AllFeasible(s)) CHECK(Dominance(s, a, b) != 1);
  }
}

SchoolInstance ScoredIpda() {
  auto s = std::get<SchoolInstance>(Load("ipda.json"));
  s.score = {90, 80, 70, 60};
  for (auto& p : s.priority) p = {0, 1, 2, 3};
  return s;
}

TEST_CASE("Taiwan deduction: zero rule is DA, huge jumps are Boston") {
  auto s = ScoredIpda();
  CHECK(TaiwanDeduction(s, {0, 0, 0}) == DaStudent(s));
  CHECK(TaiwanDeduction(s, {0, 100, 200}) == Boston(s));
  SplitMix64 rng(6);
  for (int k = 0; k < 100; ++k) {
    auto r = Random(rng, 4, 3, 1, ",scores=1");
    CHECK(TaiwanDeduction(r, {0, 0, 0}) == DaStudent(r));
    CHECK(TaiwanDeduction(r, {0, 1000, 2000}) == Boston(r));
  }
  CHECK_THROWS(TaiwanDeduction(s, {0, 1}));
}

TEST_CASE("Taiwan deduction with a small late deduction matches an oracle") {
  SplitMix64 rng(7);
  const std::vector<int> rule = {0, 0, 0, 0, 0, 15};
  for (int k = 0; k < 60; ++k) {
    auto s = Random(rng, 6, 6, 1, ",scores=1");
    std::vector<std::vector<int>> rank(6, std::vector<int>(6, -1));
    for (int school = 0; school < 6; ++school) {
      std::vector<int> order(6);
      for (int i = 0; i < 6; ++i) order[i] = i;
      auto eff = [&](int i) {
        const int pos = RankOf(s.prefs[i], school);
        return *s.score[i] - (pos < 0 ? 0 : rule[pos]);
      };
      std::sort(order.begin(), order.end(), [&](int a, int b) {
        if (eff(a) != eff(b)) return eff(a) > eff(b);
        if (*s.score[a] != *s.score[b]) return *s.score[a] > *s.score[b];
        return s.names.agents[a] < s.names.agents[b];
      });
      for (int p = 0; p < 6; ++p) rank[school][order[p]] = p;
    }
    CHECK(TaiwanDeduction(s, rule).resource == PlainDa(s.prefs, s.capacity, rank));
  }
}

TEST_CASE("parallel mechanism reductions and a two-band oracle") {
  SplitMix64 rng(8);
  for (int k = 0; k < 80; ++k) {
    auto s = Random(rng, 4, 4, 1, ",scores=1");
    CHECK(ParallelMechanism(s, {4}) == DaStudent(s));
    CHECK(ParallelMechanism(s, {1, 1, 1, 1}) == Boston(s));
    std::vector<std::vector<int>> rank(4, std::vector<int>(4, -1));
    for (int school = 0; school < 4; ++school) {
      std::vector<int> order = {0, 1, 2, 3};
      auto band = [&](int i) {
        const int pos = RankOf(s.prefs[i], school);
        return pos < 0 ? 9 : pos / 2;
      };
      std::sort(order.begin(), order.end(), [&](int a, int b) {
        if (band(a) != band(b)) return band(a) < band(b);
        return PrioPos(s, school, a) < PrioPos(s, school, b);
      });
      for (int p = 0; p < 4; ++p) rank[school][order[p]] = p;
    }
    CHECK(ParallelMechanism(s, {2, 2}).resource ==
          PlainDa(s.prefs, s.capacity, rank));
  }
}

TEST_CASE("SC-TTC on the example admits Banu's justified envy toward Diya") {
  auto inst = Load("ipda.json");
  auto a = ScTtc(std::get<SchoolInstance>(inst));
  auto v = axioms::CheckAxiom(inst, a, "NJE");
  REQUIRE(!v.holds);
  CHECK(v.witness->agents == std::vector<int>{1, 3});
  CHECK(v.witness->items == std::vector<int>{1});
}

}  // namespace
}  // namespace mdtk::twosided
