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

#include "mdtk/core.h"

#include <numeric>
#include <utility>

namespace mdtk {
namespace {

std::string JoinErrors(const std::vector<std::string>& errors) {
  std::string out;
  for (const auto& e : errors) {
    if (!out.empty()) out += "; ";
    out += e;
  }
  return out;
}

void Extend(int n, int max_len, std::vector<bool>& used, Ranking& cur,
            std::vector<Ranking>& out) {
  if (static_cast<int>(cur.size()) == max_len) {
    out.push_back(cur);
    return;
  }
  for (int r = 0; r < n; ++r) {
    if (used[r]) continue;
    used[r] = true;
    cur.push_back(r);
    Extend(n, max_len, used, cur, out);
    cur.pop_back();
    used[r] = false;
  }
}

}  // namespace

ValidationError::ValidationError(std::vector<std::string> errors)
    : std::runtime_error(JoinErrors(errors)), errors_(std::move(errors)) {}

int RankOf(const Ranking& ranking, int item) {
  for (int i = 0; i < static_cast<int>(ranking.size()); ++i) {
    if (ranking[i] == item) return i;
  }
  return -1;
}

std::vector<int> RankTable(const Ranking& ranking, int universe) {
  std::vector<int> table(universe, -1);
  for (int i = 0; i < static_cast<int>(ranking.size()); ++i) {
    table[ranking[i]] = i;
  }
  return table;
}

int OutcomeRank(const Ranking& ranking, int item) {
  const int len = static_cast<int>(ranking.size());
  if (item == kUnmatched) return len;
  int pos = RankOf(ranking, item);
  return pos < 0 ? len + 1 : pos;
}

std::vector<Ranking> EnumerateRankings(int n, int max_len) {
  if (n > 6) throw CapError("enumerate_rankings: more than 6 resources");
  if (max_len > n) max_len = n;
  std::vector<Ranking> out;
  std::vector<bool> used(n, false);
  Ranking cur;
  for (int len = 0; len <= max_len; ++len) {
    Extend(n, len, used, cur, out);
  }
  return out;
}

uint64_t SplitMix64::Next() {
  uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

uint64_t SplitMix64::Below(uint64_t bound) {
  // Rejection sampling keeps the draw exactly uniform.
  const uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  uint64_t x;
  do {
    x = Next();
  } while (x >= limit);
  return x % bound;
}

std::vector<int> Iota(int n) {
  std::vector<int> v(n);
  std::iota(v.begin(), v.end(), 0);
  return v;
}

}  // namespace mdtk
