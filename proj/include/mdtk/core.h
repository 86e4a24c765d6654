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

#ifndef MDTK_CORE_H_
#define MDTK_CORE_H_

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace mdtk {

// Agents and resources are dense indices inside an instance; string ids live
// in Names and only matter at the I/O boundary.
inline constexpr int kUnmatched = -1;
// Exchange only: the patient receives priority on the deceased-donor list.
inline constexpr int kWaitlist = -2;

using Ranking = std::vector<int>;  // most preferred first
using Trace = std::vector<std::string>;

struct Names {
  std::vector<std::string> agents;
  std::vector<std::string> resources;
};

// Canonical allocation. Every agent has an explicit entry; `label` carries a
// category or price tier and `slot` an HR group, -1 when unused.
struct Allocation {
  std::vector<int> resource;
  std::vector<int> label;
  std::vector<int> slot;

  Allocation() = default;
  explicit Allocation(int num_agents)
      : resource(num_agents, kUnmatched),
        label(num_agents, -1),
        slot(num_agents, -1) {}

  int size() const { return static_cast<int>(resource.size()); }
  void Assign(int agent, int res, int lab = -1, int hr = -1) {
    resource[agent] = res;
    label[agent] = lab;
    slot[agent] = hr;
  }
  bool operator==(const Allocation&) const = default;
  auto operator<=>(const Allocation&) const = default;
};

class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(std::vector<std::string> errors);
  const std::vector<std::string>& errors() const { return errors_; }

 private:
  std::vector<std::string> errors_;
};

// Raised when an exhaustive operation is asked to exceed its size cap.
class CapError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Position of `item` in `ranking`, or -1 if absent.
int RankOf(const Ranking& ranking, int item);

// Inverse lookup table: table[item] = position, -1 when unlisted.
std::vector<int> RankTable(const Ranking& ranking, int universe);

// Utility order used by every outcome comparison: listed items by position,
// then "unmatched", then unlisted (unacceptable) items. Lower is better.
int OutcomeRank(const Ranking& ranking, int item);

// True iff `a` is strictly preferred to `b` under `ranking`.
inline bool Prefers(const Ranking& ranking, int a, int b) {
  return OutcomeRank(ranking, a) < OutcomeRank(ranking, b);
}

// All rankings of length 0..max_len over {0..n-1}, shorter first, then
// lexicographic. Throws CapError when n > 6.
std::vector<Ranking> EnumerateRankings(int n, int max_len);

// splitmix64 stream.
class SplitMix64 {
 public:
  explicit SplitMix64(uint64_t seed) : state_(seed) {}
  uint64_t Next();
  // Uniform in [0, bound).
  uint64_t Below(uint64_t bound);

 private:
  uint64_t state_;
};

template <typename T>
void Shuffle(std::vector<T>& v, SplitMix64& rng) {
  for (size_t i = v.size(); i > 1; --i) {
    size_t j = rng.Below(i);
    std::swap(v[i - 1], v[j]);
  }
}

std::vector<int> Iota(int n);

}  // namespace mdtk

#endif  // MDTK_CORE_H_
