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

#include "mdtk/exchange.h"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <set>
#include <stdexcept>
#include <unordered_map>

namespace mdtk::exchange {
namespace {

int CountTransplants(const std::vector<Structure>& structures) {
  int total = 0;
  for (const Structure& s : structures) {
    total += static_cast<int>(s.pairs.size());
    if (s.chain && s.source < 0) --total;  // head of a w-chain gets list priority
  }
  return total;
}

Allocation Realize(const ExchangePool& pool,
                   const std::vector<Structure>& structures) {
  Allocation out(pool.num_pairs());
  for (const Structure& s : structures) {
    const int m = static_cast<int>(s.pairs.size());
    if (!s.chain) {
      for (int k = 0; k < m; ++k) out.Assign(s.pairs[(k + 1) % m], s.pairs[k]);
    } else {
      for (int k = 0; k < m; ++k) {
        int kidney = k == 0 ? (s.source < 0 ? kWaitlist : s.source)
                            : s.pairs[k - 1];
        out.Assign(s.pairs[k], kidney);
      }
    }
  }
  return out;
}

std::vector<int> PriorityOrder(const ExchangePool& pool) {
  return pool.priority.empty() ? Iota(pool.num_pairs()) : pool.priority;
}

}  // namespace

std::vector<std::string> Validate(const ExchangePool& pool) {
  std::vector<std::string> errors;
  const int n = pool.num_pairs();
  const int nk = pool.num_kidneys();
  if (nk < n) errors.push_back("every pair needs a donor");
  if (static_cast<int>(pool.compatible.size()) != nk) {
    errors.push_back("compatibility must cover every kidney");
  } else {
    for (const auto& row : pool.compatible) {
      if (static_cast<int>(row.size()) != n) {
        errors.push_back("compatibility must cover every pair");
        break;
      }
    }
  }
  if (pool.HasPreferences()) {
    if (static_cast<int>(pool.prefs.size()) != n) {
      errors.push_back("preferences must be given for every pair or none");
    } else {
      for (int p = 0; p < n; ++p) {
        std::set<int> seen;
        for (int k : pool.prefs[p]) {
          if (k != kWaitlist && (k < 0 || k >= nk)) {
            errors.push_back("dangling reference: ranking of " +
                             pool.names.agents[p]);
          } else if (!seen.insert(k).second) {
            errors.push_back("non-strict ranking: " + pool.names.agents[p]);
          }
        }
      }
    }
  }
  if (!pool.priority.empty()) {
    std::vector<int> sorted = pool.priority;
    std::sort(sorted.begin(), sorted.end());
    if (sorted != Iota(n)) errors.push_back("priority must list every pair once");
  }
  return errors;
}

ClearingResult Ttcc(const ExchangePool& pool, ChainPolicy policy,
                    Trace* trace) {
  if (!pool.HasPreferences()) {
    throw std::invalid_argument("ttcc requires pair preferences");
  }
  const int n = pool.num_pairs();
  const int nk = pool.num_kidneys();
  std::vector<bool> active(n, true), available(nk, true);
  // A kidney is attached while its own pair is still active.
  auto owner = [&](int kidney) {
    return kidney < n && active[kidney] ? kidney : -1;
  };
  const auto order = PriorityOrder(pool);
  ClearingResult result;
  int left = n;
  for (int round = 1; left > 0; ++round) {
    std::vector<int> point(n, kUnmatched);
    bool dropped = false;
    for (int p = 0; p < n; ++p) {
      if (!active[p]) continue;
      for (int k : pool.prefs[p]) {
        if (k == kWaitlist || available[k]) {
          point[p] = k;
          break;
        }
      }
      if (point[p] == kUnmatched) {
        active[p] = false;
        available[p] = false;
        --left;
        dropped = true;
        if (trace) trace->push_back("round " + std::to_string(round) + ": " +
                                    pool.names.agents[p] + " leaves unmatched");
      }
    }
    if (dropped) continue;
    auto next = [&](int p) {
      return point[p] == kWaitlist ? -1 : owner(point[p]);
    };
    // Cycles: walk from every pair; a walk that revisits its own path closes
    // a cycle.
    std::vector<int> state(n, 0);  // 0 new, 1 on path, 2 done
    std::vector<Structure> cycles;
    for (int s = 0; s < n; ++s) {
      if (!active[s] || state[s]) continue;
      std::vector<int> path;
      int v = s;
      while (v >= 0 && state[v] == 0) {
        state[v] = 1;
        path.push_back(v);
        v = next(v);
      }
      if (v >= 0 && state[v] == 1) {
        auto it = std::find(path.begin(), path.end(), v);
        Structure c;
        // the walk follows the kidney each pair wants; donation runs backwards
        c.pairs.assign(std::make_reverse_iterator(path.end()),
                       std::make_reverse_iterator(it));
        std::rotate(c.pairs.begin(),
                    std::min_element(c.pairs.begin(), c.pairs.end()),
                    c.pairs.end());
        cycles.push_back(c);
      }
      for (int p : path) state[p] = 2;
    }
    if (!cycles.empty()) {
      std::sort(cycles.begin(), cycles.end(),
                [](const Structure& a, const Structure& b) {
                  return a.pairs < b.pairs;
                });
      for (const Structure& c : cycles) {
        for (int p : c.pairs) {
          active[p] = false;
          available[p] = false;
          --left;
        }
        if (trace) trace->push_back("round " + std::to_string(round) +
                                    ": cycle " + StructureName(pool, c));
        result.structures.push_back(c);
      }
      continue;
    }
    // No cycle: take the chain walked from the highest-priority pair.
    int start = -1;
    for (int p : order) {
      if (active[p]) {
        start = p;
        break;
      }
    }
    std::vector<int> walk;
    for (int v = start; v >= 0; v = next(v)) walk.push_back(v);
    Structure chain;
    chain.chain = true;
    const int end = point[walk.back()];
    chain.source = end == kWaitlist ? -1 : end;
    chain.pairs.assign(walk.rbegin(), walk.rend());
    if (end != kWaitlist) available[end] = false;
    for (int p : walk) active[p] = false;
    for (size_t k = 1; k < walk.size(); ++k) available[walk[k]] = false;
    left -= static_cast<int>(walk.size());
    if (policy == ChainPolicy::kRemoveChain) available[start] = false;
    if (trace) {
      trace->push_back("round " + std::to_string(round) + ": chain " +
                       StructureName(pool, chain) + ", tail kidney " +
                       pool.names.resources[start] +
                       (policy == ChainPolicy::kRemoveChain ? " to the list"
                                                           : " stays"));
    }
    result.structures.push_back(chain);
  }
  result.transplants = CountTransplants(result.structures);
  result.allocation = Realize(pool, result.structures);
  return result;
}

ClearingResult PriorityMatching2Way(const ExchangePool& pool, Trace* trace) {
  const int n = pool.num_pairs();
  if (n > 24) throw CapError("priority_matching_2way: more than 24 pairs");
  std::vector<std::vector<int>> adj(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i != j && pool.compatible[i][j] && pool.compatible[j][i]) {
        adj[i].push_back(j);
      }
    }
  }
  // Finds a matching covering every vertex of `locked`; failures memoized by
  // the set of vertices already used.
  auto cover = [&](uint32_t locked, std::vector<std::pair<int, int>>* edges) {
    std::vector<char> failed(size_t{1} << n, 0);
    std::function<bool(uint32_t)> go = [&](uint32_t used) -> bool {
      uint32_t todo = locked & ~used;
      if (!todo) return true;
      if (failed[used]) return false;
      int v = std::countr_zero(todo);
      for (int u : adj[v]) {
        if (used & (1u << u)) continue;
        if (go(used | (1u << v) | (1u << u))) {
          if (edges) edges->push_back({std::min(u, v), std::max(u, v)});
          return true;
        }
      }
      failed[used] = 1;
      return false;
    };
    return go(0);
  };
  uint32_t locked = 0;
  for (int p : PriorityOrder(pool)) {
    if (cover(locked | (1u << p), nullptr)) {
      locked |= 1u << p;
      if (trace) trace->push_back("lock " + pool.names.agents[p]);
    } else if (trace) {
      trace->push_back("skip " + pool.names.agents[p]);
    }
  }
  std::vector<std::pair<int, int>> edges;
  cover(locked, &edges);
  std::sort(edges.begin(), edges.end());
  ClearingResult result;
  for (auto [a, b] : edges) result.structures.push_back({false, -1, {a, b}});
  result.transplants = CountTransplants(result.structures);
  result.allocation = Realize(pool, result.structures);
  return result;
}

std::vector<Structure> EnumerateStructures(const ExchangePool& pool,
                                           int cycle_cap, int chain_cap) {
  const int n = pool.num_pairs();
  if (n > 15) throw CapError("enumerate_structures: more than 15 pairs");
  if (cycle_cap > 6 || chain_cap > 6) {
    throw CapError("enumerate_structures: caps above 6");
  }
  std::vector<Structure> out;
  std::vector<int> path;
  std::vector<bool> on(n, false);
  std::function<void(int)> cycles = [&](int start) {
    int last = path.back();
    if (pool.compatible[last][start]) out.push_back({false, -1, path});
    if (static_cast<int>(path.size()) == cycle_cap) return;
    for (int v = start + 1; v < n; ++v) {
      if (on[v] || !pool.compatible[last][v]) continue;
      on[v] = true;
      path.push_back(v);
      cycles(start);
      path.pop_back();
      on[v] = false;
    }
  };
  for (int s = 0; s < n && cycle_cap >= 1; ++s) {
    path = {s};
    on[s] = true;
    cycles(s);
    on[s] = false;
  }
  std::function<void(int)> chains = [&](int ndd) {
    out.push_back({true, ndd, path});
    if (static_cast<int>(path.size()) == chain_cap) return;
    int last = path.back();
    for (int v = 0; v < n; ++v) {
      if (on[v] || !pool.compatible[last][v]) continue;
      on[v] = true;
      path.push_back(v);
      chains(ndd);
      path.pop_back();
      on[v] = false;
    }
  };
  for (int d = n; d < pool.num_kidneys() && chain_cap >= 1; ++d) {
    for (int v = 0; v < n; ++v) {
      if (!pool.compatible[d][v]) continue;
      path = {v};
      on[v] = true;
      chains(d);
      on[v] = false;
    }
  }
  return out;
}

ClearingResult MaxTransplants(const ExchangePool& pool, int cycle_cap,
                              int chain_cap, Trace* trace) {
  const int n = pool.num_pairs();
  if (n > 15) throw CapError("max_transplants: more than 15 pairs");
  if (pool.num_ndds() > 16) throw CapError("max_transplants: more than 16 NDDs");
  const auto all = EnumerateStructures(pool, cycle_cap, chain_cap);
  std::vector<std::vector<int>> by_min(n);
  std::vector<uint64_t> need(all.size(), 0);
  for (size_t k = 0; k < all.size(); ++k) {
    for (int p : all[k].pairs) need[k] |= uint64_t{1} << p;
    if (all[k].chain) need[k] |= uint64_t{1} << all[k].source;
    by_min[*std::min_element(all[k].pairs.begin(), all[k].pairs.end())]
        .push_back(k);
  }
  const uint64_t pair_bits = (uint64_t{1} << n) - 1;
  std::unordered_map<uint64_t, int> memo;
  std::function<int(uint64_t)> best = [&](uint64_t free) -> int {
    if (!(free & pair_bits)) return 0;
    if (auto it = memo.find(free); it != memo.end()) return it->second;
    int v = std::countr_zero(free & pair_bits);
    int value = best(free & ~(uint64_t{1} << v));
    for (int k : by_min[v]) {
      if ((need[k] & free) != need[k]) continue;
      int gain = static_cast<int>(all[k].pairs.size());
      value = std::max(value, gain + best(free & ~need[k]));
    }
    memo[free] = value;
    return value;
  };
  uint64_t free = (uint64_t{1} << pool.num_kidneys()) - 1;
  ClearingResult result;
  while (free & pair_bits) {
    int v = std::countr_zero(free & pair_bits);
    int target = best(free);
    bool taken = false;
    for (int k : by_min[v]) {
      if ((need[k] & free) != need[k]) continue;
      int gain = static_cast<int>(all[k].pairs.size());
      if (gain + best(free & ~need[k]) == target) {
        result.structures.push_back(all[k]);
        if (trace) trace->push_back("take " + StructureName(pool, all[k]));
        free &= ~need[k];
        taken = true;
        break;
      }
    }
    if (!taken) free &= ~(uint64_t{1} << v);
  }
  result.transplants = CountTransplants(result.structures);
  result.allocation = Realize(pool, result.structures);
  return result;
}

std::string StructureName(const ExchangePool& pool, const Structure& s) {
  std::string out;
  if (s.chain) {
    out = s.source < 0 ? "w" : pool.names.resources[s.source];
    for (int p : s.pairs) out += " -> " + pool.names.agents[p];
    return out;
  }
  for (int p : s.pairs) out += pool.names.agents[p] + " -> ";
  return out + pool.names.agents[s.pairs.front()];
}

}  // namespace mdtk::exchange
