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

#include "mdtk/registry.h"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace mdtk {
namespace {

template <typename T>
const T& As(const Instance& inst) {
  return std::get<T>(inst);
}

std::vector<int> RequireList(const Params& p, const std::string& mech,
                             const std::string& key) {
  if (!p.Has(key)) {
    throw ValidationError({mech + " requires parameter " + key});
  }
  return p.GetIntList(key);
}

Outcome Plain(Allocation a) { return Outcome{std::move(a), std::nullopt}; }

Outcome Cleared(const exchange::ClearingResult& r) {
  return Outcome{r.allocation, r};
}

std::vector<bool> OptIn(const onesided::HousingInstance& inst,
                        const Params& p) {
  const std::string spec = p.GetString("optin", "all");
  std::vector<bool> optin(inst.num_agents(), spec == "all");
  if (spec == "all" || spec == "none") return optin;
  std::stringstream ss(spec);
  std::string id;
  while (std::getline(ss, id, '/')) {
    auto it = std::find(inst.names.agents.begin(), inst.names.agents.end(), id);
    if (it == inst.names.agents.end()) {
      throw ValidationError({"optin names an unknown agent: " + id});
    }
    optin[it - inst.names.agents.begin()] = true;
  }
  return optin;
}

std::vector<Mechanism> BuildRegistry() {
  using onesided::HousingInstance;
  using twosided::SchoolInstance;
  using contracts::ContractsInstance;
  using reserves::ReserveInstance;
  using exchange::ExchangePool;
  std::vector<Mechanism> m;
  auto add = [&](std::string name, Family f, auto fn) {
    m.push_back({std::move(name), f, fn});
  };
  add("ssd", Family::kOneSided, [](const Instance& i, const Params&, Trace* t) {
    const auto& h = As<HousingInstance>(i);
    return Plain(onesided::Ssd(h, h.queue, t));
  });
  add("rsd", Family::kOneSided, [](const Instance& i, const Params& p, Trace* t) {
    return Plain(onesided::Rsd(As<HousingInstance>(i), p.GetSeed(0), t));
  });
  add("ssd_squatting", Family::kOneSided,
      [](const Instance& i, const Params& p, Trace* t) {
        const auto& h = As<HousingInstance>(i);
        return Plain(onesided::SsdWithSquattingRights(h, h.queue, OptIn(h, p), t));
      });
  add("gttc", Family::kOneSided, [](const Instance& i, const Params&, Trace* t) {
    return Plain(onesided::Gttc(As<HousingInstance>(i), t));
  });
  add("yrmh_igyt", Family::kOneSided,
      [](const Instance& i, const Params&, Trace* t) {
        const auto& h = As<HousingInstance>(i);
        return Plain(onesided::YrmhIgyt(h, h.queue, t));
      });
  add("technocratic_core", Family::kOneSided,
      [](const Instance& i, const Params& p, Trace* t) {
        return Plain(
            onesided::TechnocraticCore(As<HousingInstance>(i), p.GetSeed(0), t));
      });
  add("da_student", Family::kTwoSided,
      [](const Instance& i, const Params&, Trace* t) {
        return Plain(twosided::DaStudent(As<SchoolInstance>(i), t));
      });
  add("da_college", Family::kTwoSided,
      [](const Instance& i, const Params&, Trace* t) {
        return Plain(twosided::DaCollege(As<SchoolInstance>(i), t));
      });
  add("boston", Family::kTwoSided, [](const Instance& i, const Params&, Trace* t) {
    return Plain(twosided::Boston(As<SchoolInstance>(i), t));
  });
  add("sc_ttc", Family::kTwoSided, [](const Instance& i, const Params&, Trace* t) {
    return Plain(twosided::ScTtc(As<SchoolInstance>(i), t));
  });
  add("mcsd", Family::kTwoSided, [](const Instance& i, const Params&, Trace* t) {
    return Plain(twosided::Mcsd(As<SchoolInstance>(i), t));
  });
  add("taiwan_deduction", Family::kTwoSided,
      [](const Instance& i, const Params& p, Trace* t) {
        return Plain(twosided::TaiwanDeduction(
            As<SchoolInstance>(i), RequireList(p, "taiwan_deduction", "rule"), t));
      });
  add("parallel", Family::kTwoSided,
      [](const Instance& i, const Params& p, Trace* t) {
        return Plain(twosided::ParallelMechanism(
            As<SchoolInstance>(i), RequireList(p, "parallel", "bands"), t));
      });
  add("mpco", Family::kContracts, [](const Instance& i, const Params&, Trace* t) {
    return Plain(contracts::Mpco(As<ContractsInstance>(i), t));
  });
  add("usma2006", Family::kContracts,
      [](const Instance& i, const Params&, Trace* t) {
        return Plain(contracts::Usma2006(As<ContractsInstance>(i), t));
      });
  add("tsmg", Family::kReserves, [](const Instance& i, const Params&, Trace* t) {
    return Plain(reserves::TsmgChoice(As<ReserveInstance>(i), t));
  });
  add("tsmh", Family::kReserves, [](const Instance& i, const Params&, Trace* t) {
    return Plain(reserves::TsmhChoice(As<ReserveInstance>(i), t));
  });
  add("sci_akg", Family::kReserves,
      [](const Instance& i, const Params&, Trace* t) {
        return Plain(reserves::SciAkgChoice(As<ReserveInstance>(i), t));
      });
  add("reserve_sequence", Family::kReserves,
      [](const Instance& i, const Params&, Trace*) {
        const auto& r = As<ReserveInstance>(i);
        return Plain(reserves::ReserveSequenceChoice(r, r.precedence));
      });
  add("tsmh_da", Family::kReserves,
      [](const Instance& i, const Params&, Trace* t) {
        return Plain(reserves::TsmhDa(As<ReserveInstance>(i), t));
      });
  add("ttcc", Family::kExchange, [](const Instance& i, const Params& p, Trace* t) {
    const std::string policy = p.GetString("chain_policy", "remove-chain");
    if (policy != "remove-chain" && policy != "keep-tail") {
      throw ValidationError({"chain_policy must be remove-chain or keep-tail"});
    }
    return Cleared(exchange::Ttcc(As<ExchangePool>(i),
                                  policy == "keep-tail"
                                      ? exchange::ChainPolicy::kKeepTail
                                      : exchange::ChainPolicy::kRemoveChain,
                                  t));
  });
  add("priority_matching_2way", Family::kExchange,
      [](const Instance& i, const Params&, Trace* t) {
        return Cleared(exchange::PriorityMatching2Way(As<ExchangePool>(i), t));
      });
  add("max_transplants", Family::kExchange,
      [](const Instance& i, const Params& p, Trace* t) {
        int k = p.GetInt("k", 3), c = p.GetInt("c", 3);
        if (k < 1 || c < 0) throw ValidationError({"k must be >= 1, c >= 0"});
        return Cleared(exchange::MaxTransplants(As<ExchangePool>(i), k, c, t));
      });
  return m;
}

const std::vector<Mechanism>& Registry() {
  static const std::vector<Mechanism> registry = BuildRegistry();
  return registry;
}

int ExchangeItem(const exchange::ExchangePool& pool, int kidney) {
  return kidney == kWaitlist ? pool.num_kidneys() : kidney;
}

}  // namespace

Family FamilyOf(const Instance& inst) {
  return static_cast<Family>(inst.index());
}

std::string FamilyName(Family f) {
  switch (f) {
    case Family::kOneSided:
      return "one-sided";
    case Family::kTwoSided:
      return "two-sided";
    case Family::kContracts:
      return "contracts";
    case Family::kReserves:
      return "reserves";
    case Family::kExchange:
      return "exchange";
  }
  return "";
}

std::optional<Family> ParseFamily(const std::string& name) {
  for (int k = 0; k < 5; ++k) {
    if (FamilyName(static_cast<Family>(k)) == name) return static_cast<Family>(k);
  }
  return std::nullopt;
}

std::vector<std::string> ValidateInstance(const Instance& inst) {
  return std::visit(
      [](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, onesided::HousingInstance>) {
          return onesided::Validate(x);
        } else if constexpr (std::is_same_v<T, twosided::SchoolInstance>) {
          return twosided::Validate(x);
        } else if constexpr (std::is_same_v<T, contracts::ContractsInstance>) {
          return contracts::Validate(x);
        } else if constexpr (std::is_same_v<T, reserves::ReserveInstance>) {
          return reserves::Validate(x);
        } else {
          return exchange::Validate(x);
        }
      },
      inst);
}

void RequireValid(const Instance& inst) {
  auto errors = ValidateInstance(inst);
  if (!errors.empty()) throw ValidationError(std::move(errors));
}

Params Params::Parse(const std::string& text) {
  Params p;
  std::string item;
  std::stringstream ss(text);
  while (std::getline(ss, item, ',')) {
    std::stringstream inner(item);
    std::string part;
    while (std::getline(inner, part, ';')) {
      if (part.empty()) continue;
      auto eq = part.find('=');
      if (eq == std::string::npos) {
        throw ValidationError({"parameter must be key=value: " + part});
      }
      p.Set(part.substr(0, eq), part.substr(eq + 1));
    }
  }
  return p;
}

void Params::Set(const std::string& key, const std::string& value) {
  values_[key] = value;
}

int Params::GetInt(const std::string& key, int fallback) const {
  auto it = values_.find(key);
  if (it == values_.end()) return fallback;
  try {
    size_t used = 0;
    int v = std::stoi(it->second, &used);
    if (used != it->second.size()) throw std::invalid_argument(key);
    return v;
  } catch (const std::exception&) {
    throw ValidationError({"parameter " + key + " must be an integer"});
  }
}

uint64_t Params::GetSeed(uint64_t fallback) const {
  auto it = values_.find("seed");
  if (it == values_.end()) return fallback;
  try {
    size_t used = 0;
    uint64_t v = std::stoull(it->second, &used);
    if (used != it->second.size()) throw std::invalid_argument("seed");
    return v;
  } catch (const std::exception&) {
    throw ValidationError({"seed must be a non-negative integer"});
  }
}

std::string Params::GetString(const std::string& key,
                              const std::string& fallback) const {
  auto it = values_.find(key);
  return it == values_.end() ? fallback : it->second;
}

std::vector<int> Params::GetIntList(const std::string& key) const {
  std::vector<int> out;
  std::string text = GetString(key, "");
  std::replace(text.begin(), text.end(), '/', ' ');
  std::stringstream ss(text);
  std::string tok;
  while (ss >> tok) {
    try {
      size_t used = 0;
      out.push_back(std::stoi(tok, &used));
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw ValidationError({"parameter " + key + " must list integers"});
    }
  }
  return out;
}

std::string Params::ToString() const {
  std::string out;
  for (const auto& [k, v] : values_) {
    if (!out.empty()) out += ",";
    out += k + "=" + v;
  }
  return out;
}

const Mechanism& FindMechanism(const std::string& name) {
  for (const Mechanism& m : Registry()) {
    if (m.name == name) return m;
  }
  throw std::invalid_argument("unknown mechanism: " + name);
}

std::vector<std::string> MechanismNames() {
  std::vector<std::string> out;
  for (const Mechanism& m : Registry()) out.push_back(m.name);
  return out;
}

std::string MechanismCall::Label() const {
  std::string p = params.ToString();
  return p.empty() ? name : name + ":" + p;
}

MechanismCall ParseMechanismCall(const std::string& text) {
  MechanismCall call;
  auto colon = text.find(':');
  call.name = text.substr(0, colon);
  if (colon != std::string::npos) {
    call.params = Params::Parse(text.substr(colon + 1));
  }
  return call;
}

Outcome Run(const MechanismCall& call, const Instance& inst, Trace* trace) {
  const Mechanism& mech = FindMechanism(call.name);
  if (mech.family != FamilyOf(inst)) {
    throw ValidationError({"mechanism " + mech.name + " expects a " +
                           FamilyName(mech.family) + " instance, got " +
                           FamilyName(FamilyOf(inst))});
  }
  RequireValid(inst);
  try {
    return mech.run(inst, call.params, trace);
  } catch (const std::invalid_argument& e) {
    throw ValidationError({e.what()});
  }
}

int NumReporters(const Instance& inst) {
  switch (FamilyOf(inst)) {
    case Family::kOneSided:
      return As<onesided::HousingInstance>(inst).num_agents();
    case Family::kTwoSided:
      return As<twosided::SchoolInstance>(inst).num_students();
    case Family::kContracts:
      return As<contracts::ContractsInstance>(inst).num_cadets();
    case Family::kReserves: {
      const auto& r = As<reserves::ReserveInstance>(inst);
      if (!r.multi()) {
        throw std::invalid_argument(
            "single-institution reserve instances carry no reports");
      }
      return r.num_applicants();
    }
    case Family::kExchange:
      return As<exchange::ExchangePool>(inst).num_pairs();
  }
  return 0;
}

int NumReportItems(const Instance& inst) {
  switch (FamilyOf(inst)) {
    case Family::kOneSided:
      return As<onesided::HousingInstance>(inst).num_houses();
    case Family::kTwoSided:
      return As<twosided::SchoolInstance>(inst).num_schools();
    case Family::kContracts: {
      const auto& c = As<contracts::ContractsInstance>(inst);
      return c.num_branches() * c.num_tiers();
    }
    case Family::kReserves:
      return static_cast<int>(
          As<reserves::ReserveInstance>(inst).institutions.size());
    case Family::kExchange:
      return As<exchange::ExchangePool>(inst).num_kidneys() + 1;
  }
  return 0;
}

Ranking GetReport(const Instance& inst, int agent) {
  switch (FamilyOf(inst)) {
    case Family::kOneSided:
      return As<onesided::HousingInstance>(inst).prefs[agent];
    case Family::kTwoSided:
      return As<twosided::SchoolInstance>(inst).prefs[agent];
    case Family::kContracts:
      return As<contracts::ContractsInstance>(inst).ItemRanking(agent);
    case Family::kReserves:
      return As<reserves::ReserveInstance>(inst).prefs[agent];
    case Family::kExchange: {
      const auto& pool = As<exchange::ExchangePool>(inst);
      Ranking r;
      for (int k : pool.prefs[agent]) r.push_back(ExchangeItem(pool, k));
      return r;
    }
  }
  return {};
}

void SetReport(Instance& inst, int agent, const Ranking& report) {
  switch (FamilyOf(inst)) {
    case Family::kOneSided:
      std::get<onesided::HousingInstance>(inst).prefs[agent] = report;
      break;
    case Family::kTwoSided:
      std::get<twosided::SchoolInstance>(inst).prefs[agent] = report;
      break;
    case Family::kContracts:
      std::get<contracts::ContractsInstance>(inst).SetItemRanking(agent, report);
      break;
    case Family::kReserves:
      std::get<reserves::ReserveInstance>(inst).prefs[agent] = report;
      break;
    case Family::kExchange: {
      auto& pool = std::get<exchange::ExchangePool>(inst);
      Ranking r;
      for (int k : report) r.push_back(k == pool.num_kidneys() ? kWaitlist : k);
      pool.prefs[agent] = r;
      break;
    }
  }
}

int OutcomeItem(const Instance& inst, const Allocation& a, int agent) {
  const int res = a.resource[agent];
  switch (FamilyOf(inst)) {
    case Family::kContracts: {
      if (res == kUnmatched) return kUnmatched;
      const auto& c = As<contracts::ContractsInstance>(inst);
      return c.ItemOf({res, a.label[agent]});
    }
    case Family::kExchange:
      return res == kUnmatched
                 ? kUnmatched
                 : ExchangeItem(As<exchange::ExchangePool>(inst), res);
    default:
      return res;
  }
}

std::string AgentName(const Instance& inst, int agent) {
  return std::visit(
      [agent](const auto& x) -> std::string {
        return x.names.agents[agent];
      },
      inst);
}

std::string ItemName(const Instance& inst, int item) {
  if (item == kUnmatched) return "nothing";
  switch (FamilyOf(inst)) {
    case Family::kContracts: {
      const auto& c = As<contracts::ContractsInstance>(inst);
      auto t = c.TermOf(item);
      return "(" + c.names.resources[t.branch] + "," + c.tiers[t.tier] + ")";
    }
    case Family::kReserves:
      return As<reserves::ReserveInstance>(inst).institutions[item];
    case Family::kExchange: {
      const auto& pool = As<exchange::ExchangePool>(inst);
      return item == pool.num_kidneys() ? "w" : pool.names.resources[item];
    }
    default:
      return std::visit(
          [item](const auto& x) -> std::string {
            return x.names.resources[item];
          },
          inst);
  }
}

}  // namespace mdtk
