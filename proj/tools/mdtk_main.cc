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

// mdtk: solve, check, compare and generate allocation instances.
//
// Exit codes: 0 ok, 1 a checked axiom is violated, 2 validation or usage
// error, 3 an enumeration cap was exceeded.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "mdtk/axioms.h"
#include "mdtk/io.h"
#include "mdtk/registry.h"

namespace {

using mdtk::io::Json;

constexpr int kOk = 0;
constexpr int kViolated = 1;
constexpr int kUsage = 2;
constexpr int kCap = 3;

struct Config {
  std::string instance;
  std::vector<std::string> mechanisms;
  std::optional<uint64_t> seed;
  std::string axioms;
  std::string caps;
  std::string out;
  std::string allocation;
  std::string family;
  std::string size;
  bool trace = false;
};

void Emit(const Json& doc, const std::string& out) {
  const std::string text = doc.dump(2) + "\n";
  if (out.empty() || out == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(out);
  if (!f) throw mdtk::ValidationError({"cannot write " + out});
  f << text;
}

mdtk::MechanismCall Call(const std::string& text, const Config& cfg) {
  auto call = mdtk::ParseMechanismCall(text);
  mdtk::FindMechanism(call.name);
  if (cfg.seed && !call.params.Has("seed")) {
    call.params.Set("seed", std::to_string(*cfg.seed));
  }
  return call;
}

mdtk::Instance LoadInstance(const Config& cfg) {
  if (cfg.instance.empty()) throw mdtk::ValidationError({"--instance is required"});
  return mdtk::io::ReadInstanceFile(cfg.instance);
}

int Solve(const Config& cfg) {
  if (cfg.mechanisms.size() != 1) {
    throw mdtk::ValidationError({"solve takes exactly one --mechanism"});
  }
  auto inst = LoadInstance(cfg);
  auto call = Call(cfg.mechanisms[0], cfg);
  mdtk::Trace trace;
  auto outcome = mdtk::Run(call, inst, cfg.trace ? &trace : nullptr);
  Json doc;
  doc["mechanism"] = call.Label();
  doc["family"] = mdtk::FamilyName(mdtk::FamilyOf(inst));
  doc.update(mdtk::io::OutcomeToJson(inst, outcome, cfg.trace ? &trace : nullptr));
  Emit(doc, cfg.out);
  return kOk;
}

std::string Canonical(const std::string& axiom) {
  if (axiom == "SP" || axiom == "sp") return "strategy-proofness";
  if (axiom == "PI") return "priority-improvements";
  return axiom;
}

int Check(const Config& cfg) {
  auto inst = LoadInstance(cfg);
  auto names = mdtk::axioms::ParseAxiomList(cfg.axioms);
  if (names.empty()) throw mdtk::ValidationError({"--axioms is required"});
  const auto caps = mdtk::axioms::Caps::Parse(cfg.caps);
  std::optional<mdtk::MechanismCall> call;
  if (cfg.mechanisms.size() > 1) {
    throw mdtk::ValidationError({"check takes at most one --mechanism"});
  }
  if (!cfg.mechanisms.empty()) call = Call(cfg.mechanisms[0], cfg);

  mdtk::Allocation allocation;
  if (!cfg.allocation.empty()) {
    std::ifstream f(cfg.allocation);
    if (!f) throw mdtk::ValidationError({"cannot read " + cfg.allocation});
    Json doc;
    try {
      doc = Json::parse(f);
    } catch (const nlohmann::json::parse_error& e) {
      throw mdtk::ValidationError({std::string("malformed JSON: ") + e.what()});
    }
    allocation = mdtk::io::ParseAllocation(inst, doc);
  } else if (call) {
    allocation = mdtk::Run(*call, inst).allocation;
  } else {
    throw mdtk::ValidationError({"check needs --allocation or --mechanism"});
  }

  std::vector<std::string> static_axioms;
  mdtk::axioms::AxiomReport report;
  for (const auto& raw : names) {
    const std::string a = Canonical(raw);
    if (a == "strategy-proofness" || a == "priority-improvements") {
      if (!call) {
        throw mdtk::ValidationError({a + " needs --mechanism"});
      }
      auto verdict = a == "strategy-proofness"
                         ? mdtk::axioms::CheckStrategyProofness(*call, inst, caps)
                         : mdtk::axioms::CheckPriorityImprovements(*call, inst,
                                                                   caps);
      report.push_back({a, verdict});
    } else {
      static_axioms.push_back(a);
    }
  }
  if (!static_axioms.empty()) {
    auto r = mdtk::axioms::CheckAllocation(inst, allocation, static_axioms);
    report.insert(report.begin(), r.begin(), r.end());
  }
  Emit(mdtk::io::ReportToJson(inst, report), cfg.out);
  for (const auto& r : report) {
    if (!r.verdict.holds) {
      std::cerr << r.axiom << ": violated";
      if (r.verdict.witness) std::cerr << " (" << r.verdict.witness->replay << ")";
      std::cerr << "\n";
    }
  }
  return mdtk::axioms::AllHold(report) ? kOk : kViolated;
}

// Rank of an agent's outcome; lower is better.
int Standing(const mdtk::Instance& inst, const mdtk::Allocation& a, int i) {
  const auto family = mdtk::FamilyOf(inst);
  bool ranked = true;
  if (family == mdtk::Family::kReserves) {
    ranked = std::get<mdtk::reserves::ReserveInstance>(inst).multi();
  } else if (family == mdtk::Family::kExchange) {
    ranked = std::get<mdtk::exchange::ExchangePool>(inst).HasPreferences();
  }
  if (!ranked) return a.resource[i] >= 0 ? 0 : 1;
  return mdtk::OutcomeRank(mdtk::GetReport(inst, i),
                           mdtk::OutcomeItem(inst, a, i));
}

int Compare(const Config& cfg) {
  if (cfg.mechanisms.size() < 2) {
    throw mdtk::ValidationError({"compare needs at least two --mechanism"});
  }
  auto inst = LoadInstance(cfg);
  std::vector<mdtk::MechanismCall> calls;
  std::vector<mdtk::Outcome> outcomes;
  for (const auto& m : cfg.mechanisms) {
    calls.push_back(Call(m, cfg));
    outcomes.push_back(mdtk::Run(calls.back(), inst));
  }
  const int n = outcomes[0].allocation.size();
  Json doc;
  Json labels = Json::array();
  for (const auto& c : calls) labels.push_back(c.Label());
  doc["mechanisms"] = labels;
  Json table = Json::object();
  std::vector<Json> maps;
  for (const auto& o : outcomes) {
    maps.push_back(mdtk::io::AllocationToJson(inst, o.allocation));
  }
  for (int i = 0; i < n; ++i) {
    const std::string agent = mdtk::AgentName(inst, i);
    Json row = Json::object();
    for (size_t m = 0; m < calls.size(); ++m) {
      row[calls[m].Label()] = maps[m][agent];
    }
    table[agent] = row;
  }
  doc["agents"] = table;
  Json pairs = Json::array();
  for (size_t x = 0; x < calls.size(); ++x) {
    for (size_t y = x + 1; y < calls.size(); ++y) {
      int better = 0, worse = 0;
      Json differ = Json::array();
      for (int i = 0; i < n; ++i) {
        const int sx = Standing(inst, outcomes[x].allocation, i);
        const int sy = Standing(inst, outcomes[y].allocation, i);
        if (sx < sy) ++better;
        if (sx > sy) ++worse;
        if (outcomes[x].allocation.resource[i] !=
                outcomes[y].allocation.resource[i] ||
            outcomes[x].allocation.label[i] != outcomes[y].allocation.label[i]) {
          differ.push_back(mdtk::AgentName(inst, i));
        }
      }
      Json p;
      p["first"] = calls[x].Label();
      p["second"] = calls[y].Label();
      p["identical"] = outcomes[x].allocation == outcomes[y].allocation;
      p["first_better_for"] = better;
      p["second_better_for"] = worse;
      p["first_pareto_dominates"] = better > 0 && worse == 0;
      p["second_pareto_dominates"] = worse > 0 && better == 0;
      p["differing_agents"] = differ;
      if (outcomes[x].clearing && outcomes[y].clearing) {
        p["transplant_delta"] =
            outcomes[y].clearing->transplants - outcomes[x].clearing->transplants;
      }
      pairs.push_back(p);
      std::cerr << calls[x].Label() << " vs " << calls[y].Label() << ": "
                << better << " better, " << worse << " worse\n";
    }
  }
  doc["pairwise"] = pairs;
  Emit(doc, cfg.out);
  return kOk;
}

int Gen(const Config& cfg) {
  auto family = mdtk::ParseFamily(cfg.family);
  if (!family) throw mdtk::ValidationError({"unknown family: " + cfg.family});
  auto size = mdtk::Params::Parse(cfg.size);
  auto inst = mdtk::io::Generate(*family, size, cfg.seed.value_or(1));
  Emit(mdtk::io::InstanceToJson(inst), cfg.out);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Matching and allocation mechanism toolkit"};
  app.require_subcommand(1);
  Config cfg;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--instance", cfg.instance, "Instance JSON file");
    sub->add_option("--seed", cfg.seed, "Seed for randomized mechanisms");
    sub->add_option("--out", cfg.out, "Write JSON here instead of stdout");
  };
  auto* solve = app.add_subcommand("solve", "Run one mechanism");
  add_common(solve);
  solve->add_option("--mechanism", cfg.mechanisms, "name[:key=value,...]");
  solve->add_flag("--trace", cfg.trace, "Include the step trace");

  auto* check = app.add_subcommand("check", "Check axioms");
  add_common(check);
  check->add_option("--mechanism", cfg.mechanisms, "Mechanism to run first");
  check->add_option("--allocation", cfg.allocation, "Allocation JSON file");
  check->add_option("--axioms", cfg.axioms, "Comma-separated axiom list");
  check->add_option("--caps", cfg.caps, "agents=,resources=,tiers=,...");
  check->add_flag("--trace", cfg.trace, "Unused; accepted for symmetry");

  auto* compare = app.add_subcommand("compare", "Compare mechanisms");
  add_common(compare);
  compare->add_option("--mechanism", cfg.mechanisms, "Repeat for each mechanism");

  auto* gen = app.add_subcommand("gen", "Generate a random instance");
  gen->add_option("--family", cfg.family, "Instance family")->required();
  gen->add_option("--size", cfg.size, "key=value,... size knobs");
  gen->add_option("--seed", cfg.seed, "Generator seed");
  gen->add_option("--out", cfg.out, "Write JSON here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, std::cerr, std::cerr) == 0 ? kOk : kUsage;
  }

  try {
    if (solve->parsed()) return Solve(cfg);
    if (check->parsed()) return Check(cfg);
    if (compare->parsed()) return Compare(cfg);
    if (gen->parsed()) return Gen(cfg);
  } catch (const mdtk::ValidationError& e) {
    for (const auto& msg : e.errors()) std::cerr << "error: " << msg << "\n";
    return kUsage;
  } catch (const mdtk::CapError& e) {
    std::cerr << "cap exceeded: " << e.what() << "\n";
    return kCap;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
