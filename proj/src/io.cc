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

#include "mdtk/io.h"

#include <algorithm>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>

namespace mdtk::io {
namespace {

using contracts::ContractsInstance;
using exchange::ExchangePool;
using onesided::HousingInstance;
using reserves::ReserveInstance;
using twosided::SchoolInstance;

// Collects every problem instead of stopping at the first.
class Reader {
 public:
  std::vector<std::string> errors;

  void Error(std::string message) { errors.push_back(std::move(message)); }

  const Json* Get(const Json& obj, const char* key, const std::string& where,
                  bool required) {
    if (obj.is_object() && obj.contains(key)) return &obj.at(key);
    if (required) Error(where + ": missing key '" + key + "'");
    return nullptr;
  }

  std::optional<std::string> Str(const Json& v, const std::string& where) {
    if (v.is_string()) return v.get<std::string>();
    Error(where + ": expected a string");
    return std::nullopt;
  }

  std::optional<int> Int(const Json& v, const std::string& where) {
    if (v.is_number_integer()) return v.get<int>();
    Error(where + ": expected an integer");
    return std::nullopt;
  }

  std::vector<std::string> StrList(const Json* v, const std::string& where) {
    std::vector<std::string> out;
    if (!v) return out;
    if (!v->is_array()) {
      Error(where + ": expected a list");
      return out;
    }
    for (const auto& x : *v) {
      if (auto s = Str(x, where)) out.push_back(*s);
    }
    return out;
  }

  std::vector<std::string> Keys(const Json* v, const std::string& where) {
    std::vector<std::string> out;
    if (!v) return out;
    if (!v->is_object()) {
      Error(where + ": expected an object");
      return out;
    }
    for (const auto& [k, x] : v->items()) out.push_back(k);
    return out;
  }

  int Find(const std::vector<std::string>& ids, const std::string& id,
           const std::string& where) {
    auto it = std::find(ids.begin(), ids.end(), id);
    if (it == ids.end()) {
      Error("dangling reference: " + where + " names unknown id '" + id + "'");
      return -1;
    }
    return static_cast<int>(it - ids.begin());
  }

  void Unique(const std::vector<std::string>& ids) {
    std::set<std::string> seen;
    for (const auto& id : ids) {
      if (id.empty()) Error("ids must be non-empty");
      if (!seen.insert(id).second) Error("duplicate id: " + id);
    }
  }

  // Unknown entries are dropped (and reported); duplicates are kept so the
  // module validators can flag non-strict rankings.
  Ranking Rank(const Json* v, const std::vector<std::string>& ids,
               const std::string& where) {
    Ranking r;
    for (const auto& id : StrList(v, where)) {
      int k = Find(ids, id, where);
      if (k >= 0) r.push_back(k);
    }
    return r;
  }

  void Finish() {
    if (!errors.empty()) throw ValidationError(errors);
  }
};

void AddUnique(std::vector<std::string>& v, const std::string& x) {
  if (std::find(v.begin(), v.end(), x) == v.end()) v.push_back(x);
}

void CheckListed(Reader& rd, const Json& doc, const char* key,
                 const std::vector<std::string>& derived) {
  const Json* v = rd.Get(doc, key, "instance", false);
  if (!v) return;
  auto listed = rd.StrList(v, key);
  auto a = listed, b = derived;
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  if (a != b) rd.Error(std::string(key) + " list does not match the payload");
}

// Priority from a score map, best first; ties are an error.
std::vector<int> ByScore(Reader& rd, const std::vector<std::pair<int, int>>& s,
                         const std::vector<std::string>& names,
                         const std::string& where) {
  auto sorted = s;
  std::sort(sorted.begin(), sorted.end(), [](auto a, auto b) {
    return a.second > b.second;
  });
  std::vector<int> out;
  for (size_t k = 0; k < sorted.size(); ++k) {
    if (k > 0 && sorted[k].second == sorted[k - 1].second) {
      rd.Error("inconsistent score/order: " + where + " has tied scores for " +
               names[sorted[k - 1].first] + " and " + names[sorted[k].first]);
    }
    out.push_back(sorted[k].first);
  }
  return out;
}

// ------------------------------------------------------------- one-sided

Instance ParseHousing(const Json& doc) {
  Reader rd;
  HousingInstance h;
  const Json* tenants = rd.Get(doc, "tenants", "one-sided", false);
  auto tenant_ids = rd.Keys(tenants, "tenants");
  auto newcomers = rd.StrList(rd.Get(doc, "newcomers", "one-sided", false),
                              "newcomers");
  h.names.agents = tenant_ids;
  h.names.agents.insert(h.names.agents.end(), newcomers.begin(), newcomers.end());
  rd.Unique(h.names.agents);
  std::vector<std::string> occupied;
  for (const auto& t : tenant_ids) {
    if (auto house = rd.Str(tenants->at(t), "tenants/" + t)) {
      AddUnique(occupied, *house);
    }
  }
  auto vacant = rd.StrList(rd.Get(doc, "vacant_houses", "one-sided", false),
                           "vacant_houses");
  h.names.resources = occupied;
  h.names.resources.insert(h.names.resources.end(), vacant.begin(), vacant.end());
  rd.Unique(h.names.resources);
  CheckListed(rd, doc, "agents", h.names.agents);
  CheckListed(rd, doc, "resources", h.names.resources);
  const int n = static_cast<int>(h.names.agents.size());
  h.endowment.assign(n, kUnmatched);
  for (int a = 0; a < static_cast<int>(tenant_ids.size()); ++a) {
    if (auto house = rd.Str(tenants->at(tenant_ids[a]), "tenants")) {
      h.endowment[a] = rd.Find(h.names.resources, *house, "tenants");
    }
  }
  h.prefs.assign(n, {});
  const Json* prefs = rd.Get(doc, "preferences", "one-sided", true);
  for (const auto& id : rd.Keys(prefs, "preferences")) {
    int a = rd.Find(h.names.agents, id, "preferences");
    if (a >= 0) {
      h.prefs[a] = rd.Rank(&prefs->at(id), h.names.resources,
                           "ranking of " + id);
    }
  }
  if (const Json* q = rd.Get(doc, "queue", "one-sided", false)) {
    h.queue = rd.Rank(q, h.names.agents, "queue");
  } else {
    h.queue = Iota(n);
  }
  rd.Finish();
  return h;
}

Json HousingToJson(const HousingInstance& h) {
  Json doc;
  doc["family"] = "one-sided";
  doc["agents"] = h.names.agents;
  doc["resources"] = h.names.resources;
  Json tenants = Json::object();
  Json newcomers = Json::array();
  for (int a = 0; a < h.num_agents(); ++a) {
    if (h.endowment[a] != kUnmatched) {
      tenants[h.names.agents[a]] = h.names.resources[h.endowment[a]];
    } else {
      newcomers.push_back(h.names.agents[a]);
    }
  }
  doc["tenants"] = tenants;
  doc["newcomers"] = newcomers;
  Json vacant = Json::array();
  for (int v : h.VacantHouses()) vacant.push_back(h.names.resources[v]);
  doc["vacant_houses"] = vacant;
  Json prefs = Json::object();
  for (int a = 0; a < h.num_agents(); ++a) {
    Json r = Json::array();
    for (int x : h.prefs[a]) r.push_back(h.names.resources[x]);
    prefs[h.names.agents[a]] = r;
  }
  doc["preferences"] = prefs;
  Json q = Json::array();
  for (int a : h.queue) q.push_back(h.names.agents[a]);
  doc["queue"] = q;
  return doc;
}

// ------------------------------------------------------------- two-sided

Instance ParseSchool(const Json& doc) {
  Reader rd;
  SchoolInstance s;
  const Json* students = rd.Get(doc, "students", "two-sided", true);
  const Json* schools = rd.Get(doc, "schools", "two-sided", true);
  s.names.agents = rd.Keys(students, "students");
  s.names.resources = rd.Keys(schools, "schools");
  rd.Unique(s.names.agents);
  rd.Unique(s.names.resources);
  CheckListed(rd, doc, "agents", s.names.agents);
  CheckListed(rd, doc, "resources", s.names.resources);
  const int n = static_cast<int>(s.names.agents.size());
  const int m = static_cast<int>(s.names.resources.size());
  const Json* fields = rd.Get(doc, "fields", "two-sided", false);
  s.field_names = rd.Keys(fields, "fields");
  rd.Unique(s.field_names);
  for (const auto& f : s.field_names) {
    s.field_ranking.push_back(
        rd.Rank(&fields->at(f), s.names.agents, "field " + f));
  }
  s.prefs.assign(n, {});
  s.score.assign(n, std::nullopt);
  bool all_scores = n > 0;
  for (int i = 0; i < n; ++i) {
    const Json& st = students->at(s.names.agents[i]);
    const std::string where = "student " + s.names.agents[i];
    s.prefs[i] = rd.Rank(rd.Get(st, "preferences", where, true),
                         s.names.resources, "ranking of " + s.names.agents[i]);
    if (const Json* sc = rd.Get(st, "score", where, false)) {
      s.score[i] = rd.Int(*sc, where + "/score");
    }
    all_scores = all_scores && s.score[i].has_value();
  }
  s.capacity.assign(m, 1);
  s.priority.assign(m, {});
  if (!s.field_names.empty()) s.field.assign(m, -1);
  for (int k = 0; k < m; ++k) {
    const std::string& name = s.names.resources[k];
    const Json& sc = schools->at(name);
    const std::string where = "school " + name;
    if (const Json* c = rd.Get(sc, "capacity", where, true)) {
      s.capacity[k] = rd.Int(*c, where + "/capacity").value_or(1);
    }
    const Json* field = rd.Get(sc, "field", where, false);
    if (field && !s.field_names.empty()) {
      if (auto f = rd.Str(*field, where + "/field")) {
        s.field[k] = rd.Find(s.field_names, *f, where + "/field");
      }
    } else if (!s.field_names.empty()) {
      rd.Error(where + ": missing key 'field'");
    }
    if (const Json* p = rd.Get(sc, "priority", where, false)) {
      s.priority[k] = rd.Rank(p, s.names.agents, "priority of " + name);
      if (all_scores) {
        for (size_t q = 1; q < s.priority[k].size(); ++q) {
          if (*s.score[s.priority[k][q]] >= *s.score[s.priority[k][q - 1]]) {
            rd.Error("inconsistent score/order: priority of " + name +
                     " disagrees with scores");
            break;
          }
        }
      }
    } else if (const Json* sm = rd.Get(sc, "scores", where, false)) {
      std::vector<std::pair<int, int>> scored;
      for (const auto& id : rd.Keys(sm, where + "/scores")) {
        int i = rd.Find(s.names.agents, id, where + "/scores");
        auto v = rd.Int(sm->at(id), where + "/scores/" + id);
        if (i >= 0 && v) scored.push_back({i, *v});
      }
      s.priority[k] = ByScore(rd, scored, s.names.agents, where);
    } else if (!s.field.empty() && s.field[k] >= 0) {
      s.priority[k] = s.field_ranking[s.field[k]];
    } else if (all_scores) {
      std::vector<std::pair<int, int>> scored;
      for (int i = 0; i < n; ++i) scored.push_back({i, *s.score[i]});
      s.priority[k] = ByScore(rd, scored, s.names.agents, where);
    } else {
      rd.Error(where + ": needs a priority, scores, a field or student scores");
    }
  }
  rd.Finish();
  return s;
}

Json SchoolToJson(const SchoolInstance& s) {
  Json doc;
  doc["family"] = "two-sided";
  doc["agents"] = s.names.agents;
  doc["resources"] = s.names.resources;
  Json students = Json::object();
  for (int i = 0; i < s.num_students(); ++i) {
    Json st;
    Json r = Json::array();
    for (int x : s.prefs[i]) r.push_back(s.names.resources[x]);
    st["preferences"] = r;
    if (s.score[i]) st["score"] = *s.score[i];
    students[s.names.agents[i]] = st;
  }
  doc["students"] = students;
  Json schools = Json::object();
  for (int k = 0; k < s.num_schools(); ++k) {
    Json sc;
    sc["capacity"] = s.capacity[k];
    Json p = Json::array();
    for (int i : s.priority[k]) p.push_back(s.names.agents[i]);
    sc["priority"] = p;
    if (s.HasFields()) sc["field"] = s.field_names[s.field[k]];
    schools[s.names.resources[k]] = sc;
  }
  doc["schools"] = schools;
  if (s.HasFields()) {
    Json fields = Json::object();
    for (size_t f = 0; f < s.field_names.size(); ++f) {
      Json r = Json::array();
      for (int i : s.field_ranking[f]) r.push_back(s.names.agents[i]);
      fields[s.field_names[f]] = r;
    }
    doc["fields"] = fields;
  }
  return doc;
}

// ------------------------------------------------------------- contracts

std::optional<contracts::Term> ParseTerm(Reader& rd, const ContractsInstance& c,
                                         const Json& v,
                                         const std::string& where) {
  const Json* b = nullptr;
  const Json* t = nullptr;
  if (v.is_array() && v.size() == 2) {
    b = &v[0];
    t = &v[1];
  } else if (v.is_object()) {
    b = rd.Get(v, "branch", where, true);
    t = rd.Get(v, "price", where, true);
  } else {
    rd.Error(where + ": a term is [branch, price]");
    return std::nullopt;
  }
  if (!b || !t) return std::nullopt;
  auto bn = rd.Str(*b, where);
  if (!bn) return std::nullopt;
  int branch = rd.Find(c.names.resources, *bn, where);
  int tier = -1;
  if (t->is_number_integer()) {
    tier = t->get<int>();
    if (tier < 0 || tier >= c.num_tiers()) {
      rd.Error("dangling reference: " + where + " names an unknown price");
      tier = -1;
    }
  } else if (auto tn = rd.Str(*t, where)) {
    tier = rd.Find(c.tiers, *tn, where);
  }
  if (branch < 0 || tier < 0) return std::nullopt;
  return contracts::Term{branch, tier};
}

Instance ParseContracts(const Json& doc) {
  Reader rd;
  ContractsInstance c;
  c.tiers = rd.StrList(rd.Get(doc, "price_ladder", "contracts", true),
                       "price_ladder");
  rd.Unique(c.tiers);
  const Json* cadets = rd.Get(doc, "cadets", "contracts", true);
  const Json* branches = rd.Get(doc, "branches", "contracts", true);
  c.names.agents = rd.Keys(cadets, "cadets");
  c.names.resources = rd.Keys(branches, "branches");
  rd.Unique(c.names.agents);
  rd.Unique(c.names.resources);
  CheckListed(rd, doc, "agents", c.names.agents);
  CheckListed(rd, doc, "resources", c.names.resources);
  const int n = static_cast<int>(c.names.agents.size());
  for (const auto& name : c.names.resources) {
    const Json& b = branches->at(name);
    const std::string where = "branch " + name;
    contracts::Branch br;
    if (const Json* cap = rd.Get(b, "capacity", where, true)) {
      br.capacity = rd.Int(*cap, where + "/capacity").value_or(1);
    }
    br.flexible = br.capacity / 4;
    if (const Json* f = rd.Get(b, "flexible", where, false)) {
      br.flexible = rd.Int(*f, where + "/flexible").value_or(0);
    } else if (const Json* share = rd.Get(b, "flexible_share", where, false)) {
      if (share->is_number()) {
        br.flexible = static_cast<int>(br.capacity * share->get<double>());
      } else {
        rd.Error(where + "/flexible_share: expected a number");
      }
    }
    if (const Json* sch = rd.Get(b, "scheme", where, false)) {
      std::string kind = "ultimate";
      if (const Json* k = rd.Get(*sch, "kind", where + "/scheme", true)) {
        kind = rd.Str(*k, where + "/scheme/kind").value_or("ultimate");
      }
      if (kind == "ultimate") {
        br.scheme.kind = contracts::SchemeKind::kUltimate;
      } else if (kind == "tiered") {
        br.scheme.kind = contracts::SchemeKind::kTiered;
      } else if (kind == "scoring") {
        br.scheme.kind = contracts::SchemeKind::kScoring;
      } else {
        rd.Error(where + "/scheme/kind: unknown scheme " + kind);
      }
      if (const Json* g = rd.Get(*sch, "groups", where, false)) {
        for (const auto& x : *g) {
          if (auto v = rd.Int(x, where + "/scheme/groups")) {
            br.scheme.group_sizes.push_back(*v);
          }
        }
      }
      if (const Json* g = rd.Get(*sch, "boost", where, false)) {
        for (const auto& x : *g) {
          if (auto v = rd.Int(x, where + "/scheme/boost")) {
            br.scheme.boost.push_back(*v);
          }
        }
      }
    }
    c.branches.push_back(br);
  }
  c.prefs.assign(n, {});
  c.score.assign(n, std::nullopt);
  bool usma_report = false;
  std::vector<std::optional<std::vector<int>>> branch_prefs(n);
  std::vector<std::vector<bool>> bradso(
      n, std::vector<bool>(c.names.resources.size(), false));
  bool all_scores = n > 0;
  for (int k = 0; k < n; ++k) {
    const std::string& name = c.names.agents[k];
    const Json& cd = cadets->at(name);
    const std::string where = "cadet " + name;
    if (const Json* p = rd.Get(cd, "preferences", where, true)) {
      if (!p->is_array()) {
        rd.Error(where + "/preferences: expected a list");
      } else {
        for (const auto& t : *p) {
          if (auto term = ParseTerm(rd, c, t, "ranking of " + name)) {
            c.prefs[k].push_back(*term);
          }
        }
      }
    }
    if (const Json* sc = rd.Get(cd, "score", where, false)) {
      c.score[k] = rd.Int(*sc, where + "/score");
    }
    all_scores = all_scores && c.score[k].has_value();
    if (const Json* bp = rd.Get(cd, "branch_prefs", where, false)) {
      usma_report = true;
      branch_prefs[k] = rd.Rank(bp, c.names.resources, where + "/branch_prefs");
      for (const auto& b : rd.StrList(rd.Get(cd, "bradso", where, false),
                                      where + "/bradso")) {
        int bi = rd.Find(c.names.resources, b, where + "/bradso");
        if (bi >= 0) bradso[k][bi] = true;
      }
    }
  }
  if (const Json* oml = rd.Get(doc, "oml", "contracts", false)) {
    c.oml = rd.Rank(oml, c.names.agents, "oml");
  } else if (all_scores) {
    std::vector<std::pair<int, int>> scored;
    for (int k = 0; k < n; ++k) scored.push_back({k, *c.score[k]});
    c.oml = ByScore(rd, scored, c.names.agents, "oml");
  } else {
    rd.Error("contracts: missing key 'oml' (or scores for every cadet)");
  }
  rd.Finish();
  if (usma_report) {
    for (int k = 0; k < n; ++k) {
      contracts::DeriveUsmaReport(c, k);
      if (branch_prefs[k]) {
        c.branch_prefs[k] = *branch_prefs[k];
        c.bradso[k] = bradso[k];
      }
    }
  }
  return c;
}

Json ContractsToJson(const ContractsInstance& c) {
  Json doc;
  doc["family"] = "contracts";
  doc["agents"] = c.names.agents;
  doc["resources"] = c.names.resources;
  doc["price_ladder"] = c.tiers;
  Json oml = Json::array();
  for (int k : c.oml) oml.push_back(c.names.agents[k]);
  doc["oml"] = oml;
  Json cadets = Json::object();
  for (int k = 0; k < c.num_cadets(); ++k) {
    Json cd;
    Json p = Json::array();
    for (const auto& t : c.prefs[k]) {
      p.push_back(Json::array({c.names.resources[t.branch], c.tiers[t.tier]}));
    }
    cd["preferences"] = p;
    if (c.score[k]) cd["score"] = *c.score[k];
    if (!c.branch_prefs.empty()) {
      Json bp = Json::array();
      for (int b : c.branch_prefs[k]) bp.push_back(c.names.resources[b]);
      cd["branch_prefs"] = bp;
      Json br = Json::array();
      for (int b = 0; b < c.num_branches(); ++b) {
        if (c.bradso[k][b]) br.push_back(c.names.resources[b]);
      }
      cd["bradso"] = br;
    }
    cadets[c.names.agents[k]] = cd;
  }
  doc["cadets"] = cadets;
  Json branches = Json::object();
  for (int b = 0; b < c.num_branches(); ++b) {
    const auto& br = c.branches[b];
    Json j;
    j["capacity"] = br.capacity;
    j["flexible"] = br.flexible;
    Json sch;
    switch (br.scheme.kind) {
      case contracts::SchemeKind::kUltimate:
        sch["kind"] = "ultimate";
        break;
      case contracts::SchemeKind::kTiered:
        sch["kind"] = "tiered";
        sch["groups"] = br.scheme.group_sizes;
        break;
      case contracts::SchemeKind::kScoring:
        sch["kind"] = "scoring";
        sch["boost"] = br.scheme.boost;
        break;
    }
    j["scheme"] = sch;
    branches[c.names.resources[b]] = j;
  }
  doc["branches"] = branches;
  return doc;
}

// -------------------------------------------------------------- reserves

reserves::Seats ParseSeats(Reader& rd, const ReserveInstance& r, const Json* cats,
                           const std::string& where) {
  reserves::Seats seats;
  const int nc = r.num_categories();
  seats.capacity.assign(nc, 0);
  seats.hr_reserve.assign(nc, std::vector<int>(r.num_groups(), 0));
  auto keys = rd.Keys(cats, where + "categories");
  for (const auto& k : keys) {
    int v = rd.Find(r.names.resources, k, where + "categories");
    if (v < 0) continue;
    const Json& cat = cats->at(k);
    const std::string w = where + "category " + k;
    if (const Json* c = rd.Get(cat, "capacity", w, true)) {
      seats.capacity[v] = rd.Int(*c, w + "/capacity").value_or(0);
    }
    if (const Json* h = rd.Get(cat, "hr_reserves", w, false)) {
      for (const auto& g : rd.Keys(h, w + "/hr_reserves")) {
        int gi = rd.Find(r.hr_groups, g, w + "/hr_reserves");
        auto count = rd.Int(h->at(g), w + "/hr_reserves/" + g);
        if (gi >= 0 && count) seats.hr_reserve[v][gi] = *count;
      }
    }
  }
  for (int v = 0; v < nc; ++v) {
    if (std::find(keys.begin(), keys.end(), r.names.resources[v]) == keys.end()) {
      rd.Error(where + "category " + r.names.resources[v] + " is not defined");
    }
  }
  return seats;
}

Instance ParseReserves(const Json& doc) {
  Reader rd;
  ReserveInstance r;
  const Json* applicants = rd.Get(doc, "applicants", "reserves", true);
  r.names.agents = rd.Keys(applicants, "applicants");
  rd.Unique(r.names.agents);
  const Json* institutions = rd.Get(doc, "institutions", "reserves", false);
  const Json* cats = rd.Get(doc, "categories", "reserves", institutions == nullptr);
  std::vector<std::string> cat_names;
  if (cats) {
    cat_names = cats->is_array() ? rd.StrList(cats, "categories")
                                 : rd.Keys(cats, "categories");
  } else if (institutions && institutions->is_object() && !institutions->empty()) {
    cat_names = rd.Keys(rd.Get(institutions->begin().value(), "categories",
                               "institution", true),
                        "categories");
  }
  rd.Unique(cat_names);
  if (std::find(cat_names.begin(), cat_names.end(), "open") == cat_names.end()) {
    rd.Error("reserves: category 'open' is required");
  } else {
    r.names.resources.push_back("open");
  }
  for (const auto& c : cat_names) {
    if (c != "open") r.names.resources.push_back(c);
  }
  CheckListed(rd, doc, "agents", r.names.agents);
  if (const Json* g = rd.Get(doc, "hr_groups", "reserves", false)) {
    r.hr_groups = rd.StrList(g, "hr_groups");
  } else {
    for (const auto& a : r.names.agents) {
      const Json& ap = applicants->at(a);
      for (const auto& g : rd.StrList(rd.Get(ap, "hr", a, false), a + "/hr")) {
        AddUnique(r.hr_groups, g);
      }
    }
  }
  rd.Unique(r.hr_groups);
  const int n = static_cast<int>(r.names.agents.size());
  r.merit.assign(n, 0);
  r.vr.assign(n, reserves::kOpen);
  r.hr.assign(n, {});
  for (int a = 0; a < n; ++a) {
    const Json& ap = applicants->at(r.names.agents[a]);
    const std::string where = "applicant " + r.names.agents[a];
    if (const Json* s = rd.Get(ap, "score", where, true)) {
      r.merit[a] = rd.Int(*s, where + "/score").value_or(0);
    }
    if (const Json* v = rd.Get(ap, "vr", where, false); v && !v->is_null()) {
      if (auto name = rd.Str(*v, where + "/vr")) {
        r.vr[a] = (*name == "general" || *name == "open")
                      ? reserves::kOpen
                      : rd.Find(r.names.resources, *name, where + "/vr");
      }
    }
    for (const auto& g : rd.StrList(rd.Get(ap, "hr", where, false), where + "/hr")) {
      int gi = rd.Find(r.hr_groups, g, where + "/hr");
      if (gi >= 0) r.hr[a].push_back(gi);
    }
  }
  if (institutions) {
    r.institutions = rd.Keys(institutions, "institutions");
    rd.Unique(r.institutions);
    for (const auto& s : r.institutions) {
      r.institution_seats.push_back(
          ParseSeats(rd, r, rd.Get(institutions->at(s), "categories",
                                   "institution " + s, true),
                     s + ": "));
    }
    r.prefs.assign(n, {});
    for (int a = 0; a < n; ++a) {
      const Json& ap = applicants->at(r.names.agents[a]);
      r.prefs[a] = rd.Rank(rd.Get(ap, "preferences", "applicant " +
                                  r.names.agents[a], true),
                           r.institutions, "ranking of " + r.names.agents[a]);
    }
  } else if (cats && cats->is_object()) {
    r.seats = ParseSeats(rd, r, cats, "");
  }
  if (const Json* p = rd.Get(doc, "precedence", "reserves", false)) {
    for (const auto& tok : rd.StrList(p, "precedence")) {
      reserves::Slot slot;
      std::string cat = tok, grp;
      if (auto slash = tok.find('/'); slash != std::string::npos) {
        cat = tok.substr(0, slash);
        grp = tok.substr(slash + 1);
      } else if (std::find(r.hr_groups.begin(), r.hr_groups.end(), tok) !=
                 r.hr_groups.end()) {
        cat = "open";
        grp = tok;
      }
      slot.category = rd.Find(r.names.resources, cat, "precedence");
      if (!grp.empty()) slot.hr_group = rd.Find(r.hr_groups, grp, "precedence");
      r.precedence.push_back(slot);
    }
  }
  rd.Finish();
  return r;
}

Json SeatsToJson(const ReserveInstance& r, const reserves::Seats& seats) {
  Json cats = Json::object();
  for (int v = 0; v < r.num_categories(); ++v) {
    Json c;
    c["capacity"] = seats.capacity[v];
    Json h = Json::object();
    for (int g = 0; g < r.num_groups(); ++g) {
      if (seats.hr_reserve[v][g] > 0) h[r.hr_groups[g]] = seats.hr_reserve[v][g];
    }
    c["hr_reserves"] = h;
    cats[r.names.resources[v]] = c;
  }
  return cats;
}

Json ReservesToJson(const ReserveInstance& r) {
  Json doc;
  doc["family"] = "reserves";
  doc["agents"] = r.names.agents;
  doc["hr_groups"] = r.hr_groups;
  Json apps = Json::object();
  for (int a = 0; a < r.num_applicants(); ++a) {
    Json ap;
    ap["score"] = r.merit[a];
    ap["vr"] = r.vr[a] == reserves::kOpen ? Json("general")
                                          : Json(r.names.resources[r.vr[a]]);
    Json hr = Json::array();
    for (int g : r.hr[a]) hr.push_back(r.hr_groups[g]);
    ap["hr"] = hr;
    if (r.multi()) {
      Json p = Json::array();
      for (int s : r.prefs[a]) p.push_back(r.institutions[s]);
      ap["preferences"] = p;
    }
    apps[r.names.agents[a]] = ap;
  }
  doc["applicants"] = apps;
  if (r.multi()) {
    doc["categories"] = r.names.resources;
    Json insts = Json::object();
    for (size_t s = 0; s < r.institutions.size(); ++s) {
      insts[r.institutions[s]] = Json{{"categories",
                                       SeatsToJson(r, r.institution_seats[s])}};
    }
    doc["institutions"] = insts;
  } else {
    doc["categories"] = SeatsToJson(r, r.seats);
  }
  if (!r.precedence.empty()) {
    Json p = Json::array();
    for (const auto& slot : r.precedence) {
      std::string tok = r.names.resources[slot.category];
      if (slot.hr_group >= 0) tok += "/" + r.hr_groups[slot.hr_group];
      p.push_back(tok);
    }
    doc["precedence"] = p;
  }
  return doc;
}

// -------------------------------------------------------------- exchange

Instance ParseExchange(const Json& doc) {
  Reader rd;
  ExchangePool p;
  const Json* pairs = rd.Get(doc, "pairs", "exchange", true);
  p.names.agents = rd.Keys(pairs, "pairs");
  const int n = static_cast<int>(p.names.agents.size());
  for (const auto& id : p.names.agents) {
    std::string donor = id + "-donor";
    if (const Json* d = rd.Get(pairs->at(id), "donor", "pair " + id, false)) {
      donor = rd.Str(*d, "pair " + id + "/donor").value_or(donor);
    }
    p.names.resources.push_back(donor);
  }
  for (const auto& d : rd.StrList(rd.Get(doc, "ndds", "exchange", false), "ndds")) {
    p.names.resources.push_back(d);
  }
  std::vector<std::string> all = p.names.agents;
  all.insert(all.end(), p.names.resources.begin(), p.names.resources.end());
  rd.Unique(all);
  CheckListed(rd, doc, "agents", p.names.agents);
  CheckListed(rd, doc, "resources", p.names.resources);
  const int nk = static_cast<int>(p.names.resources.size());
  p.compatible.assign(nk, std::vector<bool>(n, false));
  bool any_prefs = false;
  std::vector<Ranking> prefs(n);
  for (int i = 0; i < n; ++i) {
    const std::string& id = p.names.agents[i];
    const Json* pr = rd.Get(pairs->at(id), "preferences", "pair " + id, false);
    if (!pr) continue;
    any_prefs = true;
    for (const auto& k : rd.StrList(pr, "ranking of " + id)) {
      if (k == "w") {
        prefs[i].push_back(kWaitlist);
      } else {
        int x = rd.Find(p.names.resources, k, "ranking of " + id);
        if (x >= 0) prefs[i].push_back(x);
      }
    }
  }
  if (any_prefs) p.prefs = prefs;
  if (const Json* arcs = rd.Get(doc, "arcs", "exchange", false)) {
    if (!arcs->is_array()) rd.Error("arcs: expected a list");
    for (const auto& arc : arcs->is_array() ? *arcs : Json::array()) {
      auto ends = rd.StrList(&arc, "arc");
      if (ends.size() != 2) {
        rd.Error("arc must be [donor, patient]");
        continue;
      }
      int k = rd.Find(p.names.resources, ends[0], "arc");
      int i = rd.Find(p.names.agents, ends[1], "arc");
      if (k >= 0 && i >= 0) p.compatible[k][i] = true;
    }
  } else if (any_prefs) {
    for (int i = 0; i < n; ++i) {
      for (int k : prefs[i]) {
        if (k >= 0) p.compatible[k][i] = true;
      }
    }
  }
  if (const Json* pr = rd.Get(doc, "priority", "exchange", false)) {
    p.priority = rd.Rank(pr, p.names.agents, "priority");
  }
  rd.Finish();
  return p;
}

Json ExchangeToJson(const ExchangePool& p) {
  Json doc;
  doc["family"] = "exchange";
  doc["agents"] = p.names.agents;
  doc["resources"] = p.names.resources;
  Json pairs = Json::object();
  for (int i = 0; i < p.num_pairs(); ++i) {
    Json pr;
    pr["donor"] = p.names.resources[i];
    if (p.HasPreferences()) {
      Json r = Json::array();
      for (int k : p.prefs[i]) {
        r.push_back(k == kWaitlist ? std::string("w") : p.names.resources[k]);
      }
      pr["preferences"] = r;
    }
    pairs[p.names.agents[i]] = pr;
  }
  doc["pairs"] = pairs;
  Json ndds = Json::array();
  for (int k = p.num_pairs(); k < p.num_kidneys(); ++k) {
    ndds.push_back(p.names.resources[k]);
  }
  doc["ndds"] = ndds;
  Json arcs = Json::array();
  for (int k = 0; k < p.num_kidneys(); ++k) {
    for (int i = 0; i < p.num_pairs(); ++i) {
      if (p.compatible[k][i]) {
        arcs.push_back(Json::array({p.names.resources[k], p.names.agents[i]}));
      }
    }
  }
  doc["arcs"] = arcs;
  if (!p.priority.empty()) {
    Json pr = Json::array();
    for (int i : p.priority) pr.push_back(p.names.agents[i]);
    doc["priority"] = pr;
  }
  return doc;
}

std::string Name(const std::vector<std::string>& names, int k) {
  return k >= 0 && k < static_cast<int>(names.size()) ? names[k]
                                                      : std::to_string(k);
}

// ------------------------------------------------------------- generators

std::vector<int> Permutation(int n, SplitMix64& rng) {
  auto v = Iota(n);
  Shuffle(v, rng);
  return v;
}

int Knob(const Params& size, const char* key, int fallback, int lo, int hi) {
  int v = size.GetInt(key, fallback);
  if (v < lo || v > hi) {
    throw ValidationError({std::string(key) + " must lie in [" +
                           std::to_string(lo) + ", " + std::to_string(hi) + "]"});
  }
  return v;
}

std::vector<std::string> Labels(const std::string& prefix, int n) {
  std::vector<std::string> out;
  for (int k = 1; k <= n; ++k) out.push_back(prefix + std::to_string(k));
  return out;
}

Instance GenHousing(const Params& size, SplitMix64& rng) {
  const int t = Knob(size, "tenants", 3, 0, 50);
  const int nw = Knob(size, "newcomers", 2, 0, 50);
  const int v = Knob(size, "vacant", 2, 0, 50);
  const bool complete = size.GetInt("complete", 0) != 0;
  HousingInstance h;
  h.names.agents = Labels("a", t + nw);
  h.names.resources = Labels("h", t + v);
  h.endowment.assign(t + nw, kUnmatched);
  for (int a = 0; a < t; ++a) h.endowment[a] = a;
  for (int a = 0; a < t + nw; ++a) {
    auto order = Permutation(t + v, rng);
    int len = 1 + static_cast<int>(rng.Below(t + v));
    if (!complete) order.resize(len);
    if (a < t && RankOf(order, a) < 0) order.push_back(a);
    h.prefs.push_back(order);
  }
  h.queue = Permutation(t + nw, rng);
  return h;
}

Instance GenSchool(const Params& size, SplitMix64& rng) {
  const int n = Knob(size, "n", 4, 1, 60);
  const int m = Knob(size, "m", 3, 1, 20);
  const int cap = Knob(size, "capacity", 1, 1, 60);
  const int fields = Knob(size, "fields", 0, 0, m);
  const bool scores = size.GetInt("scores", 0) != 0;
  SchoolInstance s;
  s.names.agents = Labels("s", n);
  s.names.resources = Labels("c", m);
  s.capacity.assign(m, cap);
  s.score.assign(n, std::nullopt);
  for (int i = 0; i < n; ++i) {
    auto order = Permutation(m, rng);
    order.resize(1 + rng.Below(m));
    s.prefs.push_back(order);
  }
  if (scores) {
    auto ranking = Permutation(n, rng);
    for (int k = 0; k < n; ++k) s.score[ranking[k]] = 10 * (n - k);
    for (int k = 0; k < m; ++k) s.priority.push_back(ranking);
  } else if (fields > 0) {
    s.field_names = Labels("f", fields);
    for (int f = 0; f < fields; ++f) s.field_ranking.push_back(Permutation(n, rng));
    for (int k = 0; k < m; ++k) {
      s.field.push_back(k < fields ? k : static_cast<int>(rng.Below(fields)));
      s.priority.push_back(s.field_ranking[s.field.back()]);
    }
  } else {
    for (int k = 0; k < m; ++k) s.priority.push_back(Permutation(n, rng));
  }
  return s;
}

Instance GenContracts(const Params& size, SplitMix64& rng) {
  const int n = Knob(size, "cadets", 3, 1, 40);
  const int nb = Knob(size, "branches", 2, 1, 10);
  const int nt = Knob(size, "tiers", 2, 1, 4);
  const int cap = Knob(size, "capacity", 1, 1, 40);
  ContractsInstance c;
  c.names.agents = Labels("c", n);
  c.names.resources = Labels("b", nb);
  for (int t = 0; t < nt; ++t) c.tiers.push_back("t" + std::to_string(t));
  c.oml = Permutation(n, rng);
  c.score.assign(n, std::nullopt);
  for (int b = 0; b < nb; ++b) {
    contracts::Branch br;
    br.capacity = cap;
    br.flexible = static_cast<int>(rng.Below(cap + 1));
    const int kind = static_cast<int>(rng.Below(3));
    if (kind == 1 && n > 1) {
      br.scheme.kind = contracts::SchemeKind::kTiered;
      int a = 1 + static_cast<int>(rng.Below(n - 1));
      br.scheme.group_sizes = {a, n - a};
    } else if (kind == 2) {
      br.scheme.kind = contracts::SchemeKind::kScoring;
      int acc = 0;
      for (int t = 0; t < nt; ++t) {
        br.scheme.boost.push_back(acc);
        acc += static_cast<int>(rng.Below(n + 1));
      }
    }
    c.branches.push_back(br);
  }
  // cheaper is better at a fixed branch: a cadet who accepts (b, t) also
  // accepts (b, t') for every t' < t and ranks it higher
  for (int k = 0; k < n; ++k) {
    std::vector<int> tokens;
    for (int b = 0; b < nb; ++b) {
      const int depth = static_cast<int>(rng.Below(nt + 1));
      tokens.insert(tokens.end(), depth, b);
    }
    Shuffle(tokens, rng);
    std::vector<int> seen(nb, 0);
    std::vector<contracts::Term> prefs;
    for (int b : tokens) prefs.push_back({b, seen[b]++});
    c.prefs.push_back(prefs);
  }
  return c;
}

Instance GenReserves(const Params& size, SplitMix64& rng) {
  const int n = Knob(size, "applicants", 8, 1, 200);
  const int ncat = Knob(size, "categories", 2, 1, 6);
  const int ng = Knob(size, "groups", 1, 0, 4);
  const int cap = Knob(size, "capacity", 2, 0, 200);
  const int hr = Knob(size, "hr_reserve", 1, 0, 200);
  const int ninst = Knob(size, "institutions", 0, 0, 6);
  const bool overlap = size.GetInt("overlap", 0) != 0;
  if (hr * ng > cap) {
    throw ValidationError({"hr_reserve exceeds capacity: " +
                           std::to_string(hr * ng) + " reserved HR positions, " +
                           std::to_string(cap) + " seats"});
  }
  ReserveInstance r;
  r.names.agents = Labels("p", n);
  r.names.resources = {"open"};
  for (int v = 1; v < ncat; ++v) r.names.resources.push_back("R" + std::to_string(v));
  r.hr_groups = Labels("g", ng);
  auto merit = Permutation(n, rng);
  for (int a = 0; a < n; ++a) {
    r.merit.push_back(10 * (merit[a] + 1));
    r.vr.push_back(static_cast<int>(rng.Below(ncat)));
    std::vector<int> traits;
    for (int g = 0; g < ng; ++g) {
      if (rng.Below(3) == 0) traits.push_back(g);
    }
    if (!overlap && traits.size() > 1) traits.resize(1);
    r.hr.push_back(traits);
  }
  reserves::Seats seats;
  seats.capacity.assign(ncat, cap);
  seats.hr_reserve.assign(ncat, std::vector<int>(ng, hr));
  if (ninst == 0) {
    r.seats = seats;
  } else {
    r.institutions = Labels("i", ninst);
    r.institution_seats.assign(ninst, seats);
    for (int a = 0; a < n; ++a) {
      auto order = Permutation(ninst, rng);
      order.resize(1 + rng.Below(ninst));
      r.prefs.push_back(order);
    }
  }
  return r;
}

Instance GenExchange(const Params& size, SplitMix64& rng) {
  const int n = Knob(size, "pairs", 12, 1, 60);
  const int ndds = Knob(size, "ndds", 0, 0, 16);
  // Blood-type shares in percent (O, A, B, AB) and a positive crossmatch rate.
  const int o = Knob(size, "o", 44, 0, 100);
  const int a = Knob(size, "a", 42, 0, 100);
  const int b = Knob(size, "b", 10, 0, 100);
  const int ab = Knob(size, "ab", 4, 0, 100);
  const int pra = Knob(size, "pra", 30, 0, 100);
  const int wait = Knob(size, "w", 20, 0, 100);
  if (o + a + b + ab != 100) throw ValidationError({"blood-type shares must sum to 100"});
  auto draw = [&]() {
    int x = static_cast<int>(rng.Below(100));
    if (x < o) return 0;
    if (x < o + a) return 1;
    if (x < o + a + b) return 2;
    return 3;
  };
  // Bit k set = antigen k present; a donor fits when its antigens are a
  // subset of the patient's.
  const int antigens[4] = {0, 1, 2, 3};
  ExchangePool p;
  p.names.agents = Labels("p", n);
  for (int i = 1; i <= n; ++i) p.names.resources.push_back("d" + std::to_string(i));
  for (int i = 1; i <= ndds; ++i) p.names.resources.push_back("n" + std::to_string(i));
  const int nk = n + ndds;
  std::vector<int> donor(nk), patient(n);
  for (int k = 0; k < nk; ++k) donor[k] = antigens[draw()];
  for (int i = 0; i < n; ++i) patient[i] = antigens[draw()];
  p.compatible.assign(nk, std::vector<bool>(n, false));
  for (int k = 0; k < nk; ++k) {
    for (int i = 0; i < n; ++i) {
      if (k == i) continue;
      bool abo = (donor[k] & ~patient[i]) == 0;
      if (abo && static_cast<int>(rng.Below(100)) >= pra) p.compatible[k][i] = true;
    }
  }
  for (int i = 0; i < n; ++i) {
    Ranking r;
    for (int k : Permutation(nk, rng)) {
      if (p.compatible[k][i]) r.push_back(k);
    }
    if (static_cast<int>(rng.Below(100)) < wait) r.push_back(kWaitlist);
    p.prefs.push_back(r);
  }
  p.priority = Permutation(n, rng);
  return p;
}

}  // namespace

Instance ParseInstance(const Json& doc) {
  if (!doc.is_object()) throw ValidationError({"instance must be a JSON object"});
  if (!doc.contains("family") || !doc["family"].is_string()) {
    throw ValidationError({"instance: missing key 'family'"});
  }
  auto family = ParseFamily(doc["family"].get<std::string>());
  if (!family) {
    throw ValidationError({"unknown family: " + doc["family"].get<std::string>()});
  }
  Instance inst;
  switch (*family) {
    case Family::kOneSided:
      inst = ParseHousing(doc);
      break;
    case Family::kTwoSided:
      inst = ParseSchool(doc);
      break;
    case Family::kContracts:
      inst = ParseContracts(doc);
      break;
    case Family::kReserves:
      inst = ParseReserves(doc);
      break;
    case Family::kExchange:
      inst = ParseExchange(doc);
      break;
  }
  RequireValid(inst);
  return inst;
}

Instance ParseInstanceText(const std::string& text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError({std::string("malformed JSON: ") + e.what()});
  }
  return ParseInstance(doc);
}

Instance ReadInstanceFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError({"cannot read " + path});
  std::stringstream ss;
  ss << in.rdbuf();
  return ParseInstanceText(ss.str());
}

Json InstanceToJson(const Instance& inst) {
  return std::visit(
      [](const auto& x) -> Json {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, HousingInstance>) {
          return HousingToJson(x);
        } else if constexpr (std::is_same_v<T, SchoolInstance>) {
          return SchoolToJson(x);
        } else if constexpr (std::is_same_v<T, ContractsInstance>) {
          return ContractsToJson(x);
        } else if constexpr (std::is_same_v<T, ReserveInstance>) {
          return ReservesToJson(x);
        } else {
          return ExchangeToJson(x);
        }
      },
      inst);
}

Json AllocationToJson(const Instance& inst, const Allocation& a) {
  Json out = Json::object();
  for (int i = 0; i < a.size(); ++i) {
    const std::string agent = AgentName(inst, i);
    const int r = a.resource[i];
    if (r == kUnmatched) {
      out[agent] = nullptr;
      continue;
    }
    switch (FamilyOf(inst)) {
      case Family::kContracts: {
        const auto& c = std::get<ContractsInstance>(inst);
        out[agent] = Json{{"branch", c.names.resources[r]},
                          {"price", c.tiers[a.label[i]]}};
        break;
      }
      case Family::kReserves: {
        const auto& rs = std::get<ReserveInstance>(inst);
        Json j = Json::object();
        if (rs.multi()) j["institution"] = rs.institutions[r];
        const int v = rs.multi() ? a.label[i] : r;
        j["category"] = rs.names.resources[v];
        j["hr"] = a.slot[i] >= 0 ? Json(rs.hr_groups[a.slot[i]]) : Json(nullptr);
        if (!rs.multi() && a.label[i] >= 0) j["position"] = a.label[i];
        out[agent] = j;
        break;
      }
      case Family::kExchange: {
        const auto& p = std::get<ExchangePool>(inst);
        out[agent] = r == kWaitlist ? std::string("w") : p.names.resources[r];
        break;
      }
      default:
        out[agent] = ItemName(inst, r);
    }
  }
  return out;
}

Allocation ParseAllocation(const Instance& inst, const Json& doc) {
  const Json& map = doc.is_object() && doc.contains("allocation")
                        ? doc.at("allocation")
                        : doc;
  Reader rd;
  if (!map.is_object()) throw ValidationError({"allocation must be an object"});
  const std::vector<std::string> agents = std::visit(
      [](const auto& x) { return x.names.agents; }, inst);
  Allocation a(static_cast<int>(agents.size()));
  std::vector<bool> seen(agents.size(), false);
  for (const auto& [id, v] : map.items()) {
    int i = rd.Find(agents, id, "allocation");
    if (i < 0) continue;
    seen[i] = true;
    if (v.is_null()) continue;
    switch (FamilyOf(inst)) {
      case Family::kOneSided:
      case Family::kTwoSided: {
        const auto& names = std::visit(
            [](const auto& x) { return x.names.resources; }, inst);
        if (auto s = rd.Str(v, "allocation/" + id)) {
          a.resource[i] = rd.Find(names, *s, "allocation/" + id);
        }
        break;
      }
      case Family::kContracts: {
        const auto& c = std::get<ContractsInstance>(inst);
        if (auto t = ParseTerm(rd, c, v, "allocation/" + id)) {
          a.Assign(i, t->branch, t->tier);
        }
        break;
      }
      case Family::kReserves: {
        const auto& r = std::get<ReserveInstance>(inst);
        const std::string where = "allocation/" + id;
        int v_idx = -1, s_idx = 0, g = -1;
        if (const Json* c = rd.Get(v, "category", where, true)) {
          if (auto s = rd.Str(*c, where)) v_idx = rd.Find(r.names.resources, *s, where);
        }
        if (r.multi()) {
          if (const Json* s = rd.Get(v, "institution", where, true)) {
            if (auto x = rd.Str(*s, where)) s_idx = rd.Find(r.institutions, *x, where);
          }
        }
        if (const Json* h = rd.Get(v, "hr", where, false); h && !h->is_null()) {
          if (auto x = rd.Str(*h, where)) g = rd.Find(r.hr_groups, *x, where);
        }
        if (r.multi()) {
          a.Assign(i, s_idx, v_idx, g);
        } else {
          a.Assign(i, v_idx, -1, g);
        }
        break;
      }
      case Family::kExchange: {
        const auto& p = std::get<ExchangePool>(inst);
        if (auto s = rd.Str(v, "allocation/" + id)) {
          a.resource[i] = *s == "w" ? kWaitlist
                                    : rd.Find(p.names.resources, *s,
                                              "allocation/" + id);
        }
        break;
      }
    }
  }
  for (size_t i = 0; i < agents.size(); ++i) {
    if (!seen[i]) rd.Error("allocation omits agent " + agents[i]);
  }
  rd.Finish();
  return a;
}

Json OutcomeToJson(const Instance& inst, const Outcome& outcome,
                   const Trace* trace) {
  Json out;
  out["allocation"] = AllocationToJson(inst, outcome.allocation);
  if (outcome.clearing) {
    const auto& pool = std::get<ExchangePool>(inst);
    Json structures = Json::array();
    for (const auto& s : outcome.clearing->structures) {
      Json j;
      j["kind"] = s.chain ? "chain" : "cycle";
      if (s.chain) {
        j["source"] = s.source < 0 ? std::string("w")
                                   : pool.names.resources[s.source];
      }
      Json members = Json::array();
      for (int x : s.pairs) members.push_back(pool.names.agents[x]);
      j["pairs"] = members;
      structures.push_back(j);
    }
    out["structures"] = structures;
    out["transplants"] = outcome.clearing->transplants;
  }
  if (trace) out["trace"] = *trace;
  return out;
}

Json WitnessToJson(const Instance& inst, const axioms::Witness& w) {
  Json j;
  j["axiom"] = w.axiom;
  Json agents = Json::array();
  for (int a : w.agents) agents.push_back(AgentName(inst, a));
  j["agents"] = agents;
  if (FamilyOf(inst) == Family::kReserves && w.axiom != "strategy-proofness" &&
      w.axiom != "PE" && w.axiom != "IR") {
    const auto& r = std::get<ReserveInstance>(inst);
    size_t k = 0;
    if (r.multi()) j["institution"] = Name(r.institutions, w.items.at(k++));
    j["category"] = Name(r.names.resources, w.items.at(k++));
    if (w.axiom == "VR-compliance") j["condition"] = w.items.at(k);
  } else {
    Json items = Json::array();
    for (int x : w.items) items.push_back(ItemName(inst, x));
    j["resources"] = items;
  }
  if (!w.report.empty() || w.axiom == "strategy-proofness") {
    Json r = Json::array();
    for (int x : w.report) r.push_back(ItemName(inst, x));
    j[w.axiom == "PE" ? "dominating" : "report"] = r;
  }
  if (w.third_party) j["third_party"] = true;
  j["replay"] = w.replay;
  return j;
}

Json VerdictToJson(const Instance& inst, const axioms::Verdict& v) {
  Json j;
  j["verdict"] = v.holds ? "holds" : "violated";
  if (v.witness) j["witness"] = WitnessToJson(inst, *v.witness);
  if (!v.flagged.empty()) {
    Json f = Json::array();
    for (const auto& w : v.flagged) f.push_back(WitnessToJson(inst, w));
    j["third_party_witnesses"] = f;
  }
  return j;
}

Json ReportToJson(const Instance& inst, const axioms::AxiomReport& report) {
  Json j = Json::object();
  for (const auto& r : report) j[r.axiom] = VerdictToJson(inst, r.verdict);
  return j;
}

Instance Generate(Family family, const Params& size, uint64_t seed) {
  SplitMix64 rng(seed);
  Instance inst;
  switch (family) {
    case Family::kOneSided:
      inst = GenHousing(size, rng);
      break;
    case Family::kTwoSided:
      inst = GenSchool(size, rng);
      break;
    case Family::kContracts:
      inst = GenContracts(size, rng);
      break;
    case Family::kReserves:
      inst = GenReserves(size, rng);
      break;
    case Family::kExchange:
      inst = GenExchange(size, rng);
      break;
  }
  RequireValid(inst);
  return inst;
}

}  // namespace mdtk::io
