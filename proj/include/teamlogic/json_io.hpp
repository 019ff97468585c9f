// JSON encoding and decoding for valuations, teams, properties, models, and
// the report structures. Schemas:
//   valuation = {"p":0,"q":1}   team = [valuation,...]   property = [team,...]
//   domain    = ["p","q"]
//   model     = {"worlds":[...], "rel":[[from,to],...], "val":{"p":[worlds]}}
//   modal team = ["w1","w2"]
#pragma once

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "teamlogic/closure.hpp"
#include "teamlogic/core.hpp"
#include "teamlogic/definability.hpp"
#include "teamlogic/modal.hpp"
#include "teamlogic/synth.hpp"

namespace teamlogic {

using nlohmann::json;

struct JsonError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline json domain_to_json(const Domain& X) { return json(X.atoms); }

inline Domain domain_from_json(const json& j) {
  if (!j.is_array()) throw JsonError("domain: expected array of atom names");
  std::vector<std::string> atoms;
  for (const auto& a : j) {
    if (!a.is_string()) throw JsonError("domain: atom names must be strings");
    atoms.push_back(a.get<std::string>());
  }
  return Domain{std::move(atoms)};
}

inline json valuation_to_json(Valuation v, const Domain& X) {
  json o = json::object();
  for (size_t i = 0; i < X.size(); ++i)
    o[X.atoms[i]] = val_bit(v, static_cast<int>(i)) ? 1 : 0;
  return o;
}

inline Valuation valuation_from_json(const json& j, const Domain& X) {
  if (!j.is_object()) throw JsonError("valuation: expected object of atom bits");
  Valuation v = 0;
  for (auto it = j.begin(); it != j.end(); ++it) {
    int idx = X.index_of(it.key());
    if (idx < 0) throw JsonError("valuation: unknown atom " + it.key());
    int bit;
    if (it.value().is_boolean()) bit = it.value().get<bool>() ? 1 : 0;
    else if (it.value().is_number_integer()) bit = it.value().get<int>();
    else throw JsonError("valuation: bit for " + it.key() + " must be 0 or 1");
    if (bit != 0 && bit != 1)
      throw JsonError("valuation: bit for " + it.key() + " must be 0 or 1");
    if (bit) v |= 1u << idx;
  }
  for (const auto& a : X.atoms)
    if (!j.contains(a)) throw JsonError("valuation: missing atom " + a);
  return v;
}

inline json team_to_json(Team t, const Domain& X) {
  json arr = json::array();
  for (Valuation v : team_members(t)) arr.push_back(valuation_to_json(v, X));
  return arr;
}

inline Team team_from_json(const json& j, const Domain& X) {
  if (!j.is_array()) throw JsonError("team: expected array of valuations");
  Team t = 0;
  for (const auto& v : j) t |= Team{1} << valuation_from_json(v, X);
  return t;
}

inline json property_to_json(const Property& P, const Domain& X) {
  json arr = json::array();
  for (Team t : P.teams) arr.push_back(team_to_json(t, X));
  return arr;
}

inline Property property_from_json(const json& j, const Domain& X) {
  if (!j.is_array()) throw JsonError("property: expected array of teams");
  Property P;
  for (const auto& t : j) P.insert(team_from_json(t, X));
  return P;
}

inline json model_to_json(const KripkeModel& M) {
  json o;
  o["worlds"] = M.worlds;
  json rel = json::array();
  for (size_t w = 0; w < M.succ.size(); ++w)
    for (Valuation v : team_members(M.succ[w]))
      rel.push_back(json::array({M.worlds[w], M.worlds[v]}));
  json val = json::object();
  for (const auto& [p, mask] : M.valuation) {
    json ws = json::array();
    for (Valuation w : team_members(mask)) ws.push_back(M.worlds[w]);
    val[p] = ws;
  }
  o["rel"] = rel;
  o["val"] = val;
  return o;
}

inline KripkeModel model_from_json(const json& j) {
  if (!j.is_object() || !j.contains("worlds") || !j.contains("rel") || !j.contains("val"))
    throw JsonError("model: expected {worlds, rel, val}");
  std::vector<std::string> worlds;
  for (const auto& w : j["worlds"]) {
    if (!w.is_string()) throw JsonError("model: world names must be strings");
    worlds.push_back(w.get<std::string>());
  }
  auto windex = [&](const json& w) -> int {
    if (!w.is_string()) throw JsonError("model: world reference must be a name");
    auto it = std::find(worlds.begin(), worlds.end(), w.get<std::string>());
    if (it == worlds.end()) throw JsonError("model: unknown world " + w.get<std::string>());
    return static_cast<int>(it - worlds.begin());
  };
  std::vector<std::pair<int, int>> edges;
  for (const auto& e : j["rel"]) {
    if (!e.is_array() || e.size() != 2) throw JsonError("model: rel entries are [from,to]");
    edges.emplace_back(windex(e[0]), windex(e[1]));
  }
  std::map<std::string, Team> val;
  for (auto it = j["val"].begin(); it != j["val"].end(); ++it) {
    Team mask = 0;
    for (const auto& w : it.value()) mask |= Team{1} << windex(w);
    val[it.key()] = mask;
  }
  return KripkeModel(std::move(worlds), edges, std::move(val));
}

inline json modal_team_to_json(Team t, const KripkeModel& M) {
  json arr = json::array();
  for (Valuation w : team_members(t)) arr.push_back(M.worlds[w]);
  return arr;
}

inline Team modal_team_from_json(const json& j, const KripkeModel& M) {
  if (!j.is_array()) throw JsonError("modal team: expected array of world names");
  Team t = 0;
  for (const auto& w : j) {
    if (!w.is_string()) throw JsonError("modal team: world names must be strings");
    int idx = M.world_index(w.get<std::string>());
    if (idx < 0) throw JsonError("modal team: unknown world " + w.get<std::string>());
    t |= Team{1} << idx;
  }
  return t;
}

inline json closure_report_to_json(const ClosureReport& r, const Domain& X) {
  json o;
  o["downward"] = r.downward;
  o["upward"] = r.upward;
  o["convex"] = r.convex;
  o["union_closed"] = r.union_closed;
  o["empty_team"] = r.empty_team;
  o["flat"] = r.flat;
  o["downward_mod_empty"] = r.downward_mod_empty;
  o["partial_union"] = r.partial_union;
  auto pair_wit = [&](const std::optional<std::pair<Team, Team>>& w) {
    return w ? json::array({team_to_json(w->first, X), team_to_json(w->second, X)})
             : json(nullptr);
  };
  o["downward_witness"] = pair_wit(r.downward_witness);
  o["upward_witness"] = pair_wit(r.upward_witness);
  o["union_witness"] = pair_wit(r.union_witness);
  o["convex_witness"] =
      r.convex_witness
          ? json::array({team_to_json(r.convex_witness->low, X),
                         team_to_json(r.convex_witness->mid, X),
                         team_to_json(r.convex_witness->high, X)})
          : json(nullptr);
  return o;
}

inline json verify_report_to_json(const VerifyReport& r) {
  Domain X{r.atoms};
  json o;
  o["logic"] = synth_logic_name(r.logic);
  o["domain"] = domain_to_json(X);
  o["total"] = r.total;
  o["passed"] = r.passed;
  json fails = json::array();
  for (const auto& f : r.failures) {
    json fo;
    fo["property"] = property_to_json(f.property, X);
    fo["formula"] = f.formula ? json(print(f.formula)) : json(nullptr);
    fo["extension"] = f.formula ? property_to_json(f.extension, X) : json(nullptr);
    fo["error"] = f.error;
    fails.push_back(fo);
  }
  o["failures"] = fails;
  return o;
}

inline json uniform_result_to_json(const UniformResult& r, const Domain& X) {
  json o;
  o["ok"] = r.ok;
  if (!r.ok) {
    json args = json::array();
    for (const auto& P : r.witness) args.push_back(property_to_json(P, X));
    o["witness"] = args;
    o["expected"] = property_to_json(r.expected, X);
    o["got"] = property_to_json(r.got, X);
  }
  return o;
}

}  // namespace teamlogic
