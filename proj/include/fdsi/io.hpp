#pragma once

#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "fdsi/fairness.hpp"
#include "fdsi/instance.hpp"

// JSON files. Keys are written in a fixed order and every number is an
// integer, so files diff cleanly. Parsing is strict: unknown keys, wrong
// types and shape mismatches raise ValidationError.

namespace fdsi::io {

using Json = nlohmann::ordered_json;

namespace detail {

inline void require_keys(const Json& obj, const std::set<std::string>& allowed, const std::string& where) {
  if (!obj.is_object()) throw ValidationError(where + " must be a JSON object");
  for (const auto& [key, _] : obj.items())
    if (!allowed.count(key)) throw ValidationError("unknown key '" + key + "' in " + where);
}

inline const Json& require_field(const Json& obj, const std::string& key, const std::string& where) {
  if (!obj.contains(key)) throw ValidationError("missing key '" + key + "' in " + where);
  return obj.at(key);
}

inline Value as_int(const Json& v, const std::string& where) {
  if (!v.is_number_integer()) throw ValidationError(where + " must be an integer");
  return v.get<Value>();
}

inline std::string as_string(const Json& v, const std::string& where) {
  if (!v.is_string()) throw ValidationError(where + " must be a string");
  return v.get<std::string>();
}

inline std::vector<std::vector<Value>> as_matrix(const Json& v, const std::string& name) {
  if (!v.is_array()) throw ValidationError(name + " must be an array of arrays");
  std::vector<std::vector<Value>> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_array()) throw ValidationError(name + " row " + std::to_string(i) + " must be an array");
    std::vector<Value> row;
    for (std::size_t g = 0; g < v[i].size(); ++g)
      row.push_back(as_int(v[i][g], name + "[" + std::to_string(i) + "][" + std::to_string(g) + "]"));
    out.push_back(std::move(row));
  }
  return out;
}

inline Json parse_text(const std::string& text, const std::string& what) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError("malformed JSON in " + what + ": " + e.what());
  }
}

}  // namespace detail

inline Json instance_to_json(const Instance& inst) {
  Json agents = Json::array();
  for (AgentId i = 0; i < inst.num_agents(); ++i)
    agents.push_back(Json{{"id", inst.agents[i]}, {"weight", inst.weight(i)}, {"aware", inst.is_aware(i)}});
  Json out;
  out["agents"] = agents;
  out["items"] = inst.items;
  out["valuations"] = inst.valuations;
  out["impacts"] = inst.impacts;
  return out;
}

inline Instance instance_from_json(const Json& j) {
  detail::require_keys(j, {"agents", "items", "valuations", "impacts"}, "instance");
  Instance inst;
  const Json& agents = detail::require_field(j, "agents", "instance");
  if (!agents.is_array()) throw ValidationError("'agents' must be an array");
  for (std::size_t i = 0; i < agents.size(); ++i) {
    const std::string where = "agents[" + std::to_string(i) + "]";
    detail::require_keys(agents[i], {"id", "weight", "aware"}, where);
    inst.agents.push_back(detail::as_string(detail::require_field(agents[i], "id", where), where + ".id"));
    inst.weights.push_back(agents[i].contains("weight") ? detail::as_int(agents[i]["weight"], where + ".weight")
                                                        : 1);
    if (agents[i].contains("aware")) {
      if (!agents[i]["aware"].is_boolean()) throw ValidationError(where + ".aware must be a boolean");
      inst.aware.push_back(agents[i]["aware"].get<bool>());
    } else {
      inst.aware.push_back(true);
    }
  }
  const Json& items = detail::require_field(j, "items", "instance");
  if (!items.is_array()) throw ValidationError("'items' must be an array");
  for (std::size_t g = 0; g < items.size(); ++g)
    inst.items.push_back(detail::as_string(items[g], "items[" + std::to_string(g) + "]"));
  inst.valuations = detail::as_matrix(detail::require_field(j, "valuations", "instance"), "valuations");
  inst.impacts = detail::as_matrix(detail::require_field(j, "impacts", "instance"), "impacts");
  require_valid(inst);
  return inst;
}

inline Json allocation_to_json(const Instance& inst, const Allocation& alloc) {
  const Allocation canon = alloc.canonical();
  Json bundles = Json::object();
  for (AgentId i = 0; i < inst.num_agents(); ++i) {
    Json items = Json::array();
    for (ItemId g : canon[i]) items.push_back(inst.items.at(g));
    bundles[inst.agents[i]] = items;
  }
  return Json{{"bundles", bundles}};
}

/// Agents absent from the file get an empty bundle.
inline Allocation allocation_from_json(const Instance& inst, const Json& j) {
  detail::require_keys(j, {"bundles"}, "allocation");
  const Json& bundles = detail::require_field(j, "bundles", "allocation");
  if (!bundles.is_object()) throw ValidationError("'bundles' must be an object");
  std::map<std::string, AgentId> agent_index;
  for (AgentId i = 0; i < inst.num_agents(); ++i) agent_index[inst.agents[i]] = i;
  std::map<std::string, ItemId> item_index;
  for (ItemId g = 0; g < inst.num_items(); ++g) item_index[inst.items[g]] = g;

  Allocation alloc(inst.num_agents());
  for (const auto& [agent, items] : bundles.items()) {
    const auto a = agent_index.find(agent);
    if (a == agent_index.end()) throw ValidationError("allocation names unknown agent '" + agent + "'");
    if (!items.is_array()) throw ValidationError("bundle of '" + agent + "' must be an array");
    for (const auto& item : items) {
      const std::string id = detail::as_string(item, "bundle entry of '" + agent + "'");
      const auto g = item_index.find(id);
      if (g == item_index.end()) throw ValidationError("allocation names unknown item '" + id + "'");
      alloc[a->second].push_back(g->second);
    }
  }
  require_valid(inst, alloc, /*require_complete=*/false);
  return alloc;
}

inline Json witness_to_json(const Instance& inst, const Witness& w) {
  Json out;
  out["condition"] = w.condition;
  if (w.observer) out["observer"] = inst.agents.at(*w.observer);
  if (w.target) out["target"] = inst.agents.at(*w.target);
  if (w.item) out["item"] = inst.items.at(*w.item);
  if (w.better_agent) out["better_agent"] = inst.agents.at(*w.better_agent);
  if (w.candidates_examined > 0) out["candidates_examined"] = w.candidates_examined;
  return out;
}

/// {"sim", "fair", "witness"}: the witness explains the fairness failure,
/// or the SIM failure when only that fails, and is null otherwise. sim is
/// null for partial allocations.
inline Json verdict_to_json(const Instance& inst, const std::optional<Verdict>& sim, const Verdict& fair) {
  Json out;
  out["sim"] = sim ? Json(sim->fair) : Json(nullptr);
  out["fair"] = fair.fair;
  if (!fair.fair && fair.witness)
    out["witness"] = witness_to_json(inst, *fair.witness);
  else if (sim && !sim->fair && sim->witness)
    out["witness"] = witness_to_json(inst, *sim->witness);
  else
    out["witness"] = nullptr;
  return out;
}

inline std::string dump(const Json& j) { return j.dump(2) + "\n"; }

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot write '" + path + "'");
  out << text;
}

inline Instance parse_instance(const std::string& text) { return instance_from_json(detail::parse_text(text, "instance")); }

inline Allocation parse_allocation(const Instance& inst, const std::string& text) {
  return allocation_from_json(inst, detail::parse_text(text, "allocation"));
}

inline Instance load_instance(const std::string& path) { return parse_instance(read_file(path)); }

inline Allocation load_allocation(const Instance& inst, const std::string& path) {
  return parse_allocation(inst, read_file(path));
}

}  // namespace fdsi::io
