#pragma once

#include <map>
#include <vector>

#include "fdsi/instance.hpp"

namespace fdsi {

// Items grouped by their set of impact maximizers; agents grouped by the set
// of items they maximize. Classes are numbered by first appearance.
struct TypePartition {
  std::vector<ItemSet> item_types;          // T_t
  std::vector<std::size_t> item_type_of;    // item -> t
  std::vector<AgentSet> maximizer_sets;     // t -> N_t
  std::vector<AgentSet> agent_types;
  std::vector<std::size_t> agent_type_of;   // agent -> agent type

  std::size_t num_item_types() const noexcept { return item_types.size(); }
  std::size_t num_agent_types() const noexcept { return agent_types.size(); }

  // Item types maximized by agent i.
  std::vector<std::size_t> types_of_agent(AgentId i) const {
    std::vector<std::size_t> out;
    for (std::size_t t = 0; t < maximizer_sets.size(); ++t)
      if (std::binary_search(maximizer_sets[t].begin(), maximizer_sets[t].end(), i)) out.push_back(t);
    return out;
  }
};

inline TypePartition compute_types(const Instance& inst) {
  TypePartition types;
  const auto maximizers = maximizer_table(inst);

  std::map<AgentSet, std::size_t> item_class;
  types.item_type_of.resize(inst.num_items());
  for (ItemId g = 0; g < inst.num_items(); ++g) {
    auto [it, inserted] = item_class.try_emplace(maximizers[g], types.item_types.size());
    if (inserted) {
      types.item_types.emplace_back();
      types.maximizer_sets.push_back(maximizers[g]);
    }
    types.item_types[it->second].push_back(g);
    types.item_type_of[g] = it->second;
  }

  // Agent signature: the item types it maximizes. Equal item-type sets mean
  // equal item sets because item types partition the items.
  std::map<std::vector<std::size_t>, std::size_t> agent_class;
  types.agent_type_of.resize(inst.num_agents());
  for (AgentId i = 0; i < inst.num_agents(); ++i) {
    auto signature = types.types_of_agent(i);
    auto [it, inserted] = agent_class.try_emplace(std::move(signature), types.agent_types.size());
    if (inserted) types.agent_types.emplace_back();
    types.agent_types[it->second].push_back(i);
    types.agent_type_of[i] = it->second;
  }
  return types;
}

}  // namespace fdsi
