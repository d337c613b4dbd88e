#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "fdsi/errors.hpp"

namespace fdsi {

using AgentId = std::size_t;
using ItemId = std::size_t;
using Value = std::int64_t;
using ItemSet = std::vector<ItemId>;
using AgentSet = std::vector<AgentId>;

// Agents and items are addressed by their position in the instance; the
// string ids exist for files and printing. Item order is significant: it is
// the layer order of the exact search and the serialization order.
struct Instance {
  std::vector<std::string> agents;
  std::vector<std::string> items;
  std::vector<std::vector<Value>> valuations;  // n x m, utility units
  std::vector<std::vector<Value>> impacts;     // n x m, non-negative
  std::vector<Value> weights;                  // empty means unweighted
  std::vector<bool> aware;                     // per agent, socially aware?

  std::size_t num_agents() const noexcept { return agents.size(); }
  std::size_t num_items() const noexcept { return items.size(); }

  Value value(AgentId i, ItemId g) const { return valuations[i][g]; }
  Value impact(AgentId i, ItemId g) const { return impacts[i][g]; }
  Value weight(AgentId i) const { return weights.empty() ? 1 : weights[i]; }
  bool has_weights() const noexcept { return !weights.empty(); }
  bool is_aware(AgentId i) const { return aware.empty() ? true : static_cast<bool>(aware[i]); }

  bool is_goods() const {
    for (const auto& row : valuations)
      for (Value v : row)
        if (v < 0) return false;
    return true;
  }

  // Builds an instance with default ids a1.., g1.., unit weights, all aware.
  static Instance make(std::vector<std::vector<Value>> valuations,
                       std::vector<std::vector<Value>> impacts) {
    Instance inst;
    const std::size_t n = valuations.size();
    const std::size_t m = n == 0 ? 0 : valuations.front().size();
    for (std::size_t i = 0; i < n; ++i) inst.agents.push_back("a" + std::to_string(i + 1));
    for (std::size_t g = 0; g < m; ++g) inst.items.push_back("g" + std::to_string(g + 1));
    inst.valuations = std::move(valuations);
    inst.impacts = std::move(impacts);
    inst.weights.assign(n, 1);
    inst.aware.assign(n, true);
    return inst;
  }

  friend bool operator==(const Instance&, const Instance&) = default;
};

// A (possibly partial) allocation: one bundle per agent.
struct Allocation {
  std::vector<ItemSet> bundles;

  Allocation() = default;
  explicit Allocation(std::size_t num_agents) : bundles(num_agents) {}

  static constexpr AgentId kUnassigned = static_cast<AgentId>(-1);

  // owners[g] is the agent receiving item g, or kUnassigned.
  static Allocation from_owners(std::size_t num_agents, std::span<const AgentId> owners) {
    Allocation a(num_agents);
    for (ItemId g = 0; g < owners.size(); ++g)
      if (owners[g] != kUnassigned) a.bundles.at(owners[g]).push_back(g);
    return a;
  }

  std::size_t num_agents() const noexcept { return bundles.size(); }
  const ItemSet& operator[](AgentId i) const { return bundles[i]; }
  ItemSet& operator[](AgentId i) { return bundles[i]; }

  std::size_t num_assigned() const {
    std::size_t count = 0;
    for (const auto& b : bundles) count += b.size();
    return count;
  }

  // Bundles sorted by item index; equality and printing use this form.
  Allocation canonical() const {
    Allocation out = *this;
    for (auto& b : out.bundles) std::sort(b.begin(), b.end());
    return out;
  }

  friend bool operator==(const Allocation& a, const Allocation& b) {
    return a.canonical().bundles == b.canonical().bundles;
  }
};

inline std::vector<std::string> validate(const Instance& inst) {
  std::vector<std::string> problems;
  const std::size_t n = inst.num_agents();
  const std::size_t m = inst.num_items();
  auto check_matrix = [&](const std::vector<std::vector<Value>>& matrix, const char* name) {
    if (matrix.size() != n) {
      problems.push_back(std::string(name) + " has " + std::to_string(matrix.size()) + " rows, expected " +
                         std::to_string(n));
      return;
    }
    for (std::size_t i = 0; i < n; ++i)
      if (matrix[i].size() != m)
        problems.push_back(std::string(name) + " row " + std::to_string(i) + " has " +
                           std::to_string(matrix[i].size()) + " entries, expected " + std::to_string(m));
  };
  check_matrix(inst.valuations, "valuations");
  check_matrix(inst.impacts, "impacts");
  if (problems.empty()) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t g = 0; g < m; ++g)
        if (inst.impacts[i][g] < 0)
          problems.push_back("negative impact for agent " + inst.agents[i] + " on item " + inst.items[g]);
  }
  if (!inst.weights.empty()) {
    if (inst.weights.size() != n) problems.push_back("weights length does not match agent count");
    for (std::size_t i = 0; i < inst.weights.size(); ++i)
      if (inst.weights[i] < 1) problems.push_back("weight of agent " + std::to_string(i) + " is below 1");
  }
  if (!inst.aware.empty() && inst.aware.size() != n) problems.push_back("awareness length does not match agent count");

  auto check_unique = [&](const std::vector<std::string>& ids, const char* what) {
    std::set<std::string> seen;
    for (const auto& id : ids)
      if (!seen.insert(id).second) problems.push_back(std::string("duplicate ") + what + " id '" + id + "'");
  };
  check_unique(inst.agents, "agent");
  check_unique(inst.items, "item");
  return problems;
}

inline std::vector<std::string> validate_allocation(const Instance& inst, const Allocation& alloc,
                                                    bool require_complete = false) {
  std::vector<std::string> problems;
  if (alloc.num_agents() != inst.num_agents()) {
    problems.push_back("allocation has " + std::to_string(alloc.num_agents()) + " bundles for " +
                       std::to_string(inst.num_agents()) + " agents");
    return problems;
  }
  std::vector<int> seen(inst.num_items(), 0);
  for (AgentId i = 0; i < alloc.num_agents(); ++i) {
    for (ItemId g : alloc[i]) {
      if (g >= inst.num_items()) {
        problems.push_back("bundle of agent " + inst.agents[i] + " references unknown item " + std::to_string(g));
        continue;
      }
      if (++seen[g] == 2) problems.push_back("item " + inst.items[g] + " is in more than one bundle");
    }
  }
  if (require_complete)
    for (ItemId g = 0; g < inst.num_items(); ++g)
      if (seen[g] == 0) problems.push_back("item " + inst.items[g] + " is unallocated");
  return problems;
}

inline void require_valid(const Instance& inst) {
  auto problems = validate(inst);
  if (!problems.empty()) throw ValidationError(std::move(problems));
}

inline void require_valid(const Instance& inst, const Allocation& alloc, bool require_complete) {
  auto problems = validate_allocation(inst, alloc, require_complete);
  if (!problems.empty()) throw ValidationError(std::move(problems));
}

inline void require_goods(const Instance& inst) {
  if (!inst.is_goods()) throw GoodsOnlyError();
}

inline Value bundle_value(const Instance& inst, AgentId i, std::span<const ItemId> bundle) {
  Value total = 0;
  for (ItemId g : bundle) {
    if (g >= inst.num_items()) throw ValidationError("unknown item index " + std::to_string(g));
    total += inst.valuations[i][g];
  }
  return total;
}

inline Value bundle_impact(const Instance& inst, AgentId i, std::span<const ItemId> bundle) {
  Value total = 0;
  for (ItemId g : bundle) {
    if (g >= inst.num_items()) throw ValidationError("unknown item index " + std::to_string(g));
    total += inst.impacts[i][g];
  }
  return total;
}

inline Value total_social_impact(const Instance& inst, const Allocation& alloc) {
  require_valid(inst, alloc, /*require_complete=*/true);
  Value total = 0;
  for (AgentId i = 0; i < alloc.num_agents(); ++i) total += bundle_impact(inst, i, alloc[i]);
  return total;
}

inline Value max_impact(const Instance& inst, ItemId g) {
  Value best = 0;
  for (AgentId i = 0; i < inst.num_agents(); ++i) best = std::max(best, inst.impacts[i][g]);
  return best;
}

// All agents attaining the maximum impact on g, in index order.
inline AgentSet impact_maximizers(const Instance& inst, ItemId g) {
  if (g >= inst.num_items()) throw ValidationError("unknown item index " + std::to_string(g));
  const Value best = max_impact(inst, g);
  AgentSet out;
  for (AgentId i = 0; i < inst.num_agents(); ++i)
    if (inst.impacts[i][g] == best) out.push_back(i);
  return out;
}

// maximizers[g] for every item, computed once.
inline std::vector<AgentSet> maximizer_table(const Instance& inst) {
  std::vector<AgentSet> table(inst.num_items());
  for (ItemId g = 0; g < inst.num_items(); ++g) table[g] = impact_maximizers(inst, g);
  return table;
}

// The largest achievable social impact: every item with one of its maximizers.
inline Value optimal_social_impact(const Instance& inst) {
  Value total = 0;
  for (ItemId g = 0; g < inst.num_items(); ++g) total += max_impact(inst, g);
  return total;
}

// Replaces impacts by the 0/1 indicator of maximizer membership.
inline Instance normalize_impacts(const Instance& inst) {
  Instance out = inst;
  for (ItemId g = 0; g < inst.num_items(); ++g) {
    const Value best = max_impact(inst, g);
    for (AgentId i = 0; i < inst.num_agents(); ++i) out.impacts[i][g] = inst.impacts[i][g] == best ? 1 : 0;
  }
  return out;
}

}  // namespace fdsi
