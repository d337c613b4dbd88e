#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <stdexcept>
#include <vector>

#include "fdsi/fairness.hpp"
#include "fdsi/instance.hpp"
#include "fdsi/types.hpp"

// SIM + SA-empty existence through item/agent types. Agents sharing an agent
// type must hold nothing, so only agents of a unique type can hold items. For
// each guessed holder set U' (smallest first) a small integer program over
// per-type item counts is solved by bounded depth-first search. This is the
// desk-scale stand-in for a fixed-dimension ILP solver: correct, but without
// its running-time guarantee.

namespace fdsi {

/// Agents whose agent type has no other member.
inline AgentSet unique_type_agents(const TypePartition& types) {
  AgentSet out;
  for (const auto& cls : types.agent_types)
    if (cls.size() == 1) out.push_back(cls.front());
  std::sort(out.begin(), out.end());
  return out;
}

struct SAEmptyProgram {
  AgentSet unique_agents;                         // U
  AgentSet holders;                               // U', the guess
  std::vector<std::vector<std::size_t>> types;    // per holder: item types it maximizes (x_{i,t} exists)
  std::vector<std::size_t> type_sizes;            // |T_t|
  // Per holder: for each distinct agent type of another agent j, the item
  // types i maximizes but j does not. Strict domination over j needs at
  // least one of i's items to come from this set.
  std::vector<std::vector<std::vector<std::size_t>>> domination;
};

struct SAEmptyOptions {
  std::uint64_t node_budget = 50'000'000;
};

namespace detail {

inline SAEmptyProgram build_program(const TypePartition& types, const AgentSet& unique, const AgentSet& holders,
                                    std::size_t num_agents) {
  SAEmptyProgram p;
  p.unique_agents = unique;
  p.holders = holders;
  for (const auto& t : types.item_types) p.type_sizes.push_back(t.size());
  for (AgentId i : holders) {
    const auto mine = types.types_of_agent(i);
    p.types.push_back(mine);
    std::set<std::size_t> seen_agent_types;
    std::vector<std::vector<std::size_t>> rows;
    for (AgentId j = 0; j < num_agents; ++j) {
      if (j == i || !seen_agent_types.insert(types.agent_type_of[j]).second) continue;
      const auto theirs = types.types_of_agent(j);
      std::vector<std::size_t> only_mine;
      std::set_difference(mine.begin(), mine.end(), theirs.begin(), theirs.end(), std::back_inserter(only_mine));
      rows.push_back(std::move(only_mine));
    }
    p.domination.push_back(std::move(rows));
  }
  return p;
}

// counts[h][k] = items of type p.types[h][k] given to holder h.
inline std::optional<std::vector<std::vector<std::size_t>>> solve_program(const SAEmptyProgram& p,
                                                                         std::uint64_t& nodes,
                                                                         std::uint64_t budget) {
  const std::size_t holders = p.holders.size();
  std::vector<std::size_t> remaining = p.type_sizes;
  // last_holder[t]: the final holder (in order) able to take type t; that
  // holder's count is forced to whatever remains.
  std::vector<std::optional<std::size_t>> last_holder(p.type_sizes.size());
  for (std::size_t h = 0; h < holders; ++h)
    for (std::size_t t : p.types[h]) last_holder[t] = h;
  for (std::size_t t = 0; t < p.type_sizes.size(); ++t)
    if (p.type_sizes[t] > 0 && !last_holder[t]) return std::nullopt;

  std::vector<std::vector<std::size_t>> counts(holders);
  for (std::size_t h = 0; h < holders; ++h) counts[h].assign(p.types[h].size(), 0);

  auto holder_ok = [&](std::size_t h) {
    std::size_t total = 0;
    for (std::size_t c : counts[h]) total += c;
    if (total < 1) return false;
    for (const auto& row : p.domination[h]) {
      std::size_t from_row = 0;
      for (std::size_t k = 0; k < p.types[h].size(); ++k)
        if (std::binary_search(row.begin(), row.end(), p.types[h][k])) from_row += counts[h][k];
      if (from_row < 1) return false;
    }
    return true;
  };

  std::function<bool(std::size_t, std::size_t)> assign = [&](std::size_t h, std::size_t k) -> bool {
    if (++nodes > budget) throw BudgetExceeded("SA-empty search exceeded its node budget");
    if (h == holders) return true;
    if (k == p.types[h].size()) return holder_ok(h) && assign(h + 1, 0);
    const std::size_t t = p.types[h][k];
    const bool forced = last_holder[t] == h;
    const std::size_t lo = forced ? remaining[t] : 0;
    const std::size_t hi = remaining[t];
    for (std::size_t c = hi + 1; c-- > lo;) {
      counts[h][k] = c;
      remaining[t] -= c;
      const bool ok = assign(h, k + 1);
      remaining[t] += c;
      if (ok) return true;
    }
    counts[h][k] = 0;
    return false;
  };

  if (!assign(0, 0)) return std::nullopt;
  return counts;
}

}  // namespace detail

/// First SIM + SA-empty allocation found, or nullopt if none exists.
inline std::optional<Allocation> solve_sa_empty(const Instance& inst, const SAEmptyOptions& options = {}) {
  require_valid(inst);
  const std::size_t n = inst.num_agents();
  if (inst.num_items() == 0) return Allocation(n);

  const auto types = compute_types(inst);
  AgentSet candidates;
  for (AgentId i : unique_type_agents(types))
    if (!types.types_of_agent(i).empty()) candidates.push_back(i);

  std::uint64_t nodes = 0;
  const std::size_t u = candidates.size();
  for (std::size_t k = 1; k <= u; ++k) {
    // k-subsets of candidates in lexicographic order.
    std::vector<std::size_t> pick(k);
    for (std::size_t q = 0; q < k; ++q) pick[q] = q;
    for (;;) {
      AgentSet holders;
      for (std::size_t q : pick) holders.push_back(candidates[q]);
      const auto program = detail::build_program(types, candidates, holders, n);
      if (auto counts = detail::solve_program(program, nodes, options.node_budget)) {
        Allocation alloc(n);
        std::vector<std::size_t> next_of_type(types.num_item_types(), 0);
        for (std::size_t h = 0; h < holders.size(); ++h)
          for (std::size_t kk = 0; kk < program.types[h].size(); ++kk) {
            const std::size_t t = program.types[h][kk];
            for (std::size_t c = 0; c < (*counts)[h][kk]; ++c)
              alloc[holders[h]].push_back(types.item_types[t][next_of_type[t]++]);
          }
        if (!is_sim(inst, alloc).fair || !is_sa_empty(inst, alloc).fair)
          throw std::logic_error("solve_sa_empty produced an allocation that fails its own check");
        return alloc;
      }
      std::size_t q = k;
      while (q > 0 && pick[q - 1] == u - k + q - 1) --q;
      if (q == 0) break;
      ++pick[q - 1];
      for (std::size_t r = q; r < k; ++r) pick[r] = pick[r - 1] + 1;
    }
  }
  return std::nullopt;
}

}  // namespace fdsi
