#pragma once

#include <functional>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "fdsi/fairness.hpp"
#include "fdsi/instance.hpp"

namespace fdsi {

/// Each item to its lowest-index impact maximizer.
inline Allocation greedy_sim(const Instance& inst) {
  require_valid(inst);
  Allocation alloc(inst.num_agents());
  for (ItemId g = 0; g < inst.num_items(); ++g) alloc[impact_maximizers(inst, g).front()].push_back(g);
  return alloc;
}

namespace detail {

using MaximizerMatrix = std::vector<std::vector<bool>>;  // [agent][item]

inline MaximizerMatrix maximizer_matrix(const Instance& inst) {
  MaximizerMatrix is_max(inst.num_agents(), std::vector<bool>(inst.num_items(), false));
  for (ItemId g = 0; g < inst.num_items(); ++g)
    for (AgentId i : impact_maximizers(inst, g)) is_max[i][g] = true;
  return is_max;
}

// Most valuable remaining item that agent i maximizes; ties to lower index.
inline std::optional<ItemId> best_maximized_item(const Instance& inst, const MaximizerMatrix& is_max,
                                                 const std::vector<bool>& remaining, AgentId i) {
  std::optional<ItemId> best;
  for (ItemId g = 0; g < inst.num_items(); ++g) {
    if (!remaining[g] || !is_max[i][g]) continue;
    if (!best || inst.valuations[i][g] > inst.valuations[i][*best]) best = g;
  }
  return best;
}

}  // namespace detail

// Picks so far (skips included in the literal protocol) and whether the agent
// still maximizes a remaining item.
struct PickingState {
  std::vector<Value> picks;
  std::vector<bool> active;
  std::vector<bool> remaining;
  std::size_t num_remaining = 0;
};

struct PickingTrace {
  Allocation allocation;
  std::vector<std::pair<AgentId, ItemId>> picks;  // in pick order
};

/// Weighted picking sequence restricted to impact-maximized items. The agent
/// minimizing picks/weight (ties by index) takes its most valued maximized
/// item; agents left with nothing to maximize drop out of the rotation.
inline PickingTrace sa_weighted_picking_trace(const Instance& inst) {
  require_valid(inst);
  require_goods(inst);
  const std::size_t n = inst.num_agents();
  const auto is_max = detail::maximizer_matrix(inst);

  PickingState state;
  state.picks.assign(n, 0);
  state.remaining.assign(inst.num_items(), true);
  state.num_remaining = inst.num_items();
  state.active.assign(n, false);

  auto refresh_active = [&] {
    for (AgentId i = 0; i < n; ++i) {
      bool any = false;
      for (ItemId g = 0; g < inst.num_items() && !any; ++g) any = state.remaining[g] && is_max[i][g];
      state.active[i] = any;
    }
  };
  refresh_active();

  PickingTrace trace{Allocation(n), {}};
  while (state.num_remaining > 0) {
    std::optional<AgentId> chosen;
    for (AgentId i = 0; i < n; ++i) {
      if (!state.active[i]) continue;
      // picks_i / w_i < picks_c / w_c
      if (!chosen || static_cast<__int128>(state.picks[i]) * inst.weight(*chosen) <
                         static_cast<__int128>(state.picks[*chosen]) * inst.weight(i))
        chosen = i;
    }
    if (!chosen) throw std::logic_error("picking: items remain but no agent maximizes any of them");
    const ItemId g = *detail::best_maximized_item(inst, is_max, state.remaining, *chosen);
    trace.allocation[*chosen].push_back(g);
    trace.picks.emplace_back(*chosen, g);
    state.remaining[g] = false;
    --state.num_remaining;
    ++state.picks[*chosen];
    refresh_active();
  }
  return trace;
}

inline Allocation sa_weighted_picking(const Instance& inst) { return sa_weighted_picking_trace(inst).allocation; }

/// Arc i -> j iff i SA-envies j: v_i(A_i) < v_i(A_j) and s_i(A_j) >= s_j(A_j).
/// Only agents flagged in `vertices` take part.
struct SAEnvyGraph {
  std::vector<bool> vertices;
  std::vector<std::vector<bool>> arcs;

  std::size_t size() const noexcept { return vertices.size(); }
  bool has_arc(AgentId i, AgentId j) const { return arcs[i][j]; }

  std::size_t num_arcs() const {
    std::size_t count = 0;
    for (const auto& row : arcs)
      for (bool a : row) count += a ? 1 : 0;
    return count;
  }

  bool empty() const {
    for (bool v : vertices)
      if (v) return false;
    return true;
  }

  std::optional<AgentId> lowest_source() const {
    for (AgentId j = 0; j < size(); ++j) {
      if (!vertices[j]) continue;
      bool incoming = false;
      for (AgentId i = 0; i < size() && !incoming; ++i) incoming = arcs[i][j];
      if (!incoming) return j;
    }
    return std::nullopt;
  }
};

inline SAEnvyGraph build_sa_envy_graph(const Instance& inst, const Allocation& alloc,
                                       const std::vector<bool>& active) {
  const std::size_t n = inst.num_agents();
  const detail::BundleTable table(inst, alloc);
  SAEnvyGraph graph{active, std::vector<std::vector<bool>>(n, std::vector<bool>(n, false))};
  graph.vertices.resize(n, false);
  for (AgentId i = 0; i < n; ++i)
    for (AgentId j = 0; j < n; ++j) {
      if (i == j || !graph.vertices[i] || !graph.vertices[j]) continue;
      graph.arcs[i][j] = table.value(i, i) < table.value(i, j) && table.impact(i, j) >= table.impact(j, j);
    }
  return graph;
}

inline SAEnvyGraph build_sa_envy_graph(const Instance& inst, const Allocation& alloc) {
  return build_sa_envy_graph(inst, alloc, std::vector<bool>(inst.num_agents(), true));
}

/// First directed cycle found by DFS from the lowest-index vertex, visiting
/// successors in index order. Returned as c0 -> c1 -> ... -> c0; empty when
/// the graph is acyclic.
inline std::vector<AgentId> find_cycle(const SAEnvyGraph& graph) {
  enum class Color { White, Gray, Black };
  const std::size_t n = graph.size();
  std::vector<Color> color(n, Color::White);
  std::vector<AgentId> stack;
  std::vector<AgentId> cycle;

  std::function<bool(AgentId)> visit = [&](AgentId u) {
    color[u] = Color::Gray;
    stack.push_back(u);
    for (AgentId v = 0; v < n; ++v) {
      if (!graph.arcs[u][v]) continue;
      if (color[v] == Color::Gray) {
        auto it = std::find(stack.begin(), stack.end(), v);
        cycle.assign(it, stack.end());
        return true;
      }
      if (color[v] == Color::White && visit(v)) return true;
    }
    stack.pop_back();
    color[u] = Color::Black;
    return false;
  };

  for (AgentId s = 0; s < n; ++s)
    if (graph.vertices[s] && color[s] == Color::White && visit(s)) return cycle;
  return {};
}

/// Every agent on the cycle takes the bundle of its successor.
inline Allocation rotate_along_cycle(const Allocation& alloc, const std::vector<AgentId>& cycle) {
  Allocation out = alloc;
  for (std::size_t k = 0; k < cycle.size(); ++k) out[cycle[k]] = alloc[cycle[(k + 1) % cycle.size()]];
  return out;
}

/// Rotates bundles along SA-envy cycles among `active` agents until the graph
/// is acyclic. Each rotation strictly lowers the arc count.
inline Allocation eliminate_cycles(const Instance& inst, Allocation alloc, const std::vector<bool>& active) {
  for (;;) {
    const auto cycle = find_cycle(build_sa_envy_graph(inst, alloc, active));
    if (cycle.empty()) return alloc;
    alloc = rotate_along_cycle(alloc, cycle);
  }
}

/// SIM + SA-EFL via source picking on the SA-envy graph. The observer is
/// invoked after every step (pick plus cycle elimination) with the partial
/// allocation.
inline Allocation sa_efl_allocate(const Instance& inst,
                                  const std::function<void(const Allocation&)>& on_step = {}) {
  require_valid(inst);
  require_goods(inst);
  const std::size_t n = inst.num_agents();
  const auto is_max = detail::maximizer_matrix(inst);
  std::vector<bool> in_graph(n, true);
  std::vector<bool> remaining(inst.num_items(), true);
  std::size_t num_remaining = inst.num_items();
  Allocation alloc(n);

  while (num_remaining > 0) {
    const auto graph = build_sa_envy_graph(inst, alloc, in_graph);
    if (graph.empty()) throw std::logic_error("sa_efl_allocate: graph emptied while items remain");
    const auto source = graph.lowest_source();
    if (!source) throw std::logic_error("sa_efl_allocate: SA-envy graph has no source");
    const auto item = detail::best_maximized_item(inst, is_max, remaining, *source);
    if (!item) {
      in_graph[*source] = false;
      continue;
    }
    alloc[*source].push_back(*item);
    remaining[*item] = false;
    --num_remaining;
    alloc = eliminate_cycles(inst, std::move(alloc), in_graph);
    if (on_step) on_step(alloc);
  }
  return alloc;
}

/// Two agents, the first socially unaware and the second aware, with no item
/// uniquely maximized by the second. If the first uniquely maximizes some
/// item everything goes to it; otherwise both maximize every item and a
/// round-robin gives an EF1 split. Returns nullopt when the preconditions fail.
inline std::optional<Allocation> two_agent_mixed_fast_path(const Instance& inst) {
  require_valid(inst);
  require_goods(inst);
  if (inst.num_agents() != 2 || inst.is_aware(0) || !inst.is_aware(1)) return std::nullopt;
  bool first_unique = false;
  for (ItemId g = 0; g < inst.num_items(); ++g) {
    const auto maxs = impact_maximizers(inst, g);
    if (maxs.size() == 1 && maxs.front() == 1) return std::nullopt;
    if (maxs.size() == 1 && maxs.front() == 0) first_unique = true;
  }
  if (first_unique) {
    Allocation alloc(2);
    for (ItemId g = 0; g < inst.num_items(); ++g) alloc[0].push_back(g);
    return alloc;
  }
  Instance equal = inst;
  equal.weights.assign(2, 1);
  return sa_weighted_picking(equal);
}

}  // namespace fdsi
