#pragma once

// Independent reference implementations used as test oracles. They follow
// the textbook definitions literally (remove an item and re-sum, move an item
// and re-sum, enumerate every allocation) and share no code with the library
// beyond the Instance/Allocation containers.

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "fdsi/instance.hpp"
#include "fdsi/notion.hpp"

namespace oracle {

using fdsi::AgentId;
using fdsi::Allocation;
using fdsi::Base;
using fdsi::Instance;
using fdsi::ItemId;
using fdsi::ItemSet;
using fdsi::Value;

inline Value sum_value(const Instance& inst, AgentId i, const ItemSet& items) {
  Value s = 0;
  for (ItemId g : items) s += inst.valuations[i][g];
  return s;
}

inline Value sum_impact(const Instance& inst, AgentId i, const ItemSet& items) {
  Value s = 0;
  for (ItemId g : items) s += inst.impacts[i][g];
  return s;
}

inline ItemSet without(const ItemSet& items, ItemId g) {
  ItemSet out;
  bool removed = false;
  for (ItemId h : items) {
    if (h == g && !removed) {
      removed = true;
      continue;
    }
    out.push_back(h);
  }
  return out;
}

inline ItemSet with(ItemSet items, ItemId g) {
  items.push_back(g);
  return items;
}

// own/w_i >= other/w_j as exact fractions.
inline bool ratio_geq(Value own, Value wi, Value other, Value wj) {
  return static_cast<long double>(own) * wj >= static_cast<long double>(other) * wi;
}

// Plain criterion of observer i towards j for the pairwise notions.
inline bool pairwise_ok(const Instance& inst, const Allocation& a, AgentId i, AgentId j, Base base) {
  const ItemSet& Ai = a[i];
  const ItemSet& Aj = a[j];
  const Value own = sum_value(inst, i, Ai);
  switch (base) {
    case Base::EF:
      return own >= sum_value(inst, i, Aj);
    case Base::EF1:
    case Base::sEF1:
      if (own >= sum_value(inst, i, Aj)) return true;
      for (ItemId g : Aj)
        if (own >= sum_value(inst, i, without(Aj, g))) return true;
      return false;
    case Base::wEF1:
    case Base::swEF1:
      if (ratio_geq(own, inst.weight(i), sum_value(inst, i, Aj), inst.weight(j))) return true;
      for (ItemId g : Aj)
        if (ratio_geq(own, inst.weight(i), sum_value(inst, i, without(Aj, g)), inst.weight(j))) return true;
      return false;
    case Base::EFL: {
      int positive = 0;
      for (ItemId g : Aj) positive += inst.valuations[i][g] > 0;
      if (positive <= 1) return true;
      for (ItemId g : Aj)
        if (own >= sum_value(inst, i, without(Aj, g)) && own >= inst.valuations[i][g]) return true;
      return false;
    }
    case Base::tEF1:
      if (own >= sum_value(inst, i, Aj)) return true;
      for (ItemId g : Aj)
        if (sum_value(inst, i, with(Ai, g)) >= sum_value(inst, i, without(Aj, g))) return true;
      return false;
    default:
      return false;
  }
}

struct Mode {
  fdsi::Awareness awareness = fdsi::Awareness::None;
  Value alpha_p = 1, alpha_q = 1;
  std::vector<bool> aware;  // per observer
};

inline bool excused(const Instance& inst, const Allocation& a, AgentId i, AgentId j, const Mode& mode) {
  if (mode.awareness == fdsi::Awareness::None || !mode.aware[i]) return false;
  const Value si = sum_impact(inst, i, a[j]);
  const Value sj = sum_impact(inst, j, a[j]);
  switch (mode.awareness) {
    case fdsi::Awareness::SA:
      return si < sj;
    case fdsi::Awareness::AlphaSA:
      return static_cast<long double>(si) < static_cast<long double>(mode.alpha_p) * sj / mode.alpha_q;
    case fdsi::Awareness::WSA:
      return static_cast<long double>(sum_value(inst, i, a[j])) * si <=
             static_cast<long double>(sum_value(inst, i, a[i])) * sj;
    default:
      return false;
  }
}

inline bool fair(const Instance& inst, const Allocation& a, Base base, const Mode& mode) {
  const std::size_t n = inst.num_agents();
  if (base == Base::sEF1 || base == Base::swEF1) {
    for (AgentId j = 0; j < n; ++j) {
      std::vector<AgentId> observers;
      for (AgentId i = 0; i < n; ++i)
        if (i != j && !excused(inst, a, i, j, mode)) observers.push_back(i);
      if (a[j].empty()) continue;
      bool some_item = false;
      for (ItemId g : a[j]) {
        bool all = true;
        for (AgentId i : observers) {
          const Value own = sum_value(inst, i, a[i]);
          const Value rest = sum_value(inst, i, without(a[j], g));
          const bool ok = base == Base::sEF1 ? own >= rest : ratio_geq(own, inst.weight(i), rest, inst.weight(j));
          all = all && ok;
        }
        some_item = some_item || all;
      }
      if (!some_item) return false;
    }
    return true;
  }
  for (AgentId i = 0; i < n; ++i)
    for (AgentId j = 0; j < n; ++j)
      if (i != j && !pairwise_ok(inst, a, i, j, base) && !excused(inst, a, i, j, mode)) return false;
  return true;
}

// Every complete allocation, lexicographic in the owner vector.
inline void for_each_allocation(const Instance& inst, const std::function<void(const Allocation&)>& visit) {
  const std::size_t n = inst.num_agents();
  const std::size_t m = inst.num_items();
  std::vector<AgentId> owner(m, 0);
  for (;;) {
    Allocation a(n);
    for (ItemId g = 0; g < m; ++g) a[owner[g]].push_back(g);
    visit(a);
    std::size_t k = m;
    while (k > 0 && ++owner[k - 1] == n) owner[--k] = 0;
    if (k == 0) return;
  }
}

inline Value social_impact(const Instance& inst, const Allocation& a) {
  Value s = 0;
  for (AgentId i = 0; i < a.num_agents(); ++i) s += sum_impact(inst, i, a[i]);
  return s;
}

inline Value best_social_impact(const Instance& inst) {
  Value best = 0;
  for_each_allocation(inst, [&](const Allocation& a) { best = std::max(best, social_impact(inst, a)); });
  return best;
}

// SIM by definition: attains the largest total impact over all allocations.
inline bool is_sim(const Instance& inst, const Allocation& a, Value best) { return social_impact(inst, a) == best; }

// Whether some SIM allocation passes `accept`.
inline bool exists_sim(const Instance& inst, const std::function<bool(const Allocation&)>& accept) {
  const Value best = best_social_impact(inst);
  bool found = false;
  for_each_allocation(inst, [&](const Allocation& a) {
    if (!found && is_sim(inst, a, best) && accept(a)) found = true;
  });
  return found;
}

inline bool sa_empty(const Instance& inst, const Allocation& a) {
  for (AgentId i = 0; i < inst.num_agents(); ++i)
    for (AgentId j = 0; j < inst.num_agents(); ++j)
      if (i != j && !a[j].empty() && sum_impact(inst, i, a[j]) >= sum_impact(inst, j, a[j])) return false;
  return true;
}

}  // namespace oracle
