#pragma once

#include <algorithm>
#include <vector>

#include "fdsi/instance.hpp"
#include "fdsi/notion.hpp"

namespace fdsi {

namespace detail {

using Wide = __int128;

// value(a, b) = v_a(A_b), impact(a, b) = s_a(A_b) for every ordered pair.
class BundleTable {
 public:
  BundleTable(const Instance& inst, const Allocation& alloc)
      : n_(inst.num_agents()), value_(n_ * n_, 0), impact_(n_ * n_, 0) {
    for (AgentId b = 0; b < n_; ++b)
      for (ItemId g : alloc[b])
        for (AgentId a = 0; a < n_; ++a) {
          value_[a * n_ + b] += inst.valuations[a][g];
          impact_[a * n_ + b] += inst.impacts[a][g];
        }
  }

  Value value(AgentId a, AgentId b) const { return value_[a * n_ + b]; }
  Value impact(AgentId a, AgentId b) const { return impact_[a * n_ + b]; }

 private:
  std::size_t n_;
  std::vector<Value> value_;
  std::vector<Value> impact_;
};

inline Value best_item_value(const Instance& inst, AgentId i, const ItemSet& bundle) {
  Value best = 0;
  for (ItemId g : bundle) best = std::max(best, inst.valuations[i][g]);
  return best;
}

// own / w_i >= other / w_j, cross-multiplied.
inline bool weighted_geq(Value own, Value w_i, Value other, Value w_j) {
  return static_cast<Wide>(own) * w_j >= static_cast<Wide>(other) * w_i;
}

inline bool pair_fair(const Instance& inst, const Allocation& alloc, const BundleTable& table, AgentId i,
                      AgentId j, Base base) {
  if (i == j) return true;
  const Value own = table.value(i, i);
  const Value other = table.value(i, j);
  const ItemSet& bundle = alloc[j];
  switch (base) {
    case Base::EF:
      return own >= other;
    case Base::EF1:
    case Base::sEF1:
      return own >= other - best_item_value(inst, i, bundle);
    case Base::wEF1:
    case Base::swEF1:
      return weighted_geq(own, inst.weight(i), other - best_item_value(inst, i, bundle), inst.weight(j));
    case Base::EFL: {
      std::size_t positive = 0;
      for (ItemId g : bundle) positive += inst.valuations[i][g] > 0 ? 1 : 0;
      if (positive <= 1) return true;
      return std::any_of(bundle.begin(), bundle.end(), [&](ItemId g) {
        const Value vg = inst.valuations[i][g];
        return own >= other - vg && own >= vg;
      });
    }
    case Base::tEF1:
      if (own >= other) return true;
      return std::any_of(bundle.begin(), bundle.end(), [&](ItemId g) {
        const Value vg = inst.valuations[i][g];
        return own + vg >= other - vg;
      });
    case Base::SAEmpty:
      break;
  }
  throw std::invalid_argument("pair_fair: unsupported base " + to_string(base));
}

// Index of the first observer (not exempt, != j) violating the target
// condition when g is the universal removed item; npos when none.
inline std::size_t first_violator(const Instance& inst, const BundleTable& table, AgentId j, ItemId g,
                                  bool weighted, const std::vector<bool>& exempt) {
  for (AgentId i = 0; i < inst.num_agents(); ++i) {
    if (i == j || exempt[i]) continue;
    const Value rest = table.value(i, j) - inst.valuations[i][g];
    const bool ok = weighted ? weighted_geq(table.value(i, i), inst.weight(i), rest, inst.weight(j))
                             : table.value(i, i) >= rest;
    if (!ok) return i;
  }
  return static_cast<std::size_t>(-1);
}

inline bool override_holds(const Instance&, const BundleTable& table, AgentId i, AgentId j,
                           const Notion& notion, const AwarenessProfile& profile) {
  if (notion.awareness == Awareness::None || !profile.is_aware(i)) return false;
  const Value mine = table.impact(i, j);
  const Value theirs = table.impact(j, j);
  switch (notion.awareness) {
    case Awareness::SA:
      return mine < theirs;
    case Awareness::AlphaSA:
      return static_cast<Wide>(mine) * notion.alpha.denominator() <
             static_cast<Wide>(notion.alpha.numerator()) * theirs;
    case Awareness::WSA:
      return static_cast<Wide>(table.value(i, j)) * mine <= static_cast<Wide>(table.value(i, i)) * theirs;
    case Awareness::None:
      break;
  }
  return false;
}

inline void require_checkable(const Instance& inst, const Allocation& alloc, const Notion& notion) {
  require_valid(inst);
  require_goods(inst);
  notion.validate();
  if (is_weighted(notion.base) && !inst.has_weights())
    throw ValidationError("notion " + notion.name() + " requires agent weights");
  require_valid(inst, alloc, /*require_complete=*/false);
}

}  // namespace detail

/// SIM holds iff every item sits with one of its impact maximizers, which by
/// additivity is the same as attaining the optimal total impact. The witness
/// names the first misplaced item and its lowest-index maximizer.
inline Verdict is_sim(const Instance& inst, const Allocation& alloc) {
  require_valid(inst);
  require_valid(inst, alloc, /*require_complete=*/true);
  std::vector<AgentId> owner(inst.num_items());
  for (AgentId i = 0; i < alloc.num_agents(); ++i)
    for (ItemId g : alloc[i]) owner[g] = i;
  for (ItemId g = 0; g < inst.num_items(); ++g) {
    const Value best = max_impact(inst, g);
    if (inst.impacts[owner[g]][g] < best) {
      Witness w;
      w.condition = "sim";
      w.item = g;
      w.target = owner[g];
      w.better_agent = impact_maximizers(inst, g).front();
      return Verdict::fail(std::move(w));
    }
  }
  return Verdict::ok();
}

/// Pairwise criterion of i towards j for base in {EF, EF1, wEF1, EFL, tEF1}.
/// sEF1/swEF1 passed here degrade to their pairwise (EF1/wEF1) form.
inline bool pair_fair(const Instance& inst, const Allocation& alloc, AgentId i, AgentId j, Base base) {
  detail::require_checkable(inst, alloc, Notion::plain(base));
  return detail::pair_fair(inst, alloc, detail::BundleTable(inst, alloc), i, j, base);
}

/// Universal-removal criterion for target j (sEF1 / swEF1): one item of A_j
/// whose removal satisfies every observer not listed in `exempt`.
inline bool target_fair(const Instance& inst, const Allocation& alloc, AgentId j, Base base,
                        const std::vector<bool>& exempt = {}) {
  if (!is_target_based(base)) throw std::invalid_argument("target_fair expects sEF1 or swEF1");
  detail::require_checkable(inst, alloc, Notion::plain(base));
  const detail::BundleTable table(inst, alloc);
  std::vector<bool> skip = exempt;
  skip.resize(inst.num_agents(), false);
  if (alloc[j].empty()) return true;
  const bool weighted = base == Base::swEF1;
  return std::any_of(alloc[j].begin(), alloc[j].end(), [&](ItemId g) {
    return detail::first_violator(inst, table, j, g, weighted, skip) == static_cast<std::size_t>(-1);
  });
}

/// Whether observer i excuses its envy towards j under the notion's
/// awareness mode. Unaware observers never excuse.
inline bool sa_override(const Instance& inst, const Allocation& alloc, AgentId i, AgentId j, const Notion& notion,
                        const AwarenessProfile& profile) {
  require_valid(inst);
  require_valid(inst, alloc, false);
  notion.validate();
  return detail::override_holds(inst, detail::BundleTable(inst, alloc), i, j, notion, profile);
}

inline bool sa_override(const Instance& inst, const Allocation& alloc, AgentId i, AgentId j,
                        const Notion& notion) {
  return sa_override(inst, alloc, i, j, notion, AwarenessProfile::from(inst));
}

/// Every ordered pair (i, j), i != j, with A_j non-empty needs
/// s_i(A_j) < s_j(A_j). Awareness flags play no role here.
inline Verdict is_sa_empty(const Instance& inst, const Allocation& alloc) {
  require_valid(inst);
  require_valid(inst, alloc, false);
  const detail::BundleTable table(inst, alloc);
  for (AgentId i = 0; i < inst.num_agents(); ++i)
    for (AgentId j = 0; j < inst.num_agents(); ++j) {
      if (i == j || alloc[j].empty()) continue;
      if (table.impact(i, j) >= table.impact(j, j)) {
        Witness w;
        w.condition = "sa-empty";
        w.observer = i;
        w.target = j;
        return Verdict::fail(std::move(w));
      }
    }
  return Verdict::ok();
}

/// Full fairness verdict for a (possibly partial) allocation.
///
/// Pair (i, j) passes when the base criterion holds or i's awareness override
/// holds. For sEF1/swEF1 the override exempts observer i from target j's
/// universal-item requirement; targets are scanned in index order and the
/// witness observer is the first one that no candidate item satisfies, or,
/// failing that, the first one violated by the target's first item.
inline Verdict check(const Instance& inst, const Allocation& alloc, const Notion& notion,
                     const AwarenessProfile& profile) {
  if (notion.base == Base::SAEmpty) return is_sa_empty(inst, alloc);
  detail::require_checkable(inst, alloc, notion);
  const detail::BundleTable table(inst, alloc);
  const std::size_t n = inst.num_agents();

  if (!is_target_based(notion.base)) {
    for (AgentId i = 0; i < n; ++i)
      for (AgentId j = 0; j < n; ++j) {
        if (i == j) continue;
        if (detail::pair_fair(inst, alloc, table, i, j, notion.base)) continue;
        if (detail::override_holds(inst, table, i, j, notion, profile)) continue;
        Witness w;
        w.condition = to_string(notion.base);
        w.observer = i;
        w.target = j;
        w.candidates_examined = alloc[j].size();
        return Verdict::fail(std::move(w));
      }
    return Verdict::ok();
  }

  const bool weighted = notion.base == Base::swEF1;
  for (AgentId j = 0; j < n; ++j) {
    if (alloc[j].empty()) continue;
    std::vector<bool> exempt(n, false);
    for (AgentId i = 0; i < n; ++i)
      exempt[i] = i != j && detail::override_holds(inst, table, i, j, notion, profile);
    const bool satisfied = std::any_of(alloc[j].begin(), alloc[j].end(), [&](ItemId g) {
      return detail::first_violator(inst, table, j, g, weighted, exempt) == static_cast<std::size_t>(-1);
    });
    if (satisfied) continue;

    Witness w;
    w.condition = to_string(notion.base);
    w.target = j;
    w.candidates_examined = alloc[j].size();
    for (AgentId i = 0; i < n && !w.observer; ++i) {
      if (i == j || exempt[i]) continue;
      if (!detail::pair_fair(inst, alloc, table, i, j, weighted ? Base::wEF1 : Base::EF1)) w.observer = i;
    }
    if (!w.observer) {
      const ItemSet sorted = [&] {
        ItemSet s = alloc[j];
        std::sort(s.begin(), s.end());
        return s;
      }();
      w.observer = detail::first_violator(inst, table, j, sorted.front(), weighted, exempt);
    }
    return Verdict::fail(std::move(w));
  }
  return Verdict::ok();
}

inline Verdict check(const Instance& inst, const Allocation& alloc, const Notion& notion) {
  return check(inst, alloc, notion, AwarenessProfile::from(inst));
}

}  // namespace fdsi
