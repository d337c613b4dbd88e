#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <thread>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "fdsi/fairness.hpp"
#include "fdsi/instance.hpp"
#include "fdsi/notion.hpp"

namespace fdsi {

// A vertex of the layered search graph. After `layer` items have been
// placed, x[a*n+b] = v_a(A_b) and y[a*n+b] is the value, as seen by a, of the
// item tracked for removal from A_b. Bit a*n+b of `flags` records that A_b
// holds an item on which b out-impacts a.
struct SearchState {
  std::size_t layer = 0;
  std::vector<Value> x;
  std::vector<Value> y;
  std::uint64_t flags = 0;

  static SearchState initial(std::size_t num_agents) {
    return {0, std::vector<Value>(num_agents * num_agents, 0), std::vector<Value>(num_agents * num_agents, 0), 0};
  }

  bool flag(std::size_t a, std::size_t b, std::size_t n) const { return (flags >> (a * n + b)) & 1U; }

  friend bool operator==(const SearchState&, const SearchState&) = default;
};

struct SearchStateHash {
  std::size_t operator()(const SearchState& s) const noexcept {
    std::uint64_t h = 0xcbf29ce484222325ULL ^ s.layer;
    auto mix = [&](std::uint64_t v) {
      h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    };
    for (Value v : s.x) mix(static_cast<std::uint64_t>(v));
    for (Value v : s.y) mix(static_cast<std::uint64_t>(v) * 0x100000001b3ULL);
    mix(s.flags);
    return static_cast<std::size_t>(h);
  }
};

enum class SearchStrategy {
  BreadthFirst,  // layer by layer with per-layer deduplication
  DepthFirst,    // memoized depth-first; same answers, often fewer states on yes-instances
};

struct SearchOptions {
  std::uint64_t state_budget = 10'000'000;
  unsigned threads = 1;
  SearchStrategy strategy = SearchStrategy::BreadthFirst;
};

struct SearchStats {
  std::uint64_t states = 0;
  std::vector<std::size_t> layer_sizes;
};

inline constexpr std::size_t kMaxSearchAgents = 8;  // n^2 flag bits fit one word

namespace detail {

inline bool tracks_flags(const Notion& notion, const AwarenessProfile& profile, std::size_t n) {
  if (notion.awareness != Awareness::SA) return false;
  for (AgentId a = 0; a < n; ++a)
    if (profile.is_aware(a)) return true;
  return false;
}

inline void require_searchable(const Instance& inst, const Notion& notion) {
  require_valid(inst);
  require_goods(inst);
  if (notion.base == Base::SAEmpty)
    throw UnsupportedNotion("exact search does not handle SA-empty; use the SA-empty solver");
  if (notion.awareness == Awareness::AlphaSA || notion.awareness == Awareness::WSA)
    throw UnsupportedNotion(notion.name() + " depends on bundle impact sums; use brute force");
  if (is_weighted(notion.base) && !inst.has_weights())
    throw ValidationError("notion " + notion.name() + " requires agent weights");
  if (inst.num_agents() > kMaxSearchAgents)
    throw UnsupportedNotion("exact search supports at most " + std::to_string(kMaxSearchAgents) + " agents");
}

// Successors of `state` when `item` goes to agent c, appended to `out`.
inline void expand_assignment(const Instance& inst, const SearchState& state, ItemId item, AgentId c,
                              Base base, bool with_flags, std::vector<std::pair<SearchState, AgentId>>& out) {
  const std::size_t n = inst.num_agents();
  SearchState next = state;
  next.layer = state.layer + 1;
  for (AgentId a = 0; a < n; ++a) next.x[a * n + c] += inst.valuations[a][item];
  if (with_flags)
    for (AgentId a = 0; a < n; ++a)
      if (inst.impacts[c][item] > inst.impacts[a][item]) next.flags |= std::uint64_t{1} << (a * n + c);

  auto push_unique = [&](SearchState s) {
    for (std::size_t k = out.size(); k-- > 0 && out[k].second == c;)
      if (out[k].first == s) return;
    out.emplace_back(std::move(s), c);
  };

  switch (base) {
    case Base::EF:
      out.emplace_back(std::move(next), c);
      return;
    case Base::EF1:
    case Base::wEF1:
    case Base::tEF1:
      for (AgentId a = 0; a < n; ++a) {
        Value& y = next.y[a * n + c];
        y = std::max(y, inst.valuations[a][item]);
      }
      out.emplace_back(std::move(next), c);
      return;
    case Base::sEF1:
    case Base::swEF1: {
      // Either this item becomes the universal removal item of A_c or not.
      SearchState chosen = next;
      for (AgentId a = 0; a < n; ++a) chosen.y[a * n + c] = inst.valuations[a][item];
      push_unique(std::move(next));
      push_unique(std::move(chosen));
      return;
    }
    case Base::EFL: {
      // Each observer independently keeps its candidate or adopts this item.
      for (std::uint32_t mask = 0; mask < (1U << n); ++mask) {
        SearchState branch = next;
        for (AgentId a = 0; a < n; ++a)
          if ((mask >> a) & 1U) branch.y[a * n + c] = inst.valuations[a][item];
        push_unique(std::move(branch));
      }
      return;
    }
    case Base::SAEmpty:
      break;
  }
  throw UnsupportedNotion("exact search: unsupported base " + to_string(base));
}

}  // namespace detail

/// Successor vertices for placing `item` (which must be the state's layer),
/// one group per impact maximizer of the item in index order.
inline std::vector<std::pair<SearchState, AgentId>> successor_states(const Instance& inst,
                                                                     const SearchState& state, ItemId item,
                                                                     const Notion& notion,
                                                                     const AwarenessProfile& profile) {
  if (state.layer != item) throw std::invalid_argument("successor_states: item does not match layer");
  std::vector<std::pair<SearchState, AgentId>> out;
  const bool with_flags = detail::tracks_flags(notion, profile, inst.num_agents());
  for (AgentId c : impact_maximizers(inst, item))
    detail::expand_assignment(inst, state, item, c, notion.base, with_flags, out);
  return out;
}

inline std::vector<std::pair<SearchState, AgentId>> successor_states(const Instance& inst,
                                                                     const SearchState& state, ItemId item,
                                                                     const Notion& notion) {
  return successor_states(inst, state, item, notion, AwarenessProfile::from(inst));
}

/// Sink test on a final-layer state: every ordered pair satisfies the
/// notion's inequality, or the observer is aware and its flag is set.
inline bool accepting_state(const SearchState& state, const Notion& notion, std::span<const Value> weights,
                            const AwarenessProfile& profile) {
  const std::size_t n = weights.size();
  const bool with_flags = notion.awareness == Awareness::SA;
  using Wide = __int128;
  for (AgentId a = 0; a < n; ++a)
    for (AgentId b = 0; b < n; ++b) {
      if (a == b) continue;
      if (with_flags && profile.is_aware(a) && state.flag(a, b, n)) continue;
      const Value own = state.x[a * n + a];
      const Value other = state.x[a * n + b];
      const Value y = state.y[a * n + b];
      bool ok = false;
      switch (notion.base) {
        case Base::EF: ok = own >= other; break;
        case Base::EF1:
        case Base::sEF1: ok = own >= other - y; break;
        case Base::wEF1:
        case Base::swEF1:
          ok = static_cast<Wide>(own) * weights[b] >= static_cast<Wide>(other - y) * weights[a];
          break;
        case Base::tEF1: ok = own + y >= other - y; break;
        case Base::EFL: ok = (own >= other - y && y <= own) || own >= other || other == y; break;
        case Base::SAEmpty: throw UnsupportedNotion("accepting_state: SA-empty");
      }
      if (!ok) return false;
    }
  return true;
}

namespace detail {

struct Link {
  std::uint32_t parent;
  AgentId assignee;
};

inline Allocation reconstruct(const std::vector<std::vector<Link>>& links, std::size_t num_agents,
                              std::size_t final_index) {
  const std::size_t m = links.size();
  std::vector<AgentId> owners(m);
  std::size_t index = final_index;
  for (std::size_t layer = m; layer-- > 0;) {
    owners[layer] = links[layer][index].assignee;
    index = links[layer][index].parent;
  }
  return Allocation::from_owners(num_agents, owners);
}

inline bool verified(const Instance& inst, const Allocation& alloc, const Notion& notion,
                     const AwarenessProfile& profile) {
  return is_sim(inst, alloc).fair && check(inst, alloc, notion, profile).fair;
}

inline std::optional<Allocation> breadth_first(const Instance& inst, const Notion& notion,
                                               const AwarenessProfile& profile, const SearchOptions& options,
                                               SearchStats& stats) {
  const std::size_t n = inst.num_agents();
  const std::size_t m = inst.num_items();
  const bool with_flags = tracks_flags(notion, profile, n);
  const auto maximizers = maximizer_table(inst);
  std::vector<Value> weights(n);
  for (AgentId i = 0; i < n; ++i) weights[i] = inst.weight(i);

  std::vector<SearchState> frontier{SearchState::initial(n)};
  std::vector<std::vector<Link>> links(m);
  stats.states = 1;
  stats.layer_sizes = {1};

  using Successors = std::vector<std::pair<SearchState, AgentId>>;
  auto expand = [&](const SearchState& s, ItemId item, Successors& out) {
    for (AgentId c : maximizers[item]) expand_assignment(inst, s, item, c, notion.base, with_flags, out);
  };

  for (ItemId item = 0; item < m; ++item) {
    // Successor generation is pure; chunks are merged in frontier order so the
    // result does not depend on the thread count.
    const unsigned threads = std::max(1U, std::min<unsigned>(options.threads, frontier.size()));
    std::vector<std::vector<Successors>> chunks(threads);
    auto work = [&](unsigned t) {
      const std::size_t lo = frontier.size() * t / threads;
      const std::size_t hi = frontier.size() * (t + 1) / threads;
      chunks[t].resize(hi - lo);
      for (std::size_t k = lo; k < hi; ++k) expand(frontier[k], item, chunks[t][k - lo]);
    };
    if (threads == 1) {
      work(0);
    } else {
      std::vector<std::thread> pool;
      for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t);
      for (auto& th : pool) th.join();
    }

    std::vector<SearchState> next;
    std::unordered_map<SearchState, std::uint32_t, SearchStateHash> index;
    std::size_t parent = 0;
    for (auto& chunk : chunks)
      for (auto& successors : chunk) {
        for (auto& [state, assignee] : successors) {
          auto [it, inserted] = index.try_emplace(state, static_cast<std::uint32_t>(next.size()));
          if (!inserted) continue;
          links[item].push_back({static_cast<std::uint32_t>(parent), assignee});
          next.push_back(std::move(state));
          if (++stats.states > options.state_budget)
            throw BudgetExceeded("exact search exceeded the state budget of " +
                                 std::to_string(options.state_budget));
        }
        ++parent;
      }
    frontier = std::move(next);
    stats.layer_sizes.push_back(frontier.size());
  }

  for (std::size_t k = 0; k < frontier.size(); ++k) {
    if (!accepting_state(frontier[k], notion, weights, profile)) continue;
    Allocation alloc = m == 0 ? Allocation(n) : reconstruct(links, n, k);
    if (verified(inst, alloc, notion, profile)) return alloc;
  }
  return std::nullopt;
}

inline std::optional<Allocation> depth_first(const Instance& inst, const Notion& notion,
                                             const AwarenessProfile& profile, const SearchOptions& options,
                                             SearchStats& stats) {
  const std::size_t n = inst.num_agents();
  const std::size_t m = inst.num_items();
  const bool with_flags = tracks_flags(notion, profile, n);
  const auto maximizers = maximizer_table(inst);
  std::vector<Value> weights(n);
  for (AgentId i = 0; i < n; ++i) weights[i] = inst.weight(i);

  std::unordered_set<SearchState, SearchStateHash> dead;
  std::vector<AgentId> owners(m);
  stats.states = 0;
  stats.layer_sizes.assign(m + 1, 0);

  std::function<bool(const SearchState&)> visit = [&](const SearchState& s) -> bool {
    if (++stats.states > options.state_budget)
      throw BudgetExceeded("exact search exceeded the state budget of " + std::to_string(options.state_budget));
    ++stats.layer_sizes[s.layer];
    if (s.layer == m) {
      return accepting_state(s, notion, weights, profile) &&
             verified(inst, Allocation::from_owners(n, owners), notion, profile);
    }
    std::vector<std::pair<SearchState, AgentId>> successors;
    for (AgentId c : maximizers[s.layer]) expand_assignment(inst, s, s.layer, c, notion.base, with_flags, successors);
    for (auto& [next, assignee] : successors) {
      if (dead.contains(next)) continue;
      owners[s.layer] = assignee;
      if (visit(next)) return true;
      dead.insert(std::move(next));
    }
    return false;
  };

  if (visit(SearchState::initial(n))) return Allocation::from_owners(n, owners);
  return std::nullopt;
}

}  // namespace detail

/// Decides whether a SIM allocation fair under `notion` exists by searching
/// the layered graph of partial-allocation summaries, one layer per item in
/// input order. Handles the seven envy notions, plain or with SA observers
/// selected by `profile`. Returned allocations are re-checked before they are
/// returned; exceeding the state budget throws BudgetExceeded.
inline std::optional<Allocation> exact_solve(const Instance& inst, const Notion& notion,
                                             const AwarenessProfile& profile, const SearchOptions& options = {},
                                             SearchStats* stats = nullptr) {
  detail::require_searchable(inst, notion);
  SearchStats local;
  SearchStats& out = stats ? *stats : local;
  if (options.strategy == SearchStrategy::DepthFirst) return detail::depth_first(inst, notion, profile, options, out);
  return detail::breadth_first(inst, notion, profile, options, out);
}

inline std::optional<Allocation> exact_solve(const Instance& inst, const Notion& notion,
                                             const SearchOptions& options = {}, SearchStats* stats = nullptr) {
  return exact_solve(inst, notion, AwarenessProfile::from(inst), options, stats);
}

}  // namespace fdsi
