#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "fdsi/fairness.hpp"
#include "fdsi/instance.hpp"

namespace fdsi {

inline constexpr std::uint64_t kDefaultBruteForceCap = 10'000'000;

/// Walks every allocation that gives item g one of choices[g], in
/// lexicographic order of the owner vector (last item varies fastest).
class AllocationEnumerator {
 public:
  explicit AllocationEnumerator(std::size_t num_agents, std::vector<AgentSet> choices)
      : num_agents_(num_agents), choices_(std::move(choices)), digits_(choices_.size(), 0) {
    for (const auto& c : choices_)
      if (c.empty()) exhausted_ = true;
  }

  // Allocations assigning each item to one of its impact maximizers.
  static AllocationEnumerator sim(const Instance& inst) {
    return AllocationEnumerator(inst.num_agents(), maximizer_table(inst));
  }

  // All n^m complete allocations.
  static AllocationEnumerator all(const Instance& inst) {
    AgentSet everyone;
    for (AgentId i = 0; i < inst.num_agents(); ++i) everyone.push_back(i);
    return AllocationEnumerator(inst.num_agents(), std::vector<AgentSet>(inst.num_items(), everyone));
  }

  // Number of allocations, saturating at uint64 max.
  std::uint64_t count() const {
    std::uint64_t total = 1;
    for (const auto& c : choices_) {
      if (c.empty()) return 0;
      if (total > std::numeric_limits<std::uint64_t>::max() / c.size())
        return std::numeric_limits<std::uint64_t>::max();
      total *= c.size();
    }
    return total;
  }

  std::optional<Allocation> next() {
    if (exhausted_) return std::nullopt;
    Allocation current(num_agents_);
    for (ItemId g = 0; g < choices_.size(); ++g) current[choices_[g][digits_[g]]].push_back(g);
    advance();
    return current;
  }

 private:
  void advance() {
    for (std::size_t k = digits_.size(); k-- > 0;) {
      if (++digits_[k] < choices_[k].size()) return;
      digits_[k] = 0;
    }
    exhausted_ = true;
  }

  std::size_t num_agents_;
  std::vector<AgentSet> choices_;
  std::vector<std::size_t> digits_;
  bool exhausted_ = false;
};

inline AllocationEnumerator enumerate_sim_allocations(const Instance& inst) {
  require_valid(inst);
  return AllocationEnumerator::sim(inst);
}

namespace detail {

inline AllocationEnumerator bounded_enumerator(const Instance& inst, bool require_sim, std::uint64_t cap) {
  require_valid(inst);
  auto it = require_sim ? AllocationEnumerator::sim(inst) : AllocationEnumerator::all(inst);
  if (it.count() > cap)
    throw BudgetExceeded("brute force would scan " + std::to_string(it.count()) +
                         " allocations, above the cap of " + std::to_string(cap));
  return it;
}

}  // namespace detail

/// Ground-truth oracle: first allocation (in enumeration order) passing the
/// notion. Scans SIM allocations, or all allocations when require_sim is off.
inline std::optional<Allocation> brute_force_solve(const Instance& inst, const Notion& notion,
                                                   const AwarenessProfile& profile, bool require_sim = true,
                                                   std::uint64_t cap = kDefaultBruteForceCap) {
  auto it = detail::bounded_enumerator(inst, require_sim, cap);
  while (auto alloc = it.next())
    if (check(inst, *alloc, notion, profile).fair) return alloc;
  return std::nullopt;
}

inline std::optional<Allocation> brute_force_solve(const Instance& inst, const Notion& notion,
                                                   bool require_sim = true,
                                                   std::uint64_t cap = kDefaultBruteForceCap) {
  return brute_force_solve(inst, notion, AwarenessProfile::from(inst), require_sim, cap);
}

/// Number of allocations passing the notion; every enumerated allocation
/// counts when notion is empty.
inline std::uint64_t brute_force_count(const Instance& inst, const std::optional<Notion>& notion,
                                       const AwarenessProfile& profile, bool require_sim = true,
                                       std::uint64_t cap = kDefaultBruteForceCap) {
  auto it = detail::bounded_enumerator(inst, require_sim, cap);
  if (!notion) return it.count();
  std::uint64_t count = 0;
  while (auto alloc = it.next())
    if (check(inst, *alloc, *notion, profile).fair) ++count;
  return count;
}

}  // namespace fdsi
