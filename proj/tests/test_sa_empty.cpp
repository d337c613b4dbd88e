#include <gtest/gtest.h>

#include <random>

#include "fdsi/fdsi.hpp"
#include "oracles.hpp"

using namespace fdsi;

namespace {

// Instance with at most `max_types` item types: each item draws one of a few
// random maximizer sets, maximizers get impact 3 and the rest less.
Instance typed_instance(std::uint64_t seed, std::size_t max_types) {
  std::mt19937_64 rng(seed);
  const std::size_t n = 2 + rng() % 5;
  const std::size_t m = 1 + rng() % 6;
  const std::size_t k = 1 + rng() % max_types;
  std::vector<std::vector<bool>> sets;
  for (std::size_t t = 0; t < k; ++t) {
    std::vector<bool> s(n, false);
    s[rng() % n] = true;
    for (std::size_t i = 0; i < n; ++i)
      if (rng() % 3 == 0) s[i] = true;
    sets.push_back(s);
  }
  std::vector<std::vector<Value>> v(n, std::vector<Value>(m, 1));
  std::vector<std::vector<Value>> s(n, std::vector<Value>(m, 0));
  for (std::size_t g = 0; g < m; ++g) {
    const auto& set = sets[rng() % k];
    for (std::size_t i = 0; i < n; ++i) s[i][g] = set[i] ? 3 : static_cast<Value>(rng() % 3);
  }
  return Instance::make(v, s);
}

}  // namespace

TEST(SaEmpty, UniqueTypeAgents) {
  const Instance inst = Instance::make(std::vector<std::vector<Value>>(3, std::vector<Value>(2, 1)),
                                       {{1, 0}, {1, 0}, {0, 1}});
  const TypePartition types = compute_types(inst);
  EXPECT_EQ(unique_type_agents(types), (AgentSet{2}));
}

TEST(SaEmpty, TwinMaximizersBlockEverything) {
  // Both agents maximize the only item: whoever holds it is matched.
  const Instance inst = Instance::make({{1}, {1}}, {{2}, {2}});
  EXPECT_FALSE(solve_sa_empty(inst).has_value());
  EXPECT_FALSE(brute_force_solve(inst, Notion::sa_empty()).has_value());
}

TEST(SaEmpty, NeedsStrictDominationOverEveryOtherAgent) {
  // Agent 0 maximizes both items, agent 1 ties on item 0 only. Agent 0 must
  // hold item 1 to beat agent 1 strictly.
  const Instance inst = Instance::make({{1, 1}, {1, 1}}, {{2, 2}, {2, 1}});
  const auto a = solve_sa_empty(inst);
  ASSERT_TRUE(a.has_value());
  EXPECT_EQ(*a, Allocation::from_owners(2, std::vector<AgentId>{0, 0}));
  EXPECT_TRUE(is_sa_empty(inst, *a).fair);
}

TEST(SaEmpty, EmptyItemSet) {
  const Instance inst = Instance::make({{}, {}}, {{}, {}});
  const auto a = solve_sa_empty(inst);
  ASSERT_TRUE(a.has_value());
  EXPECT_EQ(a->num_assigned(), 0u);
}

TEST(SaEmpty, AgreesWithBruteForceAndOracle) {
  std::size_t yes = 0;
  for (std::uint64_t seed = 0; seed < 250; ++seed) {
    const Instance inst = typed_instance(seed, 4);
    const auto solved = solve_sa_empty(inst);
    const auto brute = brute_force_solve(inst, Notion::sa_empty());
    ASSERT_EQ(solved.has_value(), brute.has_value()) << "seed " << seed;
    const bool want = oracle::exists_sim(inst, [&](const Allocation& a) { return oracle::sa_empty(inst, a); });
    ASSERT_EQ(brute.has_value(), want) << "seed " << seed;
    if (solved) {
      ++yes;
      ASSERT_TRUE(is_sim(inst, *solved).fair);
      ASSERT_TRUE(oracle::sa_empty(inst, *solved));
    }
  }
  EXPECT_GT(yes, 20u);
  EXPECT_LT(yes, 230u);
}

TEST(SaEmpty, SameTypeAgentsHoldNothingInAnySolution) {
  for (std::uint64_t seed = 0; seed < 150; ++seed) {
    const Instance inst = typed_instance(seed, 4);
    const TypePartition types = compute_types(inst);
    auto it = enumerate_sim_allocations(inst);
    while (auto a = it.next()) {
      if (!is_sa_empty(inst, *a).fair) continue;
      for (const auto& cls : types.agent_types) {
        if (cls.size() < 2) continue;
        for (AgentId i : cls) ASSERT_TRUE((*a)[i].empty()) << "seed " << seed;
      }
    }
  }
}

TEST(SaEmpty, NodeBudget) {
  const Instance inst = Instance::make({{1, 1}, {1, 1}}, {{2, 2}, {2, 1}});
  SAEmptyOptions tiny;
  tiny.node_budget = 0;
  EXPECT_THROW(solve_sa_empty(inst, tiny), BudgetExceeded);
}
