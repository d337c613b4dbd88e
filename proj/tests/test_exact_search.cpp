#include <gtest/gtest.h>

#include <random>

#include "fdsi/fdsi.hpp"
#include "oracles.hpp"

using namespace fdsi;

namespace {

std::vector<Notion> envy_notions(bool with_sa) {
  std::vector<Notion> out;
  for (Base b : kEnvyNotions) {
    out.push_back(Notion::plain(b));
    if (with_sa) out.push_back(Notion::sa(b));
  }
  return out;
}

AwarenessProfile random_profile(std::size_t n, std::mt19937_64& rng) {
  AwarenessProfile p;
  for (std::size_t i = 0; i < n; ++i) p.aware.push_back((rng() & 1) != 0);
  return p;
}

}  // namespace

TEST(ExactSearch, AgreesWithBruteForce) {
  std::mt19937_64 rng(99);
  for (std::uint64_t seed = 0; seed < 120; ++seed) {
    const Instance inst = gen_random(2 + seed % 2, 1 + seed % 6, 5, 3, 3, seed);
    const AwarenessProfile profile = random_profile(inst.num_agents(), rng);
    for (const Notion& notion : envy_notions(true)) {
      const auto exact = exact_solve(inst, notion, profile);
      const auto brute = brute_force_solve(inst, notion, profile);
      ASSERT_EQ(exact.has_value(), brute.has_value()) << notion.name() << " seed " << seed;
      if (exact) {
        ASSERT_TRUE(is_sim(inst, *exact).fair);
        ASSERT_TRUE(check(inst, *exact, notion, profile).fair);
      }
    }
  }
}

TEST(ExactSearch, BruteForceMatchesLiteralOracle) {
  // The brute-force solver is itself checked against the literal definitions.
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const Instance inst = gen_random(2 + seed % 2, 1 + seed % 5, 4, 2, 2, seed);
    oracle::Mode mode;
    mode.aware.assign(inst.num_agents(), true);
    for (Base b : kEnvyNotions) {
      const bool want = oracle::exists_sim(inst, [&](const Allocation& a) { return oracle::fair(inst, a, b, mode); });
      ASSERT_EQ(brute_force_solve(inst, Notion::plain(b)).has_value(), want) << to_string(b) << " seed " << seed;
    }
  }
}

TEST(ExactSearch, StrategiesAndThreadCountsAgree) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const Instance inst = gen_random(3, 6, 5, 2, 2, seed);
    for (const Notion& notion : envy_notions(true)) {
      SearchOptions bfs1;
      SearchOptions bfs4;
      bfs4.threads = 4;
      SearchOptions dfs;
      dfs.strategy = SearchStrategy::DepthFirst;
      const auto a = exact_solve(inst, notion, bfs1);
      const auto b = exact_solve(inst, notion, bfs4);
      const auto c = exact_solve(inst, notion, dfs);
      ASSERT_EQ(a, b) << "thread count changed the answer, seed " << seed;
      ASSERT_EQ(a.has_value(), c.has_value()) << notion.name() << " seed " << seed;
      if (c) ASSERT_TRUE(check(inst, *c, notion).fair);
    }
  }
}

TEST(ExactSearch, StatsCountLayers) {
  const Instance inst = gen_random(2, 4, 5, 0, 1, 3);  // all impacts 0: everyone maximizes everything
  SearchStats stats;
  ASSERT_TRUE(exact_solve(inst, Notion::plain(Base::EF1), {}, &stats).has_value());
  EXPECT_GT(stats.states, 0u);
  EXPECT_LE(stats.layer_sizes.size(), inst.num_items() + 1);
}

TEST(ExactSearch, BudgetIsEnforced) {
  const Instance inst = gen_random(3, 8, 9, 0, 1, 11);
  SearchOptions tiny;
  tiny.state_budget = 5;
  EXPECT_THROW(exact_solve(inst, Notion::plain(Base::EF), tiny), BudgetExceeded);
  tiny.strategy = SearchStrategy::DepthFirst;
  EXPECT_THROW(exact_solve(inst, Notion::plain(Base::EF), tiny), BudgetExceeded);
}

TEST(ExactSearch, UnsupportedNotionsAreRejected) {
  const Instance inst = gen_random(2, 3, 5, 2, 1, 0);
  EXPECT_THROW(exact_solve(inst, Notion::wsa(Base::EF1)), UnsupportedNotion);
  EXPECT_THROW(exact_solve(inst, Notion::alpha_sa(Base::EF1, Rational(1, 2))), UnsupportedNotion);
  EXPECT_THROW(exact_solve(inst, Notion::sa_empty()), UnsupportedNotion);
  EXPECT_THROW(exact_solve(gen_random(9, 2, 1, 1, 1, 0), Notion::plain(Base::EF1)), UnsupportedNotion);
  EXPECT_THROW(exact_solve(canned("chores-roundrobin").instance, Notion::plain(Base::EF1)), GoodsOnlyError);
}

TEST(ExactSearch, NonExistenceGoldens) {
  EXPECT_FALSE(exact_solve(canned("bill-joe").instance, Notion::plain(Base::EF1)).has_value());
  EXPECT_FALSE(exact_solve(canned("bill-joe").instance, Notion::sa(Base::EF1)).has_value());
  EXPECT_FALSE(exact_solve(canned("unaware-nonexistence").instance, Notion::sa(Base::EF1)).has_value());
  EXPECT_FALSE(brute_force_solve(canned("alpha-nonexistence").instance,
                                 Notion::alpha_sa(Base::EF1, Rational(1, 2)))
                   .has_value());
  EXPECT_FALSE(brute_force_solve(canned("wsa-nonexistence").instance, Notion::wsa(Base::EF1)).has_value());
  EXPECT_TRUE(brute_force_solve(canned("wsa-nonexistence").instance, Notion::sa(Base::EF1)).has_value());
}

TEST(BruteForce, CountsAndCap) {
  // Unique maximizer per item: exactly one SIM allocation.
  const Instance forced = Instance::make({{1, 1}, {1, 1}}, {{2, 0}, {0, 2}});
  EXPECT_EQ(brute_force_count(forced, std::nullopt, AwarenessProfile::from(forced)), 1u);
  // Three items co-maximized by two agents: 2^3 SIM allocations.
  const Instance open = Instance::make({{1, 1, 1}, {1, 1, 1}}, {{1, 1, 1}, {1, 1, 1}});
  EXPECT_EQ(brute_force_count(open, std::nullopt, AwarenessProfile::from(open)), 8u);
  EXPECT_EQ(brute_force_count(forced, std::nullopt, AwarenessProfile::from(forced), false), 4u);
  EXPECT_THROW(brute_force_count(open, std::nullopt, AwarenessProfile::from(open), true, 4), BudgetExceeded);
}
