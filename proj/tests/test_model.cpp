#include <gtest/gtest.h>

#include "fdsi/fdsi.hpp"
#include "oracles.hpp"

using namespace fdsi;

TEST(Rational, NormalizesSignAndTerms) {
  const Rational r(4, -6);
  EXPECT_EQ(r.numerator(), -2);
  EXPECT_EQ(r.denominator(), 3);
  EXPECT_EQ(Rational(0, 5), Rational(0));
  EXPECT_THROW(Rational(1, 0), std::invalid_argument);
}

TEST(Rational, ComparesByCrossMultiplication) {
  EXPECT_LT(Rational(1, 3), Rational(1, 2));
  EXPECT_GT(Rational(2, 3), Rational(3, 5));
  EXPECT_EQ(Rational(2, 4) <=> Rational(1, 2), std::strong_ordering::equal);
  // Products overflow 64 bits; 128-bit comparison keeps them exact.
  const std::int64_t big = 3'000'000'000'000'000'000;
  EXPECT_LT(Rational(big - 1, big), Rational(big, big + 1));
}

TEST(Rational, ParsesFractionsAndIntegers) {
  EXPECT_EQ(Rational::parse("1/2"), Rational(1, 2));
  EXPECT_EQ(Rational::parse("3"), Rational(3));
  EXPECT_EQ(Rational::parse("6/4").to_string(), "3/2");
  EXPECT_THROW(Rational::parse("1/"), std::invalid_argument);
  EXPECT_THROW(Rational::parse("a/2"), std::invalid_argument);
  EXPECT_THROW(Rational::parse("1.5"), std::invalid_argument);
}

TEST(Instance, ValidateReportsShapeAndSignProblems) {
  Instance inst = Instance::make({{1, 2}, {3, 4}}, {{0, 1}, {1, 0}});
  EXPECT_TRUE(validate(inst).empty());

  Instance bad_shape = inst;
  bad_shape.valuations[1].pop_back();
  EXPECT_FALSE(validate(bad_shape).empty());

  Instance negative_impact = inst;
  negative_impact.impacts[0][0] = -1;
  EXPECT_FALSE(validate(negative_impact).empty());

  Instance dup = inst;
  dup.items[1] = dup.items[0];
  EXPECT_FALSE(validate(dup).empty());

  Instance zero_weight = inst;
  zero_weight.weights[0] = 0;
  EXPECT_FALSE(validate(zero_weight).empty());
  EXPECT_THROW(require_valid(zero_weight), ValidationError);
}

TEST(Instance, GoodsDetection) {
  EXPECT_TRUE(Instance::make({{0, 1}}, {{1, 1}}).is_goods());
  const Instance chores = Instance::make({{-1, 1}}, {{1, 1}});
  EXPECT_FALSE(chores.is_goods());
  EXPECT_THROW(require_goods(chores), GoodsOnlyError);
}

TEST(Allocation, ValidationCatchesOverlapUnknownAndIncomplete) {
  const Instance inst = Instance::make({{1, 1, 1}, {1, 1, 1}}, {{1, 1, 1}, {1, 1, 1}});
  Allocation a(2);
  a[0] = {0, 1};
  EXPECT_TRUE(validate_allocation(inst, a, false).empty());
  EXPECT_FALSE(validate_allocation(inst, a, true).empty());
  a[1] = {1, 2};
  EXPECT_FALSE(validate_allocation(inst, a, false).empty());
  a[1] = {7};
  EXPECT_FALSE(validate_allocation(inst, a, false).empty());
  EXPECT_FALSE(validate_allocation(inst, Allocation(3), false).empty());
}

TEST(Allocation, EqualityIgnoresBundleOrder) {
  Allocation a(2), b(2);
  a[0] = {2, 0};
  b[0] = {0, 2};
  EXPECT_EQ(a, b);
  const std::vector<AgentId> owners{1, Allocation::kUnassigned, 0};
  const Allocation c = Allocation::from_owners(2, owners);
  EXPECT_EQ(c[0], (ItemSet{2}));
  EXPECT_EQ(c[1], (ItemSet{0}));
  EXPECT_EQ(c.num_assigned(), 2u);
}

TEST(BundleSums, ValueAndImpact) {
  const Instance inst = Instance::make({{1, 2, 3}, {4, 5, 6}}, {{7, 0, 1}, {0, 2, 2}});
  const ItemSet bundle{0, 2};
  EXPECT_EQ(bundle_value(inst, 0, bundle), 4);
  EXPECT_EQ(bundle_value(inst, 1, bundle), 10);
  EXPECT_EQ(bundle_impact(inst, 0, bundle), 8);
  const ItemSet bogus{5};
  EXPECT_THROW(bundle_value(inst, 0, bogus), ValidationError);
}

TEST(Sim, MaximizersAndOptimum) {
  const Instance inst = Instance::make({{0, 0, 0}, {0, 0, 0}}, {{3, 1, 2}, {3, 4, 0}});
  EXPECT_EQ(impact_maximizers(inst, 0), (AgentSet{0, 1}));
  EXPECT_EQ(impact_maximizers(inst, 1), (AgentSet{1}));
  EXPECT_EQ(optimal_social_impact(inst), 3 + 4 + 2);
  EXPECT_EQ(total_social_impact(inst, Allocation::from_owners(2, std::vector<AgentId>{1, 1, 0})), 9);
}

TEST(Sim, WitnessNamesMisplacedItemAndBetterAgent) {
  const Instance inst = Instance::make({{0, 0}, {0, 0}}, {{1, 0}, {0, 1}});
  EXPECT_TRUE(is_sim(inst, Allocation::from_owners(2, std::vector<AgentId>{0, 1})).fair);
  const Verdict v = is_sim(inst, Allocation::from_owners(2, std::vector<AgentId>{0, 0}));
  ASSERT_FALSE(v.fair);
  EXPECT_EQ(v.witness->item, 1u);
  EXPECT_EQ(v.witness->target, 0u);
  EXPECT_EQ(v.witness->better_agent, 1u);
  Allocation partial(2);
  partial[0] = {0};
  EXPECT_THROW(is_sim(inst, partial), ValidationError);
}

TEST(Sim, AgreesWithExhaustiveOptimumOnRandomInstances) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const Instance inst = gen_random(3, 4, 3, 3, 1, seed);
    const Value best = oracle::best_social_impact(inst);
    ASSERT_EQ(optimal_social_impact(inst), best) << "seed " << seed;
    oracle::for_each_allocation(inst, [&](const Allocation& a) {
      ASSERT_EQ(is_sim(inst, a).fair, oracle::is_sim(inst, a, best)) << "seed " << seed;
    });
  }
}

TEST(Normalize, KeepsMaximizerSetsAndBinarizes) {
  const Instance inst = Instance::make({{1, 1, 1}, {1, 1, 1}}, {{5, 0, 2}, {5, 3, 1}});
  const Instance norm = normalize_impacts(inst);
  EXPECT_EQ(norm.impacts, (std::vector<std::vector<Value>>{{1, 0, 1}, {1, 1, 0}}));
  EXPECT_EQ(maximizer_table(norm), maximizer_table(inst));
  // An item nobody impacts is maximized by everyone.
  const Instance zero = Instance::make({{1}, {1}}, {{0}, {0}});
  EXPECT_EQ(normalize_impacts(zero).impacts, (std::vector<std::vector<Value>>{{1}, {1}}));
}

TEST(Types, ItemAndAgentClasses) {
  // Items 0,1 maximized by {0}; item 2 by {0,1}; item 3 by {2}.
  // Agents 0: {t0,t1}; 1: {t1}; 2: {t2}; 3: none.
  const Instance inst = Instance::make(std::vector<std::vector<Value>>(4, std::vector<Value>(4, 1)),
                                       {{2, 2, 1, 0}, {1, 1, 1, 0}, {0, 0, 0, 1}, {0, 0, 0, 0}});
  const TypePartition types = compute_types(inst);
  ASSERT_EQ(types.num_item_types(), 3u);
  EXPECT_EQ(types.item_types[0], (ItemSet{0, 1}));
  EXPECT_EQ(types.item_types[1], (ItemSet{2}));
  EXPECT_EQ(types.item_types[2], (ItemSet{3}));
  EXPECT_EQ(types.maximizer_sets[1], (AgentSet{0, 1}));
  EXPECT_EQ(types.types_of_agent(0), (std::vector<std::size_t>{0, 1}));
  EXPECT_EQ(types.types_of_agent(3), (std::vector<std::size_t>{}));
  EXPECT_EQ(types.num_agent_types(), 4u);
}

TEST(Types, AgentsWithEqualMaximizedSetsShareAType) {
  const Instance inst = Instance::make(std::vector<std::vector<Value>>(3, std::vector<Value>(2, 1)),
                                       {{1, 1}, {1, 1}, {0, 0}});
  const TypePartition types = compute_types(inst);
  EXPECT_EQ(types.agent_type_of[0], types.agent_type_of[1]);
  EXPECT_NE(types.agent_type_of[0], types.agent_type_of[2]);
  EXPECT_EQ(unique_type_agents(types), (AgentSet{2}));
}
