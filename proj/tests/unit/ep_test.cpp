#include <gtest/gtest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "eptune/ep.hpp"
#include "eptune/fitness.hpp"

namespace eptune {
namespace {

EPConfig small_config(std::size_t size = 10, std::uint64_t seed = 1) {
  EPConfig c;
  c.population_size = size;
  c.rng_seed = seed;
  return c;
}

MemberResult member(double ae_l, double ae_a) { return {Individual{}, {ae_l, ae_a}}; }

TEST(InitPopulation, DegenerateIntervalIsConstant) {
  EPConfig c = small_config();
  c.init.kp = {0.5, 0.5};
  Rng rng(4);
  const Population p = init_population(c, rng);
  ASSERT_EQ(p.members.size(), 10u);
  for (const Individual& m : p.members) {
    EXPECT_EQ(m.linear.kp, 0.5);
    EXPECT_EQ(m.angular.kp, 0.5);
  }
}

TEST(InitPopulation, SameSeedSamePopulation) {
  Rng a(17), b(17);
  EXPECT_EQ(init_population(small_config(), a).members, init_population(small_config(), b).members);
}

TEST(InitPopulation, DrawOrderIsMemberMajor) {
  const EPConfig c = small_config(3);
  Rng a(8), b(8);
  const Population p = init_population(c, a);
  for (const Individual& m : p.members) {
    const double kpv = std::uniform_real_distribution<double>(0.0, 1.0)(b);
    const double kiv = std::uniform_real_distribution<double>(0.0, 0.1)(b);
    const double kdv = std::uniform_real_distribution<double>(0.0, 0.01)(b);
    const double kpa = std::uniform_real_distribution<double>(0.0, 1.0)(b);
    const double kia = std::uniform_real_distribution<double>(0.0, 0.1)(b);
    const double kda = std::uniform_real_distribution<double>(0.0, 0.01)(b);
    EXPECT_EQ(m, (Individual{{kpv, kiv, kdv}, {kpa, kia, kda}}));
  }
}

TEST(InitPopulation, DrawsInsideBoundsWithUniformMean) {
  // Over 1000 seeds x 10 members, each gain's mean should sit within 3 standard
  // errors of the interval midpoint.
  const EPConfig c = small_config();
  std::array<double, 6> sum{};
  std::size_t n = 0;
  const std::array<double, 6> high{1.0, 0.1, 0.01, 1.0, 0.1, 0.01};
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    Rng rng(seed);
    for (const Individual& m : init_population(c, rng).members) {
      const auto v = m.to_array();
      for (std::size_t i = 0; i < 6; ++i) {
        ASSERT_GE(v[i], 0.0);
        ASSERT_LT(v[i], high[i]);
        sum[i] += v[i];
      }
      ++n;
    }
  }
  for (std::size_t i = 0; i < 6; ++i) {
    const double se = high[i] / std::sqrt(12.0 * static_cast<double>(n));
    EXPECT_NEAR(sum[i] / static_cast<double>(n), high[i] / 2, 3 * se) << "gain " << i;
  }
}

TEST(SelectFittest, IndependentArgmin) {
  const std::vector<MemberResult> m{member(0.3, 0.05), member(0.1, 0.4), member(0.2, 0.4)};
  EXPECT_EQ(select_fittest(m), (FittestIndices{1, 0}));
}

TEST(SelectFittest, SingleMember) {
  const std::vector<MemberResult> m{member(0.7, 0.2)};
  EXPECT_EQ(select_fittest(m), (FittestIndices{0, 0}));
}

TEST(SelectFittest, TieGoesToLowestIndex) {
  const std::vector<MemberResult> m{member(0.2, 0.5), member(0.2, 0.5)};
  EXPECT_EQ(select_fittest(m), (FittestIndices{0, 0}));
}

TEST(SelectFittest, SkipsNonFinite) {
  const double nan = std::nan("");
  const std::vector<MemberResult> m{member(nan, 0.5), member(0.9, INFINITY), member(1.0, 0.4)};
  EXPECT_EQ(select_fittest(m), (FittestIndices{1, 2}));
}

TEST(SelectFittest, AllNonFiniteIsEvaluationFailure) {
  const std::vector<MemberResult> m{member(0.1, std::nan("")), member(0.2, INFINITY)};
  EXPECT_THROW(select_fittest(m), EvaluationFailure);
}

TEST(NextGeneration, SplicesWinnersAndKeepsParent) {
  const EPConfig c = small_config(4);
  Population prev{3, {Individual{{1, 1, 1}, {1, 1, 1}}, Individual{{2, 2, 2}, {2, 2, 2}},
                      Individual{{3, 3, 3}, {3, 3, 3}}, Individual{{4, 4, 4}, {4, 4, 4}}}};
  std::vector<MemberResult> results;
  const double ae_l[] = {0.5, 0.1, 0.3, 0.4};
  const double ae_a[] = {0.5, 0.6, 0.7, 0.2};
  for (std::size_t i = 0; i < 4; ++i) results.push_back({prev.members[i], {ae_l[i], ae_a[i]}});
  const auto record = GenerationRecord::make(3, results);
  Rng rng(1);
  const Population next = next_generation(prev, record, c, rng);
  EXPECT_EQ(next.generation_index, 4u);
  ASSERT_EQ(next.members.size(), 4u);
  const Individual parent{{2, 2, 2}, {4, 4, 4}};
  EXPECT_EQ(next.members[0], parent);
  EXPECT_EQ(record.composite(), parent);
  for (std::size_t i = 1; i < 4; ++i) EXPECT_NE(next.members[i], parent);
}

TEST(NextGeneration, SizeOneIsParentOnly) {
  const EPConfig c = small_config(1);
  Population prev{0, {Individual{{0.2, 0.01, 0.0}, {0.3, 0.0, 0.001}}}};
  const auto record = GenerationRecord::make(0, {{prev.members[0], {0.1, 0.1}}});
  Rng rng(1);
  const Population next = next_generation(prev, record, c, rng);
  ASSERT_EQ(next.members.size(), 1u);
  EXPECT_EQ(next.members[0], prev.members[0]);
}

TEST(NextGeneration, Deterministic) {
  const EPConfig c = small_config(6);
  Rng init(5);
  const Population prev = init_population(c, init);
  std::vector<MemberResult> results;
  for (std::size_t i = 0; i < prev.members.size(); ++i)
    results.push_back({prev.members[i], {double(i), double(6 - i)}});
  const auto record = GenerationRecord::make(0, results);
  Rng a(9), b(9);
  EXPECT_EQ(next_generation(prev, record, c, a).members,
            next_generation(prev, record, c, b).members);
}

TEST(RunEp, StubBelowTargetStopsAtGenerationZero) {
  int calls = 0;
  const auto res = run_ep(small_config(), [&](const Individual&) {
    ++calls;
    return FitnessRecord{0.005, 0.005};
  });
  EXPECT_EQ(res.stop_reason, StopReason::TargetReached);
  EXPECT_EQ(res.history.size(), 1u);
  EXPECT_EQ(calls, 10);
}

TEST(RunEp, TargetIsStrictAndNeedsBothChannels) {
  EPConfig c = small_config();
  c.max_generations = 5;
  auto at_target = run_ep(c, [](const Individual&) { return FitnessRecord{0.01, 0.001}; });
  EXPECT_EQ(at_target.stop_reason, StopReason::GenerationLimit);
  auto one_channel = run_ep(c, [](const Individual&) { return FitnessRecord{0.001, 0.5}; });
  EXPECT_EQ(one_channel.stop_reason, StopReason::GenerationLimit);
}

TEST(RunEp, ConstantStubRunsAllGenerations) {
  EPConfig c = small_config();
  c.max_generations = 37;
  const auto res = run_ep(c, [](const Individual&) { return FitnessRecord{0.5, 0.5}; });
  EXPECT_EQ(res.stop_reason, StopReason::GenerationLimit);
  ASSERT_EQ(res.history.size(), 37u);
  for (std::size_t g = 0; g < res.history.size(); ++g) {
    EXPECT_EQ(res.history[g].generation_index, g);
    EXPECT_EQ(res.history[g].members.size(), 10u);
  }
}

TEST(RunEp, EvaluatorFailureCarriesLocation) {
  EPConfig c = small_config(5);
  int calls = 0;
  try {
    run_ep(c, [&](const Individual&) -> FitnessRecord {
      if (++calls == 13) throw std::runtime_error("boom");
      return {0.5, 0.5};
    });
    FAIL() << "expected EvaluationFailure";
  } catch (const EvaluationFailure& e) {
    EXPECT_EQ(e.generation(), 2u);
    EXPECT_EQ(e.member(), 2u);
  }
}

TEST(RunEp, ScaledZeroGainStaysZero) {
  EPConfig c = small_config();
  c.max_generations = 30;
  c.init.kd = {0.0, 0.0};
  const auto res = run_ep(c, [](const Individual& ind) {
    return FitnessRecord{std::fabs(ind.linear.kp - 0.3), std::fabs(ind.angular.kp - 0.6)};
  });
  for (const auto& g : res.history) {
    for (const auto& m : g.members) {
      ASSERT_EQ(m.individual.linear.kd, 0.0);
      ASSERT_EQ(m.individual.angular.kd, 0.0);
    }
  }
}

TEST(RunEp, ConvergesOnSeparableQuadratic) {
  EPConfig c = small_config();
  c.max_generations = 200;
  c.ae_target = 1e-3;
  const auto res = run_ep(c, [](const Individual& ind) {
    return FitnessRecord{std::fabs(ind.linear.kp - 0.3) + std::fabs(ind.linear.ki - 0.02),
                         std::fabs(ind.angular.kp - 0.6)};
  });
  EXPECT_EQ(res.stop_reason, StopReason::TargetReached);
  EXPECT_NEAR(res.best.linear.kp, 0.3, 1e-3);
  EXPECT_NEAR(res.best.angular.kp, 0.6, 1e-3);
}

TEST(RunEp, SurrogatePlantBestAeNonIncreasingAndDeterministic) {
  const EPConfig c = small_config(10, 2024);
  const auto eval = [](const Individual& ind) {
    return fitness_of(ind, RouteSpec::train(), PlantParams{}, SimConfig{});
  };
  const auto a = run_ep(c, eval);
  const auto b = run_ep(c, eval);
  ASSERT_EQ(a.history.size(), 100u);
  EXPECT_EQ(a.history, b.history);
  for (std::size_t g = 1; g < a.history.size(); ++g) {
    const auto prev = a.history[g - 1].best_fitness();
    const auto cur = a.history[g].best_fitness();
    EXPECT_LE(cur.ae_linear, prev.ae_linear);
    EXPECT_LE(cur.ae_angular, prev.ae_angular);
  }
  EXPECT_EQ(a.best, a.history.back().composite());
  EXPECT_EQ(a.best_fitness, a.history.back().best_fitness());
}

TEST(EPConfig, Validation) {
  EPConfig c;
  c.population_size = 0;
  EXPECT_THROW(c.validate(), ContractViolation);
  c = EPConfig{};
  c.ae_target = 0.0;
  EXPECT_THROW(c.validate(), ContractViolation);
  c = EPConfig{};
  c.init.ki = {0.2, 0.1};
  EXPECT_THROW(c.validate(), ContractViolation);
}

}  // namespace
}  // namespace eptune
