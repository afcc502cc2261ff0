#include <gtest/gtest.h>

#include <random>
#include <vector>

#include "eptune/pid.hpp"

namespace eptune {
namespace {

TEST(PidStep, PureProportional) {
  EXPECT_DOUBLE_EQ(pid_step({}, {1, 0, 0}, 1.0, 0.0, 0.02).output, 1.0);
}

TEST(PidStep, ZeroGainsGiveZero) {
  PidState s;
  for (double e : {1.0, -3.0, 0.5}) {
    const auto r = pid_step(s, {0, 0, 0}, e, -e, 0.02);
    EXPECT_EQ(r.output, 0.0);
    s = r.state;
  }
}

TEST(PidStep, IntegralRectangularSum) {
  PidState s;
  const double expected[] = {0.02, 0.04, 0.06};
  for (double want : expected) {
    const auto r = pid_step(s, {0, 1, 0}, 1.0, 0.0, 0.02);
    EXPECT_NEAR(r.output, want, 1e-15);
    s = r.state;
  }
}

TEST(PidStep, DerivativeZeroOnFirstSampleThenBackwardDifference) {
  auto r = pid_step(pid_reset(), {0, 0, 1}, 5.0, 0.0, 0.02);
  EXPECT_EQ(r.output, 0.0);
  r = pid_step(r.state, {0, 0, 1}, 5.0, 1.0, 0.02);
  EXPECT_DOUBLE_EQ(r.output, (4.0 - 5.0) / 0.02);
}

TEST(PidReset, ClearsAndIsIdempotent) {
  PidState s = pid_step({}, {1, 1, 1}, 2.0, 0.5, 0.02).state;
  ASSERT_NE(s, PidState{});
  const PidState once = pid_reset(s);
  EXPECT_EQ(once.integral, 0.0);
  EXPECT_FALSE(once.first_sample_seen);
  EXPECT_EQ(pid_reset(once), once);
}

// Drives a controller with a random error history and compares against a
// direct recomputation from the stored history.
TEST(PidStep, MatchesBruteForceAndIsLinearInGains) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const double dt = 0.02;
  const Gains g{0.7, 0.3, 0.05};
  const Gains g3{2.1, 0.9, 0.15};
  PidState s, s3;
  std::vector<double> errors;
  for (int k = 0; k < 300; ++k) {
    const double sp = u(rng), meas = u(rng);
    errors.push_back(sp - meas);
    const auto r = pid_step(s, g, sp, meas, dt);
    const auto r3 = pid_step(s3, g3, sp, meas, dt);
    s = r.state;
    s3 = r3.state;

    double integral = 0.0;
    for (double e : errors) integral += e * dt;
    const double deriv = errors.size() > 1 ? (errors.back() - errors[errors.size() - 2]) / dt : 0.0;
    const double want = g.kp * errors.back() + g.ki * integral + g.kd * deriv;
    ASSERT_NEAR(r.output, want, 1e-9 * (1.0 + std::fabs(want)));
    ASSERT_NEAR(r3.output, 3.0 * r.output, 1e-9 * (1.0 + std::fabs(r3.output)));
  }
}

TEST(PidStep, ProportionalOnlyDependsOnCurrentError) {
  PidState s;
  for (double e : {0.3, -2.0, 7.0}) {
    const auto r = pid_step(s, {0.4, 0, 0}, e, 0.0, 0.02);
    EXPECT_DOUBLE_EQ(r.output, 0.4 * e);
    s = r.state;
  }
}

}  // namespace
}  // namespace eptune
