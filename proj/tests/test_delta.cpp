#include <gtest/gtest.h>

#include <cmath>

#include "ddvv/curvature.hpp"
#include "ddvv/delta.hpp"
#include "ddvv/errors.hpp"
#include "oracles.hpp"

using namespace ddvv;

namespace {

DeltaSettings small(int n, int m, int k, int p) {
  DeltaSettings s;
  s.n = n;
  s.m = m;
  s.k = k;
  s.p = p;
  s.starts = 4;
  s.budget = 150;
  s.seed = 5;
  return s;
}

}  // namespace

TEST(Delta, QuotientIsScaleInvariant) {
  const BilinearForm f = random_form(3, 2, 1.0, 4);
  const SphereRule r = build_sphere_rule(2, 256);
  const auto q1 = quotient(f, 2, 1.0, 0, r);
  const auto q2 = quotient(f.scaled(7.0), 2, 1.0, 0, r);
  ASSERT_TRUE(q1 && q2);
  EXPECT_NEAR(*q1, *q2, 1e-10 * *q1);
}

TEST(Delta, QuotientDefinition) {
  const BilinearForm f = random_form(4, 2, 1.0, 6);
  const SphereRule r = build_sphere_rule(2, 512);
  const auto q = quotient(f, 3, 1.0, 1, r);
  ASSERT_TRUE(q);
  const double psi = psi_p_value(f, 1, r);
  EXPECT_NEAR(*q, deficit(f, 0.0, 3, 1.0) / std::pow(psi, 2.0 / 4.0), 1e-12 * *q);
}

TEST(Delta, QuotientInfeasibleOnUmbilical) {
  const BilinearForm u({Matrix::Identity(3, 3), Matrix::Zero(3, 3)});
  EXPECT_FALSE(quotient(u, 1, 1.0, 0, build_sphere_rule(2, 64)).has_value());
}

TEST(Delta, EstimateIsReproducibleAndBoundsSamples) {
  const SphereRule r = build_sphere_rule(2, 128);
  const ConstantEstimate a = estimate_delta(small(3, 2, 1, 0), r);
  const ConstantEstimate b = estimate_delta(small(3, 2, 1, 0), r);
  EXPECT_EQ(a.delta_upper, b.delta_upper);
  ASSERT_EQ(a.trace.size(), 4u);
  for (const StartTrace& t : a.trace) {
    EXPECT_LE(t.evaluations, 150);
    if (t.feasible) EXPECT_GE(t.best_quotient, a.delta_upper);
  }
  ASSERT_TRUE(a.minimizer.has_value());
  EXPECT_NEAR(norm_sq(*a.minimizer), 1.0, 1e-12);
  EXPECT_NEAR(*quotient(*a.minimizer, 1, 1.0, 0, r), a.delta_upper, 1e-9 * a.delta_upper);
  EXPECT_TRUE(a.guaranteed_positive);
}

TEST(Delta, ThreadCountDoesNotChangeResult) {
  const SphereRule r = build_sphere_rule(2, 128);
  DeltaSettings s = small(3, 2, 2, 0);
  s.threads = 1;
  const double one = estimate_delta(s, r).delta_upper;
  s.threads = 3;
  EXPECT_EQ(estimate_delta(s, r).delta_upper, one);
}

TEST(Delta, GradientDescentRuns) {
  DeltaSettings s = small(3, 2, 1, 0);
  s.optimizer = OptimizerKind::GradientDescent;
  const ConstantEstimate e = estimate_delta(s, build_sphere_rule(2, 128));
  EXPECT_GT(e.delta_upper, 0.0);
  EXPECT_EQ(e.optimizer, "gradient-descent");
}

TEST(Delta, EpsilonFromDelta) {
  const double vol = oracle::sphere_area(4);
  EXPECT_NEAR(epsilon_from_delta(0.25, 3, 2, false), std::pow(0.25, 1.5) * vol, 1e-14);
  EXPECT_THROW(epsilon_from_delta(-1.0, 3, 2, false), ValidationError);
}

TEST(Delta, Example1Sweep) {
  const SphereRule r = build_sphere_rule(2, 4096);
  const Example1Sweep s = example1_sweep(5, 2, 1.0, {1e-1, 1e-2, 1e-3}, r);
  EXPECT_EQ(s.quotient_p, 1);
  ASSERT_EQ(s.rows.size(), 3u);
  for (const SweepRow& row : s.rows) {
    EXPECT_NEAR(row.deficit, oracle::example1_D(5) * row.sigma * row.sigma, 1e-8 * row.deficit);
    EXPECT_NEAR(row.psi1, s.I * std::pow(row.sigma, 3), 1e-3 * row.psi1);
  }
  EXPECT_NEAR(s.slope, 4.0 / 5.0, 0.01 * 0.8);
  EXPECT_THROW(example1_sweep(5, 2, 1.0, {1e-2, 1e-1}, r), ValidationError);
}

TEST(Delta, RegressionSlope) {
  EXPECT_NEAR(regression_slope({0, 1, 2, 3}, {1, 3, 5, 7}), 2.0, 1e-14);
}

TEST(Delta, Rejections) {
  const SphereRule r = build_sphere_rule(2, 64);
  DeltaSettings s = small(3, 2, 1, 0);
  s.k = 4;
  EXPECT_THROW(estimate_delta(s, r), ValidationError);
  s = small(3, 2, 1, 2);
  EXPECT_THROW(estimate_delta(s, r), ValidationError);
  s = small(3, 3, 1, 0);
  EXPECT_THROW(estimate_delta(s, r), ValidationError);
  EXPECT_THROW(parse_optimizer("bfgs"), ValidationError);
}
