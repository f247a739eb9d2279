#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "ddvv/errors.hpp"
#include "ddvv/stratified.hpp"
#include "oracles.hpp"

using namespace ddvv;

TEST(Stratified, IndexCountsNegativeEigenvalues) {
  Matrix a = Matrix::Zero(4, 4);
  a.diagonal() << -2.0, -1e-3, 1.0, 3.0;
  EXPECT_EQ(index_of(a), 2);
  const auto id = index_and_det(a);
  EXPECT_NEAR(id.abs_det, 6e-3, 1e-15);
  EXPECT_FALSE(id.near_degenerate);
  a(1, 1) = 1e-14;
  EXPECT_TRUE(index_and_det(a).near_degenerate);
}

TEST(Stratified, SingleNormalIsExactPair) {
  // m = 1: the unit sphere is {+1, -1}; both directions of diag(1,-1,2) have index in (0,3).
  Matrix a = Matrix::Zero(3, 3);
  a.diagonal() << 1.0, -1.0, 2.0;
  const BilinearForm f({a});
  const SphereRule r = build_sphere_rule(1, 2);
  EXPECT_NEAR(psi_p(f, 0, r).value, 4.0, 1e-14);
  // Definite operators fall outside every stratum.
  const BilinearForm g({Matrix::Identity(3, 3)});
  EXPECT_NEAR(psi_p(g, 0, r).value, 0.0, 1e-14);
  EXPECT_NEAR(psi_p(g, 0, r).contributions[0], 1.0, 1e-14);
}

TEST(Stratified, CircleAgainstBruteForce) {
  const BilinearForm f = random_form(3, 2, 1.0, 17);
  const SphereRule r = build_sphere_rule(2, 4096);
  // Independent midpoint sum with the brute eigenvalue oracle.
  const int N = 200000;
  double ref = 0.0;
  for (int i = 0; i < N; ++i) {
    const double t = 2.0 * std::numbers::pi * (i + 0.25) / N;
    const Matrix a = std::cos(t) * f.shape_op(0) + std::sin(t) * f.shape_op(1);
    const auto ev = oracle::cubic_eigenvalues(a);
    const int neg = (ev[0] < 0) + (ev[1] < 0) + (ev[2] < 0);
    if (neg > 0 && neg < 3) ref += std::abs(ev[0] * ev[1] * ev[2]);
  }
  ref *= 2.0 * std::numbers::pi / N;
  const StratifiedIntegral s = psi_p(f, 0, r);
  EXPECT_NEAR(s.value, ref, 1e-3 * ref);
  EXPECT_LT(std::abs(s.value - ref), 10.0 * s.error_estimate + 1e-6 * ref);
}

TEST(Stratified, ContributionsPartitionTotal) {
  const BilinearForm f = random_form(5, 3, 1.0, 2);
  const SphereRule r = build_sphere_rule(3, 2000);
  const StratifiedIntegral s0 = psi_p(f, 0, r);
  const StratifiedIntegral s1 = psi_p(f, 1, r);
  const StratifiedIntegral s2 = psi_p(f, 2, r);
  double sum = 0.0;
  for (double c : s0.contributions) sum += c;
  EXPECT_NEAR(sum, s0.total(), 1e-12 * sum);
  EXPECT_NEAR(s0.value, sum - s0.contributions[0] - s0.contributions[5], 1e-12 * sum);
  EXPECT_NEAR(s1.value, s0.contributions[2] + s0.contributions[3], 1e-12 * sum);
  EXPECT_GE(s0.value, s1.value);
  EXPECT_GE(s1.value, s2.value);
}

TEST(Stratified, Homogeneity) {
  const BilinearForm f = random_form(4, 2, 1.0, 8);
  const SphereRule r = build_sphere_rule(2, 1024);
  const double base = psi_p_value(f, 1, r);
  for (double t : {0.5, 2.0, 10.0}) EXPECT_NEAR(psi_p_value(f.scaled(t), 1, r), std::pow(t, 4) * base, 1e-6 * std::pow(t, 4) * base);
}

TEST(Stratified, Example1Constant) {
  for (int n : {3, 4, 5, 6}) {
    const SphereRule r = build_sphere_rule(2, 4096);
    const double ref = oracle::example1_I_circle(n, 1.0);
    EXPECT_NEAR(example1_I_constant(n, 2, 1.0, r), ref, 1e-6 * ref);
  }
  EXPECT_NEAR(oracle::example1_I_circle(3, 1.0), 4.0 * std::sqrt(2.0), 1e-14);
}

TEST(Stratified, Rejections) {
  const BilinearForm f = random_form(4, 2, 1.0, 1);
  EXPECT_THROW(psi_p(f, 2, build_sphere_rule(2, 64)), ValidationError);
  EXPECT_THROW(psi_p(f, -1, build_sphere_rule(2, 64)), ValidationError);
  EXPECT_THROW(psi_p(f, 0, build_sphere_rule(3, 200)), ValidationError);
}
