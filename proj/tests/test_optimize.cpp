#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "ddvv/optimize.hpp"

using namespace ddvv;

namespace {

double rosenbrock(const Vector& x) {
  double s = 0.0;
  for (int i = 0; i + 1 < x.size(); ++i) s += 100.0 * std::pow(x[i + 1] - x[i] * x[i], 2) + std::pow(1.0 - x[i], 2);
  return s;
}

}  // namespace

TEST(Optimize, NelderMeadQuadratic) {
  NelderMeadOptions o;
  o.max_evaluations = 4000;
  const auto r = nelder_mead([](const Vector& x) { return (x.array() - 1.5).square().sum(); }, Vector::Zero(5), o);
  EXPECT_LT(r.value, 1e-10);
  EXPECT_LE(r.evaluations, 4000);
  for (int i = 0; i < 5; ++i) EXPECT_NEAR(r.x[i], 1.5, 1e-4);
}

TEST(Optimize, NelderMeadRosenbrock) {
  NelderMeadOptions o;
  o.max_evaluations = 5000;
  Vector x0(2);
  x0 << -1.2, 1.0;
  const auto r = nelder_mead(rosenbrock, x0, o);
  EXPECT_LT(r.value, 1e-8);
}

TEST(Optimize, InfeasibleRegionIsAvoided) {
  NelderMeadOptions o;
  const auto r = nelder_mead(
      [](const Vector& x) {
        if (x[0] < 0.5) return std::numeric_limits<double>::infinity();
        return x.squaredNorm();
      },
      Vector::Constant(2, 2.0), o);
  EXPECT_GE(r.x[0], 0.5);
  EXPECT_NEAR(r.value, 0.25, 1e-6);
}

TEST(Optimize, GradientDescentQuadratic) {
  GradientDescentOptions o;
  o.max_evaluations = 4000;
  const auto r =
      fd_gradient_descent([](const Vector& x) { return (x.array() - 0.5).square().sum() + 2.0; }, Vector::Zero(4), o);
  EXPECT_NEAR(r.value, 2.0, 1e-8);
  EXPECT_LE(r.evaluations, 4000);
}

TEST(Optimize, Deterministic) {
  NelderMeadOptions o;
  o.max_evaluations = 700;
  Vector x0(3);
  x0 << 0.3, -0.2, 1.0;
  const auto a = nelder_mead(rosenbrock, x0, o);
  const auto b = nelder_mead(rosenbrock, x0, o);
  EXPECT_EQ(a.value, b.value);
  EXPECT_EQ(a.x, b.x);
}
