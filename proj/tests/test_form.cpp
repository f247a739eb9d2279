#include <gtest/gtest.h>

#include <cmath>

#include "ddvv/errors.hpp"
#include "ddvv/form.hpp"
#include "oracles.hpp"

using namespace ddvv;

TEST(BilinearForm, SymmetrizesAndValidates) {
  Matrix a(2, 2);
  a << 1.0, 2.0, 0.0, 3.0;
  const BilinearForm f({a});
  EXPECT_DOUBLE_EQ(f.shape_op(0)(0, 1), 1.0);
  EXPECT_DOUBLE_EQ(f.shape_op(0)(1, 0), 1.0);

  EXPECT_THROW(BilinearForm({}), ValidationError);
  EXPECT_THROW(BilinearForm({Matrix::Zero(2, 3)}), ValidationError);
  EXPECT_THROW(BilinearForm({Matrix::Zero(2, 2), Matrix::Zero(3, 3)}), ValidationError);
  Matrix bad = Matrix::Zero(2, 2);
  bad(0, 0) = std::nan("");
  EXPECT_THROW(BilinearForm({bad}), ValidationError);
}

TEST(BilinearForm, ParameterRoundTrip) {
  const BilinearForm f = random_form(4, 3, 1.0, 11);
  EXPECT_EQ(f.parameter_count(), 30);
  const BilinearForm g = BilinearForm::from_parameters(4, 3, f.to_parameters());
  EXPECT_EQ(f, g);
}

TEST(BilinearForm, FirstOrderInvariants) {
  const BilinearForm f = random_form(5, 3, 1.0, 3);
  const auto inv = first_order_invariants(f);
  double h_sq = 0.0, nsq = 0.0;
  for (const Matrix& a : f.shape_ops()) {
    h_sq += std::pow(a.trace() / 5.0, 2);
    nsq += a.cwiseProduct(a).sum();
  }
  EXPECT_NEAR(inv.H_sq, h_sq, 1e-13);
  EXPECT_NEAR(inv.norm_sq, nsq, 1e-12);
  EXPECT_NEAR(norm_sq(inv.traceless), nsq - 5.0 * h_sq, 1e-12);
  for (const Matrix& b : inv.traceless.shape_ops()) EXPECT_NEAR(b.trace(), 0.0, 1e-13);
}

TEST(BilinearForm, ShapeOperatorIsLinearInDirection) {
  const BilinearForm f = random_form(3, 2, 1.0, 5);
  Vector u(2);
  u << 0.6, -0.8;
  const Matrix expect = 0.6 * f.shape_op(0) - 0.8 * f.shape_op(1);
  EXPECT_LT((shape_operator(f, u) - expect).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_THROW(shape_operator(f, Vector::Zero(3)), ValidationError);
}

TEST(BilinearForm, Umbilical) {
  std::vector<Matrix> ops{2.0 * Matrix::Identity(3, 3), -Matrix::Identity(3, 3)};
  EXPECT_TRUE(is_umbilical(BilinearForm(ops), 1e-12));
  EXPECT_FALSE(is_umbilical(random_form(3, 2, 1.0, 1), 1e-6));
}

TEST(BilinearForm, KulkarniNomizuOfMetricIsConstantCurvature) {
  const int n = 3;
  const Matrix g = Matrix::Identity(n, n);
  const CurvatureTensor4 t = kulkarni_nomizu(g, g);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          const double expect = 2.0 * ((i == k) * (j == l) - (i == l) * (j == k));
          EXPECT_DOUBLE_EQ(t(i, j, k, l), expect);
        }
}

TEST(BilinearForm, FormalCurvatureMatchesGaussEquation) {
  const BilinearForm f = random_form(4, 2, 1.0, 21);
  const double c = 0.7;
  const CurvatureTensor4 r = formal_curvature_tensor(f, c);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      for (int k = 0; k < 4; ++k)
        for (int l = 0; l < 4; ++l) {
          double expect = c * ((i == k) * (j == l) - (i == l) * (j == k));
          for (const Matrix& h : f.shape_ops()) expect += h(i, k) * h(j, l) - h(i, l) * h(j, k);
          EXPECT_NEAR(r(i, j, k, l), expect, 1e-13);
        }
}

TEST(BilinearForm, WintgenShape) {
  const BilinearForm w = wintgen_canonical_form(4, 3, 2.0);
  EXPECT_EQ(w.n(), 4);
  EXPECT_EQ(w.m(), 3);
  EXPECT_THROW(wintgen_canonical_form(1, 2, 1.0), ValidationError);
  EXPECT_THROW(wintgen_canonical_form(3, 1, 1.0), ValidationError);
}

TEST(BilinearForm, Example1MeanVector) {
  const int n = 6;
  const double sigma = 0.3;
  const auto inv = first_order_invariants(example1_form(n, 2, 1.0, sigma));
  const double h = (n - 4.0) * sigma / n;
  EXPECT_NEAR(inv.mean_vector[0], h, 1e-15);
  EXPECT_NEAR(inv.mean_vector[1], h, 1e-15);
  EXPECT_THROW(example1_form(2, 2, 1.0, 0.1), ValidationError);
  EXPECT_THROW(example1_form(4, 2, 1.0, 0.0), ValidationError);
}

TEST(BilinearForm, RandomFormIsSeeded) {
  EXPECT_EQ(random_form(3, 2, 1.0, 9), random_form(3, 2, 1.0, 9));
  EXPECT_FALSE(random_form(3, 2, 1.0, 9) == random_form(3, 2, 1.0, 10));
  EXPECT_THROW(random_form(3, 2, -1.0, 9), ValidationError);
}
