#include <gtest/gtest.h>

#include <cmath>

#include "ddvv/curvature.hpp"
#include "ddvv/errors.hpp"
#include "oracles.hpp"

using namespace ddvv;

namespace {

std::vector<oracle::Mat> ops_of(const BilinearForm& f) { return {f.shape_ops().begin(), f.shape_ops().end()}; }

}  // namespace

TEST(Curvature, RicciAgainstBruteContraction) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const BilinearForm f = random_form(4, 3, 1.0, seed);
    EXPECT_LT((ricci_tensor(f, -0.4) - oracle::ricci_brute(ops_of(f), -0.4)).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(Curvature, EigenvaluesAgainstCubicFormula) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const BilinearForm f = random_form(3, 2, 1.0, seed);
    const auto ev = ricci_eigenvalues(f, 0.3);
    const auto ref = oracle::cubic_eigenvalues(oracle::ricci_brute(ops_of(f), 0.3) / 2.0);
    for (int i = 0; i < 3; ++i) EXPECT_NEAR(ev[i], ref[i], 1e-10 * (1.0 + std::abs(ref[i])));
  }
}

TEST(Curvature, EigenvaluesAgainstJacobi) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const BilinearForm f = random_form(6, 3, 1.0, seed);
    const auto ev = ricci_eigenvalues(f, 0.0);
    const auto ref = oracle::jacobi_eigenvalues(oracle::ricci_brute(ops_of(f), 0.0) / 5.0);
    for (int i = 0; i < 6; ++i) EXPECT_NEAR(ev[i], ref[i], 1e-10 * (1.0 + std::abs(ref[i])));
  }
}

TEST(Curvature, NormalScalarAgainstBruteCommutators) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const BilinearForm f = random_form(5, 3, 1.0, seed);
    const double ref = oracle::rho_perp_brute(ops_of(f));
    EXPECT_NEAR(normal_scalar(f), ref, 1e-12 * (1.0 + ref));
    // Commutators ignore the trace part.
    EXPECT_NEAR(normal_scalar_full(f), ref, 1e-12 * (1.0 + ref));
  }
}

TEST(Curvature, DeficitAgainstBrute) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const BilinearForm f = random_form(4, 2, 1.0, seed);
    for (int k = 1; k <= 4; ++k) {
      for (double lam : {0.0, 0.5, 1.0}) {
        const double ref = oracle::deficit_brute(ops_of(f), 0.2, k, lam);
        EXPECT_NEAR(deficit(f, 0.2, k, lam), ref, 1e-11 * (1.0 + norm_sq(f)));
      }
    }
  }
}

TEST(Curvature, ReportConsistent) {
  const BilinearForm f = random_form(5, 2, 1.0, 4);
  const CurvatureReport r = full_report(f, 1.0);
  ASSERT_EQ(r.rho_k.size(), 5u);
  for (std::size_t k = 1; k < r.rho_k.size(); ++k) EXPECT_LE(r.rho_k[k - 1], r.rho_k[k] + 1e-15);
  for (int k = 1; k <= 5; ++k) EXPECT_NEAR(r.deficit(k, 0.7), deficit(f, 1.0, k, 0.7), 1e-14);
  EXPECT_NEAR(r.rho_n(), partial_scalar(f, 1.0, 5), 1e-14);
}

TEST(Curvature, DeficitPrefixOrdering) {
  // rho_k grows with k, so the deficit shrinks.
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const CurvatureReport r = full_report(random_form(4, 3, 1.0, seed), 0.0);
    for (int k = 1; k < 4; ++k) EXPECT_GE(r.deficit(k, 1.0), r.deficit(k + 1, 1.0) - 1e-14);
  }
}

TEST(Curvature, WintgenEquality) {
  for (double mu : {0.1, 1.0, 10.0}) {
    const BilinearForm w = wintgen_canonical_form(5, 2, mu);
    EXPECT_LE(std::abs(deficit(w, 0.0, 5, 1.0)), 1e-12 * (1.0 + mu * mu));
    EXPECT_NEAR(normal_scalar(w), 4.0 * mu * mu / 20.0, 1e-10 * mu * mu);
    EXPECT_NEAR(oracle::rho_perp_brute(ops_of(w)), 4.0 * mu * mu / 20.0, 1e-10 * mu * mu);
  }
}

TEST(Curvature, WintgenWithUmbilicalPart) {
  const std::vector<double> lambdas{0.5, -1.0, 0.25};
  const BilinearForm w = wintgen_canonical_form(4, 3, 1.5, lambdas);
  EXPECT_LE(std::abs(deficit(w, 0.0, 4, 1.0)), 1e-12 * (1.0 + 2.25));
}

TEST(Curvature, UmbilicalDeficitVanishesAtFullRank) {
  std::vector<Matrix> ops{0.8 * Matrix::Identity(4, 4), -1.3 * Matrix::Identity(4, 4)};
  const BilinearForm u(ops);
  for (int k = 1; k <= 4; ++k)
    for (double lam : {0.0, 0.5, 1.0}) EXPECT_LE(deficit(u, 0.5, k, lam), 1e-12);
}

TEST(Curvature, Example1DeficitClosedForm) {
  for (int n : {3, 4, 5, 6}) {
    for (double sigma : {1e-1, 1e-2, 1e-3, 1e-4}) {
      const double d = deficit(example1_form(n, 2, 1.0, sigma), 0.0, n, 1.0);
      const double ref = oracle::example1_D(n) * sigma * sigma;
      EXPECT_NEAR(d, ref, 1e-8 * ref) << "n=" << n << " sigma=" << sigma;
    }
  }
}

TEST(Curvature, RejectsBadIndices) {
  const BilinearForm f = random_form(3, 2, 1.0, 1);
  EXPECT_THROW(deficit(f, 0.0, 0, 1.0), ValidationError);
  EXPECT_THROW(deficit(f, 0.0, 4, 1.0), ValidationError);
  EXPECT_THROW(deficit(f, 0.0, 2, -0.1), ValidationError);
  EXPECT_THROW(deficit(f, 0.0, 2, 1.1), ValidationError);
}
