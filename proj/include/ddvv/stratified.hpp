#pragma once

// Index-stratified determinant integrals over the unit normal sphere:
//   psi_p(beta) = integral over {u : p < Index A_u < n - p} of |det A_u| dS_u.

#include <vector>

#include "ddvv/form.hpp"
#include "ddvv/sphere_rule.hpp"

namespace ddvv {

inline constexpr double kDefaultIndexTol = 1e-9;

/// Number of eigenvalues below -tol * max(1, spectral radius).
int index_of(const Matrix& A, double tol = kDefaultIndexTol);

struct IndexAndDet {
  int index = 0;
  double abs_det = 0.0;
  bool near_degenerate = false;  ///< some eigenvalue within tol * scale of zero
};

/// Index and |det| from one eigensolve, so the two are consistent per node.
IndexAndDet index_and_det(const Matrix& A, double tol = kDefaultIndexTol);

struct StratifiedIntegral {
  int p = 0;
  int n = 0;
  double value = 0.0;
  double error_estimate = 0.0;
  std::vector<double> contributions;  ///< per index i = 0..n
  int degenerate_nodes = 0;

  /// Unrestricted integral of |det A_u| (sum over all indices).
  double total() const;
};

/// Full evaluation with error estimate: half-resolution difference for
/// deterministic rules, standard error for Monte Carlo.
StratifiedIntegral psi_p(const BilinearForm& form, int p, const SphereRule& rule, double tol = kDefaultIndexTol);

/// Value only (no error estimate); the optimizer's inner loop.
double psi_p_value(const BilinearForm& form, int p, const SphereRule& rule, double tol = kDefaultIndexTol);

/// mu^2 * integral over {u_1 + u_2 != 0} of (u_1^2 + u_2^2) |u_1 + u_2|^{n-2} dS_u.
double example1_I_constant(int n, int m, double mu, const SphereRule& rule);

}  // namespace ddvv
