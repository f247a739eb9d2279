#pragma once

// Pointwise curvature invariants of a bilinear form: formal Ricci tensor,
// its normalized eigenvalues, partial scalar curvatures rho_{c,k}, the normal
// scalar curvature rho_perp, and the deficit c + H^2 - lam*rho_perp - rho_{c,k}.

#include <vector>

#include "ddvv/form.hpp"

namespace ddvv {

/// c(n-1) I + n sum_a H_a A_a - sum_a A_a^2.
Matrix ricci_tensor(const BilinearForm& form, double c);

/// Ascending eigenvalues of Ric_c / (n-1).
std::vector<double> ricci_eigenvalues(const BilinearForm& form, double c);

/// Mean of the k smallest normalized Ricci eigenvalues, 1 <= k <= n.
double partial_scalar(const BilinearForm& form, double c, int k);

/// ||R_perp|| / (n(n-1)) with ||R_perp||^2 = sum over ordered pairs (a,b) of
/// ||[B_a, B_b]||_F^2, B_a the traceless parts.
double normal_scalar(const BilinearForm& form);

/// Same quantity computed from the full shape operators A_a.
double normal_scalar_full(const BilinearForm& form);

/// c + H^2 - lam*rho_perp - rho_{c,k}. The c terms cancel; the value is
/// assembled as (||traceless||^2 - lam*||R_perp||) / (n(n-1)) + (rho_n - rho_k)
/// with the first bracket in extended precision, so near-equality forms keep
/// their relative accuracy.
double deficit(const BilinearForm& form, double c, int k, double lam);

struct CurvatureReport {
  int n = 0;
  int m = 0;
  double c = 0.0;
  double H_sq = 0.0;
  double norm_sq = 0.0;
  std::vector<double> eigenvalues;  ///< lambda_{c,1} <= ... <= lambda_{c,n}
  std::vector<double> rho_k;        ///< rho_{c,k}, k = 1..n
  double rho_perp = 0.0;
  double traceless_norm_sq = 0.0;  ///< ||traceless||^2

  // Extended-precision ||traceless||^2 and ||R_perp|| backing deficit().
  long double traceless_sq_ext = 0.0L;
  long double r_perp_ext = 0.0L;

  double rho_n() const { return rho_k.back(); }
  /// c + H_sq - lam*rho_perp - rho_k[k-1], evaluated as in ddvv::deficit.
  double deficit(int k, double lam) const;
};

CurvatureReport full_report(const BilinearForm& form, double c);

/// Relative slack 1e-9 * (1 + ||beta||^2) shared by all inequality checks.
inline double inequality_slack(double norm_sq, double rel = 1e-9) { return rel * (1.0 + norm_sq); }

}  // namespace ddvv
