#pragma once

// Numerical upper bounds on the universal constants delta(n, m): the infimum
// of deficit(beta) / psi_p(beta)^{2/n} over all forms. Every value found at a
// feasible form is an upper bound; nothing here certifies a lower bound.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ddvv/form.hpp"
#include "ddvv/sphere_rule.hpp"
#include "ddvv/stratified.hpp"

namespace ddvv {

/// Feasibility threshold for the quotient: psi_p > rel * ||beta||^n.
inline constexpr double kDefaultFeasibilityRel = 1e-12;

/// deficit(beta, 0, k, lam) / psi_p(beta)^{2/n}; empty when psi_p is below
/// the feasibility threshold. Invariant under beta -> t*beta, t > 0.
std::optional<double> quotient(const BilinearForm& form, int k, double lam, int p, const SphereRule& rule,
                               double index_tol = kDefaultIndexTol,
                               double feasibility_rel = kDefaultFeasibilityRel);

enum class OptimizerKind { NelderMead, GradientDescent };

std::string to_string(OptimizerKind kind);
OptimizerKind parse_optimizer(const std::string& name);

struct DeltaSettings {
  int n = 3;
  int m = 2;
  int k = 1;
  double lam = 1.0;
  int p = 0;
  int starts = 32;
  int budget = 2000;  ///< quotient evaluations per start
  std::uint64_t seed = 1;
  OptimizerKind optimizer = OptimizerKind::NelderMead;
  double index_tol = kDefaultIndexTol;
  int threads = 0;  ///< 0: DDVV_THREADS or hardware concurrency
};

struct StartTrace {
  int start = 0;
  std::uint64_t seed = 0;  ///< seed of the accepted random start
  int attempts = 0;        ///< random draws until a feasible start (<= 10)
  bool feasible = false;
  double initial_quotient = 0.0;
  double best_quotient = 0.0;
  int evaluations = 0;
  int iterations = 0;
  int restarts = 0;
};

struct ConstantEstimate {
  int n = 0;
  int m = 0;
  int k = 0;
  double lam = 1.0;
  int p = 0;
  double delta_upper = 0.0;
  bool flagged_zero = false;         ///< delta_upper <= 1e-12
  bool guaranteed_positive = false;  ///< (k <= n-1, lam = 1) or (k = n, lam < 1)
  double epsilon_upper = 0.0;        ///< delta_upper^{n/2} * Vol(S^{n+m-1})
  std::uint64_t seed = 0;
  int starts = 0;
  int budget = 0;
  std::string optimizer;
  std::string quadrature_method;
  int quadrature_target_nodes = 0;
  int quadrature_nodes = 0;
  double index_tol = kDefaultIndexTol;
  std::vector<StartTrace> trace;
  std::optional<BilinearForm> minimizer;  ///< unit-norm form attaining delta_upper
};

/// Multi-start local minimization of the quotient over unit-norm forms.
/// Throws NumericalError when no start is feasible.
ConstantEstimate estimate_delta(const DeltaSettings& settings, const SphereRule& rule);

/// delta^{n/2} * Vol(S^{d-1}) with d = n + m, or n + m + 1 for c > 0.
double epsilon_from_delta(double delta, int n, int m, bool c_positive);

struct SweepRow {
  double sigma = 0.0;
  double deficit = 0.0;
  double deficit_closed_form = 0.0;  ///< D(n) sigma^2
  double psi0 = 0.0;
  double psi1 = 0.0;  ///< zero when n < 4 (the p = 1 stratum is empty)
  double quotient = 0.0;
};

struct Example1Sweep {
  int n = 0;
  int m = 0;
  double mu = 0.0;
  int quotient_p = 0;  ///< 1 for n >= 4, 0 for n = 3
  double I = 0.0;
  std::vector<SweepRow> rows;
  double slope = 0.0;  ///< least-squares slope of log(quotient) vs log(sigma)
};

/// D(n) = 4(3n - 8) / (n^2 (n - 1)).
double example1_deficit_coefficient(int n);

Example1Sweep example1_sweep(int n, int m, double mu, const std::vector<double>& sigmas, const SphereRule& rule,
                             double index_tol = kDefaultIndexTol);

/// Least-squares slope of y against x.
double regression_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace ddvv
