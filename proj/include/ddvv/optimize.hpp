#pragma once

// Local minimizers over R^d with a hard evaluation budget. The objective may
// return +infinity to mark infeasible points.

#include <functional>

#include "ddvv/form.hpp"

namespace ddvv {

using Objective = std::function<double(const Vector&)>;

struct MinimizeResult {
  Vector x;
  double value = 0.0;
  int evaluations = 0;
  int iterations = 0;
  int restarts = 0;
};

struct NelderMeadOptions {
  int max_evaluations = 2000;
  double initial_step = 0.1;
  double f_tol = 1e-12;  ///< simplex value spread that triggers a restart
  double x_tol = 1e-10;  ///< simplex diameter that triggers a restart
};

/// Nelder-Mead with adaptive coefficients (Gao-Han) and restarts from the
/// incumbent until the budget is spent.
MinimizeResult nelder_mead(const Objective& f, const Vector& x0, const NelderMeadOptions& opts);

struct GradientDescentOptions {
  int max_evaluations = 2000;
  double fd_step = 1e-6;
  double initial_step = 0.1;
  double min_step = 1e-14;
};

/// Steepest descent on a central-difference gradient with backtracking.
MinimizeResult fd_gradient_descent(const Objective& f, const Vector& x0, const GradientDescentOptions& opts);

}  // namespace ddvv
