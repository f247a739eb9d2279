#include "ddvv/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

#include "ddvv/errors.hpp"

namespace ddvv {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

class Budgeted {
 public:
  Budgeted(const Objective& f, int budget) : f_(f), budget_(budget) {}

  bool exhausted() const { return used_ >= budget_; }
  int used() const { return used_; }

  double operator()(const Vector& x) {
    ++used_;
    const double v = f_(x);
    const double out = std::isnan(v) ? kInf : v;
    if (out < best_value_) {
      best_value_ = out;
      best_x_ = x;
    }
    return out;
  }

  const Vector& best_x() const { return best_x_; }
  double best_value() const { return best_value_; }

 private:
  const Objective& f_;
  int budget_;
  int used_ = 0;
  Vector best_x_;
  double best_value_ = kInf;
};

}  // namespace

MinimizeResult nelder_mead(const Objective& f, const Vector& x0, const NelderMeadOptions& opts) {
  if (opts.max_evaluations < 1) throw ValidationError("nelder_mead needs a positive evaluation budget");
  const Eigen::Index d = x0.size();
  const double dd = static_cast<double>(d);
  const double alpha = 1.0;
  const double gamma = 1.0 + 2.0 / dd;
  const double rho = 0.75 - 1.0 / (2.0 * dd);
  const double shrink = 1.0 - 1.0 / dd;

  Budgeted eval(f, opts.max_evaluations);
  MinimizeResult result;
  Vector start = x0;
  double start_value = eval(start);

  std::vector<Vector> simplex(static_cast<std::size_t>(d + 1));
  std::vector<double> values(static_cast<std::size_t>(d + 1));
  std::vector<std::size_t> order(static_cast<std::size_t>(d + 1));

  while (!eval.exhausted()) {
    simplex[0] = start;
    values[0] = start_value;
    const double scale = std::max(1e-3, start.cwiseAbs().maxCoeff());
    for (Eigen::Index i = 0; i < d && !eval.exhausted(); ++i) {
      Vector v = start;
      v[i] += opts.initial_step * scale;
      simplex[static_cast<std::size_t>(i + 1)] = v;
      values[static_cast<std::size_t>(i + 1)] = eval(v);
    }
    if (eval.exhausted()) break;

    while (!eval.exhausted()) {
      std::iota(order.begin(), order.end(), std::size_t{0});
      std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
      const std::size_t best = order.front();
      const std::size_t worst = order.back();
      const std::size_t second_worst = order[order.size() - 2];

      double diameter = 0.0;
      for (const auto& v : simplex) diameter = std::max(diameter, (v - simplex[best]).cwiseAbs().maxCoeff());
      const bool flat = std::isfinite(values[worst]) && values[worst] - values[best] <= opts.f_tol * (1.0 + std::abs(values[best]));
      if (flat || diameter <= opts.x_tol * std::max(1.0, simplex[best].norm())) break;
      ++result.iterations;

      Vector centroid = Vector::Zero(d);
      for (std::size_t i = 0; i < simplex.size(); ++i) {
        if (i != worst) centroid += simplex[i];
      }
      centroid /= dd;

      const Vector xr = centroid + alpha * (centroid - simplex[worst]);
      const double fr = eval(xr);
      if (fr < values[best]) {
        if (eval.exhausted()) break;
        const Vector xe = centroid + gamma * (xr - centroid);
        const double fe = eval(xe);
        if (fe < fr) {
          simplex[worst] = xe;
          values[worst] = fe;
        } else {
          simplex[worst] = xr;
          values[worst] = fr;
        }
        continue;
      }
      if (fr < values[second_worst]) {
        simplex[worst] = xr;
        values[worst] = fr;
        continue;
      }
      if (eval.exhausted()) break;
      const bool outside = fr < values[worst];
      const Vector xc = outside ? Vector(centroid + rho * (xr - centroid))
                                : Vector(centroid - rho * (centroid - simplex[worst]));
      const double fc = eval(xc);
      if (fc < std::min(fr, values[worst]) || (outside && fc <= fr)) {
        simplex[worst] = xc;
        values[worst] = fc;
        continue;
      }
      for (std::size_t i = 0; i < simplex.size() && !eval.exhausted(); ++i) {
        if (i == best) continue;
        simplex[i] = simplex[best] + shrink * (simplex[i] - simplex[best]);
        values[i] = eval(simplex[i]);
      }
    }
    start = eval.best_x();
    start_value = eval.best_value();
    if (!eval.exhausted()) ++result.restarts;
  }

  result.x = eval.best_x();
  result.value = eval.best_value();
  result.evaluations = eval.used();
  return result;
}

MinimizeResult fd_gradient_descent(const Objective& f, const Vector& x0, const GradientDescentOptions& opts) {
  if (opts.max_evaluations < 1) throw ValidationError("fd_gradient_descent needs a positive evaluation budget");
  Budgeted eval(f, opts.max_evaluations);
  MinimizeResult result;
  Vector x = x0;
  double fx = eval(x);
  double step = opts.initial_step;
  const Eigen::Index d = x.size();

  while (!eval.exhausted() && std::isfinite(fx)) {
    if (eval.used() + 2 * d > opts.max_evaluations) break;
    Vector grad(d);
    const double h = opts.fd_step * std::max(1.0, x.norm());
    for (Eigen::Index i = 0; i < d; ++i) {
      Vector xp = x, xm = x;
      xp[i] += h;
      xm[i] -= h;
      const double fp = eval(xp);
      const double fm = eval(xm);
      grad[i] = (std::isfinite(fp) && std::isfinite(fm)) ? (fp - fm) / (2.0 * h) : 0.0;
    }
    const double gnorm = grad.norm();
    if (!(gnorm > 0.0)) break;
    ++result.iterations;

    // Backtracking (Armijo) along -grad, starting from twice the last accepted step.
    step = std::min(2.0 * step, 1e3 * opts.initial_step);
    bool accepted = false;
    while (!eval.exhausted() && step > opts.min_step) {
      const Vector trial = x - (step / gnorm) * grad;
      const double ft = eval(trial);
      if (ft <= fx - 1e-4 * step * gnorm) {
        x = trial;
        fx = ft;
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) break;
  }

  result.x = eval.best_x();
  result.value = eval.best_value();
  result.evaluations = eval.used();
  return result;
}

}  // namespace ddvv
