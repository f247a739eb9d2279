#include "ddvv/stratified.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ddvv/errors.hpp"

namespace ddvv {
namespace {

void check_psi_args(const BilinearForm& form, int p, const SphereRule& rule) {
  if (p < 0 || 2 * p >= form.n()) {
    throw ValidationError("p must satisfy 0 <= p < n/2, got p = " + std::to_string(p) + " with n = " +
                          std::to_string(form.n()));
  }
  if (rule.m != form.m()) {
    throw ValidationError("sphere rule is for m = " + std::to_string(rule.m) + " but the form has m = " +
                          std::to_string(form.m()));
  }
}

// Per-node integrand |det A_u| * 1[p < index < n - p], with per-index accumulation.
class Evaluator {
 public:
  Evaluator(const BilinearForm& form, double tol) : form_(form), tol_(tol), solver_(form.n()) {}

  IndexAndDet at(const Vector& u) {
    A_.setZero(form_.n(), form_.n());
    for (int a = 0; a < form_.m(); ++a) A_.noalias() += u[a] * form_.shape_op(a);
    return classify(A_);
  }

  IndexAndDet classify(const Matrix& A) {
    if (!A.allFinite()) throw NumericalError("index_of: non-finite matrix entries");
    solver_.compute(A, Eigen::EigenvaluesOnly);
    if (solver_.info() != Eigen::Success) throw NumericalError("index_of: eigensolver failed");
    const Vector& ev = solver_.eigenvalues();
    const double radius = std::max(std::abs(ev[0]), std::abs(ev[ev.size() - 1]));
    const double cut = tol_ * std::max(1.0, radius);
    IndexAndDet out;
    double det = 1.0;
    for (Eigen::Index i = 0; i < ev.size(); ++i) {
      if (ev[i] < -cut) ++out.index;
      if (std::abs(ev[i]) < cut) out.near_degenerate = true;
      det *= ev[i];
    }
    out.abs_det = std::abs(det);
    return out;
  }

 private:
  const BilinearForm& form_;
  double tol_;
  Eigen::SelfAdjointEigenSolver<Matrix> solver_;
  Matrix A_;
};

struct RawSums {
  std::vector<double> contributions;
  double value = 0.0;
  double sum_sq = 0.0;  // sum of (w f)^2 over nodes, for the Monte Carlo standard error
  int degenerate = 0;
};

RawSums integrate(const BilinearForm& form, int p, const SphereRule& rule, double tol) {
  const int n = form.n();
  Evaluator eval(form, tol);
  RawSums s;
  s.contributions.assign(static_cast<std::size_t>(n + 1), 0.0);
  for (std::size_t q = 0; q < rule.size(); ++q) {
    const IndexAndDet r = eval.at(rule.nodes[q]);
    const double wf = rule.weights[q] * r.abs_det;
    s.contributions[static_cast<std::size_t>(r.index)] += wf;
    if (r.near_degenerate) ++s.degenerate;
    if (p < r.index && r.index < n - p) {
      s.value += wf;
      s.sum_sq += wf * wf;
    }
  }
  return s;
}

}  // namespace

int index_of(const Matrix& A, double tol) { return index_and_det(A, tol).index; }

IndexAndDet index_and_det(const Matrix& A, double tol) {
  if (!(tol > 0.0)) throw ValidationError("index tolerance must be > 0");
  if (A.rows() != A.cols()) throw ValidationError("index_of needs a square matrix");
  const BilinearForm dummy = BilinearForm::zero(std::max<int>(2, static_cast<int>(A.rows())), 1);
  Evaluator eval(dummy, tol);
  return eval.classify(A);
}

double StratifiedIntegral::total() const {
  double s = 0.0;
  for (double c : contributions) s += c;
  return s;
}

StratifiedIntegral psi_p(const BilinearForm& form, int p, const SphereRule& rule, double tol) {
  check_psi_args(form, p, rule);
  const RawSums full = integrate(form, p, rule, tol);
  StratifiedIntegral out;
  out.p = p;
  out.n = form.n();
  out.contributions = full.contributions;
  out.degenerate_nodes = full.degenerate;
  out.value = 0.0;
  for (int i = p + 1; i < form.n() - p; ++i) out.value += full.contributions[static_cast<std::size_t>(i)];

  switch (rule.method) {
    case SphereMethod::ExactPair: out.error_estimate = 0.0; break;
    case SphereMethod::MonteCarlo: {
      const double N = static_cast<double>(rule.size());
      // Equal weights: value = N * mean(w f); standard error = N * sd(w f) / sqrt(N).
      const double mean = full.value / N;
      const double var = std::max(0.0, full.sum_sq / N - mean * mean) * N / std::max(1.0, N - 1.0);
      out.error_estimate = std::sqrt(var * N);
      break;
    }
    default: {
      const SphereRule coarse = half_resolution(rule);
      out.error_estimate = std::abs(out.value - integrate(form, p, coarse, tol).value);
      break;
    }
  }
  return out;
}

double psi_p_value(const BilinearForm& form, int p, const SphereRule& rule, double tol) {
  check_psi_args(form, p, rule);
  return integrate(form, p, rule, tol).value;
}

double example1_I_constant(int n, int m, double mu, const SphereRule& rule) {
  if (n < 3 || m < 2) throw ValidationError("example1_I_constant needs n >= 3 and m >= 2");
  if (rule.m != m) throw ValidationError("sphere rule dimension does not match m");
  double s = 0.0;
  for (std::size_t q = 0; q < rule.size(); ++q) {
    const Vector& u = rule.nodes[q];
    const double r2 = u[0] * u[0] + u[1] * u[1];
    const double t = std::abs(u[0] + u[1]);
    if (t == 0.0) continue;
    s += rule.weights[q] * r2 * std::pow(t, n - 2);
  }
  return mu * mu * s;
}

}  // namespace ddvv
