#include "ddvv/curvature.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "ddvv/errors.hpp"

namespace ddvv {
namespace {

void check_k(const BilinearForm& form, int k) {
  if (k < 1 || k > form.n()) {
    throw ValidationError("k must satisfy 1 <= k <= n = " + std::to_string(form.n()) + ", got " +
                          std::to_string(k));
  }
}

double commutator_norm_sq(std::span<const Matrix> ops) {
  // Ordered pairs: each unordered pair counts twice, the diagonal vanishes.
  double s = 0.0;
  for (std::size_t a = 0; a < ops.size(); ++a) {
    for (std::size_t b = a + 1; b < ops.size(); ++b) {
      const Matrix C = ops[a] * ops[b] - ops[b] * ops[a];
      s += 2.0 * C.squaredNorm();
    }
  }
  return s;
}

using MatrixExt = Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>;

struct TracelessExt {
  long double norm_sq = 0.0L;  // ||traceless||^2
  long double r_perp = 0.0L;   // ||R_perp||
};

TracelessExt traceless_ext(const BilinearForm& form) {
  const int n = form.n();
  std::vector<MatrixExt> B;
  B.reserve(static_cast<std::size_t>(form.m()));
  TracelessExt out;
  for (const auto& A : form.shape_ops()) {
    MatrixExt b = A.cast<long double>();
    const long double mean = b.trace() / n;
    b.diagonal().array() -= mean;
    out.norm_sq += b.squaredNorm();
    B.push_back(std::move(b));
  }
  long double c2 = 0.0L;
  for (std::size_t a = 0; a < B.size(); ++a) {
    for (std::size_t b = a + 1; b < B.size(); ++b) {
      const MatrixExt C = B[a] * B[b] - B[b] * B[a];
      c2 += 2.0L * C.squaredNorm();
    }
  }
  out.r_perp = std::sqrt(c2);
  return out;
}

double assemble_deficit(int n, const TracelessExt& t, double lam, double rho_n_minus_rho_k) {
  const long double nn1 = static_cast<long double>(n) * (n - 1);
  const long double base = (t.norm_sq - static_cast<long double>(lam) * t.r_perp) / nn1;
  return static_cast<double>(base + static_cast<long double>(rho_n_minus_rho_k));
}

void check_lam(double lam) {
  if (!(lam >= 0.0 && lam <= 1.0)) throw ValidationError("lam must lie in [0, 1], got " + std::to_string(lam));
}

double prefix_mean(const std::vector<double>& sorted, int k) {
  return std::accumulate(sorted.begin(), sorted.begin() + k, 0.0) / k;
}

}  // namespace

Matrix ricci_tensor(const BilinearForm& form, double c) {
  const int n = form.n();
  Matrix ric = c * (n - 1) * Matrix::Identity(n, n);
  for (const auto& A : form.shape_ops()) {
    ric += A.trace() * A;  // n * H_a * A_a with H_a = tr(A_a)/n
    ric -= A * A;
  }
  return 0.5 * (ric + ric.transpose());
}

std::vector<double> ricci_eigenvalues(const BilinearForm& form, double c) {
  const int n = form.n();
  const Matrix T = ricci_tensor(form, c) / static_cast<double>(n - 1);
  if (!T.allFinite()) throw NumericalError("ricci_eigenvalues: non-finite Ricci tensor");
  Eigen::SelfAdjointEigenSolver<Matrix> solver(T, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw NumericalError("ricci_eigenvalues: eigensolver failed");
  const Vector& ev = solver.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

double partial_scalar(const BilinearForm& form, double c, int k) {
  check_k(form, k);
  return prefix_mean(ricci_eigenvalues(form, c), k);
}

double normal_scalar(const BilinearForm& form) {
  const auto inv = first_order_invariants(form);
  const int n = form.n();
  return std::sqrt(commutator_norm_sq(inv.traceless.shape_ops())) / (n * (n - 1.0));
}

double normal_scalar_full(const BilinearForm& form) {
  const int n = form.n();
  return std::sqrt(commutator_norm_sq(form.shape_ops())) / (n * (n - 1.0));
}

double deficit(const BilinearForm& form, double /*c*/, int k, double lam) {
  check_k(form, k);
  check_lam(lam);
  double spread = 0.0;
  if (k < form.n()) {
    const auto ev = ricci_eigenvalues(form, 0.0);
    spread = prefix_mean(ev, form.n()) - prefix_mean(ev, k);
  }
  return assemble_deficit(form.n(), traceless_ext(form), lam, spread);
}

double CurvatureReport::deficit(int k, double lam) const {
  if (k < 1 || k > n) throw ValidationError("k must satisfy 1 <= k <= n = " + std::to_string(n));
  check_lam(lam);
  const double spread = k < n ? rho_k.back() - rho_k[static_cast<std::size_t>(k - 1)] : 0.0;
  return assemble_deficit(n, TracelessExt{traceless_sq_ext, r_perp_ext}, lam, spread);
}

CurvatureReport full_report(const BilinearForm& form, double c) {
  CurvatureReport r;
  r.n = form.n();
  r.m = form.m();
  r.c = c;
  const auto inv = first_order_invariants(form);
  r.H_sq = inv.H_sq;
  r.norm_sq = inv.norm_sq;
  r.eigenvalues = ricci_eigenvalues(form, c);
  r.rho_k.resize(r.eigenvalues.size());
  double running = 0.0;
  for (std::size_t i = 0; i < r.eigenvalues.size(); ++i) {
    running += r.eigenvalues[i];
    r.rho_k[i] = running / static_cast<double>(i + 1);
  }
  const TracelessExt t = traceless_ext(form);
  r.traceless_sq_ext = t.norm_sq;
  r.r_perp_ext = t.r_perp;
  r.traceless_norm_sq = static_cast<double>(t.norm_sq);
  r.rho_perp = std::sqrt(commutator_norm_sq(inv.traceless.shape_ops())) / (r.n * (r.n - 1.0));
  return r;
}

}  // namespace ddvv
