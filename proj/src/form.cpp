#include "ddvv/form.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "ddvv/errors.hpp"

namespace ddvv {

BilinearForm::BilinearForm(std::vector<Matrix> shape_ops) : ops_(std::move(shape_ops)) {
  if (ops_.empty()) throw ValidationError("bilinear form needs at least one shape operator (m >= 1)");
  n_ = static_cast<int>(ops_.front().rows());
  if (n_ < 2) throw ValidationError("tangent dimension n must be >= 2, got " + std::to_string(n_));
  for (std::size_t a = 0; a < ops_.size(); ++a) {
    Matrix& A = ops_[a];
    if (A.rows() != n_ || A.cols() != n_) {
      throw ValidationError("shape_ops[" + std::to_string(a) + "] is " + std::to_string(A.rows()) + "x" +
                            std::to_string(A.cols()) + ", expected " + std::to_string(n_) + "x" +
                            std::to_string(n_));
    }
    if (!A.allFinite()) throw ValidationError("shape_ops[" + std::to_string(a) + "] has non-finite entries");
    A = (0.5 * (A + A.transpose())).eval();
  }
}

BilinearForm BilinearForm::zero(int n, int m) {
  if (m < 1) throw ValidationError("normal dimension m must be >= 1");
  return BilinearForm(std::vector<Matrix>(static_cast<std::size_t>(m), Matrix::Zero(n, n)));
}

BilinearForm BilinearForm::scaled(double t) const {
  std::vector<Matrix> ops;
  ops.reserve(ops_.size());
  for (const auto& A : ops_) ops.push_back(t * A);
  return BilinearForm(std::move(ops));
}

Vector BilinearForm::to_parameters() const {
  Vector p(parameter_count());
  int idx = 0;
  for (const auto& A : ops_) {
    for (int i = 0; i < n_; ++i) {
      for (int j = i; j < n_; ++j) p[idx++] = A(i, j);
    }
  }
  return p;
}

BilinearForm BilinearForm::from_parameters(int n, int m, const Vector& params) {
  if (params.size() != m * n * (n + 1) / 2) {
    throw ValidationError("parameter vector has length " + std::to_string(params.size()) + ", expected " +
                          std::to_string(m * n * (n + 1) / 2));
  }
  std::vector<Matrix> ops;
  ops.reserve(static_cast<std::size_t>(m));
  int idx = 0;
  for (int a = 0; a < m; ++a) {
    Matrix A(n, n);
    for (int i = 0; i < n; ++i) {
      for (int j = i; j < n; ++j) {
        A(i, j) = params[idx];
        A(j, i) = params[idx];
        ++idx;
      }
    }
    ops.push_back(std::move(A));
  }
  return BilinearForm(std::move(ops));
}

bool BilinearForm::operator==(const BilinearForm& other) const {
  if (n_ != other.n_ || ops_.size() != other.ops_.size()) return false;
  for (std::size_t a = 0; a < ops_.size(); ++a) {
    if (ops_[a] != other.ops_[a]) return false;
  }
  return true;
}

CurvatureTensor4::CurvatureTensor4(int n)
    : n_(n), data_(static_cast<std::size_t>(n) * n * n * n, 0.0) {}

Matrix CurvatureTensor4::contract_13() const {
  Matrix ric = Matrix::Zero(n_, n_);
  for (int x = 0; x < n_; ++x) {
    for (int y = 0; y < n_; ++y) {
      double s = 0.0;
      for (int i = 0; i < n_; ++i) s += (*this)(i, x, i, y);
      ric(x, y) = s;
    }
  }
  return ric;
}

Matrix shape_operator(const BilinearForm& form, const Vector& xi) {
  if (xi.size() != form.m()) {
    throw ValidationError("normal vector has length " + std::to_string(xi.size()) + ", form has m = " +
                          std::to_string(form.m()));
  }
  Matrix A = Matrix::Zero(form.n(), form.n());
  for (int a = 0; a < form.m(); ++a) A += xi[a] * form.shape_op(a);
  return A;
}

double norm_sq(const BilinearForm& form) {
  double s = 0.0;
  for (const auto& A : form.shape_ops()) s += A.squaredNorm();
  return s;
}

FirstOrderInvariants first_order_invariants(const BilinearForm& form) {
  const int n = form.n();
  Vector mean(form.m());
  std::vector<Matrix> traceless;
  traceless.reserve(static_cast<std::size_t>(form.m()));
  for (int a = 0; a < form.m(); ++a) {
    const Matrix& A = form.shape_op(a);
    mean[a] = A.trace() / n;
    Matrix B = A;
    B.diagonal().array() -= mean[a];
    traceless.push_back(std::move(B));
  }
  return FirstOrderInvariants{mean, mean.squaredNorm(), norm_sq(form), BilinearForm(std::move(traceless))};
}

bool is_umbilical(const BilinearForm& form, double tol) {
  if (!(tol > 0.0)) throw ValidationError("umbilicity tolerance must be > 0");
  const auto inv = first_order_invariants(form);
  return std::sqrt(norm_sq(inv.traceless)) <= tol * std::max(1.0, std::sqrt(inv.norm_sq));
}

BilinearForm wintgen_canonical_form(int n, int m, double mu, std::span<const double> lambdas) {
  if (m < 2) throw ValidationError("wintgen_canonical_form needs m >= 2");
  if (n < 2) throw ValidationError("wintgen_canonical_form needs n >= 2");
  if (static_cast<int>(lambdas.size()) != m) {
    throw ValidationError("wintgen_canonical_form needs m = " + std::to_string(m) + " lambdas, got " +
                          std::to_string(lambdas.size()));
  }
  std::vector<Matrix> ops;
  for (int a = 0; a < m; ++a) ops.push_back(lambdas[static_cast<std::size_t>(a)] * Matrix::Identity(n, n));
  ops[0](0, 0) += mu;
  ops[0](1, 1) -= mu;
  ops[1](0, 1) = mu;
  ops[1](1, 0) = mu;
  return BilinearForm(std::move(ops));
}

BilinearForm wintgen_canonical_form(int n, int m, double mu) {
  const std::vector<double> zeros(static_cast<std::size_t>(std::max(m, 0)), 0.0);
  return wintgen_canonical_form(n, m, mu, zeros);
}

BilinearForm example1_form(int n, int m, double mu, double sigma) {
  if (n < 3) throw ValidationError("example1_form needs n >= 3");
  if (m < 2) throw ValidationError("example1_form needs m >= 2");
  if (!(mu > 0.0) || !(sigma > 0.0)) throw ValidationError("example1_form needs mu > 0 and sigma > 0");
  std::vector<Matrix> ops(static_cast<std::size_t>(m), Matrix::Zero(n, n));
  for (int a = 0; a < 2; ++a) {
    Matrix& A = ops[static_cast<std::size_t>(a)];
    A(2, 2) = -sigma;
    for (int i = 3; i < n; ++i) A(i, i) = sigma;
  }
  ops[0](0, 0) = mu;
  ops[0](1, 1) = -mu;
  ops[1](0, 1) = mu;
  ops[1](1, 0) = mu;
  return BilinearForm(std::move(ops));
}

BilinearForm random_form(int n, int m, double scale, std::uint64_t seed) {
  if (!(scale > 0.0)) throw ValidationError("random_form scale must be > 0");
  if (m < 1) throw ValidationError("normal dimension m must be >= 1");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<Matrix> ops;
  ops.reserve(static_cast<std::size_t>(m));
  for (int a = 0; a < m; ++a) {
    Matrix G(n, n);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) G(i, j) = gauss(rng);
    }
    Matrix S = 0.5 * (G + G.transpose());
    ops.push_back(scale * S);
  }
  return BilinearForm(std::move(ops));
}

CurvatureTensor4 kulkarni_nomizu(const Matrix& phi, const Matrix& psi) {
  const int n = static_cast<int>(phi.rows());
  CurvatureTensor4 R(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l)
          R(i, j, k, l) = phi(i, k) * psi(j, l) + phi(j, l) * psi(i, k) - phi(i, l) * psi(j, k) -
                          phi(j, k) * psi(i, l);
  return R;
}

CurvatureTensor4 kulkarni_nomizu(const BilinearForm& beta, const BilinearForm& gamma) {
  if (beta.n() != gamma.n() || beta.m() != gamma.m()) {
    throw ValidationError("kulkarni_nomizu: forms have different dimensions");
  }
  const int n = beta.n();
  CurvatureTensor4 R(n);
  for (int a = 0; a < beta.m(); ++a) {
    const Matrix& B = beta.shape_op(a);
    const Matrix& G = gamma.shape_op(a);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
          for (int l = 0; l < n; ++l)
            R(i, j, k, l) += B(i, k) * G(j, l) + B(j, l) * G(i, k) - B(i, l) * G(j, k) - B(j, k) * G(i, l);
  }
  return R;
}

CurvatureTensor4 formal_curvature_tensor(const BilinearForm& form, double c) {
  const int n = form.n();
  const Matrix g = Matrix::Identity(n, n);
  const CurvatureTensor4 gg = kulkarni_nomizu(g, g);
  const CurvatureTensor4 bb = kulkarni_nomizu(form, form);
  CurvatureTensor4 R(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) R(i, j, k, l) = 0.5 * (c * gg(i, j, k, l) + bb(i, j, k, l));
  return R;
}

}  // namespace ddvv
