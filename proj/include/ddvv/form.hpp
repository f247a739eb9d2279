#pragma once

// Symmetric bilinear forms V x V -> W in orthonormal coordinates.
//
// A form is stored as its m shape operators A_1..A_m (one symmetric n x n
// matrix per normal basis vector), which is what every curvature formula in
// this library consumes.

#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace ddvv {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

class BilinearForm {
 public:
  /// Symmetrizes each matrix as (A + A^T)/2. Throws ValidationError on an
  /// empty list, mismatched sizes, n < 2, or non-finite entries.
  explicit BilinearForm(std::vector<Matrix> shape_ops);

  /// The zero form.
  static BilinearForm zero(int n, int m);

  int n() const { return n_; }
  int m() const { return static_cast<int>(ops_.size()); }

  const Matrix& shape_op(int a) const { return ops_[static_cast<std::size_t>(a)]; }
  std::span<const Matrix> shape_ops() const { return ops_; }

  BilinearForm scaled(double t) const;

  /// Number of free parameters: m * n(n+1)/2.
  int parameter_count() const { return m() * n_ * (n_ + 1) / 2; }
  /// Upper-triangular entries of each A_a, row-major, concatenated over a.
  Vector to_parameters() const;
  static BilinearForm from_parameters(int n, int m, const Vector& params);

  bool operator==(const BilinearForm& other) const;

 private:
  int n_ = 0;
  std::vector<Matrix> ops_;
};

/// Rank-4 tensor R[x1][x2][x3][x4] on R^n, dense storage.
class CurvatureTensor4 {
 public:
  explicit CurvatureTensor4(int n);

  int n() const { return n_; }
  double& operator()(int i, int j, int k, int l) { return data_[index(i, j, k, l)]; }
  double operator()(int i, int j, int k, int l) const { return data_[index(i, j, k, l)]; }

  /// Ric(x,y) = sum_i R(e_i, x, e_i, y).
  Matrix contract_13() const;

 private:
  std::size_t index(int i, int j, int k, int l) const {
    return ((static_cast<std::size_t>(i) * n_ + j) * n_ + k) * n_ + l;
  }
  int n_;
  std::vector<double> data_;
};

/// A_xi = sum_a xi_a A_a.
Matrix shape_operator(const BilinearForm& form, const Vector& xi);

struct FirstOrderInvariants {
  Vector mean_vector;  ///< (tr A_a / n)_a
  double H_sq = 0.0;
  double norm_sq = 0.0;  ///< sum_a ||A_a||_F^2
  BilinearForm traceless;
};

FirstOrderInvariants first_order_invariants(const BilinearForm& form);

/// Squared Frobenius norm of the whole form, sum_a ||A_a||_F^2.
double norm_sq(const BilinearForm& form);

/// True iff ||traceless|| <= tol * max(1, ||form||).
bool is_umbilical(const BilinearForm& form, double tol);

/// The DDVV equality family: A_1 = diag(l1+mu, l1-mu, l1, ...),
/// A_2 = l2*I with mu in the (1,2)/(2,1) slots, A_a = l_a*I for a >= 3.
/// `lambdas` must have length m (m >= 2).
BilinearForm wintgen_canonical_form(int n, int m, double mu, std::span<const double> lambdas);
BilinearForm wintgen_canonical_form(int n, int m, double mu);

/// A_1 = diag(mu, -mu, -sigma, sigma, ..., sigma),
/// A_2 = [[0, mu], [mu, 0]] (+) diag(-sigma, sigma, ..., sigma), A_a = 0 for a >= 3.
BilinearForm example1_form(int n, int m, double mu, double sigma);

/// Entries i.i.d. N(0, scale^2), then symmetrized. Deterministic per seed.
BilinearForm random_form(int n, int m, double scale, std::uint64_t seed);

/// phi KN psi for scalar bilinear forms given as n x n matrices.
CurvatureTensor4 kulkarni_nomizu(const Matrix& phi, const Matrix& psi);
/// beta KN gamma, pairing the W-components with the standard inner product.
CurvatureTensor4 kulkarni_nomizu(const BilinearForm& beta, const BilinearForm& gamma);

/// R_c(beta) = (c <,> KN <,> + beta KN beta) / 2.
CurvatureTensor4 formal_curvature_tensor(const BilinearForm& form, double c);

}  // namespace ddvv
