#pragma once

// Grid-sampled immersions f: M^n -> R^{n+m} of compact manifolds, pointwise
// second fundamental forms by central differences, and integrals of the
// deficit (c + H^2 - lam*rho_perp - rho_k)^{n/2} dM over the manifold.

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ddvv/curvature.hpp"
#include "ddvv/delta.hpp"
#include "ddvv/form.hpp"

namespace ddvv {

struct ParametricImmersion {
  std::string name;
  int n = 0;            ///< manifold dimension
  int ambient_dim = 0;  ///< n + m
  std::vector<double> lower, upper;
  std::vector<bool> periodic;
  std::function<Vector(const Vector&)> map;
  double h = 1e-3;              ///< finite-difference step
  std::vector<int> resolution;  ///< grid points per axis
  std::optional<int> betti_sum;  ///< sum_{i=1}^{n-1} b_i, when known

  int m() const { return ambient_dim - n; }
  /// Throws ValidationError on inconsistent metadata.
  void validate() const;
};

struct PointwiseGeometry {
  Matrix metric;        ///< G = J^T J
  double weight = 0.0;  ///< sqrt(det G)
  BilinearForm form;    ///< shape operators G^{-1/2} H_a G^{-1/2} in an orthonormal normal frame
  CurvatureReport report;
};

/// Geometry from a finite-difference stencil: `at(offset)` returns f at
/// u + sum_i offset[i] * steps[i] * e_i for offsets in {-1, 0, 1}^n.
/// A nonzero frame_seed permutes the Gram-Schmidt candidate order and rotates
/// the normal frame by a random orthogonal matrix.
PointwiseGeometry geometry_from_stencil(int n, const std::function<Vector(std::span<const int>)>& at,
                                        std::span<const double> steps, double c, std::uint64_t frame_seed = 0);

PointwiseGeometry second_fundamental_form_at(const ParametricImmersion& f, const Vector& u, double c = 0.0,
                                             std::uint64_t frame_seed = 0);

struct PointSample {
  Vector u;
  double weight = 0.0;  ///< quadrature weight times sqrt(det G)
  PointwiseGeometry geometry;
};

/// Geometry on the quadrature grid: periodic axes use N equispaced points,
/// bounded axes use N cell midpoints.
std::vector<PointSample> sample_grid(const ParametricImmersion& f, std::span<const int> resolution, double h,
                                     double c = 0.0, std::uint64_t frame_seed = 0);

struct DeficitIntegral {
  double value = 0.0;
  double error_estimate = 0.0;  ///< |I(N, h) - I(N/2, 2h)|
  double min_deficit = 0.0;     ///< pointwise minimum of the deficit
  double volume = 0.0;
  int points = 0;
};

/// Quadrature of max(deficit, 0)^{n/2} sqrt(det G). Throws NumericalError
/// when the pointwise deficit dips below -1e-9 (1 + ||beta||^2).
DeficitIntegral deficit_integral(const ParametricImmersion& f, double c, int k, double lam,
                                 std::span<const int> resolution = {}, std::optional<double> h = std::nullopt);

/// Integrates precomputed samples (shared by the CLI's per-point output).
DeficitIntegral integrate_samples(const std::vector<PointSample>& samples, int n, int k, double lam);

struct ConformalMap {
  enum class Kind { Dilation, Inversion };
  Kind kind = Kind::Dilation;
  double factor = 1.0;  ///< dilation x -> factor * x
  Vector center;        ///< inversion x -> center + radius^2 (x - center) / |x - center|^2
  double radius = 1.0;

  static ConformalMap dilation(double t);
  static ConformalMap inversion(Vector center, double radius = 1.0);
  Vector apply(const Vector& x) const;
};

ParametricImmersion transformed(const ParametricImmersion& f, const ConformalMap& map);

struct ConformalCheck {
  double before = 0.0;
  double after = 0.0;
  double rel_diff = 0.0;
};

/// Compares the k = n deficit integral before and after a conformal map.
ConformalCheck conformal_invariance_check(const ParametricImmersion& f, double lam, const ConformalMap& map,
                                          std::span<const int> resolution = {});

struct TheoremConsistency {
  double integral = 0.0;
  int betti_sum = 0;
  double epsilon_upper = 0.0;
  double rhs = 0.0;             ///< epsilon_upper * betti_sum
  bool below_rhs = false;       ///< integral < rhs: flagged, not a failure
  std::optional<double> geometry_bound;  ///< integral / betti_sum, an upper bound on the true epsilon
};

TheoremConsistency theorem_consistency_report(const ParametricImmersion& f, const ConstantEstimate& estimate);

/// Convergence orders log(e_i / e_{i+1}) / log(ratio) along a refinement ladder.
std::vector<double> observed_orders(std::span<const double> errors, double ratio = 2.0);

// Built-in catalog.
ParametricImmersion round_sphere(int n, double radius = 1.0);
/// (cos u, sin u, cos v, sin v) / sqrt(2) in R^4.
ParametricImmersion clifford_torus();
/// k^{-1/2} (S^1)^k in R^{2k}.
ParametricImmersion flat_torus(int k);
/// Triaxial ellipsoid with semi-axes (1, 1.5, 2), rotated into R^4.
ParametricImmersion triaxial_ellipsoid();
ParametricImmersion builtin_immersion(const std::string& name);
std::vector<std::string> builtin_names();

/// Tensor grid of samples read from CSV, header u1..un,x1..xN.
struct SampledImmersion {
  int n = 0;
  int ambient_dim = 0;
  std::vector<std::vector<double>> axes;  ///< sorted parameter values per axis
  std::vector<bool> periodic;
  std::vector<Vector> points;  ///< row-major over axes (last axis fastest)
  std::optional<int> betti_sum;
};

SampledImmersion load_sampled_immersion(const std::string& csv_text, std::vector<bool> periodic);

/// Central differences on grid neighbours with step = grid spacing. Bounded
/// axes lose their first and last samples to the stencil.
std::vector<PointSample> sample_grid(const SampledImmersion& s, double c = 0.0);

}  // namespace ddvv
