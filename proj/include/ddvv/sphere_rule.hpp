#pragma once

// Quadrature rules on the unit sphere S^{m-1} in R^m.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "ddvv/form.hpp"

namespace ddvv {

enum class SphereMethod {
  Auto,            ///< pick by dimension
  ExactPair,       ///< m = 1: the two points +1, -1 with unit weights
  ProductAngular,  ///< m = 2: uniform circle grid; m = 3, 4: Gauss-Legendre polar angles x uniform azimuth
  MonteCarlo,      ///< seeded uniform samples with equal weights
};

std::string to_string(SphereMethod method);
SphereMethod parse_sphere_method(std::string_view name);

struct SphereRule {
  int m = 0;
  SphereMethod method = SphereMethod::Auto;
  std::vector<Vector> nodes;
  std::vector<double> weights;
  int target_nodes = 0;           ///< requested size; the half-resolution rule uses target_nodes / 2
  std::vector<int> resolution;    ///< per-angle counts (polar..., azimuth) or {N}
  std::uint64_t seed = 0;

  std::size_t size() const { return nodes.size(); }
  double weight_sum() const;
};

/// Vol(S^{d-1}) = 2 pi^{d/2} / Gamma(d/2), the area of the unit sphere in R^d.
double sphere_volume(int d);

/// Gauss-Legendre nodes and weights on [-1, 1].
void gauss_legendre(int count, std::vector<double>& nodes, std::vector<double>& weights);

/// Smallest `target_nodes` accepted for the resolved method.
int minimum_nodes(int m, SphereMethod method);

/// Default budgets: m=2 -> 4096, m=3,4 -> ~1e4, m>4 -> 1e5 Monte Carlo samples.
int default_nodes(int m);

/// Resolves Auto, validates, and builds the rule. Throws ValidationError when
/// the method does not apply to m or target_nodes is below the minimum.
SphereRule build_sphere_rule(int m, int target_nodes, SphereMethod method = SphereMethod::Auto,
                             std::uint64_t seed = 0);

/// The same construction at half the node budget (for error estimates).
SphereRule half_resolution(const SphereRule& rule);

}  // namespace ddvv
