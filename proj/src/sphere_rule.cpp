#include "ddvv/sphere_rule.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "ddvv/errors.hpp"

namespace ddvv {
namespace {

constexpr int kMinPolar = 8;

SphereMethod resolve(int m, SphereMethod method) {
  if (method != SphereMethod::Auto) return method;
  if (m == 1) return SphereMethod::ExactPair;
  if (m <= 4) return SphereMethod::ProductAngular;
  return SphereMethod::MonteCarlo;
}

// Gauss-Legendre rule mapped to [0, pi].
void polar_rule(int count, std::vector<double>& angles, std::vector<double>& weights) {
  std::vector<double> x, w;
  gauss_legendre(count, x, w);
  angles.resize(x.size());
  weights.resize(w.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    angles[i] = 0.5 * std::numbers::pi * (x[i] + 1.0);
    weights[i] = 0.5 * std::numbers::pi * w[i];
  }
}

void build_circle(SphereRule& rule, int count) {
  rule.resolution = {count};
  const double step = 2.0 * std::numbers::pi / count;
  for (int j = 0; j < count; ++j) {
    const double t = (j + 0.5) * step;
    Vector u(2);
    u << std::cos(t), std::sin(t);
    rule.nodes.push_back(u);
    rule.weights.push_back(step);
  }
}

void build_s2(SphereRule& rule, int target) {
  const int np = std::max(kMinPolar, static_cast<int>(std::lround(std::sqrt(target / 2.0))));
  const int na = 2 * np;
  rule.resolution = {np, na};
  std::vector<double> th, wt;
  polar_rule(np, th, wt);
  const double step = 2.0 * std::numbers::pi / na;
  for (int i = 0; i < np; ++i) {
    for (int j = 0; j < na; ++j) {
      const double phi = (j + 0.5) * step;
      Vector u(3);
      u << std::cos(th[i]), std::sin(th[i]) * std::cos(phi), std::sin(th[i]) * std::sin(phi);
      rule.nodes.push_back(u);
      rule.weights.push_back(wt[i] * std::sin(th[i]) * step);
    }
  }
}

void build_s3(SphereRule& rule, int target) {
  const int np = std::max(kMinPolar, static_cast<int>(std::lround(std::cbrt(target / 2.0))));
  const int na = 2 * np;
  rule.resolution = {np, np, na};
  std::vector<double> th, wt;
  polar_rule(np, th, wt);
  const double step = 2.0 * std::numbers::pi / na;
  for (int i = 0; i < np; ++i) {
    const double s1 = std::sin(th[i]);
    for (int k = 0; k < np; ++k) {
      const double s2 = std::sin(th[k]);
      for (int j = 0; j < na; ++j) {
        const double phi = (j + 0.5) * step;
        Vector u(4);
        u << std::cos(th[i]), s1 * std::cos(th[k]), s1 * s2 * std::cos(phi), s1 * s2 * std::sin(phi);
        rule.nodes.push_back(u);
        rule.weights.push_back(wt[i] * wt[k] * s1 * s1 * s2 * step);
      }
    }
  }
}

void build_monte_carlo(SphereRule& rule, int count) {
  rule.resolution = {count};
  std::mt19937_64 rng(rule.seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const double w = sphere_volume(rule.m) / count;
  for (int s = 0; s < count; ++s) {
    Vector u(rule.m);
    double norm = 0.0;
    do {
      for (int a = 0; a < rule.m; ++a) u[a] = gauss(rng);
      norm = u.norm();
    } while (norm < 1e-12);
    rule.nodes.push_back(u / norm);
    rule.weights.push_back(w);
  }
}

}  // namespace

std::string to_string(SphereMethod method) {
  switch (method) {
    case SphereMethod::Auto: return "auto";
    case SphereMethod::ExactPair: return "exact-pair";
    case SphereMethod::ProductAngular: return "product-angular";
    case SphereMethod::MonteCarlo: return "monte-carlo";
  }
  return "auto";
}

SphereMethod parse_sphere_method(std::string_view name) {
  if (name == "auto") return SphereMethod::Auto;
  if (name == "exact-pair") return SphereMethod::ExactPair;
  if (name == "product-angular") return SphereMethod::ProductAngular;
  if (name == "monte-carlo") return SphereMethod::MonteCarlo;
  throw ValidationError("unknown sphere rule method '" + std::string(name) +
                        "' (expected auto, exact-pair, product-angular, monte-carlo)");
}

double SphereRule::weight_sum() const {
  double s = 0.0;
  for (double w : weights) s += w;
  return s;
}

double sphere_volume(int d) {
  if (d < 1) throw ValidationError("sphere_volume needs ambient dimension >= 1");
  return 2.0 * std::pow(std::numbers::pi, 0.5 * d) / std::tgamma(0.5 * d);
}

void gauss_legendre(int count, std::vector<double>& nodes, std::vector<double>& weights) {
  if (count < 1) throw ValidationError("gauss_legendre needs at least one node");
  nodes.assign(static_cast<std::size_t>(count), 0.0);
  weights.assign(static_cast<std::size_t>(count), 0.0);
  for (int i = 0; i < (count + 1) / 2; ++i) {
    // Newton iteration on P_count from the Chebyshev-like initial guess.
    double x = std::cos(std::numbers::pi * (i + 0.75) / (count + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= count; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (count == 1) p0 = 1.0;
      dp = count * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    // refresh the derivative at the converged root
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= count; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = count * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    nodes[static_cast<std::size_t>(i)] = -x;
    nodes[static_cast<std::size_t>(count - 1 - i)] = x;
    weights[static_cast<std::size_t>(i)] = w;
    weights[static_cast<std::size_t>(count - 1 - i)] = w;
  }
}

int minimum_nodes(int m, SphereMethod method) {
  switch (resolve(m, method)) {
    case SphereMethod::ExactPair: return 0;
    case SphereMethod::ProductAngular:
      if (m == 2) return 4;
      if (m == 3) return 2 * kMinPolar * kMinPolar;
      return 2 * kMinPolar * kMinPolar * kMinPolar;
    case SphereMethod::MonteCarlo: return 2;
    case SphereMethod::Auto: break;
  }
  return 0;
}

int default_nodes(int m) {
  if (m == 1) return 2;
  if (m == 2) return 4096;
  if (m <= 4) return 10000;
  return 100000;
}

SphereRule build_sphere_rule(int m, int target_nodes, SphereMethod method, std::uint64_t seed) {
  if (m < 1) throw ValidationError("sphere rule needs m >= 1");
  SphereRule rule;
  rule.m = m;
  rule.method = resolve(m, method);
  rule.seed = seed;
  rule.target_nodes = target_nodes;
  if (rule.method == SphereMethod::ExactPair && m != 1) {
    throw ValidationError("exact-pair rule applies only to m = 1");
  }
  if (rule.method == SphereMethod::ProductAngular && (m < 2 || m > 4)) {
    throw ValidationError("product-angular rule applies only to 2 <= m <= 4, got m = " + std::to_string(m));
  }
  if (rule.method == SphereMethod::MonteCarlo && m < 2) {
    throw ValidationError("monte-carlo rule needs m >= 2");
  }
  if (target_nodes < minimum_nodes(m, rule.method)) {
    throw ValidationError("target_nodes = " + std::to_string(target_nodes) + " is below the minimum " +
                          std::to_string(minimum_nodes(m, rule.method)) + " for " + to_string(rule.method) +
                          " at m = " + std::to_string(m));
  }
  switch (rule.method) {
    case SphereMethod::ExactPair: {
      // S^0 = {+1, -1}; integration reduces to summation.
      rule.resolution = {2};
      Vector plus(1), minus(1);
      plus << 1.0;
      minus << -1.0;
      rule.nodes = {plus, minus};
      rule.weights = {1.0, 1.0};
      break;
    }
    case SphereMethod::ProductAngular:
      if (m == 2) build_circle(rule, target_nodes);
      else if (m == 3) build_s2(rule, target_nodes);
      else build_s3(rule, target_nodes);
      break;
    case SphereMethod::MonteCarlo: build_monte_carlo(rule, target_nodes); break;
    case SphereMethod::Auto: break;
  }
  return rule;
}

SphereRule half_resolution(const SphereRule& rule) {
  const int half = std::max(rule.target_nodes / 2, minimum_nodes(rule.m, rule.method));
  return build_sphere_rule(rule.m, half, rule.method, rule.seed);
}

}  // namespace ddvv
