#include "ddvv/checks.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

#include "ddvv/curvature.hpp"
#include "ddvv/stratified.hpp"

namespace ddvv {
namespace {

constexpr std::array<std::array<int, 2>, 4> kShapes{{{3, 2}, {3, 3}, {4, 2}, {5, 3}}};

std::uint64_t sample_seed(std::uint64_t seed, int shape, int i) {
  return seed * 1000003ULL + static_cast<std::uint64_t>(shape) * 7919ULL * 1000000ULL + static_cast<std::uint64_t>(i);
}

PropertyResult ddvv_inequalities(const CheckSettings& s) {
  PropertyResult r{"ddvv and partial ddvv inequalities", true, 0, 0.0, ""};
  for (std::size_t sh = 0; sh < kShapes.size(); ++sh) {
    const auto [n, m] = kShapes[sh];
    for (int i = 0; i < s.samples; ++i) {
      const BilinearForm form = random_form(n, m, 1.0, sample_seed(s.seed, static_cast<int>(sh), i));
      const CurvatureReport rep = full_report(form, 0.0);
      const double slack = inequality_slack(rep.norm_sq, s.inequality_slack);
      for (int k = 1; k <= n; ++k) {
        const double d = rep.deficit(k, 1.0);
        r.worst = std::max(r.worst, -d / (1.0 + rep.norm_sq));
        if (d < -slack) r.passed = false;
      }
      ++r.samples;
    }
  }
  return r;
}

PropertyResult homogeneity(const CheckSettings& s) {
  PropertyResult r{"deficit degree-2 homogeneity and c-shift", true, 0, 0.0, ""};
  for (std::size_t sh = 0; sh < kShapes.size(); ++sh) {
    const auto [n, m] = kShapes[sh];
    for (int i = 0; i < s.samples / 10 + 1; ++i) {
      const BilinearForm form = random_form(n, m, 1.0, sample_seed(s.seed + 1, static_cast<int>(sh), i));
      for (int k = 1; k <= n; ++k) {
        const double d = deficit(form, 0.0, k, 1.0);
        for (double t : {0.5, 2.0, 10.0}) {
          const double dt = deficit(form.scaled(t), 0.0, k, 1.0);
          const double rel = std::abs(dt - t * t * d) / std::max(t * t * std::abs(d), 1e-300);
          if (std::abs(d) > 1e-12) r.worst = std::max(r.worst, rel);
          if (std::abs(d) > 1e-12 && rel > 1e-9) r.passed = false;
        }
        const double shifted = full_report(form, 1.0).deficit(k, 1.0) - full_report(form, 0.0).deficit(k, 1.0);
        if (std::abs(shifted) > 1e-10) r.passed = false;
      }
      ++r.samples;
    }
  }
  return r;
}

PropertyResult identities(const CheckSettings& s) {
  PropertyResult r{"Ricci contraction, trace and traceless-norm identities", true, 0, 0.0, ""};
  for (std::size_t sh = 0; sh < kShapes.size(); ++sh) {
    const auto [n, m] = kShapes[sh];
    for (int i = 0; i < s.samples / 10 + 1; ++i) {
      const BilinearForm form = random_form(n, m, 1.0, sample_seed(s.seed + 2, static_cast<int>(sh), i));
      const double c = 0.5;
      const Matrix ric = ricci_tensor(form, c);
      const double contraction = (formal_curvature_tensor(form, c).contract_13() - ric).cwiseAbs().maxCoeff();
      const CurvatureReport rep = full_report(form, c);
      const double trace = std::abs(ric.trace() - n * (n - 1.0) * rep.rho_n());
      const auto inv = first_order_invariants(form);
      const double bsc = std::abs(c + rep.H_sq - rep.rho_n() - norm_sq(inv.traceless) / (n * (n - 1.0)));
      const double worst = std::max({contraction, trace, bsc});
      r.worst = std::max(r.worst, worst);
      if (worst > 1e-10) r.passed = false;
      ++r.samples;
    }
  }
  return r;
}

PropertyResult psi_properties(const CheckSettings& s) {
  PropertyResult r{"psi_p homogeneity, nesting and stratum partition", true, 0, 0.0, ""};
  const SphereRule rule = build_sphere_rule(2, s.quad_nodes);
  for (int n : {3, 4, 5}) {
    for (int i = 0; i < s.samples / 50 + 1; ++i) {
      const BilinearForm form = random_form(n, 2, 1.0, sample_seed(s.seed + 3, n, i));
      std::vector<double> psi;
      for (int p = 0; 2 * p < n; ++p) {
        const StratifiedIntegral full = psi_p(form, p, rule, s.index_tol);
        psi.push_back(full.value);
        const double t = 2.0;
        const double scaled = psi_p_value(form.scaled(t), p, rule, s.index_tol);
        const double expect = std::pow(t, n) * full.value;
        const double rel = std::abs(scaled - expect) / std::max(expect, 1e-300);
        if (full.value > 0.0) r.worst = std::max(r.worst, rel);
        if (full.value > 0.0 && rel > 1e-6) r.passed = false;
      }
      for (std::size_t p = 1; p < psi.size(); ++p) {
        if (psi[p] > psi[p - 1] * (1.0 + 1e-12)) r.passed = false;
      }
      ++r.samples;
    }
  }
  return r;
}

}  // namespace

std::vector<PropertyResult> run_property_checks(const CheckSettings& settings) {
  std::vector<PropertyResult> out;
  out.push_back(ddvv_inequalities(settings));
  out.push_back(homogeneity(settings));
  out.push_back(identities(settings));
  out.push_back(psi_properties(settings));
  for (auto& r : out) {
    std::ostringstream d;
    d << r.samples << " samples, worst residual " << r.worst;
    r.detail = d.str();
  }
  return out;
}

}  // namespace ddvv
