#include "ddvv/delta.hpp"

#include <cmath>
#include <cstdlib>
#include <limits>
#include <thread>

#include "ddvv/curvature.hpp"
#include "ddvv/errors.hpp"
#include "ddvv/optimize.hpp"

namespace ddvv {
namespace {

constexpr int kOversampling = 10;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t start_seed(std::uint64_t seed, int start, int attempt) {
  return splitmix64(splitmix64(seed) ^ (static_cast<std::uint64_t>(start) << 16) ^ static_cast<std::uint64_t>(attempt));
}

int resolve_threads(int requested, int work) {
  int t = requested;
  if (t <= 0) {
    if (const char* env = std::getenv("DDVV_THREADS")) t = std::atoi(env);
  }
  if (t <= 0) t = static_cast<int>(std::thread::hardware_concurrency());
  return std::max(1, std::min(t, work));
}

struct StartOutcome {
  StartTrace trace;
  Vector best_x;
};

}  // namespace

std::optional<double> quotient(const BilinearForm& form, int k, double lam, int p, const SphereRule& rule,
                               double index_tol, double feasibility_rel) {
  const double norm = std::sqrt(norm_sq(form));
  const double psi = psi_p_value(form, p, rule, index_tol);
  const double threshold = feasibility_rel * std::pow(norm, form.n());
  if (!(psi > threshold) || !(psi > 0.0)) return std::nullopt;
  return deficit(form, 0.0, k, lam) / std::pow(psi, 2.0 / form.n());
}

std::string to_string(OptimizerKind kind) {
  return kind == OptimizerKind::NelderMead ? "nelder-mead" : "gradient-descent";
}

OptimizerKind parse_optimizer(const std::string& name) {
  if (name == "nelder-mead") return OptimizerKind::NelderMead;
  if (name == "gradient-descent") return OptimizerKind::GradientDescent;
  throw ValidationError("unknown optimizer '" + name + "' (expected nelder-mead or gradient-descent)");
}

ConstantEstimate estimate_delta(const DeltaSettings& s, const SphereRule& rule) {
  if (s.n < 2 || s.m < 1) throw ValidationError("estimate_delta needs n >= 2 and m >= 1");
  if (s.k < 1 || s.k > s.n) throw ValidationError("estimate_delta needs 1 <= k <= n");
  if (!(s.lam >= 0.0 && s.lam <= 1.0)) throw ValidationError("estimate_delta needs lam in [0, 1]");
  if (s.p < 0 || 2 * s.p >= s.n) throw ValidationError("estimate_delta needs 0 <= p < n/2");
  if (s.starts < 1 || s.budget < 1) throw ValidationError("estimate_delta needs starts >= 1 and budget >= 1");
  if (rule.m != s.m) throw ValidationError("sphere rule dimension does not match m");

  const auto objective = [&](const Vector& x) {
    const double norm = x.norm();
    if (!(norm > 0.0) || !x.allFinite()) return std::numeric_limits<double>::infinity();
    const BilinearForm form = BilinearForm::from_parameters(s.n, s.m, x / norm);
    const auto q = quotient(form, s.k, s.lam, s.p, rule, s.index_tol);
    return q ? *q : std::numeric_limits<double>::infinity();
  };

  std::vector<StartOutcome> outcomes(static_cast<std::size_t>(s.starts));
  const auto run_start = [&](int i) {
    StartOutcome& out = outcomes[static_cast<std::size_t>(i)];
    out.trace.start = i;
    Vector x0;
    double q0 = std::numeric_limits<double>::infinity();
    for (int attempt = 0; attempt < kOversampling; ++attempt) {
      const std::uint64_t seed = start_seed(s.seed, i, attempt);
      const BilinearForm candidate = random_form(s.n, s.m, 1.0, seed);
      const double norm = std::sqrt(norm_sq(candidate));
      out.trace.attempts = attempt + 1;
      out.trace.seed = seed;
      if (!(norm > 0.0)) continue;
      x0 = candidate.to_parameters() / norm;
      q0 = objective(x0);
      if (std::isfinite(q0)) break;
    }
    if (!std::isfinite(q0)) return;
    out.trace.feasible = true;
    out.trace.initial_quotient = q0;

    MinimizeResult r;
    if (s.optimizer == OptimizerKind::NelderMead) {
      NelderMeadOptions opts;
      opts.max_evaluations = s.budget;
      r = nelder_mead(objective, x0, opts);
    } else {
      GradientDescentOptions opts;
      opts.max_evaluations = s.budget;
      r = fd_gradient_descent(objective, x0, opts);
    }
    out.best_x = r.x / r.x.norm();
    out.trace.best_quotient = r.value;
    out.trace.evaluations = r.evaluations;
    out.trace.iterations = r.iterations;
    out.trace.restarts = r.restarts;
  };

  const int threads = resolve_threads(s.threads, s.starts);
  if (threads == 1) {
    for (int i = 0; i < s.starts; ++i) run_start(i);
  } else {
    std::vector<std::jthread> pool;
    for (int t = 0; t < threads; ++t) {
      pool.emplace_back([&, t] {
        for (int i = t; i < s.starts; i += threads) run_start(i);
      });
    }
  }

  ConstantEstimate est;
  est.n = s.n;
  est.m = s.m;
  est.k = s.k;
  est.lam = s.lam;
  est.p = s.p;
  est.seed = s.seed;
  est.starts = s.starts;
  est.budget = s.budget;
  est.optimizer = to_string(s.optimizer);
  est.quadrature_method = to_string(rule.method);
  est.quadrature_target_nodes = rule.target_nodes;
  est.quadrature_nodes = static_cast<int>(rule.size());
  est.index_tol = s.index_tol;
  est.guaranteed_positive = (s.k <= s.n - 1 && s.lam == 1.0 && s.n >= 3) || (s.k == s.n && s.lam < 1.0);

  int best = -1;
  for (int i = 0; i < s.starts; ++i) {
    const StartOutcome& o = outcomes[static_cast<std::size_t>(i)];
    est.trace.push_back(o.trace);
    if (!o.trace.feasible) continue;
    if (best < 0 || o.trace.best_quotient < outcomes[static_cast<std::size_t>(best)].trace.best_quotient) best = i;
  }
  if (best < 0) {
    throw NumericalError("estimate_delta: every start was infeasible (psi_p below threshold on all " +
                         std::to_string(s.starts * kOversampling) + " sampled forms)");
  }
  const StartOutcome& winner = outcomes[static_cast<std::size_t>(best)];
  const BilinearForm raw = BilinearForm::from_parameters(s.n, s.m, winner.best_x);
  est.minimizer = raw.scaled(1.0 / std::sqrt(norm_sq(raw)));
  est.delta_upper = winner.trace.best_quotient;
  est.flagged_zero = est.delta_upper <= 1e-12;
  est.epsilon_upper = epsilon_from_delta(std::max(0.0, est.delta_upper), s.n, s.m, false);
  return est;
}

double epsilon_from_delta(double delta, int n, int m, bool c_positive) {
  if (!(delta >= 0.0)) throw ValidationError("epsilon_from_delta needs delta >= 0");
  const int d = n + m + (c_positive ? 1 : 0);
  return std::pow(delta, 0.5 * n) * sphere_volume(d);
}

double example1_deficit_coefficient(int n) {
  const double nn = n;
  return 4.0 * (3.0 * nn - 8.0) / (nn * nn * (nn - 1.0));
}

double regression_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw ValidationError("regression_slope needs >= 2 paired points");
  const double N = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= N;
  my /= N;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  if (!(sxx > 0.0)) throw ValidationError("regression_slope: x values are all equal");
  return sxy / sxx;
}

Example1Sweep example1_sweep(int n, int m, double mu, const std::vector<double>& sigmas, const SphereRule& rule,
                             double index_tol) {
  if (n < 3 || m < 2) throw ValidationError("example1_sweep needs n >= 3 and m >= 2");
  if (sigmas.size() < 2) throw ValidationError("example1_sweep needs at least two sigma values");
  for (std::size_t i = 0; i < sigmas.size(); ++i) {
    if (!(sigmas[i] > 0.0)) throw ValidationError("example1_sweep: sigma values must be > 0");
    if (i > 0 && !(sigmas[i] < sigmas[i - 1])) throw ValidationError("example1_sweep: sigma list must be strictly descending");
  }
  Example1Sweep sweep;
  sweep.n = n;
  sweep.m = m;
  sweep.mu = mu;
  sweep.quotient_p = n >= 4 ? 1 : 0;
  sweep.I = example1_I_constant(n, m, mu, rule);
  const double D = example1_deficit_coefficient(n);

  std::vector<double> log_sigma, log_q;
  for (double sigma : sigmas) {
    const BilinearForm form = example1_form(n, m, mu, sigma);
    SweepRow row;
    row.sigma = sigma;
    row.deficit = deficit(form, 0.0, n, 1.0);
    row.deficit_closed_form = D * sigma * sigma;
    row.psi0 = psi_p_value(form, 0, rule, index_tol);
    row.psi1 = n >= 4 ? psi_p_value(form, 1, rule, index_tol) : 0.0;
    const double psi = sweep.quotient_p == 1 ? row.psi1 : row.psi0;
    if (!(psi > 0.0)) throw NumericalError("example1_sweep: stratified integral vanished at sigma = " + std::to_string(sigma));
    row.quotient = row.deficit / std::pow(psi, 2.0 / n);
    sweep.rows.push_back(row);
    log_sigma.push_back(std::log(sigma));
    log_q.push_back(std::log(row.quotient));
  }
  sweep.slope = regression_slope(log_sigma, log_q);
  return sweep;
}

}  // namespace ddvv
