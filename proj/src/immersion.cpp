#include "ddvv/immersion.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <numeric>
#include <random>
#include <sstream>

#include "ddvv/errors.hpp"

namespace ddvv {
namespace {

Matrix inverse_sqrt_spd(const Matrix& G) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(G);
  if (es.info() != Eigen::Success) throw NumericalError("metric eigensolver failed");
  const Vector inv_sqrt = es.eigenvalues().cwiseSqrt().cwiseInverse();
  return es.eigenvectors() * inv_sqrt.asDiagonal() * es.eigenvectors().transpose();
}

Matrix random_orthogonal(int m, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Matrix X(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) X(i, j) = gauss(rng);
  Eigen::HouseholderQR<Matrix> qr(X);
  Matrix Q = qr.householderQ();
  const Matrix R = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < m; ++j) {
    if (R(j, j) < 0.0) Q.col(j) *= -1.0;
  }
  return Q;
}

// Pivoted Gram-Schmidt over ambient basis vectors against the tangent space.
Matrix normal_frame(const Matrix& tangent, const std::vector<int>& candidate_order) {
  const Eigen::Index N = tangent.rows();
  const Eigen::Index m = N - tangent.cols();
  Matrix frame(N, m);
  std::vector<bool> used(static_cast<std::size_t>(N), false);
  for (Eigen::Index a = 0; a < m; ++a) {
    double best_norm = -1.0;
    Vector best;
    int best_idx = -1;
    for (int idx : candidate_order) {
      if (used[static_cast<std::size_t>(idx)]) continue;
      Vector v = Vector::Unit(N, idx);
      for (int pass = 0; pass < 2; ++pass) {
        v -= tangent * (tangent.transpose() * v);
        if (a > 0) v -= frame.leftCols(a) * (frame.leftCols(a).transpose() * v);
      }
      const double nv = v.norm();
      if (nv > best_norm) {
        best_norm = nv;
        best = v;
        best_idx = idx;
      }
    }
    if (best_idx < 0 || best_norm < 1e-6) throw NumericalError("normal frame is rank deficient");
    used[static_cast<std::size_t>(best_idx)] = true;
    frame.col(a) = best / best_norm;
  }
  return frame;
}

std::vector<double> grid_axis(double lo, double hi, bool periodic, int count) {
  std::vector<double> out(static_cast<std::size_t>(count));
  const double step = (hi - lo) / count;
  for (int j = 0; j < count; ++j) out[static_cast<std::size_t>(j)] = lo + (periodic ? j : j + 0.5) * step;
  return out;
}

// Calls fn(multi_index) for every point of a tensor grid, last axis fastest.
template <typename Fn>
void for_each_index(const std::vector<int>& counts, Fn&& fn) {
  std::vector<int> idx(counts.size(), 0);
  for (int c : counts) {
    if (c <= 0) return;
  }
  while (true) {
    fn(idx);
    int axis = static_cast<int>(counts.size()) - 1;
    while (axis >= 0) {
      if (++idx[static_cast<std::size_t>(axis)] < counts[static_cast<std::size_t>(axis)]) break;
      idx[static_cast<std::size_t>(axis)] = 0;
      --axis;
    }
    if (axis < 0) return;
  }
}

}  // namespace

void ParametricImmersion::validate() const {
  if (n < 2) throw ValidationError(name + ": manifold dimension must be >= 2");
  if (ambient_dim <= n) throw ValidationError(name + ": ambient dimension must exceed n");
  const auto nn = static_cast<std::size_t>(n);
  if (lower.size() != nn || upper.size() != nn || periodic.size() != nn || resolution.size() != nn) {
    throw ValidationError(name + ": box, periodicity and resolution must have n entries");
  }
  for (std::size_t i = 0; i < nn; ++i) {
    if (!(upper[i] > lower[i])) throw ValidationError(name + ": empty parameter interval");
    if (resolution[i] < 4) throw ValidationError(name + ": resolution must be >= 4 per axis");
  }
  if (!(h > 0.0)) throw ValidationError(name + ": finite-difference step must be > 0");
  if (!map) throw ValidationError(name + ": missing map");
}

PointwiseGeometry geometry_from_stencil(int n, const std::function<Vector(std::span<const int>)>& at,
                                        std::span<const double> steps, double c, std::uint64_t frame_seed) {
  std::vector<int> off(static_cast<std::size_t>(n), 0);
  const auto eval = [&](int i, int si, int j, int sj) {
    std::fill(off.begin(), off.end(), 0);
    if (i >= 0) off[static_cast<std::size_t>(i)] += si;
    if (j >= 0) off[static_cast<std::size_t>(j)] += sj;
    return at(off);
  };
  const Vector f0 = eval(-1, 0, -1, 0);
  const Eigen::Index N = f0.size();
  if (N <= n) throw ValidationError("ambient dimension must exceed the manifold dimension");

  Matrix J(N, n);
  std::vector<Vector> hess(static_cast<std::size_t>(n * n));
  for (int i = 0; i < n; ++i) {
    const double hi = steps[static_cast<std::size_t>(i)];
    const Vector fp = eval(i, 1, -1, 0);
    const Vector fm = eval(i, -1, -1, 0);
    J.col(i) = (fp - fm) / (2.0 * hi);
    hess[static_cast<std::size_t>(i * n + i)] = (fp - 2.0 * f0 + fm) / (hi * hi);
    for (int j = 0; j < i; ++j) {
      const double hj = steps[static_cast<std::size_t>(j)];
      const Vector mixed = (eval(i, 1, j, 1) - eval(i, 1, j, -1) - eval(i, -1, j, 1) + eval(i, -1, j, -1)) / (4.0 * hi * hj);
      hess[static_cast<std::size_t>(i * n + j)] = mixed;
      hess[static_cast<std::size_t>(j * n + i)] = mixed;
    }
  }
  if (!J.allFinite() || !f0.allFinite()) throw NumericalError("non-finite immersion values");

  const Matrix G = J.transpose() * J;
  const double det = G.determinant();
  if (!(det > 1e-10)) {
    throw NumericalError("degenerate Gram matrix (det G = " + std::to_string(det) + ")");
  }
  const Matrix G_inv_sqrt = inverse_sqrt_spd(G);
  const Matrix tangent = J * G_inv_sqrt;

  std::vector<int> order(static_cast<std::size_t>(N));
  std::iota(order.begin(), order.end(), 0);
  std::mt19937_64 rng(frame_seed);
  if (frame_seed != 0) std::shuffle(order.begin(), order.end(), rng);
  Matrix frame = normal_frame(tangent, order);
  if (frame_seed != 0) frame = frame * random_orthogonal(static_cast<int>(frame.cols()), rng);

  std::vector<Matrix> ops;
  for (Eigen::Index a = 0; a < frame.cols(); ++a) {
    Matrix H(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) H(i, j) = hess[static_cast<std::size_t>(i * n + j)].dot(frame.col(a));
    ops.push_back(G_inv_sqrt * H * G_inv_sqrt);
  }
  BilinearForm form(std::move(ops));
  CurvatureReport report = full_report(form, c);
  return PointwiseGeometry{G, std::sqrt(det), std::move(form), std::move(report)};
}

PointwiseGeometry second_fundamental_form_at(const ParametricImmersion& f, const Vector& u, double c,
                                             std::uint64_t frame_seed) {
  f.validate();
  if (u.size() != f.n) throw ValidationError(f.name + ": parameter point has wrong dimension");
  for (int i = 0; i < f.n; ++i) {
    const auto ii = static_cast<std::size_t>(i);
    if (!f.periodic[ii] && (u[i] < f.lower[ii] || u[i] > f.upper[ii])) {
      throw ValidationError(f.name + ": parameter point outside the box on axis " + std::to_string(i));
    }
  }
  std::vector<double> steps(static_cast<std::size_t>(f.n), f.h);
  const auto at = [&](std::span<const int> off) {
    Vector x = u;
    for (int i = 0; i < f.n; ++i) x[i] += off[static_cast<std::size_t>(i)] * f.h;
    Vector y = f.map(x);
    if (y.size() != f.ambient_dim) throw ValidationError(f.name + ": map returned wrong ambient dimension");
    return y;
  };
  return geometry_from_stencil(f.n, at, steps, c, frame_seed);
}

std::vector<PointSample> sample_grid(const ParametricImmersion& f, std::span<const int> resolution, double h,
                                     double c, std::uint64_t frame_seed) {
  ParametricImmersion g = f;
  g.h = h;
  if (!resolution.empty()) g.resolution.assign(resolution.begin(), resolution.end());
  g.validate();
  std::vector<std::vector<double>> axes;
  double cell = 1.0;
  for (int i = 0; i < g.n; ++i) {
    const auto ii = static_cast<std::size_t>(i);
    axes.push_back(grid_axis(g.lower[ii], g.upper[ii], g.periodic[ii], g.resolution[ii]));
    cell *= (g.upper[ii] - g.lower[ii]) / g.resolution[ii];
  }
  std::vector<PointSample> out;
  out.reserve(static_cast<std::size_t>(std::accumulate(g.resolution.begin(), g.resolution.end(), 1, std::multiplies<>())));
  for_each_index(g.resolution, [&](const std::vector<int>& idx) {
    Vector u(g.n);
    for (int i = 0; i < g.n; ++i) u[i] = axes[static_cast<std::size_t>(i)][static_cast<std::size_t>(idx[static_cast<std::size_t>(i)])];
    PointwiseGeometry geo = second_fundamental_form_at(g, u, c, frame_seed);
    const double w = cell * geo.weight;
    out.push_back(PointSample{u, w, std::move(geo)});
  });
  return out;
}

DeficitIntegral integrate_samples(const std::vector<PointSample>& samples, int n, int k, double lam) {
  DeficitIntegral out;
  out.min_deficit = std::numeric_limits<double>::infinity();
  for (const auto& s : samples) {
    const CurvatureReport& r = s.geometry.report;
    const double d = r.deficit(k, lam);
    if (d < -inequality_slack(r.norm_sq)) {
      std::ostringstream msg;
      msg << "deficit dips to " << d << " at parameter point (";
      for (Eigen::Index i = 0; i < s.u.size(); ++i) msg << (i ? ", " : "") << s.u[i];
      msg << ") for k = " << k << ", lam = " << lam;
      throw NumericalError(msg.str());
    }
    out.min_deficit = std::min(out.min_deficit, d);
    out.value += std::pow(std::max(d, 0.0), 0.5 * n) * s.weight;
    out.volume += s.weight;
    ++out.points;
  }
  return out;
}

DeficitIntegral deficit_integral(const ParametricImmersion& f, double c, int k, double lam,
                                 std::span<const int> resolution, std::optional<double> h) {
  f.validate();
  if (k < 1 || k > f.n) throw ValidationError("deficit_integral needs 1 <= k <= n");
  if (!(lam >= 0.0 && lam <= 1.0)) throw ValidationError("deficit_integral needs lam in [0, 1]");
  std::vector<int> fine(resolution.begin(), resolution.end());
  if (fine.empty()) fine = f.resolution;
  const double step = h.value_or(f.h);
  std::vector<int> coarse;
  for (int r : fine) coarse.push_back(std::max(4, r / 2));

  DeficitIntegral out = integrate_samples(sample_grid(f, fine, step, c), f.n, k, lam);
  const DeficitIntegral half = integrate_samples(sample_grid(f, coarse, 2.0 * step, c), f.n, k, lam);
  out.error_estimate = std::abs(out.value - half.value);
  return out;
}

ConformalMap ConformalMap::dilation(double t) {
  if (!(t > 0.0)) throw ValidationError("dilation factor must be > 0");
  ConformalMap map;
  map.kind = Kind::Dilation;
  map.factor = t;
  return map;
}

ConformalMap ConformalMap::inversion(Vector center, double radius) {
  if (!(radius > 0.0)) throw ValidationError("inversion radius must be > 0");
  ConformalMap map;
  map.kind = Kind::Inversion;
  map.center = std::move(center);
  map.radius = radius;
  return map;
}

Vector ConformalMap::apply(const Vector& x) const {
  if (kind == Kind::Dilation) return factor * x;
  if (center.size() != x.size()) throw ValidationError("inversion center has wrong dimension");
  const Vector d = x - center;
  const double r2 = d.squaredNorm();
  if (!(r2 > 0.0)) throw NumericalError("inversion center lies on the immersion");
  return center + (radius * radius / r2) * d;
}

ParametricImmersion transformed(const ParametricImmersion& f, const ConformalMap& map) {
  ParametricImmersion g = f;
  g.name = f.name + (map.kind == ConformalMap::Kind::Dilation ? " (dilated)" : " (inverted)");
  auto inner = f.map;
  g.map = [inner, map](const Vector& u) { return map.apply(inner(u)); };
  return g;
}

ConformalCheck conformal_invariance_check(const ParametricImmersion& f, double lam, const ConformalMap& map,
                                          std::span<const int> resolution) {
  ConformalCheck out;
  out.before = deficit_integral(f, 0.0, f.n, lam, resolution).value;
  out.after = deficit_integral(transformed(f, map), 0.0, f.n, lam, resolution).value;
  const double denom = std::max(std::abs(out.before), 1e-300);
  out.rel_diff = std::abs(out.after - out.before) / denom;
  return out;
}

TheoremConsistency theorem_consistency_report(const ParametricImmersion& f, const ConstantEstimate& estimate) {
  if (f.n != estimate.n || f.m() != estimate.m) {
    throw ValidationError("theorem_consistency_report: immersion (n, m) = (" + std::to_string(f.n) + ", " +
                          std::to_string(f.m()) + ") does not match the estimate (" + std::to_string(estimate.n) +
                          ", " + std::to_string(estimate.m) + ")");
  }
  if (!f.betti_sum) throw ValidationError(f.name + ": no Betti sum supplied");
  TheoremConsistency out;
  out.integral = deficit_integral(f, 0.0, estimate.k, estimate.lam).value;
  out.betti_sum = *f.betti_sum;
  out.epsilon_upper = estimate.epsilon_upper;
  out.rhs = out.epsilon_upper * out.betti_sum;
  out.below_rhs = out.integral < out.rhs;
  if (out.betti_sum > 0) out.geometry_bound = out.integral / out.betti_sum;
  return out;
}

std::vector<double> observed_orders(std::span<const double> errors, double ratio) {
  std::vector<double> out;
  for (std::size_t i = 0; i + 1 < errors.size(); ++i) out.push_back(std::log(errors[i] / errors[i + 1]) / std::log(ratio));
  return out;
}

ParametricImmersion round_sphere(int n, double radius) {
  if (n < 2) throw ValidationError("round_sphere needs n >= 2");
  if (!(radius > 0.0)) throw ValidationError("round_sphere needs radius > 0");
  ParametricImmersion f;
  f.name = "sphere" + std::to_string(n);
  f.n = n;
  f.ambient_dim = n + 1;
  for (int i = 0; i < n - 1; ++i) {
    f.lower.push_back(0.0);
    f.upper.push_back(std::numbers::pi);
    f.periodic.push_back(false);
    f.resolution.push_back(n == 2 ? 48 : 24);
  }
  f.lower.push_back(0.0);
  f.upper.push_back(2.0 * std::numbers::pi);
  f.periodic.push_back(true);
  f.resolution.push_back(n == 2 ? 96 : 48);
  f.betti_sum = 0;
  f.map = [n, radius](const Vector& u) {
    Vector x(n + 1);
    double s = 1.0;
    for (int i = 0; i < n - 1; ++i) {
      x[i] = s * std::cos(u[i]);
      s *= std::sin(u[i]);
    }
    x[n - 1] = s * std::cos(u[n - 1]);
    x[n] = s * std::sin(u[n - 1]);
    return Vector(radius * x);
  };
  return f;
}

ParametricImmersion flat_torus(int k) {
  if (k < 2) throw ValidationError("flat_torus needs k >= 2");
  ParametricImmersion f;
  f.name = k == 2 ? "clifford" : "torus" + std::to_string(k);
  f.n = k;
  f.ambient_dim = 2 * k;
  f.lower.assign(static_cast<std::size_t>(k), 0.0);
  f.upper.assign(static_cast<std::size_t>(k), 2.0 * std::numbers::pi);
  f.periodic.assign(static_cast<std::size_t>(k), true);
  f.resolution.assign(static_cast<std::size_t>(k), k == 2 ? 64 : 32);
  f.betti_sum = (1 << k) - 2;  // sum of binomial(k, i) for 1 <= i <= k-1
  const double r = 1.0 / std::sqrt(static_cast<double>(k));
  f.map = [k, r](const Vector& u) {
    Vector x(2 * k);
    for (int i = 0; i < k; ++i) {
      x[2 * i] = r * std::cos(u[i]);
      x[2 * i + 1] = r * std::sin(u[i]);
    }
    return x;
  };
  return f;
}

ParametricImmersion clifford_torus() { return flat_torus(2); }

ParametricImmersion triaxial_ellipsoid() {
  ParametricImmersion f;
  f.name = "ellipsoid";
  f.n = 2;
  f.ambient_dim = 4;
  f.lower = {0.0, 0.0};
  f.upper = {std::numbers::pi, 2.0 * std::numbers::pi};
  f.periodic = {false, true};
  f.resolution = {48, 96};
  f.betti_sum = 0;
  // Fixed rotation of R^4 so the ellipsoid is not aligned with a coordinate hyperplane.
  const double a = 0.4, b = 0.7;
  Matrix R1 = Matrix::Identity(4, 4), R2 = Matrix::Identity(4, 4);
  R1(0, 0) = std::cos(a); R1(0, 3) = -std::sin(a); R1(3, 0) = std::sin(a); R1(3, 3) = std::cos(a);
  R2(1, 1) = std::cos(b); R2(1, 3) = -std::sin(b); R2(3, 1) = std::sin(b); R2(3, 3) = std::cos(b);
  const Matrix R = R2 * R1;
  f.map = [R](const Vector& u) {
    Vector x(4);
    x << 1.0 * std::cos(u[0]), 1.5 * std::sin(u[0]) * std::cos(u[1]), 2.0 * std::sin(u[0]) * std::sin(u[1]), 0.0;
    return Vector(R * x);
  };
  return f;
}

std::vector<std::string> builtin_names() { return {"sphere2", "sphere3", "clifford", "torus3", "ellipsoid"}; }

ParametricImmersion builtin_immersion(const std::string& name) {
  if (name == "sphere2") return round_sphere(2);
  if (name == "sphere3") return round_sphere(3);
  if (name == "clifford") return clifford_torus();
  if (name == "torus3") return flat_torus(3);
  if (name == "ellipsoid") return triaxial_ellipsoid();
  std::string known;
  for (const auto& s : builtin_names()) known += (known.empty() ? "" : ", ") + s;
  throw ValidationError("unknown built-in immersion '" + name + "' (known: " + known + ")");
}

SampledImmersion load_sampled_immersion(const std::string& csv_text, std::vector<bool> periodic) {
  std::istringstream in(csv_text);
  std::string line;
  const auto split = [](const std::string& s) {
    std::vector<std::string> out;
    std::string cell;
    std::istringstream ss(s);
    while (std::getline(ss, cell, ',')) {
      cell.erase(0, cell.find_first_not_of(" \t\r"));
      cell.erase(cell.find_last_not_of(" \t\r") + 1);
      out.push_back(cell);
    }
    return out;
  };
  if (!std::getline(in, line)) throw ValidationError("grid file: missing header row");
  const auto header = split(line);
  SampledImmersion s;
  for (const auto& h : header) {
    if (!h.empty() && h[0] == 'u') {
      if (s.ambient_dim > 0) throw ValidationError("grid file: parameter columns must precede ambient columns");
      ++s.n;
    } else if (!h.empty() && h[0] == 'x') {
      ++s.ambient_dim;
    } else {
      throw ValidationError("grid file: unexpected column '" + h + "' (expected u1..un, x1..xN)");
    }
  }
  if (s.n < 2 || s.ambient_dim <= s.n) throw ValidationError("grid file: need n >= 2 parameters and more ambient columns");
  if (periodic.empty()) periodic.assign(static_cast<std::size_t>(s.n), true);
  if (static_cast<int>(periodic.size()) != s.n) throw ValidationError("grid file: periodicity flags must have n entries");
  s.periodic = periodic;

  std::vector<std::vector<double>> rows;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto cells = split(line);
    if (cells.size() != header.size()) {
      throw ValidationError("grid file line " + std::to_string(line_no) + ": expected " + std::to_string(header.size()) + " columns");
    }
    std::vector<double> row;
    for (const auto& c : cells) {
      try {
        row.push_back(std::stod(c));
      } catch (const std::exception&) {
        throw ValidationError("grid file line " + std::to_string(line_no) + ": bad number '" + c + "'");
      }
    }
    rows.push_back(std::move(row));
  }

  std::vector<std::map<double, int>> index_of_value(static_cast<std::size_t>(s.n));
  for (int a = 0; a < s.n; ++a) {
    std::vector<double> vals;
    for (const auto& r : rows) vals.push_back(r[static_cast<std::size_t>(a)]);
    std::sort(vals.begin(), vals.end());
    vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
    if (vals.size() < 4) throw ValidationError("grid file: axis u" + std::to_string(a + 1) + " needs >= 4 distinct values");
    const double step = vals[1] - vals[0];
    for (std::size_t i = 1; i < vals.size(); ++i) {
      if (std::abs(vals[i] - vals[i - 1] - step) > 1e-9 * std::max(1.0, std::abs(step)) + 1e-12) {
        throw ValidationError("grid file: axis u" + std::to_string(a + 1) + " is not uniformly spaced");
      }
    }
    for (std::size_t i = 0; i < vals.size(); ++i) index_of_value[static_cast<std::size_t>(a)][vals[i]] = static_cast<int>(i);
    s.axes.push_back(std::move(vals));
  }
  std::size_t total = 1;
  for (const auto& ax : s.axes) total *= ax.size();
  if (rows.size() != total) {
    throw ValidationError("grid file: " + std::to_string(rows.size()) + " rows do not form a full tensor grid of " + std::to_string(total) + " points");
  }
  s.points.assign(total, Vector());
  for (const auto& r : rows) {
    std::size_t flat = 0;
    for (int a = 0; a < s.n; ++a) {
      flat = flat * s.axes[static_cast<std::size_t>(a)].size() +
             static_cast<std::size_t>(index_of_value[static_cast<std::size_t>(a)].at(r[static_cast<std::size_t>(a)]));
    }
    Vector x(s.ambient_dim);
    for (int i = 0; i < s.ambient_dim; ++i) x[i] = r[static_cast<std::size_t>(s.n + i)];
    if (s.points[flat].size() != 0) throw ValidationError("grid file: duplicate grid point");
    s.points[flat] = std::move(x);
  }
  return s;
}

std::vector<PointSample> sample_grid(const SampledImmersion& s, double c) {
  std::vector<int> counts;
  std::vector<double> steps;
  double cell = 1.0;
  for (int a = 0; a < s.n; ++a) {
    const auto& ax = s.axes[static_cast<std::size_t>(a)];
    counts.push_back(static_cast<int>(ax.size()));
    steps.push_back(ax[1] - ax[0]);
    cell *= ax[1] - ax[0];
  }
  const auto flat_index = [&](const std::vector<int>& idx) {
    std::size_t flat = 0;
    for (int a = 0; a < s.n; ++a) {
      const int N = counts[static_cast<std::size_t>(a)];
      int i = idx[static_cast<std::size_t>(a)];
      if (s.periodic[static_cast<std::size_t>(a)]) i = ((i % N) + N) % N;
      flat = flat * static_cast<std::size_t>(N) + static_cast<std::size_t>(i);
    }
    return flat;
  };
  std::vector<PointSample> out;
  for_each_index(counts, [&](const std::vector<int>& idx) {
    for (int a = 0; a < s.n; ++a) {
      if (!s.periodic[static_cast<std::size_t>(a)] &&
          (idx[static_cast<std::size_t>(a)] == 0 || idx[static_cast<std::size_t>(a)] == counts[static_cast<std::size_t>(a)] - 1)) {
        return;
      }
    }
    std::vector<int> probe(idx);
    const auto at = [&](std::span<const int> off) {
      for (int a = 0; a < s.n; ++a) probe[static_cast<std::size_t>(a)] = idx[static_cast<std::size_t>(a)] + off[static_cast<std::size_t>(a)];
      return s.points[flat_index(probe)];
    };
    PointwiseGeometry geo = geometry_from_stencil(s.n, at, steps, c);
    Vector u(s.n);
    for (int a = 0; a < s.n; ++a) u[a] = s.axes[static_cast<std::size_t>(a)][static_cast<std::size_t>(idx[static_cast<std::size_t>(a)])];
    const double w = cell * geo.weight;
    out.push_back(PointSample{u, w, std::move(geo)});
  });
  return out;
}

}  // namespace ddvv
