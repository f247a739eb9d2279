#include "ddvv/io.hpp"

#include <cmath>
#include <iomanip>
#include <limits>
#include <ostream>

#include "ddvv/errors.hpp"

namespace ddvv {
namespace {

int require_int(const Json& j, const char* field) {
  if (!j.contains(field)) throw ValidationError(std::string("form: missing field '") + field + "'");
  const Json& v = j.at(field);
  if (!v.is_number_integer()) throw ValidationError(std::string("form: field '") + field + "' must be an integer");
  return v.get<int>();
}

Json finite_or_null(double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); }

void csv_number(std::ostream& out, double x) { out << std::setprecision(17) << x; }

}  // namespace

Json to_json(const BilinearForm& form) {
  Json ops = Json::array();
  for (const auto& A : form.shape_ops()) {
    Json rows = Json::array();
    for (Eigen::Index i = 0; i < A.rows(); ++i) {
      Json row = Json::array();
      for (Eigen::Index k = 0; k < A.cols(); ++k) row.push_back(A(i, k));
      rows.push_back(std::move(row));
    }
    ops.push_back(std::move(rows));
  }
  return Json{{"n", form.n()}, {"m", form.m()}, {"shape_ops", std::move(ops)}};
}

BilinearForm form_from_json(const Json& j, double symmetry_tol) {
  if (!j.is_object()) throw ValidationError("form: expected a JSON object");
  const int n = require_int(j, "n");
  const int m = require_int(j, "m");
  if (n < 2) throw ValidationError("form: field 'n' must be >= 2");
  if (m < 1) throw ValidationError("form: field 'm' must be >= 1");
  if (!j.contains("shape_ops")) throw ValidationError("form: missing field 'shape_ops'");
  const Json& ops = j.at("shape_ops");
  if (!ops.is_array() || static_cast<int>(ops.size()) != m) {
    throw ValidationError("form: field 'shape_ops' must be an array of m = " + std::to_string(m) + " matrices");
  }
  std::vector<Matrix> mats;
  for (int a = 0; a < m; ++a) {
    const std::string path = "shape_ops[" + std::to_string(a) + "]";
    const Json& rows = ops[static_cast<std::size_t>(a)];
    if (!rows.is_array() || static_cast<int>(rows.size()) != n) {
      throw ValidationError("form: field '" + path + "' must have n = " + std::to_string(n) + " rows");
    }
    Matrix A(n, n);
    for (int i = 0; i < n; ++i) {
      const Json& row = rows[static_cast<std::size_t>(i)];
      const std::string rpath = path + "[" + std::to_string(i) + "]";
      if (!row.is_array() || static_cast<int>(row.size()) != n) {
        throw ValidationError("form: field '" + rpath + "' must have n = " + std::to_string(n) + " entries");
      }
      for (int k = 0; k < n; ++k) {
        const Json& v = row[static_cast<std::size_t>(k)];
        if (!v.is_number()) throw ValidationError("form: field '" + rpath + "[" + std::to_string(k) + "]' is not a number");
        A(i, k) = v.get<double>();
        if (!std::isfinite(A(i, k))) throw ValidationError("form: field '" + rpath + "[" + std::to_string(k) + "]' is not finite");
      }
    }
    const double scale = std::max(1.0, A.cwiseAbs().maxCoeff());
    const double asym = (A - A.transpose()).cwiseAbs().maxCoeff();
    if (asym > symmetry_tol * scale) {
      throw ValidationError("form: field '" + path + "' is not symmetric (max |A - A^T| = " + std::to_string(asym) + ")");
    }
    mats.push_back(std::move(A));
  }
  return BilinearForm(std::move(mats));
}

Json to_json(const CurvatureReport& r, double lam) {
  Json ddvv_deficits = Json::array();
  Json lam_deficits = Json::array();
  for (int k = 1; k <= r.n; ++k) {
    ddvv_deficits.push_back(r.deficit(k, 1.0));
    lam_deficits.push_back(r.deficit(k, lam));
  }
  return Json{{"n", r.n},
              {"m", r.m},
              {"c", r.c},
              {"H_sq", r.H_sq},
              {"norm_sq", r.norm_sq},
              {"traceless_norm_sq", r.traceless_norm_sq},
              {"eigenvalues", r.eigenvalues},
              {"rho_k", r.rho_k},
              {"rho_n", r.rho_n()},
              {"rho_perp", r.rho_perp},
              {"deficit_lam1", std::move(ddvv_deficits)},
              {"lam", lam},
              {"deficit_lam", std::move(lam_deficits)}};
}

Json to_json(const StratifiedIntegral& psi, const SphereRule& rule) {
  return Json{{"p", psi.p},
              {"n", psi.n},
              {"value", psi.value},
              {"error_estimate", psi.error_estimate},
              {"total", psi.total()},
              {"contributions", psi.contributions},
              {"degenerate_nodes", psi.degenerate_nodes},
              {"rule", Json{{"m", rule.m},
                            {"method", to_string(rule.method)},
                            {"target_nodes", rule.target_nodes},
                            {"nodes", rule.size()},
                            {"resolution", rule.resolution},
                            {"seed", rule.seed}}}};
}

Json to_json(const ConstantEstimate& e) {
  Json trace = Json::array();
  for (const auto& t : e.trace) {
    trace.push_back(Json{{"start", t.start},
                         {"seed", t.seed},
                         {"attempts", t.attempts},
                         {"feasible", t.feasible},
                         {"initial_quotient", finite_or_null(t.initial_quotient)},
                         {"best_quotient", finite_or_null(t.best_quotient)},
                         {"evaluations", t.evaluations},
                         {"iterations", t.iterations},
                         {"restarts", t.restarts}});
  }
  return Json{{"n", e.n},
              {"m", e.m},
              {"k", e.k},
              {"lam", e.lam},
              {"p", e.p},
              {"delta_upper", e.delta_upper},
              {"flagged_zero", e.flagged_zero},
              {"guaranteed_positive", e.guaranteed_positive},
              {"epsilon_upper", e.epsilon_upper},
              {"seed", e.seed},
              {"starts", e.starts},
              {"budget", e.budget},
              {"optimizer", e.optimizer},
              {"quadrature", Json{{"method", e.quadrature_method},
                                  {"target_nodes", e.quadrature_target_nodes},
                                  {"nodes", e.quadrature_nodes},
                                  {"index_tol", e.index_tol}}},
              {"minimizer", e.minimizer ? to_json(*e.minimizer) : Json(nullptr)},
              {"trace", std::move(trace)}};
}

Json to_json(const DeficitIntegral& d) {
  return Json{{"value", d.value},
              {"error_estimate", finite_or_null(d.error_estimate)},
              {"min_deficit", d.min_deficit},
              {"volume", d.volume},
              {"points", d.points}};
}

Json to_json(const TheoremConsistency& t) {
  return Json{{"integral", t.integral},
              {"betti_sum", t.betti_sum},
              {"epsilon_upper", t.epsilon_upper},
              {"rhs", t.rhs},
              {"below_rhs", t.below_rhs},
              {"geometry_bound", t.geometry_bound ? Json(*t.geometry_bound) : Json(nullptr)}};
}

void write_trace_csv(std::ostream& out, const ConstantEstimate& e) {
  out << "start,seed,attempts,feasible,initial_quotient,best_quotient,evaluations,iterations,restarts\n";
  for (const auto& t : e.trace) {
    out << t.start << ',' << t.seed << ',' << t.attempts << ',' << (t.feasible ? 1 : 0) << ',';
    csv_number(out, t.initial_quotient);
    out << ',';
    csv_number(out, t.best_quotient);
    out << ',' << t.evaluations << ',' << t.iterations << ',' << t.restarts << '\n';
  }
}

void write_sweep_csv(std::ostream& out, const Example1Sweep& s) {
  out << "sigma,deficit,deficit_closed_form,psi0,psi1,quotient\n";
  for (const auto& r : s.rows) {
    for (double v : {r.sigma, r.deficit, r.deficit_closed_form, r.psi0, r.psi1}) {
      csv_number(out, v);
      out << ',';
    }
    csv_number(out, r.quotient);
    out << '\n';
  }
}

void write_points_csv(std::ostream& out, const std::vector<PointSample>& samples, int k, double lam) {
  if (samples.empty()) return;
  const Eigen::Index n = samples.front().u.size();
  for (Eigen::Index i = 0; i < n; ++i) out << 'u' << (i + 1) << ',';
  out << "weight,H_sq,rho_k,rho_n,rho_perp,deficit\n";
  for (const auto& s : samples) {
    const CurvatureReport& r = s.geometry.report;
    for (Eigen::Index i = 0; i < n; ++i) {
      csv_number(out, s.u[i]);
      out << ',';
    }
    for (double v : {s.weight, r.H_sq, r.rho_k[static_cast<std::size_t>(k - 1)], r.rho_n(), r.rho_perp}) {
      csv_number(out, v);
      out << ',';
    }
    csv_number(out, r.deficit(k, lam));
    out << '\n';
  }
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace ddvv
