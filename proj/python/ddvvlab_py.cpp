#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ddvv/curvature.hpp"
#include "ddvv/delta.hpp"
#include "ddvv/errors.hpp"
#include "ddvv/form.hpp"
#include "ddvv/immersion.hpp"
#include "ddvv/io.hpp"
#include "ddvv/sphere_rule.hpp"
#include "ddvv/stratified.hpp"

namespace py = pybind11;
using namespace ddvv;

namespace {

BilinearForm form_from_list(const std::vector<Matrix>& ops) { return BilinearForm(ops); }

std::vector<Matrix> ops_of(const BilinearForm& f) { return {f.shape_ops().begin(), f.shape_ops().end()}; }

}  // namespace

PYBIND11_MODULE(_ddvv, mod) {
  mod.doc() = "Curvature invariants of second fundamental forms and DDVV-type deficits";

  py::register_exception<ValidationError>(mod, "ValidationError", PyExc_ValueError);
  py::register_exception<NumericalError>(mod, "NumericalError", PyExc_ArithmeticError);

  py::class_<BilinearForm>(mod, "BilinearForm")
      .def(py::init(&form_from_list), py::arg("shape_ops"))
      .def_property_readonly("n", &BilinearForm::n)
      .def_property_readonly("m", &BilinearForm::m)
      .def_property_readonly("shape_ops", &ops_of)
      .def("scaled", &BilinearForm::scaled, py::arg("t"))
      .def("to_json", [](const BilinearForm& f) { return dump(to_json(f)); })
      .def_static("from_json",
                  [](const std::string& text, double tol) { return form_from_json(Json::parse(text), tol); },
                  py::arg("text"), py::arg("symmetry_tol") = 1e-8)
      .def("__eq__", &BilinearForm::operator==)
      .def("__repr__", [](const BilinearForm& f) {
        return "<BilinearForm n=" + std::to_string(f.n()) + " m=" + std::to_string(f.m()) + ">";
      });

  mod.def("random_form", &random_form, py::arg("n"), py::arg("m"), py::arg("scale") = 1.0, py::arg("seed") = 0);
  mod.def("wintgen_canonical_form", py::overload_cast<int, int, double>(&wintgen_canonical_form), py::arg("n"),
          py::arg("m"), py::arg("mu"));
  mod.def("example1_form", &example1_form, py::arg("n"), py::arg("m"), py::arg("mu"), py::arg("sigma"));
  mod.def("norm_sq", &norm_sq);
  mod.def("is_umbilical", &is_umbilical, py::arg("form"), py::arg("tol") = 1e-12);

  mod.def("ricci_tensor", &ricci_tensor, py::arg("form"), py::arg("c") = 0.0);
  mod.def("ricci_eigenvalues", &ricci_eigenvalues, py::arg("form"), py::arg("c") = 0.0);
  mod.def("partial_scalar", &partial_scalar, py::arg("form"), py::arg("c"), py::arg("k"));
  mod.def("normal_scalar", &normal_scalar);
  mod.def("deficit", &deficit, py::arg("form"), py::arg("c"), py::arg("k"), py::arg("lam"));

  py::class_<CurvatureReport>(mod, "CurvatureReport")
      .def_readonly("n", &CurvatureReport::n)
      .def_readonly("m", &CurvatureReport::m)
      .def_readonly("c", &CurvatureReport::c)
      .def_readonly("H_sq", &CurvatureReport::H_sq)
      .def_readonly("norm_sq", &CurvatureReport::norm_sq)
      .def_readonly("eigenvalues", &CurvatureReport::eigenvalues)
      .def_readonly("rho_k", &CurvatureReport::rho_k)
      .def_readonly("rho_perp", &CurvatureReport::rho_perp)
      .def_property_readonly("rho_n", &CurvatureReport::rho_n)
      .def("deficit", &CurvatureReport::deficit, py::arg("k"), py::arg("lam"));
  mod.def("full_report", &full_report, py::arg("form"), py::arg("c") = 0.0);

  py::class_<SphereRule>(mod, "SphereRule")
      .def_readonly("m", &SphereRule::m)
      .def_property_readonly("method", [](const SphereRule& r) { return to_string(r.method); })
      .def_property_readonly("size", &SphereRule::size)
      .def_property_readonly("weight_sum", &SphereRule::weight_sum);
  mod.def(
      "sphere_rule",
      [](int m, int nodes, const std::string& method, std::uint64_t seed) {
        return build_sphere_rule(m, nodes, parse_sphere_method(method), seed);
      },
      py::arg("m"), py::arg("nodes"), py::arg("method") = "auto", py::arg("seed") = 1);
  mod.def("sphere_volume", &sphere_volume);

  py::class_<StratifiedIntegral>(mod, "StratifiedIntegral")
      .def_readonly("p", &StratifiedIntegral::p)
      .def_readonly("value", &StratifiedIntegral::value)
      .def_readonly("error_estimate", &StratifiedIntegral::error_estimate)
      .def_readonly("contributions", &StratifiedIntegral::contributions);
  mod.def("psi_p", &psi_p, py::arg("form"), py::arg("p"), py::arg("rule"), py::arg("tol") = kDefaultIndexTol);
  mod.def("example1_I_constant", &example1_I_constant);

  py::class_<ConstantEstimate>(mod, "ConstantEstimate")
      .def_readonly("delta_upper", &ConstantEstimate::delta_upper)
      .def_readonly("epsilon_upper", &ConstantEstimate::epsilon_upper)
      .def_readonly("flagged_zero", &ConstantEstimate::flagged_zero)
      .def_readonly("guaranteed_positive", &ConstantEstimate::guaranteed_positive)
      .def_readonly("minimizer", &ConstantEstimate::minimizer)
      .def("to_json", [](const ConstantEstimate& e) { return dump(to_json(e)); });
  mod.def(
      "estimate_delta",
      [](int n, int m, int k, double lam, int p, int starts, int budget, std::uint64_t seed,
         const std::string& optimizer, const SphereRule& rule) {
        DeltaSettings s;
        s.n = n;
        s.m = m;
        s.k = k;
        s.lam = lam;
        s.p = p;
        s.starts = starts;
        s.budget = budget;
        s.seed = seed;
        s.optimizer = parse_optimizer(optimizer);
        py::gil_scoped_release release;
        return estimate_delta(s, rule);
      },
      py::arg("n"), py::arg("m"), py::arg("k"), py::arg("lam"), py::arg("p"), py::arg("starts") = 32,
      py::arg("budget") = 2000, py::arg("seed") = 1, py::arg("optimizer") = "nelder-mead", py::arg("rule"));

  py::class_<DeficitIntegral>(mod, "DeficitIntegral")
      .def_readonly("value", &DeficitIntegral::value)
      .def_readonly("error_estimate", &DeficitIntegral::error_estimate)
      .def_readonly("min_deficit", &DeficitIntegral::min_deficit)
      .def_readonly("volume", &DeficitIntegral::volume)
      .def_readonly("points", &DeficitIntegral::points);
  mod.def(
      "builtin_deficit_integral",
      [](const std::string& name, int k, double lam, double c) {
        return deficit_integral(builtin_immersion(name), c, k, lam);
      },
      py::arg("name"), py::arg("k"), py::arg("lam"), py::arg("c") = 0.0);
  mod.def("builtin_names", &builtin_names);
}
