#include "ddvv/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "ddvv/checks.hpp"
#include "ddvv/config.hpp"
#include "ddvv/curvature.hpp"
#include "ddvv/delta.hpp"
#include "ddvv/errors.hpp"
#include "ddvv/immersion.hpp"
#include "ddvv/io.hpp"
#include "ddvv/stratified.hpp"

namespace ddvv {
namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

BilinearForm read_form(const std::string& path, double symmetry_tol) {
  Json j;
  try {
    j = Json::parse(read_file(path));
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError("form file '" + path + "': " + e.what());
  }
  try {
    return form_from_json(j, symmetry_tol);
  } catch (const ValidationError& e) {
    throw ValidationError("form file '" + path + "': " + e.what());
  }
}

template <typename T>
std::vector<T> parse_list(const std::string& text, const char* what) {
  std::vector<T> out;
  std::istringstream ss(text);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    std::istringstream cs(cell);
    T v{};
    if (!(cs >> v)) throw ValidationError(std::string("bad value '") + cell + "' in " + what);
    out.push_back(v);
  }
  if (out.empty()) throw ValidationError(std::string("empty list for ") + what);
  return out;
}

class Emitter {
 public:
  Emitter(std::string dir, std::ostream& out) : dir_(std::move(dir)), out_(out) {}

  // Primary payload: stdout unless an output directory is set.
  void primary(const std::string& filename, const std::string& content) {
    if (dir_.empty()) {
      out_ << content;
    } else {
      artifact(filename, content);
    }
  }

  // Secondary artifacts: only written with an output directory.
  void artifact(const std::string& filename, const std::string& content) {
    if (dir_.empty()) return;
    std::filesystem::create_directories(dir_);
    const auto path = std::filesystem::path(dir_) / filename;
    std::ofstream f(path);
    if (!f) throw ValidationError("cannot write '" + path.string() + "'");
    f << content;
  }

 private:
  std::string dir_;
  std::ostream& out_;
};

struct QuadFlags {
  int nodes = 0;
  std::string method;
  std::uint64_t seed = 0;
  CLI::Option* nodes_opt = nullptr;
  CLI::Option* method_opt = nullptr;
  CLI::Option* seed_opt = nullptr;

  void add(CLI::App* app) {
    nodes_opt = app->add_option("--nodes", nodes, "Sphere quadrature node budget");
    method_opt = app->add_option("--method", method, "auto | exact-pair | product-angular | monte-carlo");
    seed_opt = app->add_option("--seed", seed, "Seed for Monte Carlo rules");
  }

  SphereRule rule(int m, const RunConfig& cfg, int fallback_nodes) const {
    int target = nodes_opt->count() ? nodes : (cfg.quad_nodes > 0 ? cfg.quad_nodes : fallback_nodes);
    const SphereMethod mth = method_opt->count() ? parse_sphere_method(method) : cfg.quad_method;
    const std::uint64_t sd = seed_opt->count() ? seed : cfg.quad_seed;
    return build_sphere_rule(m, target, mth, sd);
  }
};

int default_estimation_nodes(int m) {
  if (m == 1) return 2;
  if (m == 2) return 256;
  if (m == 3) return 512;
  if (m == 4) return 1024;
  return 2000;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"ddvvlab: curvature invariants, stratified determinant integrals and constant estimation"};
  app.require_subcommand(1);

  std::string config_path;
  std::string output_dir;
  app.add_option("--config", config_path, "Flat JSON run configuration");
  auto* out_opt = app.add_option("--output-dir", output_dir, "Directory for JSON/CSV artifacts");

  // invariants
  auto* inv = app.add_subcommand("invariants", "Curvature report of one form");
  std::string inv_form;
  double inv_c = 0.0, inv_lam = 0.0;
  inv->add_option("--form", inv_form, "Form JSON file")->required();
  inv->add_option("--c", inv_c, "Ambient curvature parameter");
  inv->add_option("--lam", inv_lam, "Normal-curvature weight for the deficit_lam column");

  // psi
  auto* psi = app.add_subcommand("psi", "Index-stratified determinant integral psi_p");
  std::string psi_form;
  int psi_p_val = 0;
  QuadFlags psi_quad;
  psi->add_option("--form", psi_form, "Form JSON file")->required();
  psi->add_option("--p", psi_p_val, "Stratum parameter, 0 <= p < n/2");
  psi_quad.add(psi);

  // estimate-delta
  auto* est = app.add_subcommand("estimate-delta", "Upper bound on the universal constant delta");
  DeltaSettings ds;
  std::string optimizer = "nelder-mead";
  std::string trace_path;
  QuadFlags est_quad;
  est->add_option("--n", ds.n)->required();
  est->add_option("--m", ds.m)->required();
  est->add_option("--k", ds.k)->required();
  est->add_option("--lam", ds.lam);
  est->add_option("--p", ds.p);
  auto* starts_opt = est->add_option("--starts", ds.starts);
  auto* budget_opt = est->add_option("--budget", ds.budget, "Quotient evaluations per start");
  auto* opt_seed_opt = est->add_option("--opt-seed", ds.seed, "Seed for the random starts");
  est->add_option("--optimizer", optimizer, "nelder-mead | gradient-descent");
  est->add_option("--trace", trace_path, "Write the optimizer trace CSV here");
  est_quad.add(est);

  // example1-sweep
  auto* sweep = app.add_subcommand("example1-sweep", "Closed-form family: deficit, psi and quotient vs sigma");
  int sw_n = 4, sw_m = 2;
  double sw_mu = 1.0;
  std::string sw_sigmas = "1e-1,1e-2,1e-3,1e-4";
  QuadFlags sw_quad;
  sweep->add_option("--n", sw_n)->required();
  sweep->add_option("--m", sw_m)->required();
  sweep->add_option("--mu", sw_mu);
  sweep->add_option("--sigmas", sw_sigmas, "Comma-separated descending sigma values");
  sw_quad.add(sweep);

  // immersion
  auto* imm = app.add_subcommand("immersion", "Deficit integral over a built-in or sampled immersion");
  std::string builtin, grid_path, periodic_flags, resolution_text;
  int imm_k = 0;
  double imm_lam = 0.0, imm_c = 0.0, imm_h = 0.0;
  auto* builtin_opt = imm->add_option("--builtin", builtin, "sphere2 | sphere3 | clifford | torus3 | ellipsoid");
  auto* grid_opt = imm->add_option("--grid", grid_path, "CSV with columns u1..un,x1..xN on a tensor grid");
  builtin_opt->excludes(grid_opt);
  imm->add_option("--periodic", periodic_flags, "Per-axis periodicity for --grid, e.g. 1,0 (default all periodic)");
  imm->add_option("--k", imm_k, "Partial scalar curvature index (default n)");
  imm->add_option("--lam", imm_lam);
  imm->add_option("--c", imm_c);
  imm->add_option("--resolution", resolution_text, "Comma-separated grid points per axis");
  imm->set_help_flag("--help", "Print this help message and exit");
  imm->add_option("--h", imm_h, "Finite-difference step");

  // check
  auto* chk = app.add_subcommand("check", "Run the property suites on seeded random forms");
  CheckSettings cs;
  chk->add_option("--samples", cs.samples);
  auto* chk_seed = chk->add_option("--seed", cs.seed);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }

  try {
    RunConfig cfg;
    if (!config_path.empty()) cfg = load_run_config_file(config_path);
    if (out_opt->count()) cfg.output_dir = output_dir;
    cfg.validate();
    Emitter emit(cfg.output_dir, out);

    if (*inv) {
      const BilinearForm form = read_form(inv_form, cfg.symmetry_tol);
      emit.primary("invariants.json", dump(to_json(full_report(form, inv_c), inv_lam)));
    } else if (*psi) {
      const BilinearForm form = read_form(psi_form, cfg.symmetry_tol);
      const SphereRule rule = psi_quad.rule(form.m(), cfg, default_nodes(form.m()));
      const StratifiedIntegral result = ddvv::psi_p(form, psi_p_val, rule, cfg.index_tol);
      emit.primary("psi.json", dump(to_json(result, rule)));
    } else if (*est) {
      if (!starts_opt->count()) ds.starts = cfg.opt_starts;
      if (!budget_opt->count()) ds.budget = cfg.opt_budget;
      if (!opt_seed_opt->count()) ds.seed = cfg.opt_seed;
      ds.optimizer = parse_optimizer(optimizer);
      ds.index_tol = cfg.index_tol;
      const SphereRule rule = est_quad.rule(ds.m, cfg, default_estimation_nodes(ds.m));
      const ConstantEstimate e = estimate_delta(ds, rule);
      std::ostringstream trace;
      write_trace_csv(trace, e);
      emit.primary("estimate.json", dump(to_json(e)));
      emit.artifact("trace.csv", trace.str());
      if (!trace_path.empty()) {
        std::ofstream f(trace_path);
        if (!f) throw ValidationError("cannot write '" + trace_path + "'");
        f << trace.str();
      }
    } else if (*sweep) {
      const SphereRule rule = sw_quad.rule(sw_m, cfg, default_nodes(sw_m));
      const auto sigmas = parse_list<double>(sw_sigmas, "--sigmas");
      const Example1Sweep s = example1_sweep(sw_n, sw_m, sw_mu, sigmas, rule, cfg.index_tol);
      std::ostringstream csv;
      write_sweep_csv(csv, s);
      emit.primary("sweep.csv", csv.str());
      emit.artifact("sweep.json", dump(Json{{"n", s.n},
                                            {"m", s.m},
                                            {"mu", s.mu},
                                            {"quotient_p", s.quotient_p},
                                            {"I", s.I},
                                            {"slope", s.slope},
                                            {"expected_slope", 4.0 / s.n}}));
    } else if (*imm) {
      if (!builtin_opt->count() && !grid_opt->count()) throw ValidationError("immersion: give --builtin or --grid");
      std::vector<PointSample> samples;
      Json summary;
      int n = 0;
      if (builtin_opt->count()) {
        ParametricImmersion f = builtin_immersion(builtin);
        if (!resolution_text.empty()) f.resolution = parse_list<int>(resolution_text, "--resolution");
        if (imm_h > 0.0) f.h = imm_h;
        n = f.n;
        const int k = imm_k > 0 ? imm_k : n;
        const DeficitIntegral integral = deficit_integral(f, imm_c, k, imm_lam);
        samples = sample_grid(f, f.resolution, f.h, imm_c);
        summary = Json{{"name", f.name}, {"n", f.n}, {"m", f.m()}, {"k", k}, {"lam", imm_lam}, {"c", imm_c},
                       {"h", f.h}, {"resolution", f.resolution}, {"betti_sum", f.betti_sum ? Json(*f.betti_sum) : Json(nullptr)},
                       {"integral", to_json(integral)}};
      } else {
        std::vector<bool> periodic;
        if (!periodic_flags.empty()) {
          for (int v : parse_list<int>(periodic_flags, "--periodic")) periodic.push_back(v != 0);
        }
        const SampledImmersion s = load_sampled_immersion(read_file(grid_path), periodic);
        n = s.n;
        const int k = imm_k > 0 ? imm_k : n;
        samples = sample_grid(s, imm_c);
        DeficitIntegral integral = integrate_samples(samples, n, k, imm_lam);
        integral.error_estimate = std::numeric_limits<double>::quiet_NaN();
        summary = Json{{"name", grid_path}, {"n", s.n}, {"m", s.ambient_dim - s.n}, {"k", k}, {"lam", imm_lam},
                       {"c", imm_c}, {"integral", to_json(integral)}};
      }
      const int k = imm_k > 0 ? imm_k : n;
      if (k < 1 || k > n) throw ValidationError("immersion: --k must satisfy 1 <= k <= n");
      std::ostringstream csv;
      write_points_csv(csv, samples, k, imm_lam);
      emit.primary("summary.json", dump(summary));
      emit.artifact("points.csv", csv.str());
    } else if (*chk) {
      if (!chk_seed->count()) cs.seed = cfg.opt_seed;
      cs.inequality_slack = cfg.inequality_slack;
      cs.index_tol = cfg.index_tol;
      const auto results = run_property_checks(cs);
      Json arr = Json::array();
      bool all = true;
      for (const auto& r : results) {
        err << (r.passed ? "[PASS] " : "[FAIL] ") << r.name << " (" << r.detail << ")\n";
        arr.push_back(Json{{"name", r.name}, {"passed", r.passed}, {"samples", r.samples}, {"worst", r.worst}});
        all = all && r.passed;
      }
      emit.primary("check.json", dump(Json{{"passed", all}, {"checks", arr}}));
      return all ? 0 : 2;
    }
    return 0;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "numerical failure: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace ddvv
