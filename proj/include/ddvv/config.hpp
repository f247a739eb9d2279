#pragma once

#include <cstdint>
#include <string>

#include "ddvv/io.hpp"
#include "ddvv/sphere_rule.hpp"

namespace ddvv {

/// One flat configuration shared by every subcommand; CLI flags override it.
struct RunConfig {
  int quad_nodes = 0;  ///< 0: per-dimension default
  SphereMethod quad_method = SphereMethod::Auto;
  std::uint64_t quad_seed = 1;

  int opt_starts = 32;
  int opt_budget = 2000;
  std::uint64_t opt_seed = 7;

  double index_tol = 1e-9;
  double symmetry_tol = 1e-8;
  double inequality_slack = 1e-9;

  std::string output_dir;  ///< empty: write the primary payload to stdout

  /// Throws ValidationError unless every tolerance is > 0 and budgets are positive.
  void validate() const;
};

/// Reads a flat JSON object. A config file must name both seeds
/// ("quad_seed", "opt_seed"); unknown keys are rejected.
RunConfig load_run_config(const Json& j);
RunConfig load_run_config_file(const std::string& path);

Json to_json(const RunConfig& config);

}  // namespace ddvv
