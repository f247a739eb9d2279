#pragma once

// Property suites over seeded random forms, run by `ddvvlab check`.

#include <cstdint>
#include <string>
#include <vector>

namespace ddvv {

struct PropertyResult {
  std::string name;
  bool passed = false;
  int samples = 0;
  double worst = 0.0;  ///< worst observed violation / residual
  std::string detail;
};

struct CheckSettings {
  int samples = 1000;
  std::uint64_t seed = 7;
  double inequality_slack = 1e-9;
  double index_tol = 1e-9;
  int quad_nodes = 512;  ///< m = 2 circle nodes for the psi checks
};

std::vector<PropertyResult> run_property_checks(const CheckSettings& settings);

}  // namespace ddvv
