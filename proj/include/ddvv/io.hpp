#pragma once

// JSON and CSV encodings of the library's value types.

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "ddvv/curvature.hpp"
#include "ddvv/delta.hpp"
#include "ddvv/immersion.hpp"
#include "ddvv/stratified.hpp"

namespace ddvv {

using Json = nlohmann::json;

/// {"n": int, "m": int, "shape_ops": [[[row-major reals]]]}
Json to_json(const BilinearForm& form);

/// Parses the form schema. Diagnostics name the offending field path, e.g.
/// "shape_ops[1][0][2]". Inputs whose asymmetry exceeds
/// symmetry_tol * max(1, max|A|) are rejected; smaller asymmetry is averaged out.
BilinearForm form_from_json(const Json& j, double symmetry_tol = 1e-8);

/// Flat report: scalars plus per-k arrays, and deficits at lam = 1 and lam.
Json to_json(const CurvatureReport& report, double lam = 0.0);

Json to_json(const StratifiedIntegral& psi, const SphereRule& rule);
Json to_json(const ConstantEstimate& estimate);
Json to_json(const DeficitIntegral& integral);
Json to_json(const TheoremConsistency& report);

void write_trace_csv(std::ostream& out, const ConstantEstimate& estimate);
void write_sweep_csv(std::ostream& out, const Example1Sweep& sweep);
void write_points_csv(std::ostream& out, const std::vector<PointSample>& samples, int k, double lam);

/// Deterministic text form: 2-space indent, trailing newline.
std::string dump(const Json& j);

}  // namespace ddvv
