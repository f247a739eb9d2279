#include "ddvv/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "ddvv/errors.hpp"

namespace ddvv {

void RunConfig::validate() const {
  if (quad_nodes < 0) throw ValidationError("config: quad_nodes must be >= 0");
  if (opt_starts < 1) throw ValidationError("config: opt_starts must be >= 1");
  if (opt_budget < 1) throw ValidationError("config: opt_budget must be >= 1");
  if (!(index_tol > 0.0)) throw ValidationError("config: index_tol must be > 0");
  if (!(symmetry_tol > 0.0)) throw ValidationError("config: symmetry_tol must be > 0");
  if (!(inequality_slack > 0.0)) throw ValidationError("config: inequality_slack must be > 0");
}

RunConfig load_run_config(const Json& j) {
  if (!j.is_object()) throw ValidationError("config: expected a JSON object");
  static const std::set<std::string> known = {"quad_nodes", "quad_method",  "quad_seed",        "opt_starts",
                                              "opt_budget", "opt_seed",     "index_tol",        "symmetry_tol",
                                              "inequality_slack", "output_dir"};
  for (const auto& [key, value] : j.items()) {
    if (!known.contains(key)) throw ValidationError("config: unknown key '" + key + "'");
  }
  for (const char* seed : {"quad_seed", "opt_seed"}) {
    if (!j.contains(seed)) throw ValidationError(std::string("config: missing mandatory seed '") + seed + "'");
  }
  RunConfig c;
  try {
    c.quad_nodes = j.value("quad_nodes", c.quad_nodes);
    c.quad_method = parse_sphere_method(j.value("quad_method", std::string("auto")));
    c.quad_seed = j.at("quad_seed").get<std::uint64_t>();
    c.opt_starts = j.value("opt_starts", c.opt_starts);
    c.opt_budget = j.value("opt_budget", c.opt_budget);
    c.opt_seed = j.at("opt_seed").get<std::uint64_t>();
    c.index_tol = j.value("index_tol", c.index_tol);
    c.symmetry_tol = j.value("symmetry_tol", c.symmetry_tol);
    c.inequality_slack = j.value("inequality_slack", c.inequality_slack);
    c.output_dir = j.value("output_dir", c.output_dir);
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("config: ") + e.what());
  }
  c.validate();
  return c;
}

RunConfig load_run_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open config file '" + path + "'");
  Json j;
  try {
    j = Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError("config file '" + path + "': " + e.what());
  }
  return load_run_config(j);
}

Json to_json(const RunConfig& c) {
  return Json{{"quad_nodes", c.quad_nodes},         {"quad_method", to_string(c.quad_method)},
              {"quad_seed", c.quad_seed},           {"opt_starts", c.opt_starts},
              {"opt_budget", c.opt_budget},         {"opt_seed", c.opt_seed},
              {"index_tol", c.index_tol},           {"symmetry_tol", c.symmetry_tol},
              {"inequality_slack", c.inequality_slack}, {"output_dir", c.output_dir}};
}

}  // namespace ddvv
