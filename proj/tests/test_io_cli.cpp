#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "ddvv/cli.hpp"
#include "ddvv/config.hpp"
#include "ddvv/errors.hpp"
#include "ddvv/io.hpp"
#include "oracles.hpp"

using namespace ddvv;
namespace fs = std::filesystem;

namespace {

struct CliRun {
  int code;
  std::string out, err;
};

CliRun run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "ddvv_cli_test";
  fs::create_directories(dir);
  return dir / name;
}

std::string write(const std::string& name, const std::string& text) {
  const fs::path p = scratch(name);
  std::ofstream(p) << text;
  return p.string();
}

}  // namespace

TEST(Io, FormRoundTrip) {
  const BilinearForm f = random_form(4, 3, 1.0, 2);
  EXPECT_EQ(form_from_json(Json::parse(dump(to_json(f)))), f);
}

TEST(Io, FormDiagnosticsNameTheField) {
  try {
    form_from_json(Json::parse(R"({"n":2,"m":1,"shape_ops":[[[1,0],[0]]]})"));
    FAIL();
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("shape_ops[0][1]"), std::string::npos) << e.what();
  }
  EXPECT_THROW(form_from_json(Json::parse(R"({"n":2,"m":1,"shape_ops":[[[1,0.5],[0,1]]]})")), ValidationError);
  EXPECT_THROW(form_from_json(Json::parse(R"({"n":3,"m":1,"shape_ops":[[[1,0],[0,1]]]})")), ValidationError);
}

TEST(Io, ConfigRejectsUnknownKeysAndMissingSeeds) {
  EXPECT_THROW(load_run_config(Json::parse(R"({"quad_seed":1,"opt_seed":2,"colour":"red"})")), ValidationError);
  EXPECT_THROW(load_run_config(Json::parse(R"({"quad_seed":1})")), ValidationError);
  EXPECT_THROW(load_run_config(Json::parse(R"({"quad_seed":1,"opt_seed":2,"index_tol":0})")), ValidationError);
  const RunConfig c = load_run_config(Json::parse(R"({"quad_seed":3,"opt_seed":4,"quad_nodes":300})"));
  EXPECT_EQ(c.quad_nodes, 300);
  EXPECT_EQ(load_run_config(to_json(c)).opt_seed, 4u);
}

TEST(Cli, InvariantsOnWintgenForm) {
  const std::string path = write("wintgen.json", dump(to_json(wintgen_canonical_form(4, 3, 1.0))));
  const CliRun r = run({"invariants", "--form", path, "--c", "0"});
  ASSERT_EQ(r.code, 0) << r.err;
  const Json j = Json::parse(r.out);
  EXPECT_NEAR(j["deficit_lam1"][3].get<double>(), 0.0, 1e-12);
}

TEST(Cli, MalformedFormExitsOne) {
  const std::string path = write("malformed.json", R"({"n":2,"m":1,"shape_ops":[[[1,"x"],[0,1]]]})");
  const CliRun r = run({"invariants", "--form", path});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("shape_ops"), std::string::npos) << r.err;
  EXPECT_EQ(run({"invariants", "--form", write("bad.json", "{not json")}).code, 1);
}

TEST(Cli, UnknownFlagExitsOne) {
  EXPECT_EQ(run({"psi", "--bogus", "1"}).code, 1);
  EXPECT_EQ(run({}).code, 1);
}

TEST(Cli, NumericalFailureExitsTwo) {
  // A constant map has a degenerate metric at every grid point.
  std::string csv = "u1,u2,x1,x2,x3\n";
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j) csv += std::to_string(i) + "," + std::to_string(j) + ",1,2,3\n";
  const CliRun r = run({"immersion", "--grid", write("flat.csv", csv)});
  EXPECT_EQ(r.code, 2) << r.err << r.out;
}

TEST(Cli, Example1SweepDeficitColumn) {
  const CliRun r = run({"example1-sweep", "--n", "4", "--m", "2", "--mu", "1", "--nodes", "512"});
  ASSERT_EQ(r.code, 0) << r.err;
  std::istringstream in(r.out);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line.rfind("sigma,deficit", 0), 0u);
  int rows = 0;
  while (std::getline(in, line)) {
    std::istringstream cells(line);
    std::string s, d;
    std::getline(cells, s, ',');
    std::getline(cells, d, ',');
    const double sigma = std::stod(s);
    EXPECT_NEAR(std::stod(d), sigma * sigma / 3.0, 1e-8 * sigma * sigma / 3.0);
    ++rows;
  }
  EXPECT_EQ(rows, 4);
}

TEST(Cli, EstimateIsByteIdenticalAndFormsRoundTrip) {
  const std::vector<std::string> args{"estimate-delta", "--n", "3", "--m", "2", "--k", "1", "--starts", "3",
                                      "--budget", "100", "--nodes", "128"};
  const CliRun a = run(args), b = run(args);
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  const Json j = Json::parse(a.out);
  const BilinearForm f = form_from_json(j["minimizer"]);
  EXPECT_EQ(dump(to_json(f)), dump(j["minimizer"]));
}

TEST(Cli, ConfigAndOutputDirectory) {
  const fs::path dir = scratch("out");
  fs::remove_all(dir);
  const std::string cfg = write("cfg.json", R"({"quad_seed":1,"opt_seed":9,"opt_starts":2,"opt_budget":50,"quad_nodes":64})");
  const CliRun r = run({"--config", cfg, "--output-dir", dir.string(), "estimate-delta", "--n", "3", "--m", "2", "--k", "2"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(r.out.empty());
  EXPECT_TRUE(fs::exists(dir / "estimate.json"));
  EXPECT_TRUE(fs::exists(dir / "trace.csv"));
  std::ifstream in(dir / "estimate.json");
  const Json j = Json::parse(in);
  EXPECT_EQ(j["starts"].get<int>(), 2);
  EXPECT_EQ(j["seed"].get<int>(), 9);
  EXPECT_EQ(run({"--config", write("badcfg.json", R"({"opt_seed":1})"), "check"}).code, 1);
}

TEST(Cli, ImmersionWritesPointsAndSummary) {
  const fs::path dir = scratch("imm");
  fs::remove_all(dir);
  const CliRun r = run({"--output-dir", dir.string(), "immersion", "--builtin", "clifford", "--k", "2", "--lam", "1"});
  ASSERT_EQ(r.code, 0) << r.err;
  std::ifstream in(dir / "summary.json");
  const Json j = Json::parse(in);
  EXPECT_NEAR(j["integral"]["value"].get<double>(), 2.0 * std::numbers::pi * std::numbers::pi, 1e-3);
  EXPECT_TRUE(fs::exists(dir / "points.csv"));
  EXPECT_EQ(run({"immersion", "--builtin", "klein"}).code, 1);
}

TEST(Cli, CheckPasses) {
  const CliRun r = run({"check", "--samples", "50"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(Json::parse(r.out)["passed"].get<bool>());
}
