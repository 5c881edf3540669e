#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "sasaki/cli.hpp"

using namespace sasaki;

namespace {

struct CliRun {
  int code;
  std::string out, err;
};

CliRun run(std::vector<std::string> args) {
  args.insert(args.begin(), "sasaki");
  std::ostringstream out, err;
  int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string config(const std::string& name) { return std::string(SASAKI_CONFIG_DIR) + "/" + name; }
std::string tmp(const std::string& name) { return std::string(SASAKI_TEST_TMP) + "/" + name; }

std::string write_tmp(const std::string& name, const std::string& text) {
  std::ofstream(tmp(name)) << text;
  return tmp(name);
}

std::string last_line(const std::string& path) {
  std::ifstream in(path);
  std::string line, last;
  while (std::getline(in, line))
    if (!line.empty()) last = line;
  return last;
}

}  // namespace

TEST(Cli, VerifyExitCodes) {
  CliRun z = run({"verify", "zero-section"});
  EXPECT_EQ(z.code, kExitPass) << z.out << z.err;
  EXPECT_NE(z.out.find("PASS"), std::string::npos);
  EXPECT_EQ(run({"verify", "killing-sphere"}).code, kExitPass);
  CliRun bad = run({"verify", "nope"});
  EXPECT_EQ(bad.code, kExitInvalid);
  EXPECT_NE(bad.err.find("unknown scenario"), std::string::npos);
  CliRun conflict = run({"verify", "zero-section", "--tol", "0.5"});
  EXPECT_EQ(conflict.code, kExitInvalid);
  EXPECT_NE(conflict.err.find("tolerance conflict"), std::string::npos);
  EXPECT_EQ(run({"verify", "zero-section", "--grid", "1"}).code, kExitInvalid);
  EXPECT_EQ(run({}).code, kExitInvalid);
  EXPECT_EQ(run({"--help"}).code, kExitPass);
}

TEST(Cli, VerifyWritesJson) {
  std::string path = tmp("lie-abelian.json");
  ASSERT_EQ(run({"verify", "lie-abelian", "--grid", "4", "--json", path}).code, kExitPass);
  std::ifstream in(path);
  nlohmann::json j = nlohmann::json::parse(in);
  EXPECT_EQ(j["name"], "lie-abelian");
  EXPECT_EQ(j["grid"]["per_dim"], 4);
  EXPECT_EQ(j["pass"], true);
}

TEST(Cli, ResidualFailsForKillingField) {
  std::string path = tmp("killing-residual.json");
  CliRun r = run({"residual", "--config", config("killing-rotation.json"), "--json", path});
  EXPECT_EQ(r.code, kExitFail) << r.out << r.err;
  std::ifstream in(path);
  nlohmann::json j = nlohmann::json::parse(in);
  EXPECT_EQ(j["points"].size(), 121u);
  EXPECT_EQ(j["status"], "fail");
}

TEST(Cli, ResidualPassesOnEquator) {
  CliRun r = run({"residual", "--config", config("sphere-equator.json"), "--json", tmp("equator.json")});
  EXPECT_EQ(r.code, kExitPass) << r.out << r.err;
}

TEST(Cli, ConfigErrorNamesField) {
  std::string bad = write_tmp("bad-immersion.json", R"({
    "manifold": {"builtin": "euclidean", "params": {"n": 2}},
    "patch": {"immersion": ["u1", "u1", "0"], "domain": {"lower": [0], "upper": [1]}},
    "field": {"builtin": "zero"}
  })");
  CliRun r = run({"residual", "--config", bad});
  EXPECT_EQ(r.code, kExitInvalid);
  EXPECT_NE(r.err.find("patch.immersion"), std::string::npos) << r.err;
  CliRun missing = run({"residual", "--config", tmp("does-not-exist.json")});
  EXPECT_EQ(missing.code, kExitInvalid);
  CliRun no_field = run({"residual", "--config", config("flat-geodesic.json")});
  EXPECT_EQ(no_field.code, kExitInvalid);
  EXPECT_NE(no_field.err.find("'field'"), std::string::npos) << no_field.err;
}

TEST(Cli, GeodesicFlatLastRow) {
  std::string csv = tmp("flat.csv");
  CliRun r = run({"geodesic", "--config", config("flat-geodesic.json"), "--sigma", "1", "--step", "1e-3", "--csv", csv,
               "--oracle"});
  EXPECT_EQ(r.code, kExitPass) << r.out << r.err;
  std::vector<double> row;
  std::stringstream ss(last_line(csv));
  for (std::string cell; std::getline(ss, cell, ',');) row.push_back(std::stod(cell));
  const std::vector<double> want{1, 1, 0, 1, 0, 0, 1, 0, 1, 2};
  ASSERT_EQ(row.size(), want.size());
  for (std::size_t k = 0; k < want.size(); ++k) EXPECT_NEAR(row[k], want[k], 1e-12) << "column " << k;
  EXPECT_NE(r.out.find("oracle max divergence"), std::string::npos);
}

TEST(Cli, GeodesicTruncatedAtBoundary) {
  std::string cfg = write_tmp("short-chart.json", R"({
    "manifold": {"builtin": "euclidean", "params": {"n": 2, "half_width": 0.5}},
    "geodesic": {"x": [0, 0], "xdot": [1, 0], "xi": [0, 0], "sigma": 2, "step": 0.01}
  })");
  CliRun r = run({"geodesic", "--config", cfg, "--csv", tmp("short.csv")});
  EXPECT_EQ(r.code, kExitFail);
  EXPECT_NE(r.out.find("truncated"), std::string::npos);
}

TEST(Cli, List) {
  CliRun r = run({"list"});
  EXPECT_EQ(r.code, kExitPass);
  for (const auto& s : scenario_registry()) EXPECT_NE(r.out.find(s.name), std::string::npos);
  EXPECT_NE(r.out.find("sphere-band"), std::string::npos);
}
