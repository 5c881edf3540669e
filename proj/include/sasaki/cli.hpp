#pragma once

/**
 * @file cli.hpp
 * @brief Command-line surface: verify, residual, geodesic, list.
 *
 * Exit codes carry the outcome:
 *   0  pass
 *   1  fail (residual above tolerance, truncated geodesic, oracle divergence)
 *   2  inconclusive
 *   3  invalid invocation, configuration or input/output
 */

#include <CLI11.hpp>
#include <fstream>
#include <nlohmann/json.hpp>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "sasaki/config.hpp"
#include "sasaki/scenarios.hpp"

namespace sasaki {

enum ExitCode : int { kExitPass = 0, kExitFail = 1, kExitInconclusive = 2, kExitInvalid = 3 };

namespace cli_detail {

inline int exit_code(Verdict v) {
  switch (v) {
    case Verdict::Pass: return kExitPass;
    case Verdict::Fail: return kExitFail;
    case Verdict::Inconclusive: return kExitInconclusive;
  }
  return kExitFail;
}

inline void write_file(const std::string& path, const std::string& text) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw ConfigError("<output>", "cannot write '" + path + "'");
  os << text;
  if (!os) throw ConfigError("<output>", "failed writing '" + path + "'");
}

inline std::string point_text(const std::vector<double>& p) {
  std::string s = "(";
  for (std::size_t i = 0; i < p.size(); ++i) s += (i ? ", " : "") + format_double(p[i]);
  return s + ")";
}

inline int verify(const std::string& name, int grid, double tol, const std::string& json_path, std::ostream& out) {
  ScenarioOverrides o;
  if (grid > 0) o.grid = grid;
  if (tol > 0.0) o.tol = tol;
  ScenarioReport r = run_scenario(name, o);
  out << "scenario " << r.name << ": " << (r.status == Verdict::Pass ? "PASS" : r.status == Verdict::Fail ? "FAIL" : "INCONCLUSIVE")
      << " (expectation " << to_string(r.expectation) << ", " << r.samples << " samples)\n";
  out << "  max residual " << format_double(r.max_residual.value) << " at " << point_text(r.max_residual.location) << " ["
      << r.max_residual.part << "]\n";
  out << "  min residual " << format_double(r.min_residual.value) << " at " << point_text(r.min_residual.location) << " ["
      << r.min_residual.part << "]\n";
  for (const auto& [k, v] : r.measurements) out << "  " << k << " = " << format_double(v) << "\n";
  for (const auto& n : r.notes) out << "  note: " << n << "\n";
  if (!json_path.empty()) write_file(json_path, r.to_json().dump(2) + "\n");
  return exit_code(r.status);
}

inline int residual(const std::string& config_path, std::string json_path, std::ostream& out) {
  RunConfig cfg = load_config_file(config_path);
  if (!cfg.field) throw ConfigError("field", "is required for the residual command");
  if (json_path.empty()) json_path = cfg.json_path;
  const FieldAlongPatch& f = *cfg.field;
  nlohmann::json points = nlohmann::json::array();
  double worst = -1.0, best = std::numeric_limits<double>::infinity();
  std::vector<double> worst_at, best_at;
  Verdict overall = Verdict::Pass;
  for (const auto& u : grid_points(f.patch.domain, cfg.grid_per_dim, cfg.grid_margin)) {
    TGReport rep = tg_residuals(f, u, cfg.tolerances);
    std::vector<double> at(u.data(), u.data() + u.size());
    if (rep.residual() > worst) worst = rep.residual(), worst_at = at;
    if (rep.residual() < best) best = rep.residual(), best_at = at;
    if (rep.verdict == Verdict::Fail) overall = Verdict::Fail;
    if (rep.verdict == Verdict::Inconclusive && overall == Verdict::Pass) overall = Verdict::Inconclusive;
    points.push_back({{"u", at},
                      {"res_a", rep.res_a},
                      {"res_b", rep.res_b},
                      {"frame_cond", rep.frame_cond},
                      {"verdict", rep.verdict == Verdict::Pass ? "pass" : rep.verdict == Verdict::Fail ? "fail" : "inconclusive"}});
  }
  std::string st = overall == Verdict::Pass ? "pass" : overall == Verdict::Fail ? "fail" : "inconclusive";
  out << "residual over " << points.size() << " samples: " << st << "\n";
  out << "  max residual " << format_double(worst) << " at " << point_text(worst_at) << "\n";
  out << "  min residual " << format_double(best) << " at " << point_text(best_at) << "\n";
  if (overall == Verdict::Inconclusive) out << "  note: " << to_string(Verdict::Inconclusive) << "\n";
  if (!json_path.empty()) {
    nlohmann::json doc{{"config", config_path},
                       {"pass", overall == Verdict::Pass},
                       {"status", st},
                       {"grid", {{"per_dim", cfg.grid_per_dim}, {"margin", cfg.grid_margin}, {"samples", points.size()}}},
                       {"tolerances", {{"pass", cfg.tolerances.pass}, {"fail", cfg.tolerances.fail}}},
                       {"max_residual", {{"value", worst}, {"location", worst_at}}},
                       {"min_residual", {{"value", best}, {"location", best_at}}},
                       {"points", points}};
    write_file(json_path, doc.dump(2) + "\n");
  }
  return exit_code(overall);
}

inline int geodesic(const std::string& config_path, double sigma, double step, std::string csv_path, bool oracle,
                    std::ostream& out) {
  RunConfig cfg = load_config_file(config_path);
  if (!cfg.geodesic) throw ConfigError("geodesic", "is required for the geodesic command");
  if (sigma <= 0.0) sigma = cfg.sigma;
  if (step <= 0.0) step = cfg.step;
  if (csv_path.empty()) csv_path = cfg.csv_path;
  if (csv_path.empty()) throw ConfigError("output.csv", "no CSV path given (use --csv or output.csv)");
  Trace t = integrate(cfg.manifold, *cfg.geodesic, sigma, step);
  std::ostringstream csv;
  write_trace_csv(csv, t);
  write_file(csv_path, csv.str());
  const auto& last = t.back();
  out << "geodesic: " << t.records.size() - 1 << " steps to sigma = " << format_double(last.sigma) << "\n";
  out << "  final x  " << format_point(last.state.x) << "\n";
  out << "  final xi " << format_point(last.state.xi) << "\n";
  out << "  energy drift " << format_double(t.energy_drift) << "\n";
  int code = kExitPass;
  if (t.boundary_exit) {
    out << "  truncated: left the chart domain before sigma = " << format_double(sigma) << "\n";
    code = kExitFail;
  }
  if (oracle) {
    Trace o = oracle_integrate(cfg.manifold, *cfg.geodesic, sigma, step, 1e-3);
    double d = max_state_divergence(t, o);
    out << "  oracle max divergence " << format_double(d) << "\n";
    if (!(d <= 1e-6)) code = kExitFail;
  }
  return code;
}

inline int list(std::ostream& out) {
  out << "scenarios:\n";
  for (const auto& s : scenario_registry()) out << "  " << s.name << "  [" << to_string(s.expectation) << "]  " << s.summary << "\n";
  out << "builtin manifolds:\n";
  for (const auto& n : charts::builtin_names()) out << "  " << n << "\n";
  out << "builtin patches:\n  identity\n";
  out << "builtin fields:\n  zero\n  constant\n";
  return kExitPass;
}

}  // namespace cli_detail

/// Runs the command line `args` (args[0] is the program name).
inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Sasaki-metric geometry of vector fields along submanifolds"};
  app.require_subcommand(1);

  std::string scenario, json_path, config_path, csv_path;
  int grid = 0;
  double tol = 0.0, sigma = 0.0, step = 0.0;
  bool oracle = false;

  auto* verify = app.add_subcommand("verify", "run a named scenario");
  verify->add_option("scenario", scenario, "scenario name (see `list`)")->required();
  verify->add_option("--grid", grid, "points per parameter dimension")->check(CLI::Range(2, 201));
  verify->add_option("--tol", tol, "pass tolerance")->check(CLI::PositiveNumber);
  verify->add_option("--json", json_path, "write the report as JSON");

  auto* residual = app.add_subcommand("residual", "totally-geodesic residuals over the configured grid");
  residual->add_option("--config", config_path, "JSON run configuration")->required();
  residual->add_option("--json", json_path, "write per-point residuals as JSON");

  auto* geodesic = app.add_subcommand("geodesic", "integrate a Sasaki geodesic and write its trace");
  geodesic->add_option("--config", config_path, "JSON run configuration")->required();
  geodesic->add_option("--sigma", sigma, "final parameter value")->check(CLI::PositiveNumber);
  geodesic->add_option("--step", step, "RK4 step")->check(CLI::PositiveNumber);
  geodesic->add_option("--csv", csv_path, "trace output path");
  geodesic->add_flag("--oracle", oracle, "cross-check against the 2n-dimensional geodesic oracle");

  app.add_subcommand("list", "registered scenarios and builtins");

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  if (argv.empty()) argv.push_back("sasaki");
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitPass : kExitInvalid;
  }

  try {
    if (*verify) return cli_detail::verify(scenario, grid, tol, json_path, out);
    if (*residual) return cli_detail::residual(config_path, json_path, out);
    if (*geodesic) return cli_detail::geodesic(config_path, sigma, step, csv_path, oracle, out);
    return cli_detail::list(out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalid;
  }
}

}  // namespace sasaki
