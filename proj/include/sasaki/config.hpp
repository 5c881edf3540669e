#pragma once

/**
 * @file config.hpp
 * @brief JSON run configuration: manifold, patch, field, grid, tolerances,
 * differentiation step, geodesic initial state and output paths.
 *
 * Every rejection is a ConfigError whose path names the offending field,
 * e.g. "manifold.metric[1]" or "geodesic.xi". The schema is documented in
 * README.md; unknown keys are rejected so typos do not pass silently.
 */

#include <fstream>
#include <nlohmann/json.hpp>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "sasaki/charts.hpp"
#include "sasaki/expression.hpp"
#include "sasaki/field_geometry.hpp"
#include "sasaki/geodesic.hpp"

namespace sasaki {

class ConfigError : public Error {
 public:
  ConfigError(std::string path, const std::string& message)
      : Error("config field '" + path + "': " + message), path_(std::move(path)) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

struct RunConfig {
  ChartedManifold manifold;
  SubmanifoldPatch patch;
  std::optional<FieldAlongPatch> field;
  int grid_per_dim = 11;
  double grid_margin = 0.1;
  Tolerances tolerances;
  double diff_step = 1e-4;
  std::optional<BundleGeodesicState> geodesic;
  double sigma = 1.0;
  double step = 1e-3;
  std::string json_path;
  std::string csv_path;
};

namespace config_detail {

using nlohmann::json;

inline std::string join(const std::string& path, const std::string& key) { return path.empty() ? key : path + "." + key; }
inline std::string index(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }

inline void allow_keys(const json& obj, const std::string& path, std::initializer_list<const char*> keys) {
  if (!obj.is_object()) throw ConfigError(path.empty() ? "<root>" : path, "must be an object");
  std::set<std::string> allowed(keys.begin(), keys.end());
  for (const auto& [k, v] : obj.items())
    if (!allowed.count(k)) throw ConfigError(join(path, k), "unknown key");
}

inline const json& require(const json& obj, const std::string& path, const char* key) {
  if (!obj.contains(key)) throw ConfigError(join(path, key), "is required");
  return obj.at(key);
}

inline double number(const json& v, const std::string& path) {
  if (!v.is_number()) throw ConfigError(path, "must be a number");
  return v.get<double>();
}

inline double positive(const json& v, const std::string& path) {
  double d = number(v, path);
  if (!(d > 0.0)) throw ConfigError(path, "must be positive");
  return d;
}

inline int integer(const json& v, const std::string& path, int lo) {
  if (!v.is_number_integer()) throw ConfigError(path, "must be an integer");
  long long k = v.get<long long>();
  if (k < lo || k > 1000000) throw ConfigError(path, "must be an integer >= " + std::to_string(lo));
  return static_cast<int>(k);
}

inline VectorXd vector(const json& v, const std::string& path, int expected = -1) {
  if (!v.is_array()) throw ConfigError(path, "must be an array of numbers");
  if (expected >= 0 && static_cast<int>(v.size()) != expected)
    throw ConfigError(path, "must have " + std::to_string(expected) + " entries, got " + std::to_string(v.size()));
  VectorXd out(static_cast<Eigen::Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) out[static_cast<Eigen::Index>(i)] = number(v[i], index(path, i));
  return out;
}

inline Box box(const json& v, const std::string& path, int expected = -1) {
  allow_keys(v, path, {"lower", "upper"});
  VectorXd lo = vector(require(v, path, "lower"), join(path, "lower"), expected);
  VectorXd hi = vector(require(v, path, "upper"), join(path, "upper"), static_cast<int>(lo.size()));
  if (lo.size() == 0) throw ConfigError(join(path, "lower"), "must not be empty");
  for (Eigen::Index k = 0; k < lo.size(); ++k)
    if (!(lo[k] < hi[k])) throw ConfigError(join(path, "upper"), "each entry must exceed the matching lower bound");
  return {lo, hi};
}

inline expr::Expression expression(const json& v, const std::string& path, const expr::Symbols& syms) {
  if (v.is_number()) return expr::parse(expr::detail::number_text(v.get<double>()), syms);
  if (!v.is_string()) throw ConfigError(path, "must be an expression string or a number");
  try {
    return expr::parse(v.get<std::string>(), syms);
  } catch (const expr::ParseError& e) {
    throw ConfigError(path, e.what());
  }
}

inline std::vector<expr::Expression> expressions(const json& v, const std::string& path, int expected,
                                                 const expr::Symbols& syms) {
  if (!v.is_array()) throw ConfigError(path, "must be an array of expressions");
  if (static_cast<int>(v.size()) != expected)
    throw ConfigError(path, "must have " + std::to_string(expected) + " entries, got " + std::to_string(v.size()));
  std::vector<expr::Expression> out;
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(expression(v[i], index(path, i), syms));
  return out;
}

template <class S>
std::vector<S> eval_all(const std::vector<expr::Expression>& es, const std::vector<S>& bindings) {
  std::vector<S> out;
  out.reserve(es.size());
  for (const auto& e : es) out.push_back(e.evaluate<S>(std::span<const S>(bindings)));
  return out;
}

/// Expressions in the map's inputs: exact first derivatives, FD second derivatives.
inline SmoothMap expression_map(int in_dim, std::vector<expr::Expression> es, double step) {
  const int out_dim = static_cast<int>(es.size());
  return SmoothMap::finite_difference(
      in_dim, out_dim, [es](const std::vector<double>& x) { return eval_all(es, x); },
      [es](const std::vector<Dual1>& x) { return eval_all(es, x); }, step);
}

inline std::map<std::string, double> constants(const json& v, const std::string& path) {
  std::map<std::string, double> out;
  if (!v.is_object()) throw ConfigError(path, "must be an object of name: number");
  for (const auto& [k, val] : v.items()) {
    std::string p = join(path, k);
    bool ident = !k.empty() && (std::isalpha(static_cast<unsigned char>(k[0])) || k[0] == '_');
    for (char ch : k) ident = ident && (std::isalnum(static_cast<unsigned char>(ch)) || ch == '_');
    if (!ident) throw ConfigError(p, "constant name must be an identifier");
    if (expr::function_table().count(k)) throw ConfigError(p, "constant name shadows a function");
    if ((k[0] == 'x' || k[0] == 'u') && k.size() > 1 &&
        k.find_first_not_of("0123456789", 1) == std::string::npos)
      throw ConfigError(p, "constant name collides with a coordinate variable");
    out[k] = number(val, p);
  }
  return out;
}

inline ChartedManifold builtin_manifold(const json& node, const std::string& path) {
  allow_keys(node, path, {"builtin", "params"});
  const json& name_v = require(node, path, "builtin");
  if (!name_v.is_string()) throw ConfigError(join(path, "builtin"), "must be a string");
  const std::string name = name_v.get<std::string>();
  const json params = node.contains("params") ? node.at("params") : json::object();
  const std::string pp = join(path, "params");
  auto dim = [&]() { return params.contains("n") ? integer(params.at("n"), join(pp, "n"), 1) : 2; };
  if (name == "euclidean") {
    allow_keys(params, pp, {"n", "half_width"});
    double hw = params.contains("half_width") ? positive(params.at("half_width"), join(pp, "half_width")) : 10.0;
    return charts::euclidean(dim(), hw);
  }
  if (name == "flat-torus") {
    allow_keys(params, pp, {"n"});
    return charts::flat_torus(dim());
  }
  if (name == "conformal") {
    allow_keys(params, pp, {"n", "c", "half_width"});
    double c = params.contains("c") ? number(params.at("c"), join(pp, "c")) : 1.0;
    double hw = params.contains("half_width") ? positive(params.at("half_width"), join(pp, "half_width")) : 10.0;
    return charts::conformal(dim(), c, hw);
  }
  if (name == "sphere-band") {
    allow_keys(params, pp, {"theta_max"});
    double tm = params.contains("theta_max") ? positive(params.at("theta_max"), join(pp, "theta_max")) : 1.4;
    if (tm >= std::numbers::pi / 2) throw ConfigError(join(pp, "theta_max"), "must be below pi/2");
    return charts::sphere_band(tm);
  }
  throw ConfigError(join(path, "builtin"), "unknown builtin manifold '" + name + "'");
}

inline ChartedManifold expression_manifold(const json& node, const std::string& path, double step) {
  allow_keys(node, path, {"name", "metric", "constants", "domain"});
  const json& rows = require(node, path, "metric");
  const std::string mp = join(path, "metric");
  if (!rows.is_array() || rows.empty()) throw ConfigError(mp, "must be a non-empty n x n array");
  const int n = static_cast<int>(rows.size());
  expr::Symbols syms;
  syms.variables = expr::Symbols::indexed("x", n);
  syms.constants["pi"] = std::numbers::pi;
  if (node.contains("constants"))
    for (const auto& [k, v] : constants(node.at("constants"), join(path, "constants"))) syms.constants[k] = v;
  std::vector<expr::Expression> entries;
  for (int a = 0; a < n; ++a) {
    auto row = expressions(rows[a], index(mp, a), n, syms);
    entries.insert(entries.end(), row.begin(), row.end());
  }
  Box dom = box(require(node, path, "domain"), join(path, "domain"), n);
  std::string name = "expression";
  if (node.contains("name")) {
    if (!node.at("name").is_string()) throw ConfigError(join(path, "name"), "must be a string");
    name = node.at("name").get<std::string>();
  }
  return {name, n, expression_map(n, std::move(entries), step), dom};
}

inline SubmanifoldPatch load_patch(const json& node, const std::string& path, const ChartedManifold& m,
                                   const std::map<std::string, double>& consts, double step) {
  const int n = m.dim();
  allow_keys(node, path, {"builtin", "immersion", "domain"});
  if (node.contains("builtin")) {
    if (node.contains("immersion")) throw ConfigError(join(path, "immersion"), "conflicts with builtin");
    const json& b = node.at("builtin");
    if (!b.is_string() || b.get<std::string>() != "identity")
      throw ConfigError(join(path, "builtin"), "unknown builtin patch (available: identity)");
    if (!node.contains("domain")) return SubmanifoldPatch::identity(m);
    Box dom = box(node.at("domain"), join(path, "domain"), n);
    return {m, SmoothMap::forward(n, n, [](const auto& u) { return u; }), dom};
  }
  Box dom = box(require(node, path, "domain"), join(path, "domain"));
  const int l = dom.dim();
  if (l > n) throw ConfigError(join(path, "domain"), "patch dimension l = " + std::to_string(l) + " exceeds n = " + std::to_string(n));
  expr::Symbols syms;
  syms.variables = expr::Symbols::indexed("u", l);
  syms.constants = consts;
  auto comps = expressions(require(node, path, "immersion"), join(path, "immersion"), n, syms);
  return {m, expression_map(l, std::move(comps), step), dom};
}

inline FieldAlongPatch load_field(const json& node, const std::string& path, const SubmanifoldPatch& p,
                                  const std::map<std::string, double>& consts, double step) {
  const int n = p.n(), l = p.l();
  allow_keys(node, path, {"builtin", "vector", "components"});
  if (node.contains("builtin")) {
    if (node.contains("components")) throw ConfigError(join(path, "components"), "conflicts with builtin");
    const json& b = node.at("builtin");
    const std::string name = b.is_string() ? b.get<std::string>() : "";
    if (name == "zero") {
      if (node.contains("vector")) throw ConfigError(join(path, "vector"), "not used by the zero field");
      return {p, SmoothMap::forward(l, n, [n](const auto& u) {
                using S = typename std::decay_t<decltype(u)>::value_type;
                return std::vector<S>(std::size_t(n), S(0.0));
              })};
    }
    if (name == "constant") {
      VectorXd c = vector(require(node, path, "vector"), join(path, "vector"), n);
      return {p, SmoothMap::forward(l, n, [c](const auto& u) {
                using S = typename std::decay_t<decltype(u)>::value_type;
                std::vector<S> out;
                for (Eigen::Index a = 0; a < c.size(); ++a) out.push_back(S(c[a]));
                return out;
              })};
    }
    throw ConfigError(join(path, "builtin"), "unknown builtin field (available: zero, constant)");
  }
  if (node.contains("vector")) throw ConfigError(join(path, "vector"), "only valid with builtin 'constant'");
  expr::Symbols syms;
  syms.variables = expr::Symbols::indexed("u", l);
  for (auto& x : expr::Symbols::indexed("x", n)) syms.variables.push_back(x);
  syms.constants = consts;
  auto comps = expressions(require(node, path, "components"), join(path, "components"), n, syms);
  SmoothMap imm = p.immersion;
  // xi(u) = components(u, x(u))
  auto composite = [comps, imm](const auto& u) {
    using S = typename std::decay_t<decltype(u)>::value_type;
    std::vector<S> b = u;
    std::vector<S> x = imm.eval(u);
    b.insert(b.end(), x.begin(), x.end());
    return eval_all(comps, b);
  };
  return {p, SmoothMap::finite_difference(
                 l, n, [composite](const std::vector<double>& u) { return composite(u); },
                 [composite](const std::vector<Dual1>& u) { return composite(u); }, step)};
}

}  // namespace config_detail

/// Builds a RunConfig from a parsed JSON document.
inline RunConfig load_config(const nlohmann::json& doc) {
  using namespace config_detail;
  allow_keys(doc, "", {"manifold", "patch", "field", "grid", "tolerances", "differentiation", "geodesic", "output"});
  RunConfig cfg;

  if (doc.contains("differentiation")) {
    const json& d = doc.at("differentiation");
    allow_keys(d, "differentiation", {"step"});
    if (d.contains("step")) cfg.diff_step = positive(d.at("step"), "differentiation.step");
  }

  const json& man = require(doc, "", "manifold");
  std::map<std::string, double> consts{{"pi", std::numbers::pi}};
  if (man.is_object() && man.contains("builtin") && man.contains("metric"))
    throw ConfigError("manifold.metric", "conflicts with builtin");
  if (man.is_object() && man.contains("builtin")) {
    cfg.manifold = builtin_manifold(man, "manifold");
  } else {
    cfg.manifold = expression_manifold(man, "manifold", cfg.diff_step);
    if (man.contains("constants"))
      for (const auto& [k, v] : constants(man.at("constants"), "manifold.constants")) consts[k] = v;
  }
  const int n = cfg.manifold.dim();

  cfg.patch = doc.contains("patch") ? load_patch(doc.at("patch"), "patch", cfg.manifold, consts, cfg.diff_step)
                                    : SubmanifoldPatch::identity(cfg.manifold);
  if (doc.contains("field")) cfg.field = load_field(doc.at("field"), "field", cfg.patch, consts, cfg.diff_step);

  if (doc.contains("grid")) {
    const json& g = doc.at("grid");
    allow_keys(g, "grid", {"per_dim", "margin"});
    if (g.contains("per_dim")) cfg.grid_per_dim = integer(g.at("per_dim"), "grid.per_dim", 1);
    if (g.contains("margin")) {
      cfg.grid_margin = number(g.at("margin"), "grid.margin");
      if (cfg.grid_margin < 0.0 || cfg.grid_margin >= 0.5) throw ConfigError("grid.margin", "must lie in [0, 0.5)");
    }
  }
  if (doc.contains("tolerances")) {
    const json& t = doc.at("tolerances");
    allow_keys(t, "tolerances", {"pass", "fail"});
    if (t.contains("pass")) cfg.tolerances.pass = positive(t.at("pass"), "tolerances.pass");
    if (t.contains("fail")) cfg.tolerances.fail = positive(t.at("fail"), "tolerances.fail");
    if (!(cfg.tolerances.pass < cfg.tolerances.fail))
      throw ConfigError("tolerances.fail", "must exceed tolerances.pass");
  }
  if (doc.contains("geodesic")) {
    const json& g = doc.at("geodesic");
    allow_keys(g, "geodesic", {"x", "xdot", "xi", "xidot", "sigma", "step"});
    BundleGeodesicState s;
    s.x = vector(require(g, "geodesic", "x"), "geodesic.x", n);
    s.xdot = vector(require(g, "geodesic", "xdot"), "geodesic.xdot", n);
    s.xi = vector(require(g, "geodesic", "xi"), "geodesic.xi", n);
    s.xidot = g.contains("xidot") ? vector(g.at("xidot"), "geodesic.xidot", n) : VectorXd::Zero(n);
    if (!cfg.manifold.contains(s.x)) throw ConfigError("geodesic.x", "lies outside the chart domain");
    if (g.contains("sigma")) cfg.sigma = positive(g.at("sigma"), "geodesic.sigma");
    if (g.contains("step")) cfg.step = positive(g.at("step"), "geodesic.step");
    cfg.geodesic = s;
  }
  if (doc.contains("output")) {
    const json& o = doc.at("output");
    allow_keys(o, "output", {"json", "csv"});
    for (const char* k : {"json", "csv"})
      if (o.contains(k) && !o.at(k).is_string()) throw ConfigError(std::string("output.") + k, "must be a path string");
    if (o.contains("json")) cfg.json_path = o.at("json").get<std::string>();
    if (o.contains("csv")) cfg.csv_path = o.at("csv").get<std::string>();
  }
  return cfg;
}

inline RunConfig load_config_text(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError("<document>", std::string("invalid JSON: ") + e.what());
  }
  return load_config(doc);
}

inline RunConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("<file>", "cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return load_config_text(ss.str());
}

}  // namespace sasaki
