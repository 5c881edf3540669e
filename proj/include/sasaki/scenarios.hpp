#pragma once

/**
 * @file scenarios.hpp
 * @brief Named, deterministic numerical instances of the totally-geodesic
 * criteria for xi(F) in (TM, g_s), plus their Lie-algebra counterparts.
 *
 * Each scenario sweeps a grid, aggregates residuals and compares them with
 * one expectation:
 *   residual_zero      max residual <= tolerances.pass
 *   residual_positive  min residual >= tolerances.fail
 *   identity_holds     scenario-specific identities, listed in the notes
 */

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <nlohmann/json.hpp>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "sasaki/charts.hpp"
#include "sasaki/field_geometry.hpp"
#include "sasaki/geodesic.hpp"
#include "sasaki/lie.hpp"

namespace sasaki {

/// Reference extrema from the closed-form oracle in tests/oracle/residual_oracle.py
/// (sympy Christoffel symbols and curvature, exact arithmetic, default 11-point grids).
namespace oracle {
/// killing-sphere: xi = (-x2, x1), conformal c = 1, box [0.25,1.25]x[-0.5,0.5], 10% margins.
inline constexpr double kKillingMin = 0.31971721804220676;  // at (0.35, 0)
inline constexpr double kKillingMax = 0.51747884044631753;
/// equatorial-zone, off-equator samples |theta| >= 0.2 of theta in [-1,1], phi in [-pi/2,pi/2].
inline constexpr double kEquatorialOffMin = 0.52673972175422457;  // at theta = -0.32
inline constexpr double kEquatorialOffMax = 0.71766209983611984;
/// lie-semisimple: so(3) basis plus 121-point Fibonacci lattice; residual = 1/2 sqrt(|xi|^2 - min xi_i^2).
inline constexpr double kSemisimpleMin = 0.4243340926329356;
inline constexpr double kSemisimpleMax = 0.5;
}  // namespace oracle

enum class Expectation { ResidualZero, ResidualPositive, IdentityHolds };

inline std::string to_string(Expectation e) {
  switch (e) {
    case Expectation::ResidualZero: return "residual_zero";
    case Expectation::ResidualPositive: return "residual_positive";
    case Expectation::IdentityHolds: return "identity_holds";
  }
  return "?";
}

struct ScenarioOverrides {
  std::optional<int> grid;     // points per parameter dimension
  std::optional<double> tol;   // pass tolerance; must stay below the fail threshold
};

struct Extremum {
  double value = 0.0;
  std::vector<double> location;
  std::string part;  // which sub-grid or family member
};

struct ScenarioReport {
  std::string name;
  Expectation expectation = Expectation::ResidualZero;
  bool pass = false;
  Verdict status = Verdict::Fail;
  int grid_per_dim = 11;
  double grid_margin = 0.1;
  std::size_t samples = 0;
  Tolerances tolerances;
  Extremum max_residual;
  Extremum min_residual;
  std::map<std::string, double> measurements;
  std::vector<std::string> notes;

  nlohmann::json to_json() const {
    auto ext = [](const Extremum& e) {
      return nlohmann::json{{"value", e.value}, {"location", e.location}, {"part", e.part}};
    };
    std::string st = status == Verdict::Pass ? "pass" : status == Verdict::Fail ? "fail" : "inconclusive";
    return {{"name", name},
            {"pass", pass},
            {"status", st},
            {"expectation", to_string(expectation)},
            {"grid", {{"per_dim", grid_per_dim}, {"margin", grid_margin}, {"samples", samples}}},
            {"tolerances", {{"pass", tolerances.pass}, {"fail", tolerances.fail}}},
            {"max_residual", ext(max_residual)},
            {"min_residual", ext(min_residual)},
            {"measurements", measurements},
            {"notes", notes}};
  }
};

namespace scenario_detail {

inline std::vector<double> to_std(const VectorXd& v) { return {v.data(), v.data() + v.size()}; }

/// Running extrema over labelled samples.
struct Sweep {
  Extremum hi{-std::numeric_limits<double>::infinity(), {}, {}};
  Extremum lo{std::numeric_limits<double>::infinity(), {}, {}};
  std::size_t count = 0;

  void add(double r, const VectorXd& at, const std::string& part) {
    ++count;
    if (r > hi.value) hi = {r, to_std(at), part};
    if (r < lo.value) lo = {r, to_std(at), part};
  }
  void merge(const Sweep& o) {
    count += o.count;
    if (o.hi.value > hi.value) hi = o.hi;
    if (o.lo.value < lo.value) lo = o.lo;
  }
};

inline Sweep sweep(const FieldAlongPatch& f, const std::vector<VectorXd>& pts, const std::string& part,
                   const std::function<void(const PatchJet&)>& extra = {}) {
  Sweep s;
  for (const auto& u : pts) {
    PatchJet j = patch_jet(f, u);
    s.add(tg_residuals(j).residual(), u, part);
    if (extra) extra(j);
  }
  return s;
}

inline Verdict zero_verdict(double max_res, const Tolerances& t) { return classify(max_res, t); }

inline Verdict positive_verdict(double min_res, const Tolerances& t) {
  if (min_res >= t.fail) return Verdict::Pass;
  if (min_res <= t.pass) return Verdict::Fail;
  return Verdict::Inconclusive;
}

inline ScenarioReport finish(ScenarioReport r, const Sweep& s) {
  r.samples = s.count;
  r.max_residual = s.hi;
  r.min_residual = s.lo;
  if (r.expectation == Expectation::ResidualZero) r.status = zero_verdict(s.hi.value, r.tolerances);
  if (r.expectation == Expectation::ResidualPositive) r.status = positive_verdict(s.lo.value, r.tolerances);
  r.pass = r.status == Verdict::Pass;
  return r;
}

template <class F>
SmoothMap field_map(int l, int n, F f) {
  return SmoothMap::forward(l, n, std::move(f));
}

inline Box box2(double a0, double a1, double b0, double b1) {
  Box b{VectorXd(2), VectorXd(2)};
  b.lower << a0, b0;
  b.upper << a1, b1;
  return b;
}

/// The line x(u) = (u, c) in a 2-chart.
inline SmoothMap horizontal_line(double c) {
  return SmoothMap::forward(1, 2, [c](const auto& u) {
    using S = typename std::decay_t<decltype(u)>::value_type;
    return std::vector<S>{u[0], S(c)};
  });
}

inline std::string fmt(double v) { return format_double(v); }

struct Context {
  int per_dim;
  double margin;
  Tolerances tol;
};

inline ScenarioReport base(const std::string& name, Expectation e, const Context& c) {
  ScenarioReport r;
  r.name = name;
  r.expectation = e;
  r.grid_per_dim = c.per_dim;
  r.grid_margin = c.margin;
  r.tolerances = c.tol;
  return r;
}

inline ScenarioReport zero_section(const Context& c) {
  ScenarioReport r = base("zero-section", Expectation::ResidualZero, c);
  Sweep all;
  std::vector<std::pair<std::string, ChartedManifold>> ms{{"conformal c=1", charts::conformal(2, 1.0)},
                                                          {"conformal c=-1", charts::conformal(2, -1.0)},
                                                          {"euclidean R^3", charts::euclidean(3, 2.0)},
                                                          {"sphere-band", charts::sphere_band()}};
  for (const auto& [label, m] : ms) {
    SubmanifoldPatch p = SubmanifoldPatch::identity(m);
    const int n = m.dim();
    FieldAlongPatch f(p, field_map(n, n, [n](const auto& u) {
                        using S = typename std::decay_t<decltype(u)>::value_type;
                        return std::vector<S>(std::size_t(n), S(0.0));
                      }));
    std::vector<VectorXd> pts;
    for (const auto& u : grid_points(p.domain, c.per_dim, c.margin))
      if (m.contains(u)) pts.push_back(u);
    all.merge(sweep(f, pts, label));
  }
  r.notes.push_back("xi = 0 on the full chart (l = n) of conformal c=1, conformal c=-1, euclidean R^3 and sphere-band");
  return finish(r, all);
}

inline ScenarioReport parallel_flat(const Context& c) {
  ScenarioReport r = base("parallel-flat", Expectation::ResidualZero, c);
  auto m = charts::flat_torus(2);
  auto cst = field_map(2, 2, [](const auto& u) {
    using S = typename std::decay_t<decltype(u)>::value_type;
    return std::vector<S>{S(1.0), S(0.5)};
  });
  FieldAlongPatch full(SubmanifoldPatch::identity(m), cst);
  Sweep s = sweep(full, grid_points(full.patch.domain, c.per_dim, c.margin), "full chart");
  auto cst1 = field_map(1, 2, [](const auto& u) {
    using S = typename std::decay_t<decltype(u)>::value_type;
    return std::vector<S>{S(1.0), S(0.5)};
  });
  FieldAlongPatch slice(SubmanifoldPatch(m, horizontal_line(std::numbers::pi), Box::cube(1, 0.0, 2 * std::numbers::pi)),
                        cst1);
  s.merge(sweep(slice, grid_points(slice.patch.domain, c.per_dim, c.margin), "slice x2 = pi"));
  r.notes.push_back("constant xi = (1, 0.5) on the flat torus chart, over the full chart and the slice x2 = pi");
  return finish(r, s);
}

/// R^3 with slice x3 = 0 and xi = x1 d/dx3.
inline FieldAlongPatch flat_nonparallel_field() {
  auto m = charts::euclidean(3, 2.0);
  auto slice = SmoothMap::forward(2, 3, [](const auto& u) {
    using S = typename std::decay_t<decltype(u)>::value_type;
    return std::vector<S>{u[0], u[1], S(0.0)};
  });
  auto xi = field_map(2, 3, [](const auto& u) {
    using S = typename std::decay_t<decltype(u)>::value_type;
    return std::vector<S>{S(0.0), S(0.0), u[0]};
  });
  return {SubmanifoldPatch(m, slice, Box::cube(2, -2.0, 2.0)), xi};
}

inline ScenarioReport flat_nonparallel(const Context& c) {
  ScenarioReport r = base("flat-nonparallel", Expectation::ResidualZero, c);
  FieldAlongPatch f = flat_nonparallel_field();
  double n1_dev = 0.0, max_nabla = 0.0;
  Sweep s = sweep(f, grid_points(f.patch.domain, c.per_dim, c.margin), "slice x3 = 0", [&](const PatchJet& j) {
    n1_dev = std::max(n1_dev, std::abs(j.geo.norm(j.nabla_xi.col(0)) - 1.0));
    max_nabla = std::max(max_nabla, max_nabla_xi_norm(j));
  });
  r = finish(r, s);
  r.measurements["max_abs_norm_nabla1_xi_minus_1"] = n1_dev;
  r.measurements["max_norm_nabla_xi"] = max_nabla;
  r.notes.push_back("xi = x1 d/dx3 along x3 = 0 in R^3: totally geodesic while |nabla_1 xi| = 1, so xi is not parallel");
  if (n1_dev > 1e-10) {
    r.pass = false;
    r.status = Verdict::Fail;
    r.notes.push_back("FAIL: |nabla_1 xi| deviates from 1 by " + fmt(n1_dev));
  }
  return r;
}

inline ScenarioReport flat_compact_contrast(const Context& c) {
  ScenarioReport r = base("flat-compact-contrast", Expectation::IdentityHolds, c);
  auto m = charts::flat_torus(2);
  const double two_pi = 2 * std::numbers::pi;
  SubmanifoldPatch loop(m, horizontal_line(std::numbers::pi), Box::cube(1, 0.0, two_pi));
  struct Member {
    std::string name;
    SmoothMap xi;
  };
  std::vector<Member> family{
      {"constant", field_map(1, 2,
                             [](const auto& u) {
                               using S = typename std::decay_t<decltype(u)>::value_type;
                               return std::vector<S>{S(0.3), S(1.0)};
                             })},
      {"x1 e2", field_map(1, 2,
                          [](const auto& u) {
                            using S = typename std::decay_t<decltype(u)>::value_type;
                            return std::vector<S>{S(0.0), u[0]};
                          })},
      {"sin(x1) e2", field_map(1, 2, [](const auto& u) {
         using S = typename std::decay_t<decltype(u)>::value_type;
         using std::sin;
         return std::vector<S>{S(0.0), sin(u[0])};
       })},
  };
  // The full period, endpoints included, so periodicity is visible on the grid.
  auto pts = grid_points(loop.domain, c.per_dim, 0.0);
  Sweep all;
  bool identity = true;
  for (const auto& mem : family) {
    FieldAlongPatch f(loop, mem.xi);
    double nab = 0.0;
    Sweep s = sweep(f, pts, mem.name, [&](const PatchJet& j) { nab = std::max(nab, max_nabla_xi_norm(j)); });
    VectorXd a = VectorXd::Zero(1), b = VectorXd::Constant(1, two_pi);
    Jet2 ja = mem.xi.jet(a), jb = mem.xi.jet(b);
    double gap = std::max((ja.value - jb.value).cwiseAbs().maxCoeff(), (ja.jacobian - jb.jacobian).cwiseAbs().maxCoeff());
    bool periodic = gap <= c.tol.pass;
    bool residual_zero = s.hi.value <= c.tol.pass;
    bool parallel = nab <= c.tol.pass;
    r.measurements[mem.name + ": max_residual"] = s.hi.value;
    r.measurements[mem.name + ": period_gap"] = gap;
    r.measurements[mem.name + ": max_norm_nabla_xi"] = nab;
    r.notes.push_back(mem.name + ": residual_zero=" + (residual_zero ? "yes" : "no") + ", periodic=" +
                      (periodic ? "yes" : "no") + ", parallel=" + (parallel ? "yes" : "no"));
    if (periodic && residual_zero && !parallel) {
      identity = false;
      r.notes.push_back("FAIL: " + mem.name + " is periodic and residual-zero yet not parallel");
    }
    all.merge(s);
  }
  r = finish(r, all);
  r.status = identity ? Verdict::Pass : Verdict::Fail;
  r.pass = identity;
  r.notes.push_back("closed loop x2 = pi on the flat torus chart: periodic residual-zero members must be parallel");
  return r;
}

inline FieldAlongPatch killing_field() {
  auto m = charts::conformal(2, 1.0);
  auto imm = SmoothMap::forward(2, 2, [](const auto& u) { return u; });
  auto xi = field_map(2, 2, [](const auto& u) {
    using S = typename std::decay_t<decltype(u)>::value_type;
    return std::vector<S>{-u[1], u[0]};
  });
  // Offset from the origin, where the rotation field vanishes.
  return {SubmanifoldPatch(m, imm, box2(0.25, 1.25, -0.5, 0.5)), xi};
}

inline ScenarioReport killing_sphere(const Context& c) {
  ScenarioReport r = base("killing-sphere", Expectation::ResidualPositive, c);
  FieldAlongPatch f = killing_field();
  r = finish(r, sweep(f, grid_points(f.patch.domain, c.per_dim, c.margin), "rotation field"));
  r.notes.push_back("xi = -x2 d/dx1 + x1 d/dx2, a Killing field of the round sphere in the conformal c=1 chart, l = n = 2");
  if (c.per_dim == 11 && c.margin == 0.1)
    r.notes.push_back("oracle extrema on this grid: min " + fmt(oracle::kKillingMin) + ", max " + fmt(oracle::kKillingMax));
  return r;
}

inline FieldAlongPatch equator_field() {
  auto m = charts::sphere_band();
  auto eq = SmoothMap::forward(1, 2, [](const auto& u) {
    using S = typename std::decay_t<decltype(u)>::value_type;
    return std::vector<S>{S(0.0), u[0]};
  });
  auto xi = field_map(1, 2, [](const auto& u) {
    using S = typename std::decay_t<decltype(u)>::value_type;
    return std::vector<S>{S(1.0), S(0.0)};
  });
  return {SubmanifoldPatch(m, eq, Box::cube(1, -std::numbers::pi, std::numbers::pi)), xi};
}

inline FieldAlongPatch zone_field() {
  auto m = charts::sphere_band();
  auto imm = SmoothMap::forward(2, 2, [](const auto& u) { return u; });
  auto xi = field_map(2, 2, [](const auto& u) {
    using S = typename std::decay_t<decltype(u)>::value_type;
    return std::vector<S>{S(1.0), S(0.0)};
  });
  return {SubmanifoldPatch(m, imm, box2(-1.0, 1.0, -std::numbers::pi / 2, std::numbers::pi / 2)), xi};
}

inline ScenarioReport equatorial_zone(const Context& c) {
  ScenarioReport r = base("equatorial-zone", Expectation::IdentityHolds, c);
  FieldAlongPatch eq = equator_field();
  Sweep on = sweep(eq, grid_points(eq.patch.domain, c.per_dim, c.margin), "equator");
  FieldAlongPatch zone = zone_field();
  std::vector<VectorXd> off;
  for (const auto& u : grid_points(zone.patch.domain, c.per_dim, c.margin))
    if (std::abs(u[0]) >= 0.2) off.push_back(u);
  Sweep offs = sweep(zone, off, "off-equator");
  constexpr double kEquatorTol = 1e-7;
  r.measurements["equator_max_residual"] = on.hi.value;
  r.measurements["off_equator_min_residual"] = offs.lo.value;
  Sweep all = on;
  all.merge(offs);
  r = finish(r, all);
  Verdict a = on.hi.value <= std::min(kEquatorTol, c.tol.pass) ? Verdict::Pass
              : on.hi.value >= c.tol.fail                        ? Verdict::Fail
                                                                 : Verdict::Inconclusive;
  Verdict b = positive_verdict(offs.lo.value, c.tol);
  r.status = (a == Verdict::Fail || b == Verdict::Fail)                 ? Verdict::Fail
             : (a == Verdict::Pass && b == Verdict::Pass) ? Verdict::Pass
                                                                         : Verdict::Inconclusive;
  r.pass = r.status == Verdict::Pass;
  r.notes.push_back("sphere-band, xi = d/dtheta: on the equator (l = 1) max residual must be <= 1e-7; on the zone "
                    "(l = 2) with |theta| >= 0.2 min residual must be >= tolerances.fail");
  if (c.per_dim == 11 && c.margin == 0.1)
    r.notes.push_back("oracle off-equator extrema on this grid: min " + fmt(oracle::kEquatorialOffMin) + ", max " +
                      fmt(oracle::kEquatorialOffMax));
  return r;
}

inline ScenarioReport normal_parallel(const Context& c) {
  ScenarioReport r = base("normal-parallel", Expectation::ResidualZero, c);
  // Oblique plane x = (u1 + u2, u2, u1) in R^3 with its constant normal (-1, 1, 1).
  auto m = charts::euclidean(3, 5.0);
  auto plane = SmoothMap::forward(2, 3, [](const auto& u) {
    using S = typename std::decay_t<decltype(u)>::value_type;
    return std::vector<S>{u[0] + u[1], u[1], u[0]};
  });
  auto nrm = field_map(2, 3, [](const auto& u) {
    using S = typename std::decay_t<decltype(u)>::value_type;
    return std::vector<S>{S(-1.0), S(1.0), S(1.0)};
  });
  FieldAlongPatch a(SubmanifoldPatch(m, plane, Box::cube(2, -2.0, 2.0)), nrm);
  double perp = 0.0;
  auto track = [&](const PatchJet& j) {
    for (int i = 0; i < j.l; ++i) perp = std::max(perp, j.geo.norm(normal_covariant_derivative(j, i)));
  };
  Sweep s = sweep(a, grid_points(a.patch.domain, c.per_dim, c.margin), "plane in R^3", track);
  FieldAlongPatch eq = equator_field();
  s.merge(sweep(eq, grid_points(eq.patch.domain, c.per_dim, c.margin), "sphere-band equator", track));
  r = finish(r, s);
  r.measurements["max_norm_normal_derivative"] = perp;
  r.notes.push_back("normal fields parallel in the normal bundle along totally geodesic patches");
  return r;
}

inline ScenarioReport th3_degenerate(const Context& c) {
  ScenarioReport r = base("th3-degenerate", Expectation::IdentityHolds, c);
  const double curv = 1.0;
  auto m = charts::conformal(2, curv);
  // Geodesic x(u) = (u, 0) with the unit normal xi = (0, 1 + u^2/4), so 1 - c|xi|^2 = 0.
  auto xi = field_map(1, 2, [](const auto& u) {
    using S = typename std::decay_t<decltype(u)>::value_type;
    return std::vector<S>{S(0.0), S(1.0) + u[0] * u[0] / S(4.0)};
  });
  FieldAlongPatch f(SubmanifoldPatch(m, horizontal_line(0.0), Box::cube(1, -1.0, 1.0)), xi);
  double mult = 0.0, perp = 0.0, sff = 0.0;
  Sweep s = sweep(f, grid_points(f.patch.domain, c.per_dim, c.margin), "geodesic", [&](const PatchJet& j) {
    mult = std::max(mult, std::abs(1.0 - curv * j.geo.inner(j.xi, j.xi)));
    perp = std::max(perp, j.geo.norm(normal_covariant_derivative(j, 0)));
    sff = std::max(sff, second_fundamental_residual(j));
  });
  r = finish(r, s);
  r.measurements["max_abs_degenerate_multiplier"] = mult;
  r.measurements["max_norm_normal_derivative"] = perp;
  r.measurements["max_second_fundamental_form"] = sff;
  // Degenerate branch: the multiplier vanishes, so the residual is governed by the
  // parallel-normal-field criterion along a totally geodesic patch.
  bool ok = mult <= 1e-12 && perp <= c.tol.pass && sff <= c.tol.pass && s.hi.value <= c.tol.pass;
  r.status = ok ? Verdict::Pass : Verdict::Fail;
  r.pass = ok;
  r.notes.push_back("report only: multiplier 1 - c|xi|^2 = 0, geodesic patch, normal derivative and residual all vanish");
  return r;
}

/// Three basis vectors followed by a Fibonacci lattice of count unit vectors in R^3.
inline std::vector<VectorXd> sphere_lattice(int count) {
  std::vector<VectorXd> out{VectorXd::Unit(3, 0), VectorXd::Unit(3, 1), VectorXd::Unit(3, 2)};
  const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
  for (int k = 0; k < count; ++k) {
    double z = 1.0 - 2.0 * (k + 0.5) / count;
    double rr = std::sqrt(1.0 - z * z);
    VectorXd v(3);
    v << rr * std::cos(k * golden), rr * std::sin(k * golden), z;
    out.push_back(v);
  }
  return out;
}

inline Sweep lie_sweep(const LieAlgebraModel& a, const std::vector<VectorXd>& h, const std::vector<VectorXd>& xis,
                       const std::string& part) {
  Sweep s;
  for (const auto& xi : xis) s.add(lie_field_residual(a, h, xi), xi, part);
  return s;
}

inline ScenarioReport lie_centralizer(const Context& c) {
  ScenarioReport r = base("lie-centralizer", Expectation::ResidualZero, c);
  auto g = lie::so3_plus_r();
  std::vector<VectorXd> h{g.unit(0), g.unit(1), g.unit(2)};
  std::vector<VectorXd> xis;
  for (int k = 0; k < c.per_dim; ++k) {
    double t = c.per_dim == 1 ? 1.0 : -2.0 + 4.0 * k / (c.per_dim - 1);
    xis.push_back(t * g.unit(3));
  }
  r = finish(r, lie_sweep(g, h, xis, "xi in the R factor"));
  r.measurements["control_residual_xi_e1"] = lie_field_residual(g, h, g.unit(0));
  r.notes.push_back("g = so(3) + R, h = so(3), xi = t e4 spans the centralizer of h");
  return r;
}

inline ScenarioReport lie_semisimple(const Context& c) {
  ScenarioReport r = base("lie-semisimple", Expectation::ResidualPositive, c);
  auto g = lie::so3();
  std::vector<VectorXd> h{g.unit(0), g.unit(1), g.unit(2)};
  r = finish(r, lie_sweep(g, h, sphere_lattice(c.per_dim * c.per_dim), "unit xi"));
  double kmin = std::numeric_limits<double>::infinity();
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j) kmin = std::min(kmin, lie_sectional_curvature(g, g.unit(i), g.unit(j)));
  r.measurements["min_sectional_curvature_basis_planes"] = kmin;
  r.notes.push_back("g = h = so(3): trivial centre, so every unit xi has a positive residual");
  if (c.per_dim == 11)
    r.notes.push_back("oracle extrema on this sample set: min " + fmt(oracle::kSemisimpleMin) + ", max " +
                      fmt(oracle::kSemisimpleMax));
  return r;
}

inline ScenarioReport lie_abelian(const Context& c) {
  ScenarioReport r = base("lie-abelian", Expectation::ResidualZero, c);
  auto g = lie::abelian(3);
  std::vector<VectorXd> h{g.unit(0), g.unit(1)};
  r = finish(r, lie_sweep(g, h, sphere_lattice(c.per_dim * c.per_dim), "unit xi"));
  r.notes.push_back("g = R^3, h = span(e1, e2): every xi is in the centralizer");
  return r;
}

}  // namespace scenario_detail

struct ScenarioInfo {
  std::string name;
  Expectation expectation;
  std::string summary;
  std::function<ScenarioReport(const scenario_detail::Context&)> run;
};

inline const std::vector<ScenarioInfo>& scenario_registry() {
  using namespace scenario_detail;
  static const std::vector<ScenarioInfo> reg{
      {"zero-section", Expectation::ResidualZero, "zero field on built-in charts, l = n", zero_section},
      {"parallel-flat", Expectation::ResidualZero, "constant field on the flat torus chart", parallel_flat},
      {"flat-nonparallel", Expectation::ResidualZero, "xi = x1 d/dx3 along x3 = 0 in R^3", flat_nonparallel},
      {"flat-compact-contrast", Expectation::IdentityHolds, "periodic residual-zero fields on a closed flat loop are parallel",
       flat_compact_contrast},
      {"killing-sphere", Expectation::ResidualPositive, "rotation Killing field on the conformal c=1 chart", killing_sphere},
      {"equatorial-zone", Expectation::IdentityHolds, "d/dtheta on the sphere band: zero on the equator, positive off it",
       equatorial_zone},
      {"normal-parallel", Expectation::ResidualZero, "normal-parallel fields along totally geodesic patches", normal_parallel},
      {"th3-degenerate", Expectation::IdentityHolds, "unit normal along a geodesic with c|xi|^2 = 1", th3_degenerate},
      {"lie-centralizer", Expectation::ResidualZero, "so(3) + R, xi in the centralizer of so(3)", lie_centralizer},
      {"lie-semisimple", Expectation::ResidualPositive, "so(3) along itself", lie_semisimple},
      {"lie-abelian", Expectation::ResidualZero, "abelian R^3", lie_abelian},
  };
  return reg;
}

inline const ScenarioInfo* find_scenario(const std::string& name) {
  for (const auto& s : scenario_registry())
    if (s.name == name) return &s;
  return nullptr;
}

inline ScenarioReport run_scenario(const std::string& name, const ScenarioOverrides& o = {}) {
  const ScenarioInfo* info = find_scenario(name);
  if (!info) throw PreconditionError("unknown scenario '" + name + "'");
  scenario_detail::Context c{11, 0.1, Tolerances{}};
  if (o.grid) {
    if (*o.grid < 2 || *o.grid > 201) throw PreconditionError("grid must be between 2 and 201 points per dimension");
    c.per_dim = *o.grid;
  }
  if (o.tol) {
    if (!(*o.tol > 0.0) || !(*o.tol < c.tol.fail))
      throw PreconditionError("tolerance conflict: pass tolerance must lie in (0, " + format_double(c.tol.fail) + ")");
    c.tol.pass = *o.tol;
  }
  return info->run(c);
}

}  // namespace sasaki
