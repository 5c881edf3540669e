#pragma once

/**
 * @file geodesic.hpp
 * @brief Geodesics of (TM, g_s).
 *
 * A curve sigma -> (x(sigma), xi(sigma)) is a Sasaki geodesic iff
 *   x'' + R(xi, xi') x' = 0,   xi'' = 0,
 * with ' the covariant derivative along x. `integrate` expands this system in
 * coordinates; `oracle_integrate` ignores it entirely and integrates the plain
 * 2n-dimensional geodesic equation of the assembled Sasaki matrix, with
 * Christoffel symbols taken by finite differences.
 */

#include <Eigen/Dense>
#include <cmath>
#include <cstdio>
#include <functional>
#include <ostream>
#include <string>
#include <vector>

#include "sasaki/bundle.hpp"
#include "sasaki/manifold.hpp"

namespace sasaki {

struct BundleGeodesicState {
  VectorXd x;
  VectorXd xdot;
  VectorXd xi;
  VectorXd xidot;

  int dim() const { return static_cast<int>(x.size()); }

  VectorXd pack() const {
    const int n = dim();
    VectorXd y(4 * n);
    y << x, xdot, xi, xidot;
    return y;
  }
  static BundleGeodesicState unpack(const VectorXd& y) {
    const auto n = y.size() / 4;
    return {y.segment(0, n), y.segment(n, n), y.segment(2 * n, n), y.segment(3 * n, n)};
  }
};

struct TraceRecord {
  double sigma = 0.0;
  BundleGeodesicState state;
  double energy = 0.0;
};

struct Trace {
  std::vector<TraceRecord> records;
  bool boundary_exit = false;
  double energy_drift = 0.0;  // max_k |E_k - E_0| / E_0

  const TraceRecord& back() const { return records.back(); }
};

/// Covariant derivative of xi along x: xi' = xidot + Gamma(xdot, xi).
inline VectorXd fibre_velocity(const LocalGeometry& geo, const BundleGeodesicState& s) {
  return s.xidot + geo.gamma_contract(s.xdot, s.xi);
}

/// g_s(Gamma', Gamma') = |x'|^2 + |xi'|^2.
inline double sasaki_energy(const ChartedManifold& m, const BundleGeodesicState& s) {
  LocalGeometry geo = m.geometry(s.x, false);
  VectorXd w = fibre_velocity(geo, s);
  return geo.inner(s.xdot, s.xdot) + geo.inner(w, w);
}

/// d/dsigma of the state under the Sasaki geodesic system.
inline BundleGeodesicState rhs(const ChartedManifold& m, const BundleGeodesicState& s) {
  const int n = m.dim();
  LocalGeometry geo = m.geometry(s.x, true);
  VectorXd w = fibre_velocity(geo, s);
  VectorXd xddot = -geo.gamma_contract(s.xdot, s.xdot) - geo.riemann(s.xi, w, s.xdot);
  // d_d Gamma^a_bc xdot^d xdot^b xi^c
  VectorXd dgam = VectorXd::Zero(n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        for (int d = 0; d < n; ++d) dgam[a] += geo.dgamma(a, b, c, d) * s.xdot[d] * s.xdot[b] * s.xi[c];
  VectorXd xiddot = -geo.gamma_contract(s.xdot, w) - dgam - geo.gamma_contract(xddot, s.xi) -
                    geo.gamma_contract(s.xdot, s.xidot);
  return {s.xdot, xddot, s.xidot, xiddot};
}

namespace detail {

using FlowField = std::function<VectorXd(const VectorXd&)>;
using InDomain = std::function<bool(const VectorXd&)>;

/// Fixed-step RK4 for the state y; stops before any stage leaves the domain.
inline std::vector<std::pair<double, VectorXd>> rk4(const VectorXd& y0, double sigma_end, double step,
                                                    const FlowField& f, const InDomain& ok, bool& exited) {
  if (!(step > 0.0)) throw std::invalid_argument("integration step must be positive");
  if (!(sigma_end >= 0.0)) throw std::invalid_argument("sigma_end must be non-negative");
  long steps = std::lround(sigma_end / step);
  if (std::abs(steps * step - sigma_end) > 1e-9 * std::max(1.0, sigma_end)) steps = long(std::ceil(sigma_end / step));
  double h = steps > 0 ? sigma_end / double(steps) : 0.0;
  std::vector<std::pair<double, VectorXd>> out;
  out.reserve(std::size_t(steps) + 1);
  out.emplace_back(0.0, y0);
  exited = false;
  VectorXd y = y0;
  try {
    for (long k = 0; k < steps; ++k) {
      VectorXd k1 = f(y);
      VectorXd y2 = y + 0.5 * h * k1;
      if (!ok(y2)) { exited = true; break; }
      VectorXd k2 = f(y2);
      VectorXd y3 = y + 0.5 * h * k2;
      if (!ok(y3)) { exited = true; break; }
      VectorXd k3 = f(y3);
      VectorXd y4 = y + h * k3;
      if (!ok(y4)) { exited = true; break; }
      VectorXd k4 = f(y4);
      VectorXd next = y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
      if (!ok(next)) { exited = true; break; }
      y = next;
      out.emplace_back(k + 1 == steps ? sigma_end : double(k + 1) * h, y);
    }
  } catch (const DomainError&) {
    exited = true;
  }
  return out;
}

inline void finish_energy(Trace& t) {
  if (t.records.empty()) return;
  double e0 = t.records.front().energy;
  for (const auto& r : t.records) {
    double drift = e0 != 0.0 ? std::abs(r.energy - e0) / std::abs(e0) : std::abs(r.energy);
    t.energy_drift = std::max(t.energy_drift, drift);
  }
}

inline void check_state(const ChartedManifold& m, const BundleGeodesicState& s) {
  const int n = m.dim();
  if (s.x.size() != n || s.xdot.size() != n || s.xi.size() != n || s.xidot.size() != n)
    throw ContractViolation("geodesic state components must all have dimension n");
  m.require_in_domain(s.x);
}

}  // namespace detail

/// Fixed-step RK4 over `rhs`; the trace holds every step and ends at sigma_end unless the chart is left.
inline Trace integrate(const ChartedManifold& m, const BundleGeodesicState& s0, double sigma_end, double step = 1e-3) {
  detail::check_state(m, s0);
  const int n = m.dim();
  auto f = [&](const VectorXd& y) { return rhs(m, BundleGeodesicState::unpack(y)).pack(); };
  auto ok = [&](const VectorXd& y) { return m.contains(y.head(n)); };
  Trace t;
  auto pts = detail::rk4(s0.pack(), sigma_end, step, f, ok, t.boundary_exit);
  t.records.reserve(pts.size());
  for (auto& [sigma, y] : pts) {
    auto s = BundleGeodesicState::unpack(y);
    t.records.push_back({sigma, s, sasaki_energy(m, s)});
  }
  detail::finish_energy(t);
  return t;
}

/**
 * Christoffel symbols of the assembled Sasaki matrix in the 2n induced
 * coordinates, by fourth-order central differences with step h.
 */
inline Tensor3 fd_sasaki_christoffel(const ChartedManifold& m, const BundlePoint& z, double h = 1e-3) {
  require_valid(m, z);
  const int n = m.dim(), N = 2 * n;
  LocalGeometry geo0 = m.geometry(z.x.coords, false);
  MatrixXd G = detail::sasaki_matrix(geo0, z.xi);
  std::vector<MatrixXd> dG(N);
  const double w[4] = {1.0, -8.0, 8.0, -1.0};
  const double off[4] = {-2.0, -1.0, 1.0, 2.0};
  for (int k = 0; k < N; ++k) {
    MatrixXd acc = MatrixXd::Zero(N, N);
    for (int s = 0; s < 4; ++s) {
      VectorXd x = z.x.coords, xi = z.xi;
      if (k < n) {
        x[k] += off[s] * h;
        acc += w[s] * detail::sasaki_matrix(m.geometry(x, false), xi);
      } else {
        xi[k - n] += off[s] * h;
        acc += w[s] * detail::sasaki_matrix(geo0, xi);
      }
    }
    dG[k] = acc / (12.0 * h);
  }
  MatrixXd Ginv = G.inverse();
  Tensor3 gam(N);
  for (int K = 0; K < N; ++K)
    for (int I = 0; I < N; ++I)
      for (int J = I; J < N; ++J) {
        double v = 0.0;
        for (int L = 0; L < N; ++L) v += 0.5 * Ginv(K, L) * (dG[I](L, J) + dG[J](L, I) - dG[L](I, J));
        gam(K, I, J) = v;
        gam(K, J, I) = v;
      }
  return gam;
}

/// Reference integrator: plain geodesic equation of g_s in 2n coordinates.
inline Trace oracle_integrate(const ChartedManifold& m, const BundleGeodesicState& s0, double sigma_end,
                              double step = 1e-3, double fd_step = 1e-3) {
  detail::check_state(m, s0);
  const int n = m.dim(), N = 2 * n;
  auto f = [&](const VectorXd& y) {
    auto s = BundleGeodesicState::unpack(y);
    Tensor3 gam = fd_sasaki_christoffel(m, BundlePoint{Point{s.x}, s.xi}, fd_step);
    VectorXd v(N);
    v << s.xdot, s.xidot;
    VectorXd acc = VectorXd::Zero(N);
    for (int K = 0; K < N; ++K)
      for (int I = 0; I < N; ++I)
        for (int J = 0; J < N; ++J) acc[K] -= gam(K, I, J) * v[I] * v[J];
    return BundleGeodesicState{s.xdot, acc.head(n), s.xidot, acc.tail(n)}.pack();
  };
  auto ok = [&](const VectorXd& y) { return m.contains(y.head(n)); };
  Trace t;
  auto pts = detail::rk4(s0.pack(), sigma_end, step, f, ok, t.boundary_exit);
  for (auto& [sigma, y] : pts) {
    auto s = BundleGeodesicState::unpack(y);
    LocalGeometry geo = m.geometry(s.x, false);
    MatrixXd G = detail::sasaki_matrix(geo, s.xi);
    VectorXd v(N);
    v << s.xdot, s.xidot;
    t.records.push_back({sigma, s, v.dot(G * v)});
  }
  detail::finish_energy(t);
  return t;
}

/// Geodesic of the base manifold: xddot = -Gamma(xdot, xdot). Returns (sigma, x, xdot) samples packed as 2n vectors.
inline std::vector<std::pair<double, VectorXd>> integrate_base(const ChartedManifold& m, const VectorXd& x0,
                                                               const VectorXd& v0, double sigma_end, double step,
                                                               bool* exited = nullptr) {
  m.require_in_domain(x0);
  const int n = m.dim();
  VectorXd y0(2 * n);
  y0 << x0, v0;
  auto f = [&](const VectorXd& y) {
    LocalGeometry geo = m.geometry(y.head(n), false);
    VectorXd out(2 * n);
    out << y.tail(n), -geo.gamma_contract(y.tail(n), y.tail(n));
    return out;
  };
  auto ok = [&](const VectorXd& y) { return m.contains(y.head(n)); };
  bool ex = false;
  auto pts = detail::rk4(y0, sigma_end, step, f, ok, ex);
  if (exited) *exited = ex;
  return pts;
}

/// sup over common samples of the max-norm state difference.
inline double max_state_divergence(const Trace& a, const Trace& b) {
  double d = 0.0;
  const std::size_t k = std::min(a.records.size(), b.records.size());
  for (std::size_t i = 0; i < k; ++i)
    d = std::max(d, (a.records[i].state.pack() - b.records[i].state.pack()).cwiseAbs().maxCoeff());
  return d;
}

inline std::string csv_header(int n) {
  std::string h = "sigma";
  for (const char* block : {"x", "xdot", "xi", "xidot"})
    for (int a = 1; a <= n; ++a) h += "," + std::string(block) + std::to_string(a);
  return h + ",energy";
}

inline std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

/// CSV: header line, then one LF-terminated row per record, 17 significant digits.
inline void write_trace_csv(std::ostream& os, const Trace& t) {
  const int n = t.records.empty() ? 0 : t.records.front().state.dim();
  os << csv_header(n) << '\n';
  for (const auto& r : t.records) {
    os << format_double(r.sigma);
    VectorXd y = r.state.pack();
    for (Eigen::Index i = 0; i < y.size(); ++i) os << ',' << format_double(y[i]);
    os << ',' << format_double(r.energy) << '\n';
  }
}

}  // namespace sasaki
