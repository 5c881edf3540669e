#pragma once

// Built-in model charts.

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "sasaki/manifold.hpp"

namespace sasaki::charts {

/// Euclidean R^n on the box [-10, 10]^n.
inline ChartedManifold euclidean(int n, double half_width = 10.0) {
  return ChartedManifold::from_generic("euclidean", n, Box::cube(n, -half_width, half_width),
                                       [n](const auto& x) {
                                         using S = typename std::decay_t<decltype(x)>::value_type;
                                         std::vector<S> g(std::size_t(n) * n, S(0.0));
                                         for (int a = 0; a < n; ++a) g[a * n + a] = S(1.0);
                                         return g;
                                       });
}

/// Flat torus chart: Euclidean metric on the fundamental box [0, 2*pi]^n.
inline ChartedManifold flat_torus(int n) {
  auto m = euclidean(n);
  return ChartedManifold("flat-torus", n, m.metric_map(), Box::cube(n, 0.0, 2.0 * std::numbers::pi));
}

/**
 * Conformal chart of the space of constant curvature c:
 *   g_ab = delta_ab / (1 + (c/4)|x|^2)^2.
 * For c < 0 the domain is the open ball |x|^2 < 4/|c|.
 */
inline ChartedManifold conformal(int n, double c, double half_width = 10.0) {
  Box box = Box::cube(n, -half_width, half_width);
  ChartedManifold::DomainPredicate pred;
  if (c < 0.0) {
    double r = 2.0 / std::sqrt(-c);
    box = Box::cube(n, -std::min(r, half_width), std::min(r, half_width));
    pred = [r](const VectorXd& x) { return x.squaredNorm() < r * r; };
  }
  return ChartedManifold::from_generic(
      "conformal", n, box,
      [n, c](const auto& x) {
        using S = typename std::decay_t<decltype(x)>::value_type;
        S r2(0.0);
        for (int a = 0; a < n; ++a) r2 += x[a] * x[a];
        S denom = S(1.0) + S(c / 4.0) * r2;
        S f = S(1.0) / (denom * denom);
        std::vector<S> g(std::size_t(n) * n, S(0.0));
        for (int a = 0; a < n; ++a) g[a * n + a] = f;
        return g;
      },
      pred);
}

/**
 * Band of the unit 2-sphere around the equator theta = 0 in (theta, phi):
 *   g = diag(1, cos^2 theta),  |theta| <= 1.4, |phi| <= pi.
 */
inline ChartedManifold sphere_band(double theta_max = 1.4) {
  Box box{VectorXd(2), VectorXd(2)};
  box.lower << -theta_max, -std::numbers::pi;
  box.upper << theta_max, std::numbers::pi;
  return ChartedManifold::from_generic("sphere-band", 2, box, [](const auto& x) {
    using S = typename std::decay_t<decltype(x)>::value_type;
    using std::cos;
    S ct = cos(x[0]);
    return std::vector<S>{S(1.0), S(0.0), S(0.0), ct * ct};
  });
}

inline const std::vector<std::string>& builtin_names() {
  static const std::vector<std::string> names{"euclidean", "flat-torus", "conformal", "sphere-band"};
  return names;
}

}  // namespace sasaki::charts
