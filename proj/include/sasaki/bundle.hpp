#pragma once

/**
 * @file bundle.hpp
 * @brief Sasaki geometry of TM: horizontal/vertical split, lifts, the Sasaki
 * inner product, its coordinate matrix, and the Kowalski covariant derivatives.
 *
 * A tangent vector of TM at z = (x, xi) is stored by its projections
 * (H, V) = (pi_* X, K X). In the induced coordinates (x^a, xi^a) the raw
 * components relate by
 *   H^a = X^a,   V^a = X^{n+a} + Gamma^a_bc(x) xi^b X^c.
 */

#include <Eigen/Dense>
#include <string>

#include "sasaki/manifold.hpp"

namespace sasaki {

struct BundlePoint {
  Point x;
  VectorXd xi;

  int dim() const { return static_cast<int>(xi.size()); }
};

struct BundleTangent {
  BundlePoint base;
  VectorXd H;  // pi_* part
  VectorXd V;  // K part
};

inline bool same_base(const BundlePoint& a, const BundlePoint& b) {
  return same_base(a.x, b.x) && a.xi.size() == b.xi.size() && a.xi == b.xi;
}

inline void require_valid(const ChartedManifold& m, const BundlePoint& z) {
  m.require_in_domain(z.x.coords);
  if (z.xi.size() != m.dim()) throw ContractViolation("fiber coordinate has wrong dimension");
}

inline BundleTangent horizontal_lift(const BundlePoint& z, const VectorXd& x) {
  return {z, x, VectorXd::Zero(x.size())};
}
inline BundleTangent vertical_lift(const BundlePoint& z, const VectorXd& x) {
  return {z, VectorXd::Zero(x.size()), x};
}

inline BundleTangent split(const LocalGeometry& geo, const BundlePoint& z, const VectorXd& raw) {
  const int n = geo.n;
  if (raw.size() != 2 * n) throw ContractViolation("raw tangent vector of TM must have 2n components");
  VectorXd h = raw.head(n);
  VectorXd v = raw.tail(n) + geo.gamma_contract(z.xi, h);
  return {z, h, v};
}

inline BundleTangent split(const ChartedManifold& m, const BundlePoint& z, const VectorXd& raw) {
  require_valid(m, z);
  return split(m.geometry(z.x.coords, false), z, raw);
}

inline VectorXd assemble(const LocalGeometry& geo, const BundlePoint& z, const VectorXd& h, const VectorXd& v) {
  const int n = geo.n;
  if (h.size() != n || v.size() != n) throw ContractViolation("assemble: H and V must have n components");
  VectorXd raw(2 * n);
  raw.head(n) = h;
  raw.tail(n) = v - geo.gamma_contract(z.xi, h);
  return raw;
}

inline VectorXd assemble(const ChartedManifold& m, const BundlePoint& z, const VectorXd& h, const VectorXd& v) {
  require_valid(m, z);
  return assemble(m.geometry(z.x.coords, false), z, h, v);
}

inline double sasaki_inner(const LocalGeometry& geo, const BundleTangent& a, const BundleTangent& b) {
  return geo.inner(a.H, b.H) + geo.inner(a.V, b.V);
}

/// g_s(A, B) = g(pi_* A, pi_* B) + g(K A, K B).
inline double sasaki_inner(const ChartedManifold& m, const BundlePoint& z, const BundleTangent& a,
                           const BundleTangent& b) {
  if (!same_base(a.base, z) || !same_base(b.base, z))
    throw ContractViolation("sasaki_inner: tangent vectors must be based at z");
  require_valid(m, z);
  return sasaki_inner(m.geometry(z.x.coords, false), a, b);
}

namespace detail {
inline MatrixXd sasaki_matrix(const LocalGeometry& geo, const VectorXd& xi) {
  const int n = geo.n;
  MatrixXd m = geo.gamma_matrix(xi);  // M^a_c = Gamma^a_bc xi^b
  MatrixXd gm = geo.g * m;
  MatrixXd out(2 * n, 2 * n);
  out.topLeftCorner(n, n) = geo.g + m.transpose() * gm;
  out.topRightCorner(n, n) = gm.transpose();
  out.bottomLeftCorner(n, n) = gm;
  out.bottomRightCorner(n, n) = geo.g;
  return 0.5 * (out + out.transpose());
}
}  // namespace detail

/**
 * Coordinate matrix of g_s in the induced coordinates (x, xi):
 *   [ g + M^T g M   M^T g ]
 *   [ g M           g     ],   M^a_c = Gamma^a_bc xi^b.
 */
inline MatrixXd sasaki_matrix(const ChartedManifold& m, const BundlePoint& z) {
  require_valid(m, z);
  return detail::sasaki_matrix(m.geometry(z.x.coords, false), z.xi);
}

enum class LiftPair { hh, vh, hv, vv };

inline std::string to_string(LiftPair k) {
  switch (k) {
    case LiftPair::hh: return "hh";
    case LiftPair::vh: return "vh";
    case LiftPair::hv: return "hv";
    case LiftPair::vv: return "vv";
  }
  return "?";
}

/**
 * Kowalski formulas at z = (x, xi), for X a vector at x and Y a vector field near x:
 *   hh:  nabla_{X^h} Y^h = (nabla_X Y)^h - 1/2 (R(X,Y)xi)^v
 *   vh:  nabla_{X^v} Y^h = 1/2 (R(xi,X)Y)^h
 *   hv:  nabla_{X^h} Y^v = (nabla_X Y)^v + 1/2 (R(xi,Y)X)^h
 *   vv:  nabla_{X^v} Y^v = 0
 * Y is extended constantly along the fibre.
 */
inline BundleTangent kowalski_nabla(const ChartedManifold& m, const BundlePoint& z, LiftPair kind,
                                    const TangentVector& x_vec, const SmoothMap& y_field) {
  require_valid(m, z);
  if (!same_base(x_vec.base, z.x)) throw ContractViolation("kowalski_nabla: X must be based at pi(z)");
  const int n = m.dim();
  BundleTangent out{z, VectorXd::Zero(n), VectorXd::Zero(n)};
  if (kind == LiftPair::vv) return out;

  LocalGeometry geo = m.geometry(z.x.coords, true);
  const VectorXd& X = x_vec.comp;
  VectorXd y = y_field.value(z.x.coords);
  switch (kind) {
    case LiftPair::hh: {
      VectorXd nab = y_field.jacobian(z.x.coords) * X + geo.gamma_contract(y, X);
      out.H = nab;
      out.V = -0.5 * geo.riemann(X, y, z.xi);
      break;
    }
    case LiftPair::vh:
      out.H = 0.5 * geo.riemann(z.xi, X, y);
      break;
    case LiftPair::hv: {
      VectorXd nab = y_field.jacobian(z.x.coords) * X + geo.gamma_contract(y, X);
      out.V = nab;
      out.H = 0.5 * geo.riemann(z.xi, y, X);
      break;
    }
    case LiftPair::vv: break;
  }
  return out;
}

}  // namespace sasaki
