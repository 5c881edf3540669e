#pragma once

/**
 * @file manifold.hpp
 * @brief Chart-based Riemannian manifold kernel.
 *
 * A ChartedManifold is a single coordinate chart together with a smooth
 * metric evaluator. Everything else (Christoffel symbols, their derivatives,
 * the curvature operator) is derived from the metric jet at a point and
 * packaged in a LocalGeometry.
 *
 * Curvature convention: R(X,Y)Z = nabla_X nabla_Y Z - nabla_Y nabla_X Z - nabla_[X,Y] Z,
 * so that on a space of constant curvature c
 *   R(X,Y)Z = c (g(Y,Z) X - g(X,Z) Y).
 */

#include <Eigen/Dense>
#include <cmath>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <utility>

#include "sasaki/errors.hpp"
#include "sasaki/smooth_map.hpp"
#include "sasaki/tensor.hpp"

namespace sasaki {

using Eigen::MatrixXd;
using Eigen::VectorXd;

/// Closed axis-aligned box.
struct Box {
  VectorXd lower;
  VectorXd upper;

  static Box cube(int dim, double lo, double hi) {
    return {VectorXd::Constant(dim, lo), VectorXd::Constant(dim, hi)};
  }
  int dim() const { return static_cast<int>(lower.size()); }
  bool contains(const VectorXd& x) const {
    if (x.size() != lower.size()) return false;
    for (Eigen::Index i = 0; i < x.size(); ++i)
      if (!(x[i] >= lower[i] && x[i] <= upper[i])) return false;
    return true;
  }
};

inline std::string format_point(const VectorXd& x) {
  std::ostringstream os;
  os << "(";
  for (Eigen::Index i = 0; i < x.size(); ++i) os << (i ? ", " : "") << x[i];
  os << ")";
  return os.str();
}

struct Point {
  VectorXd coords;
};

struct TangentVector {
  Point base;
  VectorXd comp;
};

inline bool same_base(const Point& a, const Point& b) {
  return a.coords.size() == b.coords.size() && a.coords == b.coords;
}

/// Metric-derived data at one chart point.
struct LocalGeometry {
  int n = 0;
  MatrixXd g;
  MatrixXd ginv;
  Tensor3 gamma;   // gamma(a,b,c) = Gamma^a_bc
  Tensor4 dgamma;  // dgamma(a,b,c,d) = d_d Gamma^a_bc (empty unless curvature was requested)
  bool has_curvature = false;

  double inner(const VectorXd& x, const VectorXd& y) const { return x.dot(g * y); }
  double norm(const VectorXd& x) const { return std::sqrt(std::max(0.0, inner(x, x))); }

  /// Gamma^a_bc x^b y^c
  VectorXd gamma_contract(const VectorXd& x, const VectorXd& y) const {
    VectorXd out = VectorXd::Zero(n);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        if (x[b] == 0.0) continue;
        for (int c = 0; c < n; ++c) out[a] += gamma(a, b, c) * x[b] * y[c];
      }
    return out;
  }

  /// M^a_c = Gamma^a_bc xi^b, the matrix of the connection map's correction term.
  MatrixXd gamma_matrix(const VectorXd& xi) const {
    MatrixXd m = MatrixXd::Zero(n, n);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c) m(a, c) += gamma(a, b, c) * xi[b];
    return m;
  }

  /// R^a_bcd with R(d_c, d_d) d_b = R^a_bcd d_a.
  double riemann_component(int a, int b, int c, int d) const {
    double r = dgamma(a, d, b, c) - dgamma(a, c, b, d);
    for (int e = 0; e < n; ++e) r += gamma(a, c, e) * gamma(e, d, b) - gamma(a, d, e) * gamma(e, c, b);
    return r;
  }

  /// R(X,Y)Z.
  VectorXd riemann(const VectorXd& x, const VectorXd& y, const VectorXd& z) const {
    if (!has_curvature) throw std::logic_error("LocalGeometry built without curvature data");
    VectorXd out = VectorXd::Zero(n);
    for (int c = 0; c < n; ++c) {
      if (x[c] == 0.0) continue;
      for (int d = 0; d < n; ++d) {
        if (y[d] == 0.0) continue;
        for (int b = 0; b < n; ++b) {
          if (z[b] == 0.0) continue;
          double w = z[b] * x[c] * y[d];
          for (int a = 0; a < n; ++a) out[a] += riemann_component(a, b, c, d) * w;
        }
      }
    }
    return out;
  }
};

class ChartedManifold {
 public:
  using DomainPredicate = std::function<bool(const VectorXd&)>;

  ChartedManifold() = default;
  ChartedManifold(std::string name, int dim, SmoothMap metric, Box domain, DomainPredicate predicate = {})
      : name_(std::move(name)), dim_(dim), metric_(std::move(metric)), domain_(std::move(domain)),
        predicate_(std::move(predicate)) {
    if (dim_ < 1) throw std::invalid_argument("manifold dimension must be positive");
    if (metric_.in_dim() != dim_ || metric_.out_dim() != dim_ * dim_)
      throw ContractViolation("metric evaluator must map R^n to R^(n*n)");
    if (domain_.dim() != dim_) throw ContractViolation("chart domain dimension mismatch");
  }

  /// Forward-mode manifold from a generic metric callable returning n*n entries row-major.
  template <class F>
  static ChartedManifold from_generic(std::string name, int dim, Box domain, F f, DomainPredicate pred = {}) {
    return ChartedManifold(std::move(name), dim, SmoothMap::forward(dim, dim * dim, std::move(f)),
                           std::move(domain), std::move(pred));
  }

  const std::string& name() const { return name_; }
  int dim() const { return dim_; }
  const Box& domain() const { return domain_; }
  const SmoothMap& metric_map() const { return metric_; }
  DiffMode differentiation_mode() const { return metric_.mode(); }

  bool contains(const VectorXd& x) const {
    return domain_.contains(x) && (!predicate_ || predicate_(x));
  }

  void require_in_domain(const VectorXd& x) const {
    if (x.size() != dim_)
      throw ContractViolation("point has " + std::to_string(x.size()) + " coordinates, chart has dimension " +
                              std::to_string(dim_));
    if (!contains(x)) throw DomainError("point " + format_point(x) + " is outside the domain of chart '" + name_ + "'");
  }

  /// g_ab(x): symmetric positive definite.
  MatrixXd metric(const VectorXd& x) const {
    require_in_domain(x);
    VectorXd flat = metric_.value(x);
    return checked_metric(unflatten(flat), x);
  }
  MatrixXd metric(const Point& p) const { return metric(p.coords); }

  /// Local geometry at x. With `curvature`, derivatives of the Christoffel symbols are included.
  LocalGeometry geometry(const VectorXd& x, bool curvature = true) const {
    require_in_domain(x);
    const int n = dim_;
    LocalGeometry geo;
    geo.n = n;
    MatrixXd jac;  // (n*n) x n : d_c g_ab at row a*n+b
    Tensor3 hess;  // (n*n, n, n)
    if (curvature) {
      Jet2 j = metric_.jet(x);
      geo.g = checked_metric(unflatten(j.value), x);
      jac = std::move(j.jacobian);
      hess = std::move(j.hessian);
    } else {
      geo.g = checked_metric(unflatten(metric_.value(x)), x);
      jac = metric_.jacobian(x);
    }
    Eigen::LLT<MatrixXd> llt(geo.g);
    if (llt.info() != Eigen::Success)
      throw LinearAlgebraError("metric is not positive definite at " + format_point(x));
    geo.ginv = llt.solve(MatrixXd::Identity(n, n));
    geo.ginv = 0.5 * (geo.ginv + geo.ginv.transpose()).eval();

    auto dg = [&](int a, int b, int c) { return jac(a * n + b, c); };
    // S_ebc = d_b g_ec + d_c g_eb - d_e g_bc
    Tensor3 s(n);
    for (int e = 0; e < n; ++e)
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c) s(e, b, c) = dg(e, c, b) + dg(e, b, c) - dg(b, c, e);
    geo.gamma = Tensor3(n);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int c = b; c < n; ++c) {
          double v = 0.0;
          for (int e = 0; e < n; ++e) v += 0.5 * geo.ginv(a, e) * s(e, b, c);
          geo.gamma(a, b, c) = v;
          geo.gamma(a, c, b) = v;
        }

    if (curvature) {
      auto ddg = [&](int a, int b, int c, int d) { return hess(a * n + b, c, d); };
      geo.dgamma = Tensor4(n);
      for (int d = 0; d < n; ++d) {
        // d_d g^{ae} = -g^{ap} d_d g_pq g^{qe}
        MatrixXd dgd(n, n);
        for (int p = 0; p < n; ++p)
          for (int q = 0; q < n; ++q) dgd(p, q) = dg(p, q, d);
        MatrixXd dginv = -geo.ginv * dgd * geo.ginv;
        for (int a = 0; a < n; ++a)
          for (int b = 0; b < n; ++b)
            for (int c = b; c < n; ++c) {
              double v = 0.0;
              for (int e = 0; e < n; ++e) {
                double ds = ddg(e, c, b, d) + ddg(e, b, c, d) - ddg(b, c, e, d);
                v += 0.5 * (dginv(a, e) * s(e, b, c) + geo.ginv(a, e) * ds);
              }
              geo.dgamma(a, b, c, d) = v;
              geo.dgamma(a, c, b, d) = v;
            }
      }
      geo.has_curvature = true;
    }
    return geo;
  }

 private:
  MatrixXd unflatten(const VectorXd& flat) const {
    MatrixXd g(dim_, dim_);
    for (int a = 0; a < dim_; ++a)
      for (int b = 0; b < dim_; ++b) g(a, b) = flat[a * dim_ + b];
    return g;
  }

  static MatrixXd checked_metric(const MatrixXd& g, const VectorXd& x) {
    double scale = std::max(1.0, g.cwiseAbs().maxCoeff());
    if (!g.allFinite()) throw LinearAlgebraError("metric has non-finite entries at " + format_point(x));
    if ((g - g.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale)
      throw LinearAlgebraError("metric is not symmetric at " + format_point(x));
    return 0.5 * (g + g.transpose());
  }

  std::string name_;
  int dim_ = 0;
  SmoothMap metric_;
  Box domain_;
  DomainPredicate predicate_;
};

/// Gamma^a_bc at x; symmetric in (b, c) by construction.
inline Tensor3 christoffel(const ChartedManifold& m, const Point& x) { return m.geometry(x.coords, false).gamma; }

/// R(X,Y)Z at the common base point of X, Y, Z.
inline TangentVector riemann_op(const ChartedManifold& m, const Point& x, const TangentVector& X,
                                const TangentVector& Y, const TangentVector& Z) {
  if (!same_base(X.base, x) || !same_base(Y.base, x) || !same_base(Z.base, x))
    throw ContractViolation("riemann_op: tangent vectors must be based at the evaluation point");
  LocalGeometry geo = m.geometry(x.coords, true);
  return {x, geo.riemann(X.comp, Y.comp, Z.comp)};
}

/**
 * Covariant derivative of W(u) along the i-th parameter curve of x(u):
 *   (nabla_i W)^a = d_i W^a + Gamma^a_bc W^b d_i x^c.
 */
inline TangentVector covariant_derivative_along(const ChartedManifold& m, const SmoothMap& patch_map,
                                                const SmoothMap& field, const VectorXd& u, int dir,
                                                const std::optional<Box>& u_domain = std::nullopt) {
  if (u_domain && !u_domain->contains(u))
    throw DomainError("parameter " + format_point(u) + " is outside the patch domain");
  if (dir < 0 || dir >= patch_map.in_dim()) throw ContractViolation("direction index out of range");
  VectorXd x = patch_map.value(u);
  MatrixXd jx = patch_map.jacobian(u);
  VectorXd w = field.value(u);
  MatrixXd jw = field.jacobian(u);
  LocalGeometry geo = m.geometry(x, false);
  VectorXd out = jw.col(dir) + geo.gamma_contract(w, jx.col(dir));
  return {Point{x}, out};
}

}  // namespace sasaki
