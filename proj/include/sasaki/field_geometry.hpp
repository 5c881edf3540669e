#pragma once

/**
 * @file field_geometry.hpp
 * @brief Geometry of xi(F) in (TM, g_s) for a vector field xi along a patch F.
 *
 * All quantities are evaluated on the coordinate fields d/du^i of the patch.
 * The tangent frame of xi(F) is e_i = (d_i)^h + (nabla_i xi)^v; the normal
 * frame, the xi-connection, Omega_xi and the totally-geodesic residuals are
 * built on top of one PatchJet holding every derivative needed at u.
 */

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "sasaki/bundle.hpp"
#include "sasaki/manifold.hpp"

namespace sasaki {

struct SubmanifoldPatch {
  ChartedManifold ambient;
  SmoothMap immersion;  // R^l -> R^n
  Box domain;           // box in R^l

  SubmanifoldPatch() = default;
  SubmanifoldPatch(ChartedManifold m, SmoothMap imm, Box dom)
      : ambient(std::move(m)), immersion(std::move(imm)), domain(std::move(dom)) {
    if (immersion.out_dim() != ambient.dim())
      throw ContractViolation("immersion must have " + std::to_string(ambient.dim()) + " components");
    if (immersion.in_dim() != domain.dim()) throw ContractViolation("patch domain dimension mismatch");
    if (immersion.in_dim() < 1 || immersion.in_dim() > ambient.dim())
      throw ContractViolation("patch dimension l must satisfy 1 <= l <= n");
  }

  int l() const { return immersion.in_dim(); }
  int n() const { return ambient.dim(); }

  void require_in_domain(const VectorXd& u) const {
    if (u.size() != l()) throw ContractViolation("patch parameter has wrong dimension");
    if (!domain.contains(u)) throw DomainError("parameter " + format_point(u) + " is outside the patch domain");
  }

  /// The identity patch x(u) = u over the whole chart domain (l = n).
  static SubmanifoldPatch identity(const ChartedManifold& m) {
    const int n = m.dim();
    return {m, SmoothMap::forward(n, n, [](const auto& u) { return u; }), m.domain()};
  }
};

struct FieldAlongPatch {
  SubmanifoldPatch patch;
  SmoothMap value;  // u -> xi^a(x(u))

  FieldAlongPatch() = default;
  FieldAlongPatch(SubmanifoldPatch p, SmoothMap v) : patch(std::move(p)), value(std::move(v)) {
    if (value.in_dim() != patch.l() || value.out_dim() != patch.n())
      throw ContractViolation("field along patch must map R^l to R^n");
  }
};

/// Pass/fail thresholds for a residual; values strictly between are inconclusive.
struct Tolerances {
  double pass = 1e-6;
  double fail = 1e-3;
};

enum class Verdict { Pass, Fail, Inconclusive };

inline std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    case Verdict::Inconclusive: return "inconclusive - refine differentiation step";
  }
  return "?";
}

inline Verdict classify(double residual, const Tolerances& tol) {
  if (residual <= tol.pass) return Verdict::Pass;
  if (residual >= tol.fail) return Verdict::Fail;
  return Verdict::Inconclusive;
}

struct TGReport {
  VectorXd u;
  double res_a = 0.0;  // normal part of the xi-connection
  double res_b = 0.0;  // second-derivative condition
  double frame_cond = 1.0;
  Verdict verdict = Verdict::Pass;

  double residual() const { return std::max(res_a, res_b); }
};

/// Every derivative of the patch and the field needed at one parameter value.
struct PatchJet {
  int n = 0;
  int l = 0;
  VectorXd u;
  VectorXd x;
  MatrixXd J;  // n x l, columns are the coordinate tangent vectors d_i x
  Tensor3 hess_x;
  VectorXd xi;
  MatrixXd dxi;  // n x l, partial derivatives d_i xi
  Tensor3 hess_xi;
  LocalGeometry geo;
  MatrixXd first_ff;      // g_ij = gbar(d_i x, d_j x)
  MatrixXd first_ff_inv;
  MatrixXd nabla_xi;                // column i is nabla_i xi
  std::vector<VectorXd> nabla_dx;   // [i*l+j] nabla_i d_j
  std::vector<VectorXd> nabla2_xi;  // [i*l+j] nabla_i nabla_j xi

  VectorXd tangent(int i) const { return J.col(i); }
  const VectorXd& nabla_d(int i, int j) const { return nabla_dx[i * l + j]; }
  const VectorXd& nabla_nabla_xi(int i, int j) const { return nabla2_xi[i * l + j]; }

  /// Coefficients t of the tangential part J t of an ambient vector.
  VectorXd tangential_coeffs(const VectorXd& v) const { return first_ff_inv * (J.transpose() * (geo.g * v)); }
  VectorXd tangential(const VectorXd& v) const { return J * tangential_coeffs(v); }
  VectorXd normal(const VectorXd& v) const { return v - tangential(v); }
};

inline PatchJet patch_jet(const FieldAlongPatch& f, const VectorXd& u) {
  const SubmanifoldPatch& p = f.patch;
  p.require_in_domain(u);
  PatchJet j;
  j.n = p.n();
  j.l = p.l();
  j.u = u;
  Jet2 xj = p.immersion.jet(u);
  j.x = xj.value;
  j.J = xj.jacobian;
  j.hess_x = std::move(xj.hessian);
  Jet2 fj = f.value.jet(u);
  j.xi = fj.value;
  j.dxi = fj.jacobian;
  j.hess_xi = std::move(fj.hessian);
  j.geo = p.ambient.geometry(j.x, true);

  const int n = j.n, l = j.l;
  j.first_ff = j.J.transpose() * j.geo.g * j.J;
  j.first_ff = 0.5 * (j.first_ff + j.first_ff.transpose()).eval();
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(j.first_ff);
  double emax = es.eigenvalues().maxCoeff();
  double emin = es.eigenvalues().minCoeff();
  if (!(emax > 0.0) || emin <= 1e-12 * emax)
    throw DegenerateImmersion("immersion is not of rank " + std::to_string(l) + " at u = " + format_point(u));
  j.first_ff_inv = j.first_ff.inverse();

  j.nabla_xi.resize(n, l);
  for (int i = 0; i < l; ++i) j.nabla_xi.col(i) = j.dxi.col(i) + j.geo.gamma_contract(j.xi, j.J.col(i));

  j.nabla_dx.resize(std::size_t(l) * l);
  j.nabla2_xi.resize(std::size_t(l) * l);
  for (int i = 0; i < l; ++i) {
    VectorXd xi_i = j.J.col(i);
    for (int jj = 0; jj < l; ++jj) {
      VectorXd xj_col = j.J.col(jj);
      VectorXd hx(n);
      for (int a = 0; a < n; ++a) hx[a] = j.hess_x(a, i, jj);
      j.nabla_dx[i * l + jj] = hx + j.geo.gamma_contract(xj_col, xi_i);

      // d_i of eta_j = d_j xi + Gamma(xi, d_j x), then covariant correction.
      VectorXd d_eta(n);
      for (int a = 0; a < n; ++a) {
        double s = j.hess_xi(a, jj, i);
        for (int b = 0; b < n; ++b)
          for (int c = 0; c < n; ++c) {
            double dgam = 0.0;
            for (int d = 0; d < n; ++d) dgam += j.geo.dgamma(a, b, c, d) * xi_i[d];
            s += dgam * j.xi[b] * xj_col[c];
            s += j.geo.gamma(a, b, c) * (j.dxi(b, i) * xj_col[c] + j.xi[b] * j.hess_x(c, jj, i));
          }
        d_eta[a] = s;
      }
      j.nabla2_xi[i * l + jj] = d_eta + j.geo.gamma_contract(j.nabla_xi.col(jj), xi_i);
    }
  }
  return j;
}

/// e_i = (d_i)^h + (nabla_i xi)^v.
inline std::vector<BundleTangent> tangent_frame(const PatchJet& j) {
  BundlePoint z{Point{j.x}, j.xi};
  std::vector<BundleTangent> frame;
  frame.reserve(j.l);
  for (int i = 0; i < j.l; ++i) frame.push_back({z, j.J.col(i), j.nabla_xi.col(i)});
  return frame;
}
inline std::vector<BundleTangent> tangent_frame(const FieldAlongPatch& f, const VectorXd& u) {
  return tangent_frame(patch_jet(f, u));
}

/// Metric of xi(F) induced by g_s: g(X,Y) + gbar(nabla_X xi, nabla_Y xi).
inline MatrixXd induced_metric(const PatchJet& j) {
  MatrixXd m = j.first_ff + j.nabla_xi.transpose() * j.geo.g * j.nabla_xi;
  return 0.5 * (m + m.transpose());
}
inline MatrixXd induced_metric(const FieldAlongPatch& f, const VectorXd& u) { return induced_metric(patch_jet(f, u)); }

inline void require_based_at(const PatchJet& j, const TangentVector& w) {
  if (w.base.coords.size() != j.x.size() ||
      (w.base.coords - j.x).cwiseAbs().maxCoeff() > 1e-12 * (1.0 + j.x.cwiseAbs().maxCoeff()))
    throw ContractViolation("vector must be based at x(u) = " + format_point(j.x));
}

namespace detail {
inline VectorXd conjugate(const PatchJet& j, const VectorXd& w) {
  return j.first_ff_inv * (j.nabla_xi.transpose() * (j.geo.g * w));
}
}  // namespace detail

/// (nabla xi)^* W in the coordinate basis d/du^i: g^{ik} gbar(nabla_k xi, W).
inline VectorXd conjugate_derivative(const PatchJet& j, const TangentVector& w) {
  require_based_at(j, w);
  return detail::conjugate(j, w.comp);
}
inline VectorXd conjugate_derivative(const FieldAlongPatch& f, const VectorXd& u, const TangentVector& w) {
  return conjugate_derivative(patch_jet(f, u), w);
}

/**
 * gbar-orthonormal basis of the normal space of F at x(u): Gram-Schmidt of the
 * chart basis e_1..e_n against the patch tangent vectors, in index order.
 */
inline MatrixXd normal_basis(const PatchJet& j) {
  const int n = j.n, l = j.l;
  std::vector<VectorXd> basis;
  auto orthogonalize = [&](VectorXd v) {
    for (const auto& b : basis) v -= j.geo.inner(b, v) * b;
    return v;
  };
  for (int i = 0; i < l; ++i) {
    VectorXd v = orthogonalize(j.J.col(i));
    basis.push_back(v / j.geo.norm(v));
  }
  MatrixXd normals(n, n - l);
  int found = 0;
  for (int a = 0; a < n && found < n - l; ++a) {
    VectorXd e = VectorXd::Unit(n, a);
    double scale = j.geo.norm(e);
    VectorXd v = orthogonalize(e);
    v = orthogonalize(v);  // second pass for stability
    double nv = j.geo.norm(v);
    if (nv <= 1e-8 * scale) continue;
    v /= nv;
    basis.push_back(v);
    normals.col(found++) = v;
  }
  if (found != n - l) throw DegenerateImmersion("could not complete a normal basis at " + format_point(j.x));
  return normals;
}

struct NormalFrame {
  std::vector<BundleTangent> horizontal;  // eta^h
  std::vector<BundleTangent> mixed;       // eta^v - ((nabla xi)^* eta)^h
  std::vector<BundleTangent> tangential;  // Z^v - ((nabla xi)^* Z)^h

  std::vector<BundleTangent> all() const {
    std::vector<BundleTangent> v = horizontal;
    v.insert(v.end(), mixed.begin(), mixed.end());
    v.insert(v.end(), tangential.begin(), tangential.end());
    return v;
  }
};

/// 2n - l vectors spanning the g_s-normal space of xi(F); Z runs over the coordinate tangents d_i x.
inline NormalFrame normal_frame(const PatchJet& j) {
  BundlePoint z{Point{j.x}, j.xi};
  MatrixXd eta = normal_basis(j);
  NormalFrame frame;
  const int n = j.n;
  for (int a = 0; a < eta.cols(); ++a) {
    VectorXd e = eta.col(a);
    frame.horizontal.push_back({z, e, VectorXd::Zero(n)});
    frame.mixed.push_back({z, -j.J * detail::conjugate(j, e), e});
  }
  for (int i = 0; i < j.l; ++i) {
    VectorXd t = j.J.col(i);
    frame.tangential.push_back({z, -j.J * detail::conjugate(j, t), t});
  }
  return frame;
}
inline NormalFrame normal_frame(const FieldAlongPatch& f, const VectorXd& u) { return normal_frame(patch_jet(f, u)); }

/// h_xi(d_i, d_j) = 1/2 [R(xi, nabla_i xi) d_j + R(xi, nabla_j xi) d_i].
inline VectorXd xi_second_form(const PatchJet& j, int i, int k) {
  return 0.5 * (j.geo.riemann(j.xi, j.nabla_xi.col(i), j.J.col(k)) + j.geo.riemann(j.xi, j.nabla_xi.col(k), j.J.col(i)));
}

/// xi-connection on coordinate fields: *nabla_i d_j = nabla_i d_j + h_xi(d_i, d_j).
inline VectorXd xi_connection(const PatchJet& j, int i, int k) { return j.nabla_d(i, k) + xi_second_form(j, i, k); }

inline TangentVector xi_connection(const FieldAlongPatch& f, const VectorXd& u, int i, int k) {
  PatchJet j = patch_jet(f, u);
  if (i < 0 || k < 0 || i >= j.l || k >= j.l) throw ContractViolation("xi_connection: index out of range");
  return {Point{j.x}, xi_connection(j, i, k)};
}

namespace detail {
inline bool is_tangent(const PatchJet& j, const VectorXd& v) {
  if (j.l == j.n) return true;
  return j.geo.norm(j.normal(v)) <= 1e-9 * (1.0 + j.geo.norm(v));
}
/// nabla_v xi for v tangent to the patch.
inline VectorXd nabla_along(const PatchJet& j, const VectorXd& v, const char* what) {
  if (!is_tangent(j, v))
    throw ExtensionRequired(std::string(what) +
                            " is not tangent to the patch; xi must be extended off F to differentiate along it");
  return j.nabla_xi * j.tangential_coeffs(v);
}
}  // namespace detail

/**
 * Omega_xi(d_i, d_j) = nabla_{h_xi(d_i,d_j)} xi + 1/2 [(nabla_i A) d_j + (nabla_j A) d_i]
 * with A_xi Y = -nabla_Y xi, so (nabla_i A) d_j = -nabla_i nabla_j xi + nabla_{nabla_i d_j} xi.
 * For l < n only tangent arguments of nabla xi can be evaluated; otherwise ExtensionRequired.
 */
inline VectorXd omega_xi(const PatchJet& j, int i, int k) {
  VectorXd h = xi_second_form(j, i, k);
  VectorXd out = detail::nabla_along(j, h, "h_xi(X,Y)");
  VectorXd dA_ik = -j.nabla_nabla_xi(i, k) + detail::nabla_along(j, j.nabla_d(i, k), "nabla_X Y");
  VectorXd dA_ki = -j.nabla_nabla_xi(k, i) + detail::nabla_along(j, j.nabla_d(k, i), "nabla_Y X");
  return out + 0.5 * (dA_ik + dA_ki);
}
inline TangentVector omega_xi(const FieldAlongPatch& f, const VectorXd& u, int i, int k) {
  PatchJet j = patch_jet(f, u);
  if (i < 0 || k < 0 || i >= j.l || k >= j.l) throw ContractViolation("omega_xi: index out of range");
  return {Point{j.x}, omega_xi(j, i, k)};
}

/// Residual vector of the second-derivative condition: nabla_i nabla_j xi - nabla_{tan(*nabla_i d_j)} xi - 1/2 R(d_i, d_j) xi.
inline VectorXd condition_b_vector(const PatchJet& j, int i, int k) {
  VectorXd star = xi_connection(j, i, k);
  VectorXd along = j.nabla_xi * j.tangential_coeffs(star);
  return j.nabla_nabla_xi(i, k) - along - 0.5 * j.geo.riemann(j.J.col(i), j.J.col(k), j.xi);
}

/// Condition number of the metric induced on xi(F).
inline double frame_condition(const PatchJet& j) {
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(induced_metric(j));
  double lo = es.eigenvalues().minCoeff();
  double hi = es.eigenvalues().maxCoeff();
  return lo > 0.0 ? hi / lo : std::numeric_limits<double>::infinity();
}

inline TGReport tg_residuals(const PatchJet& j, const Tolerances& tol = {}) {
  TGReport r;
  r.u = j.u;
  for (int i = 0; i < j.l; ++i)
    for (int k = 0; k < j.l; ++k) {
      VectorXd star = xi_connection(j, i, k);
      r.res_a = std::max(r.res_a, j.geo.norm(j.normal(star)));
      r.res_b = std::max(r.res_b, j.geo.norm(condition_b_vector(j, i, k)));
    }
  r.frame_cond = frame_condition(j);
  r.verdict = classify(r.residual(), tol);
  return r;
}
inline TGReport tg_residuals(const FieldAlongPatch& f, const VectorXd& u, const Tolerances& tol = {}) {
  return tg_residuals(patch_jet(f, u), tol);
}

/// max_{i,j} |normal part of nabla_i d_j|: the plain second fundamental form of F.
inline double second_fundamental_residual(const PatchJet& j) {
  double r = 0.0;
  for (int i = 0; i < j.l; ++i)
    for (int k = 0; k < j.l; ++k) r = std::max(r, j.geo.norm(j.normal(j.nabla_d(i, k))));
  return r;
}

/// max_i |nabla_i xi|.
inline double max_nabla_xi_norm(const PatchJet& j) {
  double r = 0.0;
  for (int i = 0; i < j.l; ++i) r = std::max(r, j.geo.norm(j.nabla_xi.col(i)));
  return r;
}

/// nabla^perp_i xi for a normal field xi.
inline VectorXd normal_covariant_derivative(const PatchJet& j, int i) {
  if (i < 0 || i >= j.l) throw ContractViolation("normal_covariant_derivative: index out of range");
  double xn = j.geo.norm(j.xi);
  for (int k = 0; k < j.l; ++k) {
    double s = j.geo.inner(j.xi, j.J.col(k));
    if (std::abs(s) > 1e-9 * (1.0 + xn * j.geo.norm(j.J.col(k))))
      throw PreconditionError("field is not normal to the patch at u = " + format_point(j.u));
  }
  return j.normal(j.nabla_xi.col(i));
}
inline TangentVector normal_covariant_derivative(const FieldAlongPatch& f, const VectorXd& u, int i) {
  PatchJet j = patch_jet(f, u);
  return {Point{j.x}, normal_covariant_derivative(j, i)};
}

/**
 * Uniform grid over a box, `per_dim` points per axis, keeping clear of a
 * `margin` fraction of each side. A single point per axis sits at the centre.
 */
inline std::vector<VectorXd> grid_points(const Box& box, int per_dim, double margin = 0.1) {
  const int d = box.dim();
  std::vector<VectorXd> axes(d);
  for (int k = 0; k < d; ++k) {
    double w = box.upper[k] - box.lower[k];
    double lo = box.lower[k] + margin * w, hi = box.upper[k] - margin * w;
    axes[k].resize(per_dim);
    for (int t = 0; t < per_dim; ++t)
      axes[k][t] = per_dim == 1 ? 0.5 * (lo + hi) : lo + (hi - lo) * double(t) / double(per_dim - 1);
  }
  std::vector<VectorXd> pts;
  std::vector<int> idx(d, 0);
  while (true) {
    VectorXd p(d);
    for (int k = 0; k < d; ++k) p[k] = axes[k][idx[k]];
    pts.push_back(p);
    int k = d - 1;
    while (k >= 0 && ++idx[k] == per_dim) idx[k--] = 0;
    if (k < 0) break;
  }
  return pts;
}

}  // namespace sasaki
