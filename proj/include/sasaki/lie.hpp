#pragma once

/**
 * @file lie.hpp
 * @brief Left-invariant geometry of a Lie group with a bi-invariant metric,
 * computed on the Lie algebra.
 *
 * With an ad-invariant inner product the Levi-Civita connection on
 * left-invariant fields is nabla_X Y = 1/2 [X, Y] and the curvature is
 * R(X,Y)Z = -1/4 [[X,Y],Z].
 */

#include <Eigen/Dense>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "sasaki/errors.hpp"
#include "sasaki/tensor.hpp"

namespace sasaki {

class LieAlgebraModel {
 public:
  /// c(k, i, j) = c^k_ij with [e_i, e_j] = c^k_ij e_k. Throws PreconditionError if an invariant fails.
  LieAlgebraModel(std::string name, Tensor3 structure, Eigen::MatrixXd inner)
      : name_(std::move(name)), c_(std::move(structure)), inner_(std::move(inner)) {
    dim_ = c_.extent(0);
    validate();
  }

  const std::string& name() const { return name_; }
  int dim() const { return dim_; }
  const Tensor3& structure_constants() const { return c_; }
  const Eigen::MatrixXd& inner_matrix() const { return inner_; }

  Eigen::VectorXd bracket(const Eigen::VectorXd& x, const Eigen::VectorXd& y) const {
    Eigen::VectorXd out = Eigen::VectorXd::Zero(dim_);
    for (int k = 0; k < dim_; ++k)
      for (int i = 0; i < dim_; ++i)
        for (int j = 0; j < dim_; ++j) out[k] += c_(k, i, j) * x[i] * y[j];
    return out;
  }
  double inner(const Eigen::VectorXd& x, const Eigen::VectorXd& y) const { return x.dot(inner_ * y); }
  double norm(const Eigen::VectorXd& x) const { return std::sqrt(std::max(0.0, inner(x, x))); }

  /// Largest |c^k_ij + c^k_ji|.
  double antisymmetry_defect() const {
    double d = 0.0;
    for (int k = 0; k < dim_; ++k)
      for (int i = 0; i < dim_; ++i)
        for (int j = 0; j < dim_; ++j) d = std::max(d, std::abs(c_(k, i, j) + c_(k, j, i)));
    return d;
  }

  /// Largest Jacobi defect over basis triples.
  double jacobi_defect() const {
    double d = 0.0;
    for (int i = 0; i < dim_; ++i)
      for (int j = 0; j < dim_; ++j)
        for (int k = 0; k < dim_; ++k) {
          auto ei = unit(i), ej = unit(j), ek = unit(k);
          Eigen::VectorXd s = bracket(ei, bracket(ej, ek)) + bracket(ej, bracket(ek, ei)) + bracket(ek, bracket(ei, ej));
          d = std::max(d, s.cwiseAbs().maxCoeff());
        }
    return d;
  }

  /// Largest |<[X,Y],Z> + <Y,[X,Z]>| over basis triples.
  double ad_invariance_defect() const {
    double d = 0.0;
    for (int i = 0; i < dim_; ++i)
      for (int j = 0; j < dim_; ++j)
        for (int k = 0; k < dim_; ++k) {
          auto x = unit(i), y = unit(j), z = unit(k);
          d = std::max(d, std::abs(inner(bracket(x, y), z) + inner(y, bracket(x, z))));
        }
    return d;
  }

  Eigen::VectorXd unit(int i) const { return Eigen::VectorXd::Unit(dim_, i); }

 private:
  void validate() const {
    if (dim_ < 1 || c_.extent(1) != dim_ || c_.extent(2) != dim_)
      throw PreconditionError("structure constants must be a dim x dim x dim array");
    if (inner_.rows() != dim_ || inner_.cols() != dim_) throw PreconditionError("inner product has wrong size");
    if ((inner_ - inner_.transpose()).cwiseAbs().maxCoeff() > 1e-12)
      throw PreconditionError("inner product is not symmetric");
    Eigen::LLT<Eigen::MatrixXd> llt(inner_);
    if (llt.info() != Eigen::Success) throw PreconditionError("inner product is not positive definite");
    if (antisymmetry_defect() > 0.0) throw PreconditionError(name_ + ": structure constants are not antisymmetric");
    if (jacobi_defect() > 1e-12) throw PreconditionError(name_ + ": Jacobi identity fails");
    if (ad_invariance_defect() > 1e-12) throw PreconditionError(name_ + ": inner product is not ad-invariant");
  }

  std::string name_;
  int dim_ = 0;
  Tensor3 c_;
  Eigen::MatrixXd inner_;
};

/// nabla_X Y = 1/2 [X, Y].
inline Eigen::VectorXd lie_nabla(const LieAlgebraModel& a, const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
  return 0.5 * a.bracket(x, y);
}

/// R(X,Y)Z from lie_nabla: 1/4[X,[Y,Z]] - 1/4[Y,[X,Z]] - 1/2[[X,Y],Z].
inline Eigen::VectorXd lie_curvature(const LieAlgebraModel& a, const Eigen::VectorXd& x, const Eigen::VectorXd& y,
                                     const Eigen::VectorXd& z) {
  return lie_nabla(a, x, lie_nabla(a, y, z)) - lie_nabla(a, y, lie_nabla(a, x, z)) - lie_nabla(a, a.bracket(x, y), z);
}

/// <R(X,Y)Y, X> / (|X|^2|Y|^2 - <X,Y>^2).
inline double lie_sectional_curvature(const LieAlgebraModel& a, const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
  double area2 = a.inner(x, x) * a.inner(y, y) - a.inner(x, y) * a.inner(x, y);
  if (area2 <= 0.0) throw PreconditionError("sectional curvature needs independent vectors");
  return a.inner(lie_curvature(a, x, y, y), x) / area2;
}

/// Throws unless span(basis) is closed under the bracket.
inline void require_subalgebra(const LieAlgebraModel& a, const std::vector<Eigen::VectorXd>& basis) {
  if (basis.empty()) throw PreconditionError("subalgebra basis is empty");
  Eigen::MatrixXd B(a.dim(), static_cast<Eigen::Index>(basis.size()));
  for (std::size_t i = 0; i < basis.size(); ++i) {
    if (basis[i].size() != a.dim()) throw PreconditionError("subalgebra basis vector has wrong dimension");
    B.col(static_cast<Eigen::Index>(i)) = basis[i];
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(B);
  if (qr.rank() != B.cols()) throw PreconditionError("subalgebra basis is linearly dependent");
  for (const auto& x : basis)
    for (const auto& y : basis) {
      Eigen::VectorXd br = a.bracket(x, y);
      Eigen::VectorXd coeffs = qr.solve(br);
      double defect = (B * coeffs - br).cwiseAbs().maxCoeff();
      if (defect > 1e-10 * (1.0 + br.cwiseAbs().maxCoeff()))
        throw PreconditionError("basis is not closed under the bracket (not a subalgebra)");
    }
}

/**
 * max over the subalgebra basis of |nabla_X xi| = |1/2 [X, xi]|.
 * Zero iff xi centralizes the subalgebra, i.e. iff xi(H) is totally geodesic in TG.
 */
inline double lie_field_residual(const LieAlgebraModel& a, const std::vector<Eigen::VectorXd>& subalgebra_basis,
                                 const Eigen::VectorXd& xi) {
  require_subalgebra(a, subalgebra_basis);
  if (xi.size() != a.dim()) throw PreconditionError("xi has wrong dimension");
  double r = 0.0;
  for (const auto& x : subalgebra_basis) r = std::max(r, a.norm(lie_nabla(a, x, xi)));
  return r;
}

namespace lie {

/// so(3): [e1,e2]=e3, [e2,e3]=e1, [e3,e1]=e2, unit inner product.
inline LieAlgebraModel so3() {
  Tensor3 c(3);
  auto set = [&](int i, int j, int k) {
    c(k, i, j) = 1.0;
    c(k, j, i) = -1.0;
  };
  set(0, 1, 2);
  set(1, 2, 0);
  set(2, 0, 1);
  return {"so(3)", c, Eigen::MatrixXd::Identity(3, 3)};
}

/// so(3) + R, with e4 spanning the abelian factor.
inline LieAlgebraModel so3_plus_r() {
  Tensor3 c(4);
  auto set = [&](int i, int j, int k) {
    c(k, i, j) = 1.0;
    c(k, j, i) = -1.0;
  };
  set(0, 1, 2);
  set(1, 2, 0);
  set(2, 0, 1);
  return {"so(3)+R", c, Eigen::MatrixXd::Identity(4, 4)};
}

inline LieAlgebraModel abelian(int k) { return {"R^" + std::to_string(k), Tensor3(k), Eigen::MatrixXd::Identity(k, k)}; }

}  // namespace lie

}  // namespace sasaki
