#pragma once

/**
 * @file smooth_map.hpp
 * @brief Type-erased smooth maps R^k -> R^m with first and second derivatives.
 *
 * Two differentiation modes are supported:
 *  - Forward: the map is supplied as a generic callable and instantiated for
 *    double, Dual1 and Dual2. Jacobian and Hessian are exact to rounding.
 *  - FiniteDifference: the map is supplied for double and Dual1 only (this is
 *    what the expression evaluator provides). The Jacobian is exact; the
 *    Hessian is a central difference of dual-evaluated Jacobians with step h.
 */

#include <Eigen/Dense>
#include <functional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "sasaki/dual.hpp"
#include "sasaki/errors.hpp"
#include "sasaki/tensor.hpp"

namespace sasaki {

enum class DiffMode { Forward, FiniteDifference };

/// Value, Jacobian (m x k) and Hessian (m, k, k) of a map at one point.
struct Jet2 {
  Eigen::VectorXd value;
  Eigen::MatrixXd jacobian;
  Tensor3 hessian;
};

class SmoothMap {
 public:
  template <class S>
  using Fn = std::function<std::vector<S>(const std::vector<S>&)>;

  SmoothMap() = default;

  /// Builds a forward-mode map from a generic callable `f(const std::vector<S>&) -> std::vector<S>`.
  template <class F>
  static SmoothMap forward(int in_dim, int out_dim, F f) {
    SmoothMap m;
    m.in_ = in_dim;
    m.out_ = out_dim;
    m.mode_ = DiffMode::Forward;
    m.f0_ = [f](const std::vector<double>& x) { return f(x); };
    m.f1_ = [f](const std::vector<Dual1>& x) { return f(x); };
    m.f2_ = [f](const std::vector<Dual2>& x) { return f(x); };
    return m;
  }

  static SmoothMap finite_difference(int in_dim, int out_dim, Fn<double> f0, Fn<Dual1> f1, double step) {
    if (!(step > 0.0)) throw std::invalid_argument("finite-difference step must be positive");
    SmoothMap m;
    m.in_ = in_dim;
    m.out_ = out_dim;
    m.mode_ = DiffMode::FiniteDifference;
    m.f0_ = std::move(f0);
    m.f1_ = std::move(f1);
    m.step_ = step;
    return m;
  }

  int in_dim() const { return in_; }
  int out_dim() const { return out_; }
  DiffMode mode() const { return mode_; }
  double fd_step() const { return step_; }
  bool valid() const { return static_cast<bool>(f0_); }

  Eigen::VectorXd value(const Eigen::VectorXd& u) const {
    check_in(u);
    std::vector<double> x(u.data(), u.data() + u.size());
    return to_eigen(f0_(x));
  }

  Eigen::MatrixXd jacobian(const Eigen::VectorXd& u) const {
    check_in(u);
    Eigen::MatrixXd jac(out_, in_);
    std::vector<Dual1> x(in_);
    for (int i = 0; i < in_; ++i) {
      for (int k = 0; k < in_; ++k) x[k] = Dual1(u[k], k == i ? 1.0 : 0.0);
      auto y = f1_(x);
      check_out(y.size());
      for (int a = 0; a < out_; ++a) jac(a, i) = y[a].d;
    }
    return jac;
  }

  /// Value, Jacobian and Hessian in one pass.
  Jet2 jet(const Eigen::VectorXd& u) const {
    check_in(u);
    Jet2 j;
    j.value.resize(out_);
    j.jacobian.resize(out_, in_);
    j.hessian = Tensor3(out_, in_, in_);
    if (mode_ == DiffMode::Forward) {
      std::vector<Dual2> x(in_);
      if (in_ == 0) {
        std::vector<double> x0;
        j.value = to_eigen(f0_(x0));
        return j;
      }
      for (int i = 0; i < in_; ++i) {
        for (int k = i; k < in_; ++k) {
          for (int p = 0; p < in_; ++p)
            x[p] = Dual2(Dual1(u[p], p == i ? 1.0 : 0.0), Dual1(p == k ? 1.0 : 0.0, 0.0));
          auto y = f2_(x);
          check_out(y.size());
          for (int a = 0; a < out_; ++a) {
            if (i == 0 && k == 0) j.value[a] = y[a].v.v;
            if (k == i) j.jacobian(a, i) = y[a].v.d;
            j.hessian(a, i, k) = y[a].d.d;
            j.hessian(a, k, i) = y[a].d.d;
          }
        }
      }
    } else {
      j.value = value(u);
      j.jacobian = jacobian(u);
      for (int k = 0; k < in_; ++k) {
        Eigen::VectorXd up = u, um = u;
        up[k] += step_;
        um[k] -= step_;
        Eigen::MatrixXd dj = (jacobian(up) - jacobian(um)) / (2.0 * step_);
        for (int a = 0; a < out_; ++a)
          for (int i = 0; i < in_; ++i) j.hessian(a, i, k) = dj(a, i);
      }
      // symmetrize
      for (int a = 0; a < out_; ++a)
        for (int i = 0; i < in_; ++i)
          for (int k = i + 1; k < in_; ++k) {
            double s = 0.5 * (j.hessian(a, i, k) + j.hessian(a, k, i));
            j.hessian(a, i, k) = s;
            j.hessian(a, k, i) = s;
          }
    }
    return j;
  }

  /// Evaluation on dual inputs; used to compose maps (chain rule through the callable).
  std::vector<Dual1> eval(const std::vector<Dual1>& x) const { return f1_(x); }
  std::vector<double> eval(const std::vector<double>& x) const { return f0_(x); }
  /// Second-order evaluation; only available in Forward mode.
  std::vector<Dual2> eval(const std::vector<Dual2>& x) const {
    if (!f2_) throw std::logic_error("second-order evaluation requires a forward-mode map");
    return f2_(x);
  }
  bool has_second_order() const { return static_cast<bool>(f2_); }

 private:
  void check_in(const Eigen::VectorXd& u) const {
    if (u.size() != in_)
      throw ContractViolation("smooth map expects " + std::to_string(in_) + " inputs, got " +
                              std::to_string(u.size()));
  }
  void check_out(std::size_t got) const {
    if (static_cast<int>(got) != out_)
      throw ContractViolation("smooth map produced " + std::to_string(got) + " outputs, expected " +
                              std::to_string(out_));
  }
  Eigen::VectorXd to_eigen(const std::vector<double>& y) const {
    check_out(y.size());
    return Eigen::Map<const Eigen::VectorXd>(y.data(), static_cast<Eigen::Index>(y.size()));
  }

  int in_ = 0;
  int out_ = 0;
  DiffMode mode_ = DiffMode::Forward;
  double step_ = 1e-4;
  Fn<double> f0_;
  Fn<Dual1> f1_;
  Fn<Dual2> f2_;
};

}  // namespace sasaki
