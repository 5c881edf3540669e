#pragma once

/**
 * @file dual.hpp
 * @brief Forward-mode dual numbers, nestable for second derivatives.
 *
 * A Dual<T> carries a value and one directional derivative. Nesting
 * (Dual<Dual<double>>) yields mixed second derivatives: seed the inner
 * derivative with direction e_i and the outer one with e_j, and the
 * innermost derivative slot of the result holds d_i d_j f.
 */

#include <cmath>
#include <type_traits>

namespace sasaki {

template <class T>
struct Dual {
  T v{};  // value
  T d{};  // directional derivative

  constexpr Dual() = default;
  constexpr Dual(double x) : v(x), d(0.0) {}  // NOLINT: implicit by design of the number tower
  template <class U>
    requires(std::is_same_v<U, T> && !std::is_same_v<T, double>)
  constexpr Dual(const U& x) : v(x), d(0.0) {}  // NOLINT
  constexpr Dual(T value, T derivative) : v(value), d(derivative) {}

  constexpr Dual& operator+=(const Dual& o) {
    v += o.v;
    d += o.d;
    return *this;
  }
  constexpr Dual& operator-=(const Dual& o) {
    v -= o.v;
    d -= o.d;
    return *this;
  }
  constexpr Dual& operator*=(const Dual& o) { return *this = *this * o; }
  constexpr Dual& operator/=(const Dual& o) { return *this = *this / o; }

  friend constexpr Dual operator+(const Dual& a, const Dual& b) { return {a.v + b.v, a.d + b.d}; }
  friend constexpr Dual operator-(const Dual& a, const Dual& b) { return {a.v - b.v, a.d - b.d}; }
  friend constexpr Dual operator-(const Dual& a) { return {-a.v, -a.d}; }
  friend constexpr Dual operator+(const Dual& a) { return a; }
  friend constexpr Dual operator*(const Dual& a, const Dual& b) { return {a.v * b.v, a.d * b.v + a.v * b.d}; }
  friend constexpr Dual operator/(const Dual& a, const Dual& b) {
    T q = a.v / b.v;
    return {q, (a.d - q * b.d) / b.v};
  }

  friend Dual sin(const Dual& a) {
    using std::cos, std::sin;
    return {sin(a.v), cos(a.v) * a.d};
  }
  friend Dual cos(const Dual& a) {
    using std::cos, std::sin;
    return {cos(a.v), -sin(a.v) * a.d};
  }
  friend Dual tan(const Dual& a) {
    using std::cos, std::tan;
    T c = cos(a.v);
    return {tan(a.v), a.d / (c * c)};
  }
  friend Dual exp(const Dual& a) {
    using std::exp;
    T e = exp(a.v);
    return {e, e * a.d};
  }
  friend Dual log(const Dual& a) {
    using std::log;
    return {log(a.v), a.d / a.v};
  }
  friend Dual sqrt(const Dual& a) {
    using std::sqrt;
    T s = sqrt(a.v);
    return {s, a.d / (2.0 * s)};
  }
  // d|x|/dx taken as sign(x), with 0 at the kink.
  friend Dual abs(const Dual& a) {
    using std::abs;
    double p = primal(a.v);
    T sgn = p > 0 ? T(1.0) : (p < 0 ? T(-1.0) : T(0.0));
    return {abs(a.v), sgn * a.d};
  }
  friend Dual pow(const Dual& a, double p) {
    using std::pow;
    if (p == 0.0) return Dual(1.0);
    return {pow(a.v, p), p * pow(a.v, p - 1.0) * a.d};
  }

 private:
  static double primal(double x) { return x; }
  template <class U>
  static double primal(const Dual<U>& x) {
    return primal(x.v);
  }
};

/// Innermost real value of a (possibly nested) number.
inline constexpr double primal(double x) { return x; }
template <class T>
constexpr double primal(const Dual<T>& x) {
  return primal(x.v);
}

inline constexpr bool is_constant_zero(double x) { return x == 0.0; }
template <class T>
constexpr bool is_constant_zero(const Dual<T>& x) {
  return is_constant_zero(x.v) && is_constant_zero(x.d);
}

/// True when every derivative slot (at every nesting level) is exactly zero.
inline constexpr bool is_constant(double) { return true; }
template <class T>
constexpr bool is_constant(const Dual<T>& x) {
  return is_constant(x.v) && is_constant_zero(x.d);
}

using Dual1 = Dual<double>;
using Dual2 = Dual<Dual<double>>;

template <class S>
struct is_dual : std::false_type {};
template <class T>
struct is_dual<Dual<T>> : std::true_type {};

}  // namespace sasaki
