// Fixed-width forward-mode dual number: value plus an N-wide tangent.
// Drives exact Jacobian-vector products and per-step Jacobians of the
// augmented dynamics; the hand-coded adjoint in augmented.cpp is verified
// against it.
#pragma once

#include <Eigen/Dense>

#include <cmath>

namespace dice {

template <int N>
struct Dual {
  using Tangent = Eigen::Matrix<double, N, 1>;

  double v = 0.0;
  Tangent d = Tangent::Zero();

  Dual() = default;
  Dual(double value) : v(value) {}  // NOLINT: implicit by design, constants promote
  Dual(double value, const Tangent& tangent) : v(value), d(tangent) {}

  static Dual seed(double value, int k) {
    Dual x(value);
    x.d(k) = 1.0;
    return x;
  }

  Dual& operator+=(const Dual& o) { v += o.v; d += o.d; return *this; }
  Dual& operator-=(const Dual& o) { v -= o.v; d -= o.d; return *this; }
};

template <int N> Dual<N> operator+(const Dual<N>& a, const Dual<N>& b) { return {a.v + b.v, a.d + b.d}; }
template <int N> Dual<N> operator-(const Dual<N>& a, const Dual<N>& b) { return {a.v - b.v, a.d - b.d}; }
template <int N> Dual<N> operator-(const Dual<N>& a) { return {-a.v, -a.d}; }
template <int N> Dual<N> operator+(const Dual<N>& a) { return a; }

template <int N> Dual<N> operator*(const Dual<N>& a, const Dual<N>& b) {
  return {a.v * b.v, a.v * b.d + b.v * a.d};
}
template <int N> Dual<N> operator/(const Dual<N>& a, const Dual<N>& b) {
  const double q = a.v / b.v;
  return {q, (a.d - q * b.d) / b.v};
}

template <int N> Dual<N> operator+(const Dual<N>& a, double b) { return {a.v + b, a.d}; }
template <int N> Dual<N> operator+(double a, const Dual<N>& b) { return {a + b.v, b.d}; }
template <int N> Dual<N> operator-(const Dual<N>& a, double b) { return {a.v - b, a.d}; }
template <int N> Dual<N> operator-(double a, const Dual<N>& b) { return {a - b.v, -b.d}; }
template <int N> Dual<N> operator*(const Dual<N>& a, double b) { return {a.v * b, a.d * b}; }
template <int N> Dual<N> operator*(double a, const Dual<N>& b) { return {a * b.v, a * b.d}; }
template <int N> Dual<N> operator/(const Dual<N>& a, double b) { return {a.v / b, a.d / b}; }
template <int N> Dual<N> operator/(double a, const Dual<N>& b) {
  const double q = a / b.v;
  return {q, (-q / b.v) * b.d};
}

template <int N> bool operator<(const Dual<N>& a, const Dual<N>& b) { return a.v < b.v; }
template <int N> bool operator<(const Dual<N>& a, double b) { return a.v < b; }
template <int N> bool operator<(double a, const Dual<N>& b) { return a < b.v; }
template <int N> bool operator>(const Dual<N>& a, double b) { return a.v > b; }

template <int N> Dual<N> exp(const Dual<N>& a) {
  const double e = std::exp(a.v);
  return {e, e * a.d};
}
template <int N> Dual<N> log(const Dual<N>& a) { return {std::log(a.v), a.d / a.v}; }
template <int N> Dual<N> sqrt(const Dual<N>& a) {
  const double r = std::sqrt(a.v);
  return {r, a.d / (2.0 * r)};
}

// dual base, constant exponent
template <int N> Dual<N> pow(const Dual<N>& a, double e) {
  const double p = std::pow(a.v, e);
  return {p, e * std::pow(a.v, e - 1.0) * a.d};
}
// constant base, dual exponent
template <int N> Dual<N> pow(double a, const Dual<N>& e) {
  const double p = std::pow(a, e.v);
  return {p, p * std::log(a) * e.d};
}

// min against a constant; takes the dual branch on ties
template <int N> Dual<N> min(const Dual<N>& a, double b) { return a.v <= b ? a : Dual<N>(b); }
template <int N> Dual<N> min(double a, const Dual<N>& b) { return b.v <= a ? b : Dual<N>(a); }

}  // namespace dice
