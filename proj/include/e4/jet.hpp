#pragma once

// Second-order forward-mode differentiation over N independent variables.
// A Jet carries the value, the gradient and the (symmetric) Hessian of an
// expression, so chart maps written once over Jet<N> yield exact first and
// second partial derivatives.

#include <array>
#include <cmath>

namespace e4 {

template <int N>
struct Jet {
  double v = 0.0;
  std::array<double, N> d{};
  std::array<double, N * N> h{};

  Jet() = default;
  Jet(double value) : v(value) {}  // NOLINT(google-explicit-constructor): constants

  static Jet variable(double value, int index) {
    Jet j(value);
    j.d[index] = 1.0;
    return j;
  }

  double hess(int i, int j) const { return h[i * N + j]; }
};

namespace jet_detail {

// f(g) given f(g.v), f'(g.v), f''(g.v).
template <int N>
Jet<N> chain(const Jet<N>& g, double f0, double f1, double f2) {
  Jet<N> r(f0);
  for (int i = 0; i < N; ++i) r.d[i] = f1 * g.d[i];
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j)
      r.h[i * N + j] = f1 * g.h[i * N + j] + f2 * g.d[i] * g.d[j];
  return r;
}

}  // namespace jet_detail

template <int N>
Jet<N> operator-(const Jet<N>& a) {
  Jet<N> r(-a.v);
  for (int i = 0; i < N; ++i) r.d[i] = -a.d[i];
  for (int i = 0; i < N * N; ++i) r.h[i] = -a.h[i];
  return r;
}

template <int N>
Jet<N> operator+(const Jet<N>& a, const Jet<N>& b) {
  Jet<N> r(a.v + b.v);
  for (int i = 0; i < N; ++i) r.d[i] = a.d[i] + b.d[i];
  for (int i = 0; i < N * N; ++i) r.h[i] = a.h[i] + b.h[i];
  return r;
}

template <int N>
Jet<N> operator-(const Jet<N>& a, const Jet<N>& b) {
  return a + (-b);
}

template <int N>
Jet<N> operator*(const Jet<N>& a, const Jet<N>& b) {
  Jet<N> r(a.v * b.v);
  for (int i = 0; i < N; ++i) r.d[i] = a.d[i] * b.v + a.v * b.d[i];
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j)
      r.h[i * N + j] = a.h[i * N + j] * b.v + a.d[i] * b.d[j] + a.d[j] * b.d[i] +
                       a.v * b.h[i * N + j];
  return r;
}

template <int N>
Jet<N> operator*(double s, const Jet<N>& a) {
  Jet<N> r(s * a.v);
  for (int i = 0; i < N; ++i) r.d[i] = s * a.d[i];
  for (int i = 0; i < N * N; ++i) r.h[i] = s * a.h[i];
  return r;
}

template <int N>
Jet<N> operator*(const Jet<N>& a, double s) {
  return s * a;
}

template <int N>
Jet<N> operator+(const Jet<N>& a, double s) {
  Jet<N> r = a;
  r.v += s;
  return r;
}

template <int N>
Jet<N> operator+(double s, const Jet<N>& a) {
  return a + s;
}

template <int N>
Jet<N> operator-(const Jet<N>& a, double s) {
  return a + (-s);
}

template <int N>
Jet<N> operator-(double s, const Jet<N>& a) {
  return (-a) + s;
}

template <int N>
Jet<N> reciprocal(const Jet<N>& a) {
  const double inv = 1.0 / a.v;
  return jet_detail::chain(a, inv, -inv * inv, 2.0 * inv * inv * inv);
}

template <int N>
Jet<N> operator/(const Jet<N>& a, const Jet<N>& b) {
  return a * reciprocal(b);
}

template <int N>
Jet<N> operator/(const Jet<N>& a, double s) {
  return (1.0 / s) * a;
}

template <int N>
Jet<N> operator/(double s, const Jet<N>& a) {
  return s * reciprocal(a);
}

template <int N>
Jet<N> sqrt(const Jet<N>& a) {
  const double r = std::sqrt(a.v);
  return jet_detail::chain(a, r, 0.5 / r, -0.25 / (r * a.v));
}

template <int N>
Jet<N> sin(const Jet<N>& a) {
  const double s = std::sin(a.v);
  return jet_detail::chain(a, s, std::cos(a.v), -s);
}

template <int N>
Jet<N> cos(const Jet<N>& a) {
  const double c = std::cos(a.v);
  return jet_detail::chain(a, c, -std::sin(a.v), -c);
}

}  // namespace e4
