#include "e4/forms.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "e4/error.hpp"

namespace e4 {

Forms fundamental_forms(const Ellipsoid4& s, const ChartJet& jet) {
  Forms f;
  f.x = jet.x;
  f.J = jet.J;
  f.G = jet.J.transpose() * jet.J;
  const double scale = f.G.trace() / 3.0;
  if (!(f.G.determinant() > 1e-14 * scale * scale * scale))
    throw Error(ErrorKind::SingularChart, "chart tangent vectors are nearly dependent");
  f.normal = s.inner_normal(jet.x);
  for (int i = 0; i < 3; ++i)
    for (int j = i; j < 3; ++j) {
      const double bij = jet.H[i][j].dot(f.normal);
      f.B(i, j) = bij;
      f.B(j, i) = bij;
    }
  return f;
}

Forms fundamental_forms(const Chart& chart, const Vec3& p) {
  return fundamental_forms(chart.surface, chart_jet(chart, p));
}

CubicPoly CubicPoly::normalize() const {
  if (D == 0.0 || !std::isfinite(D))
    throw Error(ErrorKind::NotNormalized, "cubic has zero constant term");
  return CubicPoly{A / D, B / D, C / D, 1.0, true};
}

CubicPoly characteristic_cubic(const Mat3& G, const Mat3& B) {
  // Multilinear expansion of det(B - kG) column by column.
  double c1 = 0.0, c2 = 0.0;
  for (int j = 0; j < 3; ++j) {
    Mat3 m = B;
    m.col(j) = G.col(j);
    c1 -= m.determinant();
    Mat3 n = G;
    n.col(j) = B.col(j);
    c2 += n.determinant();
  }
  return CubicPoly{-G.determinant(), c2, c1, B.determinant(), false};
}

namespace {

double polish(const CubicPoly& p, double x) {
  double fx = p(x);
  for (int it = 0; it < 4; ++it) {
    const double d = p.derivative(x);
    if (d == 0.0) break;
    const double y = x - fx / d;
    const double fy = p(y);
    if (!(std::abs(fy) < std::abs(fx))) break;
    x = y;
    fx = fy;
  }
  return x;
}

// Roots of p'(k) = 3A k² + 2B k + C with the cancellation-free quadratic formula.
std::array<double, 2> critical_points(const CubicPoly& p) {
  const double a = 3.0 * p.A, b = p.B, c = p.C;  // a k² + 2b k + c
  const double disc = std::max(b * b - a * c, 0.0);
  const double q = -(b + std::copysign(std::sqrt(disc), b));
  if (q == 0.0) return {-b / a, -b / a};
  return {q / a, c / q};
}

}  // namespace

std::array<double, 3> cubic_real_roots(const CubicPoly& poly) {
  if (poly.A == 0.0 || !std::isfinite(poly.A))
    throw Error(ErrorKind::DomainViolation, "leading cubic coefficient vanishes");
  const double b = poly.B / poly.A, c = poly.C / poly.A, d = poly.D / poly.A;
  const double shift = b / 3.0;
  const double p = c - b * b / 3.0;
  const double q = 2.0 * b * b * b / 27.0 - b * c / 3.0 + d;

  std::array<double, 3> r{};
  if (p >= 0.0) {
    r = {-shift, -shift, -shift};
  } else {
    const double m = 2.0 * std::sqrt(-p / 3.0);
    const double arg = std::clamp(3.0 * q / (p * m), -1.0, 1.0);
    const double phi = std::acos(arg) / 3.0;
    for (int k = 0; k < 3; ++k)
      r[k] = m * std::cos(phi - 2.0 * std::numbers::pi * k / 3.0) - shift;
  }
  for (double& x : r) x = polish(poly, x);
  std::sort(r.begin(), r.end());

  const double scale = std::max({std::abs(r[0]), std::abs(r[1]), std::abs(r[2])});
  const double tol = 1e-6 * scale;
  const bool low = r[1] - r[0] < tol, high = r[2] - r[1] < tol;
  if (low && high) {
    const double x = -poly.B / (3.0 * poly.A);
    return {x, x, x};
  }
  for (int i = 0; i < 2; ++i) {
    if (!(r[i + 1] - r[i] < tol)) continue;
    const double mid = 0.5 * (r[i] + r[i + 1]);
    const auto cp = critical_points(poly);
    const double cc = std::abs(cp[0] - mid) < std::abs(cp[1] - mid) ? cp[0] : cp[1];
    const double rad = -2.0 * poly(cc) / poly.second_derivative(cc);
    const double h = rad > 0.0 ? std::sqrt(rad) : 0.0;
    r[i] = cc - h;
    r[i + 1] = cc + h;
  }
  std::sort(r.begin(), r.end());
  return r;
}

}  // namespace e4
