#pragma once

#include <array>

#include "e4/chart.hpp"
#include "e4/linalg.hpp"

namespace e4 {

/// First and second fundamental forms of a chart at a point, with the second
/// form taken against the unit inner normal.
struct Forms {
  Mat3 G;
  Mat3 B;
  Vec4 x;
  Vec4 normal;
  Mat43 J;
};

/// Raises SingularChart when det G < 1e-14 (relative to the scale of G).
Forms fundamental_forms(const Chart& chart, const Vec3& p);
Forms fundamental_forms(const Ellipsoid4& s, const ChartJet& jet);

/// A k³ + B k² + C k + D.
struct CubicPoly {
  double A = 0.0;
  double B = 0.0;
  double C = 0.0;
  double D = 1.0;
  bool normalized = false;

  double operator()(double k) const { return ((A * k + B) * k + C) * k + D; }
  double derivative(double k) const { return (3.0 * A * k + 2.0 * B) * k + C; }
  double second_derivative(double k) const { return 6.0 * A * k + 2.0 * B; }

  /// Scaled so that D = 1; raises NotNormalized when D is zero.
  CubicPoly normalize() const;
};

/// det(B - k G) expanded in k.
CubicPoly characteristic_cubic(const Mat3& G, const Mat3& B);

/// Real roots of a cubic known to have three real roots, ascending.  Uses the
/// trigonometric form of the depressed cubic with Newton polishing; pairs
/// closer than 1e-6 (relative) are rebuilt around the nearby critical point.
std::array<double, 3> cubic_real_roots(const CubicPoly& p);

}  // namespace e4
