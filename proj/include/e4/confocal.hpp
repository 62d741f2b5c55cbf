#pragma once

#include <array>

#include "e4/ellipsoid.hpp"
#include "e4/forms.hpp"

namespace e4 {

/// Ellipsoidal coordinates of a point off the coordinate hyperplanes:
/// d² < u < c² < v < b² < t < a², plus the sign of each ambient coordinate.
struct ConfocalCoords {
  double u = 0.0;
  double v = 0.0;
  double t = 0.0;
  std::array<int, 4> octant{1, 1, 1, 1};

  Vec3 params() const { return {u, v, t}; }
};

/// Σ x_i²/(a_i² - λ).
double confocal_function(const Ellipsoid4& s, const Vec4& x, double lambda);

/// The three non-zero roots of Σ x_i²/(a_i² - λ) = 1, one per open interval.
/// Raises OnCoordinateHyperplane when some |x_i| < 1e-10.
ConfocalCoords to_confocal(const Ellipsoid4& s, const Vec4& x);
Vec4 from_confocal(const Ellipsoid4& s, const ConfocalCoords& c);

/// Exact-jet forms of the confocal chart.
Forms confocal_forms(const Ellipsoid4& s, const ConfocalCoords& c);

/// Diagonals of the first and second forms written in closed form with
/// ξ(λ) = (a²-λ)(b²-λ)(c²-λ)(d²-λ).
struct DiagonalForms {
  Vec3 g;
  Vec3 b;
};
DiagonalForms confocal_forms_closed(const Ellipsoid4& s, const ConfocalCoords& c);

/// Ascending; equal to (abcd/√(uvt))·(1/t, 1/v, 1/u).
std::array<double, 3> confocal_curvatures(const Ellipsoid4& s, const ConfocalCoords& c);

/// Largest |cos| between the gradients of the three confocal quadrics through x.
double gradient_orthogonality(const Ellipsoid4& s, const Vec4& x);

enum class SliceRegime { SpherePairLow, Torus, SpherePairHigh };

/// Intersection of the ellipsoid with the confocal quadric of parameter λ.
struct QuarticSlice {
  Ellipsoid4 surface;
  double lambda;

  /// Raises PoleContact when λ is a squared semi-axis, DomainViolation when
  /// it is outside (d², a²).
  SliceRegime regime() const;
  /// Which confocal coordinate is pinned to λ (0 = u, 1 = v, 2 = t).
  int fixed_coordinate() const;
};

/// Q_λ(x) - 1.
double quartic_membership(const QuarticSlice& slice, const Vec4& x);

/// Point of the slice from its two free confocal coordinates (in increasing
/// coordinate order) and an octant; endpoints of the intervals are allowed.
Vec4 slice_point(const QuarticSlice& slice, double p, double q, const std::array<int, 4>& octant);

/// Connected components found by flood fill over an n×n parameter grid in
/// each of the 16 octants, gluing grid nodes with coinciding ambient images.
int slice_component_count(const QuarticSlice& slice, int n = 24);

}  // namespace e4
