#pragma once

#include <vector>

#include "e4/ellipsoid.hpp"
#include "e4/loci.hpp"

namespace e4 {

/// A closed curve on the unit 3-sphere; the last sample repeats the first.
struct S3Curve {
  std::vector<Vec4> samples;
};

/// Closed polyline in R³.  The closing segment joins the last sample to the
/// first unless they coincide.
using Polyline3 = std::vector<Vec3>;

/// (x₁/a, x₂/b, x₃/c, x₄/d), renormalized onto the unit sphere.
S3Curve embed_to_s3(const Ellipsoid4& surface, const ClosedCurve& curve);

struct Projection {
  Vec4 pole;
  std::vector<Polyline3> curves;
};

/// Stereographic projection from `pole` onto the hyperplane through the
/// origin orthogonal to it.  Raises NoValidPole if a sample lies within
/// spherical distance 0.1 of the pole.
Projection stereographic_project(const std::vector<S3Curve>& curves, const Vec4& pole);

/// As above with the pole chosen among 1000 Halton candidates to maximize the
/// smallest spherical distance to any sample.
Projection stereographic_project(const std::vector<S3Curve>& curves);

struct Linking {
  int crossing = 0;      // signed crossings of a generic planar projection
  double gauss = 0.0;    // Gauss double integral
  int attempts = 0;      // projection directions tried
};

/// Raises CurvesTooClose when two samples are within 1e-3, and
/// NonGenericProjection after 20 projection directions without a generic one.
Linking linking_number(const Polyline3& c1, const Polyline3& c2);

/// Embeds both loci, projects them from a common pole and links them.
Linking link_curves(const Ellipsoid4& surface, const ClosedCurve& c1, const ClosedCurve& c2);

}  // namespace e4
