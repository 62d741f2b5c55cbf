#pragma once

#include <string>
#include <vector>

#include "e4/ellipsoid.hpp"
#include "e4/principal.hpp"

namespace e4 {

enum class LocusKind {
  UmbilicPoint,
  P12Curve,
  P23Curve,
  UmbilicSurface,  // the whole surface (sphere)
  P12Surface,      // the surface minus two poles
  P23Surface,
};

std::string_view to_string(LocusKind kind) noexcept;

/// Ordered ambient samples.  A closed curve repeats its first sample at the end.
struct ClosedCurve {
  std::vector<Vec4> samples;
  bool closed = true;
  double resolution = 0.0;  // largest spacing between consecutive samples
};

struct SingularLocus {
  LocusKind kind = LocusKind::UmbilicPoint;
  std::string name;        // e.g. "P12^1", "gamma+", "arc 2"
  std::string provenance;  // chart and defining equation
  std::vector<Vec4> points;  // UmbilicPoint only
  ClosedCurve curve;         // curve kinds only
  bool symbolic = false;     // the *Surface kinds carry no samples

  bool is_curve() const { return kind == LocusKind::P12Curve || kind == LocusKind::P23Curve; }
};

/// Closed-form umbilic points in the coordinates of the given surface.  The
/// sphere yields one symbolic UmbilicSurface entry.
std::vector<SingularLocus> umbilic_points(const Ellipsoid4& surface);

/// Partially umbilic curves sampled with spacing at most h.  The classes with
/// three equal axes yield one symbolic surface entry.
std::vector<SingularLocus> partially_umbilic_curves(const Ellipsoid4& surface, double h);

struct LocusReport {
  int samples = 0;
  double max_pair_gap = 0.0;          // relative gap of the coincident pair
  double min_third_separation = 0.0;  // relative gap to the remaining curvature
  double max_discriminant = 0.0;      // |discriminant| over its largest term
  bool pass = false;
};

/// Curvature residuals along a locus.  Symbolic surface loci are checked at
/// deterministic sample points away from the poles.
LocusReport verify_locus(const Ellipsoid4& surface, const SingularLocus& locus,
                         double eps_deg = kDefaultEpsDeg);

/// Smallest ambient distance from x to any sampled point or curve segment.
double distance_to_loci(const std::vector<SingularLocus>& loci, const Vec4& x);

}  // namespace e4
