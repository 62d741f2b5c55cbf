#pragma once

#include <array>
#include <optional>
#include <vector>

#include "e4/ellipsoid.hpp"
#include "e4/linalg.hpp"

namespace e4 {

/// Integrand under the square root of the arclength integrals s₁, s₂.
///   Liouville       |x·Π(x-λ)/Π(a_i²-x)|, the factor that makes the chart conformal
///   PrintedLiteral  the three-factor form with the corner factor dropped
enum class IntegrandVariant { Liouville, PrintedLiteral };

/// Two independent quadratures: a (1-cos θ)/2 substitution with composite
/// Gauss–Legendre, and τ² endpoint substitutions with adaptive Simpson.
enum class Quadrature { GaussCosine, AdaptiveSimpson };

/// One free ellipsoidal coordinate of a two-dimensional principal chart.  The
/// chart parameter σ runs from 0 at `center` (where `sign_coord` vanishes) to
/// ±s at `corner`; its sign is the sign of ambient coordinate `sign_coord`.
struct ConformalAxis {
  double center;
  double corner;
  int sign_coord;
};

/// A region covered by one conformal principal chart: the 3D ellipsoid with
/// a > b > c (stored with a zero fourth axis), or a sphere-regime quartic
/// slice of a four-axis ellipsoid.
struct ConformalDomain {
  std::vector<double> axes_sq;  // 3 or 4 squared semi-axes, decreasing
  std::optional<double> lambda;
  std::array<ConformalAxis, 2> axis;
};

/// (a,b,c), a > b > c: σ₁ over u ∈ [b², a²], σ₂ over v ∈ [c², b²]; covers y ≥ 0.
ConformalDomain conformal_domain_3d(const std::array<double, 3>& axes);

/// Slice λ of a distinct-axis ellipsoid.  λ ∈ (d², c²): σ₁ over t ∈ [b², a²],
/// σ₂ over v ∈ [c², b²], covering y ≥ 0, w > 0.  λ ∈ (b², a²): σ₁ over
/// u ∈ [d², c²], σ₂ over v ∈ [c², b²], covering x > 0, z ≥ 0.  Raises
/// WrongSignature for λ ∈ (c², b²).
ConformalDomain conformal_domain_slice(const Ellipsoid4& surface, double lambda);

/// Value of the integrand's radicand at x on axis `which` (1 or 2).
double arc_integrand(const ConformalDomain& d, int which, IntegrandVariant variant, double x);

/// s_which = ½∫√f over the whole interval.  Raises DivergentIntegral when an
/// endpoint singularity is not integrable.
double arc_integral_s(const ConformalDomain& d, int which, IntegrandVariant variant = IntegrandVariant::Liouville,
                      Quadrature q = Quadrature::GaussCosine);

/// Ambient point (zero fourth coordinate for 3D) at chart parameters σ.
Vec4 conformal_point(const ConformalDomain& d, double sigma1, double sigma2,
                     IntegrandVariant variant = IntegrandVariant::Liouville);

struct ConformalChart2 {
  ConformalDomain domain;
  IntegrandVariant variant = IntegrandVariant::Liouville;
  double s1 = 0.0;
  double s2 = 0.0;
  std::vector<double> sigma1;  // interior nodes
  std::vector<double> sigma2;
  std::vector<Vec4> grid;      // grid[i * sigma2.size() + j]
  /// Images of (s₁,s₂), (-s₁,s₂), (-s₁,-s₂), (s₁,-s₂).
  std::array<Vec4, 4> corners;
  /// Largest of |g₁₂|/ḡ and |g₁₁/g₂₂ - 1| over the grid, from the exact
  /// pullback metric.
  double conformality_residual = 0.0;
};

/// n × m interior grid at σ = -s + 2s(i + 1/4)/n.
ConformalChart2 build_conformal_chart(const ConformalDomain& d, int n, int m,
                                      IntegrandVariant variant = IntegrandVariant::Liouville);

}  // namespace e4
