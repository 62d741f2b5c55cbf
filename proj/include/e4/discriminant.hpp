#pragma once

#include <array>
#include <initializer_list>

#include "e4/ellipsoid.hpp"
#include "e4/forms.hpp"

namespace e4 {

/// Axis gaps for the (a,b,c,c), a > c > b layout: a² = c² + s, c² = b² + t.
struct Thm1Gaps {
  double s;
  double t;
};

/// Axis gaps for distinct axes a > b > c > d: c² = d² + t, b² = c² + s, a² = b² + r.
struct Thm2Gaps {
  double r;
  double s;
  double t;
};

Thm1Gaps thm1_gaps(const Ellipsoid4& surface);
Thm2Gaps thm2_gaps(const Ellipsoid4& surface);

/// Sum of terms; when the result is below 1e-8 of the largest term the sum is
/// redone with Neumaier's compensated algorithm.
double guarded_sum(std::initializer_list<double> terms);

/// Value together with the largest magnitude among its summed terms.
struct ScaledValue {
  double value;
  double scale;
  double relative() const { return scale > 0.0 ? value / scale : value; }
};

/// 27A² - 18ABC - B²C² + 4B³ + 4AC³ for A k³ + B k² + C k + 1.  This is the
/// negative of the classical discriminant: three distinct real roots give a
/// negative value.  Raises NotNormalized unless D = 1.
double cubic_discriminant(const CubicPoly& p);
ScaledValue cubic_discriminant_scaled(const CubicPoly& p);

/// PU(R,u) = (s cos²u - t sin²u)² R⁴ + 2[(s+t)² cos²u sin²u + st] R² + (t cos²u - s sin²u)².
double pu_quartic_R(const Thm1Gaps& g, double R, double u);

/// PU(u,v) = (su² - tv²)² - 2(s+t)(su² + tv²) + (s+t)², for u² + v² < 1.
double pu_quartic_uv(const Thm1Gaps& g, double u, double v);
/// The same quartic as (1-u²)²s² + (1-v²)²t² + 2(1 - u²v² - v² - u²)st.
double pu_quartic_uv_expanded(const Thm1Gaps& g, double u, double v);

/// p₁ … p₆ (index 0 … 5).
std::array<double, 6> pu_polys(const Thm2Gaps& g, double u, double v, double w);

/// The normalized characteristic cubic in the scaled graph chart
/// (au, bv, cw, d√(1-u²-v²-w²)), written out coefficient by coefficient.
/// Its roots are -σk with k the inner-normal curvatures and σ = |∇Q|/2.
CubicPoly eq11_cubic(const Ellipsoid4& surface, const Vec3& p);

/// Maps a normalized det(B - kG) cubic to the normalization above.
CubicPoly rescale_to_eq11(const CubicPoly& normalized, double sigma);

enum class Face { W0, V0, U0 };

/// Discriminant of eq11_cubic restricted to a coordinate face; (p, q) are the
/// two free chart coordinates in increasing index order.  Raises
/// DomainViolation outside the open unit disc.
ScaledValue restricted_discriminant(const Ellipsoid4& surface, Face face, double p, double q);

/// The factor pair (pa, pb) with R = κ·pa·pb² on a face: (p5,p6) on w=0,
/// (p3,p4) on v=0, (p1,p2) on u=0.
ScaledValue factor_product(const Ellipsoid4& surface, Face face, double p, double q);

struct FactorizationFit {
  double constant = 0.0;      // median of R/(pa·pb²)
  double max_rel_spread = 0.0;
  int samples = 0;
};

/// R/(pa·pb²) over an n×n grid of the face's disc, skipping points where the
/// product is within 1e-6 of its scale of vanishing.
FactorizationFit fit_factorization(const Ellipsoid4& surface, Face face, int n = 20);

}  // namespace e4
