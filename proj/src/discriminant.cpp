#include "e4/discriminant.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "e4/error.hpp"

namespace e4 {

namespace {

ScaledValue scaled_sum(std::initializer_list<double> terms) {
  double scale = 0.0;
  for (double t : terms) scale = std::max(scale, std::abs(t));
  return {guarded_sum(terms), scale};
}

void require_distinct(const Ellipsoid4& s) {
  const auto& a = s.axes();
  if (!(a[0] > a[1] && a[1] > a[2] && a[2] > a[3]))
    throw Error(ErrorKind::InvalidAxes, "expected distinct axes in decreasing order");
}

// Terms of p1..p6 with S = s + t + r.
ScaledValue poly_terms(const Thm2Gaps& g, int which, double u, double v, double w) {
  const double r = g.r, s = g.s, t = g.t, S = r + s + t;
  const double u2 = u * u, v2 = v * v, w2 = w * w;
  switch (which) {
    case 1:
      return scaled_sum({-s * (2 * t + 2 * s) * v2, 2 * s * t * w2, s * s, (s + t) * (s + t) * v2 * v2,
                         2 * t * (s + t) * v2 * w2, t * t * w2 * w2});
    case 2: return scaled_sum({(s + t) * (s + r) * v2, r * t * w2, r * (r + s)});
    case 3:
      return scaled_sum({S * S * u2 * u2, 2 * S * t * u2 * w2, t * t * w2 * w2, -2 * (s + r) * S * u2,
                         2 * (s + r) * t * w2, (s + r) * (s + r)});
    case 4: return scaled_sum({s * S * u2, -r * t * w2, -r * s});
    case 5:
      return scaled_sum({-2 * r * S * u2, 2 * r * (s + t) * v2, r * r, S * S * u2 * u2,
                         2 * S * (s + t) * u2 * v2, (s + t) * (s + t) * v2 * v2});
    case 6: return scaled_sum({s * S * u2, (s + t) * (s + r) * v2, -s * (s + r)});
    default: break;
  }
  throw Error(ErrorKind::DomainViolation, "polynomial index out of range");
}

Vec3 face_point(Face face, double p, double q) {
  switch (face) {
    case Face::W0: return {p, q, 0.0};
    case Face::V0: return {p, 0.0, q};
    case Face::U0: return {0.0, p, q};
  }
  return Vec3::Zero();
}

}  // namespace

double guarded_sum(std::initializer_list<double> terms) {
  double naive = 0.0, scale = 0.0;
  for (double t : terms) {
    naive += t;
    scale = std::max(scale, std::abs(t));
  }
  if (std::abs(naive) >= 1e-8 * scale) return naive;
  // Neumaier: carry the rounding error of every addition.
  double sum = 0.0, comp = 0.0;
  for (double t : terms) {
    const double s = sum + t;
    if (std::abs(sum) >= std::abs(t)) comp += (sum - s) + t;
    else comp += (t - s) + sum;
    sum = s;
  }
  return sum + comp;
}

Thm1Gaps thm1_gaps(const Ellipsoid4& surface) {
  const auto& a = surface.axes();
  if (!(approx_equal_axes(a[2], a[3], surface.tolerance()) && a[0] > a[2] && a[2] > a[1]))
    throw Error(ErrorKind::InvalidAxes, "expected the (a,b,c,c) layout with a > c > b");
  const double A2 = a[0] * a[0], B2 = a[1] * a[1], C2 = a[2] * a[2];
  return {A2 - C2, C2 - B2};
}

Thm2Gaps thm2_gaps(const Ellipsoid4& surface) {
  require_distinct(surface);
  const auto& a = surface.axes();
  return {a[0] * a[0] - a[1] * a[1], a[1] * a[1] - a[2] * a[2], a[2] * a[2] - a[3] * a[3]};
}

ScaledValue cubic_discriminant_scaled(const CubicPoly& p) {
  if (p.D != 1.0) throw Error(ErrorKind::NotNormalized, "discriminant formula needs constant term 1");
  const double A = p.A, B = p.B, C = p.C;
  return scaled_sum({27 * A * A, -18 * A * B * C, -B * B * C * C, 4 * B * B * B, 4 * A * C * C * C});
}

double cubic_discriminant(const CubicPoly& p) { return cubic_discriminant_scaled(p).value; }

double pu_quartic_R(const Thm1Gaps& g, double R, double u) {
  const double c2 = std::cos(u) * std::cos(u), s2 = std::sin(u) * std::sin(u);
  const double lead = g.s * c2 - g.t * s2;
  const double tail = g.t * c2 - g.s * s2;
  const double R2 = R * R;
  return guarded_sum({lead * lead * R2 * R2, 2 * ((g.s + g.t) * (g.s + g.t) * c2 * s2 + g.s * g.t) * R2,
                      tail * tail});
}

double pu_quartic_uv(const Thm1Gaps& g, double u, double v) {
  if (u * u + v * v >= 1.0) throw Error(ErrorKind::DomainViolation, "PU(u,v) needs u² + v² < 1");
  const double s = g.s, t = g.t, u2 = u * u, v2 = v * v;
  return guarded_sum({s * s * u2 * u2, -2 * s * t * u2 * v2, t * t * v2 * v2, -2 * (s + t) * s * u2,
                      -2 * (s + t) * t * v2, (s + t) * (s + t)});
}

double pu_quartic_uv_expanded(const Thm1Gaps& g, double u, double v) {
  if (u * u + v * v >= 1.0) throw Error(ErrorKind::DomainViolation, "PU(u,v) needs u² + v² < 1");
  const double s = g.s, t = g.t, u2 = u * u, v2 = v * v;
  return guarded_sum({(1 - u2) * (1 - u2) * s * s, (1 - v2) * (1 - v2) * t * t,
                      2 * (1 - u2 * v2 - v2 - u2) * s * t});
}

std::array<double, 6> pu_polys(const Thm2Gaps& g, double u, double v, double w) {
  std::array<double, 6> out{};
  for (int i = 0; i < 6; ++i) out[i] = poly_terms(g, i + 1, u, v, w).value;
  return out;
}

CubicPoly eq11_cubic(const Ellipsoid4& surface, const Vec3& p) {
  const auto& a = surface.axes();
  const double A2 = a[0] * a[0], B2 = a[1] * a[1], C2 = a[2] * a[2], D2 = a[3] * a[3];
  const double u2 = p[0] * p[0], v2 = p[1] * p[1], w2 = p[2] * p[2];
  const double X = guarded_sum({(A2 - D2) * u2, (B2 - D2) * v2, (C2 - D2) * w2, -A2, -B2, -C2});
  const double Y = guarded_sum({(D2 - A2) * (B2 + C2) * u2, (A2 + C2) * (D2 - B2) * v2,
                                (D2 - C2) * (A2 + B2) * w2, B2 * C2, A2 * C2, A2 * B2});
  const double Z = guarded_sum({B2 * C2 * (A2 - D2) * u2, A2 * C2 * (B2 - D2) * v2,
                                A2 * B2 * (C2 - D2) * w2, -A2 * B2 * C2});
  return CubicPoly{-Z, Y, -X, 1.0, true};
}

CubicPoly rescale_to_eq11(const CubicPoly& n, double sigma) {
  if (n.D != 1.0) throw Error(ErrorKind::NotNormalized, "rescaling expects a normalized cubic");
  return CubicPoly{-n.A / (sigma * sigma * sigma), n.B / (sigma * sigma), -n.C / sigma, 1.0, true};
}

ScaledValue restricted_discriminant(const Ellipsoid4& surface, Face face, double p, double q) {
  require_distinct(surface);
  if (p * p + q * q >= 1.0)
    throw Error(ErrorKind::DomainViolation, "face parameters must lie in the open unit disc");
  return cubic_discriminant_scaled(eq11_cubic(surface, face_point(face, p, q)));
}

ScaledValue factor_product(const Ellipsoid4& surface, Face face, double p, double q) {
  const Thm2Gaps g = thm2_gaps(surface);
  const Vec3 x = face_point(face, p, q);
  const int ia = face == Face::W0 ? 5 : face == Face::V0 ? 3 : 1;
  const ScaledValue pa = poly_terms(g, ia, x[0], x[1], x[2]);
  const ScaledValue pb = poly_terms(g, ia + 1, x[0], x[1], x[2]);
  return {pa.value * pb.value * pb.value, pa.scale * pb.scale * pb.scale};
}

FactorizationFit fit_factorization(const Ellipsoid4& surface, Face face, int n) {
  const Thm2Gaps g = thm2_gaps(surface);
  const int ia = face == Face::W0 ? 5 : face == Face::V0 ? 3 : 1;
  std::vector<double> ratios;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const double p = -0.95 + 1.9 * (i + 0.5) / n;
      const double q = -0.95 + 1.9 * (j + 0.5) / n;
      if (p * p + q * q >= 0.95 * 0.95) continue;
      const Vec3 x = face_point(face, p, q);
      const ScaledValue pa = poly_terms(g, ia, x[0], x[1], x[2]);
      const ScaledValue pb = poly_terms(g, ia + 1, x[0], x[1], x[2]);
      if (std::abs(pa.value) < 1e-3 * pa.scale || std::abs(pb.value) < 1e-3 * pb.scale) continue;
      const double R = restricted_discriminant(surface, face, p, q).value;
      ratios.push_back(R / (pa.value * pb.value * pb.value));
    }
  FactorizationFit fit;
  fit.samples = static_cast<int>(ratios.size());
  if (ratios.empty()) return fit;
  std::vector<double> sorted = ratios;
  std::nth_element(sorted.begin(), sorted.begin() + sorted.size() / 2, sorted.end());
  fit.constant = sorted[sorted.size() / 2];
  for (double r : ratios)
    fit.max_rel_spread = std::max(fit.max_rel_spread, std::abs(r - fit.constant) / std::abs(fit.constant));
  return fit;
}

}  // namespace e4
