#include "e4/topology.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>

#include "e4/error.hpp"

namespace e4 {

namespace {

double radical_inverse(int k, int base) {
  double f = 1.0, r = 0.0;
  while (k > 0) {
    f /= base;
    r += f * (k % base);
    k /= base;
  }
  return r;
}

// Uniform point on S³ from three Halton coordinates.
Vec4 halton_s3(int k) {
  const double u = radical_inverse(k, 2), v = radical_inverse(k, 3), w = radical_inverse(k, 5);
  const double r1 = std::sqrt(1 - u), r2 = std::sqrt(u), tau = 2 * std::numbers::pi;
  return {r1 * std::cos(tau * v), r1 * std::sin(tau * v), r2 * std::cos(tau * w), r2 * std::sin(tau * w)};
}

Vec3 halton_s2(int k) {
  const double z = 1 - 2 * radical_inverse(k, 2), phi = 2 * std::numbers::pi * radical_inverse(k, 3);
  const double r = std::sqrt(std::max(0.0, 1 - z * z));
  return {r * std::cos(phi), r * std::sin(phi), z};
}

double spherical_distance(const Vec4& a, const Vec4& b) { return std::acos(std::clamp(a.dot(b), -1.0, 1.0)); }

// Segments of a closed polyline, without a degenerate closing segment.
std::vector<std::pair<Vec3, Vec3>> segments(const Polyline3& c) {
  std::vector<std::pair<Vec3, Vec3>> out;
  const std::size_t n = c.size();
  for (std::size_t k = 0; k + 1 < n; ++k) out.emplace_back(c[k], c[k + 1]);
  if (n > 1 && (c.back() - c.front()).norm() > 0) out.emplace_back(c.back(), c.front());
  return out;
}

double gauss_integral(const Polyline3& c1, const Polyline3& c2) {
  const auto s1 = segments(c1), s2 = segments(c2);
  double sum = 0.0;
  for (const auto& [a0, a1] : s1) {
    const Vec3 da = a1 - a0;
    for (const auto& [b0, b1] : s2) {
      const Vec3 db = b1 - b0;
      const Vec3 r = 0.5 * (a0 + a1) - 0.5 * (b0 + b1);
      const double dist = r.norm();
      const double len = std::max(da.norm(), db.norm());
      // Midpoint rule, subdivided until each piece is short against the distance.
      const int k = dist < 5 * len ? std::min(64, static_cast<int>(std::ceil(5 * len / dist))) : 1;
      const Vec3 cr = da.cross(db) / (k * k);
      for (int i = 0; i < k; ++i) {
        const Vec3 pa = a0 + (i + 0.5) / k * da;
        for (int j = 0; j < k; ++j) {
          const Vec3 rr = pa - (b0 + (j + 0.5) / k * db);
          const double n = rr.norm();
          sum += rr.dot(cr) / (n * n * n);
        }
      }
    }
  }
  return sum / (4 * std::numbers::pi);
}

enum class CrossingStatus { Ok, NonGeneric };

// Twice the linking number from the signed crossings seen along `dir`.
CrossingStatus crossing_sum(const Polyline3& c1, const Polyline3& c2, const Vec3& dir, int& twice) {
  Vec3 e1 = dir.unitOrthogonal();
  Vec3 e2 = dir.cross(e1);
  const auto s1 = segments(c1), s2 = segments(c2);
  auto plane = [&](const Vec3& p) { return Vec2(p.dot(e1), p.dot(e2)); };
  twice = 0;
  for (const auto& [a0, a1] : s1) {
    const Vec2 p0 = plane(a0), p1 = plane(a1);
    const Vec2 da = p1 - p0;
    for (const auto& [b0, b1] : s2) {
      const Vec2 q0 = plane(b0), q1 = plane(b1);
      if (std::max(p0.x(), p1.x()) < std::min(q0.x(), q1.x()) || std::max(q0.x(), q1.x()) < std::min(p0.x(), p1.x()) ||
          std::max(p0.y(), p1.y()) < std::min(q0.y(), q1.y()) || std::max(q0.y(), q1.y()) < std::min(p0.y(), p1.y()))
        continue;
      const Vec2 db = q1 - q0;
      const double den = da.x() * db.y() - da.y() * db.x();
      const Vec2 w = q0 - p0;
      if (den == 0.0) {
        if (std::abs(w.x() * da.y() - w.y() * da.x()) == 0.0) return CrossingStatus::NonGeneric;
        continue;
      }
      const double s = (w.x() * db.y() - w.y() * db.x()) / den;
      const double t = (w.x() * da.y() - w.y() * da.x()) / den;
      if (s < 0 || s >= 1 || t < 0 || t >= 1) continue;
      constexpr double edge = 1e-9;
      if (s < edge || s > 1 - edge || t < edge || t > 1 - edge) return CrossingStatus::NonGeneric;
      if (std::abs(den) < 1e-3 * da.norm() * db.norm()) return CrossingStatus::NonGeneric;
      const Vec3 ta = a1 - a0, tb = b1 - b0;
      const double za = (a0 + s * ta).dot(dir), zb = (b0 + t * tb).dot(dir);
      const double sign = za > zb ? ta.cross(tb).dot(dir) : tb.cross(ta).dot(dir);
      twice += sign > 0 ? 1 : -1;
    }
  }
  return CrossingStatus::Ok;
}

}  // namespace

S3Curve embed_to_s3(const Ellipsoid4& surface, const ClosedCurve& curve) {
  S3Curve out;
  out.samples.reserve(curve.samples.size());
  for (const Vec4& x : curve.samples) {
    Vec4 y;
    for (int i = 0; i < 4; ++i) y[i] = x[i] / surface.axis(i);
    const double n = y.norm();
    out.samples.push_back(std::abs(n - 1) <= 4 * std::numeric_limits<double>::epsilon() ? y : Vec4(y / n));
  }
  return out;
}

Projection stereographic_project(const std::vector<S3Curve>& curves, const Vec4& pole_in) {
  const Vec4 p = pole_in.normalized();
  for (const auto& c : curves)
    for (const Vec4& x : c.samples)
      if (spherical_distance(x, p) <= 0.1) throw Error(ErrorKind::NoValidPole, "a sample lies within 0.1 of the pole");

  // Orthonormal basis of p⊥ from the coordinate axes, dropping the one most aligned with p.
  int drop = 0;
  p.cwiseAbs().maxCoeff(&drop);
  std::array<Vec4, 3> basis;
  int n = 0;
  for (int i = 0; i < 4; ++i) {
    if (i == drop) continue;
    Vec4 e = Vec4::Unit(i);
    e -= e.dot(p) * p;
    for (int j = 0; j < n; ++j) e -= e.dot(basis[j]) * basis[j];
    basis[n++] = e.normalized();
  }
  // Fix the orientation so that linking signs do not depend on the pole.
  Mat4 frame;
  frame << basis[0], basis[1], basis[2], p;
  if (frame.determinant() < 0) basis[2] = -basis[2];

  Projection out;
  out.pole = p;
  for (const auto& c : curves) {
    Polyline3 poly;
    poly.reserve(c.samples.size());
    for (const Vec4& x : c.samples) {
      const Vec4 y = (x - x.dot(p) * p) / (1 - x.dot(p));
      poly.emplace_back(y.dot(basis[0]), y.dot(basis[1]), y.dot(basis[2]));
    }
    out.curves.push_back(std::move(poly));
  }
  return out;
}

Projection stereographic_project(const std::vector<S3Curve>& curves) {
  Vec4 best = Vec4::Zero();
  double best_d = -1.0;
  for (int k = 1; k <= 1000; ++k) {
    const Vec4 cand = halton_s3(k);
    double d = std::numeric_limits<double>::infinity();
    for (const auto& c : curves)
      for (const Vec4& x : c.samples) d = std::min(d, spherical_distance(x, cand));
    if (d > best_d) {
      best_d = d;
      best = cand;
    }
  }
  if (best_d <= 0.1) throw Error(ErrorKind::NoValidPole, "no candidate pole is 0.1 away from every sample");
  return stereographic_project(curves, best);
}

Linking linking_number(const Polyline3& c1, const Polyline3& c2) {
  for (const Vec3& a : c1)
    for (const Vec3& b : c2)
      if ((a - b).norm() <= 1e-3) throw Error(ErrorKind::CurvesTooClose, "curves come within 1e-3 of each other");

  Linking out;
  for (int k = 1; k <= 20; ++k) {
    int twice = 0;
    out.attempts = k;
    if (crossing_sum(c1, c2, halton_s2(k), twice) == CrossingStatus::NonGeneric || twice % 2 != 0) continue;
    out.crossing = twice / 2;
    out.gauss = gauss_integral(c1, c2);
    return out;
  }
  throw Error(ErrorKind::NonGenericProjection, "no generic projection direction in 20 attempts");
}

Linking link_curves(const Ellipsoid4& surface, const ClosedCurve& c1, const ClosedCurve& c2) {
  const Projection p = stereographic_project({embed_to_s3(surface, c1), embed_to_s3(surface, c2)});
  return linking_number(p.curves[0], p.curves[1]);
}

}  // namespace e4
