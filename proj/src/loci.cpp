#include "e4/loci.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>

#include "e4/discriminant.hpp"
#include "e4/error.hpp"
#include "e4/rng.hpp"

namespace e4 {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

using CurveMap = std::function<Vec4(double)>;

// Sample count that keeps uniform-parameter spacing below h: the largest
// chord of a 512-segment presample bounds the parameter speed.
int sample_count(const CurveMap& f, double t0, double t1, double h, int minimum) {
  double widest = 0.0;
  Vec4 prev = f(t0);
  for (int i = 1; i <= 512; ++i) {
    const Vec4 x = f(t0 + (t1 - t0) * i / 512.0);
    widest = std::max(widest, (x - prev).norm());
    prev = x;
  }
  return std::max(minimum, static_cast<int>(std::ceil(1.02 * widest * 512.0 / h)));
}

double max_spacing(const std::vector<Vec4>& s) {
  double m = 0.0;
  for (std::size_t i = 1; i < s.size(); ++i) m = std::max(m, (s[i] - s[i - 1]).norm());
  return m;
}

ClosedCurve sample_closed(const CurveMap& f, double h) {
  const int n = sample_count(f, 0.0, kTwoPi, h, 32);
  ClosedCurve c;
  for (int i = 0; i < n; ++i) c.samples.push_back(f(kTwoPi * i / n));
  c.samples.push_back(c.samples.front());
  c.resolution = max_spacing(c.samples);
  return c;
}

ClosedCurve sample_open(const CurveMap& f, double t0, double t1, double h) {
  const int n = sample_count(f, t0, t1, h, 16);
  ClosedCurve c;
  c.closed = false;
  for (int i = 0; i < n; ++i) c.samples.push_back(f(t0 + (t1 - t0) * (i + 0.5) / n));
  c.resolution = max_spacing(c.samples);
  return c;
}

SingularLocus make_curve(LocusKind kind, std::string name, std::string provenance, ClosedCurve curve,
                         const CanonicalForm& cf) {
  for (Vec4& x : curve.samples) x = cf.from_canonical(x);
  SingularLocus l;
  l.kind = kind;
  l.name = std::move(name);
  l.provenance = std::move(provenance);
  l.curve = std::move(curve);
  return l;
}

SingularLocus symbolic(LocusKind kind, std::string name, std::string provenance) {
  SingularLocus l;
  l.kind = kind;
  l.name = std::move(name);
  l.provenance = std::move(provenance);
  l.symbolic = true;
  return l;
}

// Umbilic parameter on E0 = (a cos u, b sin u, 0, 0) of the (a,b,c,c), a > c > b layout.
double middle_umbilic_u(const std::array<double, 4>& ax) {
  const double a2 = ax[0] * ax[0], b2 = ax[1] * ax[1], c2 = ax[2] * ax[2];
  return std::acos(std::sqrt((a2 - c2) / (a2 - b2)));
}

}  // namespace

std::string_view to_string(LocusKind kind) noexcept {
  switch (kind) {
    case LocusKind::UmbilicPoint: return "UmbilicPoint";
    case LocusKind::P12Curve: return "P12Curve";
    case LocusKind::P23Curve: return "P23Curve";
    case LocusKind::UmbilicSurface: return "UmbilicSurface";
    case LocusKind::P12Surface: return "P12Surface";
    case LocusKind::P23Surface: return "P23Surface";
  }
  return "?";
}

std::vector<SingularLocus> umbilic_points(const Ellipsoid4& surface) {
  const CanonicalForm cf = surface.canonical();
  const auto& ax = cf.surface.axes();
  std::vector<SingularLocus> out;
  switch (surface.axis_class()) {
    case AxisClass::AllEqual:
      out.push_back(symbolic(LocusKind::UmbilicSurface, "sphere", "every point"));
      break;
    case AxisClass::ThreeEqualLast:
    case AxisClass::ThreeEqualFirst:
      for (double sgn : {1.0, -1.0}) {
        SingularLocus l;
        l.kind = LocusKind::UmbilicPoint;
        l.name = sgn > 0 ? "pole+" : "pole-";
        l.provenance = "(0,0,0,±b) of (a,a,a,b)";
        l.points.push_back(cf.from_canonical(Vec4(0, 0, 0, sgn * ax[3])));
        out.push_back(std::move(l));
      }
      break;
    case AxisClass::PairMiddle: {
      const double u0 = middle_umbilic_u(ax);
      const double us[4] = {u0, std::numbers::pi - u0, std::numbers::pi + u0, kTwoPi - u0};
      for (int i = 0; i < 4; ++i) {
        SingularLocus l;
        l.kind = LocusKind::UmbilicPoint;
        l.name = "umbilic " + std::to_string(i + 1);
        l.provenance = "E0 = (a cos u, b sin u, 0, 0) with cos²u = (a²-c²)/(a²-b²)";
        l.points.push_back(cf.from_canonical(Vec4(ax[0] * std::cos(us[i]), ax[1] * std::sin(us[i]), 0, 0)));
        out.push_back(std::move(l));
      }
      break;
    }
    default: break;
  }
  return out;
}

std::vector<SingularLocus> partially_umbilic_curves(const Ellipsoid4& surface, double h) {
  if (!(h > 0.0)) throw Error(ErrorKind::DomainViolation, "resolution must be positive");
  const CanonicalForm cf = surface.canonical();
  const auto& ax = cf.surface.axes();
  const double a = ax[0], b = ax[1], c = ax[2], d = ax[3];
  std::vector<SingularLocus> out;

  auto e0 = [&](double u) { return Vec4(a * std::cos(u), b * std::sin(u), 0, 0); };

  switch (surface.axis_class()) {
    case AxisClass::AllEqual: break;
    case AxisClass::ThreeEqualLast:
      out.push_back(symbolic(LocusKind::P12Surface, "surface", "complement of the two poles"));
      break;
    case AxisClass::ThreeEqualFirst:
      out.push_back(symbolic(LocusKind::P23Surface, "surface", "complement of the two poles"));
      break;
    case AxisClass::TwoPairs:
      out.push_back(make_curve(LocusKind::P23Curve, "P23", "(a cos u, a sin u, 0, 0)", sample_closed(e0, h), cf));
      out.push_back(make_curve(LocusKind::P12Curve, "P12", "(0, 0, b cos v, b sin v)",
                               sample_closed([&](double v) { return Vec4(0, 0, c * std::cos(v), c * std::sin(v)); }, h),
                               cf));
      break;
    case AxisClass::PairLow:
    case AxisClass::PairHigh: {
      const bool low = surface.axis_class() == AxisClass::PairLow;
      out.push_back(make_curve(low ? LocusKind::P23Curve : LocusKind::P12Curve, "E0", "(a cos u, b sin u, 0, 0)",
                               sample_closed(e0, h), cf));
      // Rotation circles of the β chart (au, bv, c cos t √(1-u²-v²), c sin t √(1-u²-v²)).
      const double a2 = a * a, b2 = b * b, c2 = c * c;
      for (double sgn : {1.0, -1.0}) {
        const double u = low ? sgn * std::sqrt((a2 - b2) / (a2 - c2)) : 0.0;
        const double v = low ? 0.0 : sgn * std::sqrt((a2 - b2) / (c2 - b2));
        const double rho = c * std::sqrt(1 - u * u - v * v);
        auto circle = [=](double t) { return Vec4(a * u, b * v, rho * std::cos(t), rho * std::sin(t)); };
        out.push_back(make_curve(low ? LocusKind::P12Curve : LocusKind::P23Curve, sgn > 0 ? "gamma+" : "gamma-",
                                 low ? "beta(±√((a²-b²)/(a²-c²)), 0, t)" : "beta(0, ±√((a²-b²)/(c²-b²)), t)",
                                 sample_closed(circle, h), cf));
      }
      break;
    }
    case AxisClass::PairMiddle: {
      // Arcs of E0 between consecutive umbilics; the pair {k1,k2} coincides
      // where cos²u exceeds the umbilic value.
      const double u0 = middle_umbilic_u(ax);
      const double pi = std::numbers::pi;
      const double bounds[5] = {-u0, u0, pi - u0, pi + u0, kTwoPi - u0};
      for (int i = 0; i < 4; ++i) {
        const LocusKind kind = i % 2 == 0 ? LocusKind::P12Curve : LocusKind::P23Curve;
        out.push_back(make_curve(kind, "arc " + std::to_string(i + 1), "E0 = (a cos u, b sin u, 0, 0)",
                                 sample_open(e0, bounds[i], bounds[i + 1], h), cf));
      }
      break;
    }
    case AxisClass::AllDistinct: {
      const Thm2Gaps g = thm2_gaps(cf.surface);
      const double r = g.r, s = g.s, t = g.t;
      // α±(u, v, 0) on s(r+s+t)u² + (t+s)(r+s)v² = s(r+s).
      const double U = std::sqrt(s * (r + s) / (s * (r + s + t))), V = std::sqrt(s * (r + s) / ((t + s) * (r + s)));
      for (int sgn : {1, -1}) {
        auto f = [=](double th) {
          const double u = U * std::cos(th), v = V * std::sin(th);
          return Vec4(a * u, b * v, 0, sgn * d * std::sqrt(1 - u * u - v * v));
        };
        out.push_back(make_curve(LocusKind::P23Curve, sgn > 0 ? "P23^1" : "P23^2",
                                 "alpha±(u,v,0), s(r+s+t)u² + (t+s)(r+s)v² = s(r+s)", sample_closed(f, h), cf));
      }
      // β±(u, 0, w) = (±a√(1-u²-w²), 0, cu, dw) on (t+s)(r+s)u² + s(r+s+t)w² = s(t+s).
      const double Ub = std::sqrt(s * (t + s) / ((t + s) * (r + s))), Wb = std::sqrt(s * (t + s) / (s * (r + s + t)));
      for (int sgn : {1, -1}) {
        auto f = [=](double th) {
          const double u = Ub * std::cos(th), w = Wb * std::sin(th);
          return Vec4(sgn * a * std::sqrt(1 - u * u - w * w), 0, c * u, d * w);
        };
        out.push_back(make_curve(LocusKind::P12Curve, sgn > 0 ? "P12^1" : "P12^2",
                                 "beta±(u,0,w), (t+s)(r+s)u² + s(r+s+t)w² = s(t+s)", sample_closed(f, h), cf));
      }
      break;
    }
  }
  return out;
}

LocusReport verify_locus(const Ellipsoid4& surface, const SingularLocus& locus, double eps_deg) {
  std::vector<Vec4> pts;
  if (locus.symbolic) {
    const CanonicalForm cf = surface.canonical();
    Rng rng(12345);
    while (pts.size() < 200) {
      Vec4 z(rng.normal(), rng.normal(), rng.normal(), rng.normal());
      z.normalize();
      if (std::abs(z[3]) > 0.99) continue;
      for (int i = 0; i < 4; ++i) z[i] *= cf.surface.axis(i);
      pts.push_back(cf.from_canonical(z));
    }
  } else if (locus.kind == LocusKind::UmbilicPoint) {
    pts = locus.points;
  } else {
    pts = locus.curve.samples;
  }

  LocusReport rep;
  rep.samples = static_cast<int>(pts.size());
  rep.min_third_separation = INFINITY;
  for (const Vec4& x : pts) {
    const Forms f = forms_at(surface, x);
    const auto gaps = relative_gaps(principal_curvatures(f));
    const ScaledValue disc = cubic_discriminant_scaled(characteristic_cubic(f.G, f.B).normalize());
    rep.max_discriminant = std::max(rep.max_discriminant, std::abs(disc.relative()));
    double pair = 0.0, third = INFINITY;
    switch (locus.kind) {
      case LocusKind::P12Curve:
      case LocusKind::P12Surface: pair = gaps[0]; third = gaps[1]; break;
      case LocusKind::P23Curve:
      case LocusKind::P23Surface: pair = gaps[1]; third = gaps[0]; break;
      case LocusKind::UmbilicPoint:
      case LocusKind::UmbilicSurface: pair = std::max(gaps[0], gaps[1]); break;
    }
    rep.max_pair_gap = std::max(rep.max_pair_gap, pair);
    rep.min_third_separation = std::min(rep.min_third_separation, third);
  }
  const bool umbilic = locus.kind == LocusKind::UmbilicPoint || locus.kind == LocusKind::UmbilicSurface;
  rep.pass = rep.samples > 0 && rep.max_pair_gap < eps_deg && (umbilic || rep.min_third_separation > 10 * eps_deg);
  return rep;
}

double distance_to_loci(const std::vector<SingularLocus>& loci, const Vec4& x) {
  double best = INFINITY;
  for (const auto& l : loci) {
    for (const Vec4& p : l.points) best = std::min(best, (x - p).norm());
    const auto& s = l.curve.samples;
    for (std::size_t i = 0; i + 1 < s.size(); ++i) {
      const Vec4 e = s[i + 1] - s[i];
      const double len2 = e.squaredNorm();
      const double tt = len2 > 0 ? std::clamp((x - s[i]).dot(e) / len2, 0.0, 1.0) : 0.0;
      best = std::min(best, (x - s[i] - tt * e).norm());
    }
    if (s.size() == 1) best = std::min(best, (x - s[0]).norm());
  }
  return best;
}

}  // namespace e4
