#include "e4/confocal.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <vector>

#include "e4/chart.hpp"
#include "e4/error.hpp"

namespace e4 {

namespace {

void require_distinct(const Ellipsoid4& s) {
  const auto& a = s.axes();
  if (!(a[0] > a[1] && a[1] > a[2] && a[2] > a[3]))
    throw Error(ErrorKind::InvalidAxes, "confocal coordinates need distinct axes in decreasing order");
}

std::array<double, 4> squares(const Ellipsoid4& s) {
  const auto& a = s.axes();
  return {a[0] * a[0], a[1] * a[1], a[2] * a[2], a[3] * a[3]};
}

// Root of F(λ) = Σ x_i²/(a_i²-λ) - 1 on (lo, hi), where F increases from -∞ to +∞.
double isolate_root(const Ellipsoid4& s, const Vec4& x, double lo, double hi) {
  const double margin = 1e-12 * (hi - lo);
  double a = lo + margin, b = hi - margin;
  for (int it = 0; it < 200; ++it) {
    const double m = 0.5 * (a + b);
    if (m <= a || m >= b) break;
    if (confocal_function(s, x, m) - 1.0 < 0.0) a = m;
    else b = m;
  }
  double lam = 0.5 * (a + b);
  const auto a2 = squares(s);
  for (int it = 0; it < 3; ++it) {
    double f = -1.0, df = 0.0;
    for (int i = 0; i < 4; ++i) {
      const double r = 1.0 / (a2[i] - lam);
      f += x[i] * x[i] * r;
      df += x[i] * x[i] * r * r;
    }
    const double next = lam - f / df;
    if (!(next > lo && next < hi)) break;
    const double fn = confocal_function(s, x, next) - 1.0;
    if (!(std::abs(fn) < std::abs(f))) break;
    lam = next;
  }
  // Final ulp walk to the best representable root.
  double best = std::abs(confocal_function(s, x, lam) - 1.0);
  for (double dir : {lo, hi})
    for (int it = 0; it < 8; ++it) {
      const double cand = std::nextafter(lam, dir);
      const double r = std::abs(confocal_function(s, x, cand) - 1.0);
      if (!(r < best)) break;
      best = r;
      lam = cand;
    }
  return lam;
}

}  // namespace

double confocal_function(const Ellipsoid4& s, const Vec4& x, double lambda) {
  // Extended precision: the terms near a pole are large and nearly cancel.
  long double f = 0.0L;
  for (int i = 0; i < 4; ++i) {
    const long double xi = x[i];
    f += xi * xi / (static_cast<long double>(s.axis_sq(i)) - lambda);
  }
  return static_cast<double>(f);
}

ConfocalCoords to_confocal(const Ellipsoid4& s, const Vec4& x) {
  require_distinct(s);
  for (int i = 0; i < 4; ++i)
    if (std::abs(x[i]) < 1e-10)
      throw Error(ErrorKind::OnCoordinateHyperplane, "point lies on a coordinate hyperplane");
  if (std::abs(s.level(x) - 1.0) > 1e-8)
    throw Error(ErrorKind::DomainViolation, "point is not on the ellipsoid");
  const auto a2 = squares(s);
  ConfocalCoords c;
  c.u = isolate_root(s, x, a2[3], a2[2]);
  c.v = isolate_root(s, x, a2[2], a2[1]);
  c.t = isolate_root(s, x, a2[1], a2[0]);
  for (int i = 0; i < 4; ++i) c.octant[i] = x[i] < 0.0 ? -1 : 1;
  return c;
}

Vec4 from_confocal(const Ellipsoid4& s, const ConfocalCoords& c) {
  return eval_chart(Chart::confocal(s, c.octant), c.params()).ambient;
}

Forms confocal_forms(const Ellipsoid4& s, const ConfocalCoords& c) {
  return fundamental_forms(Chart::confocal(s, c.octant), c.params());
}

DiagonalForms confocal_forms_closed(const Ellipsoid4& s, const ConfocalCoords& c) {
  require_distinct(s);
  const auto a2 = squares(s);
  auto xi = [&](double l) { return (a2[0] - l) * (a2[1] - l) * (a2[2] - l) * (a2[3] - l); };
  const double u = c.u, v = c.v, t = c.t;
  const auto& ax = s.axes();
  const double pref = ax[0] * ax[1] * ax[2] * ax[3] / std::sqrt(u * v * t);
  DiagonalForms f;
  const Vec3 core((u - v) * (u - t) / xi(u), (v - u) * (v - t) / xi(v), (t - u) * (t - v) / xi(t));
  f.g = -0.25 * Vec3(u * core[0], v * core[1], t * core[2]);
  f.b = -0.25 * pref * core;
  return f;
}

std::array<double, 3> confocal_curvatures(const Ellipsoid4& s, const ConfocalCoords& c) {
  require_distinct(s);
  const auto& ax = s.axes();
  const double f = ax[0] * ax[1] * ax[2] * ax[3] / std::sqrt(c.u * c.v * c.t);
  return {f / c.t, f / c.v, f / c.u};
}

double gradient_orthogonality(const Ellipsoid4& s, const Vec4& x) {
  const ConfocalCoords c = to_confocal(s, x);
  const double lam[3] = {c.u, c.v, c.t};
  Vec4 g[3];
  for (int k = 0; k < 3; ++k) {
    for (int i = 0; i < 4; ++i) g[k][i] = 2.0 * x[i] / (s.axis_sq(i) - lam[k]);
    g[k].normalize();
  }
  return std::max({std::abs(g[0].dot(g[1])), std::abs(g[0].dot(g[2])), std::abs(g[1].dot(g[2]))});
}

SliceRegime QuarticSlice::regime() const {
  require_distinct(surface);
  const auto a2 = squares(surface);
  const double tol = 1e-14 * a2[0];
  for (double p : a2)
    if (std::abs(lambda - p) <= tol)
      throw Error(ErrorKind::PoleContact, "slice parameter equals a squared semi-axis");
  if (lambda > a2[3] && lambda < a2[2]) return SliceRegime::SpherePairLow;
  if (lambda > a2[2] && lambda < a2[1]) return SliceRegime::Torus;
  if (lambda > a2[1] && lambda < a2[0]) return SliceRegime::SpherePairHigh;
  throw Error(ErrorKind::DomainViolation, "slice parameter outside (d², a²)");
}

int QuarticSlice::fixed_coordinate() const {
  switch (regime()) {
    case SliceRegime::SpherePairLow: return 0;
    case SliceRegime::Torus: return 1;
    case SliceRegime::SpherePairHigh: return 2;
  }
  return 0;
}

double quartic_membership(const QuarticSlice& slice, const Vec4& x) {
  slice.regime();
  return confocal_function(slice.surface, x, slice.lambda) - 1.0;
}

Vec4 slice_point(const QuarticSlice& slice, double p, double q, const std::array<int, 4>& octant) {
  const int fixed = slice.fixed_coordinate();
  double c[3];
  int j = 0;
  for (int k = 0; k < 3; ++k) c[k] = k == fixed ? slice.lambda : (j++ == 0 ? p : q);
  const auto a2 = squares(slice.surface);
  Vec4 x;
  for (int i = 0; i < 4; ++i) {
    double num = a2[i], den = 1.0;
    for (int k = 0; k < 3; ++k) num *= a2[i] - c[k];
    for (int m = 0; m < 4; ++m)
      if (m != i) den *= a2[i] - a2[m];
    x[i] = octant[i] * std::sqrt(std::max(num / den, 0.0));
  }
  return x;
}

int slice_component_count(const QuarticSlice& slice, int n) {
  const int fixed = slice.fixed_coordinate();
  const auto a2 = squares(slice.surface);
  const double lo[3] = {a2[3], a2[2], a2[1]}, hi[3] = {a2[2], a2[1], a2[0]};
  int free_idx[2], j = 0;
  for (int k = 0; k < 3; ++k)
    if (k != fixed) free_idx[j++] = k;

  const int per = (n + 1) * (n + 1);
  std::vector<int> parent(16 * per);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  auto unite = [&](int x, int y) { parent[find(x)] = find(y); };

  const double quantum = 1e-9 * slice.surface.diameter();
  std::map<std::array<long long, 4>, int> seen;
  for (int o = 0; o < 16; ++o) {
    const std::array<int, 4> oct{o & 1 ? -1 : 1, o & 2 ? -1 : 1, o & 4 ? -1 : 1, o & 8 ? -1 : 1};
    for (int i = 0; i <= n; ++i)
      for (int k = 0; k <= n; ++k) {
        const double p = lo[free_idx[0]] + (hi[free_idx[0]] - lo[free_idx[0]]) * i / n;
        const double q = lo[free_idx[1]] + (hi[free_idx[1]] - lo[free_idx[1]]) * k / n;
        const int id = o * per + i * (n + 1) + k;
        if (i > 0) unite(id, id - (n + 1));
        if (k > 0) unite(id, id - 1);
        const Vec4 x = slice_point(slice, p, q, oct);
        std::array<long long, 4> key;
        for (int c = 0; c < 4; ++c) key[c] = std::llround(x[c] / quantum);
        auto [it, inserted] = seen.emplace(key, id);
        if (!inserted) unite(id, it->second);
      }
  }
  int count = 0;
  for (int i = 0; i < static_cast<int>(parent.size()); ++i) count += find(i) == i;
  return count;
}

}  // namespace e4
