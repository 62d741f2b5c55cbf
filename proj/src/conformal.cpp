#include "e4/conformal.hpp"

#include <cmath>
#include <functional>
#include <numbers>

#include "e4/error.hpp"

namespace e4 {

namespace {

constexpr double kPi = std::numbers::pi;

struct GaussRule {
  std::array<double, 20> x{};
  std::array<double, 20> w{};
};

// Nodes and weights of the 20-point Gauss–Legendre rule on [-1, 1].
const GaussRule& gauss20() {
  static const GaussRule rule = [] {
    GaussRule r;
    constexpr int n = 20;
    for (int i = 0; i < n; ++i) {
      double z = std::cos(kPi * (i + 0.75) / (n + 0.5));
      double dp = 0.0;
      for (int it = 0; it < 100; ++it) {
        double p0 = 1.0, p1 = z;
        for (int k = 2; k <= n; ++k) {
          const double p2 = ((2 * k - 1) * z * p1 - (k - 1) * p0) / k;
          p0 = p1;
          p1 = p2;
        }
        dp = n * (z * p1 - p0) / (z * z - 1);
        const double dz = p1 / dp;
        z -= dz;
        if (std::abs(dz) < 1e-16) break;
      }
      r.x[i] = z;
      r.w[i] = 2.0 / ((1 - z * z) * dp * dp);
    }
    return r;
  }();
  return rule;
}

double gauss_composite(const std::function<double(double)>& g, double a, double b, int panels) {
  const GaussRule& r = gauss20();
  double total = 0.0;
  const double hw = 0.5 * (b - a) / panels;
  for (int p = 0; p < panels; ++p) {
    const double mid = a + (2 * p + 1) * hw;
    double sum = 0.0;
    for (int i = 0; i < 20; ++i) sum += r.w[i] * g(mid + hw * r.x[i]);
    total += hw * sum;
  }
  return total;
}

double simpson_rec(const std::function<double(double)>& g, double a, double b, double fa, double fm, double fb,
                   double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = g(lm), frm = g(rm);
  const double left = (m - a) / 6 * (fa + 4 * flm + fm);
  const double right = (b - m) / 6 * (fm + 4 * frm + fb);
  const double diff = left + right - whole;
  if (depth <= 0 || std::abs(diff) <= 15 * tol) return left + right + diff / 15;
  return simpson_rec(g, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         simpson_rec(g, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

double adaptive_simpson(const std::function<double(double)>& g, double a, double b, double tol) {
  const double fa = g(a), fm = g(0.5 * (a + b)), fb = g(b);
  const double whole = (b - a) / 6 * (fa + 4 * fm + fb);
  return simpson_rec(g, a, b, fa, fm, fb, whole, tol, 40);
}

const ConformalAxis& axis_of(const ConformalDomain& d, int which) {
  if (which != 1 && which != 2) throw Error(ErrorKind::DomainViolation, "axis index must be 1 or 2");
  return d.axis[static_cast<std::size_t>(which - 1)];
}

// Integrable singularities have f ~ |x - e|^p with p > -2.
void audit_endpoints(const ConformalDomain& d, int which, IntegrandVariant v) {
  const ConformalAxis& ax = axis_of(d, which);
  const double len = std::abs(ax.corner - ax.center);
  for (double e : {ax.center, ax.corner}) {
    const double dir = (e == ax.center) == (ax.corner > ax.center) ? 1.0 : -1.0;
    const double d1 = 1e-7 * len, d2 = 1e-9 * len;
    const double f1 = arc_integrand(d, which, v, e + dir * d1);
    const double f2 = arc_integrand(d, which, v, e + dir * d2);
    const double p = std::log(f2 / f1) / std::log(d2 / d1);
    if (!(p > -1.95))
      throw Error(ErrorKind::DivergentIntegral, "endpoint singularity of exponent " + std::to_string(p));
  }
}

// Integrand in θ for x = center + (corner - center)(1 - cos θ)/2.
std::function<double(double)> theta_integrand(const ConformalDomain& d, int which, IntegrandVariant v) {
  const ConformalAxis ax = axis_of(d, which);
  const double span = ax.corner - ax.center;
  return [=, &d](double th) {
    const double s = std::sin(th);
    if (s == 0.0) return 0.0;
    const double x = ax.center + span * 0.5 * (1 - std::cos(th));
    return 0.5 * std::sqrt(arc_integrand(d, which, v, x)) * std::abs(span) * 0.5 * s;
  };
}

constexpr int kPanels = 24;

// λ at |σ| = target along axis `which`, together with the full half-width s.
double invert_sigma(const ConformalDomain& d, int which, IntegrandVariant v, double target, double s) {
  const ConformalAxis& ax = axis_of(d, which);
  if (target <= 0.0) return ax.center;
  if (target >= s) return ax.corner;
  const auto g = theta_integrand(d, which, v);
  double lo = 0.0, hi = kPi, th = kPi * target / s;
  for (int it = 0; it < 60; ++it) {
    const double val = gauss_composite(g, 0.0, th, kPanels) - target;
    if (val > 0) hi = th;
    else lo = th;
    const double deriv = g(th);
    double next = deriv > 0 ? th - val / deriv : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - th) < 1e-15) {
      th = next;
      break;
    }
    th = next;
  }
  return ax.center + (ax.corner - ax.center) * 0.5 * (1 - std::cos(th));
}

Vec4 point_from_coords(const ConformalDomain& d, double l1, double l2, int sgn1, int sgn2) {
  const auto& a2 = d.axes_sq;
  const int n = static_cast<int>(a2.size());
  std::vector<double> lam{l1, l2};
  if (d.lambda) lam.push_back(*d.lambda);
  Vec4 x = Vec4::Zero();
  for (int i = 0; i < n; ++i) {
    double num = a2[i], den = 1.0;
    for (double l : lam) num *= a2[i] - l;
    for (int j = 0; j < n; ++j)
      if (j != i) den *= a2[i] - a2[j];
    x[i] = std::sqrt(std::max(num / den, 0.0));
  }
  if (sgn1 < 0) x[d.axis[0].sign_coord] = -x[d.axis[0].sign_coord];
  if (sgn2 < 0) x[d.axis[1].sign_coord] = -x[d.axis[1].sign_coord];
  return x;
}

}  // namespace

ConformalDomain conformal_domain_3d(const std::array<double, 3>& axes) {
  if (!(axes[0] > axes[1] && axes[1] > axes[2] && axes[2] > 0))
    throw Error(ErrorKind::InvalidAxes, "expected a > b > c > 0");
  ConformalDomain d;
  d.axes_sq = {axes[0] * axes[0], axes[1] * axes[1], axes[2] * axes[2]};
  d.axis[0] = {d.axes_sq[0], d.axes_sq[1], 0};
  d.axis[1] = {d.axes_sq[2], d.axes_sq[1], 2};
  return d;
}

ConformalDomain conformal_domain_slice(const Ellipsoid4& surface, double lambda) {
  const auto& a = surface.axes();
  if (!(a[0] > a[1] && a[1] > a[2] && a[2] > a[3]))
    throw Error(ErrorKind::InvalidAxes, "expected distinct axes in decreasing order");
  ConformalDomain d;
  d.axes_sq = {a[0] * a[0], a[1] * a[1], a[2] * a[2], a[3] * a[3]};
  const auto& q = d.axes_sq;
  const double tol = 1e-14 * q[0];
  for (double p : q)
    if (std::abs(lambda - p) <= tol) throw Error(ErrorKind::PoleContact, "slice parameter equals a squared semi-axis");
  d.lambda = lambda;
  if (lambda > q[3] && lambda < q[2]) {
    d.axis[0] = {q[0], q[1], 0};
    d.axis[1] = {q[2], q[1], 2};
  } else if (lambda > q[1] && lambda < q[0]) {
    d.axis[0] = {q[3], q[2], 3};
    d.axis[1] = {q[1], q[2], 1};
  } else if (lambda > q[2] && lambda < q[1]) {
    throw Error(ErrorKind::WrongSignature, "the slice is a torus; no rectangle chart with umbilic corners");
  } else {
    throw Error(ErrorKind::DomainViolation, "slice parameter outside (d², a²)");
  }
  return d;
}

double arc_integrand(const ConformalDomain& d, int which, IntegrandVariant variant, double x) {
  axis_of(d, which);
  const auto& a2 = d.axes_sq;
  double f = 0.0;
  if (variant == IntegrandVariant::Liouville) {
    f = x;
    if (d.lambda) f *= x - *d.lambda;
    for (double p : a2) f /= p - x;
    f = std::abs(f);
  } else if (!d.lambda) {
    f = -x / ((a2[0] - x) * (a2[2] - x));
  } else if (*d.lambda < a2[2]) {
    f = (x - *d.lambda) * x / ((a2[0] - x) * (a2[2] - x) * (a2[3] - x));
  } else {
    throw Error(ErrorKind::DomainViolation, "the printed integrand is stated only for λ ∈ (d², c²)");
  }
  if (!(f >= 0.0)) throw Error(ErrorKind::DomainViolation, "negative radicand in the arclength integrand");
  return f;
}

double arc_integral_s(const ConformalDomain& d, int which, IntegrandVariant variant, Quadrature q) {
  audit_endpoints(d, which, variant);
  const ConformalAxis& ax = axis_of(d, which);
  if (q == Quadrature::GaussCosine) return gauss_composite(theta_integrand(d, which, variant), 0.0, kPi, kPanels);

  const double lo = std::min(ax.center, ax.corner), hi = std::max(ax.center, ax.corner);
  const double mid = 0.5 * (lo + hi), len = hi - lo;
  const double floor_tau = 1e-7 * std::sqrt(len);
  auto from = [&](double e, double sgn) {
    return [&, e, sgn](double tau) {
      tau = std::max(tau, floor_tau);
      return std::sqrt(arc_integrand(d, which, variant, e + sgn * tau * tau)) * 2 * tau;
    };
  };
  const double half = std::sqrt(mid - lo);
  const double left = adaptive_simpson(from(lo, 1.0), 0.0, half, 1e-13 * len);
  const double right = adaptive_simpson(from(hi, -1.0), 0.0, half, 1e-13 * len);
  return 0.5 * (left + right);
}

Vec4 conformal_point(const ConformalDomain& d, double sigma1, double sigma2, IntegrandVariant variant) {
  const double s1 = arc_integral_s(d, 1, variant), s2 = arc_integral_s(d, 2, variant);
  if (std::abs(sigma1) > s1 * (1 + 1e-15) || std::abs(sigma2) > s2 * (1 + 1e-15))
    throw Error(ErrorKind::DomainViolation, "chart parameters outside the rectangle");
  const double l1 = invert_sigma(d, 1, variant, std::abs(sigma1), s1);
  const double l2 = invert_sigma(d, 2, variant, std::abs(sigma2), s2);
  return point_from_coords(d, l1, l2, sigma1 < 0 ? -1 : 1, sigma2 < 0 ? -1 : 1);
}

ConformalChart2 build_conformal_chart(const ConformalDomain& d, int n, int m, IntegrandVariant variant) {
  if (n < 1 || m < 1) throw Error(ErrorKind::DomainViolation, "grid must be at least 1×1");
  ConformalChart2 c;
  c.domain = d;
  c.variant = variant;
  c.s1 = arc_integral_s(d, 1, variant);
  c.s2 = arc_integral_s(d, 2, variant);

  std::vector<double> l1(n), l2(m);
  for (int i = 0; i < n; ++i) {
    c.sigma1.push_back(-c.s1 + 2 * c.s1 * (i + 0.25) / n);
    l1[i] = invert_sigma(d, 1, variant, std::abs(c.sigma1[i]), c.s1);
  }
  for (int j = 0; j < m; ++j) {
    c.sigma2.push_back(-c.s2 + 2 * c.s2 * (j + 0.25) / m);
    l2[j] = invert_sigma(d, 2, variant, std::abs(c.sigma2[j]), c.s2);
  }

  const auto& a2 = d.axes_sq;
  const int dim = static_cast<int>(a2.size());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < m; ++j) {
      const int sg1 = c.sigma1[i] < 0 ? -1 : 1, sg2 = c.sigma2[j] < 0 ? -1 : 1;
      const Vec4 x = point_from_coords(d, l1[i], l2[j], sg1, sg2);
      c.grid.push_back(x);
      // ∂x/∂σ_k = ∂x/∂λ_k · dλ_k/dσ_k, with ∂x_i/∂λ = -x_i/(2(a_i² - λ)) and
      // |dλ/dσ| = 2/√f(λ).
      Vec4 c1 = Vec4::Zero(), c2 = Vec4::Zero();
      const double r1 = 2 / std::sqrt(arc_integrand(d, 1, variant, l1[i]));
      const double r2 = 2 / std::sqrt(arc_integrand(d, 2, variant, l2[j]));
      for (int k = 0; k < dim; ++k) {
        c1[k] = -x[k] / (2 * (a2[k] - l1[i])) * r1;
        c2[k] = -x[k] / (2 * (a2[k] - l2[j])) * r2;
      }
      const double g11 = c1.squaredNorm(), g22 = c2.squaredNorm(), g12 = c1.dot(c2);
      const double mean = 0.5 * (g11 + g22);
      c.conformality_residual =
          std::max({c.conformality_residual, std::abs(g12) / mean, std::abs(g11 / g22 - 1.0)});
    }

  const double sg[4][2] = {{1, 1}, {-1, 1}, {-1, -1}, {1, -1}};
  for (int k = 0; k < 4; ++k)
    c.corners[k] = point_from_coords(d, d.axis[0].corner, d.axis[1].corner, static_cast<int>(sg[k][0]),
                                     static_cast<int>(sg[k][1]));
  return c;
}

}  // namespace e4
