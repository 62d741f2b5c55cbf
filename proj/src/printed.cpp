#include "e4/printed.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "e4/chart.hpp"
#include "e4/rng.hpp"

namespace e4::printed {

namespace {

std::array<double, 3> sorted(double x, double y, double z) {
  std::array<double, 3> r{x, y, z};
  std::sort(r.begin(), r.end());
  return r;
}

}  // namespace

std::array<double, 3> prop1_alpha(double a, double b, double w) {
  const double D = std::sqrt((a * a - b * b) * w * w + b * b * b * b);
  const double k = b * b / (a * D);
  return sorted(k, k, a * b * b * b * b / (D * D * D));
}

std::array<double, 3> prop1_beta_axis(double a, double b, double t) {
  const double D = std::sqrt(b * b * std::cos(t) * std::cos(t) + a * a * std::sin(t) * std::sin(t));
  const double k = b / (a * D);
  return sorted(k, k, a * b / (D * D * D));
}

std::array<double, 3> prop2_alpha(double a, double b, double t) {
  const double D = std::sqrt(a * a * std::sin(t) * std::sin(t) + b * b * std::cos(t) * std::cos(t));
  return sorted(b / (a * D), a / (b * D), a * b / (D * D * D));
}

std::array<double, 3> prop2_alphabar_axis(double a, double b) {
  return sorted(1.0 / a, a / (b * b), a / (b * b));
}

std::array<double, 3> pair_e0(double a, double b, double c, double u) {
  const double D = std::sqrt(a * a * std::sin(u) * std::sin(u) + b * b * std::cos(u) * std::cos(u));
  const double k = a * b / (c * c * D);
  return sorted(a * b / (D * D * D), k, k);
}

std::array<double, 3> pair_low_gamma(double a, double b, double c) {
  const double k = a * c / (b * b * b);
  return sorted(k, k, a / (b * c));
}

std::array<double, 3> pair_high_gamma(double a, double b, double c) {
  const double k = b * c / (a * a * a);
  return sorted(b / (a * c), k, k);
}

std::array<double, 3> lemma1(const Ellipsoid4& s, double u, double v, double t) {
  const auto& ax = s.axes();
  const double f = ax[0] * ax[1] * ax[2] * ax[3] / std::sqrt(u * v * t);
  return {f / t, f / v, f / u};
}

double thm1_umbilic_cos2(double a, double b, double c) {
  return (a * a - c * c) / (a * a - b * b);
}

Mat3 thm1_first_form(double a, double b, double c, const Vec3& p) {
  const double u = p[0], v = p[1], w = p[2];
  const double S = 1 - v * v - w * w;
  const double su = std::sin(u), cu = std::cos(u);
  const double h = a * a * cu * cu + b * b * su * su;
  Mat3 g;
  g(0, 0) = S * (b * b * cu * cu + a * a * su * su);
  g(0, 1) = (a * a - b * b) * v * su * cu;
  g(0, 2) = (a * a - b * b) * w * su * cu;
  g(1, 1) = c * c + v * v * h / S;
  g(1, 2) = v * w * h / S;
  g(2, 2) = c * c + w * w * h / S;
  g(1, 0) = g(0, 1);
  g(2, 0) = g(0, 2);
  g(2, 1) = g(1, 2);
  return g;
}

Mat3 thm1_second_form_printed(double a, double b, double c, const Vec3& p) {
  (void)a;
  (void)b;
  const double v = p[1], w = p[2];
  const double S = 1 - v * v - w * w;
  Mat3 m = Mat3::Zero();
  m(0, 0) = c * S;
  m(1, 1) = c * (1 - w * w) / (c * c - v * v - w * w);
  m(1, 2) = m(2, 1) = c * v * w / S;
  m(2, 2) = c * (1 - v * v) / (c * c - v * v - w * w);
  return m;
}

Mat3 thm1_second_form_corrected(double a, double b, double c, const Vec3& p) {
  Mat3 m = thm1_second_form_printed(a, b, c, p);
  const double v = p[1], w = p[2];
  const double S = 1 - v * v - w * w;
  m(1, 1) = c * (1 - w * w) / S;
  m(2, 2) = c * (1 - v * v) / S;
  return m;
}

Vec4 thm1_normal(double a, double b, double c, const Vec3& p) {
  const double u = p[0], v = p[1], w = p[2];
  const double r = std::sqrt(1 - v * v - w * w);
  return -Vec4(c * std::cos(u) * r / a, c * std::sin(u) * r / b, v, w);
}

Mat3 thm2_first_form_printed(const std::array<double, 4>& ax, const Vec3& p) {
  const double u = p[0], v = p[1], w = p[2];
  const double S = u * u + v * v + w * w - 1;
  const double d2 = ax[3] * ax[3];
  Mat3 g;
  g(0, 0) = (ax[0] * ax[0] * S - d2 * u * u) / S;
  g(1, 1) = (ax[1] * ax[1] * S - d2 * v * v) / S;
  g(2, 2) = (ax[2] * ax[2] * S - d2 * w * w) / S;
  g(0, 1) = g(1, 0) = -d2 * u * w / S;
  g(0, 2) = g(2, 0) = -d2 * u * w / S;
  g(1, 2) = g(2, 1) = -d2 * v * w / S;
  return g;
}

Mat3 thm2_first_form_corrected(const std::array<double, 4>& ax, const Vec3& p) {
  Mat3 g = thm2_first_form_printed(ax, p);
  const double S = p.squaredNorm() - 1;
  g(0, 1) = g(1, 0) = -ax[3] * ax[3] * p[0] * p[1] / S;
  return g;
}

Mat3 thm2_second_form(const std::array<double, 4>& ax, const Vec3& p) {
  (void)ax;
  const double u = p[0], v = p[1], w = p[2];
  const double D3 = std::pow(1 - u * u - v * v - w * w, 1.5);
  Mat3 m;
  m(0, 0) = (1 - v * v - w * w) / D3;
  m(1, 1) = (1 - u * u - w * w) / D3;
  m(2, 2) = (1 - u * u - v * v) / D3;
  m(0, 1) = m(1, 0) = u * v / D3;
  m(0, 2) = m(2, 0) = u * w / D3;
  m(1, 2) = m(2, 1) = v * w / D3;
  return m;
}

Vec4 thm2_normal_plus(const std::array<double, 4>& ax, const Vec3& p) {
  const double D = std::sqrt(1 - p.squaredNorm());
  return -Vec4(p[0] / (ax[0] * D), p[1] / (ax[1] * D), p[2] / (ax[2] * D), 1 / ax[3]);
}

std::vector<AuditEntry> audit_printed_tables(int samples, std::uint64_t seed) {
  static const char* names[3][3] = {{"11", "12", "13"}, {"12", "22", "23"}, {"13", "23", "33"}};
  Rng rng(seed);
  std::vector<AuditEntry> out;
  auto record = [&](const std::string& table, const std::array<std::array<double, 3>, 3>& diff) {
    for (int i = 0; i < 3; ++i)
      for (int j = i; j < 3; ++j)
        out.push_back({table, names[i][j], diff[i][j], diff[i][j] < 1e-10});
  };
  auto max_into = [](std::array<std::array<double, 3>, 3>& acc, const Mat3& m) {
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) acc[i][j] = std::max(acc[i][j], std::abs(m(i, j)));
  };

  // (a,b,c,c) with a > c > b.
  {
    const double a = 2.0, b = 1.0, c = std::sqrt(2.0);
    const Chart chart(ChartKind::PairAlpha, Ellipsoid4(a, b, c, c));
    std::array<std::array<double, 3>, 3> dg{}, db{}, dbc{};
    for (int n = 0; n < samples; ++n) {
      const double r = 0.9 * std::sqrt(rng.uniform()), th = 2 * std::numbers::pi * rng.uniform();
      const Vec3 p(2 * std::numbers::pi * rng.uniform(), r * std::cos(th), r * std::sin(th));
      const ChartJet j = chart_jet(chart, p);
      const Vec4 N = thm1_normal(a, b, c, p);
      Mat3 B;
      for (int i = 0; i < 3; ++i)
        for (int k = 0; k < 3; ++k) B(i, k) = j.H[i][k].dot(N);
      max_into(dg, j.J.transpose() * j.J - thm1_first_form(a, b, c, p));
      max_into(db, B - thm1_second_form_printed(a, b, c, p));
      max_into(dbc, B - thm1_second_form_corrected(a, b, c, p));
    }
    record("thm1.g", dg);
    record("thm1.b", db);
    record("thm1.b(corrected)", dbc);
  }
  // (a,b,c,d) distinct, chart α₊.
  {
    const std::array<double, 4> ax{2.0, std::sqrt(3.0), std::sqrt(2.0), 1.0};
    const Chart chart(ChartKind::Thm2AlphaPlus, Ellipsoid4(ax));
    std::array<std::array<double, 3>, 3> dg{}, dgc{}, db{};
    for (int n = 0; n < samples; ++n) {
      Vec3 p;
      do {
        p = Vec3(rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1));
      } while (p.norm() > 0.9);
      const ChartJet j = chart_jet(chart, p);
      const Vec4 N = thm2_normal_plus(ax, p);
      Mat3 B;
      for (int i = 0; i < 3; ++i)
        for (int k = 0; k < 3; ++k) B(i, k) = j.H[i][k].dot(N);
      const Mat3 G = j.J.transpose() * j.J;
      max_into(dg, G - thm2_first_form_printed(ax, p));
      max_into(dgc, G - thm2_first_form_corrected(ax, p));
      max_into(db, B - thm2_second_form(ax, p));
    }
    record("thm2.g", dg);
    record("thm2.g(corrected)", dgc);
    record("thm2.b", db);
  }
  return out;
}

}  // namespace e4::printed
