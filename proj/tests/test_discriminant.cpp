#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "e4/chart.hpp"
#include "e4/discriminant.hpp"
#include "e4/error.hpp"
#include "e4/forms.hpp"
#include "e4/principal.hpp"

using namespace e4;

namespace {

constexpr double pi = std::numbers::pi;
const Ellipsoid4 kDistinct(2, std::sqrt(3.0), std::sqrt(2.0), 1);

// Classical discriminant b²c² - 4ac³ - 4b³d - 27a²d² + 18abcd of a k³ + b k² + c k + d.
double classical(double a, double b, double c, double d) {
  return b * b * c * c - 4 * a * c * c * c - 4 * b * b * b * d - 27 * a * a * d * d + 18 * a * b * c * d;
}

}  // namespace

TEST(Discriminant, WorkedCubics) {
  EXPECT_NEAR(cubic_discriminant({-1, 3, -3, 1, true}), 0.0, 1e-12);
  EXPECT_NEAR(cubic_discriminant({-2, 5, -4, 1, true}), 0.0, 1e-12);
  EXPECT_NEAR(cubic_discriminant({-6, 11, -6, 1, true}), -4.0, 1e-12);
  EXPECT_THROW(cubic_discriminant({1, 2, 3, 2, false}), Error);
}

TEST(Discriminant, IsNegativeOfClassical) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> U(-3, 3);
  for (int n = 0; n < 200; ++n) {
    const double A = U(rng), B = U(rng), C = U(rng);
    EXPECT_NEAR(cubic_discriminant({A, B, C, 1, true}), -classical(A, B, C, 1), 1e-9);
  }
}

TEST(Discriminant, PuQuarticR) {
  const Thm1Gaps g{1, 1};
  // Direct evaluation gives 1.0974127; the quoted six-digit value carries a
  // rounding slip in its middle term (3.653672 instead of 3.653644).
  const double c1 = std::cos(1.0) * std::cos(1.0), s1 = 1 - c1;
  const double want = std::pow(c1 - s1, 2) * 0.0625 + 2 * (4 * c1 * s1 + 1) * 0.25 + std::pow(c1 - s1, 2);
  EXPECT_NEAR(pu_quartic_R(g, 0.5, 1.0), want, 1e-14);
  EXPECT_NEAR(pu_quartic_R(g, 0.5, 1.0), 1.097420, 1e-5);
  EXPECT_NEAR(pu_quartic_R(g, 1.0, pi / 4), 4.0, 1e-12);
  const Thm1Gaps h{2.0, 0.5};
  const double u0 = std::atan(std::sqrt(h.t / h.s));
  EXPECT_NEAR(pu_quartic_R(h, 0.0, u0), 0.0, 1e-14);
  const double c2 = std::cos(0.3) * std::cos(0.3), s2 = 1 - c2;
  EXPECT_NEAR(pu_quartic_R(h, 0.0, 0.3), std::pow(h.t * c2 - h.s * s2, 2), 1e-14);
}

TEST(Discriminant, PuQuarticUv) {
  const Thm1Gaps g{1, 1};
  EXPECT_NEAR(pu_quartic_uv(g, 0.5, 0.5), 2.0, 1e-14);
  EXPECT_NEAR(pu_quartic_uv(Thm1Gaps{0.7, 1.3}, 0, 0), 4.0, 1e-14);
  EXPECT_THROW(pu_quartic_uv(g, 0.8, 0.6), Error);
  EXPECT_THROW(pu_quartic_uv_expanded(g, 1.0, 0.0), Error);

  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> U(0, 1);
  for (int n = 0; n < 100; ++n) {
    const Thm1Gaps h{0.1 + 3 * U(rng), 0.1 + 3 * U(rng)};
    double u, v;
    do {
      u = 2 * U(rng) - 1;
      v = 2 * U(rng) - 1;
    } while (u * u + v * v >= 1);
    EXPECT_NEAR(pu_quartic_uv(h, u, v), pu_quartic_uv_expanded(h, u, v), 1e-12);
  }
}

TEST(Discriminant, PositivityGrids) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> U(0.05, 4.0);
  for (int trial = 0; trial < 10; ++trial) {
    const Thm1Gaps g{U(rng), U(rng)};
    double min_r = INFINITY, min_uv = INFINITY;
    for (int i = 1; i <= 200; ++i)
      for (int j = 0; j < 200; ++j) min_r = std::min(min_r, pu_quartic_R(g, 2.0 * i / 200, 2 * pi * j / 200));
    for (int i = 0; i < 200; ++i)
      for (int j = 0; j < 200; ++j) {
        const double u = -1 + 2 * (i + 0.5) / 200, v = -1 + 2 * (j + 0.5) / 200;
        if (u * u + v * v < 1) min_uv = std::min(min_uv, pu_quartic_uv(g, u, v));
      }
    EXPECT_GT(min_r, 1e-12);
    EXPECT_GT(min_uv, 1e-12);
  }
}

TEST(Discriminant, PolysAtUnitGaps) {
  const Thm2Gaps g{1, 1, 1};
  for (double u : {-0.4, 0.1, 0.6})
    for (double v : {-0.3, 0.2}) {
      EXPECT_NEAR(pu_polys(g, u, v, 0)[5], 3 * u * u + 4 * v * v - 2, 1e-14);
      EXPECT_NEAR(pu_polys(g, u, 0, v)[3], 3 * u * u - v * v - 1, 1e-14);
    }
  EXPECT_NEAR(pu_polys(Thm2Gaps{0.7, 1.1, 2.0}, 0.5, 0, 0)[1], 0.7 * (0.7 + 1.1), 1e-14);
  const auto g2 = thm2_gaps(kDistinct);
  EXPECT_NEAR(g2.r, 1, 1e-14);
  EXPECT_NEAR(g2.s, 1, 1e-14);
  EXPECT_NEAR(g2.t, 1, 1e-14);
}

TEST(Discriminant, Eq11MatchesFormsPipeline) {
  const Chart chart(ChartKind::Thm2AlphaPlus, kDistinct);
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> U(-0.6, 0.6);
  for (int n = 0; n < 50; ++n) {
    const Vec3 p(U(rng), U(rng), U(rng));
    const Forms f = fundamental_forms(chart, p);
    const double sigma = 0.5 * kDistinct.gradient(f.x).norm();
    const CubicPoly mine = rescale_to_eq11(characteristic_cubic(f.G, f.B).normalize(), sigma);
    const CubicPoly ref = eq11_cubic(kDistinct, p);
    EXPECT_NEAR(mine.A, ref.A, 1e-9 * std::abs(ref.A));
    EXPECT_NEAR(mine.B, ref.B, 1e-9 * std::abs(ref.B));
    EXPECT_NEAR(mine.C, ref.C, 1e-9 * std::abs(ref.C));
    // Roots of the literal cubic are -σk.
    const auto k = principal_curvatures(f);
    for (double ki : k) EXPECT_NEAR(ref(-sigma * ki), 0.0, 1e-9);
  }
}

TEST(Discriminant, RestrictedSignAgreesAtOrigin) {
  const double R = restricted_discriminant(kDistinct, Face::W0, 0, 0).value;
  const double P = factor_product(kDistinct, Face::W0, 0, 0).value;
  EXPECT_GT(std::abs(R), 1e-6);
  EXPECT_EQ(R > 0, -P > 0);
  EXPECT_THROW(restricted_discriminant(kDistinct, Face::W0, 0.8, 0.6), Error);
}

TEST(Discriminant, VanishesOnEllipse) {
  // 3u² + 4v² = 2 on w = 0.
  for (int i = 0; i < 64; ++i) {
    const double th = 2 * pi * (i + 0.3) / 64;
    const double u = std::sqrt(2.0 / 3.0) * std::cos(th), v = std::sqrt(0.5) * std::sin(th);
    const ScaledValue r = restricted_discriminant(kDistinct, Face::W0, u, v);
    EXPECT_LT(std::abs(r.relative()), 1e-10);
  }
}

TEST(Discriminant, FactorizationConstantIsMinusOne) {
  const std::array<std::array<double, 4>, 2> surfaces{{{2, std::sqrt(3.0), std::sqrt(2.0), 1},
                                                        {3, 2.2, 1.3, 0.8}}};
  for (const auto& ax : surfaces)
    for (Face face : {Face::W0, Face::V0, Face::U0}) {
      const FactorizationFit fit = fit_factorization(Ellipsoid4(ax), face, 20);
      EXPECT_GT(fit.samples, 150);
      EXPECT_NEAR(fit.constant, -1.0, 1e-9);
      EXPECT_LT(fit.max_rel_spread, 1e-8);
    }
}

TEST(Discriminant, ZeroSetsCoincideOnFace) {
  // Sign changes of R and of pa·pb² along grid rows occur in the same cells.
  const int n = 200;
  for (int j = 0; j < n; j += 7) {
    const double v = -0.99 + 1.98 * (j + 0.5) / n;
    double prev_r = NAN, prev_p = NAN;
    for (int i = 0; i < n; ++i) {
      const double u = -0.99 + 1.98 * (i + 0.5) / n;
      if (u * u + v * v >= 0.98) continue;
      const double r = restricted_discriminant(kDistinct, Face::W0, u, v).relative();
      const double p = -factor_product(kDistinct, Face::W0, u, v).relative();
      if (!std::isnan(prev_r)) EXPECT_EQ(std::signbit(r) != std::signbit(prev_r), std::signbit(p) != std::signbit(prev_p));
      prev_r = r;
      prev_p = p;
    }
  }
}

TEST(Discriminant, GuardedSumRecoversCancellation) {
  EXPECT_EQ(guarded_sum({1e16, 1.0, -1e16}), 1.0);
  EXPECT_EQ(guarded_sum({1.0, 2.0}), 3.0);
}

TEST(Discriminant, UmbilicsCollideInDegenerateLimit) {
  // (a,b,c,c) with a² = c² + s, c² = b² + t: the umbilics sit at cos²u = s/(s+t)
  // and move to u = ±π/2 as s → 0.
  const double b = 1.0, c = std::sqrt(2.0);
  double prev = pi;
  for (double s : {1.0, 0.1, 0.01, 0.001}) {
    const double a = std::sqrt(c * c + s);
    const Ellipsoid4 e(a, b, c, c);
    const Thm1Gaps g = thm1_gaps(e);
    const double u = std::acos(std::sqrt(g.s / (g.s + g.t)));
    const auto k = principal_curvatures(fundamental_forms(Chart(ChartKind::PairAlpha, e), Vec3(u, 0, 0)));
    EXPECT_LT((k[2] - k[0]) / k[1], 1e-9);
    EXPECT_LT(pi / 2 - u, prev);
    prev = pi / 2 - u;
  }
  EXPECT_LT(prev, 0.05);
  EXPECT_THROW(thm1_gaps(Ellipsoid4(2, 1.5, 1, 1)), Error);
}
