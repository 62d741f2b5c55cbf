#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "e4/chart.hpp"
#include "e4/discriminant.hpp"
#include "e4/error.hpp"
#include "e4/loci.hpp"

using namespace e4;

namespace {

const double r2 = std::sqrt(2.0), r3 = std::sqrt(3.0);

const std::vector<std::array<double, 4>> kSurfaces{
    {2, 2, 2, 1}, {1, 2, 2, 2}, {2, 2, 1, 1}, {2, r3, r2, r2}, {1, 2, 3, 3}, {2, r2, r2, 1}, {2, r3, r2, 1},
    {1.3, 2.9, 0.7, 2.1}, {2, 1, 1, 1}, {1, 1, 1, 1}};

Vec4 random_point(const Ellipsoid4& e, std::mt19937_64& rng) {
  std::normal_distribution<double> N;
  Vec4 z(N(rng), N(rng), N(rng), N(rng));
  z.normalize();
  for (int i = 0; i < 4; ++i) z[i] *= e.axis(i);
  return z;
}

double hausdorff(const std::vector<Vec4>& a, const std::vector<Vec4>& b) {
  auto one_sided = [](const std::vector<Vec4>& p, const std::vector<Vec4>& q) {
    double worst = 0.0;
    for (const Vec4& x : p) {
      double best = INFINITY;
      for (const Vec4& y : q) best = std::min(best, (x - y).norm());
      worst = std::max(worst, best);
    }
    return worst;
  };
  return std::max(one_sided(a, b), one_sided(b, a));
}

const SingularLocus& by_name(const std::vector<SingularLocus>& v, const std::string& name) {
  for (const auto& l : v)
    if (l.name == name) return l;
  throw std::runtime_error("missing locus " + name);
}

}  // namespace

TEST(Loci, UmbilicPointsThreeEqual) {
  const auto u = umbilic_points(Ellipsoid4(2, 2, 2, 1));
  ASSERT_EQ(u.size(), 2u);
  EXPECT_LT((u[0].points[0] - Vec4(0, 0, 0, 1)).norm(), 1e-15);
  EXPECT_LT((u[1].points[0] - Vec4(0, 0, 0, -1)).norm(), 1e-15);
  // ThreeEqualFirst: the odd axis is the first coordinate.
  const auto v = umbilic_points(Ellipsoid4(2, 1, 1, 1));
  ASSERT_EQ(v.size(), 2u);
  EXPECT_NEAR(std::abs(v[0].points[0][0]), 2.0, 1e-15);
}

TEST(Loci, UmbilicPointsPairMiddle) {
  // In the (a,b,c,c) layout the four points are (±2√(2/3), ±√(1/3), 0, 0).
  const auto u = umbilic_points(Ellipsoid4(2, 1, r2, r2));
  ASSERT_EQ(u.size(), 4u);
  for (const auto& l : u) {
    const Vec4& x = l.points[0];
    EXPECT_NEAR(std::abs(x[0]), 2 * std::sqrt(2.0 / 3.0), 1e-10);
    EXPECT_NEAR(std::abs(x[1]), std::sqrt(1.0 / 3.0), 1e-10);
    EXPECT_EQ(x[2], 0.0);
    EXPECT_EQ(x[3], 0.0);
  }
  // Written as E_{a,c,c,b}, the second coordinate of the layout is the last one.
  for (const auto& l : umbilic_points(Ellipsoid4(2, r2, r2, 1))) {
    EXPECT_NEAR(std::abs(l.points[0][3]), std::sqrt(1.0 / 3.0), 1e-10);
    EXPECT_TRUE(verify_locus(Ellipsoid4(2, r2, r2, 1), l).pass);
  }
}

TEST(Loci, NoUmbilicsForOtherClasses) {
  for (const auto& ax : std::vector<std::array<double, 4>>{{2, r3, r2, 1}, {2, 2, 1, 1}, {2, r3, r2, r2}, {1, 2, 3, 3}})
    EXPECT_TRUE(umbilic_points(Ellipsoid4(ax)).empty());
}

TEST(Loci, EveryLocusVerifies) {
  for (const auto& ax : kSurfaces) {
    const Ellipsoid4 e(ax);
    auto loci = partially_umbilic_curves(e, 0.02);
    for (auto& u : umbilic_points(e)) loci.push_back(u);
    for (const auto& l : loci) {
      const LocusReport r = verify_locus(e, l);
      EXPECT_TRUE(r.pass) << to_string(e.axis_class()) << " " << l.name << " gap " << r.max_pair_gap << " sep "
                          << r.min_third_separation;
      EXPECT_LT(r.max_pair_gap, 1e-9);
      if (l.is_curve()) {
        for (const Vec4& x : l.curve.samples) EXPECT_LT(std::abs(e.level(x) - 1.0), 1e-14);
        if (l.curve.closed) EXPECT_LT((l.curve.samples.front() - l.curve.samples.back()).norm(), 1e-9);
        EXPECT_LE(l.curve.resolution, 0.02 + 1e-12);
      }
    }
  }
}

TEST(Loci, CurveCountsPerClass) {
  EXPECT_EQ(partially_umbilic_curves(Ellipsoid4(2, 2, 1, 1), 0.05).size(), 2u);
  EXPECT_EQ(partially_umbilic_curves(Ellipsoid4(2, r3, r2, r2), 0.05).size(), 3u);
  EXPECT_EQ(partially_umbilic_curves(Ellipsoid4(1, 2, 3, 3), 0.05).size(), 3u);
  EXPECT_EQ(partially_umbilic_curves(Ellipsoid4(2, r2, r2, 1), 0.05).size(), 4u);
  EXPECT_EQ(partially_umbilic_curves(Ellipsoid4(2, r3, r2, 1), 0.05).size(), 4u);
  const auto s = partially_umbilic_curves(Ellipsoid4(2, 2, 2, 1), 0.05);
  ASSERT_EQ(s.size(), 1u);
  EXPECT_TRUE(s[0].symbolic);
  EXPECT_EQ(s[0].kind, LocusKind::P12Surface);
  EXPECT_EQ(partially_umbilic_curves(Ellipsoid4(2, 1, 1, 1), 0.05)[0].kind, LocusKind::P23Surface);
  EXPECT_THROW(partially_umbilic_curves(Ellipsoid4(2, 2, 1, 1), 0.0), Error);
}

TEST(Loci, TwoPairsCircles) {
  const auto c = partially_umbilic_curves(Ellipsoid4(2, 2, 1, 1), 0.05);
  for (const Vec4& x : by_name(c, "P23").curve.samples) {
    EXPECT_NEAR(std::hypot(x[0], x[1]), 2.0, 1e-14);
    EXPECT_EQ(x[2], 0.0);
  }
  for (const Vec4& x : by_name(c, "P12").curve.samples) {
    EXPECT_NEAR(std::hypot(x[2], x[3]), 1.0, 1e-14);
    EXPECT_EQ(x[0], 0.0);
  }
}

TEST(Loci, PairLowGammaPosition) {
  const auto c = partially_umbilic_curves(Ellipsoid4(2, r3, r2, r2), 0.05);
  for (const Vec4& x : by_name(c, "gamma+").curve.samples) EXPECT_NEAR(x[0], r2, 1e-14);
  for (const Vec4& x : by_name(c, "gamma-").curve.samples) EXPECT_NEAR(x[0], -r2, 1e-14);
}

TEST(Loci, PairMiddleArcsSwitchPairAtUmbilics) {
  const Ellipsoid4 e(2, 1, r2, r2);
  const double u0 = std::acos(std::sqrt(2.0 / 3.0));
  for (double du : {-1e-3, 1e-3}) {
    const double u = u0 + du;
    const auto k = principal_curvatures(e, Vec4(2 * std::cos(u), std::sin(u), 0, 0));
    const auto g = relative_gaps(k);
    if (du < 0) EXPECT_LT(g[0], 1e-9);  // cos²u above the umbilic value: k1 = k2
    else EXPECT_LT(g[1], 1e-9);
  }
}

TEST(Loci, AllDistinctSamplePointOnEllipse) {
  const Ellipsoid4 e(2, r3, r2, 1);
  const auto c = partially_umbilic_curves(e, 0.01);
  const Vec4 p(2 * std::sqrt(2.0 / 3.0), 0, 0, std::sqrt(1.0 / 3.0));
  EXPECT_NEAR(p[0], 1.632993, 1e-6);
  EXPECT_NEAR(p[3], 0.577350, 1e-6);
  EXPECT_LT(distance_to_loci({by_name(c, "P23^1")}, p), 1e-4);
  EXPECT_EQ(classify_point(e, p), PointTag::P23);
}

TEST(Loci, HyperbolaBranchIsP12) {
  // α⁺(u, 0, w) on 3u² - w² = 1 for r = s = t = 1.
  const Ellipsoid4 e(2, r3, r2, 1);
  const Chart chart(ChartKind::Thm2AlphaPlus, e);
  const auto c = partially_umbilic_curves(e, 0.01);
  for (double w : {-0.3, -0.1, 0.0, 0.2, 0.4}) {
    const double u = std::sqrt((1 + w * w) / 3);
    const Vec4 x = eval_chart(chart, Vec3(u, 0, w)).ambient;
    EXPECT_EQ(classify_point(e, x), PointTag::P12);
    EXPECT_LT(distance_to_loci({by_name(c, "P12^1"), by_name(c, "P12^2")}, x), 1e-3);
  }
}

TEST(Loci, OffLocusPointsAreRegular) {
  std::mt19937_64 rng(41);
  for (const auto& ax : std::vector<std::array<double, 4>>{{2, r3, r2, 1}, {2, 2, 1, 1}, {2, r3, r2, r2}, {2, r2, r2, 1}}) {
    const Ellipsoid4 e(ax);
    auto loci = partially_umbilic_curves(e, 0.005);
    for (auto& u : umbilic_points(e)) loci.push_back(u);
    int tested = 0;
    while (tested < 1000) {
      const Vec4 x = random_point(e, rng);
      if (distance_to_loci(loci, x) <= 0.05) continue;
      ++tested;
      EXPECT_EQ(classify_point(e, x), PointTag::Regular);
    }
  }
}

TEST(Loci, NothingOffTheCoordinateHyperplanes) {
  const Ellipsoid4 e(2, r3, r2, 1);
  std::mt19937_64 rng(43);
  std::uniform_real_distribution<double> U(-1, 1);
  for (int n = 0; n < 20000; ++n) {
    Vec3 p(U(rng), U(rng), U(rng));
    if (p.squaredNorm() >= 0.98 || std::abs(p[0] * p[1] * p[2]) < 1e-4) continue;
    const ScaledValue d = cubic_discriminant_scaled(eq11_cubic(e, p));
    EXPECT_LT(d.relative(), -1e-10);
  }
}

TEST(Loci, CurvesAreRegular) {
  for (const auto& ax : kSurfaces)
    for (const auto& l : partially_umbilic_curves(Ellipsoid4(ax), 0.02)) {
      if (!l.is_curve()) continue;
      const auto& s = l.curve.samples;
      for (std::size_t i = 1; i < s.size(); ++i) EXPECT_GT((s[i] - s[i - 1]).norm(), l.curve.resolution / 10);
    }
}

TEST(Loci, AllDistinctP12ConvergesToPairLowCircles) {
  const auto target = partially_umbilic_curves(Ellipsoid4(2, r3, r2, r2), 0.01);
  std::vector<Vec4> gamma;
  for (const char* n : {"gamma+", "gamma-"})
    for (const Vec4& x : by_name(target, n).curve.samples) gamma.push_back(x);
  double prev = INFINITY;
  for (double eps : {0.2, 0.1, 0.05, 0.01, 0.001}) {
    const auto c = partially_umbilic_curves(Ellipsoid4(2, r3, r2, r2 - eps), 0.01);
    std::vector<Vec4> p12;
    for (const char* n : {"P12^1", "P12^2"})
      for (const Vec4& x : by_name(c, n).curve.samples) p12.push_back(x);
    const double h = hausdorff(p12, gamma);
    EXPECT_LT(h, prev);
    prev = h;
  }
  EXPECT_LT(prev, 0.01);
}

TEST(Loci, SphereIsTotallyUmbilic) {
  const Ellipsoid4 s(1, 1, 1, 1);
  const auto u = umbilic_points(s);
  ASSERT_EQ(u.size(), 1u);
  EXPECT_EQ(u[0].kind, LocusKind::UmbilicSurface);
  const LocusReport r = verify_locus(s, u[0]);
  EXPECT_TRUE(r.pass);
  EXPECT_LT(r.max_pair_gap, 1e-14);
  EXPECT_TRUE(partially_umbilic_curves(s, 0.1).empty());
}
