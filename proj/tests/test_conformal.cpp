#include <gtest/gtest.h>

#include <cmath>

#include "e4/confocal.hpp"
#include "e4/conformal.hpp"
#include "e4/error.hpp"
#include "e4/loci.hpp"

using namespace e4;

namespace {

const std::array<double, 3> kAxes3{2, std::sqrt(3.0), std::sqrt(2.0)};
const Ellipsoid4 kSurface(2, std::sqrt(3.0), std::sqrt(2.0), 1);

// Pullback metric by central differences of the point map.
struct FdMetric {
  double g11, g12, g22;
};

FdMetric fd_metric(const ConformalDomain& d, double s1, double s2, IntegrandVariant v) {
  const double h = 1e-4;
  const Vec4 d1 = (conformal_point(d, s1 + h, s2, v) - conformal_point(d, s1 - h, s2, v)) / (2 * h);
  const Vec4 d2 = (conformal_point(d, s1, s2 + h, v) - conformal_point(d, s1, s2 - h, v)) / (2 * h);
  return {d1.squaredNorm(), d1.dot(d2), d2.squaredNorm()};
}

double fd_residual(const FdMetric& m) {
  return std::max(std::abs(m.g12) / (0.5 * (m.g11 + m.g22)), std::abs(m.g11 / m.g22 - 1));
}

double distance_to_kind(const std::vector<SingularLocus>& loci, LocusKind kind, const Vec4& x) {
  std::vector<SingularLocus> sel;
  for (const auto& l : loci)
    if (l.kind == kind) sel.push_back(l);
  return distance_to_loci(sel, x);
}

}  // namespace

TEST(Conformal, QuadraturesAgree) {
  const std::vector<ConformalDomain> domains{conformal_domain_3d(kAxes3), conformal_domain_slice(kSurface, 1.5),
                                             conformal_domain_slice(kSurface, 3.5)};
  for (const auto& d : domains)
    for (int which : {1, 2}) {
      const double g = arc_integral_s(d, which, IntegrandVariant::Liouville, Quadrature::GaussCosine);
      const double s = arc_integral_s(d, which, IntegrandVariant::Liouville, Quadrature::AdaptiveSimpson);
      EXPECT_GT(g, 0.0);
      EXPECT_NEAR(g, s, 1e-8 * g);
    }
}

TEST(Conformal, ThreeDimensionalCornersAreUmbilics) {
  const ConformalChart2 c = build_conformal_chart(conformal_domain_3d(kAxes3), 8, 8);
  const double sx[4] = {1, -1, -1, 1}, sz[4] = {1, 1, -1, -1};
  for (int k = 0; k < 4; ++k) {
    EXPECT_NEAR(c.corners[k][0], sx[k] * std::sqrt(2.0), 1e-8);
    EXPECT_NEAR(c.corners[k][1], 0.0, 1e-8);
    EXPECT_NEAR(c.corners[k][2], sz[k] * 1.0, 1e-8);
    EXPECT_EQ(c.corners[k][3], 0.0);
  }
}

TEST(Conformal, LiouvilleChartIsConformal) {
  for (const auto& d : {conformal_domain_3d(kAxes3), conformal_domain_slice(kSurface, 1.5),
                        conformal_domain_slice(kSurface, 3.5)}) {
    const ConformalChart2 c = build_conformal_chart(d, 41, 41);
    EXPECT_EQ(c.grid.size(), 41u * 41u);
    EXPECT_LT(c.conformality_residual, 1e-6);
  }
}

TEST(Conformal, FiniteDifferenceMetricMatches) {
  for (const auto& d : {conformal_domain_3d(kAxes3), conformal_domain_slice(kSurface, 1.5)}) {
    const double s1 = arc_integral_s(d, 1), s2 = arc_integral_s(d, 2);
    for (double a : {-0.6, 0.3})
      for (double b : {-0.45, 0.7}) {
        const FdMetric m = fd_metric(d, a * s1, b * s2, IntegrandVariant::Liouville);
        EXPECT_LT(fd_residual(m), 1e-6);
      }
  }
}

TEST(Conformal, PrintedIntegrandIsNotConformal) {
  const ConformalDomain d3 = conformal_domain_3d(kAxes3);
  const ConformalChart2 lit = build_conformal_chart(d3, 21, 21, IntegrandVariant::PrintedLiteral);
  EXPECT_GT(lit.conformality_residual, 1e-2);
  const double s1 = arc_integral_s(d3, 1, IntegrandVariant::PrintedLiteral);
  const double s2 = arc_integral_s(d3, 2, IntegrandVariant::PrintedLiteral);
  EXPECT_GT(fd_residual(fd_metric(d3, 0.3 * s1, 0.2 * s2, IntegrandVariant::PrintedLiteral)), 1e-2);

  const ConformalChart2 low =
      build_conformal_chart(conformal_domain_slice(kSurface, 1.5), 21, 21, IntegrandVariant::PrintedLiteral);
  EXPECT_GT(low.conformality_residual, 1e-2);

  try {
    arc_integral_s(conformal_domain_slice(kSurface, 3.5), 1, IntegrandVariant::PrintedLiteral);
    FAIL() << "expected DomainViolation";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::DomainViolation);
  }
}

TEST(Conformal, GridLiesOnTheSlice) {
  for (double lambda : {1.5, 3.5}) {
    const ConformalChart2 c = build_conformal_chart(conformal_domain_slice(kSurface, lambda), 9, 9);
    for (const Vec4& x : c.grid) {
      EXPECT_NEAR(kSurface.level(x), 1.0, 1e-12);
      const ConfocalCoords cc = to_confocal(kSurface, x);
      EXPECT_NEAR(lambda < 2 ? cc.u : cc.t, lambda, 1e-9);
    }
  }
}

TEST(Conformal, SliceCornersLieOnPartiallyUmbilicCurves) {
  const double h = 1e-3;
  const auto loci = partially_umbilic_curves(kSurface, h);
  const ConformalChart2 low = build_conformal_chart(conformal_domain_slice(kSurface, 1.5), 4, 4);
  for (const Vec4& x : low.corners) {
    EXPECT_NEAR(kSurface.level(x), 1.0, 1e-12);
    EXPECT_LT(distance_to_kind(loci, LocusKind::P12Curve, x), h);
    EXPECT_GT(distance_to_kind(loci, LocusKind::P23Curve, x), 0.1);
  }
  const ConformalChart2 high = build_conformal_chart(conformal_domain_slice(kSurface, 3.5), 4, 4);
  for (const Vec4& x : high.corners) {
    EXPECT_NEAR(kSurface.level(x), 1.0, 1e-12);
    EXPECT_LT(distance_to_kind(loci, LocusKind::P23Curve, x), h);
    EXPECT_GT(distance_to_kind(loci, LocusKind::P12Curve, x), 0.1);
  }
}

TEST(Conformal, SignsFollowChartQuadrants) {
  const ConformalDomain d = conformal_domain_3d(kAxes3);
  const double s1 = arc_integral_s(d, 1), s2 = arc_integral_s(d, 2);
  const Vec4 p = conformal_point(d, -0.5 * s1, 0.5 * s2);
  EXPECT_LT(p[0], 0.0);
  EXPECT_GT(p[1], 0.0);
  EXPECT_GT(p[2], 0.0);
  const Vec4 o = conformal_point(d, 0.0, 0.0);
  EXPECT_NEAR(o[0], 0.0, 1e-12);
  EXPECT_NEAR(o[1], std::sqrt(3.0), 1e-12);
  EXPECT_NEAR(o[2], 0.0, 1e-12);
  EXPECT_THROW(conformal_point(d, 1.01 * s1, 0.0), Error);
}

TEST(Conformal, Errors) {
  try {
    conformal_domain_slice(kSurface, 2.5);
    FAIL() << "expected WrongSignature";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::WrongSignature);
  }
  try {
    conformal_domain_slice(kSurface, 3.0);
    FAIL() << "expected PoleContact";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::PoleContact);
  }
  EXPECT_THROW(conformal_domain_3d({1, 2, 3}), Error);

  // A double root at the corner gives f ~ |x - b²|^-2.
  ConformalDomain bad = conformal_domain_3d(kAxes3);
  bad.axes_sq[2] = bad.axes_sq[1];
  try {
    arc_integral_s(bad, 1);
    FAIL() << "expected DivergentIntegral";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::DivergentIntegral);
  }
}
