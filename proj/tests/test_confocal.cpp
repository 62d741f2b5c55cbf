#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "e4/confocal.hpp"
#include "e4/error.hpp"
#include "e4/principal.hpp"
#include "oracles.hpp"

using namespace e4;

namespace {

const Ellipsoid4 kSurface(2, std::sqrt(3.0), std::sqrt(2.0), 1);

Vec4 random_interior_point(std::mt19937_64& rng) {
  std::normal_distribution<double> N;
  for (;;) {
    Vec4 z(N(rng), N(rng), N(rng), N(rng));
    z.normalize();
    if (z.cwiseAbs().minCoeff() < 1e-3) continue;
    for (int i = 0; i < 4; ++i) z[i] *= kSurface.axis(i);
    return z;
  }
}

}  // namespace

TEST(Confocal, WorkedExample) {
  const Vec4 x(std::sqrt(1.25), 0.75, std::sqrt(0.375), std::sqrt(0.3125));
  const ConfocalCoords c = to_confocal(kSurface, x);
  EXPECT_NEAR(c.u, 1.5, 1e-12);
  EXPECT_NEAR(c.v, 2.5, 1e-12);
  EXPECT_NEAR(c.t, 3.5, 1e-12);
  const Vec4 back = from_confocal(kSurface, {1.5, 2.5, 3.5, {1, 1, 1, 1}});
  const Vec4 sq = back.cwiseProduct(back);
  EXPECT_NEAR(sq[0], 1.25, 1e-14);
  EXPECT_NEAR(sq[1], 0.5625, 1e-14);
  EXPECT_NEAR(sq[2], 0.375, 1e-14);
  EXPECT_NEAR(sq[3], 0.3125, 1e-14);
  // λ = 0 is the fourth root.
  EXPECT_NEAR(confocal_function(kSurface, x, 0.0), 1.0, 1e-14);
}

TEST(Confocal, OctantFlipNegatesOneCoordinate) {
  const Vec4 p = from_confocal(kSurface, {1.5, 2.5, 3.5, {1, 1, 1, 1}});
  for (int i = 0; i < 4; ++i) {
    std::array<int, 4> o{1, 1, 1, 1};
    o[i] = -1;
    const Vec4 q = from_confocal(kSurface, {1.5, 2.5, 3.5, o});
    for (int j = 0; j < 4; ++j) EXPECT_DOUBLE_EQ(q[j], j == i ? -p[j] : p[j]);
  }
}

TEST(Confocal, ZCoordinateVanishesAtUpperEndOfU) {
  double prev = INFINITY;
  for (double gap : {1e-1, 1e-3, 1e-6}) {
    const double z = std::abs(from_confocal(kSurface, {2.0 - gap, 2.5, 3.5, {1, 1, 1, 1}})[2]);
    EXPECT_LT(z, prev);
    prev = z;
  }
  EXPECT_LT(prev, 1e-2);
}

TEST(Confocal, RoundtripAndResidual) {
  std::mt19937_64 rng(21);
  for (int n = 0; n < 1000; ++n) {
    const Vec4 x = random_interior_point(rng);
    const ConfocalCoords c = to_confocal(kSurface, x);
    ASSERT_GT(c.u, 1.0);
    ASSERT_LT(c.u, 2.0);
    ASSERT_GT(c.v, 2.0);
    ASSERT_LT(c.v, 3.0);
    ASSERT_GT(c.t, 3.0);
    ASSERT_LT(c.t, 4.0);
    for (double l : {c.u, c.v, c.t}) {
      const double r = std::abs(confocal_function(kSurface, x, l) - 1.0);
      if (x.cwiseQuotient(Vec4(2, std::sqrt(3.0), std::sqrt(2.0), 1)).cwiseAbs().minCoeff() > 0.02) {
        EXPECT_LT(r, 1e-11);
      } else {
        // Close to a hyperplane the root sits next to a pole and no double
        // does better: both neighbours must have a residual at least as large.
        EXPECT_LE(r, std::abs(confocal_function(kSurface, x, std::nextafter(l, 0.0)) - 1.0));
        EXPECT_LE(r, std::abs(confocal_function(kSurface, x, std::nextafter(l, 10.0)) - 1.0));
      }
    }
    EXPECT_LT((from_confocal(kSurface, c) - x).norm(), 1e-9);
    const ConfocalCoords c2 = to_confocal(kSurface, from_confocal(kSurface, c));
    EXPECT_LT(std::abs(c2.u - c.u) + std::abs(c2.v - c.v) + std::abs(c2.t - c.t), 1e-9);
  }
}

TEST(Confocal, Errors) {
  EXPECT_THROW(to_confocal(kSurface, Vec4(2, 0, 0, 0)), Error);
  try {
    to_confocal(kSurface, Vec4(0, std::sqrt(3.0), 0, 0));
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::OnCoordinateHyperplane);
  }
  EXPECT_THROW(to_confocal(Ellipsoid4(2, 2, 1, 1), Vec4(1, 1, 0.5, 0.5)), Error);
}

TEST(Confocal, FormsDiagonalAndMatchClosedForm) {
  std::mt19937_64 rng(23);
  for (int n = 0; n < 100; ++n) {
    const ConfocalCoords c = to_confocal(kSurface, random_interior_point(rng));
    const Forms f = confocal_forms(kSurface, c);
    EXPECT_LT(std::abs(f.G(0, 1)) + std::abs(f.G(0, 2)) + std::abs(f.G(1, 2)), 1e-12 * f.G.diagonal().maxCoeff());
    EXPECT_LT(std::abs(f.B(0, 1)) + std::abs(f.B(0, 2)) + std::abs(f.B(1, 2)), 1e-12 * f.B.diagonal().maxCoeff());
    const DiagonalForms d = confocal_forms_closed(kSurface, c);
    for (int i = 0; i < 3; ++i) {
      EXPECT_GT(d.g[i], 0.0);
      EXPECT_LT(oracle::rel_err(f.G(i, i), d.g[i]), 1e-10);
      EXPECT_LT(oracle::rel_err(f.B(i, i), d.b[i]), 1e-10);
    }
    const auto k = confocal_curvatures(kSurface, c);
    EXPECT_LT(oracle::rel_err(d.b[0] / d.g[0], k[2]), 1e-12);
    EXPECT_LT(oracle::rel_err(d.b[1] / d.g[1], k[1]), 1e-12);
    EXPECT_LT(oracle::rel_err(d.b[2] / d.g[2], k[0]), 1e-12);
  }
}

TEST(Confocal, CurvaturesMatchGeometryCore) {
  const auto k = confocal_curvatures(kSurface, {1.5, 2.5, 3.5, {1, 1, 1, 1}});
  EXPECT_NEAR(k[0], 0.386356, 1e-6);
  EXPECT_NEAR(k[1], 0.540898, 1e-6);
  EXPECT_NEAR(k[2], 0.901497, 1e-6);
  std::mt19937_64 rng(29);
  for (int n = 0; n < 200; ++n) {
    const Vec4 x = random_interior_point(rng);
    const auto kc = confocal_curvatures(kSurface, to_confocal(kSurface, x));
    const auto kg = principal_curvatures(kSurface, x);
    for (int i = 0; i < 3; ++i) EXPECT_LT(oracle::rel_err(kc[i], kg[i]), 1e-9);
    EXPECT_LT(kc[0], kc[1]);
    EXPECT_LT(kc[1], kc[2]);
  }
  // u = v = c² gives a coincident pair.
  const auto kb = confocal_curvatures(kSurface, {2.0, 2.0, 3.5, {1, 1, 1, 1}});
  EXPECT_DOUBLE_EQ(kb[1], kb[2]);
}

TEST(Confocal, GradientOrthogonality) {
  std::mt19937_64 rng(31);
  for (int n = 0; n < 1000; ++n) EXPECT_LT(gradient_orthogonality(kSurface, random_interior_point(rng)), 1e-9);
}

TEST(Confocal, SliceMembership) {
  std::mt19937_64 rng(37);
  for (int n = 0; n < 50; ++n) {
    const Vec4 x = random_interior_point(rng);
    const ConfocalCoords c = to_confocal(kSurface, x);
    for (double l : {c.u, c.v, c.t}) EXPECT_LT(std::abs(quartic_membership({kSurface, l}, x)), 1e-9);
  }
  try {
    quartic_membership({kSurface, 2.0}, Vec4(1, 1, 1, 1));
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::PoleContact);
  }
  EXPECT_EQ(QuarticSlice({kSurface, 1.5}).regime(), SliceRegime::SpherePairLow);
  EXPECT_EQ(QuarticSlice({kSurface, 2.5}).regime(), SliceRegime::Torus);
  EXPECT_EQ(QuarticSlice({kSurface, 3.5}).regime(), SliceRegime::SpherePairHigh);
}

TEST(Confocal, SliceComponents) {
  EXPECT_EQ(slice_component_count({kSurface, 1.5}), 2);
  EXPECT_EQ(slice_component_count({kSurface, 2.5}), 1);
  EXPECT_EQ(slice_component_count({kSurface, 3.5}), 2);
  EXPECT_EQ(slice_component_count({Ellipsoid4(3, 2.2, 1.3, 0.8), 1.0}), 2);
}

TEST(Confocal, SignOfWSeparatesLowSlice) {
  // On λ ∈ (d², c²) the last coordinate never vanishes.
  const QuarticSlice slice{kSurface, 1.5};
  double min_w = INFINITY;
  for (int i = 0; i <= 40; ++i)
    for (int j = 0; j <= 40; ++j) {
      const Vec4 x = slice_point(slice, 2.0 + i / 40.0, 3.0 + j / 40.0, {1, 1, 1, 1});
      min_w = std::min(min_w, x[3]);
      EXPECT_LT(std::abs(quartic_membership(slice, x)), 1e-9);
    }
  EXPECT_GT(min_w, 0.1);
}
