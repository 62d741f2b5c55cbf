#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

#include "e4/chart.hpp"
#include "e4/forms.hpp"
#include "e4/principal.hpp"
#include "e4/printed.hpp"
#include "oracles.hpp"

using namespace e4;

namespace {

void expect_triple(const std::array<double, 3>& got, const std::array<double, 3>& want, double tol) {
  for (int i = 0; i < 3; ++i) EXPECT_LT(oracle::rel_err(got[i], want[i]), tol) << i;
}

std::array<double, 3> numeric(const Chart& c, const Vec3& p) {
  const Forms f = fundamental_forms(c, p);
  return oracle::pencil_bisection(f.G, f.B);
}

}  // namespace

TEST(Printed, Prop1AlphaMatchesPencil) {
  const Ellipsoid4 e(2, 2, 2, 1);
  const Chart c(ChartKind::Prop1Alpha, e);
  for (double w : {-0.7, 0.0, 0.3, 0.9}) {
    const Vec3 p(0.4, 1.1, w);
    expect_triple(numeric(c, p), printed::prop1_alpha(2, 1, w), 1e-9);
  }
}

TEST(Printed, Prop1BetaOnAxis) {
  const Ellipsoid4 e(2, 2, 2, 1);
  const Chart c(ChartKind::Prop1Beta, e);
  for (double t : {0.2, 1.0, 2.5, 4.0})
    expect_triple(numeric(c, Vec3(0, 0, t)), printed::prop1_beta_axis(2, 1, t), 1e-9);
}

TEST(Printed, Prop2Charts) {
  const Ellipsoid4 e(2, 2, 1, 1);
  const Chart a(ChartKind::Prop2Alpha, e);
  for (double t : {0.3, 0.8, 1.3})
    expect_triple(numeric(a, Vec3(0.5, 2.0, t)), printed::prop2_alpha(2, 1, t), 1e-9);
  const Chart ab(ChartKind::Prop2AlphaBar, e);
  expect_triple(numeric(ab, Vec3(0.7, 0, 0)), printed::prop2_alphabar_axis(2, 1), 1e-9);
}

TEST(Printed, PairClosedForms) {
  const double r2 = std::sqrt(2.0), r3 = std::sqrt(3.0);
  // PairLow (2,√3,√2,√2): γ± at u = ±√((a²-b²)/(a²-c²)), v = 0 of the β chart.
  const Ellipsoid4 low(2, r3, r2, r2);
  const Chart beta(ChartKind::PairBeta, low);
  expect_triple(numeric(beta, Vec3(std::sqrt(0.5), 0, 0.7)), printed::pair_low_gamma(2, r3, r2), 1e-9);
  const Chart alpha(ChartKind::PairAlpha, low);
  for (double u : {0.3, 1.2, 2.0})
    expect_triple(numeric(alpha, Vec3(u, 0, 0)), printed::pair_e0(2, r3, r2, u), 1e-9);

  // PairHigh (2,1,3,3): γ± at u = 0, v = ±√((a²-b²)/(c²-b²)).
  const Ellipsoid4 high(2, 1, 3, 3);
  const Chart hb(ChartKind::PairBeta, high);
  expect_triple(numeric(hb, Vec3(0, std::sqrt(3.0 / 8.0), 1.1)), printed::pair_high_gamma(2, 1, 3), 1e-9);
}

TEST(Printed, Lemma1MatchesConfocalChart) {
  const Ellipsoid4 e(2, std::sqrt(3.0), std::sqrt(2.0), 1);
  const Chart c = Chart::confocal(e, {1, 1, 1, 1});
  expect_triple(numeric(c, Vec3(1.5, 2.5, 3.5)), printed::lemma1(e, 1.5, 2.5, 3.5), 1e-9);
  expect_triple(printed::lemma1(e, 1.5, 2.5, 3.5), {0.386356, 0.540898, 0.901497}, 2e-6);
}

TEST(Printed, Thm1UmbilicParameter) {
  EXPECT_NEAR(printed::thm1_umbilic_cos2(2, 1, std::sqrt(2.0)), 2.0 / 3.0, 1e-15);
  const Ellipsoid4 e(2, 1, std::sqrt(2.0), std::sqrt(2.0));
  const double u = std::acos(std::sqrt(2.0 / 3.0));
  const auto k = numeric(Chart(ChartKind::PairAlpha, e), Vec3(u, 0, 0));
  EXPECT_LT((k[2] - k[0]) / k[1], 1e-9);
}

TEST(Printed, AuditFlagsOnlyKnownTypos) {
  const auto entries = printed::audit_printed_tables(100, 7);
  std::set<std::string> mismatched;
  std::set<std::string> tables;
  for (const auto& a : entries) {
    tables.insert(a.table);
    if (!a.matches) mismatched.insert(a.table + ":" + a.entry);
  }
  EXPECT_EQ(tables.size(), 6u);
  const std::set<std::string> expected{"thm1.b:22", "thm1.b:33", "thm2.g:12"};
  EXPECT_EQ(mismatched, expected);
}

TEST(Printed, CorrectedThm1TableMatchesJet) {
  const double a = 2, b = 1, c = std::sqrt(2.0);
  const Ellipsoid4 e(a, b, c, c);
  const Chart ch(ChartKind::PairAlpha, e);
  for (double u : {0.4, 2.1}) {
    const Vec3 p(u, 0.3, -0.2);
    const Forms f = fundamental_forms(ch, p);
    EXPECT_LT((f.G - printed::thm1_first_form(a, b, c, p)).norm(), 1e-12);
    // The tables use the non-unit normal; compare the normalized pencils instead.
    const auto kp = oracle::pencil_bisection(printed::thm1_first_form(a, b, c, p),
                                             printed::thm1_second_form_corrected(a, b, c, p));
    const auto kj = oracle::pencil_bisection(f.G, f.B);
    const double scale = kj[1] / kp[1];
    for (int i = 0; i < 3; ++i) EXPECT_NEAR(kp[i] * scale, kj[i], 1e-9 * kj[2]);
  }
}
