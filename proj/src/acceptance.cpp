#include "e4/acceptance.hpp"

#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <numbers>
#include <random>

#include "e4/chart.hpp"
#include "e4/confocal.hpp"
#include "e4/conformal.hpp"
#include "e4/discriminant.hpp"
#include "e4/error.hpp"
#include "e4/loci.hpp"
#include "e4/printed.hpp"
#include "e4/topology.hpp"
#include "e4/tracer.hpp"

namespace e4 {

namespace {

constexpr double kPi = std::numbers::pi;
const double kR2 = std::sqrt(2.0), kR3 = std::sqrt(3.0);

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

// Point of the surface whose normalized coordinates all exceed `margin` in size.
Vec4 random_point(const Ellipsoid4& s, std::mt19937_64& rng, double margin) {
  std::normal_distribution<double> N;
  for (;;) {
    Vec4 z(N(rng), N(rng), N(rng), N(rng));
    z.normalize();
    if (z.cwiseAbs().minCoeff() < margin) continue;
    for (int i = 0; i < 4; ++i) z[i] *= s.axis(i);
    return z;
  }
}

double triple_rel_err(const std::array<double, 3>& got, const std::array<double, 3>& want) {
  double e = 0.0;
  for (int i = 0; i < 3; ++i) e = std::max(e, std::abs(got[i] - want[i]) / std::abs(want[i]));
  return e;
}

std::map<std::string, ClosedCurve> curves_by_name(const Ellipsoid4& s, double h) {
  std::map<std::string, ClosedCurve> out;
  for (const auto& l : partially_umbilic_curves(s, h)) out[l.name] = l.curve;
  return out;
}

CriterionResult curvature_reproduction(const AcceptanceConfig& cfg) {
  std::mt19937_64 rng(cfg.seed + 1);
  std::uniform_real_distribution<double> U01(0, 1);
  auto U = [&](double lo, double hi) { return lo + (hi - lo) * U01(rng); };
  const int n = cfg.curvature_samples;
  std::map<std::string, double> worst;
  auto run = [&](const std::string& name, const Chart& chart, const std::function<Vec3()>& draw,
                 const std::function<std::array<double, 3>(const Vec3&)>& formula) {
    double e = 0.0;
    for (int k = 0; k < n; ++k) {
      const Vec3 p = draw();
      e = std::max(e, triple_rel_err(principal_curvatures(fundamental_forms(chart, p)), formula(p)));
    }
    worst[name] = e;
  };

  const Ellipsoid4 three(2, 2, 2, 1);
  run("(2,2,2,1) alpha", Chart(ChartKind::Prop1Alpha, three),
      [&] { return Vec3(U(0, 2 * kPi), U(0.05, kPi - 0.05), U(-0.95, 0.95)); },
      [](const Vec3& p) { return printed::prop1_alpha(2, 1, p[2]); });
  run("(2,2,2,1) beta", Chart(ChartKind::Prop1Beta, three), [&] { return Vec3(0, 0, U(0, 2 * kPi)); },
      [](const Vec3& p) { return printed::prop1_beta_axis(2, 1, p[2]); });

  const Ellipsoid4 pairs(2, 2, 1, 1);
  run("(2,2,1,1) alpha", Chart(ChartKind::Prop2Alpha, pairs),
      [&] { return Vec3(U(0, 2 * kPi), U(0, 2 * kPi), U(0.05, kPi / 2 - 0.05)); },
      [](const Vec3& p) { return printed::prop2_alpha(2, 1, p[2]); });

  const Ellipsoid4 low(2, kR3, kR2, kR2);
  run("(2,√3,√2,√2) E0", Chart(ChartKind::PairAlpha, low), [&] { return Vec3(U(0, 2 * kPi), 0, 0); },
      [](const Vec3& p) { return printed::pair_e0(2, kR3, kR2, p[0]); });
  const double ustar = std::sqrt((4.0 - 3.0) / (4.0 - 2.0));
  run("(2,√3,√2,√2) gamma", Chart(ChartKind::PairBeta, low),
      [&] { return Vec3(U01(rng) < 0.5 ? ustar : -ustar, 0, U(0, 2 * kPi)); },
      [](const Vec3&) { return printed::pair_low_gamma(2, kR3, kR2); });

  // (2,√2,√2,1) in its canonical layout (2,1,√2,√2).
  const Ellipsoid4 middle = Ellipsoid4(2, kR2, kR2, 1).canonical().surface;
  run("(2,√2,√2,1) E0", Chart(ChartKind::PairAlpha, middle), [&] { return Vec3(U(0, 2 * kPi), 0, 0); },
      [](const Vec3& p) { return printed::pair_e0(2, 1, kR2, p[0]); });

  const Ellipsoid4 distinct(2, kR3, kR2, 1);
  run("(2,√3,√2,1) confocal", Chart::confocal(distinct, {1, 1, 1, 1}),
      [&] { return Vec3(U(1.01, 1.99), U(2.01, 2.99), U(3.01, 3.99)); },
      [&](const Vec3& p) { return printed::lemma1(distinct, p[0], p[1], p[2]); });

  double e = 0.0;
  std::string which;
  for (const auto& [name, v] : worst)
    if (v >= e) {
      e = v;
      which = name;
    }
  return {1, "closed-form curvatures", e < 1e-8,
          "max rel err " + fmt(e) + " (" + which + ") over " + std::to_string(worst.size()) + "×" +
              std::to_string(n) + " points, tol 1e-8"};
}

CriterionResult umbilics(const AcceptanceConfig& cfg) {
  bool ok = true;
  std::string detail;
  auto all_points = [](const Ellipsoid4& s) {
    std::vector<Vec4> pts;
    for (const auto& l : umbilic_points(s))
      if (l.kind == LocusKind::UmbilicPoint) pts.insert(pts.end(), l.points.begin(), l.points.end());
    return pts;
  };
  auto match = [](const std::vector<Vec4>& got, const std::vector<Vec4>& want) {
    if (got.size() != want.size()) return std::numeric_limits<double>::infinity();
    double e = 0.0;
    for (const Vec4& w : want) {
      double best = std::numeric_limits<double>::infinity();
      for (const Vec4& g : got) best = std::min(best, (g - w).cwiseAbs().maxCoeff());
      e = std::max(e, best);
    }
    return e;
  };

  const Ellipsoid4 middle(2, kR2, kR2, 1);
  const auto pm = all_points(middle);
  std::vector<Vec4> want;
  const double x1 = 2 * std::sqrt(2.0 / 3.0), x4 = std::sqrt(1.0 / 3.0);
  for (double sx : {1.0, -1.0})
    for (double sw : {1.0, -1.0}) want.emplace_back(sx * x1, 0, 0, sw * x4);
  const double em = match(pm, want);
  double cos_err = 0.0;
  for (const Vec4& p : pm) cos_err = std::max(cos_err, std::abs(p[0] * p[0] / 4 - 2.0 / 3.0));
  ok &= pm.size() == 4 && em < 1e-10 && cos_err < 1e-10;
  detail += "PairMiddle " + std::to_string(pm.size()) + " pts err " + fmt(em);

  const auto pt = all_points(Ellipsoid4(2, 2, 2, 1));
  const double et = match(pt, {Vec4(0, 0, 0, 1), Vec4(0, 0, 0, -1)});
  ok &= pt.size() == 2 && et < 1e-10;
  detail += "; ThreeEqualLast " + std::to_string(pt.size()) + " pts err " + fmt(et);

  std::mt19937_64 rng(cfg.seed + 2);
  for (const Ellipsoid4& s : {Ellipsoid4(2, kR3, kR2, 1), Ellipsoid4(2, 2, 1, 1)}) {
    const std::size_t listed = all_points(s).size();
    int found = 0;
    for (int k = 0; k < cfg.umbilic_search; ++k)
      if (classify_point(s, random_point(s, rng, 1e-3), cfg.eps_deg) == PointTag::Umbilic) ++found;
    ok &= listed == 0 && found == 0;
    detail += "; " + std::string(to_string(s.axis_class())) + " " + std::to_string(listed) + " listed, " +
              std::to_string(found) + "/" + std::to_string(cfg.umbilic_search) + " search hits";
  }
  return {2, "umbilic count and location", ok, detail};
}

CriterionResult eq10_loci(const AcceptanceConfig& cfg) {
  const Ellipsoid4 s(2, kR3, kR2, 1);
  double gap = 0.0, sep = std::numeric_limits<double>::infinity(), disc = 0.0;
  int samples = 0, disc_samples = 0, curves = 0;
  for (const auto& l : partially_umbilic_curves(s, 0.01)) {
    if (!l.is_curve()) continue;
    ++curves;
    const LocusReport r = verify_locus(s, l, cfg.eps_deg);
    gap = std::max(gap, r.max_pair_gap);
    sep = std::min(sep, r.min_third_separation);
    samples += r.samples;
    // Face discriminant of the graph chart (au, bv, cw, d√(1-u²-v²-w²)).
    for (const Vec4& x : l.curve.samples) {
      const bool p23 = l.kind == LocusKind::P23Curve;
      const double p = x[0] / s.axis(0), q = p23 ? x[1] / s.axis(1) : x[2] / s.axis(2);
      if (p * p + q * q > 1 - 1e-4) continue;
      disc = std::max(disc, std::abs(restricted_discriminant(s, p23 ? Face::W0 : Face::V0, p, q).relative()));
      ++disc_samples;
    }
  }
  const bool ok = curves == 4 && gap < 1e-7 && sep > 1e-3 && disc < 1e-10;
  return {3, "partially umbilic ellipse/hyperbola loci", ok,
          std::to_string(curves) + " curves, " + std::to_string(samples) + " samples: pair gap " + fmt(gap) +
              " (< 1e-7), third separation " + fmt(sep) + " (> 1e-3), |R| " + fmt(disc) + " over " +
              std::to_string(disc_samples) + " chart samples (< 1e-10)"};
}

CriterionResult positivity(const AcceptanceConfig& cfg) {
  std::mt19937_64 rng(cfg.seed + 4);
  std::uniform_real_distribution<double> G(0.05, 3.0);
  double min_r = std::numeric_limits<double>::infinity(), min_uv = min_r;
  for (int k = 0; k < 10; ++k) {
    const Thm1Gaps g{G(rng), G(rng)};
    for (int i = 1; i <= 200; ++i)
      for (int j = 0; j < 400; ++j) min_r = std::min(min_r, pu_quartic_R(g, 2.0 * i / 200, 2 * kPi * j / 400));
    for (int i = -200; i <= 200; ++i)
      for (int j = -200; j <= 200; ++j) {
        const double u = i / 200.0, v = j / 200.0;
        if (u * u + v * v >= 1) continue;
        min_uv = std::min({min_uv, pu_quartic_uv(g, u, v), pu_quartic_uv_expanded(g, u, v)});
      }
  }
  return {4, "positivity of the partially umbilic quartics", min_r > 1e-12 && min_uv > 1e-12,
          "min PU(R,u) " + fmt(min_r) + ", min PU(u,v) " + fmt(min_uv) + " over 10 (s,t) draws (> 1e-12)"};
}

CriterionResult linking(const AcceptanceConfig&) {
  struct Row {
    std::string label;
    Linking l;
    int want;
  };
  std::vector<Row> rows;
  const Ellipsoid4 pairs(2, 2, 1, 1), low(2, kR3, kR2, kR2), distinct(2, kR3, kR2, 1);
  const auto cp = curves_by_name(pairs, 0.01), cl = curves_by_name(low, 0.01), cd = curves_by_name(distinct, 0.01);
  rows.push_back({"TwoPairs (P12,P23)", link_curves(pairs, cp.at("P12"), cp.at("P23")), 1});
  rows.push_back({"AllDistinct (P12^1,P23^1)", link_curves(distinct, cd.at("P12^1"), cd.at("P23^1")), 1});
  rows.push_back({"AllDistinct (P12^2,P23^2)", link_curves(distinct, cd.at("P12^2"), cd.at("P23^2")), 1});
  rows.push_back({"PairLow (gamma+,gamma-)", link_curves(low, cl.at("gamma+"), cl.at("gamma-")), 0});
  rows.push_back({"AllDistinct (P12^1,P12^2)", link_curves(distinct, cd.at("P12^1"), cd.at("P12^2")), 0});
  bool ok = true;
  std::string detail;
  for (const auto& r : rows) {
    ok &= std::abs(r.l.crossing) == r.want && std::abs(r.l.gauss - r.l.crossing) < 0.05;
    if (!detail.empty()) detail += "; ";
    detail += r.label + " " + std::to_string(r.l.crossing) + " (gauss " + fmt(r.l.gauss) + ")";
  }
  return {5, "linking table", ok, detail};
}

CriterionResult closed_leaves(const AcceptanceConfig& cfg) {
  std::mt19937_64 rng(cfg.seed + 6);
  bool ok = true;
  double worst_gap = 0.0, worst_fit = 0.0, longest = 0.0;
  int closed = 0, total = 0;
  std::string detail;

  auto run = [&](const Ellipsoid4& s, int field, int count, bool circular) {
    std::vector<TraceJob> jobs;
    for (int k = 0; k < count; ++k) jobs.push_back({random_point(s, rng, 0.05), field});
    TraceOptions opt;
    opt.eps_deg = cfg.eps_deg;
    const auto traces = trace_batch(s, jobs, opt, cfg.threads);
    const double diam = s.diameter();
    for (const auto& t : traces) {
      ++total;
      const bool c = t.termination == Termination::Closed && t.closure_gap < 1e-6 * diam && t.period < 100 * diam;
      closed += c;
      ok &= c;
      worst_gap = std::max(worst_gap, t.closure_gap / diam);
      longest = std::max(longest, t.period / diam);
      if (circular) {
        const double dev = fit_circle(t.samples).max_deviation;
        worst_fit = std::max(worst_fit, dev);
        ok &= dev < 1e-6;
      }
    }
  };
  const Ellipsoid4 pairs(2, 2, 1, 1), distinct(2, kR3, kR2, 1);
  for (int i : {1, 3}) run(pairs, i, cfg.traces_per_field, true);
  for (int i : {1, 2, 3}) run(distinct, i, cfg.traces_per_field, false);
  run(Ellipsoid4(2, kR3, kR2, kR2), 3, 10, true);
  run(Ellipsoid4(2, kR2, kR2, 1), 2, 10, true);

  // The middle field of (2,2,1,1) runs from locus to locus.
  int open = 0;
  std::vector<TraceJob> jobs;
  for (int k = 0; k < 10; ++k) jobs.push_back({random_point(pairs, rng, 0.05), 2});
  TraceOptions opt;
  opt.eps_deg = cfg.eps_deg;
  for (const auto& t : trace_batch(pairs, jobs, opt, cfg.threads)) open += t.termination == Termination::HitSingularLocus;
  ok &= open == 10;

  detail = std::to_string(closed) + "/" + std::to_string(total) + " closed, max gap " + fmt(worst_gap) +
           "·diam (< 1e-6), longest period " + fmt(longest) + "·diam, circle fit " + fmt(worst_fit) +
           " (< 1e-6); (2,2,1,1) field 2: " + std::to_string(open) + "/10 end on a locus";
  return {6, "closed leaves", ok, detail};
}

CriterionResult confocal_roundtrip(const AcceptanceConfig& cfg) {
  const Ellipsoid4 s(2, kR3, kR2, 1);
  std::mt19937_64 rng(cfg.seed + 7);
  double rt = 0.0, orth = 0.0;
  for (int k = 0; k < 1000; ++k) {
    const Vec4 x = random_point(s, rng, 1e-3);
    rt = std::max(rt, (from_confocal(s, to_confocal(s, x)) - x).norm());
    orth = std::max(orth, gradient_orthogonality(s, x));
  }
  return {7, "confocal roundtrip and orthogonality", rt < 1e-9 && orth < 1e-9,
          "roundtrip " + fmt(rt) + ", orthogonality " + fmt(orth) + " at 1000 points (< 1e-9)"};
}

// Point of a closed-form partially umbilic curve on the slice λ, first quadrant.
Vec4 curve_on_slice(const Ellipsoid4& s, double lambda) {
  const Thm2Gaps g = thm2_gaps(s);
  const double a = s.axis(0), b = s.axis(1), c = s.axis(2), d = s.axis(3);
  std::function<Vec4(double)> curve;
  if (lambda < c * c) {
    const double ub = std::sqrt(g.s / (g.r + g.s)), wb = std::sqrt((g.t + g.s) / (g.r + g.s + g.t));
    curve = [=](double th) {
      const double u = ub * std::cos(th), w = wb * std::sin(th);
      return Vec4(a * std::sqrt(1 - u * u - w * w), 0, c * u, d * w);
    };
  } else {
    const double U = std::sqrt((g.r + g.s) / (g.r + g.s + g.t)), V = std::sqrt(g.s / (g.t + g.s));
    curve = [=](double th) {
      const double u = U * std::cos(th), v = V * std::sin(th);
      return Vec4(a * u, b * v, 0, d * std::sqrt(1 - u * u - v * v));
    };
  }
  const QuarticSlice slice{s, lambda};
  auto f = [&](double th) { return quartic_membership(slice, curve(th)); };
  double lo = 0, flo = f(lo);
  for (int k = 1; k <= 400; ++k) {
    const double hi = kPi / 2 * k / 400, fhi = f(hi);
    if ((flo < 0) != (fhi < 0)) {
      double l = lo, h = hi;
      for (int it = 0; it < 200 && h - l > 1e-16; ++it) {
        const double m = 0.5 * (l + h);
        if ((f(m) < 0) == (flo < 0)) l = m;
        else h = m;
      }
      return curve(0.5 * (l + h));
    }
    lo = hi;
    flo = fhi;
  }
  throw Error(ErrorKind::DomainViolation, "the curve does not meet the slice in the first quadrant");
}

CriterionResult conformal(const AcceptanceConfig&) {
  const Ellipsoid4 s(2, kR3, kR2, 1);
  bool ok = true;
  std::string detail;
  double quad = 0.0;
  auto check = [&](const std::string& label, const ConformalDomain& d, const std::array<Vec4, 4>& want) {
    const ConformalChart2 c = build_conformal_chart(d, 41, 41);
    double corner = 0.0;
    for (int k = 0; k < 4; ++k) corner = std::max(corner, (c.corners[k] - want[k]).cwiseAbs().maxCoeff());
    for (int which : {1, 2}) {
      const double gs = arc_integral_s(d, which, IntegrandVariant::Liouville, Quadrature::GaussCosine);
      const double as = arc_integral_s(d, which, IntegrandVariant::Liouville, Quadrature::AdaptiveSimpson);
      quad = std::max(quad, std::abs(gs - as) / gs);
    }
    ok &= c.conformality_residual < 1e-6 && corner < 1e-8;
    if (!detail.empty()) detail += "; ";
    detail += label + " residual " + fmt(c.conformality_residual) + ", corners " + fmt(corner);
  };
  check("(2,√3,√2)", conformal_domain_3d({2, kR3, kR2}),
        {Vec4(kR2, 0, 1, 0), Vec4(-kR2, 0, 1, 0), Vec4(-kR2, 0, -1, 0), Vec4(kR2, 0, -1, 0)});
  // Low slice: σ₁ signs x, σ₂ signs z.  High slice: σ₁ signs w, σ₂ signs y.
  const Vec4 p = curve_on_slice(s, 1.5);
  check("λ=1.5 vs P12", conformal_domain_slice(s, 1.5),
        {p, Vec4(-p[0], 0, p[2], p[3]), Vec4(-p[0], 0, -p[2], p[3]), Vec4(p[0], 0, -p[2], p[3])});
  const Vec4 q = curve_on_slice(s, 3.5);
  check("λ=3.5 vs P23", conformal_domain_slice(s, 3.5),
        {q, Vec4(q[0], q[1], 0, -q[3]), Vec4(q[0], -q[1], 0, -q[3]), Vec4(q[0], -q[1], 0, q[3])});
  ok &= quad < 1e-8;
  detail += "; quadrature agreement " + fmt(quad) + " (< 1e-8)";
  return {8, "conformal principal charts", ok, detail};
}

CriterionResult confinement(const AcceptanceConfig& cfg) {
  const Ellipsoid4 s(2, kR3, kR2, 1);
  std::mt19937_64 rng(cfg.seed + 9);
  bool ok = true;
  double worst = 0.0;
  int leaves = 0;
  TraceOptions opt;
  opt.eps_deg = cfg.eps_deg;
  for (int k = 0; k < 5; ++k) {
    const Vec4 seed = random_point(s, rng, 0.05);
    const ConfocalCoords c = to_confocal(s, seed);
    // F1 keeps u and v, F3 keeps v and t.
    const LeafTrace f1 = trace_principal_line(s, seed, 1, opt);
    const LeafTrace f3 = trace_principal_line(s, seed, 3, opt);
    ok &= f1.termination == Termination::Closed && f3.termination == Termination::Closed;
    for (double r : {slice_confinement(f1, {s, c.u}), slice_confinement(f1, {s, c.v}),
                     slice_confinement(f3, {s, c.v}), slice_confinement(f3, {s, c.t})})
      worst = std::max(worst, r);
    leaves += 2;
  }
  ok &= worst < 1e-7;
  const int torus = slice_component_count({s, 2.5});
  const int spheres = slice_component_count({s, 1.5});
  ok &= torus == 1 && spheres == 2;
  return {9, "slice confinement", ok,
          std::to_string(leaves) + " closed leaves, max |Q_λ - 1| " + fmt(worst) + " (< 1e-7); components λ=2.5: " +
              std::to_string(torus) + ", λ=1.5: " + std::to_string(spheres)};
}

CriterionResult factorization(const AcceptanceConfig&) {
  const Ellipsoid4 s(2, kR3, kR2, 1);
  bool ok = true;
  std::string detail;
  const std::pair<Face, const char*> faces[] = {{Face::W0, "w=0 (p5,p6)"}, {Face::V0, "v=0 (p3,p4)"},
                                                {Face::U0, "u=0 (p1,p2)"}};
  for (const auto& [face, label] : faces) {
    const FactorizationFit f = fit_factorization(s, face, 20);
    ok &= f.max_rel_spread < 1e-8 && f.samples > 0;
    if (!detail.empty()) detail += "; ";
    detail += std::string(label) + " constant " + fmt(f.constant) + " spread " + fmt(f.max_rel_spread) + " over " +
              std::to_string(f.samples);
  }
  return {10, "discriminant factorization", ok, detail};
}

}  // namespace

std::vector<CriterionResult> run_acceptance(const AcceptanceConfig& cfg) {
  using Fn = CriterionResult (*)(const AcceptanceConfig&);
  const std::pair<Fn, const char*> criteria[] = {
      {curvature_reproduction, "closed-form curvatures"},
      {umbilics, "umbilic count and location"},
      {eq10_loci, "partially umbilic ellipse/hyperbola loci"},
      {positivity, "positivity of the partially umbilic quartics"},
      {linking, "linking table"},
      {closed_leaves, "closed leaves"},
      {confocal_roundtrip, "confocal roundtrip and orthogonality"},
      {conformal, "conformal principal charts"},
      {confinement, "slice confinement"},
      {factorization, "discriminant factorization"},
  };
  std::vector<CriterionResult> out;
  int id = 0;
  for (const auto& [fn, title] : criteria) {
    ++id;
    try {
      out.push_back(fn(cfg));
    } catch (const std::exception& e) {
      out.push_back({id, title, false, std::string("error: ") + e.what()});
    }
  }
  return out;
}

std::string format_result(const CriterionResult& r) {
  return std::string(r.pass ? "PASS" : "FAIL") + " [" + std::to_string(r.id) + "] " + r.title + ": " + r.detail;
}

}  // namespace e4
