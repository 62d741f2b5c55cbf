#include "e4/tracer.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <thread>

#include <Eigen/Eigenvalues>

#include "e4/error.hpp"

namespace e4 {

std::string_view to_string(Termination t) noexcept {
  switch (t) {
    case Termination::Closed: return "Closed";
    case Termination::HitSingularLocus: return "HitSingularLocus";
    case Termination::MaxLength: return "MaxLength";
  }
  return "?";
}

namespace {

struct FieldSample {
  Vec4 dir;
  double gap;  // relative gap that keeps k_i simple
};

double field_gap(const std::array<double, 3>& k, int i) {
  const auto g = relative_gaps(k);
  if (i == 1) return g[0];
  if (i == 3) return g[1];
  return std::min(g[0], g[1]);
}

class Field {
 public:
  Field(const Ellipsoid4& s, int i, double eps) : s_(s), i_(i), eps_(eps) {}

  // Unit e_i at the projection of x, oriented along ref.
  FieldSample at(const Vec4& x, const Vec4& ref) const {
    const Forms f = forms_at(s_, s_.project(x));
    const PrincipalData pd = principal_directions(f, eps_);
    Vec4 d = ambient_direction(f, pd.frame[static_cast<std::size_t>(i_ - 1)]);
    if (d.dot(ref) < 0) d = -d;
    return {d, field_gap(pd.k, i_)};
  }

 private:
  const Ellipsoid4& s_;
  int i_;
  double eps_;
};

struct Step {
  Vec4 x;
  bool ok;
};

Step rk4(const Field& f, const Vec4& x, const Vec4& ref, double h) {
  const Vec4 k1 = f.at(x, ref).dir;
  const Vec4 k2 = f.at(x + 0.5 * h * k1, k1).dir;
  const Vec4 k3 = f.at(x + 0.5 * h * k2, k2).dir;
  const Vec4 k4 = f.at(x + h * k3, k3).dir;
  const bool ok = k1.dot(k2) > 0.9 && k2.dot(k3) > 0.9 && k3.dot(k4) > 0.9;
  return {x + h / 6 * (k1 + 2 * k2 + 2 * k3 + k4), ok};
}

Vec4 hermite(const Vec4& p0, const Vec4& t0, const Vec4& p1, const Vec4& t1, double ds, double u) {
  const double u2 = u * u, u3 = u2 * u;
  return (2 * u3 - 3 * u2 + 1) * p0 + (u3 - 2 * u2 + u) * ds * t0 + (-2 * u3 + 3 * u2) * p1 + (u3 - u2) * ds * t1;
}

Vec4 hermite_d(const Vec4& p0, const Vec4& t0, const Vec4& p1, const Vec4& t1, double ds, double u) {
  const double u2 = u * u;
  return ((6 * u2 - 6 * u) * p0 + (-6 * u2 + 6 * u) * p1) / ds + (3 * u2 - 4 * u + 1) * t0 + (3 * u2 - 2 * u) * t1;
}

}  // namespace

LeafTrace trace_principal_line(const Ellipsoid4& surface, const Vec4& seed, int i, const TraceOptions& opt) {
  if (i < 1 || i > 3) throw Error(ErrorKind::DomainViolation, "field index must be 1, 2 or 3");
  if (std::abs(surface.level(seed) - 1.0) > 1e-6) throw Error(ErrorKind::DomainViolation, "seed is off the surface");
  const double diam = surface.diameter();
  const double hmax = opt.h > 0 ? opt.h : diam / 200;
  const double L = opt.max_length > 0 ? opt.max_length : 100 * diam;
  const double ctol = opt.closure_tol > 0 ? opt.closure_tol : 1e-6 * diam;
  const double ltol = opt.local_tol > 0 ? opt.local_tol : 1e-12 * diam;
  const double hmin = 1e-10 * diam;
  const double stop_gap = 5 * opt.eps_deg;

  const Field field(surface, i, opt.eps_deg);
  const Vec4 x0 = surface.project(seed);
  {
    const auto k = principal_curvatures(forms_at(surface, x0));
    if (field_gap(k, i) < opt.eps_deg)
      throw Error(ErrorKind::SeedDegenerate, "principal curvature k" + std::to_string(i) + " is not simple at the seed");
  }
  const Vec4 d0 = field.at(x0, Vec4(1, 1, 1, 1)).dir;

  LeafTrace tr;
  tr.field = i;
  tr.samples.push_back(x0);
  tr.tangents.push_back(d0);
  tr.arclength.push_back(0.0);

  Vec4 x = x0, d = d0;
  double s = 0.0, h = hmax;
  // Step doubling: one step of h against two of h/2.
  auto advance = [&](const Vec4& from, const Vec4& ref, double len, double& err) -> std::optional<Vec4> {
    const Step full = rk4(field, from, ref, len);
    const Step a = rk4(field, from, ref, 0.5 * len);
    if (!full.ok || !a.ok) return std::nullopt;
    const Vec4 mid = surface.project(a.x);
    const Step b = rk4(field, mid, field.at(mid, ref).dir, 0.5 * len);
    if (!b.ok) return std::nullopt;
    err = (full.x - b.x).norm() / 15;
    return surface.project(b.x + (b.x - full.x) / 15);
  };

  while (s < L) {
    const double len = std::min(h, L - s);
    double err = 0.0;
    const auto next = advance(x, d, len, err);
    if (!next || err > ltol) {
      h = 0.5 * len;
      if (h < hmin) {
        tr.termination = Termination::HitSingularLocus;
        return tr;
      }
      continue;
    }
    const FieldSample fs = field.at(*next, d);
    if (fs.dir.dot(d) <= 0.9) {
      h = 0.5 * len;
      if (h < hmin) {
        tr.termination = Termination::HitSingularLocus;
        return tr;
      }
      continue;
    }
    const Vec4 x_prev = x, d_prev = d;
    const double s_prev = s;
    x = *next;
    d = fs.dir;
    s += len;
    tr.samples.push_back(x);
    tr.tangents.push_back(d);
    tr.arclength.push_back(s);
    if (fs.gap < stop_gap) {
      tr.termination = Termination::HitSingularLocus;
      return tr;
    }
    h = std::min(hmax, len * std::clamp(0.9 * std::pow(ltol / std::max(err, 1e-300), 0.2), 0.2, 2.0));

    // Return to the seed: the signed offset along d0 crosses zero nearby.
    const double p_prev = (x_prev - x0).dot(d0), p_now = (x - x0).dot(d0);
    if (s >= 10 * hmax && p_prev < 0 && p_now >= 0 && (x_prev - x0).norm() < 4 * hmax) {
      double tau = -p_prev / std::max(d_prev.dot(d0), 0.1);
      Vec4 x_end = x, d_end = d;
      for (int it = 0; it < 3; ++it) {
        double e2 = 0.0;
        const auto r = advance(x_prev, d_prev, tau, e2);
        if (!r) break;
        x_end = *r;
        d_end = field.at(x_end, d_prev).dir;
        tau -= (x_end - x0).dot(d0) / std::max(d_end.dot(d0), 0.1);
      }
      const double gap = (x_end - x0).norm();
      if (gap < ctol && d_end.dot(d0) > 0.999) {
        tr.samples.back() = x_end;
        tr.tangents.back() = d_end;
        tr.arclength.back() = s_prev + tau;
        tr.termination = Termination::Closed;
        tr.closure_gap = gap;
        tr.period = s_prev + tau;
        return tr;
      }
    }
  }
  tr.termination = Termination::MaxLength;
  return tr;
}

LeafTrace trace_principal_line(const Ellipsoid4& surface, const SurfacePoint& seed, int i, const TraceOptions& opt) {
  return trace_principal_line(surface, seed.ambient, i, opt);
}

ClosureReport detect_closure(const LeafTrace& trace, double tol) {
  ClosureReport best;
  const auto& X = trace.samples;
  const auto& T = trace.tangents;
  const auto& S = trace.arclength;
  if (X.size() < 3) return best;
  double h = 0.0;
  for (std::size_t k = 1; k < X.size(); ++k) h = std::max(h, S[k] - S[k - 1]);
  const Vec4& x0 = X[0];
  const Vec4& t0 = T[0];
  const double slack = 1e-3 * tol;
  best.gap = std::numeric_limits<double>::infinity();
  for (std::size_t k = 1; k < X.size(); ++k) {
    if (S[k] < 10 * h) continue;
    const double pa = (X[k - 1] - x0).dot(t0), pb = (X[k] - x0).dot(t0);
    if (!(pa < 0 && pb >= -slack)) continue;
    const double ds = S[k] - S[k - 1];
    auto p = [&](double u) { return (hermite(X[k - 1], T[k - 1], X[k], T[k], ds, u) - x0).dot(t0); };
    double lo = 0.0, hi = 1.0;
    if (pb >= 0)
      while (hi - lo > 1e-15) {
        const double m = 0.5 * (lo + hi);
        (p(m) < 0 ? lo : hi) = m;
      }
    const double u = hi;
    const Vec4 q = hermite(X[k - 1], T[k - 1], X[k], T[k], ds, u);
    const Vec4 tq = hermite_d(X[k - 1], T[k - 1], X[k], T[k], ds, u).normalized();
    const double gap = (q - x0).norm();
    const bool closed = gap < tol && tq.dot(t0) > 0.999;
    if (closed || gap < best.gap) {
      best.gap = gap;
      best.period = S[k - 1] + u * ds;
      best.closed = closed;
    }
    if (closed) return best;
  }
  if (!std::isfinite(best.gap)) best.gap = 0.0;
  return best;
}

double slice_confinement(const LeafTrace& trace, const QuarticSlice& slice) {
  double worst = 0.0;
  for (const Vec4& x : trace.samples) worst = std::max(worst, std::abs(quartic_membership(slice, x)));
  return worst;
}

CircleFit fit_circle(const std::vector<Vec4>& points) {
  if (points.size() < 3) throw Error(ErrorKind::DomainViolation, "a circle fit needs at least three points");
  Vec4 mean = Vec4::Zero();
  for (const Vec4& p : points) mean += p;
  mean /= static_cast<double>(points.size());
  Eigen::Matrix4d C = Eigen::Matrix4d::Zero();
  for (const Vec4& p : points) C += (p - mean) * (p - mean).transpose();
  const Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> es(C);
  const Vec4 e1 = es.eigenvectors().col(3), e2 = es.eigenvectors().col(2);

  // x² + y² = 2 cx x + 2 cy y + c0 in plane coordinates.
  Eigen::MatrixXd A(points.size(), 3);
  Eigen::VectorXd b(points.size());
  for (std::size_t k = 0; k < points.size(); ++k) {
    const Vec4 q = points[k] - mean;
    const double x = q.dot(e1), y = q.dot(e2);
    A.row(static_cast<Eigen::Index>(k)) << 2 * x, 2 * y, 1.0;
    b[static_cast<Eigen::Index>(k)] = x * x + y * y;
  }
  const Eigen::Vector3d sol = A.colPivHouseholderQr().solve(b);
  CircleFit fit;
  fit.center = mean + sol[0] * e1 + sol[1] * e2;
  fit.radius = std::sqrt(sol[2] + sol[0] * sol[0] + sol[1] * sol[1]);
  for (const Vec4& p : points) {
    const Vec4 q = p - fit.center;
    const double x = q.dot(e1), y = q.dot(e2);
    const double out = (q - x * e1 - y * e2).norm();
    const double radial = std::hypot(x, y) - fit.radius;
    fit.max_deviation = std::max(fit.max_deviation, std::hypot(radial, out));
  }
  return fit;
}

std::vector<LeafTrace> trace_batch(const Ellipsoid4& surface, const std::vector<TraceJob>& jobs,
                                   const TraceOptions& opt, unsigned threads) {
  std::vector<LeafTrace> out(jobs.size());
  std::vector<std::exception_ptr> errors(jobs.size());
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(jobs.size(), 1)));
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t k; (k = next.fetch_add(1)) < jobs.size();) {
      try {
        out[k] = trace_principal_line(surface, jobs[k].seed, jobs[k].field, opt);
      } catch (...) {
        errors[k] = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work);
  for (auto& t : pool) t.join();
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

}  // namespace e4
