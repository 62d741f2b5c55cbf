#pragma once

#include <string_view>
#include <vector>

#include "e4/chart.hpp"
#include "e4/confocal.hpp"
#include "e4/ellipsoid.hpp"
#include "e4/principal.hpp"

namespace e4 {

enum class Termination { Closed, HitSingularLocus, MaxLength };

std::string_view to_string(Termination t) noexcept;

/// A sampled principal line.  Samples are on the surface, stamped with
/// arclength, and carry the unit tangent of the traced field.
struct LeafTrace {
  int field = 1;
  std::vector<Vec4> samples;
  std::vector<Vec4> tangents;
  std::vector<double> arclength;
  Termination termination = Termination::MaxLength;
  double closure_gap = 0.0;  // |end - seed| when Closed
  double period = 0.0;       // arclength at closure
};

struct TraceOptions {
  double h = 0.0;           // largest step; 0 means diameter / 200
  double max_length = 0.0;  // 0 means 100 · diameter
  double eps_deg = kDefaultEpsDeg;
  double closure_tol = 0.0;  // 0 means 1e-6 · diameter
  double local_tol = 0.0;    // per-step error; 0 means 1e-12 · diameter
};

/// Integrates the unit e_i field (i in 1..3, ascending curvature order) from
/// the seed, continuing orientation from step to step.  Raises SeedDegenerate
/// when k_i is not simple at the seed and DomainViolation when the seed is off
/// the surface.
LeafTrace trace_principal_line(const Ellipsoid4& surface, const Vec4& seed, int i, const TraceOptions& opt = {});
LeafTrace trace_principal_line(const Ellipsoid4& surface, const SurfacePoint& seed, int i,
                               const TraceOptions& opt = {});

struct ClosureReport {
  bool closed = false;
  double period = 0.0;
  double gap = 0.0;
};

/// Looks for a return to the seed after arclength 10h, interpolating between
/// samples with cubic Hermite segments.  Closed iff the gap is below tol and
/// the tangent there has inner product above 0.999 with the seed tangent.
ClosureReport detect_closure(const LeafTrace& trace, double tol);

/// Largest |Q_λ - 1| over the samples.
double slice_confinement(const LeafTrace& trace, const QuarticSlice& slice);

/// Least-squares circle through ambient points: principal plane by PCA, then
/// an algebraic fit in that plane.
struct CircleFit {
  Vec4 center;
  double radius = 0.0;
  double max_deviation = 0.0;  // combines in-plane radial and out-of-plane error
};
CircleFit fit_circle(const std::vector<Vec4>& points);

struct TraceJob {
  Vec4 seed;
  int field = 1;
};

/// Runs independent traces on a worker pool; results are in input order.  The
/// first failing job's error is rethrown after all workers finish.
std::vector<LeafTrace> trace_batch(const Ellipsoid4& surface, const std::vector<TraceJob>& jobs,
                                   const TraceOptions& opt = {}, unsigned threads = 0);

}  // namespace e4
