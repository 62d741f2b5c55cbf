#pragma once

#include <array>
#include <optional>
#include <string>

#include "e4/ellipsoid.hpp"
#include "e4/linalg.hpp"

namespace e4 {

/// Parametrizations of the ellipsoid.  Every chart except Graph and Confocal
/// expects the surface in the canonical layout of the class it belongs to.
enum class ChartKind {
  Prop1Alpha,     // (a,a,a,b): (a√(b²-w²)/b · (cos u sin v, sin u sin v, cos v), w)
  Prop1Beta,      // (a,a,a,b): (u, v, √(a²-u²-v²) cos t, (b/a)√(a²-u²-v²) sin t)
  Prop2Alpha,     // (a,a,b,b): (a cos u cos t, a sin u cos t, b cos v sin t, b sin v sin t)
  Prop2AlphaBar,  // (a,a,b,b): (a cos u √(b²-v²-w²)/b, a sin u √(b²-v²-w²)/b, v, w)
  PairAlpha,      // (a,b,c,c): (a cos u √(1-v²-w²), b sin u √(1-v²-w²), cv, cw)
  PairBeta,       // (a,b,c,c): (au, bv, c cos t √(1-u²-v²), c sin t √(1-u²-v²))
  Thm2AlphaPlus,  // (au, bv, cw, +d√(1-u²-v²-w²))
  Thm2AlphaMinus,
  Thm2BetaPlus,   // (+a√(1-u²-v²-w²), bv, cu, dw)
  Thm2BetaMinus,
  Graph,          // x_axis = sign·a_axis·√(1-|p|²), remaining x_i = a_i p_j in index order
  Confocal,       // ellipsoidal coordinates (u,v,t), d²<u<c²<v<b²<t<a², signs per octant
};

std::string to_string(ChartKind kind);

/// One parametrization bound to a surface.
struct Chart {
  ChartKind kind = ChartKind::Graph;
  Ellipsoid4 surface;
  int axis = 3;                          // Graph only
  int sign = 1;                          // Graph only
  std::array<int, 4> octant{1, 1, 1, 1};  // Confocal only

  Chart(ChartKind k, const Ellipsoid4& s) : kind(k), surface(s) {}

  static Chart graph(const Ellipsoid4& s, int axis, int sign);
  static Chart confocal(const Ellipsoid4& s, const std::array<int, 4>& octant);

  /// Open-domain test with a relative safety margin away from seams and poles.
  bool in_domain(const Vec3& p, double margin = 0.0) const;
  std::string name() const;
};

struct SurfacePoint {
  Vec4 ambient;
  std::optional<ChartKind> chart;
  Vec3 params = Vec3::Zero();
};

/// Position with first and second partial derivatives.
struct ChartJet {
  Vec4 x;
  Mat43 J;                                 // column i = ∂x/∂p_i
  std::array<std::array<Vec4, 3>, 3> H;    // H[i][j] = ∂²x/∂p_i∂p_j
};

SurfacePoint eval_chart(const Chart& chart, const Vec3& p);
ChartJet chart_jet(const Chart& chart, const Vec3& p);

/// The graph chart over the axis with largest |x_k|/a_k at x, and the
/// parameters of x in it.
Chart auto_chart(const Ellipsoid4& s, const Vec4& x);
Vec3 graph_params(const Chart& graph, const Vec4& x);

}  // namespace e4
