#include "e4/chart.hpp"

#include <cmath>
#include <numbers>

#include "e4/error.hpp"
#include "e4/jet.hpp"

namespace e4 {

std::string to_string(ChartKind kind) {
  switch (kind) {
    case ChartKind::Prop1Alpha: return "Prop1Alpha";
    case ChartKind::Prop1Beta: return "Prop1Beta";
    case ChartKind::Prop2Alpha: return "Prop2Alpha";
    case ChartKind::Prop2AlphaBar: return "Prop2AlphaBar";
    case ChartKind::PairAlpha: return "PairAlpha";
    case ChartKind::PairBeta: return "PairBeta";
    case ChartKind::Thm2AlphaPlus: return "Thm2AlphaPlus";
    case ChartKind::Thm2AlphaMinus: return "Thm2AlphaMinus";
    case ChartKind::Thm2BetaPlus: return "Thm2BetaPlus";
    case ChartKind::Thm2BetaMinus: return "Thm2BetaMinus";
    case ChartKind::Graph: return "Graph";
    case ChartKind::Confocal: return "Confocal";
  }
  return "Unknown";
}

Chart Chart::graph(const Ellipsoid4& s, int axis, int sign) {
  if (axis < 0 || axis > 3 || (sign != 1 && sign != -1))
    throw Error(ErrorKind::DomainViolation, "graph chart needs axis in 0..3 and sign ±1");
  Chart c(ChartKind::Graph, s);
  c.axis = axis;
  c.sign = sign;
  return c;
}

Chart Chart::confocal(const Ellipsoid4& s, const std::array<int, 4>& octant) {
  for (int e : octant)
    if (e != 1 && e != -1) throw Error(ErrorKind::DomainViolation, "octant signs must be ±1");
  Chart c(ChartKind::Confocal, s);
  c.octant = octant;
  return c;
}

std::string Chart::name() const {
  std::string n = to_string(kind);
  if (kind == ChartKind::Graph) {
    n += "[x" + std::to_string(axis + 1) + (sign > 0 ? "+" : "-") + "]";
  } else if (kind == ChartKind::Confocal) {
    n += "[";
    for (int e : octant) n += (e > 0 ? '+' : '-');
    n += "]";
  }
  return n;
}

namespace {

void require_layout(const Chart& c) {
  const auto& a = c.surface.axes();
  const double tau = std::max(c.surface.tolerance(), 1e-12);
  auto eq = [&](int i, int j) { return approx_equal_axes(a[i], a[j], tau); };
  bool ok = true;
  switch (c.kind) {
    case ChartKind::Prop1Alpha:
    case ChartKind::Prop1Beta: ok = eq(0, 1) && eq(1, 2); break;
    case ChartKind::Prop2Alpha:
    case ChartKind::Prop2AlphaBar: ok = eq(0, 1) && eq(2, 3); break;
    case ChartKind::PairAlpha:
    case ChartKind::PairBeta: ok = eq(2, 3); break;
    case ChartKind::Confocal: ok = a[0] > a[1] && a[1] > a[2] && a[2] > a[3]; break;
    default: break;
  }
  if (!ok)
    throw Error(ErrorKind::InvalidAxes, "surface axes do not fit the layout of chart " + c.name());
}

// Coordinate order of the scaled graph charts: x_{slot[j]} = a_{slot[j]} p_j.
std::array<int, 3> graph_slots(const Chart& c) {
  switch (c.kind) {
    case ChartKind::Thm2AlphaPlus:
    case ChartKind::Thm2AlphaMinus: return {0, 1, 2};
    case ChartKind::Thm2BetaPlus:
    case ChartKind::Thm2BetaMinus: return {2, 1, 3};
    default: break;
  }
  std::array<int, 3> slots{};
  int j = 0;
  for (int i = 0; i < 4; ++i)
    if (i != c.axis) slots[j++] = i;
  return slots;
}

int graph_axis(const Chart& c) {
  switch (c.kind) {
    case ChartKind::Thm2AlphaPlus:
    case ChartKind::Thm2AlphaMinus: return 3;
    case ChartKind::Thm2BetaPlus:
    case ChartKind::Thm2BetaMinus: return 0;
    default: return c.axis;
  }
}

int graph_sign(const Chart& c) {
  switch (c.kind) {
    case ChartKind::Thm2AlphaMinus:
    case ChartKind::Thm2BetaMinus: return -1;
    case ChartKind::Thm2AlphaPlus:
    case ChartKind::Thm2BetaPlus: return 1;
    default: return c.sign;
  }
}

bool is_graph(ChartKind k) {
  return k == ChartKind::Graph || k == ChartKind::Thm2AlphaPlus ||
         k == ChartKind::Thm2AlphaMinus || k == ChartKind::Thm2BetaPlus ||
         k == ChartKind::Thm2BetaMinus;
}

template <class T>
std::array<T, 4> chart_map(const Chart& c, const std::array<T, 3>& p) {
  using std::cos;
  using std::sin;
  using std::sqrt;
  const auto& ax = c.surface.axes();
  const T& u = p[0];
  const T& v = p[1];
  const T& w = p[2];
  switch (c.kind) {
    case ChartKind::Prop1Alpha: {
      const double a = ax[0], b = ax[3];
      const T r = (a / b) * sqrt(b * b - w * w);
      return {r * cos(u) * sin(v), r * sin(u) * sin(v), r * cos(v), w};
    }
    case ChartKind::Prop1Beta: {
      const double a = ax[0], b = ax[3];
      const T r = sqrt(a * a - u * u - v * v);
      return {u, v, r * cos(w), (b / a) * r * sin(w)};
    }
    case ChartKind::Prop2Alpha: {
      const double a = ax[0], b = ax[2];
      return {a * cos(u) * cos(w), a * sin(u) * cos(w), b * cos(v) * sin(w), b * sin(v) * sin(w)};
    }
    case ChartKind::Prop2AlphaBar: {
      const double a = ax[0], b = ax[2];
      const T r = (a / b) * sqrt(b * b - v * v - w * w);
      return {r * cos(u), r * sin(u), v, w};
    }
    case ChartKind::PairAlpha: {
      const T r = sqrt(1.0 - v * v - w * w);
      return {ax[0] * cos(u) * r, ax[1] * sin(u) * r, ax[2] * v, ax[3] * w};
    }
    case ChartKind::PairBeta: {
      const T r = sqrt(1.0 - u * u - v * v);
      return {ax[0] * u, ax[1] * v, ax[2] * cos(w) * r, ax[3] * sin(w) * r};
    }
    case ChartKind::Confocal: {
      std::array<T, 4> x;
      for (int i = 0; i < 4; ++i) {
        const double ai2 = ax[i] * ax[i];
        double den = 1.0;
        for (int j = 0; j < 4; ++j)
          if (j != i) den *= ai2 - ax[j] * ax[j];
        x[i] = static_cast<double>(c.octant[i]) *
               sqrt((ai2 / den) * ((ai2 - u) * (ai2 - v) * (ai2 - w)));
      }
      return x;
    }
    default: {
      const auto slots = graph_slots(c);
      const int k = graph_axis(c);
      std::array<T, 4> x;
      for (int j = 0; j < 3; ++j) x[slots[j]] = ax[slots[j]] * p[j];
      x[k] = (graph_sign(c) * ax[k]) * sqrt(1.0 - u * u - v * v - w * w);
      return x;
    }
  }
}

}  // namespace

bool Chart::in_domain(const Vec3& p, double margin) const {
  const auto& ax = surface.axes();
  const double u = p[0], v = p[1], w = p[2];
  if (!p.allFinite()) return false;
  switch (kind) {
    case ChartKind::Prop1Alpha: {
      const double b = ax[3];
      return v > 0.0 && v < std::numbers::pi && std::sin(v) > margin &&
             b * b - w * w > margin * b * b;
    }
    case ChartKind::Prop1Beta: {
      const double a = ax[0];
      return a * a - u * u - v * v > margin * a * a;
    }
    case ChartKind::Prop2Alpha:
      return w > 0.0 && w < std::numbers::pi && std::sin(w) > margin &&
             std::abs(std::cos(w)) > margin;
    case ChartKind::Prop2AlphaBar: {
      const double b = ax[2];
      return b * b - v * v - w * w > margin * b * b;
    }
    case ChartKind::PairAlpha: return 1.0 - v * v - w * w > margin;
    case ChartKind::PairBeta: return 1.0 - u * u - v * v > margin;
    case ChartKind::Confocal: {
      const double a2 = ax[0] * ax[0], b2 = ax[1] * ax[1], c2 = ax[2] * ax[2], d2 = ax[3] * ax[3];
      auto inside = [&](double x, double lo, double hi) {
        const double m = margin * (hi - lo);
        return x > lo + m && x < hi - m;
      };
      return inside(u, d2, c2) && inside(v, c2, b2) && inside(w, b2, a2);
    }
    default: return 1.0 - u * u - v * v - w * w > margin;
  }
}

SurfacePoint eval_chart(const Chart& chart, const Vec3& p) {
  require_layout(chart);
  if (!chart.in_domain(p))
    throw Error(ErrorKind::DomainViolation, "parameters outside the domain of " + chart.name());
  const auto x = chart_map<double>(chart, {p[0], p[1], p[2]});
  return SurfacePoint{Vec4(x[0], x[1], x[2], x[3]), chart.kind, p};
}

ChartJet chart_jet(const Chart& chart, const Vec3& p) {
  require_layout(chart);
  if (!chart.in_domain(p))
    throw Error(ErrorKind::DomainViolation, "parameters outside the domain of " + chart.name());
  using J3 = Jet<3>;
  const std::array<J3, 3> q{J3::variable(p[0], 0), J3::variable(p[1], 1), J3::variable(p[2], 2)};
  const auto x = chart_map<J3>(chart, q);
  ChartJet out;
  for (int k = 0; k < 4; ++k) {
    out.x[k] = x[k].v;
    for (int i = 0; i < 3; ++i) {
      out.J(k, i) = x[k].d[i];
      for (int j = 0; j < 3; ++j) out.H[i][j][k] = x[k].hess(i, j);
    }
  }
  return out;
}

Chart auto_chart(const Ellipsoid4& s, const Vec4& x) {
  int best = 0;
  double best_val = -1.0;
  for (int k = 0; k < 4; ++k) {
    const double r = std::abs(x[k]) / s.axis(k);
    if (r > best_val) {
      best_val = r;
      best = k;
    }
  }
  return Chart::graph(s, best, x[best] >= 0.0 ? 1 : -1);
}

Vec3 graph_params(const Chart& graph, const Vec4& x) {
  if (!is_graph(graph.kind))
    throw Error(ErrorKind::DomainViolation, "graph_params needs a graph-type chart");
  const auto slots = graph_slots(graph);
  Vec3 p;
  for (int j = 0; j < 3; ++j) p[j] = x[slots[j]] / graph.surface.axis(slots[j]);
  return p;
}

}  // namespace e4
