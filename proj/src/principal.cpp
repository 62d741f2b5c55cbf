#include "e4/principal.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "e4/error.hpp"

namespace e4 {

std::string_view to_string(PointTag tag) noexcept {
  switch (tag) {
    case PointTag::Regular: return "Regular";
    case PointTag::P12: return "P12";
    case PointTag::P23: return "P23";
    case PointTag::Umbilic: return "Umbilic";
  }
  return "Unknown";
}

namespace {

Eigen::GeneralizedSelfAdjointEigenSolver<Mat3> solve_pencil(const Mat3& G, const Mat3& B,
                                                             bool vectors) {
  Eigen::GeneralizedSelfAdjointEigenSolver<Mat3> es(
      B, G, vectors ? (Eigen::ComputeEigenvectors | Eigen::Ax_lBx) : (Eigen::EigenvaluesOnly | Eigen::Ax_lBx));
  if (es.info() != Eigen::Success)
    throw Error(ErrorKind::SingularChart, "first fundamental form is not positive definite");
  return es;
}

}  // namespace

std::array<double, 3> pencil_eigenvalues(const Mat3& G, const Mat3& B) {
  const auto es = solve_pencil(G, B, false);
  const Vec3 ev = es.eigenvalues();
  return {ev[0], ev[1], ev[2]};
}

std::array<double, 3> principal_curvatures(const Forms& f) {
  const auto r = cubic_real_roots(characteristic_cubic(f.G, f.B));
  const double scale = std::max({std::abs(r[0]), std::abs(r[1]), std::abs(r[2])});
  if (r[1] - r[0] < 1e-4 * scale || r[2] - r[1] < 1e-4 * scale) return pencil_eigenvalues(f.G, f.B);
  return r;
}

Forms forms_at(const Ellipsoid4& s, const Vec4& x) {
  const Chart chart = auto_chart(s, x);
  return fundamental_forms(chart, graph_params(chart, x));
}

std::array<double, 3> principal_curvatures(const Ellipsoid4& s, const Vec4& x) {
  return principal_curvatures(forms_at(s, x));
}

std::array<double, 2> relative_gaps(const std::array<double, 3>& k) {
  const double kbar = (std::abs(k[0]) + std::abs(k[1]) + std::abs(k[2])) / 3.0;
  return {(k[1] - k[0]) / kbar, (k[2] - k[1]) / kbar};
}

PointTag classify_gaps(const std::array<double, 3>& k, double eps_deg) {
  const auto g = relative_gaps(k);
  const bool low = g[0] < eps_deg, high = g[1] < eps_deg;
  if (low && high) return PointTag::Umbilic;
  if (low) return PointTag::P12;
  if (high) return PointTag::P23;
  return PointTag::Regular;
}

PointTag classify_point(const Ellipsoid4& s, const Vec4& x, double eps_deg) {
  return classify_gaps(principal_curvatures(s, x), eps_deg);
}

PrincipalData principal_directions(const Forms& f, double eps_deg) {
  PrincipalData pd;
  pd.k = principal_curvatures(f);
  pd.tag = classify_gaps(pd.k, eps_deg);
  const auto es = solve_pencil(f.G, f.B, true);
  const Mat3 V = es.eigenvectors();
  for (int i = 0; i < 3; ++i) pd.frame[i] = V.col(i);
  switch (pd.tag) {
    case PointTag::Regular: pd.defined = {true, true, true}; break;
    case PointTag::P12: pd.defined = {false, false, true}; break;
    case PointTag::P23: pd.defined = {true, false, false}; break;
    case PointTag::Umbilic: pd.defined = {false, false, false}; break;
  }
  return pd;
}

PlaneField plane_field(const Forms& f, int i, double eps_deg) {
  if (i < 1 || i > 3) throw Error(ErrorKind::DomainViolation, "field index must be 1, 2 or 3");
  const auto pd = principal_directions(f, eps_deg);
  if (!pd.defined[i - 1])
    throw Error(ErrorKind::DegenerateDirection, "principal curvature is not simple here");
  std::array<Vec3, 2> basis;
  int n = 0;
  for (int j = 0; j < 3; ++j)
    if (j != i - 1) basis[n++] = pd.frame[j];
  return PlaneField{basis[0], basis[1]};
}

Vec4 ambient_direction(const Forms& f, const Vec3& e) {
  const Vec4 t = f.J * e;
  return t / t.norm();
}

}  // namespace e4
