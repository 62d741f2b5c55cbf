#include "e4/ellipsoid.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "e4/error.hpp"

namespace e4 {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidAxes: return "InvalidAxes";
    case ErrorKind::DomainViolation: return "DomainViolation";
    case ErrorKind::SingularChart: return "SingularChart";
    case ErrorKind::DegenerateDirection: return "DegenerateDirection";
    case ErrorKind::NotNormalized: return "NotNormalized";
    case ErrorKind::OnCoordinateHyperplane: return "OnCoordinateHyperplane";
    case ErrorKind::PoleContact: return "PoleContact";
    case ErrorKind::SeedDegenerate: return "SeedDegenerate";
    case ErrorKind::DivergentIntegral: return "DivergentIntegral";
    case ErrorKind::WrongSignature: return "WrongSignature";
    case ErrorKind::NoValidPole: return "NoValidPole";
    case ErrorKind::CurvesTooClose: return "CurvesTooClose";
    case ErrorKind::NonGenericProjection: return "NonGenericProjection";
    case ErrorKind::Io: return "Io";
    case ErrorKind::Usage: return "Usage";
  }
  return "Unknown";
}

std::string_view to_string(AxisClass c) noexcept {
  switch (c) {
    case AxisClass::AllEqual: return "AllEqual";
    case AxisClass::ThreeEqualLast: return "ThreeEqualLast";
    case AxisClass::ThreeEqualFirst: return "ThreeEqualFirst";
    case AxisClass::TwoPairs: return "TwoPairs";
    case AxisClass::PairLow: return "PairLow";
    case AxisClass::PairHigh: return "PairHigh";
    case AxisClass::PairMiddle: return "PairMiddle";
    case AxisClass::AllDistinct: return "AllDistinct";
  }
  return "Unknown";
}

bool approx_equal_axes(double x, double y, double tau) {
  return std::abs(x - y) <= tau * std::max(std::abs(x), std::abs(y));
}

namespace {

// Indices of the axes sorted by decreasing length (stable, so ties keep
// their original order).
std::array<int, 4> descending_order(const std::array<double, 4>& axes) {
  std::array<int, 4> idx{0, 1, 2, 3};
  std::stable_sort(idx.begin(), idx.end(), [&](int i, int j) { return axes[i] > axes[j]; });
  return idx;
}

// eq[k] is true when sorted axes k and k+1 are equal.
std::array<bool, 3> equal_runs(const std::array<double, 4>& axes, const std::array<int, 4>& idx,
                               double tau) {
  std::array<bool, 3> eq{};
  for (int k = 0; k < 3; ++k) eq[k] = approx_equal_axes(axes[idx[k]], axes[idx[k + 1]], tau);
  return eq;
}

}  // namespace

AxisClass Ellipsoid4::classify(const std::array<double, 4>& axes, double tau) {
  const auto idx = descending_order(axes);
  const auto eq = equal_runs(axes, idx, tau);
  const int equal_count = eq[0] + eq[1] + eq[2];
  if (equal_count == 3) return AxisClass::AllEqual;
  if (equal_count == 2) {
    if (eq[0] && eq[1]) return AxisClass::ThreeEqualLast;   // (A,A,A,B), A > B
    if (eq[1] && eq[2]) return AxisClass::ThreeEqualFirst;  // (B,A,A,A), B > A
    return AxisClass::TwoPairs;                             // (A,A,B,B)
  }
  if (equal_count == 1) {
    if (eq[2]) return AxisClass::PairLow;
    if (eq[0]) return AxisClass::PairHigh;
    return AxisClass::PairMiddle;
  }
  return AxisClass::AllDistinct;
}

Ellipsoid4::Ellipsoid4(const std::array<double, 4>& semi_axes, double tau)
    : axes_(semi_axes), tau_(tau) {
  for (double a : axes_) {
    if (!std::isfinite(a) || a <= 0.0)
      throw Error(ErrorKind::InvalidAxes, "semi-axes must be finite and strictly positive");
  }
  if (!(tau_ >= 0.0 && tau_ < 1e-2))
    throw Error(ErrorKind::InvalidAxes, "axis tolerance out of range");
  class_ = classify(axes_, tau_);
}

CanonicalForm Ellipsoid4::canonical() const {
  const auto idx = descending_order(axes_);
  std::array<int, 4> perm{};
  switch (class_) {
    case AxisClass::AllEqual:
    case AxisClass::ThreeEqualLast:
    case AxisClass::TwoPairs:
    case AxisClass::PairLow:
    case AxisClass::AllDistinct:
      perm = idx;
      break;
    case AxisClass::ThreeEqualFirst:
      // (B,A,A,A) sorted -> triple first, single last.
      perm = {idx[1], idx[2], idx[3], idx[0]};
      break;
    case AxisClass::PairHigh:
      // sorted (C,C,A,B) -> (A,B,C,C)
      perm = {idx[2], idx[3], idx[0], idx[1]};
      break;
    case AxisClass::PairMiddle:
      // sorted (A,C,C,B) -> (A,B,C,C)
      perm = {idx[0], idx[3], idx[1], idx[2]};
      break;
  }
  // Keep equal-axis ties in increasing original index so the permutation is
  // the identity whenever the input is already laid out canonically.
  std::array<double, 4> out{};
  for (int j = 0; j < 4; ++j) out[j] = axes_[perm[j]];
  auto sort_block = [&](int lo, int hi) {
    std::sort(perm.begin() + lo, perm.begin() + hi);
    double mean = 0.0;
    for (int j = lo; j < hi; ++j) mean += axes_[perm[j]];
    mean /= (hi - lo);
    for (int j = lo; j < hi; ++j) out[j] = mean;
  };
  switch (class_) {
    case AxisClass::AllEqual: sort_block(0, 4); break;
    case AxisClass::ThreeEqualLast:
    case AxisClass::ThreeEqualFirst: sort_block(0, 3); break;
    case AxisClass::TwoPairs: sort_block(0, 2); sort_block(2, 4); break;
    case AxisClass::PairLow:
    case AxisClass::PairHigh:
    case AxisClass::PairMiddle: sort_block(2, 4); break;
    case AxisClass::AllDistinct: break;
  }
  return CanonicalForm{Ellipsoid4(out, tau_), perm};
}

bool Ellipsoid4::is_canonical() const {
  const auto cf = canonical();
  for (int j = 0; j < 4; ++j) {
    if (cf.perm[j] != j) return false;
    if (cf.surface.axes_[j] != axes_[j]) return false;
  }
  return true;
}

double Ellipsoid4::level(const Vec4& x) const {
  double q = 0.0;
  for (int i = 0; i < 4; ++i) q += x[i] * x[i] / axis_sq(i);
  return q;
}

Vec4 Ellipsoid4::gradient(const Vec4& x) const {
  Vec4 g;
  for (int i = 0; i < 4; ++i) g[i] = 2.0 * x[i] / axis_sq(i);
  return g;
}

Vec4 Ellipsoid4::inner_normal(const Vec4& x) const {
  const Vec4 g = gradient(x);
  return -g / g.norm();
}

Vec4 Ellipsoid4::project(const Vec4& x) const {
  Vec4 p = x;
  for (int it = 0; it < 8; ++it) {
    const double r = level(p) - 1.0;
    if (std::abs(r) < 1e-15) break;
    const Vec4 g = gradient(p);
    p -= (r / g.squaredNorm()) * g;
  }
  return p;
}

double Ellipsoid4::diameter() const {
  return 2.0 * *std::max_element(axes_.begin(), axes_.end());
}

Vec4 CanonicalForm::to_canonical(const Vec4& x) const {
  Vec4 y;
  for (int j = 0; j < 4; ++j) y[j] = x[perm[j]];
  return y;
}

Vec4 CanonicalForm::from_canonical(const Vec4& y) const {
  Vec4 x;
  for (int j = 0; j < 4; ++j) x[perm[j]] = y[j];
  return x;
}

}  // namespace e4
