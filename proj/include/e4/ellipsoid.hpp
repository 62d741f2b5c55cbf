#pragma once

#include <array>
#include <string_view>

#include "e4/linalg.hpp"

namespace e4 {

/// Degeneracy class of the semi-axis multiset.  Names follow the
/// coordinate layout each class is studied in:
///   ThreeEqualLast   E_{a,a,a,b}, a > b
///   ThreeEqualFirst  E_{b,a,a,a}, b > a   (laid out as (a,a,a,b) with a < b)
///   TwoPairs         E_{a,a,b,b}, a > b
///   PairLow          E_{a,b,c,c}, a > b > c
///   PairHigh         E_{c,c,a,b}, c > a > b  (laid out as (a,b,c,c))
///   PairMiddle       E_{a,c,c,b}, a > c > b  (laid out as (a,b,c,c))
///   AllDistinct      E_{a,b,c,d}, a > b > c > d
enum class AxisClass {
  AllEqual,
  ThreeEqualLast,
  ThreeEqualFirst,
  TwoPairs,
  PairLow,
  PairHigh,
  PairMiddle,
  AllDistinct,
};

std::string_view to_string(AxisClass c) noexcept;

/// Relative tolerance under which two semi-axes count as equal.
inline constexpr double kAxisTolerance = 1e-12;

struct CanonicalForm;

/// The hypersurface x1²/a² + x2²/b² + x3²/c² + x4²/d² = 1 in R⁴, oriented by
/// the inner normal -∇Q/|∇Q|.
class Ellipsoid4 {
 public:
  explicit Ellipsoid4(const std::array<double, 4>& semi_axes, double tau = kAxisTolerance);
  Ellipsoid4(double a, double b, double c, double d)
      : Ellipsoid4(std::array<double, 4>{a, b, c, d}) {}

  const std::array<double, 4>& axes() const noexcept { return axes_; }
  double axis(int i) const { return axes_[static_cast<std::size_t>(i)]; }
  double axis_sq(int i) const { return axis(i) * axis(i); }
  AxisClass axis_class() const noexcept { return class_; }
  double tolerance() const noexcept { return tau_; }

  /// The same surface with coordinates permuted into the layout of its class.
  CanonicalForm canonical() const;
  bool is_canonical() const;

  double level(const Vec4& x) const;  ///< Q(x); equal to 1 on the surface
  Vec4 gradient(const Vec4& x) const;
  Vec4 inner_normal(const Vec4& x) const;

  /// Newton iterations along the gradient until |Q(x) - 1| is at rounding level.
  Vec4 project(const Vec4& x) const;

  double diameter() const;

  static AxisClass classify(const std::array<double, 4>& axes, double tau = kAxisTolerance);

 private:
  std::array<double, 4> axes_;
  double tau_;
  AxisClass class_;
};

/// canonical coordinate j is original coordinate perm[j].
struct CanonicalForm {
  Ellipsoid4 surface;
  std::array<int, 4> perm;

  Vec4 to_canonical(const Vec4& x) const;
  Vec4 from_canonical(const Vec4& y) const;
};

bool approx_equal_axes(double x, double y, double tau);

}  // namespace e4
