#pragma once

#include <array>
#include <string_view>

#include "e4/forms.hpp"

namespace e4 {

enum class PointTag { Regular, P12, P23, Umbilic };

std::string_view to_string(PointTag tag) noexcept;

/// Relative curvature gap under which two principal curvatures coincide.
inline constexpr double kDefaultEpsDeg = 1e-6;

struct PrincipalData {
  std::array<double, 3> k{};       // ascending
  std::array<Vec3, 3> frame{};     // chart coordinates, e_iᵀ G e_j = δ_ij
  std::array<bool, 3> defined{};   // false for members of a coincident group
  PointTag tag = PointTag::Regular;
};

/// Eigenvalues of the definite pencil (B, G) through Cholesky reduction.
std::array<double, 3> pencil_eigenvalues(const Mat3& G, const Mat3& B);

/// Roots of the characteristic cubic.  Where two roots lie within 1e-4 of
/// each other the backward-stable pencil eigenvalues are returned instead,
/// since coefficient rounding splits a double root by O(√ε).
std::array<double, 3> principal_curvatures(const Forms& f);
std::array<double, 3> principal_curvatures(const Ellipsoid4& s, const Vec4& x);

/// (k2-k1)/k̄ and (k3-k2)/k̄ with k̄ the mean curvature magnitude.
std::array<double, 2> relative_gaps(const std::array<double, 3>& k);
PointTag classify_gaps(const std::array<double, 3>& k, double eps_deg = kDefaultEpsDeg);
PointTag classify_point(const Ellipsoid4& s, const Vec4& x, double eps_deg = kDefaultEpsDeg);

PrincipalData principal_directions(const Forms& f, double eps_deg = kDefaultEpsDeg);

/// Forms of the well-conditioned graph chart through x.
Forms forms_at(const Ellipsoid4& s, const Vec4& x);

/// G-orthonormal basis of the plane orthogonal to e_i (i in 1..3).
struct PlaneField {
  Vec3 e1;
  Vec3 e2;
};
PlaneField plane_field(const Forms& f, int i, double eps_deg = kDefaultEpsDeg);

/// Unit ambient tangent J e.
Vec4 ambient_direction(const Forms& f, const Vec3& e);

}  // namespace e4
