#pragma once

// Closed-form curvature formulas and fundamental-form tables for the special
// charts, transcribed so that they can be compared against the jet pipeline.

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "e4/ellipsoid.hpp"
#include "e4/linalg.hpp"

namespace e4::printed {

// All curvature triples are returned as sorted multisets.

/// (a,a,a,b), chart α: k = l = b²/(aΔ), m = ab⁴/Δ³, Δ = √((a²-b²)w² + b⁴).
std::array<double, 3> prop1_alpha(double a, double b, double w);
/// (a,a,a,b), chart β on u = v = 0: b/(aΔ) twice and ab/Δ³, Δ = √(b²cos²t + a²sin²t).
std::array<double, 3> prop1_beta_axis(double a, double b, double t);
/// (a,a,b,b), chart α: b/(aΔ), a/(bΔ), ab/Δ³ with Δ² = a²sin²t + b²cos²t.
std::array<double, 3> prop2_alpha(double a, double b, double t);
/// (a,a,b,b), chart ᾱ on v = w = 0: 1/a and a/b² twice.
std::array<double, 3> prop2_alphabar_axis(double a, double b);
/// (a,b,c,c) on E0 = α(u,0,0): ab/Δ³ and ab/(c²Δ) twice, Δ = √(a²sin²u + b²cos²u).
std::array<double, 3> pair_e0(double a, double b, double c, double u);
/// (a,b,c,c), a > b > c, on the circles γ±: ac/b³ twice and a/(bc).
std::array<double, 3> pair_low_gamma(double a, double b, double c);
/// (a,b,c,c), c > a > b, on the circles γ±: b/(ac) and bc/a³ twice.
std::array<double, 3> pair_high_gamma(double a, double b, double c);
/// Confocal curvatures (abcd/√(uvt))·(1/t, 1/v, 1/u), ascending.
std::array<double, 3> lemma1(const Ellipsoid4& s, double u, double v, double t);

/// Umbilic parameter of the (a,b,c,c), a > c > b layout: cos²u = (a²-c²)/(a²-b²).
double thm1_umbilic_cos2(double a, double b, double c);

// Tables for the (a,b,c,c) chart α(u,v,w) = (a cos u √S, b sin u √S, cv, cw),
// S = 1 - v² - w², second form against N = -(c cos u √S/a, c sin u √S/b, v, w).
Mat3 thm1_first_form(double a, double b, double c, const Vec3& p);
Mat3 thm1_second_form_printed(double a, double b, double c, const Vec3& p);
Mat3 thm1_second_form_corrected(double a, double b, double c, const Vec3& p);
Vec4 thm1_normal(double a, double b, double c, const Vec3& p);

// Tables for α₊(u,v,w) = (au, bv, cw, d√(1-u²-v²-w²)), second form against
// N₊ = -(u/(aΔ), v/(bΔ), w/(cΔ), 1/d).
Mat3 thm2_first_form_printed(const std::array<double, 4>& axes, const Vec3& p);
Mat3 thm2_first_form_corrected(const std::array<double, 4>& axes, const Vec3& p);
Mat3 thm2_second_form(const std::array<double, 4>& axes, const Vec3& p);
Vec4 thm2_normal_plus(const std::array<double, 4>& axes, const Vec3& p);

struct AuditEntry {
  std::string table;
  std::string entry;
  double max_abs_diff = 0.0;
  bool matches = false;  // max_abs_diff < 1e-10
};

/// Compares each printed table entry with the exact-jet forms at random chart
/// points and reports every entry, matching or not.
std::vector<AuditEntry> audit_printed_tables(int samples = 200, std::uint64_t seed = 1);

}  // namespace e4::printed
