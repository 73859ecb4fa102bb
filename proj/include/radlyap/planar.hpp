#pragma once

// Closed-form planar profiles v_alpha and coefficients A_alpha on the unit
// disc. For r >= alpha
//     v(r) = alpha (1 - r^2)(3 - r^2) - log r,
//     A(r) = 16 alpha (1 - r^2) / v(r),
// and for r < alpha
//     v(r) = alpha (1 - r^2)(3 - r^2) - log alpha + (alpha^2 - r^2) / (2 alpha^2),
//     A(r) = (16 alpha (1 - r^2) + 2 / alpha^2) / v(r).
// v is C^1 across r = alpha, vanishes at r = 1, and solves
// v'' + v'/r + A v = 0 on the disc.

#include <cmath>
#include <numbers>

#include "radlyap/errors.hpp"

namespace radlyap::planar {

inline void check_alpha(double alpha) {
  require(alpha > 0.0 && alpha < 1.0, "alpha must lie in (0,1)");
}

// (1 - r^2) without cancellation near r = 1.
inline double one_minus_r2(double r) { return (1.0 - r) * (1.0 + r); }

inline double v_alpha(double alpha, double r) {
  check_alpha(alpha);
  const double poly = alpha * one_minus_r2(r) * (3.0 - r * r);
  if (r >= alpha) return poly - std::log(r);
  return poly - std::log(alpha) + (alpha * alpha - r * r) / (2.0 * alpha * alpha);
}

inline double v_alpha_derivative(double alpha, double r) {
  check_alpha(alpha);
  // d/dr [alpha (3 - 4 r^2 + r^4)] = alpha (4 r^3 - 8 r)
  const double poly = alpha * (4.0 * r * r * r - 8.0 * r);
  if (r >= alpha) return poly - 1.0 / r;
  return poly - r / (alpha * alpha);
}

// A jumps at r = alpha, so callers integrating one side pick the branch.
inline double a_alpha_branch(double alpha, double r, bool outer) {
  check_alpha(alpha);
  const double s = one_minus_r2(r);
  if (outer) {
    if (r >= 1.0) return 32.0 * alpha / (4.0 * alpha + 1.0);  // limit at the boundary
    return 16.0 * alpha * s / (alpha * s * (3.0 - r * r) - std::log1p(r - 1.0));
  }
  const double v = alpha * s * (3.0 - r * r) - std::log(alpha) + (alpha * alpha - r * r) / (2.0 * alpha * alpha);
  return (16.0 * alpha * s + 2.0 / (alpha * alpha)) / v;
}

inline double a_alpha(double alpha, double r) { return a_alpha_branch(alpha, r, r > alpha); }

// Integrand of int_0^alpha r A(r) dr after r = alpha t, i.e.
//     alpha^2 t A(alpha t) = t (16 alpha^3 (1 - alpha^2 t^2) + 2) / v(alpha t),
// which stays representable for tiny alpha.
inline double inner_weighted_scaled(double alpha, double t) {
  const double r = alpha * t;
  const double s = one_minus_r2(r);
  const double v = alpha * s * (3.0 - r * r) - std::log(alpha) + 0.5 * (1.0 - t * t);
  return t * (16.0 * alpha * alpha * alpha * s + 2.0) / v;
}

/// Closed-form upper bound pi (16 alpha^3 + 2) / (-log alpha) + 32 pi alpha (1 - alpha^2)
/// for the integral of A_alpha over the unit disc.
inline double a_alpha_integral_bound(double alpha) {
  check_alpha(alpha);
  constexpr double pi = std::numbers::pi;
  return pi * (16.0 * alpha * alpha * alpha + 2.0) / (-std::log(alpha)) +
         32.0 * pi * alpha * (1.0 - alpha * alpha);
}

}  // namespace radlyap::planar
