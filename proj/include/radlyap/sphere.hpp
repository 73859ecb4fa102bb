#pragma once

#include <numbers>

#include "radlyap/errors.hpp"

namespace radlyap {

// Surface measure of the unit sphere S^{N-1} in R^N, from the recursion
// omega_N = 2 pi omega_{N-2} / (N - 2) with omega_1 = 2, omega_2 = 2 pi.
inline double sphere_measure(int dimension) {
  require(dimension >= 1, "dimension must be >= 1");
  double omega = (dimension % 2 == 1) ? 2.0 : 2.0 * std::numbers::pi;
  for (int n = (dimension % 2 == 1) ? 3 : 4; n <= dimension; n += 2)
    omega *= 2.0 * std::numbers::pi / static_cast<double>(n - 2);
  return omega;
}

inline double ball_volume(int dimension, double radius) {
  double v = sphere_measure(dimension) / dimension;
  for (int i = 0; i < dimension; ++i) v *= radius;
  return v;
}

inline double shell_volume(int dimension, double inner, double outer) {
  return ball_volume(dimension, outer) - ball_volume(dimension, inner);
}

}  // namespace radlyap
