#pragma once

// Radial Dirichlet and Neumann eigenvalues on balls and annuli by shooting.
//
// The k-th eigenvalue is isolated through the Pruefer angle at the outer
// radius, which increases monotonically with the spectral parameter:
//   Neumann on B_1:        theta(1)  = pi/2 + k pi
//   Dirichlet on B_R:      theta(R)  = pi            (first eigenvalue)
//   Dirichlet on A(a, b):  theta(b)  = pi            (start theta(a) = 0)
// The parameter is scanned upward (step doubling after each miss) until the
// target is passed, then bisected to a relative tolerance.

#include <cmath>
#include <numbers>
#include <variant>
#include <vector>

#include "radlyap/errors.hpp"
#include "radlyap/ode.hpp"
#include "radlyap/sphere.hpp"

namespace radlyap {

enum class BoundaryCondition { Dirichlet, Neumann };

struct Ball {
  double radius = 1.0;
};

struct Annulus {
  double inner = 0.0;
  double outer = 1.0;
};

struct SpectralProblem {
  int dimension = 2;
  std::variant<Ball, Annulus> domain = Ball{};
  BoundaryCondition bc = BoundaryCondition::Dirichlet;

  void validate() const {
    require(dimension >= 2, "dimension must be >= 2");
    if (const auto* ball = std::get_if<Ball>(&domain)) {
      require(ball->radius > 0.0, "ball radius must be positive");
    } else {
      const auto& ann = std::get<Annulus>(domain);
      require(ann.inner > 0.0 && ann.outer > ann.inner, "annulus needs 0 < inner < outer");
      require(bc == BoundaryCondition::Dirichlet, "Neumann conditions are only offered on balls");
    }
  }
};

struct SpectralConfig {
  ShootingOptions shooting;
  double scan_step = 1.0;
  int scan_budget = 200;
  double bisection_rtol = 1e-10;
  int max_index = 10;
  double min_annulus_width = 1e-4;
};

struct EigenPair {
  double eigenvalue = 0.0;
  int index = 0;
  int dimension = 0;
  double inner = 0.0;  // 0 for balls
  double outer = 1.0;
  BoundaryCondition bc = BoundaryCondition::Neumann;
  double sphere_measure = 0.0;
  std::vector<double> zeros;  // interior zeros, ascending
  RadialTrajectory trajectory;  // normalised: int omega r^{N-1} phi^2 = 1

  std::vector<RadialSample> samples() const { return trajectory.samples(); }
  RadialSample at(double r) const { return trajectory.sample_at(r); }
  double end_derivative() const { return trajectory.end_state()[kDerivative]; }
};

namespace detail {

inline Coefficient constant_coefficient(double lo, double hi, double lambda) {
  return {CoefficientPiece::make_constant(lo, hi, lambda)};
}

inline double end_angle_ball(int n, double radius, double lambda, const ShootingOptions& opt) {
  return shoot_from_origin(n, constant_coefficient(0.0, radius, lambda), opt, false).end_state()[kAngle];
}

inline double end_angle_annulus(int n, double inner, double outer, double lambda,
                                const ShootingOptions& opt) {
  return shoot_from_inner(n, constant_coefficient(inner, outer, lambda), opt, false).end_state()[kAngle];
}

/// Smallest lambda >= lo with angle(lambda) = target, for a nondecreasing
/// angle function with angle(lo) < target.
template <class Angle>
double solve_angle(Angle&& angle, double target, double lo, const SpectralConfig& cfg) {
  double step = cfg.scan_step;
  double hi = lo + step;
  int scans = 0;
  while (angle(hi) < target) {
    if (++scans > cfg.scan_budget)
      throw Error(ErrorKind::NonConvergence, "could not bracket eigenvalue within the scan budget");
    lo = hi;
    step *= 2.0;
    hi = lo + step;
  }
  for (int iter = 0; iter < 400 && hi - lo > cfg.bisection_rtol * hi; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (angle(mid) < target)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

inline void normalise(EigenPair& pair) {
  const double mass = pair.trajectory.end_state()[kMass];
  require(mass > 0.0, "eigenfunction has zero mass");
  pair.trajectory.scale(1.0 / std::sqrt(pair.sphere_measure * mass));
}

inline std::vector<double> interior_zeros(const RadialTrajectory& traj, double lo, double hi) {
  std::vector<double> out;
  const double margin = 1e-9 * (hi - lo);
  for (double z : refine_zeros(traj))
    if (z > lo + margin && z < hi - margin) out.push_back(z);
  return out;
}

}  // namespace detail

/// k-th radial Neumann eigenpair on the unit ball; mu_0 = 0 exactly.
inline EigenPair neumann_radial_eigen(int dimension, int k, const SpectralConfig& cfg = {}) {
  require(dimension >= 2, "dimension must be >= 2");
  require(k >= 0 && k <= cfg.max_index, "eigenvalue index out of range");
  const ShootingOptions& opt = cfg.shooting;
  double mu = 0.0;
  if (k > 0) {
    const double target = std::numbers::pi / 2.0 + k * std::numbers::pi;
    mu = detail::solve_angle([&](double lam) { return detail::end_angle_ball(dimension, 1.0, lam, opt); },
                             target, 0.0, cfg);
  }
  EigenPair pair;
  pair.eigenvalue = mu;
  pair.index = k;
  pair.dimension = dimension;
  pair.bc = BoundaryCondition::Neumann;
  pair.sphere_measure = sphere_measure(dimension);
  pair.trajectory = shoot_from_origin(dimension, detail::constant_coefficient(0.0, 1.0, mu), opt);
  detail::normalise(pair);
  pair.zeros = detail::interior_zeros(pair.trajectory, 0.0, 1.0);
  if (static_cast<int>(pair.zeros.size()) != k)
    throw Error(ErrorKind::NonConvergence, "Neumann eigenfunction has the wrong number of zeros");
  return pair;
}

/// First Dirichlet eigenpair of B_R; the eigenfunction is positive.
inline EigenPair dirichlet_ball_lambda1(int dimension, double radius, const SpectralConfig& cfg = {}) {
  SpectralProblem{dimension, Ball{radius}, BoundaryCondition::Dirichlet}.validate();
  const ShootingOptions& opt = cfg.shooting;
  SpectralConfig scaled = cfg;
  scaled.scan_step = cfg.scan_step / (radius * radius);
  const double lambda = detail::solve_angle(
      [&](double lam) { return detail::end_angle_ball(dimension, radius, lam, opt); }, std::numbers::pi,
      0.0, scaled);
  EigenPair pair;
  pair.eigenvalue = lambda;
  pair.index = 1;
  pair.dimension = dimension;
  pair.outer = radius;
  pair.bc = BoundaryCondition::Dirichlet;
  pair.sphere_measure = sphere_measure(dimension);
  pair.trajectory = shoot_from_origin(dimension, detail::constant_coefficient(0.0, radius, lambda), opt);
  detail::normalise(pair);
  pair.zeros = detail::interior_zeros(pair.trajectory, 0.0, radius);
  if (!pair.zeros.empty()) throw Error(ErrorKind::NonConvergence, "first Dirichlet eigenfunction changes sign");
  return pair;
}

/// First Dirichlet eigenpair of the annulus A(inner, outer); the
/// eigenfunction is positive with a positive derivative at the inner radius.
inline EigenPair dirichlet_annulus_lambda1(int dimension, double inner, double outer,
                                           const SpectralConfig& cfg = {}) {
  SpectralProblem{dimension, Annulus{inner, outer}, BoundaryCondition::Dirichlet}.validate();
  if (outer - inner < cfg.min_annulus_width)
    throw Error(ErrorKind::DegenerateAnnulus, "annulus width below the configured minimum");
  const ShootingOptions& opt = cfg.shooting;
  SpectralConfig scaled = cfg;
  const double width = outer - inner;
  scaled.scan_step = cfg.scan_step / (width * width);
  const double lambda = detail::solve_angle(
      [&](double lam) { return detail::end_angle_annulus(dimension, inner, outer, lam, opt); },
      std::numbers::pi, 0.0, scaled);
  EigenPair pair;
  pair.eigenvalue = lambda;
  pair.index = 1;
  pair.dimension = dimension;
  pair.inner = inner;
  pair.outer = outer;
  pair.bc = BoundaryCondition::Dirichlet;
  pair.sphere_measure = sphere_measure(dimension);
  pair.trajectory = shoot_from_inner(dimension, detail::constant_coefficient(inner, outer, lambda), opt);
  detail::normalise(pair);
  pair.zeros = detail::interior_zeros(pair.trajectory, inner, outer);
  if (!pair.zeros.empty()) throw Error(ErrorKind::NonConvergence, "first annulus eigenfunction changes sign");
  return pair;
}

/// Re-derives the interior zeros of a converged Neumann eigenpair by
/// bisection on the recorded sign changes.
inline std::vector<double> eigen_zeros(const EigenPair& pair) {
  require(pair.bc == BoundaryCondition::Neumann, "eigen_zeros expects a Neumann eigenpair");
  std::vector<double> zeros = detail::interior_zeros(pair.trajectory, pair.inner, pair.outer);
  if (static_cast<int>(zeros.size()) != pair.index)
    throw Error(ErrorKind::ZeroCountMismatch, "found " + std::to_string(zeros.size()) + " zeros for index " +
                                                   std::to_string(pair.index));
  return zeros;
}

/// Radial Neumann eigenvalues mu_0 < ... < mu_kmax.
inline std::vector<double> neumann_spectrum(int dimension, int kmax, const SpectralConfig& cfg = {}) {
  std::vector<double> mu;
  for (int k = 0; k <= kmax; ++k) mu.push_back(neumann_radial_eigen(dimension, k, cfg).eigenvalue);
  return mu;
}

}  // namespace radlyap
