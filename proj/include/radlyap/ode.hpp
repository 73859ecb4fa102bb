#pragma once

// Shooting engine for radial second-order equations
//
//     u'' + (N-1)/r u' + a(r) u = 0,
//
// i.e. -(r^{N-1} u')' = r^{N-1} a u, integrated piece by piece with an
// adaptive Dormand-Prince 5(4) stepper. Alongside (u, u') the state carries
// a Pruefer angle theta = atan2(u, r^{N-1} u') and the weighted mass
// int r^{N-1} u^2 dr. For a >= 0 the angle is nondecreasing in r and in the
// coefficient, which makes eigenvalue indexing and zero counting
// unambiguous: u vanishes exactly where theta crosses a multiple of pi, and
// r^{N-1} u' vanishes where theta crosses pi/2 modulo pi.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <numbers>
#include <vector>

#include <boost/numeric/odeint.hpp>

#include "radlyap/errors.hpp"

namespace radlyap {

using State = std::array<double, 4>;

enum StateIndex : std::size_t { kValue = 0, kDerivative = 1, kAngle = 2, kMass = 3 };

struct ShootingOptions {
  double start_radius = 1e-6;  // Taylor start, relative to the outer radius
  double rtol = 1e-10;
  double atol = 1e-14;
  double max_step = 0.02;        // relative to the outer radius
  double fallback_step = 1e-4;   // fixed RK4 step if the adaptive controller stalls
  double wavelength_fraction = 0.3;
  std::size_t max_steps = 2'000'000;
};

/// One piece of a piecewise coefficient a(r) on (lo, hi].
struct CoefficientPiece {
  double lo = 0.0;
  double hi = 0.0;
  double constant = 0.0;
  std::function<double(double)> fn;  // empty for constant pieces
  double sup_abs = 0.0;              // bound on |a| used for step control

  double operator()(double r) const { return fn ? fn(r) : constant; }
  bool is_constant() const { return !fn; }

  static CoefficientPiece make_constant(double lo, double hi, double value) {
    return {lo, hi, value, {}, std::abs(value)};
  }

  static CoefficientPiece make_function(double lo, double hi, std::function<double(double)> f) {
    CoefficientPiece piece{lo, hi, 0.0, std::move(f), 0.0};
    constexpr int kProbe = 64;
    for (int i = 0; i <= kProbe; ++i) {
      double r = lo + (hi - lo) * (i + 0.5) / (kProbe + 1);
      piece.sup_abs = std::max(piece.sup_abs, std::abs(piece.fn(r)));
    }
    piece.sup_abs *= 1.5;
    return piece;
  }
};

using Coefficient = std::vector<CoefficientPiece>;

struct RadialSample {
  double r = 0.0;
  double value = 0.0;
  double derivative = 0.0;
};

namespace detail {

inline double int_pow(double r, int n) {
  double out = 1.0;
  for (int i = 0; i < n; ++i) out *= r;
  return out;
}

struct LinearRadialRhs {
  int dimension;
  const CoefficientPiece* piece;

  void operator()(const State& x, State& dx, double r) const {
    const double a = (*piece)(r);
    const double u = x[kValue];
    const double v = x[kDerivative];
    const double weight = int_pow(r, dimension - 1);
    const double w = weight * v;
    dx[kValue] = v;
    dx[kDerivative] = (dimension == 1 ? 0.0 : -(dimension - 1) / r * v) - a * u;
    const double rho2 = u * u + w * w;
    dx[kAngle] = rho2 > 0.0 ? weight * (v * v + a * u * u) / rho2 : 0.0;
    dx[kMass] = weight * u * u;
  }
};

template <class Rhs>
inline State rk4_fixed(Rhs& rhs, State x, double r, double r_end, double h) {
  boost::numeric::odeint::runge_kutta4<State> stepper;
  while (r < r_end) {
    const double dt = std::min(h, r_end - r);
    stepper.do_step(rhs, x, r, dt);
    r = (dt == r_end - r) ? r_end : r + dt;
  }
  return x;
}

}  // namespace detail

/// Integrates `rhs` from lo to hi, calling obs(r, x) after every accepted
/// step. obs may return false to stop early; the function then returns
/// false. Steps are capped at `cap`.
template <class Rhs, class Observer>
bool integrate_segment(Rhs& rhs, State& x, double lo, double hi, double cap,
                       const ShootingOptions& opt, Observer&& obs, std::size_t& steps) {
  namespace odeint = boost::numeric::odeint;
  if (!(hi > lo)) return true;
  auto stepper = odeint::make_controlled(opt.atol, opt.rtol, odeint::runge_kutta_dopri5<State>{});
  double r = lo;
  double dt = std::min(cap, std::max(lo, (hi - lo) * 1e-3));
  dt = std::min(dt, hi - lo);
  while (r < hi) {
    if (++steps > opt.max_steps) throw Error(ErrorKind::StepFailure, "step budget exceeded");
    const double remaining = hi - r;
    double h = std::min({dt, cap, remaining});
    const bool last = (h >= remaining);
    const double r_before = r;
    auto result = stepper.try_step(rhs, x, r, h);
    if (result == odeint::success) {
      if (last) r = hi;
      for (double c : x)
        if (!std::isfinite(c)) throw Error(ErrorKind::StepFailure, "non-finite state");
      dt = h;
      if (!obs(r, x)) return false;
    } else {
      dt = h;
      if (dt < 1e-14 * std::max(1.0, std::abs(r_before))) {
        // The controller stalled: finish the segment with fixed RK4 steps.
        while (r < hi) {
          const double step_end = std::min(hi, r + opt.fallback_step);
          x = detail::rk4_fixed(rhs, x, r, step_end, opt.fallback_step);
          r = step_end;
          if (!obs(r, x)) return false;
        }
        return true;
      }
    }
  }
  return true;
}

struct TrajectoryPoint {
  double r = 0.0;
  State x{};
  std::size_t piece = 0;  // coefficient piece governing (r, next r]
};

/// Recorded solution of the linear radial equation with enough context to
/// re-integrate to any intermediate radius.
class RadialTrajectory {
 public:
  int dimension = 0;
  Coefficient coefficient;
  ShootingOptions options;
  std::vector<TrajectoryPoint> points;

  double start() const { return points.front().r; }
  double end() const { return points.back().r; }
  const State& end_state() const { return points.back().x; }

  RadialSample sample(std::size_t i) const {
    return {points[i].r, points[i].x[kValue], points[i].x[kDerivative]};
  }

  std::vector<RadialSample> samples() const {
    std::vector<RadialSample> out;
    out.reserve(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) out.push_back(sample(i));
    return out;
  }

  // Multiplies u and u' by `factor` (the equation is linear).
  void scale(double factor) {
    for (auto& p : points) {
      p.x[kValue] *= factor;
      p.x[kDerivative] *= factor;
      p.x[kMass] *= factor * factor;
    }
  }

  /// State at radius r, re-integrated from the nearest recorded point below.
  State state_at(double r) const {
    require(!points.empty(), "empty trajectory");
    if (r <= points.front().r) return points.front().x;
    if (r >= points.back().r) return points.back().x;
    auto it = std::upper_bound(points.begin(), points.end(), r,
                               [](double value, const TrajectoryPoint& p) { return value < p.r; });
    const TrajectoryPoint& from = *(it - 1);
    if (from.r == r) return from.x;
    State x = from.x;
    detail::LinearRadialRhs rhs{dimension, &coefficient[from.piece]};
    std::size_t steps = 0;
    integrate_segment(rhs, x, from.r, r, options.max_step, options,
                      [](double, const State&) { return true; }, steps);
    return x;
  }

  RadialSample sample_at(double r) const {
    State x = state_at(r);
    return {r, x[kValue], x[kDerivative]};
  }

  double max_abs_value() const {
    double m = 0.0;
    for (const auto& p : points) m = std::max(m, std::abs(p.x[kValue]));
    return m;
  }

  double max_abs_derivative() const {
    double m = 0.0;
    for (const auto& p : points) m = std::max(m, std::abs(p.x[kDerivative]));
    return m;
  }
};

namespace detail {

inline double step_cap(const CoefficientPiece& piece, double outer, const ShootingOptions& opt) {
  double cap = opt.max_step * outer;
  if (piece.sup_abs > 0.0) cap = std::min(cap, opt.wavelength_fraction / std::sqrt(piece.sup_abs));
  return cap;
}

}  // namespace detail

/// Integrates the linear radial equation across all pieces of `coefficient`
/// starting at `start` (inside the first piece) with initial state `init`.
/// When `record` is false only the first and last points are kept.
inline RadialTrajectory integrate_radial(int dimension, Coefficient coefficient, double start,
                                         const State& init, const ShootingOptions& opt,
                                         bool record = true) {
  require(dimension >= 1, "dimension must be >= 1");
  require(!coefficient.empty(), "empty coefficient");
  RadialTrajectory traj;
  traj.dimension = dimension;
  traj.coefficient = std::move(coefficient);
  traj.options = opt;
  const double outer = traj.coefficient.back().hi;
  State x = init;
  traj.points.push_back({start, x, 0});
  std::size_t steps = 0;
  for (std::size_t i = 0; i < traj.coefficient.size(); ++i) {
    const CoefficientPiece& piece = traj.coefficient[i];
    if (piece.hi <= start) continue;
    const double lo = std::max(piece.lo, start);
    traj.points.back().piece = i;
    detail::LinearRadialRhs rhs{dimension, &piece};
    integrate_segment(rhs, x, lo, piece.hi, detail::step_cap(piece, outer, opt), opt,
                      [&](double r, const State& s) {
                        if (record || r == piece.hi) traj.points.push_back({r, s, i});
                        return true;
                      },
                      steps);
  }
  return traj;
}

/// Regular Taylor data at r0 for a solution normalised by u(0) = 1.
inline State taylor_start(int dimension, double a0, double r0) {
  const double u = 1.0 - a0 * r0 * r0 / (2.0 * dimension);
  const double v = -a0 * r0 / dimension;
  const double w = detail::int_pow(r0, dimension - 1) * v;
  return {u, v, std::atan2(u, w), detail::int_pow(r0, dimension) / dimension};
}

/// Shoots from the origin (regular solution, u(0)=1, u'(0)=0).
inline RadialTrajectory shoot_from_origin(int dimension, Coefficient coefficient,
                                          const ShootingOptions& opt, bool record = true) {
  require(!coefficient.empty(), "empty coefficient");
  const double outer = coefficient.back().hi;
  double r0 = opt.start_radius * outer;
  double a0 = coefficient.front()(r0);
  if (!std::isfinite(a0) || std::abs(a0) > 1e150)
    throw Error(ErrorKind::SingularPotential, "coefficient not finite near the origin");
  // keep the dropped Taylor terms, O((a r0^2)^2), below roundoff
  if (std::abs(a0) * r0 * r0 > 1e-8) {
    r0 = 1e-4 / std::sqrt(std::abs(a0));
    a0 = coefficient.front()(r0);
  }
  return integrate_radial(dimension, std::move(coefficient), r0, taylor_start(dimension, a0, r0),
                          opt, record);
}

/// Shoots from an inner radius with u = 0, u' = 1 (annulus Dirichlet start).
inline RadialTrajectory shoot_from_inner(int dimension, Coefficient coefficient,
                                         const ShootingOptions& opt, bool record = true) {
  const double start = coefficient.front().lo;
  return integrate_radial(dimension, std::move(coefficient), start, State{0.0, 1.0, 0.0, 0.0},
                          opt, record);
}

/// Locates the zeros of u strictly inside (start, end] by bisection on every
/// sign change between recorded points.
inline std::vector<double> refine_zeros(const RadialTrajectory& traj, double tolerance = 1e-12) {
  std::vector<double> zeros;
  const auto& pts = traj.points;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    const double u0 = pts[i].x[kValue];
    const double u1 = pts[i + 1].x[kValue];
    if (i > 0 && u0 == 0.0) {
      zeros.push_back(pts[i].r);
      continue;
    }
    if (!(u0 * u1 < 0.0)) continue;
    double lo = pts[i].r;
    double hi = pts[i + 1].r;
    const double sign_lo = u0 > 0.0 ? 1.0 : -1.0;
    for (int iter = 0; iter < 200 && hi - lo > tolerance * std::max(1.0, hi); ++iter) {
      const double mid = 0.5 * (lo + hi);
      const double u = traj.state_at(mid)[kValue];
      if (u == 0.0) {
        lo = hi = mid;
        break;
      }
      if ((u > 0.0 ? 1.0 : -1.0) == sign_lo)
        lo = mid;
      else
        hi = mid;
    }
    zeros.push_back(0.5 * (lo + hi));
  }
  if (pts.size() > 1 && pts.back().x[kValue] == 0.0) zeros.push_back(pts.back().r);
  return zeros;
}

}  // namespace radlyap
