#pragma once

// Rayleigh-quotient constants for the embedding H^1_0 -> L^q, q = 2p/(p-1):
//   alpha(N,p)  min over radial w on B_1, w(1) = 0, of ||grad w||_2^2 / ||w||_q^2
//   C_p         the same on (0,1) with w(0) = w(1) = 0
//   C_N         the critical (q = 2N/(N-2)) infimum, not attained
// plus the zero-gap thresholds derived from them.

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include <boost/numeric/odeint.hpp>

#include "radlyap/errors.hpp"
#include "radlyap/potential.hpp"
#include "radlyap/sphere.hpp"

namespace radlyap {

enum class SobolevMethod { DiscretizedMinimization, EulerLagrangeShooting };

inline std::string to_string(SobolevMethod m) {
  return m == SobolevMethod::DiscretizedMinimization ? "discretized" : "shooting";
}

/// q = 2p/(p-1); p = inf gives q = 2.
inline double sobolev_exponent(double p) {
  require(p > 1.0, "p must exceed 1");
  return std::isinf(p) ? 2.0 : 2.0 * p / (p - 1.0);
}

struct SobolevConfig {
  int grid = 4000;                 // finite elements
  double fem_rtol = 1e-10;         // relative quotient change that stops the iteration
  int fem_max_iter = 200000;
  double shooting_tol = 1e-12;     // odeint tolerances
  double bisection_rtol = 1e-13;
  double agreement_rtol = 1e-3;
  double start_fraction = 1e-6;    // Taylor start at start_fraction * radius
};

struct SobolevConstant {
  double value = 0.0;        // shooting value, reported
  double discretized = 0.0;
  double shooting = 0.0;
  double relative_gap = 0.0;
  double multiplier = 0.0;   // Euler-Lagrange multiplier found by shooting
  int iterations = 0;        // gradient iterations of the discretized method
  double q = 2.0;
};

namespace detail {

// Piecewise-linear elements on [0, length] with weight scale * r^power.
// The right end is always clamped; the left end is clamped on intervals and
// free at the centre of a ball.
struct WeightedFem {
  std::vector<double> nodes;
  double power = 0.0;
  double scale = 1.0;
  bool clamp_left = false;

  double weight(double r) const { return scale * std::pow(r, power); }

  // int over the element of weight
  double element_weight(std::size_t e) const {
    const double a = nodes[e];
    const double b = nodes[e + 1];
    return scale * (std::pow(b, power + 1.0) - std::pow(a, power + 1.0)) / (power + 1.0);
  }
};

inline WeightedFem make_fem(double length, int elements, double power, double scale, bool clamp_left) {
  require(elements >= 10, "grid too coarse");
  WeightedFem fem;
  fem.nodes.resize(elements + 1);
  for (int i = 0; i <= elements; ++i) fem.nodes[i] = length * i / elements;
  fem.power = power;
  fem.scale = scale;
  fem.clamp_left = clamp_left;
  return fem;
}

constexpr std::array<double, 3> kGaussX{-0.7745966692414834, 0.0, 0.7745966692414834};
constexpr std::array<double, 3> kGaussW{5.0 / 9.0, 8.0 / 9.0, 5.0 / 9.0};

struct FemQuotient {
  double energy = 0.0;  // w^T K w
  double power_sum = 0.0;  // int weight |w|^q
};

// Tridiagonal stiffness as (diag, off) with off[i] coupling i and i+1.
inline void stiffness(const WeightedFem& fem, std::vector<double>& diag, std::vector<double>& off) {
  const std::size_t n = fem.nodes.size();
  diag.assign(n, 0.0);
  off.assign(n - 1, 0.0);
  for (std::size_t e = 0; e + 1 < n; ++e) {
    const double h = fem.nodes[e + 1] - fem.nodes[e];
    const double k = fem.element_weight(e) / (h * h);
    diag[e] += k;
    diag[e + 1] += k;
    off[e] -= k;
  }
}

inline double power_sum(const WeightedFem& fem, const std::vector<double>& w, double q) {
  double total = 0.0;
  for (std::size_t e = 0; e + 1 < fem.nodes.size(); ++e) {
    const double a = fem.nodes[e];
    const double h = fem.nodes[e + 1] - a;
    for (int g = 0; g < 3; ++g) {
      const double s = 0.5 * (kGaussX[g] + 1.0);
      const double val = (1.0 - s) * w[e] + s * w[e + 1];
      total += 0.5 * h * kGaussW[g] * fem.weight(a + s * h) * std::pow(std::abs(val), q);
    }
  }
  return total;
}

// Gradient of power_sum / q with respect to the nodal values.
inline std::vector<double> power_gradient(const WeightedFem& fem, const std::vector<double>& w, double q) {
  std::vector<double> grad(w.size(), 0.0);
  for (std::size_t e = 0; e + 1 < fem.nodes.size(); ++e) {
    const double a = fem.nodes[e];
    const double h = fem.nodes[e + 1] - a;
    for (int g = 0; g < 3; ++g) {
      const double s = 0.5 * (kGaussX[g] + 1.0);
      const double val = (1.0 - s) * w[e] + s * w[e + 1];
      const double f = 0.5 * h * kGaussW[g] * fem.weight(a + s * h) * std::pow(std::abs(val), q - 2.0) * val;
      grad[e] += (1.0 - s) * f;
      grad[e + 1] += s * f;
    }
  }
  return grad;
}

inline double energy(const std::vector<double>& diag, const std::vector<double>& off, const std::vector<double>& w) {
  double total = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) total += diag[i] * w[i] * w[i];
  for (std::size_t i = 0; i + 1 < w.size(); ++i) total += 2.0 * off[i] * w[i] * w[i + 1];
  return total;
}

// Thomas algorithm on the free nodes [first, last].
inline std::vector<double> solve_tridiagonal(const std::vector<double>& diag, const std::vector<double>& off,
                                             const std::vector<double>& rhs, std::size_t first, std::size_t last) {
  const std::size_t m = last - first + 1;
  std::vector<double> c(m, 0.0), d(m, 0.0), x(rhs.size(), 0.0);
  for (std::size_t j = 0; j < m; ++j) {
    const std::size_t i = first + j;
    const double lower = j > 0 ? off[i - 1] : 0.0;
    const double denom = diag[i] - (j > 0 ? lower * c[j - 1] : 0.0);
    c[j] = j + 1 < m ? off[i] / denom : 0.0;
    d[j] = (rhs[i] - (j > 0 ? lower * d[j - 1] : 0.0)) / denom;
  }
  for (std::size_t j = m; j-- > 0;) {
    const std::size_t i = first + j;
    x[i] = d[j] - (j + 1 < m ? c[j] * x[i + 1] : 0.0);
  }
  return x;
}

struct FemMinimum {
  double quotient = 0.0;
  int iterations = 0;
  std::vector<double> profile;
};

// Normalised gradient iteration in the stiffness metric on the sphere
// int weight |w|^q = 1. A unit step is the nonlinear inverse iteration
// w <- Q K^{-1} (|w|^{q-2} w); the step is halved whenever Q fails to drop.
inline FemMinimum minimise_quotient(const WeightedFem& fem, double q, const SobolevConfig& cfg) {
  const std::size_t n = fem.nodes.size();
  const std::size_t first = fem.clamp_left ? 1 : 0;
  const std::size_t last = n - 2;
  std::vector<double> diag, off;
  stiffness(fem, diag, off);

  const double length = fem.nodes.back();
  std::vector<double> w(n, 0.0);
  for (std::size_t i = first; i <= last; ++i) {
    const double x = fem.nodes[i] / length;
    w[i] = fem.clamp_left ? x * (1.0 - x) : 1.0 - x * x;
  }
  auto normalise = [&](std::vector<double>& v) {
    const double s = std::pow(power_sum(fem, v, q), 1.0 / q);
    for (double& x : v) x /= s;
  };
  normalise(w);
  double quotient = energy(diag, off, w);
  double tau = 1.0;
  FemMinimum out;
  for (int iter = 1; iter <= cfg.fem_max_iter; ++iter) {
    const std::vector<double> grad = power_gradient(fem, w, q);
    const std::vector<double> z = solve_tridiagonal(diag, off, grad, first, last);
    std::vector<double> trial(n, 0.0);
    for (std::size_t i = first; i <= last; ++i) trial[i] = w[i] - tau * (w[i] - quotient * z[i]);
    normalise(trial);
    const double next = energy(diag, off, trial);
    if (next < quotient) {
      const double change = (quotient - next) / next;
      w = std::move(trial);
      quotient = next;
      tau = std::min(1.0, 2.0 * tau);
      if (change < cfg.fem_rtol) {
        out.iterations = iter;
        out.quotient = quotient;
        out.profile = std::move(w);
        return out;
      }
    } else {
      tau *= 0.5;
      if (tau < 1e-12) {
        // no descent left at double precision
        out.iterations = iter;
        out.quotient = quotient;
        out.profile = std::move(w);
        return out;
      }
    }
  }
  throw Error(ErrorKind::NonConvergence, "quotient iteration did not settle");
}

// Euler-Lagrange state (w, w', int weight |w|^q).
using ElState = std::array<double, 3>;

struct ElResult {
  bool crossed = false;  // w changed sign strictly inside the interval
  ElState end{};
};

inline ElResult integrate_el(double power, double lambda, double q, double r0, double length, ElState x,
                             const SobolevConfig& cfg) {
  namespace odeint = boost::numeric::odeint;
  auto rhs = [&](const ElState& s, ElState& ds, double r) {
    const double nl = std::pow(std::abs(s[0]), q - 2.0) * s[0];
    ds[0] = s[1];
    ds[1] = (power > 0.0 ? -power / r * s[1] : 0.0) - lambda * nl;
    ds[2] = std::pow(r, power) * std::pow(std::abs(s[0]), q);
  };
  ElResult out;
  const double w0 = x[0];
  auto obs = [&](const ElState& s, double r) {
    if (r < length && s[0] * w0 < 0.0) out.crossed = true;
  };
  odeint::integrate_adaptive(
      odeint::make_controlled(cfg.shooting_tol, cfg.shooting_tol, odeint::runge_kutta_dopri5<ElState>{}), rhs, x,
      r0, length, 1e-3 * (length - r0), obs);
  out.end = x;
  return out;
}

// Smallest multiplier whose solution first vanishes at `length`. The
// solution at a given multiplier is positive on (0, length) exactly when
// the multiplier is below the target.
template <class Shoot>
double bisect_multiplier(Shoot&& positive_up_to_end, double guess, const SobolevConfig& cfg) {
  double lo = guess;
  double hi = guess;
  while (!positive_up_to_end(lo)) lo *= 0.5;
  while (positive_up_to_end(hi)) hi *= 2.0;
  for (int iter = 0; iter < 300 && hi - lo > cfg.bisection_rtol * hi; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (positive_up_to_end(mid))
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

struct ElMinimum {
  double quotient = 0.0;
  double multiplier = 0.0;
};

// Ball: -(r^{N-1} w')' = lambda r^{N-1} w^{q-1}, w(0) = 1, w'(0) = 0.
// At the solution ||grad w||^2 = lambda I with I = omega int r^{N-1} w^q, so
// the quotient is lambda I^{1 - 2/q}.
inline ElMinimum shoot_ball(int n, double q, double radius, const SobolevConfig& cfg) {
  const double power = n - 1.0;
  const double r0 = cfg.start_fraction * radius;
  auto start = [&](double lambda) {
    // Taylor start; the q-integral from 0 to r0 is r0^N / N to leading order
    return ElState{1.0 - lambda * r0 * r0 / (2.0 * n), -lambda * r0 / n, std::pow(r0, n) / n};
  };
  auto positive = [&](double lambda) {
    const ElResult res = integrate_el(power, lambda, q, r0, radius, start(lambda), cfg);
    return !res.crossed && res.end[0] > 0.0;
  };
  const double guess = std::pow(2.4 / radius, 2.0);
  const double lambda = bisect_multiplier(positive, guess, cfg);
  const ElResult res = integrate_el(power, lambda, q, r0, radius, start(lambda), cfg);
  const double mass = sphere_measure(n) * res.end[2];
  return {lambda * std::pow(mass, 1.0 - 2.0 / q), lambda};
}

// Interval (0, length): -w'' = lambda |w|^{q-2} w, w(0) = 0, w'(0) = 1.
inline ElMinimum shoot_interval(double q, double length, const SobolevConfig& cfg) {
  // the sign test starts just right of 0, where w is positive
  auto positive = [&](double lambda) {
    const double h = 1e-9 * length;
    const ElResult res = integrate_el(0.0, lambda, q, h, length, ElState{h, 1.0, 0.0}, cfg);
    return !res.crossed && res.end[0] > 0.0;
  };
  const double guess = std::pow(std::numbers::pi / length, 2.0);
  const double lambda = bisect_multiplier(positive, guess, cfg);
  const ElResult res = integrate_el(0.0, lambda, q, 0.0, length, ElState{0.0, 1.0, 0.0}, cfg);
  return {lambda * std::pow(res.end[2], 1.0 - 2.0 / q), lambda};
}

inline SobolevConstant combine(double fem, int iterations, const ElMinimum& el, double q, const SobolevConfig& cfg,
                               const char* what) {
  SobolevConstant out;
  out.discretized = fem;
  out.shooting = el.quotient;
  out.value = el.quotient;
  out.multiplier = el.multiplier;
  out.iterations = iterations;
  out.q = q;
  out.relative_gap = std::abs(fem - el.quotient) / el.quotient;
  if (out.relative_gap > cfg.agreement_rtol)
    throw Error(ErrorKind::MethodDisagreement,
                std::string(what) + ": discretized and shooting values differ by " + std::to_string(out.relative_gap));
  return out;
}

}  // namespace detail

/// Radial ball constant on B_radius (alpha(N,p) for radius 1).
inline SobolevConstant alpha_constant(int dimension, double p, double radius = 1.0, const SobolevConfig& cfg = {}) {
  require(dimension >= 2, "dimension must be >= 2");
  require(p > dimension / 2.0, "alpha(N,p) needs p > N/2");
  require(radius > 0.0, "radius must be positive");
  const double q = sobolev_exponent(p);
  const auto fem = detail::make_fem(radius, cfg.grid, dimension - 1.0, sphere_measure(dimension), false);
  const detail::FemMinimum disc = detail::minimise_quotient(fem, q, cfg);
  const detail::ElMinimum el = detail::shoot_ball(dimension, q, radius, cfg);
  return detail::combine(disc.quotient, disc.iterations, el, q, cfg, "alpha");
}

/// One-dimensional constant on (lo, hi) (C_p for the unit interval).
inline SobolevConstant c_p_interval(double p, double lo = 0.0, double hi = 1.0, const SobolevConfig& cfg = {}) {
  require(p > 1.0, "C_p needs p > 1");
  require(hi > lo, "interval must be nonempty");
  const double q = sobolev_exponent(p);
  // translation invariant: work on (0, hi - lo)
  const double length = hi - lo;
  const auto fem = detail::make_fem(length, cfg.grid, 0.0, 1.0, true);
  const detail::FemMinimum disc = detail::minimise_quotient(fem, q, cfg);
  const detail::ElMinimum el = detail::shoot_interval(q, length, cfg);
  return detail::combine(disc.quotient, disc.iterations, el, q, cfg, "C_p");
}

/// Value of one method only (no agreement check).
inline double alpha_constant_by(SobolevMethod method, int dimension, double p, double radius = 1.0,
                                const SobolevConfig& cfg = {}) {
  require(p > dimension / 2.0, "alpha(N,p) needs p > N/2");
  const double q = sobolev_exponent(p);
  if (method == SobolevMethod::EulerLagrangeShooting) return detail::shoot_ball(dimension, q, radius, cfg).quotient;
  const auto fem = detail::make_fem(radius, cfg.grid, dimension - 1.0, sphere_measure(dimension), false);
  return detail::minimise_quotient(fem, q, cfg).quotient;
}

inline double c_p_by(SobolevMethod method, double p, double length = 1.0, const SobolevConfig& cfg = {}) {
  const double q = sobolev_exponent(p);
  if (method == SobolevMethod::EulerLagrangeShooting) return detail::shoot_interval(q, length, cfg).quotient;
  return detail::minimise_quotient(detail::make_fem(length, cfg.grid, 0.0, 1.0, true), q, cfg).quotient;
}

// ---------------------------------------------------------------------------

struct GapBounds {
  double M = 0.0;
  double epsilon1 = 0.0;
  double epsilon2 = 0.0;
  double alpha = 0.0;
  double c_p = 0.0;
};

/// Thresholds from the two Rayleigh constants: no zero of a solution with
/// ||a||_p <= M lies below epsilon1 and no two zeros are closer than epsilon2.
inline GapBounds gap_bounds_from(int dimension, double p, double M, double alpha, double c_p) {
  require(p > dimension / 2.0, "gap bounds need p > N/2");
  require(M > 0.0, "norm budget must be positive");
  GapBounds g;
  g.M = M;
  g.alpha = alpha;
  g.c_p = c_p;
  const double n = dimension;
  const bool inf = std::isinf(p);
  const double e1 = inf ? 0.5 : p / (2.0 * p - n);
  const double e2 = inf ? 0.5 : p / (2.0 * p - 1.0);
  const double inv_p = inf ? 0.0 : 1.0 / p;
  g.epsilon1 = std::min(1.0, std::pow(alpha / M, e1));
  const double base = std::pow(sphere_measure(dimension), inv_p) * std::pow(g.epsilon1, n - 1.0) * c_p / M;
  g.epsilon2 = std::min(1.0, std::pow(base, e2));
  return g;
}

inline GapBounds gap_bounds(int dimension, double p, double M, const SobolevConfig& cfg = {}) {
  return gap_bounds_from(dimension, p, M, alpha_constant(dimension, p, 1.0, cfg).value,
                         c_p_interval(p, 0.0, 1.0, cfg).value);
}

// ---------------------------------------------------------------------------
// Critical exponent.

namespace detail {

// e^{-1/t} / (e^{-1/t} + e^{-1/(1-t)}) and its derivative, t in (0,1).
inline double smooth_step(double t) {
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return 1.0;
  const double a = std::exp(-1.0 / t);
  const double b = std::exp(-1.0 / (1.0 - t));
  return a / (a + b);
}

inline double smooth_step_derivative(double t) {
  if (t <= 0.0 || t >= 1.0) return 0.0;
  const double a = std::exp(-1.0 / t);
  const double b = std::exp(-1.0 / (1.0 - t));
  const double da = a / (t * t);
  const double db = -b / ((1.0 - t) * (1.0 - t));
  return (da * b - a * db) / ((a + b) * (a + b));
}

}  // namespace detail

/// Radial bump: 1 on [0, 1/2], 0 at 1, C^infinity.
inline double cutoff(double r) { return detail::smooth_step(2.0 * (1.0 - r)); }
inline double cutoff_derivative(double r) { return -2.0 * detail::smooth_step_derivative(2.0 * (1.0 - r)); }

/// Critical quotient of w(r) = (1 + lambda^2 (r/R)^2)^{-(N-2)/2} cutoff(r/R) on B_R.
inline double concentration_quotient(int dimension, double lambda, double radius = 1.0) {
  require(dimension >= 3, "the critical quotient needs N >= 3");
  require(lambda > 0.0 && radius > 0.0, "lambda and radius must be positive");
  const double n = dimension;
  const double q = 2.0 * n / (n - 2.0);
  const double omega = sphere_measure(dimension);
  auto w = [&](double s) { return std::pow(1.0 + lambda * lambda * s * s, -(n - 2.0) / 2.0); };
  auto dw = [&](double s) {
    return -(n - 2.0) * lambda * lambda * s * std::pow(1.0 + lambda * lambda * s * s, -n / 2.0);
  };
  // work in s = r / R and rescale
  auto grad = [&](double s) {
    const double d = dw(s) * cutoff(s) + w(s) * cutoff_derivative(s);
    return std::pow(s, n - 1.0) * d * d;
  };
  auto mass = [&](double s) { return std::pow(s, n - 1.0) * std::pow(w(s) * cutoff(s), q); };
  std::vector<double> breaks{0.0};
  for (double b = 1.0 / lambda; b < 0.5; b *= 4.0) breaks.push_back(b);
  breaks.push_back(0.5);
  breaks.push_back(1.0);
  double g = 0.0;
  double m = 0.0;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    g += detail::gk_integrate(grad, breaks[i], breaks[i + 1], 1e-12);
    m += detail::gk_integrate(mass, breaks[i], breaks[i + 1], 1e-12);
  }
  // ||grad||^2 ~ R^{N-2}, ||w||_q^2 ~ R^{2N/q} = R^{N-2}
  const double gr = omega * g * std::pow(radius, n - 2.0);
  const double mr = std::pow(omega * m * std::pow(radius, n), 2.0 / q);
  return gr / mr;
}

/// Sharp whole-space constant pi N (N-2) (Gamma(N/2)/Gamma(N))^{2/N}, the
/// value the critical infimum should approach.
inline double sharp_sobolev_constant(int dimension) {
  const double n = dimension;
  return std::numbers::pi * n * (n - 2.0) * std::pow(std::tgamma(n / 2.0) / std::tgamma(n), 2.0 / n);
}

struct CriticalConstant {
  double value = 0.0;  // extrapolated intercept
  bool attained = false;
  std::vector<double> lambdas;
  std::vector<double> quotients;
  double slope = 0.0;          // fitted coefficient of lambda^{-(N-2)}
  double fit_residual = 0.0;   // max misfit on the three fitted points
  bool decreasing_tail = true; // quotients decrease over the fitted points
  double reference = 0.0;      // sharp_sobolev_constant(N)
};

inline CriticalConstant critical_constant(int dimension, const std::vector<double>& lambdas = {1, 2, 4, 8, 16, 32, 64}) {
  require(dimension >= 3, "the critical constant needs N >= 3");
  require(lambdas.size() >= 3, "need at least three concentration parameters");
  CriticalConstant out;
  out.lambdas = lambdas;
  std::sort(out.lambdas.begin(), out.lambdas.end());
  for (double l : out.lambdas) out.quotients.push_back(concentration_quotient(dimension, l));
  const std::size_t m = out.lambdas.size();
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  std::array<double, 3> xs{}, ys{};
  for (std::size_t j = 0; j < 3; ++j) {
    xs[j] = std::pow(out.lambdas[m - 3 + j], -(dimension - 2.0));
    ys[j] = out.quotients[m - 3 + j];
    sx += xs[j];
    sy += ys[j];
    sxx += xs[j] * xs[j];
    sxy += xs[j] * ys[j];
  }
  out.slope = (3.0 * sxy - sx * sy) / (3.0 * sxx - sx * sx);
  out.value = (sy - out.slope * sx) / 3.0;
  for (std::size_t j = 0; j < 3; ++j)
    out.fit_residual = std::max(out.fit_residual, std::abs(out.value + out.slope * xs[j] - ys[j]));
  for (std::size_t j = m - 3; j + 1 < m; ++j)
    if (out.quotients[j + 1] >= out.quotients[j]) out.decreasing_tail = false;
  out.reference = sharp_sobolev_constant(dimension);
  return out;
}

/// Radius eps* with C_N = mu (omega_N eps^N / N)^{2/N}; infinite when mu = 0.
inline double critical_radius(int dimension, double c_n, double mu) {
  require(c_n > 0.0 && mu >= 0.0, "need C_N > 0 and mu >= 0");
  if (mu == 0.0) return std::numeric_limits<double>::infinity();
  const double n = dimension;
  return std::pow(n / sphere_measure(dimension), 1.0 / n) * std::sqrt(c_n / mu);
}

// ---------------------------------------------------------------------------

struct ConstantsRow {
  int dimension = 0;
  double p = 0.0;
  double q = 0.0;
  double alpha = 0.0;
  double c_p = 0.0;
  double method_gap = 0.0;  // larger relative disagreement of the two
};

inline std::vector<ConstantsRow> constants_table(const std::vector<int>& dims, const std::vector<double>& ps,
                                                 const SobolevConfig& cfg = {}) {
  std::vector<ConstantsRow> rows;
  for (int n : dims)
    for (double p : ps) {
      if (!(p > n / 2.0)) continue;
      const SobolevConstant a = alpha_constant(n, p, 1.0, cfg);
      const SobolevConstant c = c_p_interval(p, 0.0, 1.0, cfg);
      rows.push_back({n, p, a.q, a.value, c.value, std::max(a.relative_gap, c.relative_gap)});
    }
  return rows;
}

}  // namespace radlyap
