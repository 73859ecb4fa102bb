#pragma once

// Radial solutions of  Delta u + a(|x|) u = 0  on B_1, their zeros, the
// admissible class Gamma_k (potentials above mu_k admitting a nontrivial
// radial Neumann solution), interlacing with the zeros of phi_k, and the
// Green identity
//     int_{B_rho} (a - mu_k) u phi_k = omega_N rho^{N-1} (u phi_k' - u' phi_k)(rho).

#include <algorithm>
#include <cmath>
#include <optional>
#include <vector>

#include "radlyap/errors.hpp"
#include "radlyap/ode.hpp"
#include "radlyap/potential.hpp"
#include "radlyap/radial_spectra.hpp"
#include "radlyap/sphere.hpp"

namespace radlyap {

struct ZeroConfig {
  ShootingOptions shooting;
  SpectralConfig spectral;
  double ambiguous_threshold = 1e-12;  // relative to max |u|
  double boundary_zero_tol = 1e-9;     // |u(1)| below this (relative) counts as a zero at r = 1
  double dominance_slack = 1e-12;      // a >= mu_k - slack everywhere
  double strict_margin = 1e-9;         // a >= mu_k + margin ...
  double strict_length = 1e-3;         // ... on an interval of at least this length
  double neumann_rtol = 1e-7;          // |u'(1)| < neumann_rtol * max |u'|
  double probe_spacing = 1e-4;
  double interlace_slack = 1e-6;
};

struct RadialSolution {
  RadialPotential potential;
  RadialTrajectory trajectory;  // u(0+) = 1
  std::vector<double> zeros;    // in (0, 1], ascending; includes a zero at r = 1 if present
  bool boundary_zero = false;
  ShootingOptions shooting;

  int dimension() const { return potential.dimension(); }
  std::vector<RadialSample> samples() const { return trajectory.samples(); }
  RadialSample at(double r) const { return trajectory.sample_at(r); }
  double end_value() const { return trajectory.end_state()[kValue]; }
  double end_derivative() const { return trajectory.end_state()[kDerivative]; }
  double end_angle() const { return trajectory.end_state()[kAngle]; }
};

struct ZeroReport {
  int zero_count = 0;
  std::vector<double> zeros;
  bool boundary_zero = false;
  bool interlace_ok = true;
  std::vector<double> interlace_margins;  // x_i - r_i, i = 1..k (largest zeros first)
  double neumann_residual = 0.0;          // |u'(1)|
};

/// Locates every zero of the solution in (0, 1]. Throws AmbiguousZero when u
/// hugs zero between samples without changing sign.
inline ZeroReport count_and_locate_zeros(const RadialSolution& sol, const ZeroConfig& cfg = {}) {
  const auto& pts = sol.trajectory.points;
  const double umax = sol.trajectory.max_abs_value();
  const double tiny = cfg.ambiguous_threshold * umax;
  for (std::size_t i = 1; i + 1 < pts.size(); ++i) {
    const double u_prev = pts[i - 1].x[kValue];
    const double u = pts[i].x[kValue];
    const double u_next = pts[i + 1].x[kValue];
    if (std::abs(u) < tiny && std::abs(u_next) < tiny && u * u_next > 0.0)
      throw Error(ErrorKind::AmbiguousZero, "solution stays near zero without a sign change");
    if (u != 0.0 && std::abs(u) < tiny && u_prev * u > 0.0 && u * u_next > 0.0)
      throw Error(ErrorKind::AmbiguousZero, "solution touches zero without a sign change");
  }
  ZeroReport report;
  report.zeros = refine_zeros(sol.trajectory);
  const double u_end = sol.end_value();
  const bool end_listed = !report.zeros.empty() && report.zeros.back() >= 1.0 - 1e-10;
  if (std::abs(u_end) <= cfg.boundary_zero_tol * umax) {
    report.boundary_zero = true;
    if (end_listed)
      report.zeros.back() = 1.0;
    else
      report.zeros.push_back(1.0);
  }
  report.zero_count = static_cast<int>(report.zeros.size());
  report.neumann_residual = std::abs(sol.end_derivative());
  return report;
}

/// Regular radial solution of Delta u + a u = 0 with u(0) = 1.
inline RadialSolution shoot_radial(const RadialPotential& a, const ZeroConfig& cfg = {}) {
  RadialSolution sol;
  sol.potential = a;
  sol.shooting = cfg.shooting;
  sol.trajectory = shoot_from_origin(a.dimension(), a.coefficient(), cfg.shooting);
  ZeroReport report = count_and_locate_zeros(sol, cfg);
  sol.zeros = std::move(report.zeros);
  sol.boundary_zero = report.boundary_zero;
  return sol;
}

inline RadialSolution shoot_radial(int dimension, const RadialPotential& a, const ZeroConfig& cfg = {}) {
  require(dimension == a.dimension(), "potential dimension does not match");
  return shoot_radial(a, cfg);
}

struct MembershipReport {
  bool member = false;
  bool dominates = false;         // a >= mu_k everywhere (with slack)
  bool strictly_above = false;    // a > mu_k on an interval of the configured length
  bool neumann_solvable = false;  // |u'(1)| small relative to max |u'|
  double relative_residual = 0.0;
  double longest_strict_run = 0.0;
  int zero_count = 0;
};

/// Gamma_k membership given mu_k.
inline MembershipReport is_member_gamma_k(const RadialPotential& a, double mu_k, const ZeroConfig& cfg = {}) {
  MembershipReport rep;
  rep.dominates = true;
  double run_start = -1.0;
  for (const auto& [r, value] : a.probe(cfg.probe_spacing)) {
    if (value < mu_k - cfg.dominance_slack) rep.dominates = false;
    if (value >= mu_k + cfg.strict_margin) {
      if (run_start < 0.0) run_start = r;
      rep.longest_strict_run = std::max(rep.longest_strict_run, r - run_start);
    } else {
      run_start = -1.0;
    }
  }
  rep.strictly_above = rep.longest_strict_run >= cfg.strict_length;
  RadialSolution sol = shoot_radial(a, cfg);
  const double dmax = sol.trajectory.max_abs_derivative();
  rep.relative_residual = dmax > 0.0 ? std::abs(sol.end_derivative()) / dmax : 0.0;
  rep.neumann_solvable = rep.relative_residual < cfg.neumann_rtol;
  rep.zero_count = static_cast<int>(sol.zeros.size());
  rep.member = rep.dominates && rep.strictly_above && rep.neumann_solvable;
  return rep;
}

inline MembershipReport is_member_gamma_k(int dimension, int k, const RadialPotential& a,
                                          const ZeroConfig& cfg = {}) {
  require(dimension == a.dimension(), "potential dimension does not match");
  const double mu_k = neumann_radial_eigen(dimension, k, cfg.spectral).eigenvalue;
  return is_member_gamma_k(a, mu_k, cfg);
}

/// Zero count of the shot solution and margins x_i - r_i between its last k
/// zeros and the zeros of phi_k. Requires Gamma_k membership.
inline ZeroReport verify_interlacing(const EigenPair& phi_k, const RadialPotential& a, const ZeroConfig& cfg = {}) {
  require(phi_k.bc == BoundaryCondition::Neumann, "interlacing needs the Neumann eigenpair phi_k");
  require(phi_k.dimension == a.dimension(), "potential dimension does not match");
  const MembershipReport membership = is_member_gamma_k(a, phi_k.eigenvalue, cfg);
  if (!membership.member)
    throw Error(ErrorKind::MembershipFailure, "potential is not in Gamma_k");
  RadialSolution sol = shoot_radial(a, cfg);
  ZeroReport report = count_and_locate_zeros(sol, cfg);
  const int k = phi_k.index;
  if (report.zero_count < k) {
    report.interlace_ok = false;
    return report;
  }
  for (int i = 1; i <= k; ++i) {
    const double x_i = report.zeros[report.zeros.size() - i];
    const double r_i = phi_k.zeros[phi_k.zeros.size() - i];
    report.interlace_margins.push_back(x_i - r_i);
  }
  report.interlace_ok = std::all_of(report.interlace_margins.begin(), report.interlace_margins.end(),
                                    [&](double m) { return m >= -cfg.interlace_slack; });
  return report;
}

inline ZeroReport verify_interlacing(int dimension, int k, const RadialPotential& a, const ZeroConfig& cfg = {}) {
  require(dimension == a.dimension(), "potential dimension does not match");
  return verify_interlacing(neumann_radial_eigen(dimension, k, cfg.spectral), a, cfg);
}

struct IdentityResidual {
  double lhs = 0.0;
  double rhs = 0.0;
  double residual = 0.0;
  double scale = 1.0;
};

/// Both sides of the Green identity on the annulus A(inner, radius)
/// (inner = 0 for the ball B_radius). LHS by adaptive quadrature over the
/// potential's segments; RHS from endpoint values.
inline IdentityResidual orthogonality_identity_residual(const RadialSolution& sol, const EigenPair& phi_k,
                                                        double radius, double inner = 0.0) {
  require(radius > 0.0 && radius <= 1.0, "radius must lie in (0,1]");
  require(inner >= 0.0 && inner < radius, "inner radius must lie in [0, radius)");
  const int n = sol.dimension();
  require(phi_k.dimension == n, "dimension mismatch");
  const double omega = sphere_measure(n);
  const double mu = phi_k.eigenvalue;
  const Coefficient coeff = sol.potential.coefficient();

  double lhs = 0.0;
  for (const auto& piece : coeff) {
    const double lo = std::max(piece.lo, inner);
    const double hi = std::min(piece.hi, radius);
    if (!(hi > lo)) continue;
    auto integrand = [&](double r) {
      const double u = sol.trajectory.state_at(r)[kValue];
      const double phi = phi_k.trajectory.state_at(r)[kValue];
      return detail::int_pow(r, n - 1) * (piece(r) - mu) * u * phi;
    };
    lhs += detail::gk_integrate(integrand, lo, hi, 1e-11);
  }
  lhs *= omega;

  auto boundary = [&](double rho) {
    if (rho <= 0.0) return 0.0;
    const State u = sol.trajectory.state_at(rho);
    const State phi = phi_k.trajectory.state_at(rho);
    return omega * detail::int_pow(rho, n - 1) * (u[kValue] * phi[kDerivative] - u[kDerivative] * phi[kValue]);
  };
  IdentityResidual out;
  out.lhs = lhs;
  out.rhs = boundary(radius) - boundary(inner);
  out.residual = std::abs(out.lhs - out.rhs);
  out.scale = omega * detail::int_pow(radius, n - 1) *
              (sol.trajectory.max_abs_value() * phi_k.trajectory.max_abs_derivative() +
               sol.trajectory.max_abs_derivative() * phi_k.trajectory.max_abs_value());
  return out;
}

/// Largest one-step inconsistency of a sampled solution: each sample is
/// re-integrated to the next one under `a` and compared, relative to the
/// maxima of |u| and |u'|.
inline double ode_residual(const RadialPotential& a, const std::vector<RadialSample>& samples,
                           const ShootingOptions& opt = {}) {
  const Coefficient coeff = a.coefficient();
  double umax = 0.0;
  double dmax = 0.0;
  for (const auto& s : samples) {
    umax = std::max(umax, std::abs(s.value));
    dmax = std::max(dmax, std::abs(s.derivative));
  }
  double worst = 0.0;
  for (std::size_t i = 0; i + 1 < samples.size(); ++i) {
    const double lo = samples[i].r;
    const double hi = samples[i + 1].r;
    if (!(lo > 0.0) || !(hi > lo)) continue;
    Coefficient local;
    for (const auto& piece : coeff) {
      const double plo = std::max(piece.lo, lo);
      const double phi = std::min(piece.hi, hi);
      if (phi > plo) {
        CoefficientPiece p = piece;
        p.lo = plo;
        p.hi = phi;
        local.push_back(std::move(p));
      }
    }
    if (local.empty()) continue;
    const State init{samples[i].value, samples[i].derivative, 0.0, 0.0};
    const State end = integrate_radial(a.dimension(), std::move(local), lo, init, opt, false).end_state();
    worst = std::max(worst, std::abs(end[kValue] - samples[i + 1].value) / umax);
    worst = std::max(worst, std::abs(end[kDerivative] - samples[i + 1].derivative) / dmax);
  }
  return worst;
}

}  // namespace radlyap
