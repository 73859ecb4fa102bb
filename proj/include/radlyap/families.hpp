#pragma once

// Explicit minimizing families built by gluing eigenfunctions at common
// zeros.
//
// Subcritical family (N >= 3, k >= 1, 0 < eps < r_k):
//     a_eps = lambda_1(B_eps)        on (0, eps)
//           = lambda_1(A(eps, r_k))  on (eps, r_k)
//           = mu_k                   on (r_k, 1)
// with u_eps assembled from the ball eigenfunction, the annulus
// eigenfunction and phi_k, rescaled so that u_eps is C^1.
//
// Planar family (N = 2, k >= 1): the ball piece is replaced by
// v_alpha(r / eps) with coefficient A_alpha(r / eps) / eps^2.

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <vector>

#include <boost/math/tools/minima.hpp>

#include "radlyap/errors.hpp"
#include "radlyap/planar.hpp"
#include "radlyap/potential.hpp"
#include "radlyap/radial_spectra.hpp"
#include "radlyap/sphere.hpp"
#include "radlyap/zero_structure.hpp"

namespace radlyap {

struct SubcriticalFamilyParams {
  int dimension = 3;
  int level = 1;
  double epsilon = 0.1;
};

struct PlanarFamilyParams {
  double alpha = 0.3;
  int level = 1;
  std::optional<double> epsilon;  // defaults to min(r_k / 2, 0.9 sqrt(m_alpha / mu_k))
};

struct FamilyConfig {
  ZeroConfig zero;
  double gluing_floor = 1e-12;  // interface derivatives below this are rejected
};

struct GluedSolution {
  RadialPotential potential;
  std::vector<RadialSample> samples;      // glued u, ascending in r
  std::vector<double> interfaces;         // gluing radii, ascending (eps, r_k)
  std::vector<double> value_mismatch;     // |u_left - u_right| at each interface
  std::vector<double> derivative_mismatch;  // relative |u_left' - u_right'|
  std::vector<double> zeros;              // zeros of the glued u, ascending
  double mu_k = 0.0;
  double annulus_eigenvalue = 0.0;
  double core_value = 0.0;  // lambda_1(B_eps), or m_alpha / eps^2 for the planar family
  double epsilon = 0.0;
  double alpha = 0.0;       // planar family only
  int dimension = 0;
  int level = 0;
  EigenPair phi_k;
  MembershipReport membership;
};

namespace detail {

inline void append_samples(std::vector<RadialSample>& out, const RadialTrajectory& traj, double scale,
                           double lo, double hi) {
  for (std::size_t i = 0; i < traj.points.size(); ++i) {
    const double r = traj.points[i].r;
    if (r < lo || r > hi) continue;
    if (!out.empty() && r <= out.back().r) continue;
    out.push_back({r, scale * traj.points[i].x[kValue], scale * traj.points[i].x[kDerivative]});
  }
}

inline double glue_scale(double outer_derivative, double inner_derivative, double floor) {
  if (std::abs(inner_derivative) < floor || std::abs(outer_derivative) < floor)
    throw Error(ErrorKind::GluingFailure, "interface derivative is numerically zero");
  return outer_derivative / inner_derivative;
}

}  // namespace detail

/// Glues the subcritical family and checks its Gamma_k membership.
inline GluedSolution build_subcritical_family(const SubcriticalFamilyParams& params, const FamilyConfig& cfg = {}) {
  require(params.dimension >= 3, "the subcritical family needs N >= 3");
  require(params.level >= 1, "families are built for k >= 1 only");
  const int n = params.dimension;
  const double eps = params.epsilon;
  const SpectralConfig& spec = cfg.zero.spectral;

  GluedSolution g;
  g.dimension = n;
  g.level = params.level;
  g.epsilon = eps;
  g.phi_k = neumann_radial_eigen(n, params.level, spec);
  g.mu_k = g.phi_k.eigenvalue;
  const double rk = g.phi_k.zeros.front();
  require(eps > 0.0 && eps < rk, "epsilon must lie in (0, r_k)");

  const EigenPair annulus = dirichlet_annulus_lambda1(n, eps, rk, spec);
  const EigenPair ball = dirichlet_ball_lambda1(n, eps, spec);
  g.annulus_eigenvalue = annulus.eigenvalue;
  g.core_value = ball.eigenvalue;

  // Outside-in: phi_k keeps unit normalisation.
  const RadialSample phi_at_rk = g.phi_k.at(rk);
  const RadialSample ann_at_rk = annulus.at(rk);
  const RadialSample ann_at_eps = annulus.at(eps);
  const RadialSample ball_at_eps = ball.at(eps);
  const double s_ann = detail::glue_scale(phi_at_rk.derivative, ann_at_rk.derivative, cfg.gluing_floor);
  const double s_ball = detail::glue_scale(s_ann * ann_at_eps.derivative, ball_at_eps.derivative, cfg.gluing_floor);

  detail::append_samples(g.samples, ball.trajectory, s_ball, 0.0, eps);
  detail::append_samples(g.samples, annulus.trajectory, s_ann, eps, rk);
  g.samples.push_back({rk, phi_at_rk.value, phi_at_rk.derivative});
  detail::append_samples(g.samples, g.phi_k.trajectory, 1.0, rk, 1.0);

  g.interfaces = {eps, rk};
  g.value_mismatch = {std::abs(s_ball * ball_at_eps.value - s_ann * ann_at_eps.value),
                      std::abs(s_ann * ann_at_rk.value - phi_at_rk.value)};
  g.derivative_mismatch = {
      std::abs(s_ball * ball_at_eps.derivative - s_ann * ann_at_eps.derivative) / std::abs(s_ann * ann_at_eps.derivative),
      std::abs(s_ann * ann_at_rk.derivative - phi_at_rk.derivative) / std::abs(phi_at_rk.derivative)};
  g.zeros = {eps};
  g.zeros.insert(g.zeros.end(), g.phi_k.zeros.begin(), g.phi_k.zeros.end());

  g.potential = RadialPotential(n,
                                {{0.0, eps, ConstantPiece{ball.eigenvalue}},
                                 {eps, rk, ConstantPiece{annulus.eigenvalue}},
                                 {rk, 1.0, ConstantPiece{g.mu_k}}},
                                params.level);
  g.membership = is_member_gamma_k(g.potential, g.mu_k, cfg.zero);
  return g;
}

struct NormPair {
  double closed_form = 0.0;
  double quadrature = 0.0;
};

/// ||a_eps - mu_k||_{L^p(B_1)}: the closed form
///   [ (l_B - mu)^p omega eps^N / N + (l_A - mu)^p omega (r_k^N - eps^N) / N ]^{1/p}
/// and an independent quadrature of the assembled potential.
inline NormPair subcritical_norm(const GluedSolution& family, double p) {
  require(p >= 1.0 && std::isfinite(p), "p must lie in [1, inf)");
  const int n = family.dimension;
  const double omega = sphere_measure(n);
  const double eps = family.epsilon;
  const double rk = family.interfaces.back();
  const double core = std::pow(family.core_value - family.mu_k, p) * omega * std::pow(eps, n) / n;
  const double shell =
      std::pow(family.annulus_eigenvalue - family.mu_k, p) * omega * (std::pow(rk, n) - std::pow(eps, n)) / n;
  return {std::pow(core + shell, 1.0 / p), lp_distance_quadrature(family.potential, family.mu_k, p)};
}

// ---------------------------------------------------------------------------
// Planar family

struct AlphaMinimum {
  double value = 0.0;
  double location = 0.0;
};

/// m_alpha = inf of A_alpha over (0, 1]: grid search over 10^4 points, then
/// Brent refinement inside the bracketing cell (one branch at a time).
inline AlphaMinimum planar_m_alpha(double alpha, int grid = 10000) {
  planar::check_alpha(alpha);
  std::size_t best = 0;
  std::vector<double> rs(grid);
  double best_value = std::numeric_limits<double>::infinity();
  for (int i = 0; i < grid; ++i) {
    rs[i] = static_cast<double>(i + 1) / grid;
    const double v = planar::a_alpha(alpha, rs[i]);
    if (v < best_value) {
      best_value = v;
      best = static_cast<std::size_t>(i);
    }
  }
  double lo = best > 0 ? rs[best - 1] : 0.5 / grid;
  double hi = best + 1 < rs.size() ? rs[best + 1] : 1.0;
  // Keep the bracket inside one branch.
  if (lo < alpha && hi > alpha) {
    if (rs[best] >= alpha)
      lo = alpha;
    else
      hi = alpha;
  }
  auto [x, fx] = boost::math::tools::brent_find_minima([&](double r) { return planar::a_alpha(alpha, r); }, lo, hi,
                                                       std::numeric_limits<double>::digits / 2);
  if (fx < best_value) return {fx, x};
  return {best_value, rs[best]};
}

/// Integral of A_alpha over the unit disc, 2 pi int_0^1 r A_alpha(r) dr.
inline double planar_a_alpha_integral(double alpha) {
  planar::check_alpha(alpha);
  const double inner = detail::gk_integrate([&](double t) { return planar::inner_weighted_scaled(alpha, t); }, 0.0, 1.0,
                                            1e-13);
  const double outer = detail::gk_integrate([&](double r) { return r * planar::a_alpha(alpha, r); }, alpha, 1.0, 1e-13);
  return 2.0 * std::numbers::pi * (inner + outer);
}

inline double default_planar_epsilon(double alpha, double mu_k, double rk) {
  const double m = planar_m_alpha(alpha).value;
  return std::min(rk / 2.0, 0.9 * std::sqrt(m / mu_k));
}

inline GluedSolution build_planar_family(const PlanarFamilyParams& params, const FamilyConfig& cfg = {}) {
  planar::check_alpha(params.alpha);
  require(params.level >= 1, "families are built for k >= 1 only");
  const int n = 2;
  const double alpha = params.alpha;
  const SpectralConfig& spec = cfg.zero.spectral;

  GluedSolution g;
  g.dimension = n;
  g.level = params.level;
  g.alpha = alpha;
  g.phi_k = neumann_radial_eigen(n, params.level, spec);
  g.mu_k = g.phi_k.eigenvalue;
  const double rk = g.phi_k.zeros.front();
  const double m_alpha = planar_m_alpha(alpha).value;
  const double eps = params.epsilon.value_or(default_planar_epsilon(alpha, g.mu_k, rk));
  require(eps > 0.0 && eps < rk, "epsilon must lie in (0, r_k)");
  if (m_alpha / (eps * eps) < g.mu_k)
    throw Error(ErrorKind::MembershipFailure, "m_alpha / eps^2 < mu_k: the core does not dominate mu_k");
  g.epsilon = eps;
  g.core_value = m_alpha / (eps * eps);

  const EigenPair annulus = dirichlet_annulus_lambda1(n, eps, rk, spec);
  g.annulus_eigenvalue = annulus.eigenvalue;

  const RadialSample phi_at_rk = g.phi_k.at(rk);
  const RadialSample ann_at_rk = annulus.at(rk);
  const RadialSample ann_at_eps = annulus.at(eps);
  const double v_end_derivative = planar::v_alpha_derivative(alpha, 1.0) / eps;
  const double s_ann = detail::glue_scale(phi_at_rk.derivative, ann_at_rk.derivative, cfg.gluing_floor);
  const double s_core = detail::glue_scale(s_ann * ann_at_eps.derivative, v_end_derivative, cfg.gluing_floor);

  constexpr int kCoreSamples = 400;
  for (int i = 1; i <= kCoreSamples; ++i) {
    const double r = eps * static_cast<double>(i) / kCoreSamples;
    g.samples.push_back({r, s_core * planar::v_alpha(alpha, r / eps),
                         s_core * planar::v_alpha_derivative(alpha, r / eps) / eps});
  }
  detail::append_samples(g.samples, annulus.trajectory, s_ann, eps, rk);
  g.samples.push_back({rk, phi_at_rk.value, phi_at_rk.derivative});
  detail::append_samples(g.samples, g.phi_k.trajectory, 1.0, rk, 1.0);
  std::sort(g.samples.begin(), g.samples.end(), [](const RadialSample& a, const RadialSample& b) { return a.r < b.r; });

  g.interfaces = {eps, rk};
  g.value_mismatch = {std::abs(s_core * planar::v_alpha(alpha, 1.0) - s_ann * ann_at_eps.value),
                      std::abs(s_ann * ann_at_rk.value - phi_at_rk.value)};
  g.derivative_mismatch = {
      std::abs(s_core * v_end_derivative - s_ann * ann_at_eps.derivative) / std::abs(s_ann * ann_at_eps.derivative),
      std::abs(s_ann * ann_at_rk.derivative - phi_at_rk.derivative) / std::abs(phi_at_rk.derivative)};
  g.zeros = {eps};
  g.zeros.insert(g.zeros.end(), g.phi_k.zeros.begin(), g.phi_k.zeros.end());

  const ClosedFormPiece core{"planar_a_alpha", {{"alpha", alpha}, {"epsilon", eps}}};
  g.potential = RadialPotential(n,
                                {{0.0, alpha * eps, core},
                                 {alpha * eps, eps, core},
                                 {eps, rk, ConstantPiece{annulus.eigenvalue}},
                                 {rk, 1.0, ConstantPiece{g.mu_k}}},
                                params.level);
  g.membership = is_member_gamma_k(g.potential, g.mu_k, cfg.zero);
  return g;
}

struct PlanarNorm {
  double value = 0.0;   // ||a_{alpha,eps} - mu_k||_{L^1(B_1)} by quadrature
  double bound = 0.0;   // closed-form bound on the core plus the exact annulus term
  double limit = 0.0;   // eps -> 0 limit: integral of A_alpha over B_1
};

inline PlanarNorm planar_l1_norm(const GluedSolution& family) {
  require(family.dimension == 2 && family.alpha > 0.0, "planar_l1_norm expects a planar family");
  const double eps = family.epsilon;
  const double rk = family.interfaces.back();
  PlanarNorm out;
  out.value = lp_distance_quadrature(family.potential, family.mu_k, 1.0);
  out.limit = planar_a_alpha_integral(family.alpha);
  out.bound = planar::a_alpha_integral_bound(family.alpha) +
              (family.annulus_eigenvalue - family.mu_k) * shell_volume(2, eps, rk);
  return out;
}

// ---------------------------------------------------------------------------

struct LinfConstant {
  double value = 0.0;  // mu_{k+1} - mu_k
  double mu_k = 0.0;
  double mu_next = 0.0;
  RadialPotential witness;  // a = mu_{k+1}
};

inline LinfConstant linf_constant(int dimension, int k, const SpectralConfig& cfg = {}) {
  LinfConstant out;
  out.mu_k = neumann_radial_eigen(dimension, k, cfg).eigenvalue;
  out.mu_next = neumann_radial_eigen(dimension, k + 1, cfg).eigenvalue;
  out.value = out.mu_next - out.mu_k;
  out.witness = RadialPotential::constant(dimension, out.mu_next);
  out.witness.set_level(k);
  return out;
}

// ---------------------------------------------------------------------------
// Sweeps (one row per parameter value).

struct FamilySweepRow {
  double parameter = 0.0;  // epsilon (subcritical) or alpha (planar)
  double closed_form_norm = 0.0;
  double quadrature_norm = 0.0;
  int zero_count = 0;
  bool interlace_ok = false;
  double residual = 0.0;  // one-step ODE residual of the glued solution
};

inline FamilySweepRow family_row(const GluedSolution& g, double parameter, double closed, double quad,
                                 const FamilyConfig& cfg) {
  FamilySweepRow row;
  row.parameter = parameter;
  row.closed_form_norm = closed;
  row.quadrature_norm = quad;
  const ZeroReport report = verify_interlacing(g.phi_k, g.potential, cfg.zero);
  row.zero_count = report.zero_count;
  row.interlace_ok = report.interlace_ok;
  row.residual = ode_residual(g.potential, g.samples, cfg.zero.shooting);
  return row;
}

inline std::vector<FamilySweepRow> subcritical_sweep(int dimension, int k, double p, const std::vector<double>& epsilons,
                                                     const FamilyConfig& cfg = {}) {
  std::vector<FamilySweepRow> rows;
  for (double eps : epsilons) {
    const GluedSolution g = build_subcritical_family({dimension, k, eps}, cfg);
    const NormPair norm = subcritical_norm(g, p);
    rows.push_back(family_row(g, eps, norm.closed_form, norm.quadrature, cfg));
  }
  return rows;
}

/// Planar sweep over alpha with the default membership epsilon; the
/// closed-form column holds the bound, the quadrature column the L^1 norm.
inline std::vector<FamilySweepRow> planar_sweep(int k, const std::vector<double>& alphas, const FamilyConfig& cfg = {}) {
  std::vector<FamilySweepRow> rows;
  for (double alpha : alphas) {
    const GluedSolution g = build_planar_family({alpha, k, std::nullopt}, cfg);
    const PlanarNorm norm = planar_l1_norm(g);
    rows.push_back(family_row(g, alpha, norm.bound, norm.value, cfg));
  }
  return rows;
}

}  // namespace radlyap
