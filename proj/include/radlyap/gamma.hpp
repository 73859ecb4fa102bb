#pragma once

// Upper bounds for the Lyapunov constant
//     gamma_{p,k} = inf { ||a - mu_k||_{L^p(B_1)} : a in Gamma_k }
// by direct search over piecewise-constant shapes, and the trichotomy table
// comparing them with the explicit families.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <future>
#include <limits>
#include <numbers>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <boost/math/tools/toms748_solve.hpp>
#include <gsl/gsl_errno.h>
#include <gsl/gsl_multimin.h>

#include "radlyap/errors.hpp"
#include "radlyap/families.hpp"
#include "radlyap/ode.hpp"
#include "radlyap/potential.hpp"
#include "radlyap/radial_spectra.hpp"
#include "radlyap/zero_structure.hpp"

namespace radlyap {

struct AmplitudeConfig {
  ZeroConfig zero;
  std::optional<double> t_max;  // default: sup(mu_k + t shape) reaches mu_{k+3}
  double rtol = 1e-13;
};

struct AmplitudeSolution {
  double t = 0.0;
  double mu_k = 0.0;
  RadialPotential witness;  // mu_k + t shape
  int zero_count = 0;
  double end_angle = 0.0;
};

namespace detail {

inline Coefficient affine_coefficient(const RadialPotential& shape, double base, double t) {
  Coefficient out;
  for (const auto& piece : shape.coefficient()) {
    if (piece.is_constant()) {
      out.push_back(CoefficientPiece::make_constant(piece.lo, piece.hi, base + t * piece.constant));
    } else {
      auto f = piece.fn;
      out.push_back(CoefficientPiece::make_function(piece.lo, piece.hi, [f, base, t](double r) { return base + t * f(r); }));
    }
  }
  return out;
}

inline RadialPotential affine_potential(const RadialPotential& shape, double base, double t, int level) {
  std::vector<PotentialSegment> segs;
  for (const auto& seg : shape.segments()) {
    if (const auto* c = std::get_if<ConstantPiece>(&seg.shape)) {
      segs.push_back({seg.lo, seg.hi, ConstantPiece{base + t * c->value}});
    } else if (const auto* s = std::get_if<SampledPiece>(&seg.shape)) {
      SampledPiece copy = *s;
      for (double& v : copy.values) v = base + t * v;
      segs.push_back({seg.lo, seg.hi, copy});
    } else {
      throw Error(ErrorKind::InvalidArgument, "amplitude witnesses support constant and sampled shapes only");
    }
  }
  return RadialPotential(shape.dimension(), std::move(segs), level);
}

inline double shape_sup(const RadialPotential& shape, double spacing) {
  double sup = 0.0;
  for (const auto& [r, v] : shape.probe(spacing)) {
    require(v >= 0.0, "shape must be nonnegative");
    sup = std::max(sup, v);
  }
  require(sup > 0.0, "shape must not vanish identically");
  return sup;
}

// Root of the end angle with mu_k, mu_{k+1} and t_max already known.
inline double amplitude_root(int dimension, int k, const RadialPotential& shape, double sup, double mu_k,
                             double mu_next, double t_max, const AmplitudeConfig& cfg) {
  const double target = std::numbers::pi / 2.0 + (k + 1) * std::numbers::pi;
  auto miss = [&](double t) {
    return shoot_from_origin(dimension, affine_coefficient(shape, mu_k, t), cfg.zero.shooting, false)
               .end_state()[kAngle] -
           target;
  };
  // sup(a) must exceed mu_{k+1}, so the root is at least t0
  const double t0 = (mu_next - mu_k) / sup;
  if (t0 > t_max) throw Error(ErrorKind::NoRootInRange, "no Neumann solution below t_max");
  double lo = 0.999 * t0;
  double f_lo = miss(lo);
  double step = 0.001 * t0;
  double hi = t0;
  double f_hi = miss(hi);
  while (f_hi < 0.0) {
    if (hi >= t_max) throw Error(ErrorKind::NoRootInRange, "no Neumann solution below t_max");
    lo = hi;
    f_lo = f_hi;
    step *= 2.0;
    hi = std::min(lo + step, t_max);
    f_hi = miss(hi);
  }
  if (f_hi == 0.0) return hi;
  if (f_lo >= 0.0) return lo;
  std::uintmax_t iters = 100;
  const auto [a, b] = boost::math::tools::toms748_solve(
      miss, lo, hi, f_lo, f_hi,
      [&](double x, double y) { return std::abs(y - x) <= cfg.rtol * std::max(std::abs(x), std::abs(y)); },
      iters);
  return 0.5 * (a + b);
}

}  // namespace detail

/// Smallest t > 0 for which mu_k + t shape admits a radial Neumann solution.
/// The Pruefer angle at r = 1 increases with t and equals pi/2 + k pi at
/// t = 0; the root is its first passage through pi/2 + (k+1) pi, so the
/// witness solution has exactly k+1 zeros.
inline AmplitudeSolution amplitude_solve(int dimension, int k, const RadialPotential& shape,
                                         const AmplitudeConfig& cfg = {}) {
  require(dimension == shape.dimension(), "shape dimension does not match");
  require(k >= 0 && k + 3 <= cfg.zero.spectral.max_index, "level out of range");
  const double sup = detail::shape_sup(shape, cfg.zero.probe_spacing);
  const SpectralConfig& spec = cfg.zero.spectral;
  const double mu_k = neumann_radial_eigen(dimension, k, spec).eigenvalue;
  const double mu_next = neumann_radial_eigen(dimension, k + 1, spec).eigenvalue;
  const double t_max =
      cfg.t_max ? *cfg.t_max : (neumann_radial_eigen(dimension, k + 3, spec).eigenvalue - mu_k) / sup;

  AmplitudeSolution out;
  out.t = detail::amplitude_root(dimension, k, shape, sup, mu_k, mu_next, t_max, cfg);
  out.mu_k = mu_k;
  out.witness = detail::affine_potential(shape, mu_k, out.t, k);
  const RadialSolution sol = shoot_radial(out.witness, cfg.zero);
  out.zero_count = static_cast<int>(sol.zeros.size());
  out.end_angle = sol.end_angle();
  return out;
}

// ---------------------------------------------------------------------------

enum class EstimateKind { Exact, UpperBound, FamilyLimit };

inline std::string to_string(EstimateKind k) {
  switch (k) {
    case EstimateKind::Exact: return "Exact";
    case EstimateKind::UpperBound: return "UpperBound";
    case EstimateKind::FamilyLimit: return "FamilyLimit";
  }
  return "?";
}

struct GammaQuery {
  int dimension = 2;
  int level = 0;
  double p = 2.0;          // may be +inf
  int knots = 8;           // number of cells of the uniform grid
  std::vector<double> grid;  // explicit knots 0 = g_0 < ... < g_m = 1; overrides knots
  int budget = 2000;       // objective evaluations, split over the restarts
  std::uint64_t seed = 1;
  int restarts = 8;
  int threads = 1;
  bool nested = true;      // seed from the half-size grid when knots is even
  double family_eps_min = 1e-3;
  bool compare_family = true;  // subcritical only

  void validate() const {
    require(dimension >= 2, "dimension must be >= 2");
    require(level >= 0, "level must be >= 0");
    require(p >= 1.0, "p must be >= 1");
    require(knots >= 1, "knots must be >= 1");
    if (!grid.empty()) {
      require(grid.size() >= 2 && grid.front() == 0.0 && grid.back() == 1.0, "grid must run from 0 to 1");
      require(std::adjacent_find(grid.begin(), grid.end(), std::greater_equal<double>()) == grid.end(),
              "grid must be strictly increasing");
    }
    require(budget >= 1, "budget must be >= 1");
    require(restarts >= 1, "restarts must be >= 1");
    require(threads >= 1, "threads must be >= 1");
  }
};

struct TracePoint {
  int evaluation = 0;
  double value = 0.0;
};

struct RestartSummary {
  std::uint64_t seed = 0;
  int evaluations = 0;
  double best = 0.0;
};

struct GammaEstimate {
  double value = 0.0;
  EstimateKind kind = EstimateKind::UpperBound;
  RadialPotential witness;
  double mu_k = 0.0;
  double amplitude = 0.0;           // t with witness = mu_k + t shape
  std::vector<double> shape;        // cell values, max = 1
  std::vector<TracePoint> trace;    // improvements of the winning restart
  std::vector<RestartSummary> restarts;
  int evaluations = 0;
  bool budget_exhausted = false;    // the simplex was still moving when the budget ran out
  int zero_count = 0;
  MembershipReport membership;
  std::optional<double> optimizer_value;  // set when a family beat the optimizer
};

struct GammaConfig {
  AmplitudeConfig amplitude;
  double simplex_tol = 1e-9;    // stop a restart when the simplex is this small
  double t_max_factor = 1e4;    // optimizer cap: sup(a) up to this many times mu_{k+3}
  FamilyConfig family;
};

namespace detail {

inline std::vector<double> uniform_knots(int m) {
  std::vector<double> knots(m + 1);
  for (int i = 0; i <= m; ++i) knots[i] = static_cast<double>(i) / m;
  knots.back() = 1.0;
  return knots;
}

struct Candidate {
  double value = std::numeric_limits<double>::infinity();
  double t = 0.0;
  std::vector<double> shape;
};

struct RestartResult {
  Candidate best;
  std::vector<TracePoint> trace;
  int evaluations = 0;
  bool exhausted = false;
  std::uint64_t seed = 0;
};

struct Objective {
  int dimension;
  int level;
  double p;
  double box;
  double mu_k;
  double mu_next;
  double t_cap;  // bound on t * sup(shape)
  std::vector<double> knots;
  AmplitudeConfig amplitude;
  int budget;
  int evaluations = 0;
  Candidate best;
  std::vector<TracePoint> trace;

  static constexpr double kPenalty = 1e30;

  // Cell values box * 10^{-|x_j|}: decades are one unit apart, so the
  // simplex reaches ratios like 1e-5 between cells as easily as 1/2.
  std::vector<double> shape_of(const gsl_vector* x) const {
    std::vector<double> v(x->size);
    double top = 0.0;
    for (std::size_t j = 0; j < v.size(); ++j) {
      v[j] = box * std::pow(10.0, -std::abs(gsl_vector_get(x, j)));
      top = std::max(top, v[j]);
    }
    if (top > 0.0)
      for (double& e : v) e /= top;
    return v;
  }

  double evaluate(const gsl_vector* x) {
    if (evaluations >= budget) return kPenalty;
    ++evaluations;
    const std::vector<double> v = shape_of(x);
    if (std::all_of(v.begin(), v.end(), [](double e) { return e == 0.0; })) return kPenalty;
    try {
      const RadialPotential shape = RadialPotential::piecewise_constant(dimension, knots, v);
      // shape_of scales the largest cell to 1
      const double t = amplitude_root(dimension, level, shape, 1.0, mu_k, mu_next, t_cap, amplitude);
      const double value = t * lp_norm(shape, p);
      if (value < best.value) {
        best = {value, t, v};
        trace.push_back({evaluations, value});
      }
      return value;
    } catch (const Error&) {
      return kPenalty;
    }
  }
};

inline double gsl_objective(const gsl_vector* x, void* params) { return static_cast<Objective*>(params)->evaluate(x); }

inline RestartResult run_restart(const Objective& prototype, const std::vector<double>& start, double step,
                                 std::uint64_t seed, double simplex_tol) {
  Objective obj = prototype;
  const std::size_t m = start.size();
  gsl_multimin_function fn{&gsl_objective, m, &obj};
  gsl_vector* x = gsl_vector_alloc(m);
  gsl_vector* ss = gsl_vector_alloc(m);
  for (std::size_t j = 0; j < m; ++j) {
    gsl_vector_set(x, j, start[j]);
    gsl_vector_set(ss, j, step);
  }
  gsl_multimin_fminimizer* s = gsl_multimin_fminimizer_alloc(gsl_multimin_fminimizer_nmsimplex2, m);
  gsl_multimin_fminimizer_set(s, &fn, x, ss);
  RestartResult out;
  out.seed = seed;
  while (obj.evaluations < obj.budget) {
    if (gsl_multimin_fminimizer_iterate(s) != GSL_SUCCESS) break;
    if (gsl_multimin_test_size(gsl_multimin_fminimizer_size(s), simplex_tol) == GSL_SUCCESS) break;
  }
  out.exhausted = obj.evaluations >= obj.budget;
  gsl_multimin_fminimizer_free(s);
  gsl_vector_free(ss);
  gsl_vector_free(x);
  out.best = std::move(obj.best);
  out.trace = std::move(obj.trace);
  out.evaluations = obj.evaluations;
  return out;
}

inline std::vector<double> lift(const std::vector<double>& coarse, int m) {
  require(!coarse.empty() && m % static_cast<int>(coarse.size()) == 0, "cannot lift shape to this grid");
  std::vector<double> fine(m);
  const int ratio = m / static_cast<int>(coarse.size());
  for (int j = 0; j < m; ++j) fine[j] = coarse[j / ratio];
  return fine;
}

// Lexicographic tie-break so the reduction does not depend on timing.
inline bool better(const RestartResult& a, const RestartResult& b) {
  if (a.best.value != b.best.value) return a.best.value < b.best.value;
  return a.best.shape < b.best.shape;
}

}  // namespace detail

/// Best upper bound found by direct search; p = inf is answered exactly by
/// the constant mu_{k+1}.
inline GammaEstimate upper_bound_gamma(const GammaQuery& query, const GammaConfig& cfg = {},
                                       const std::vector<std::vector<double>>& initial_shapes = {}) {
  query.validate();
  gsl_set_error_handler_off();
  const int n = query.dimension;
  const int k = query.level;
  const SpectralConfig& spec = cfg.amplitude.zero.spectral;
  GammaEstimate est;
  est.mu_k = neumann_radial_eigen(n, k, spec).eigenvalue;
  const double mu_next = neumann_radial_eigen(n, k + 1, spec).eigenvalue;

  if (std::isinf(query.p)) {
    est.kind = EstimateKind::Exact;
    est.value = mu_next - est.mu_k;
    est.amplitude = est.value;
    est.shape = std::vector<double>(1, 1.0);
    est.witness = RadialPotential::constant(n, mu_next);
    est.witness.set_level(k);
    est.membership = is_member_gamma_k(est.witness, est.mu_k, cfg.amplitude.zero);
    est.zero_count = est.membership.zero_count;
    return est;
  }

  const std::vector<double> knots = query.grid.empty() ? detail::uniform_knots(query.knots) : query.grid;
  const int m = static_cast<int>(knots.size()) - 1;
  std::vector<std::vector<double>> seeds = initial_shapes;
  for (const auto& s : seeds) require(static_cast<int>(s.size()) == m, "initial shape has the wrong length");
  if (query.grid.empty() && query.nested && m % 2 == 0) {
    GammaQuery coarse = query;
    coarse.knots = m / 2;
    coarse.compare_family = false;
    const GammaEstimate half = upper_bound_gamma(coarse, cfg);
    seeds.insert(seeds.begin(), detail::lift(half.shape, m));
  }

  detail::Objective proto;
  proto.dimension = n;
  proto.level = k;
  proto.p = query.p;
  proto.box = 10.0 * neumann_radial_eigen(n, k + 2, spec).eigenvalue;
  proto.mu_k = est.mu_k;
  proto.mu_next = mu_next;
  proto.t_cap = cfg.t_max_factor * neumann_radial_eigen(n, k + 3, spec).eigenvalue;
  proto.knots = knots;
  proto.amplitude = cfg.amplitude;
  proto.budget = std::max(1, query.budget / query.restarts);

  // Starting points: supplied shapes first, then the constant shape, then
  // seeded random shapes spanning three decades.
  std::mt19937_64 rng(query.seed);
  std::uniform_real_distribution<double> decades(0.0, 3.0);
  auto to_log = [](const std::vector<double>& values) {
    const double top = *std::max_element(values.begin(), values.end());
    require(top > 0.0, "initial shape must not vanish");
    std::vector<double> x;
    for (double v : values) x.push_back(v > 0.0 ? std::min(300.0, -std::log10(v / top)) : 300.0);
    return x;
  };
  std::vector<std::vector<double>> starts;
  std::vector<std::uint64_t> restart_seeds;
  for (int i = 0; i < query.restarts; ++i) {
    std::vector<double> x(m, 0.0);
    const std::uint64_t s = rng();
    std::mt19937_64 local(s);
    if (i < static_cast<int>(seeds.size())) {
      x = to_log(seeds[i]);
    } else if (i > static_cast<int>(seeds.size())) {
      for (double& e : x) e = decades(local);
    }
    starts.push_back(std::move(x));
    restart_seeds.push_back(s);
  }

  std::vector<detail::RestartResult> results(query.restarts);
  if (query.threads <= 1) {
    for (int i = 0; i < query.restarts; ++i)
      results[i] = detail::run_restart(proto, starts[i], 0.5, restart_seeds[i], cfg.simplex_tol);
  } else {
    for (int first = 0; first < query.restarts; first += query.threads) {
      std::vector<std::future<detail::RestartResult>> jobs;
      const int last = std::min(query.restarts, first + query.threads);
      for (int i = first; i < last; ++i)
        jobs.push_back(std::async(std::launch::async, detail::run_restart, std::cref(proto), std::cref(starts[i]),
                                  0.5, restart_seeds[i], cfg.simplex_tol));
      for (int i = first; i < last; ++i) results[i] = jobs[i - first].get();
    }
  }

  const auto best_it = std::min_element(results.begin(), results.end(), detail::better);
  if (!std::isfinite(best_it->best.value))
    throw Error(ErrorKind::NonConvergence, "no admissible shape found within the budget");
  for (const auto& r : results) {
    est.restarts.push_back({r.seed, r.evaluations, r.best.value});
    est.evaluations += r.evaluations;
  }
  est.kind = EstimateKind::UpperBound;
  est.trace = best_it->trace;
  est.budget_exhausted = best_it->exhausted;
  est.shape = best_it->best.shape;
  est.amplitude = best_it->best.t;
  const RadialPotential shape = RadialPotential::piecewise_constant(n, proto.knots, est.shape);
  est.witness = detail::affine_potential(shape, est.mu_k, est.amplitude, k);
  est.value = lp_distance(est.witness, est.mu_k, query.p);
  est.membership = is_member_gamma_k(est.witness, est.mu_k, cfg.amplitude.zero);
  est.zero_count = est.membership.zero_count;

  // Subcritical regime: the explicit family can beat any fixed-grid search.
  if (query.compare_family && n >= 3 && k >= 1 && query.p < n / 2.0) {
    std::optional<GluedSolution> best_family;
    double best_norm = std::numeric_limits<double>::infinity();
    for (double eps = 0.1; eps >= query.family_eps_min * (1.0 - 1e-12); eps *= 0.5) {
      GluedSolution g = build_subcritical_family({n, k, eps}, cfg.family);
      const double norm = lp_distance_quadrature(g.potential, g.mu_k, query.p);
      if (norm < best_norm) {
        best_norm = norm;
        best_family = std::move(g);
      }
    }
    if (best_family && best_norm < est.value) {
      est.optimizer_value = est.value;
      est.kind = EstimateKind::FamilyLimit;
      est.value = best_norm;
      est.witness = best_family->potential;
      est.witness.set_level(k);
      est.amplitude = 0.0;
      est.shape.clear();
      est.membership = best_family->membership;
      est.zero_count = static_cast<int>(best_family->zeros.size());
    }
  }
  return est;
}

// ---------------------------------------------------------------------------

struct TrichotomyConfig {
  GammaConfig gamma;
  int knots = 8;
  int budget = 400;
  std::uint64_t seed = 1;
  int threads = 1;
  double floor_fraction = 1e-2;       // floor = fraction * (mu_{k+1} - mu_k)
  double subcritical_eps_min = 1e-6;  // smallest epsilon of the family sweep
  double planar_alpha_min = 1e-16;    // smallest alpha of the planar sweep
};

struct TrichotomyRow {
  double p = 0.0;
  std::string regime;        // subcritical | critical | supercritical
  double upper_bound = 0.0;
  std::string kind;
  std::optional<double> family_limit;
  std::optional<double> family_parameter;
  double floor = 0.0;
  std::string classification;  // vanishing-evidence | positive-evidence | inconclusive
};

/// Numerical evidence per p: upper bound, family sweep minimum and a label.
/// The label is vanishing-evidence when the family sweep drops below the
/// floor, positive-evidence when it does not, inconclusive when no family
/// exists (k = 0).
inline std::vector<TrichotomyRow> trichotomy_report(int dimension, int k, const std::vector<double>& p_grid,
                                                    const TrichotomyConfig& cfg = {}) {
  require(dimension >= 2 && k >= 0, "invalid dimension or level");
  const SpectralConfig& spec = cfg.gamma.amplitude.zero.spectral;
  const double mu_k = neumann_radial_eigen(dimension, k, spec).eigenvalue;
  const double mu_next = neumann_radial_eigen(dimension, k + 1, spec).eigenvalue;
  const double floor = cfg.floor_fraction * (mu_next - mu_k);
  const double half = dimension / 2.0;
  std::vector<TrichotomyRow> rows;
  for (double p : p_grid) {
    TrichotomyRow row;
    row.p = p;
    row.floor = floor;
    row.regime = p < half ? "subcritical" : (p == half ? "critical" : "supercritical");
    GammaQuery q;
    q.dimension = dimension;
    q.level = k;
    q.p = p;
    q.knots = cfg.knots;
    q.budget = cfg.budget;
    q.seed = cfg.seed;
    q.threads = cfg.threads;
    q.family_eps_min = 1e-3;
    const GammaEstimate est = upper_bound_gamma(q, cfg.gamma);
    row.upper_bound = est.value;
    row.kind = to_string(est.kind);

    if (k >= 1 && !std::isinf(p)) {
      double best = std::numeric_limits<double>::infinity();
      double where = 0.0;
      if (dimension >= 3) {
        // halve epsilon until the norm drops below the floor or the sweep ends
        for (double eps = 0.1; eps >= cfg.subcritical_eps_min * (1.0 - 1e-12); eps *= 0.5) {
          const GluedSolution g = build_subcritical_family({dimension, k, eps}, cfg.gamma.family);
          const double norm = subcritical_norm(g, p).closed_form;
          if (norm < best) {
            best = norm;
            where = eps;
          }
          if (best < floor) break;
        }
      } else if (p == 1.0) {
        // epsilon -> 0 limit of the planar family: the integral of A_alpha
        for (double alpha = 0.1; alpha >= cfg.planar_alpha_min * (1.0 - 1e-12); alpha *= 0.1) {
          const double norm = planar_a_alpha_integral(alpha);
          if (norm < best) {
            best = norm;
            where = alpha;
          }
          if (best < floor) break;
        }
      } else {
        for (double alpha = 0.1; alpha >= 1e-3 * (1.0 - 1e-12); alpha *= 0.1) {
          const GluedSolution g = build_planar_family({alpha, k, std::nullopt}, cfg.gamma.family);
          const double norm = lp_distance_quadrature(g.potential, g.mu_k, p);
          if (norm < best) {
            best = norm;
            where = alpha;
          }
        }
      }
      row.family_limit = best;
      row.family_parameter = where;
      row.classification = best < floor ? "vanishing-evidence" : "positive-evidence";
    } else if (std::isinf(p)) {
      row.classification = "positive-evidence";
    } else {
      row.classification = "inconclusive";
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace radlyap
