// radlyap: command-line runner for the radial spectral and Lyapunov-constant tools.

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "radlyap/radlyap.hpp"

namespace {

using nlohmann::json;
using namespace radlyap;

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

double parse_real(const std::string& s) {
  if (s == "inf" || s == "Inf" || s == "INF" || s == "infinity") return std::numeric_limits<double>::infinity();
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw ConfigError("not a number: '" + s + "'");
  }
  if (used != s.size()) throw ConfigError("not a number: '" + s + "'");
  return v;
}

std::vector<double> parse_list(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_real(item));
  if (out.empty()) throw ConfigError("empty list");
  return out;
}

// "start:stop:halve" | "start:stop:tenth" | "a,b,c"
std::vector<double> parse_sweep(const std::string& s) {
  if (s.find(':') == std::string::npos) return parse_list(s);
  std::stringstream ss(s);
  std::string a, b, rule;
  std::getline(ss, a, ':');
  std::getline(ss, b, ':');
  std::getline(ss, rule, ':');
  const double start = parse_real(a);
  const double stop = parse_real(b);
  double factor = 0.0;
  if (rule == "halve")
    factor = 0.5;
  else if (rule == "tenth")
    factor = 0.1;
  else
    throw ConfigError("sweep rule must be 'halve' or 'tenth'");
  if (!(start > 0.0) || !(stop > 0.0) || stop > start) throw ConfigError("sweep needs start >= stop > 0");
  std::vector<double> out;
  for (double x = start; x >= stop * (1.0 - 1e-12); x *= factor) out.push_back(x);
  return out;
}

struct Common {
  std::string out;
  std::string format;
  std::string plot;
  std::uint64_t seed = 1;
};

struct Output {
  std::string command;
  json config;
  std::string content;
  std::string extension;
  std::string summary;
  std::vector<std::pair<double, double>> plot;
  std::string plot_x = "r";
  std::string plot_y = "value";
};

std::string resolve_path(const Common& c, const Output& o) {
  if (!c.out.empty()) return c.out;
  const char* dir = std::getenv("RADLYAP_OUTPUT_DIR");
  std::filesystem::path base = dir && *dir ? dir : ".";
  std::filesystem::create_directories(base);
  return (base / (o.command + "." + o.extension)).string();
}

void emit(const Common& c, Output& o, const json& result, const report::Table* table) {
  json cfg = o.config;
  cfg["format"] = c.format;
  cfg["seed"] = c.seed;
  if (c.format == "csv") {
    if (!table) throw ConfigError(o.command + " has no tabular output; use --format json");
    o.content = report::to_csv(*table, cfg);
    o.extension = "csv";
  } else {
    o.content = report::envelope(o.command, cfg, result).dump(2) + "\n";
    o.extension = "json";
  }
  const std::string path = resolve_path(c, o);
  report::write_file(path, o.content);
  if (!c.plot.empty()) report::write_file(c.plot, report::plot_csv(o.plot_x, o.plot_y, o.plot));
  std::cout << o.summary << " -> " << path << "\n";
}

void add_common(CLI::App* sub, Common& c, const std::string& default_format) {
  c.format = default_format;
  sub->add_option("--out", c.out, "Output file (default: $RADLYAP_OUTPUT_DIR/<command>.<ext>, else ./)");
  sub->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
  sub->add_option("--plot", c.plot, "Also write two-column plot data (CSV) to this path");
  sub->add_option("--seed", c.seed, "Random seed")->capture_default_str();
}

std::vector<std::pair<double, double>> profile(const std::vector<RadialSample>& samples) {
  std::vector<std::pair<double, double>> out;
  for (const auto& s : samples) out.emplace_back(s.r, s.value);
  return out;
}

// --- eigen -----------------------------------------------------------------

struct EigenArgs {
  int dim = 3;
  int k = 1;
  std::string bc = "neumann";
  double radius = 1.0;
  double inner = 0.0;
};

void run_eigen(const Common& c, const EigenArgs& a) {
  Output o;
  o.command = "eigen";
  o.config = {{"dim", a.dim}, {"k", a.k}, {"bc", a.bc}, {"radius", a.radius}, {"inner", a.inner}};
  EigenPair e;
  if (a.bc == "neumann") {
    e = neumann_radial_eigen(a.dim, a.k);
  } else if (a.inner > 0.0) {
    e = dirichlet_annulus_lambda1(a.dim, a.inner, a.radius);
  } else {
    e = dirichlet_ball_lambda1(a.dim, a.radius);
  }
  o.summary = "eigen: eigenvalue " + report::number(e.eigenvalue) + ", " + std::to_string(e.zeros.size()) + " zeros";
  o.plot = profile(e.samples());
  o.plot_y = "phi";
  report::Table t;
  t.header = {"quantity", "value"};
  t.add({"eigenvalue", report::number(e.eigenvalue)});
  for (std::size_t i = 0; i < e.zeros.size(); ++i)
    t.add({"r_" + std::to_string(i + 1), report::number(e.zeros[e.zeros.size() - 1 - i])});
  emit(c, o, report::eigen_json(e), &t);
}

// --- family ----------------------------------------------------------------

struct FamilyArgs {
  int dim = 3;
  int k = 1;
  std::string p = "1";
  std::string sweep = "0.1:0.0125:halve";
};

void run_family(const Common& c, const FamilyArgs& a) {
  Output o;
  o.command = "family";
  const double p = parse_real(a.p);
  const std::vector<double> eps = parse_sweep(a.sweep);
  o.config = {{"dim", a.dim}, {"k", a.k}, {"p", report::real(p)}, {"eps_sweep", eps}};
  const auto rows = subcritical_sweep(a.dim, a.k, p, eps);
  const report::Table t = report::family_table(rows, "epsilon", "norm_closed_form", "norm_quadrature");
  for (const auto& r : rows) o.plot.emplace_back(r.parameter, r.closed_form_norm);
  o.plot_x = "epsilon";
  o.plot_y = "norm";
  o.summary = "family: " + std::to_string(rows.size()) + " rows, last norm " +
              report::number(rows.back().closed_form_norm);
  emit(c, o, report::to_json(t), &t);
}

// --- planar ----------------------------------------------------------------

struct PlanarArgs {
  int k = 1;
  std::string alpha = "0.1,0.01,0.001";
};

void run_planar(const Common& c, const PlanarArgs& a) {
  Output o;
  o.command = "planar";
  const std::vector<double> alphas = parse_sweep(a.alpha);
  o.config = {{"k", a.k}, {"alpha", alphas}};
  report::Table t;
  t.header = {"alpha", "integral_A_alpha", "bound", "family_l1_norm", "family_bound", "epsilon", "zero_count",
              "interlace_ok", "ode_residual"};
  for (double alpha : alphas) {
    const GluedSolution g = build_planar_family({alpha, a.k, std::nullopt});
    const PlanarNorm norm = planar_l1_norm(g);
    const FamilySweepRow row = family_row(g, alpha, norm.bound, norm.value, FamilyConfig{});
    t.add({report::number(alpha), report::number(norm.limit), report::number(planar::a_alpha_integral_bound(alpha)),
           report::number(norm.value), report::number(norm.bound), report::number(g.epsilon),
           std::to_string(row.zero_count), row.interlace_ok ? "true" : "false", report::number(row.residual)});
    o.plot.emplace_back(alpha, norm.limit);
  }
  o.plot_x = "alpha";
  o.plot_y = "integral_A_alpha";
  o.summary = "planar: " + std::to_string(alphas.size()) + " rows";
  emit(c, o, report::to_json(t), &t);
}

// --- sobolev ---------------------------------------------------------------

struct SobolevArgs {
  std::string dims = "2,3";
  std::string ps = "2,3,5";
  std::string M;
  int grid = 4000;
};

void run_sobolev(const Common& c, const SobolevArgs& a) {
  Output o;
  o.command = "sobolev";
  std::vector<int> dims;
  for (double d : parse_list(a.dims)) dims.push_back(static_cast<int>(d));
  const std::vector<double> ps = parse_list(a.ps);
  o.config = {{"dims", dims}, {"p", ps}, {"grid", a.grid}};
  SobolevConfig cfg;
  cfg.grid = a.grid;
  const auto rows = constants_table(dims, ps, cfg);
  const report::Table t = report::constants_table_csv(rows);
  json result{{"constants", report::to_json(t)}};
  json critical = json::array();
  for (int n : dims)
    if (n >= 3) critical.push_back(report::critical_json(n, critical_constant(n)));
  result["critical"] = critical;
  if (!a.M.empty()) {
    const double M = parse_real(a.M);
    o.config["M"] = M;
    json gaps = json::array();
    for (const auto& r : rows) {
      json g = report::gap_json(gap_bounds_from(r.dimension, r.p, M, r.alpha, r.c_p));
      g["N"] = r.dimension;
      g["p"] = r.p;
      gaps.push_back(g);
    }
    result["gap_bounds"] = gaps;
  }
  for (const auto& r : rows) o.plot.emplace_back(r.p, r.alpha);
  o.plot_x = "p";
  o.plot_y = "alpha";
  o.summary = "sobolev: " + std::to_string(rows.size()) + " constants";
  emit(c, o, result, &t);
}

// --- gamma -----------------------------------------------------------------

struct GammaArgs {
  int dim = 2;
  int k = 0;
  std::string p = "2";
  int knots = 8;
  int budget = 8000;
  int restarts = 8;
  int threads = 1;
};

void run_gamma(const Common& c, const GammaArgs& a) {
  Output o;
  o.command = "gamma";
  GammaQuery q;
  q.dimension = a.dim;
  q.level = a.k;
  q.p = parse_real(a.p);
  q.knots = a.knots;
  q.budget = a.budget;
  q.seed = c.seed;
  q.restarts = a.restarts;
  q.threads = a.threads;
  o.config = report::query_json(q);
  o.config["threads"] = a.threads;
  const GammaEstimate e = upper_bound_gamma(q);
  json est = report::estimate_json(e);
  json result{{"query", report::query_json(q)},
              {"estimate", est},
              {"witness", est["witness"]},
              {"trace", est["trace"]}};
  for (const auto& tp : e.trace) o.plot.emplace_back(tp.evaluation, tp.value);
  o.plot_x = "evaluation";
  o.plot_y = "best_value";
  report::Table t;
  t.header = {"value", "kind", "mu_k", "amplitude", "evaluations", "zero_count", "member"};
  t.add({report::number(e.value), to_string(e.kind), report::number(e.mu_k), report::number(e.amplitude),
         std::to_string(e.evaluations), std::to_string(e.zero_count), e.membership.member ? "true" : "false"});
  o.summary = "gamma: " + to_string(e.kind) + " " + report::number(e.value);
  emit(c, o, result, &t);
}

// --- verify ----------------------------------------------------------------

struct VerifyArgs {
  std::string potential;
  int k = -1;
};

void run_verify(const Common& c, const VerifyArgs& a) {
  Output o;
  o.command = "verify";
  std::ifstream in(a.potential);
  if (!in) throw ConfigError("cannot read potential file '" + a.potential + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& ex) {
    throw ConfigError(std::string("malformed potential JSON: ") + ex.what());
  }
  RadialPotential pot = potential_from_json(doc);
  int k = a.k;
  if (k < 0 && pot.level()) k = *pot.level();
  if (k < 0) throw ConfigError("no level: pass --k or store \"level\" in the potential");
  o.config = {{"potential", to_json(pot)}, {"k", k}};
  const EigenPair phi = neumann_radial_eigen(pot.dimension(), k);
  const MembershipReport m = is_member_gamma_k(pot, phi.eigenvalue);
  const RadialSolution sol = shoot_radial(pot);
  json result{{"mu_k", phi.eigenvalue}, {"membership", report::membership_json(m)}, {"zeros", sol.zeros}};
  result["ode_residual"] = ode_residual(pot, sol.samples());
  if (m.member) result["interlacing"] = report::zero_report_json(verify_interlacing(phi, pot));
  const IdentityResidual id = orthogonality_identity_residual(sol, phi, 1.0);
  result["identity"] = {{"lhs", id.lhs}, {"rhs", id.rhs}, {"residual", id.residual}, {"scale", id.scale}};
  result["norms"] = {{"l1", lp_distance(pot, phi.eigenvalue, 1.0)},
                     {"l2", lp_distance(pot, phi.eigenvalue, 2.0)},
                     {"linf", lp_distance(pot, phi.eigenvalue, std::numeric_limits<double>::infinity())}};
  o.plot = profile(sol.samples());
  o.plot_y = "u";
  o.summary = std::string("verify: ") + (m.member ? "member" : "not a member") + ", " +
              std::to_string(sol.zeros.size()) + " zeros";
  emit(c, o, result, nullptr);
}

// --- trichotomy ------------------------------------------------------------

struct TrichotomyArgs {
  int dim = 3;
  int k = 1;
  std::string ps = "1,1.5,2,3,inf";
  int knots = 8;
  int budget = 800;
  int threads = 1;
  double floor_fraction = 1e-2;
};

void run_trichotomy(const Common& c, const TrichotomyArgs& a) {
  Output o;
  o.command = "trichotomy";
  const std::vector<double> ps = parse_list(a.ps);
  json pj = json::array();
  for (double p : ps) pj.push_back(report::real(p));
  o.config = {{"dim", a.dim},         {"k", a.k},           {"p_grid", pj}, {"knots", a.knots},
              {"budget", a.budget},   {"threads", a.threads}, {"floor_fraction", a.floor_fraction}};
  TrichotomyConfig cfg;
  cfg.knots = a.knots;
  cfg.budget = a.budget;
  cfg.seed = c.seed;
  cfg.threads = a.threads;
  cfg.floor_fraction = a.floor_fraction;
  const auto rows = trichotomy_report(a.dim, a.k, ps, cfg);
  const report::Table t = report::trichotomy_table(rows);
  for (const auto& r : rows)
    if (std::isfinite(r.p)) o.plot.emplace_back(r.p, r.upper_bound);
  o.plot_x = "p";
  o.plot_y = "upper_bound";
  o.summary = "trichotomy: " + std::to_string(rows.size()) + " rows (numerical evidence, not proof)";
  emit(c, o, json{{"rows", report::to_json(t)}, {"note", "numerical evidence, not proof"}}, &t);
}

int fail(int code, const std::string& kind, const std::string& message) {
  std::cerr << json{{"error", kind}, {"message", message}, {"exit_code", code}}.dump() << "\n";
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"radlyap: radial eigenvalues, zero structure and Lyapunov-constant bounds"};
  app.set_version_flag("--version", std::string(radlyap::kVersion));
  app.require_subcommand(1);

  Common ce, cf, cp, cs, cg, cv, ct;
  EigenArgs eigen;
  auto* se = app.add_subcommand("eigen", "Radial eigenpair (Neumann mu_k, Dirichlet ball or annulus)");
  se->add_option("--dim", eigen.dim, "Dimension N")->capture_default_str();
  se->add_option("--k", eigen.k, "Neumann index")->capture_default_str();
  se->add_option("--bc", eigen.bc, "Boundary condition")->check(CLI::IsMember({"neumann", "dirichlet"}))->capture_default_str();
  se->add_option("--radius", eigen.radius, "Outer radius (Dirichlet)")->capture_default_str();
  se->add_option("--inner", eigen.inner, "Inner radius; > 0 selects the annulus (Dirichlet)")->capture_default_str();

  FamilyArgs family;
  auto* sf = app.add_subcommand("family", "Subcritical glued family: norm sweep over epsilon");
  sf->add_option("--dim", family.dim, "Dimension N >= 3")->capture_default_str();
  sf->add_option("--k", family.k, "Level k >= 1")->capture_default_str();
  sf->add_option("--p", family.p, "Exponent p (finite)")->capture_default_str();
  sf->add_option("--eps-sweep", family.sweep, "start:stop:halve, start:stop:tenth or a comma list")->capture_default_str();

  PlanarArgs planar;
  auto* sp = app.add_subcommand("planar", "Planar family: integral of A_alpha and its bound");
  sp->add_option("--k", planar.k, "Level k >= 1")->capture_default_str();
  sp->add_option("--alpha", planar.alpha, "Comma list or start:stop:tenth")->capture_default_str();

  SobolevArgs sobolev;
  auto* ss = app.add_subcommand("sobolev", "Rayleigh constants alpha(N,p), C_p, C_N and gap bounds");
  ss->add_option("--dim", sobolev.dims, "Comma list of dimensions")->capture_default_str();
  ss->add_option("--p", sobolev.ps, "Comma list of exponents (> N/2 for alpha)")->capture_default_str();
  ss->add_option("--M", sobolev.M, "Norm budget for the gap bounds");
  ss->add_option("--grid", sobolev.grid, "Finite elements of the discretized method")->capture_default_str();

  GammaArgs gamma;
  auto* sg = app.add_subcommand("gamma", "Upper bound for gamma_{p,k}");
  sg->add_option("--dim", gamma.dim, "Dimension N")->capture_default_str();
  sg->add_option("--k", gamma.k, "Level k")->capture_default_str();
  sg->add_option("--p", gamma.p, "Exponent p in [1, inf]")->capture_default_str();
  sg->add_option("--knots", gamma.knots, "Cells of the uniform shape grid")->capture_default_str();
  sg->add_option("--budget", gamma.budget, "Objective evaluations")->capture_default_str();
  sg->add_option("--restarts", gamma.restarts, "Seeded restarts")->capture_default_str();
  sg->add_option("--threads", gamma.threads, "Concurrent restarts")->capture_default_str();

  VerifyArgs verify;
  auto* sv = app.add_subcommand("verify", "Check a potential from a JSON file");
  sv->add_option("--potential", verify.potential, "Potential JSON document")->required();
  sv->add_option("--k", verify.k, "Level k (default: the document's level)");

  TrichotomyArgs tri;
  auto* st = app.add_subcommand("trichotomy", "Evidence table across p");
  st->add_option("--dim", tri.dim, "Dimension N")->capture_default_str();
  st->add_option("--k", tri.k, "Level k")->capture_default_str();
  st->add_option("--p", tri.ps, "Comma list of exponents")->capture_default_str();
  st->add_option("--knots", tri.knots, "Cells of the uniform shape grid")->capture_default_str();
  st->add_option("--budget", tri.budget, "Objective evaluations per p")->capture_default_str();
  st->add_option("--threads", tri.threads, "Concurrent restarts")->capture_default_str();
  st->add_option("--floor", tri.floor_fraction, "Floor as a fraction of mu_{k+1} - mu_k")->capture_default_str();

  add_common(se, ce, "json");
  add_common(sf, cf, "csv");
  add_common(sp, cp, "csv");
  add_common(ss, cs, "csv");
  add_common(sg, cg, "json");
  add_common(sv, cv, "json");
  add_common(st, ct, "csv");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return fail(2, "ConfigError", e.what());
  }

  try {
    if (*se) run_eigen(ce, eigen);
    if (*sf) run_family(cf, family);
    if (*sp) run_planar(cp, planar);
    if (*ss) run_sobolev(cs, sobolev);
    if (*sg) run_gamma(cg, gamma);
    if (*sv) run_verify(cv, verify);
    if (*st) run_trichotomy(ct, tri);
  } catch (const ConfigError& e) {
    return fail(2, "ConfigError", e.what());
  } catch (const radlyap::Error& e) {
    if (e.kind() == radlyap::ErrorKind::InvalidArgument) return fail(2, "ConfigError", e.what());
    return fail(3, "SolverError", std::string(radlyap::to_string(e.kind())) + ": " + e.what());
  } catch (const std::exception& e) {
    return fail(3, "SolverError", e.what());
  }
  return 0;
}
