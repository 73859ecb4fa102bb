#pragma once

// JSON documents and CSV tables for the command-line runner.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "radlyap/errors.hpp"
#include "radlyap/families.hpp"
#include "radlyap/gamma.hpp"
#include "radlyap/potential.hpp"
#include "radlyap/radial_spectra.hpp"
#include "radlyap/sobolev.hpp"
#include "radlyap/zero_structure.hpp"

namespace radlyap::report {

using nlohmann::json;

constexpr int kSchema = 1;

/// %.17g, with inf/nan spelled the way the CLI accepts them.
inline std::string number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

// JSON has no infinity; store it as the string "inf".
inline json real(double x) {
  if (std::isfinite(x)) return x;
  return number(x);
}

/// Document envelope shared by every JSON artifact.
inline json envelope(const std::string& command, const json& config, json result) {
  return json{{"schema", kSchema},
              {"version", kVersion},
              {"command", command},
              {"config", config},
              {"result", std::move(result)}};
}

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  void add(std::vector<std::string> row) {
    require(row.size() == header.size(), "row width does not match the header");
    rows.push_back(std::move(row));
  }
};

/// CSV text: a comment line carrying version and config, then header and rows.
inline std::string to_csv(const Table& t, const json& config) {
  std::ostringstream os;
  os << "# radlyap " << kVersion << " config=" << config.dump() << "\n";
  for (std::size_t i = 0; i < t.header.size(); ++i) os << (i ? "," : "") << t.header[i];
  os << "\n";
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << row[i];
    os << "\n";
  }
  return os.str();
}

inline json to_json(const Table& t) {
  json rows = json::array();
  for (const auto& row : t.rows) {
    json r = json::object();
    for (std::size_t i = 0; i < row.size(); ++i) {
      // numeric cells go back to numbers, the rest stay strings
      char* end = nullptr;
      const double v = std::strtod(row[i].c_str(), &end);
      if (end && *end == '\0' && !row[i].empty() && std::isfinite(v))
        r[t.header[i]] = v;
      else
        r[t.header[i]] = row[i];
    }
    rows.push_back(std::move(r));
  }
  return rows;
}

/// Two-column plot file.
inline std::string plot_csv(const std::string& x, const std::string& y,
                            const std::vector<std::pair<double, double>>& points) {
  std::ostringstream os;
  os << x << "," << y << "\n";
  for (const auto& [a, b] : points) os << number(a) << "," << number(b) << "\n";
  return os.str();
}

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::InvalidArgument, "cannot open '" + path + "' for writing");
  out << content;
  if (!out) throw Error(ErrorKind::InvalidArgument, "failed writing '" + path + "'");
}

// ---------------------------------------------------------------------------

inline std::string to_string(BoundaryCondition bc) { return bc == BoundaryCondition::Neumann ? "neumann" : "dirichlet"; }

inline json eigen_json(const EigenPair& e) {
  json zeros = json::array();
  for (double z : e.zeros) zeros.push_back(z);
  // r_1 > r_2 > ... > r_k, the labelling used by the interlacing checks
  json labelled = json::object();
  for (std::size_t i = 0; i < e.zeros.size(); ++i)
    labelled["r_" + std::to_string(i + 1)] = e.zeros[e.zeros.size() - 1 - i];
  return json{{"eigenvalue", e.eigenvalue},
              {"index", e.index},
              {"dimension", e.dimension},
              {"inner", e.inner},
              {"outer", e.outer},
              {"boundary_condition", to_string(e.bc)},
              {"sphere_measure", e.sphere_measure},
              {"zeros", zeros},
              {"zeros_labelled", labelled},
              {"end_derivative", e.end_derivative()}};
}

inline json membership_json(const MembershipReport& m) {
  return json{{"member", m.member},
              {"dominates", m.dominates},
              {"strictly_above", m.strictly_above},
              {"neumann_solvable", m.neumann_solvable},
              {"relative_residual", m.relative_residual},
              {"longest_strict_run", m.longest_strict_run},
              {"zero_count", m.zero_count}};
}

inline json zero_report_json(const ZeroReport& z) {
  return json{{"zero_count", z.zero_count},
              {"zeros", z.zeros},
              {"boundary_zero", z.boundary_zero},
              {"interlace_ok", z.interlace_ok},
              {"interlace_margins", z.interlace_margins},
              {"neumann_residual", z.neumann_residual}};
}

inline Table family_table(const std::vector<FamilySweepRow>& rows, const std::string& parameter,
                          const std::string& closed, const std::string& quad) {
  Table t;
  t.header = {parameter, closed, quad, "zero_count", "interlace_ok", "ode_residual"};
  for (const auto& r : rows)
    t.add({number(r.parameter), number(r.closed_form_norm), number(r.quadrature_norm), std::to_string(r.zero_count),
           r.interlace_ok ? "true" : "false", number(r.residual)});
  return t;
}

inline Table constants_table_csv(const std::vector<ConstantsRow>& rows) {
  Table t;
  t.header = {"N", "p", "q", "alpha", "C_p", "method_gap"};
  for (const auto& r : rows)
    t.add({std::to_string(r.dimension), number(r.p), number(r.q), number(r.alpha), number(r.c_p),
           number(r.method_gap)});
  return t;
}

inline json critical_json(int dimension, const CriticalConstant& c) {
  return json{{"dimension", dimension},
              {"value", c.value},
              {"attained", c.attained},
              {"note", "infimum not attained; estimate extrapolated along a concentrating family"},
              {"lambdas", c.lambdas},
              {"quotients", c.quotients},
              {"slope", c.slope},
              {"fit_residual", c.fit_residual},
              {"decreasing_tail", c.decreasing_tail},
              {"reference", c.reference}};
}

inline json gap_json(const GapBounds& g) {
  return json{{"M", g.M}, {"epsilon1", g.epsilon1}, {"epsilon2", g.epsilon2}, {"alpha", g.alpha}, {"C_p", g.c_p}};
}

inline json query_json(const GammaQuery& q) {
  return json{{"dimension", q.dimension}, {"k", q.level},         {"p", real(q.p)},
              {"knots", q.knots},         {"budget", q.budget},   {"seed", q.seed},
              {"restarts", q.restarts},   {"nested", q.nested},   {"family_eps_min", q.family_eps_min},
              {"compare_family", q.compare_family}, {"grid", q.grid}};
}

inline json estimate_json(const GammaEstimate& e) {
  json trace = json::array();
  for (const auto& t : e.trace) trace.push_back({{"evaluation", t.evaluation}, {"value", t.value}});
  json restarts = json::array();
  for (const auto& r : e.restarts)
    restarts.push_back({{"seed", r.seed}, {"evaluations", r.evaluations}, {"best", real(r.best)}});
  json out{{"value", e.value},
           {"kind", to_string(e.kind)},
           {"mu_k", e.mu_k},
           {"amplitude", e.amplitude},
           {"shape", e.shape},
           {"evaluations", e.evaluations},
           {"budget_exhausted", e.budget_exhausted},
           {"zero_count", e.zero_count},
           {"membership", membership_json(e.membership)},
           {"witness", to_json(e.witness)},
           {"trace", trace},
           {"restarts", restarts}};
  if (e.optimizer_value) out["optimizer_value"] = *e.optimizer_value;
  return out;
}

inline Table trichotomy_table(const std::vector<TrichotomyRow>& rows) {
  Table t;
  t.header = {"p", "regime", "upper_bound", "kind", "family_limit", "family_parameter", "floor", "classification"};
  for (const auto& r : rows)
    t.add({number(r.p), r.regime, number(r.upper_bound), r.kind, r.family_limit ? number(*r.family_limit) : "",
           r.family_parameter ? number(*r.family_parameter) : "", number(r.floor), r.classification});
  return t;
}

}  // namespace radlyap::report
