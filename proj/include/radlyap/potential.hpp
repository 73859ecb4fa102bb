#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <json.hpp>

#include "radlyap/errors.hpp"
#include "radlyap/ode.hpp"
#include "radlyap/planar.hpp"
#include "radlyap/sphere.hpp"

namespace radlyap {

struct ConstantPiece {
  double value = 0.0;
};

/// A named analytic formula. Known names:
///   "planar_a_alpha"  params {alpha, epsilon}: A_alpha(r / epsilon) / epsilon^2
///   "power_law"       params {offset, coefficient, exponent}: offset + coefficient * r^exponent
struct ClosedFormPiece {
  std::string name;
  std::map<std::string, double> params;
};

/// Linear interpolation on an increasing grid; constant extrapolation.
struct SampledPiece {
  std::vector<double> grid;
  std::vector<double> values;
};

struct PotentialSegment {
  double lo = 0.0;
  double hi = 0.0;
  std::variant<ConstantPiece, ClosedFormPiece, SampledPiece> shape;
};

namespace detail {

inline double param(const ClosedFormPiece& piece, const std::string& key) {
  auto it = piece.params.find(key);
  if (it == piece.params.end())
    throw Error(ErrorKind::InvalidArgument, "closed form '" + piece.name + "' needs parameter '" + key + "'");
  return it->second;
}

inline std::function<double(double)> compile(const ClosedFormPiece& piece, double lo, double hi) {
  if (piece.name == "planar_a_alpha") {
    const double alpha = param(piece, "alpha");
    const double eps = param(piece, "epsilon");
    planar::check_alpha(alpha);
    require(eps > 0.0, "epsilon must be positive");
    // the segment decides the branch, so endpoint evaluations stay one-sided
    const bool outer = 0.5 * (lo + hi) > alpha * eps;
    return [alpha, eps, outer](double r) { return planar::a_alpha_branch(alpha, r / eps, outer) / (eps * eps); };
  }
  if (piece.name == "power_law") {
    const double offset = param(piece, "offset");
    const double coefficient = param(piece, "coefficient");
    const double exponent = param(piece, "exponent");
    return [=](double r) { return offset + coefficient * std::pow(r, exponent); };
  }
  throw Error(ErrorKind::InvalidArgument, "unknown closed form '" + piece.name + "'");
}

inline double interpolate(const SampledPiece& s, double r) {
  if (r <= s.grid.front()) return s.values.front();
  if (r >= s.grid.back()) return s.values.back();
  auto it = std::upper_bound(s.grid.begin(), s.grid.end(), r);
  const std::size_t j = static_cast<std::size_t>(it - s.grid.begin());
  const double t = (r - s.grid[j - 1]) / (s.grid[j] - s.grid[j - 1]);
  return (1.0 - t) * s.values[j - 1] + t * s.values[j];
}

}  // namespace detail

/// Radial coefficient a(r) on (0, 1] made of segments that partition the
/// interval.
class RadialPotential {
 public:
  RadialPotential() = default;

  RadialPotential(int dimension, std::vector<PotentialSegment> segments,
                  std::optional<int> level = std::nullopt)
      : dimension_(dimension), segments_(std::move(segments)), level_(level) {
    validate();
    compile();
  }

  static RadialPotential constant(int dimension, double value) {
    return RadialPotential(dimension, {{0.0, 1.0, ConstantPiece{value}}});
  }

  /// Piecewise constant on the cells (knots[i-1], knots[i]] with knots[0] = 0.
  static RadialPotential piecewise_constant(int dimension, const std::vector<double>& knots,
                                            const std::vector<double>& values) {
    require(knots.size() == values.size() + 1, "piecewise_constant: need one more knot than values");
    std::vector<PotentialSegment> segs;
    for (std::size_t i = 0; i < values.size(); ++i)
      segs.push_back({knots[i], knots[i + 1], ConstantPiece{values[i]}});
    return RadialPotential(dimension, std::move(segs));
  }

  int dimension() const { return dimension_; }
  const std::vector<PotentialSegment>& segments() const { return segments_; }
  std::optional<int> level() const { return level_; }
  void set_level(std::optional<int> level) { level_ = level; }

  /// a(r); a breakpoint belongs to the segment on its left.
  double operator()(double r) const {
    for (std::size_t i = 0; i < segments_.size(); ++i)
      if (r <= segments_[i].hi || i + 1 == segments_.size()) return compiled_[i](r);
    return compiled_.back()(r);
  }

  Coefficient coefficient() const { return compiled_; }

  /// Coefficient of the shifted operator: a(r) + shift.
  Coefficient shifted_coefficient(double shift) const {
    Coefficient out;
    for (const auto& piece : compiled_) {
      if (piece.is_constant()) {
        out.push_back(CoefficientPiece::make_constant(piece.lo, piece.hi, piece.constant + shift));
      } else {
        auto f = piece.fn;
        out.push_back(CoefficientPiece::make_function(piece.lo, piece.hi,
                                                      [f, shift](double r) { return f(r) + shift; }));
      }
    }
    return out;
  }

  bool is_piecewise_constant() const {
    return std::all_of(segments_.begin(), segments_.end(), [](const PotentialSegment& s) {
      return std::holds_alternative<ConstantPiece>(s.shape);
    });
  }

  /// Sample points used for pointwise checks: a uniform grid with spacing
  /// `spacing` inside every segment, plus both ends of each segment.
  std::vector<std::pair<double, double>> probe(double spacing = 1e-4) const {
    std::vector<std::pair<double, double>> out;
    for (std::size_t i = 0; i < segments_.size(); ++i) {
      const auto& seg = segments_[i];
      const double lo = std::max(seg.lo, 1e-12);
      const int n = std::max(2, static_cast<int>(std::ceil((seg.hi - lo) / spacing)));
      for (int j = 0; j <= n; ++j) {
        const double r = lo + (seg.hi - lo) * j / n;
        out.emplace_back(r, compiled_[i](r));
      }
    }
    return out;
  }

  double sup_abs() const {
    double m = 0.0;
    for (const auto& [r, v] : probe(1e-3)) m = std::max(m, std::abs(v));
    return m;
  }

 private:
  void validate() const {
    require(dimension_ >= 1, "potential dimension must be >= 1");
    require(!segments_.empty(), "potential needs at least one segment");
    require(segments_.front().lo == 0.0, "segments must start at 0");
    require(segments_.back().hi == 1.0, "segments must end at 1");
    for (std::size_t i = 0; i < segments_.size(); ++i) {
      require(segments_[i].hi > segments_[i].lo, "segments must have positive length");
      if (i > 0) require(segments_[i].lo == segments_[i - 1].hi, "segments must not leave gaps or overlap");
      if (const auto* s = std::get_if<SampledPiece>(&segments_[i].shape)) {
        require(s->grid.size() >= 2 && s->grid.size() == s->values.size(), "sampled piece needs matching grid/values");
        require(std::is_sorted(s->grid.begin(), s->grid.end()), "sampled grid must be increasing");
      }
    }
  }

  void compile() {
    compiled_.clear();
    for (const auto& seg : segments_) {
      std::visit(
          [&](const auto& shape) {
            using T = std::decay_t<decltype(shape)>;
            if constexpr (std::is_same_v<T, ConstantPiece>) {
              compiled_.push_back(CoefficientPiece::make_constant(seg.lo, seg.hi, shape.value));
            } else if constexpr (std::is_same_v<T, ClosedFormPiece>) {
              compiled_.push_back(CoefficientPiece::make_function(seg.lo, seg.hi, detail::compile(shape, seg.lo, seg.hi)));
            } else {
              SampledPiece copy = shape;
              compiled_.push_back(CoefficientPiece::make_function(
                  seg.lo, seg.hi, [copy](double r) { return detail::interpolate(copy, r); }));
            }
          },
          seg.shape);
    }
  }

  int dimension_ = 0;
  std::vector<PotentialSegment> segments_;
  std::optional<int> level_;
  Coefficient compiled_;
};

// ---------------------------------------------------------------------------
// Weighted norms with the full N-dimensional measure omega_N r^{N-1} dr.

namespace detail {

template <class F>
double gk_integrate(F&& f, double lo, double hi, double tol = 1e-10) {
  if (!(hi > lo)) return 0.0;
  return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, lo, hi, 15, tol);
}

}  // namespace detail

/// Quadrature of int_{B_1} |a - c|^p over every segment (no closed forms).
inline double lp_distance_quadrature(const RadialPotential& a, double c, double p) {
  require(p >= 1.0, "p must be >= 1");
  const int n = a.dimension();
  const double omega = sphere_measure(n);
  const Coefficient coeff = a.coefficient();
  if (std::isinf(p)) {
    double m = 0.0;
    for (const auto& [r, v] : a.probe(1e-4)) m = std::max(m, std::abs(v - c));
    return m;
  }
  double total = 0.0;
  for (const auto& piece : coeff) {
    auto integrand = [&](double r) {
      return detail::int_pow(r, n - 1) * std::pow(std::abs(piece(r) - c), p);
    };
    total += detail::gk_integrate(integrand, piece.lo, piece.hi);
  }
  return std::pow(omega * total, 1.0 / p);
}

/// ||a - c||_{L^p(B_1)}; constant segments are integrated exactly.
inline double lp_distance(const RadialPotential& a, double c, double p) {
  require(p >= 1.0, "p must be >= 1");
  if (std::isinf(p) || !a.is_piecewise_constant()) return lp_distance_quadrature(a, c, p);
  const int n = a.dimension();
  double total = 0.0;
  for (const auto& seg : a.segments()) {
    const double v = std::get<ConstantPiece>(seg.shape).value;
    total += std::pow(std::abs(v - c), p) * shell_volume(n, seg.lo, seg.hi);
  }
  return std::pow(total, 1.0 / p);
}

inline double lp_norm(const RadialPotential& a, double p) { return lp_distance(a, 0.0, p); }

// ---------------------------------------------------------------------------
// JSON document: {"dimension": N, "level": k?, "pieces": [...]}

inline nlohmann::json to_json(const RadialPotential& a) {
  nlohmann::json pieces = nlohmann::json::array();
  for (const auto& seg : a.segments()) {
    nlohmann::json j{{"lo", seg.lo}, {"hi", seg.hi}};
    std::visit(
        [&](const auto& shape) {
          using T = std::decay_t<decltype(shape)>;
          if constexpr (std::is_same_v<T, ConstantPiece>) {
            j["type"] = "constant";
            j["value"] = shape.value;
          } else if constexpr (std::is_same_v<T, ClosedFormPiece>) {
            j["type"] = "closed_form";
            j["name"] = shape.name;
            j["params"] = shape.params;
          } else {
            j["type"] = "sampled";
            j["grid"] = shape.grid;
            j["values"] = shape.values;
            j["interpolation"] = "linear";
          }
        },
        seg.shape);
    pieces.push_back(std::move(j));
  }
  nlohmann::json doc{{"dimension", a.dimension()}, {"pieces", std::move(pieces)}};
  if (a.level()) doc["level"] = *a.level();
  return doc;
}

inline RadialPotential potential_from_json(const nlohmann::json& doc) {
  try {
    const int n = doc.at("dimension").get<int>();
    std::vector<PotentialSegment> segs;
    for (const auto& j : doc.at("pieces")) {
      PotentialSegment seg;
      seg.lo = j.at("lo").get<double>();
      seg.hi = j.at("hi").get<double>();
      const std::string type = j.at("type").get<std::string>();
      if (type == "constant") {
        seg.shape = ConstantPiece{j.at("value").get<double>()};
      } else if (type == "closed_form") {
        seg.shape = ClosedFormPiece{j.at("name").get<std::string>(),
                                    j.at("params").get<std::map<std::string, double>>()};
      } else if (type == "sampled") {
        if (j.contains("interpolation"))
          require(j.at("interpolation").get<std::string>() == "linear", "only linear interpolation is supported");
        seg.shape = SampledPiece{j.at("grid").get<std::vector<double>>(), j.at("values").get<std::vector<double>>()};
      } else {
        throw Error(ErrorKind::InvalidArgument, "unknown piece type '" + type + "'");
      }
      segs.push_back(std::move(seg));
    }
    std::optional<int> level;
    if (doc.contains("level")) level = doc.at("level").get<int>();
    return RadialPotential(n, std::move(segs), level);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::InvalidArgument, std::string("malformed potential document: ") + e.what());
  }
}

}  // namespace radlyap
