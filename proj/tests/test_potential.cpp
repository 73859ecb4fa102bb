#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "radlyap/planar.hpp"
#include "radlyap/potential.hpp"

using namespace radlyap;

namespace {

RadialPotential mixed() {
  return RadialPotential(3,
                         {{0.0, 0.2, ConstantPiece{50.0}},
                          {0.2, 0.6, ClosedFormPiece{"power_law", {{"offset", 1.0}, {"coefficient", 2.0}, {"exponent", 1.5}}}},
                          {0.6, 1.0, SampledPiece{{0.6, 0.8, 1.0}, {3.0, 5.0, 4.0}}}},
                         2);
}

}  // namespace

TEST(Potential, EvaluatesEachShape) {
  const RadialPotential a = mixed();
  EXPECT_EQ(a(0.1), 50.0);
  EXPECT_NEAR(a(0.4), 1.0 + 2.0 * std::pow(0.4, 1.5), 1e-15);
  EXPECT_NEAR(a(0.7), 4.0, 1e-15);
  EXPECT_NEAR(a(0.9), 4.5, 1e-15);
}

TEST(Potential, BreakpointBelongsToTheLeftSegment) {
  const RadialPotential a = RadialPotential::piecewise_constant(2, {0.0, 0.5, 1.0}, {1.0, 7.0});
  EXPECT_EQ(a(0.5), 1.0);
  EXPECT_EQ(a(0.5000001), 7.0);
}

TEST(Potential, JsonRoundTrip) {
  const RadialPotential a = mixed();
  const RadialPotential b = potential_from_json(nlohmann::json::parse(to_json(a).dump()));
  EXPECT_EQ(to_json(a), to_json(b));
  ASSERT_TRUE(b.level().has_value());
  EXPECT_EQ(*b.level(), 2);
  for (double r : {0.05, 0.3, 0.65, 0.99}) EXPECT_EQ(a(r), b(r));
}

TEST(Potential, MalformedDocumentsAreRejected) {
  const char* bad[] = {
      R"({"pieces": []})",
      R"({"dimension": 2, "pieces": [{"lo": 0, "hi": 0.5, "type": "constant", "value": 1}]})",
      R"({"dimension": 2, "pieces": [{"lo": 0, "hi": 1, "type": "spline", "value": 1}]})",
      R"({"dimension": 2, "pieces": [{"lo": 0, "hi": 1, "type": "constant"}]})",
      R"({"dimension": 2, "pieces": [{"lo": 0, "hi": 1, "type": "closed_form", "name": "nope", "params": {}}]})",
      R"({"dimension": 2, "pieces": [{"lo": 0, "hi": 1, "type": "sampled", "grid": [0, 1], "values": [1]}]})",
      R"({"dimension": 2, "pieces": [{"lo": 0, "hi": 0.4, "type": "constant", "value": 1},
                                     {"lo": 0.5, "hi": 1, "type": "constant", "value": 1}]})",
  };
  for (const char* text : bad) {
    try {
      potential_from_json(nlohmann::json::parse(text));
      ADD_FAILURE() << text;
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::InvalidArgument) << text;
    }
  }
}

TEST(Potential, LpNormOfConstantIsVolumeScaled) {
  const RadialPotential a = RadialPotential::constant(3, 2.0);
  const double vol = 4.0 / 3.0 * std::numbers::pi;
  EXPECT_NEAR(lp_norm(a, 1.0), 2.0 * vol, 1e-13);
  EXPECT_NEAR(lp_norm(a, 2.0), 2.0 * std::sqrt(vol), 1e-13);
  EXPECT_EQ(lp_norm(a, INFINITY), 2.0);
}

TEST(Potential, ExactAndQuadratureNormsAgree) {
  const RadialPotential a = RadialPotential::piecewise_constant(4, {0.0, 0.1, 0.35, 0.8, 1.0}, {90.0, 3.0, 17.0, 5.0});
  for (double p : {1.0, 1.5, 2.0, 3.7})
    EXPECT_NEAR(lp_distance(a, 5.0, p), lp_distance_quadrature(a, 5.0, p), 1e-9 * lp_distance(a, 5.0, p)) << p;
}

TEST(Potential, PowerLawNormMatchesAntiderivative) {
  // a = r^2 on B_1 in R^2: ||a||_1 = 2 pi int r^3 = pi / 2
  const RadialPotential a(2, {{0.0, 1.0, ClosedFormPiece{"power_law", {{"offset", 0.0}, {"coefficient", 1.0}, {"exponent", 2.0}}}}});
  EXPECT_NEAR(lp_norm(a, 1.0), std::numbers::pi / 2.0, 1e-12);
}

TEST(Potential, RejectsBadExponent) { EXPECT_THROW(lp_norm(RadialPotential::constant(2, 1.0), 0.5), Error); }

TEST(Planar, ProfileIsContinuouslyDifferentiableAtAlpha) {
  for (double alpha : {0.5, 0.1, 1e-3}) {
    const double below = planar::v_alpha(alpha, alpha * (1 - 1e-12));
    EXPECT_NEAR(planar::v_alpha(alpha, alpha), below, 1e-9);
    EXPECT_NEAR(planar::v_alpha_derivative(alpha, alpha), -1.0 / alpha + alpha * (4 * alpha * alpha * alpha - 8 * alpha), 1e-12);
    const double left = alpha * (4 * alpha * alpha * alpha - 8 * alpha) - alpha / (alpha * alpha);
    EXPECT_NEAR(planar::v_alpha_derivative(alpha, alpha * (1 - 1e-15)), left, 1e-6 / alpha);
  }
}

TEST(Planar, ProfileVanishesOnTheBoundary) {
  for (double alpha : {0.3, 0.01}) EXPECT_NEAR(planar::v_alpha(alpha, 1.0), 0.0, 1e-15);
}

TEST(Planar, ProfileSolvesItsEquation) {
  // second derivatives written out by hand on each branch
  for (double alpha : {0.4, 0.05, 1e-3})
    for (double r : {1e-4, 0.02, 0.2, 0.5, 0.9, 0.999}) {
      const bool outer = r > alpha;
      const double v2 = outer ? alpha * (12 * r * r - 8) + 1.0 / (r * r) : alpha * (12 * r * r - 8) - 1.0 / (alpha * alpha);
      const double lhs = v2 + planar::v_alpha_derivative(alpha, r) / r + planar::a_alpha(alpha, r) * planar::v_alpha(alpha, r);
      const double scale = std::abs(v2) + std::abs(planar::v_alpha_derivative(alpha, r) / r);
      EXPECT_LT(std::abs(lhs), 1e-12 * scale) << alpha << " " << r;
    }
}

TEST(Planar, BoundaryLimitOfCoefficient) {
  const double alpha = 0.2;
  EXPECT_NEAR(planar::a_alpha(alpha, 1.0 - 1e-7), planar::a_alpha(alpha, 1.0), 1e-5);
}

TEST(Planar, ClosedFormPieceUsesSegmentBranch) {
  const double alpha = 0.1, eps = 0.5;
  const ClosedFormPiece core{"planar_a_alpha", {{"alpha", alpha}, {"epsilon", eps}}};
  const RadialPotential a(2, {{0.0, alpha * eps, core}, {alpha * eps, 1.0, ConstantPiece{1.0}}});
  // left endpoint evaluation at the jump stays on the inner branch
  EXPECT_NEAR(a(alpha * eps), planar::a_alpha_branch(alpha, alpha, false) / (eps * eps), 1e-9);
}
