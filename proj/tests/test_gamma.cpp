#include <cmath>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "radlyap/families.hpp"
#include "radlyap/gamma.hpp"

using namespace radlyap;

TEST(Amplitude, ConstantShapeGivesTheSpectralGap) {
  for (int n : {2, 3})
    for (int k : {0, 1}) {
      const AmplitudeSolution s = amplitude_solve(n, k, RadialPotential::constant(n, 1.0));
      EXPECT_LT(oracle::rel(s.t, oracle::neumann_mu(n, k + 1) - oracle::neumann_mu(n, k)), 1e-8);
      EXPECT_EQ(s.zero_count, k + 1);
    }
}

TEST(Amplitude, ScalesInverselyWithTheShape) {
  const RadialPotential shape = RadialPotential::piecewise_constant(3, {0.0, 0.3, 1.0}, {1.0, 0.2});
  const RadialPotential doubled = RadialPotential::piecewise_constant(3, {0.0, 0.3, 1.0}, {2.0, 0.4});
  const double t = amplitude_solve(3, 1, shape).t;
  EXPECT_LT(oracle::rel(amplitude_solve(3, 1, doubled).t, 0.5 * t), 1e-10);
}

TEST(Amplitude, WitnessIsAMemberWithKPlusOneZeros) {
  const RadialPotential shape = RadialPotential::piecewise_constant(2, {0.0, 0.25, 0.5, 1.0}, {0.1, 1.0, 0.3});
  const AmplitudeSolution s = amplitude_solve(2, 1, shape);
  EXPECT_EQ(s.zero_count, 2);
  EXPECT_TRUE(is_member_gamma_k(s.witness, s.mu_k).member);
  EXPECT_NEAR(s.end_angle, 1.5 * std::numbers::pi + std::numbers::pi, 1e-8);
}

TEST(Amplitude, NoRootBelowTheCap) {
  AmplitudeConfig cfg;
  cfg.t_max = 1.0;
  try {
    amplitude_solve(3, 0, RadialPotential::constant(3, 1.0), cfg);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NoRootInRange);
  }
}

TEST(Gamma, InfiniteExponentIsExact) {
  GammaQuery q;
  q.dimension = 3;
  q.level = 1;
  q.p = INFINITY;
  const GammaEstimate e = upper_bound_gamma(q);
  EXPECT_EQ(e.kind, EstimateKind::Exact);
  EXPECT_LT(oracle::rel(e.value, oracle::neumann_mu(3, 2) - oracle::neumann_mu(3, 1)), 1e-8);
  EXPECT_TRUE(e.membership.member);
}

TEST(Gamma, UpperBoundBeatsTheConstantWitness) {
  GammaQuery q;
  q.dimension = 2;
  q.level = 0;
  q.p = 2.0;
  q.knots = 4;
  q.budget = 400;
  q.restarts = 4;
  const GammaEstimate e = upper_bound_gamma(q);
  EXPECT_EQ(e.kind, EstimateKind::UpperBound);
  const double gap = oracle::neumann_mu(2, 1);
  EXPECT_LE(e.value, gap * std::sqrt(std::numbers::pi) * (1 + 1e-9));
  EXPECT_TRUE(e.membership.member);
  EXPECT_EQ(e.zero_count, 1);
  EXPECT_LT(oracle::rel(lp_distance(e.witness, e.mu_k, 2.0), e.value), 1e-12);
  EXPECT_DOUBLE_EQ(*std::max_element(e.shape.begin(), e.shape.end()), 1.0);
}

TEST(Gamma, BudgetIsMonotone) {
  GammaQuery q;
  q.dimension = 2;
  q.p = 1.5;
  q.knots = 4;
  q.restarts = 2;
  double previous = INFINITY;
  for (int budget : {20, 60, 200}) {
    q.budget = budget;
    const double v = upper_bound_gamma(q).value;
    EXPECT_LE(v, previous * (1 + 1e-12)) << budget;
    previous = v;
  }
}

TEST(Gamma, DeterministicAcrossRunsAndThreads) {
  GammaQuery q;
  q.dimension = 3;
  q.p = 2.0;
  q.knots = 4;
  q.budget = 120;
  q.restarts = 3;
  const GammaEstimate a = upper_bound_gamma(q);
  const GammaEstimate b = upper_bound_gamma(q);
  q.threads = 3;
  const GammaEstimate c = upper_bound_gamma(q);
  EXPECT_EQ(a.value, b.value);
  EXPECT_EQ(a.value, c.value);
  EXPECT_EQ(a.shape, c.shape);
}

TEST(Gamma, CustomGridReachesBelowTheFamily) {
  // a cell of width eps at the origin and a knot at r_1 mimic the glued family
  const double eps = 0.0125;
  const GluedSolution g = build_subcritical_family({3, 1, eps});
  GammaQuery q;
  q.dimension = 3;
  q.level = 1;
  q.p = 1.0;
  q.grid = {0.0, eps, g.interfaces.back(), 1.0};
  q.budget = 800;
  q.compare_family = false;
  const GammaEstimate e = upper_bound_gamma(q);
  EXPECT_TRUE(e.membership.member);
  EXPECT_LE(e.value, subcritical_norm(g, 1.0).closed_form);
}

TEST(Gamma, SubcriticalFamilyReplacesAWeakerOptimum) {
  GammaQuery q;
  q.dimension = 3;
  q.level = 1;
  q.p = 1.0;
  q.knots = 2;
  q.budget = 40;
  q.restarts = 2;
  const GammaEstimate e = upper_bound_gamma(q);
  EXPECT_EQ(e.kind, EstimateKind::FamilyLimit);
  ASSERT_TRUE(e.optimizer_value.has_value());
  EXPECT_LT(e.value, *e.optimizer_value);
}

TEST(Gamma, InvalidQueriesAreRejected) {
  GammaQuery q;
  q.p = 0.5;
  EXPECT_THROW(upper_bound_gamma(q), Error);
  q = GammaQuery{};
  q.grid = {0.0, 0.5, 0.4, 1.0};
  EXPECT_THROW(upper_bound_gamma(q), Error);
  q = GammaQuery{};
  q.budget = 0;
  EXPECT_THROW(upper_bound_gamma(q), Error);
}

TEST(Trichotomy, ClassifiesTheEndpoints) {
  TrichotomyConfig cfg;
  cfg.knots = 4;
  cfg.budget = 80;
  const auto rows = trichotomy_report(3, 1, {1.0, INFINITY}, cfg);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0].regime, "subcritical");
  EXPECT_EQ(rows[0].classification, "vanishing-evidence");
  EXPECT_EQ(rows[1].classification, "positive-evidence");
  EXPECT_EQ(rows[1].kind, "Exact");
}

TEST(Trichotomy, GroundLevelIsInconclusive) {
  TrichotomyConfig cfg;
  cfg.knots = 2;
  cfg.budget = 20;
  const auto rows = trichotomy_report(2, 0, {2.0}, cfg);
  EXPECT_EQ(rows.at(0).classification, "inconclusive");
}
