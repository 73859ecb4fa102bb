#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "radlyap/families.hpp"

using namespace radlyap;

TEST(Subcritical, CoefficientValuesMatchClosedForms) {
  // N = 3: lambda_1(B_eps) = (pi/eps)^2, lambda_1(A(eps, r_1)) = (pi/(r_1 - eps))^2
  const double eps = 0.05;
  const GluedSolution g = build_subcritical_family({3, 1, eps});
  const double r1 = std::numbers::pi / oracle::tan_fixed_point(1);
  EXPECT_LT(oracle::rel(g.core_value, std::pow(std::numbers::pi / eps, 2)), 1e-8);
  EXPECT_LT(oracle::rel(g.annulus_eigenvalue, std::pow(std::numbers::pi / (r1 - eps), 2)), 1e-7);
  EXPECT_NEAR(g.interfaces.back(), r1, 1e-9);
}

TEST(Subcritical, GluedSolutionIsC1AndAMember) {
  for (int n : {3, 4, 5})
    for (int k : {1, 2}) {
      const GluedSolution g = build_subcritical_family({n, k, 0.02});
      for (double m : g.value_mismatch) EXPECT_LT(m, 1e-8);
      for (double m : g.derivative_mismatch) EXPECT_LT(m, 1e-8);
      EXPECT_TRUE(g.membership.member) << n << " " << k;
      EXPECT_EQ(static_cast<int>(g.zeros.size()), k + 1);
      EXPECT_LT(ode_residual(g.potential, g.samples), 1e-6);
    }
}

TEST(Subcritical, NormClosedFormMatchesQuadrature) {
  const GluedSolution g = build_subcritical_family({3, 1, 0.01});
  for (double p : {1.0, 1.2, 1.4}) {
    const NormPair np = subcritical_norm(g, p);
    EXPECT_LT(oracle::rel(np.quadrature, np.closed_form), 1e-8) << p;
  }
}

TEST(Subcritical, NormVanishesBelowHalfDimension) {
  // scaling eps^{N/p - 2} -> 0 for p < N/2 in the core
  double previous = INFINITY;
  for (double eps : {0.1, 0.05, 0.025, 0.0125, 0.00625}) {
    const double v = subcritical_norm(build_subcritical_family({3, 1, eps}), 1.0).closed_form;
    EXPECT_LT(v, previous);
    previous = v;
  }
}

TEST(Subcritical, RejectsBadParameters) {
  EXPECT_THROW(build_subcritical_family({2, 1, 0.1}), Error);
  EXPECT_THROW(build_subcritical_family({3, 0, 0.1}), Error);
  EXPECT_THROW(build_subcritical_family({3, 1, 0.9}), Error);
}

TEST(Planar, MinimumOfCoefficientIsAttainedInside) {
  for (double alpha : {0.3, 0.05}) {
    const AlphaMinimum m = planar_m_alpha(alpha);
    for (int i = 1; i <= 2000; ++i) EXPECT_GE(planar::a_alpha(alpha, i / 2000.0), m.value - 1e-9);
  }
}

TEST(Planar, IntegralOfCoefficientIsBoundedAndShrinks) {
  double previous = INFINITY;
  for (double alpha : {0.3, 0.1, 0.01, 1e-4, 1e-8}) {
    const double v = planar_a_alpha_integral(alpha);
    EXPECT_LE(v, planar::a_alpha_integral_bound(alpha) * (1 + 1e-12)) << alpha;
    EXPECT_LT(v, previous);
    previous = v;
  }
}

TEST(Planar, IntegralMatchesDirectQuadrature) {
  // 2 pi int_0^1 r A dr, split at alpha and integrated with Simpson's rule as an independent check
  const double alpha = 0.2;
  auto simpson = [&](double lo, double hi, int n) {
    const double h = (hi - lo) / n;
    double s = 0.0;
    for (int i = 0; i <= n; ++i) {
      const double r = lo + i * h;
      const double f = r * planar::a_alpha_branch(alpha, r, r > alpha || (i == 0 && lo >= alpha));
      s += f * (i == 0 || i == n ? 1 : (i % 2 ? 4 : 2));
    }
    return s * h / 3.0;
  };
  const double direct = 2.0 * std::numbers::pi * (simpson(0.0, alpha, 2000) + simpson(alpha, 1.0, 20000));
  EXPECT_LT(oracle::rel(planar_a_alpha_integral(alpha), direct), 1e-9);
}

TEST(Planar, FamilyIsAMemberWithSmallResidual) {
  for (double alpha : {0.3, 0.01}) {
    const GluedSolution g = build_planar_family({alpha, 1, std::nullopt});
    EXPECT_TRUE(g.membership.member) << alpha;
    for (double m : g.derivative_mismatch) EXPECT_LT(m, 1e-8);
    EXPECT_LT(ode_residual(g.potential, g.samples), 1e-6);
    const PlanarNorm norm = planar_l1_norm(g);
    EXPECT_LE(norm.value, norm.bound * (1 + 1e-9));
  }
}

TEST(Planar, TooLargeEpsilonIsRejected) {
  try {
    build_planar_family({0.3, 1, 0.6});
    FAIL();
  } catch (const Error& e) {
    EXPECT_TRUE(e.kind() == ErrorKind::MembershipFailure || e.kind() == ErrorKind::InvalidArgument);
  }
}

TEST(Linf, ConstantIsTheSpectralGap) {
  for (int n : {2, 3})
    for (int k : {0, 1}) {
      const LinfConstant c = linf_constant(n, k);
      EXPECT_LT(oracle::rel(c.value, oracle::neumann_mu(n, k + 1) - oracle::neumann_mu(n, k)), 1e-8);
      EXPECT_TRUE(is_member_gamma_k(c.witness, c.mu_k).member);
    }
}

TEST(Sweeps, RowsCarryConsistentColumns) {
  const auto rows = subcritical_sweep(3, 1, 1.0, {0.1, 0.05});
  ASSERT_EQ(rows.size(), 2u);
  for (const auto& r : rows) {
    EXPECT_TRUE(r.interlace_ok);
    EXPECT_GE(r.zero_count, 2);
    EXPECT_LT(oracle::rel(r.quadrature_norm, r.closed_form_norm), 1e-8);
  }
  const auto planar_rows = planar_sweep(1, {0.1});
  ASSERT_EQ(planar_rows.size(), 1u);
  EXPECT_LE(planar_rows[0].quadrature_norm, planar_rows[0].closed_form_norm);
}
