#include <cmath>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "radlyap/families.hpp"
#include "radlyap/zero_structure.hpp"

using namespace radlyap;

TEST(Zeros, ConstantPotentialCountsSinZeros) {
  // N = 3, a = kappa^2: u = sin(kappa r) / (kappa r), zeros at j pi / kappa
  const double kappa = 11.0;
  const RadialSolution sol = shoot_radial(RadialPotential::constant(3, kappa * kappa));
  const ZeroReport rep = count_and_locate_zeros(sol);
  ASSERT_EQ(rep.zero_count, 3);
  for (int j = 0; j < 3; ++j) EXPECT_NEAR(rep.zeros[j], (j + 1) * std::numbers::pi / kappa, 1e-10);
  EXPECT_FALSE(rep.boundary_zero);
}

TEST(Zeros, ZeroOnTheBoundaryIsCounted) {
  const double kappa = 2.0 * std::numbers::pi;
  const RadialSolution sol = shoot_radial(RadialPotential::constant(3, kappa * kappa));
  const ZeroReport rep = count_and_locate_zeros(sol);
  EXPECT_TRUE(rep.boundary_zero);
  ASSERT_EQ(rep.zero_count, 2);
  EXPECT_EQ(rep.zeros.back(), 1.0);
}

TEST(Zeros, NoZerosForSmallPotential) {
  EXPECT_EQ(count_and_locate_zeros(shoot_radial(RadialPotential::constant(2, 1.0))).zero_count, 0);
}

TEST(Membership, NextEigenvalueIsAMember) {
  for (int n : {2, 3})
    for (int k : {0, 1, 2}) {
      const double mu_next = oracle::neumann_mu(n, k + 1);
      const MembershipReport m = is_member_gamma_k(n, k, RadialPotential::constant(n, mu_next));
      EXPECT_TRUE(m.member) << n << " " << k;
      EXPECT_EQ(m.zero_count, k + 1);
    }
}

TEST(Membership, EachConditionCanFail) {
  const double mu1 = oracle::neumann_mu(3, 1);
  // equals mu_k everywhere: not strictly above
  MembershipReport m = is_member_gamma_k(3, 1, RadialPotential::constant(3, mu1));
  EXPECT_FALSE(m.strictly_above);
  EXPECT_FALSE(m.member);
  // below mu_k on a piece
  m = is_member_gamma_k(3, 1, RadialPotential::piecewise_constant(3, {0.0, 0.5, 1.0}, {mu1 - 1.0, 100.0}));
  EXPECT_FALSE(m.dominates);
  // no Neumann solution
  m = is_member_gamma_k(3, 1, RadialPotential::constant(3, mu1 + 3.0));
  EXPECT_TRUE(m.dominates);
  EXPECT_TRUE(m.strictly_above);
  EXPECT_FALSE(m.neumann_solvable);
}

TEST(Interlacing, MembersHaveAtLeastKPlusOneZeros) {
  const GluedSolution g = build_subcritical_family({3, 2, 0.05});
  ASSERT_TRUE(g.membership.member);
  const ZeroReport rep = verify_interlacing(g.phi_k, g.potential);
  EXPECT_GE(rep.zero_count, 3);
  EXPECT_TRUE(rep.interlace_ok);
  ASSERT_EQ(rep.interlace_margins.size(), 2u);
  for (double m : rep.interlace_margins) EXPECT_GE(m, -1e-6);
}

TEST(Interlacing, NonMembersAreRejected) {
  try {
    verify_interlacing(3, 1, RadialPotential::constant(3, 5.0));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::MembershipFailure);
  }
}

TEST(Identity, HoldsForEigenpairsOnBallsAndAnnuli) {
  const EigenPair phi = neumann_radial_eigen(3, 1);
  const RadialSolution sol = shoot_radial(RadialPotential::constant(3, oracle::neumann_mu(3, 2)));
  for (double rho : {0.3, 0.77, 1.0}) {
    const IdentityResidual id = orthogonality_identity_residual(sol, phi, rho);
    EXPECT_LT(id.residual, 1e-9 * id.scale) << rho;
  }
  const IdentityResidual id = orthogonality_identity_residual(sol, phi, 0.9, 0.2);
  EXPECT_LT(id.residual, 1e-9 * id.scale);
}

TEST(Identity, HoldsAcrossPieceJumps) {
  const GluedSolution g = build_subcritical_family({4, 1, 0.1});
  const RadialSolution sol = shoot_radial(g.potential);
  const IdentityResidual id = orthogonality_identity_residual(sol, g.phi_k, 1.0);
  EXPECT_LT(id.residual, 1e-8 * id.scale);
  // the boundary term vanishes for a Neumann solution
  EXPECT_LT(std::abs(id.rhs), 1e-6 * id.scale);
}

TEST(Identity, RejectsBadRadii) {
  const EigenPair phi = neumann_radial_eigen(2, 1);
  const RadialSolution sol = shoot_radial(RadialPotential::constant(2, 10.0));
  EXPECT_THROW(orthogonality_identity_residual(sol, phi, 1.5), Error);
  EXPECT_THROW(orthogonality_identity_residual(sol, phi, 0.5, 0.6), Error);
}

TEST(OdeResidual, ExactSamplesAreConsistent) {
  const RadialPotential a = RadialPotential::constant(3, 49.0);
  std::vector<RadialSample> s;
  for (int i = 1; i <= 50; ++i) {
    const double r = i / 50.0;
    s.push_back({r, std::sin(7 * r) / (7 * r), (std::cos(7 * r) * 7 * r - std::sin(7 * r)) / (7 * r * r)});
  }
  EXPECT_LT(ode_residual(a, s), 1e-8);
  s[20].value += 1e-3;
  EXPECT_GT(ode_residual(a, s), 1e-4);
}
