#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "radlyap/ode.hpp"
#include "radlyap/sphere.hpp"

using namespace radlyap;

TEST(Sphere, MeasuresOfLowDimensions) {
  EXPECT_NEAR(sphere_measure(2), 2.0 * std::numbers::pi, 1e-14);
  EXPECT_NEAR(sphere_measure(3), 4.0 * std::numbers::pi, 1e-14);
  EXPECT_NEAR(sphere_measure(4), 2.0 * std::numbers::pi * std::numbers::pi, 1e-13);
  // omega_N = 2 pi^{N/2} / Gamma(N/2)
  for (int n = 2; n <= 9; ++n)
    EXPECT_NEAR(sphere_measure(n), 2.0 * std::pow(std::numbers::pi, n / 2.0) / std::tgamma(n / 2.0), 1e-12);
}

TEST(Sphere, VolumesScale) {
  EXPECT_NEAR(ball_volume(3, 2.0), 4.0 / 3.0 * std::numbers::pi * 8.0, 1e-12);
  EXPECT_NEAR(shell_volume(2, 0.5, 1.0), std::numbers::pi * 0.75, 1e-14);
  EXPECT_THROW(sphere_measure(0), Error);
}

TEST(Ode, TaylorStartMatchesSeries) {
  const State s = taylor_start(3, 4.0, 1e-3);
  EXPECT_NEAR(s[kValue], 1.0 - 4.0 * 1e-6 / 6.0, 1e-15);
  EXPECT_NEAR(s[kDerivative], -4.0 * 1e-3 / 3.0, 1e-15);
}

TEST(Ode, SineSolutionInThreeDimensions) {
  // u = sin(k r) / (k r) solves u'' + 2u'/r + k^2 u = 0
  const double k = 7.0;
  const auto traj = shoot_from_origin(3, {CoefficientPiece::make_constant(0.0, 1.0, k * k)}, ShootingOptions{});
  for (double r : {0.1, 0.37, 0.8, 1.0}) {
    EXPECT_NEAR(traj.state_at(r)[kValue], std::sin(k * r) / (k * r), 1e-9) << r;
  }
  const auto zeros = refine_zeros(traj);
  ASSERT_EQ(zeros.size(), 2u);
  EXPECT_NEAR(zeros[0], std::numbers::pi / k, 1e-11);
  EXPECT_NEAR(zeros[1], 2.0 * std::numbers::pi / k, 1e-11);
}

TEST(Ode, JumpAtTheStartOfAPieceIsOneSided) {
  // N = 1, u'' + a u = 0 with a = 1e6 on (0, 0.5] and 4 on (0.5, 1].
  // Start at r = 0.5 with (u, u') = (1, 0): u = cos(2 (r - 0.5)) on the right.
  Coefficient c{CoefficientPiece::make_constant(0.0, 0.5, 1e6), CoefficientPiece::make_constant(0.5, 1.0, 4.0)};
  const auto traj = integrate_radial(1, c, 0.5, State{1.0, 0.0, 0.0, 0.0}, ShootingOptions{});
  EXPECT_NEAR(traj.end_state()[kValue], std::cos(1.0), 1e-9);
  EXPECT_NEAR(traj.end_state()[kDerivative], -2.0 * std::sin(1.0), 1e-9);
}

TEST(Ode, PiecewiseConstantMatchesTransferMatrix) {
  // N = 1 across a jump: exact solution by matching value and slope.
  Coefficient c{CoefficientPiece::make_constant(0.0, 0.3, 100.0), CoefficientPiece::make_constant(0.3, 1.0, 1.0)};
  const auto traj = integrate_radial(1, c, 0.0, State{0.0, 1.0, 0.0, 0.0}, ShootingOptions{});
  const double u1 = std::sin(10.0 * 0.3) / 10.0;
  const double v1 = std::cos(10.0 * 0.3);
  const double exact = u1 * std::cos(0.7) + v1 * std::sin(0.7);
  EXPECT_NEAR(traj.end_state()[kValue], exact, 1e-10);
}

TEST(Ode, AngleIsMonotoneInTheCoefficient) {
  double previous = -1.0;
  for (double a : {0.0, 5.0, 20.0, 60.0, 200.0}) {
    const double theta =
        shoot_from_origin(2, {CoefficientPiece::make_constant(0.0, 1.0, a)}, ShootingOptions{}, false).end_state()[kAngle];
    EXPECT_GT(theta, previous);
    previous = theta;
  }
}

TEST(Ode, MassIsTheWeightedSquareIntegral) {
  // a = 0: u = 1, mass = int_0^1 r^{N-1} dr = 1/N
  const auto traj = shoot_from_origin(4, {CoefficientPiece::make_constant(0.0, 1.0, 0.0)}, ShootingOptions{});
  EXPECT_NEAR(traj.end_state()[kMass], 0.25, 1e-12);
}

TEST(Ode, SingularCoefficientIsRejected) {
  Coefficient c{CoefficientPiece::make_function(0.0, 1.0, [](double r) { return std::pow(r, -30.0); })};
  EXPECT_THROW(shoot_from_origin(2, c, ShootingOptions{}), Error);
}

TEST(Ode, StartRadiusShrinksForLargeCoefficients) {
  // kappa r0 would be 0.1 at the default start radius
  const double kappa = 1e5;
  Coefficient c{CoefficientPiece::make_constant(0.0, 2e-5, kappa * kappa), CoefficientPiece::make_constant(2e-5, 1.0, 0.0)};
  const auto traj = shoot_from_origin(3, c, ShootingOptions{});
  const double r = 2e-5;
  EXPECT_NEAR(traj.state_at(r)[kValue], std::sin(kappa * r) / (kappa * r), 1e-9);
}
