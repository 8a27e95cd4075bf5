#include <gtest/gtest.h>

#include <cmath>

#include "layered_advect/boundary_layer.hpp"
#include "layered_advect/internal_layer.hpp"
#include "oracles.hpp"

namespace {

using lad::ProblemData;
using lad::SmoothFunction;

ProblemData shock() {
  ProblemData p;
  p.y0 = SmoothFunction::constant(1.0);
  p.v = SmoothFunction::constant(0.0);
  return p;
}

ProblemData generic() {
  ProblemData p;
  p.M = 1.3;
  p.T = 1.2;
  p.y0 = SmoothFunction::polynomial({0.7, -1.3, 2.1, 0.9, -0.4});
  p.v = SmoothFunction::sum({SmoothFunction::polynomial({-0.2, 0.8, -1.1, 0.6}), SmoothFunction::scaled_sine(0.3, 2.0)});
  return p;
}

TEST(BoundaryLayer, LeadingMatchingCoefficientForConstantData) {
  const ProblemData p = shock();
  const auto jc = lad::jump_constants(p);
  const double eps = 0.01, t = 0.6;
  const double tau = (1.0 / p.M - t) / std::sqrt(eps);
  EXPECT_NEAR(lad::match_coeffs(0, 3.0, tau, t, p, eps, false), lad::W0(p.M * tau, t, jc), 1e-15);
  // C_{1/2}(z) is linear in z with slope −W⁰_w(Mτ, t).
  const lad::LayerContext ctx{jc, p.M, eps};
  const double slope = lad::match_coeffs(1, 1.0, tau, t, p, eps, false) - lad::match_coeffs(1, 0.0, tau, t, p, eps, false);
  EXPECT_NEAR(slope, -lad::w_derivative(lad::LayerTerm::W0, 1, p.M * tau, t, ctx), 1e-14);
}

TEST(BoundaryLayer, CorrectedLeadingCoefficientAddsTheCorrection) {
  const ProblemData p = generic();
  const auto jc = lad::jump_constants(p);
  const double eps = 0.01, tau = 0.3, t = 0.5;
  const double diff = lad::match_coeffs(0, 2.0, tau, t, p, eps, true) - lad::match_coeffs(0, 2.0, tau, t, p, eps, false);
  EXPECT_NEAR(diff, lad::U0eps(p.M * tau, t, eps, p.M, jc), 1e-13);
}

TEST(BoundaryLayer, ProfilesVanishAtTheWallAndMatchFarAway) {
  const ProblemData p = generic();
  for (bool corrected : {false, true})
    for (double eps : {0.1, 0.01})
      for (double t : {0.3, 0.9, 1.1}) {
        const double tau = (1.0 / p.M - t) / std::sqrt(eps);
        for (int k = 0; k <= 3; ++k) {
          EXPECT_LE(std::abs(lad::Y_profile(k, 0.0, tau, t, p, eps, corrected)), 1e-13);
          const double zf = 60.0 / p.M;
          const double c = lad::match_coeffs(k, zf, tau, t, p, eps, corrected);
          EXPECT_LE(std::abs(lad::Y_profile(k, zf, tau, t, p, eps, corrected) - c), 1e-10 * (1 + std::abs(c)));
        }
      }
  EXPECT_THROW((void)lad::Y_profile(0, -1.0, 0.0, 0.5, p, 0.01, false), std::domain_error);
  EXPECT_THROW((void)lad::match_coeffs(4, 1.0, 0.0, 0.5, p, 0.01, false), std::domain_error);
}

TEST(BoundaryLayer, ProfilePolynomialPair) {
  // Matching 1, mirror −1 at z = 1, M = 1: 1 − e^{−1}.
  const auto j = lad::profile_jet({1, 0, 0, 0}, {-1, 0, 0, 0}, 1.0, 1.0);
  EXPECT_NEAR(j.value, 1.0 - std::exp(-1.0), 1e-15);
  EXPECT_NEAR(j.value, 0.63212, 1e-5);
  EXPECT_NEAR(j.dz, std::exp(-1.0), 1e-15);
  EXPECT_NEAR(j.dzz, -std::exp(-1.0), 1e-15);
}

// Y_zz + M·Y_z against the right-hand side, every derivative by differences.
double fd_ode_residual(int k, double z, double tau, double t, const ProblemData& p, double eps) {
  auto Y = [&](int order, double zz, double ta, double tt) { return lad::Y_profile(order, zz, ta, tt, p, eps, true); };
  const double h = 1e-3;
  const double lhs = oracle::d2([&](double s) { return Y(k, s, tau, t); }, z, h) +
                     p.M * oracle::d1([&](double s) { return Y(k, s, tau, t); }, z, h);
  auto dtau = [&](int order) { return oracle::d1([&](double s) { return Y(order, z, s, t); }, tau, h); };
  auto dt = [&](int order) { return oracle::d1([&](double s) { return Y(order, z, tau, s); }, t, h); };
  double rhs = 0.0;
  if (k == 1) rhs = -dtau(0);
  if (k == 2) rhs = dt(0) - dtau(1);
  if (k == 3) rhs = dt(1) - dtau(2);
  return lhs - rhs;
}

TEST(BoundaryLayer, OdeSystemByFiniteDifferences) {
  const ProblemData p = generic();
  const double eps = 0.01;
  EXPECT_NEAR(fd_ode_residual(1, 1.0, 0.2, 0.5, p, eps), 0.0, 1e-7);
  EXPECT_NEAR(fd_ode_residual(3, 1.0, 0.2, 0.5, p, eps), 0.0, 1e-6);
  for (int k = 0; k <= 3; ++k)
    for (double z : {0.3, 1.0, 4.0}) EXPECT_NEAR(fd_ode_residual(k, z, -0.7, 0.8, p, eps), 0.0, 1e-6) << k << ' ' << z;
}

TEST(BoundaryLayer, AnalyticOdeResidualsVanish) {
  const ProblemData p = generic();
  for (bool corrected : {false, true})
    for (double eps : {0.1, 0.01, 0.001})
      for (double t : {0.2, 0.77, 1.15})
        for (int k = 0; k <= 3; ++k)
          for (double z : {0.05, 0.5, 2.0, 10.0}) {
            const double tau = (1.0 / p.M - t) / std::sqrt(eps);
            const double y = lad::Y_profile(k, z, tau, t, p, eps, corrected);
            EXPECT_LE(std::abs(lad::ode_residual(k, z, tau, t, p, eps, corrected)), 1e-9 * (1 + std::abs(y)));
          }
}

TEST(BoundaryLayer, CoefficientDerivativesAgreeWithDifferences) {
  const ProblemData p = generic();
  const double eps = 0.02;
  const lad::BoundaryLayer bl(p, eps, true);
  const double tau = 0.4, t = 0.55, h = 1e-4;
  const auto c = bl.coefficients(tau, t);
  auto at = [&](double ta, double tt) { return bl.coefficients(ta, tt); };
  const lad::Coefficient lad::BoundaryCoefficients::*members[] = {
      &lad::BoundaryCoefficients::C00, &lad::BoundaryCoefficients::C12, &lad::BoundaryCoefficients::S,
      &lad::BoundaryCoefficients::A,   &lad::BoundaryCoefficients::B,   &lad::BoundaryCoefficients::C,
      &lad::BoundaryCoefficients::At,  &lad::BoundaryCoefficients::Bt,  &lad::BoundaryCoefficients::Ct,
      &lad::BoundaryCoefficients::Dt};
  for (auto m : members) {
    const double dtau = oracle::d1([&](double s) { return (at(s, t).*m).value; }, tau, h);
    const double dt = oracle::d1([&](double s) { return (at(tau, s).*m).value; }, t, h);
    EXPECT_NEAR((c.*m).d_tau, dtau, 1e-7 * (1 + std::abs(dtau)));
    EXPECT_NEAR((c.*m).d_t, dt, 1e-7 * (1 + std::abs(dt)));
  }
}

TEST(BoundaryLayer, CombinationWithoutJumpAtCollision) {
  // C00_t − C12_τ agrees from both sides at τ = 0 (t = 1/M).
  const ProblemData p = generic();
  const lad::BoundaryLayer bl(p, 0.01, false);
  const double t = 1.0 / p.M;
  const auto plus = bl.coefficients(0.0, t, lad::Side::plus);
  const auto minus = bl.coefficients(0.0, t, lad::Side::minus);
  EXPECT_NEAR(plus.C00.d_t - plus.C12.d_tau, minus.C00.d_t - minus.C12.d_tau, 1e-10);
}

}  // namespace
