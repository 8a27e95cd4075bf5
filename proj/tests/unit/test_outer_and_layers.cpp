#include <gtest/gtest.h>

#include <cmath>

#include "layered_advect/internal_layer.hpp"
#include "layered_advect/outer_expansion.hpp"
#include "layered_advect/scenario.hpp"
#include "oracles.hpp"

namespace {

using lad::JumpConstants;
using lad::LayerContext;
using lad::LayerTerm;
using lad::ProblemData;
using lad::Side;
using lad::SmoothFunction;

ProblemData make(SmoothFunction y0, SmoothFunction v, double M = 1.0) {
  ProblemData p;
  p.M = M;
  p.T = 1.2;
  p.y0 = std::move(y0);
  p.v = std::move(v);
  return p;
}

// --- outer expansion -------------------------------------------------------

TEST(OuterExpansion, LeadingTerm) {
  const ProblemData shock = make(SmoothFunction::constant(1.0), SmoothFunction::constant(0.0));
  EXPECT_EQ(lad::outer_y0(0.8, 0.1, shock), 1.0);
  EXPECT_EQ(lad::outer_y0(0.1, 0.8, shock), 0.0);
  const ProblemData sq = make(SmoothFunction::polynomial({0, 0, 1}), SmoothFunction::constant(0.0));
  EXPECT_NEAR(lad::outer_y0(0.3, 0.1, sq), 0.04, 1e-15);
}

TEST(OuterExpansion, HigherTerms) {
  const ProblemData sq = make(SmoothFunction::polynomial({0, 0, 1}), SmoothFunction::constant(0.0));
  EXPECT_NEAR(lad::outer_y1(0.8, 0.2, sq), 0.4, 1e-15);
  const ProblemData affine = make(SmoothFunction::polynomial({1, 2}), SmoothFunction::polynomial({3, -1}));
  for (double x : {0.1, 0.6})
    for (double t : {0.2, 0.9}) EXPECT_EQ(lad::outer_y1(x, t, affine), 0.0);
  // v = t⁴ at (0.2, 0.9): −2·0.2·24·0.7 + 0.02·24.
  const ProblemData quart = make(SmoothFunction::constant(0.0), SmoothFunction::polynomial({0, 0, 0, 0, 1}));
  EXPECT_NEAR(lad::outer_y2(0.2, 0.9, quart), -6.24, 1e-12);
}

TEST(OuterExpansion, OuterTermsSolveTheAdvectionHierarchy) {
  // y⁰_t + M y⁰_x = 0 and y¹_t + M y¹_x = y⁰_xx, checked by differences.
  const ProblemData p = make(SmoothFunction::sum({SmoothFunction::polynomial({0.5, -1, 2, 1}), SmoothFunction::scaled_sine(0.3, 2)}),
                             SmoothFunction::sum({SmoothFunction::polynomial({1, 0.5, -2}), SmoothFunction::scaled_sine(0.2, 3)}), 1.5);
  for (auto [x, t] : {std::pair{0.8, 0.2}, std::pair{0.2, 0.7}}) {
    auto y0 = [&](double xx, double tt) { return lad::outer_y0(xx, tt, p); };
    auto y1 = [&](double xx, double tt) { return lad::outer_y1(xx, tt, p); };
    const double h = 1e-3;
    const double l0 = oracle::d1([&](double s) { return y0(x, s); }, t, h) + p.M * oracle::d1([&](double s) { return y0(s, t); }, x, h);
    const double l1 = oracle::d1([&](double s) { return y1(x, s); }, t, h) + p.M * oracle::d1([&](double s) { return y1(s, t); }, x, h);
    EXPECT_NEAR(l0, 0.0, 1e-9);
    EXPECT_NEAR(l1, oracle::d2([&](double s) { return y0(s, t); }, x, h), 1e-8);
    const auto jet = lad::outer_jet(0, x, t, p, lad::side_of(x, t, p.M));
    EXPECT_NEAR(jet.dx, oracle::d1([&](double s) { return y0(s, t); }, x, h), 1e-9);
    EXPECT_NEAR(jet.dxx, oracle::d2([&](double s) { return y0(s, t); }, x, h), 1e-7);
  }
}

TEST(OuterExpansion, TracesAtTheCharacteristic) {
  const ProblemData p = make(SmoothFunction::polynomial({0.5, 0, 1}), SmoothFunction::polynomial({2, 3}), 2.0);
  const double t = 0.3;
  EXPECT_DOUBLE_EQ(lad::trace(0, 0, Side::plus, t, p), 0.5);
  EXPECT_DOUBLE_EQ(lad::trace(1, 0, Side::minus, t, p), -3.0 / 2.0);
  EXPECT_DOUBLE_EQ(lad::trace(0, 1, Side::plus, t, p), 2.0 * t);
  EXPECT_THROW((void)lad::trace(2, 1, Side::plus, t, p), std::domain_error);
}

// --- internal layer --------------------------------------------------------

JumpConstants generic_jc() {
  JumpConstants jc;
  jc.c_plus = 1.3;
  jc.c_minus = -0.4;
  jc.d_plus = 0.7;
  jc.d_minus = -1.1;
  jc.e_plus = 2.0;
  jc.e_minus = 0.5;
  jc.f_minus = 0.8;
  jc.h_plus = -0.6;
  jc.h_minus = 0.9;
  return jc;
}

TEST(InternalLayer, W0ReferenceValues) {
  JumpConstants jc;
  jc.c_plus = 1.0;
  EXPECT_DOUBLE_EQ(lad::W0(0.0, 0.7, jc), 0.5);
  EXPECT_NEAR(lad::W0(2.0, 1.0, jc), (1.0 + oracle::erf(1.0)) / 2.0, 1e-15);
  EXPECT_NEAR(lad::W0(2.0, 1.0, jc), 0.9213503964748575, 1e-15);
  EXPECT_NEAR(lad::W0(60.0, 0.5, jc), 1.0, 1e-15);
}

// Each leading term is the heat flow of its matching polynomials, so the
// convolution of the piecewise initial data is an independent oracle.
TEST(InternalLayer, TermsEqualHeatKernelConvolutions) {
  const JumpConstants jc = generic_jc();
  for (double t : {0.05, 0.25, 1.0}) {
    for (double w : {-2.0, -0.3, 0.0, 1.0, 2.5}) {
      const double w0 = oracle::heat_convolution([&](double) { return jc.c_plus; }, [&](double) { return jc.c_minus; }, w, t);
      const double w12 = oracle::heat_convolution([&](double s) { return jc.d_plus * s; }, [&](double s) { return jc.d_minus * s; }, w, t);
      const double w1 = oracle::heat_convolution([&](double s) { return jc.e_plus * s * s / 2; },
                                                 [&](double s) { return jc.e_minus * s * s / 2; }, w, t);
      EXPECT_NEAR(lad::W0(w, t, jc), w0, 1e-12) << w << ' ' << t;
      EXPECT_NEAR(lad::W12(w, t, jc), w12, 1e-12) << w << ' ' << t;
      EXPECT_NEAR(lad::W1(w, t, jc), w1, 1e-12) << w << ' ' << t;
      // W^{3/2} without the f⁻ source: data h± s³.
      JumpConstants h = jc;
      h.f_minus = 0.0;
      const double w32 = oracle::heat_convolution([&](double s) { return h.h_plus * s * s * s; },
                                                  [&](double s) { return h.h_minus * s * s * s; }, w, t);
      EXPECT_NEAR(lad::W32(w, t, h), w32, 1e-11) << w << ' ' << t;
    }
  }
}

TEST(InternalLayer, W12AndW1PointValues) {
  // Convolution values: W12(1, 0.25) = ½(1+erf 1) + √(0.25/π)e^{−1}, and
  // W1(−2, 1) with e⁻ = 1 equals 3(1+erf 1)/2 + e^{−1}/√π.
  JumpConstants d;
  d.d_plus = 1.0;
  EXPECT_NEAR(lad::W12(1.0, 0.25, d), 1.0251272708300061, 1e-14);
  JumpConstants e;
  e.e_minus = 1.0;
  EXPECT_NEAR(lad::W1(-2.0, 1.0, e), 2.9716049381348697, 1e-14);
}

TEST(InternalLayer, CentreValues) {
  const JumpConstants jc = generic_jc();
  const double t = 0.36;
  EXPECT_NEAR(lad::W12(0.0, t, jc), (jc.d_plus - jc.d_minus) * std::sqrt(t / oracle::pi), 1e-15);
  EXPECT_NEAR(lad::W1(0.0, t, jc), t * (jc.e_plus + jc.e_minus) / 2.0, 1e-15);
  JumpConstants f;
  f.f_minus = 0.8;
  EXPECT_NEAR(lad::W32(0.0, t, f), -f.f_minus * std::sqrt(t / oracle::pi), 1e-15);
}

TEST(InternalLayer, HeatEquationResiduals) {
  const JumpConstants jc = generic_jc();
  const LayerContext ctx{jc, 1.0, 0.01};
  for (LayerTerm term : {LayerTerm::W0, LayerTerm::W12, LayerTerm::W1, LayerTerm::W32, LayerTerm::U0eps, LayerTerm::U12eps}) {
    for (auto [w, t] : {std::pair{0.7, 0.3}, std::pair{-0.5, 0.2}, std::pair{1.9, 0.9}}) {
      const double ft = oracle::d1([&](double s) { return lad::layer_value(term, w, s, ctx); }, t, 1e-4);
      const double fww = oracle::d2([&](double s) { return lad::layer_value(term, s, t, ctx); }, w, 1e-3);
      EXPECT_NEAR(ft, fww, 1e-6 * (1 + std::abs(ft))) << static_cast<int>(term) << " at " << w << ',' << t;
    }
  }
}

TEST(InternalLayer, DerivativesAgreeWithDifferences) {
  const JumpConstants jc = generic_jc();
  const LayerContext ctx{jc, 1.5, 0.02};
  for (LayerTerm term : {LayerTerm::W0, LayerTerm::W12, LayerTerm::W1, LayerTerm::W32, LayerTerm::W0eps, LayerTerm::W12eps}) {
    const double w = 0.45, t = 0.6;
    auto f = [&](double s) { return lad::layer_value(term, s, t, ctx); };
    EXPECT_NEAR(lad::w_derivative(term, 1, w, t, ctx), oracle::d1(f, w, 1e-3), 1e-9);
    EXPECT_NEAR(lad::w_derivative(term, 2, w, t, ctx), oracle::d2(f, w, 1e-3), 1e-7);
    EXPECT_NEAR(lad::t_derivative(term, w, t, ctx), oracle::d1([&](double s) { return lad::layer_value(term, w, s, ctx); }, t, 1e-4), 1e-8);
    auto g = [&](double s) { return lad::w_derivative(term, 2, s, t, ctx); };
    EXPECT_NEAR(lad::w_derivative(term, 3, w, t, ctx), oracle::d1(g, w, 1e-3), 1e-8);
    EXPECT_NEAR(lad::mixed_derivative(term, 1, 1, w, t, ctx), lad::w_derivative(term, 3, w, t, ctx), 1e-12);
  }
  EXPECT_THROW((void)lad::w_derivative(LayerTerm::W0, 5, 0.0, 1.0, ctx), std::domain_error);
}

TEST(InternalLayer, ExplicitDerivativeFormulas) {
  const JumpConstants jc = generic_jc();
  const LayerContext ctx{jc, 1.0, 0.0};
  const double w = 0.8, t = 0.4;
  EXPECT_NEAR(lad::w_derivative(LayerTerm::W0, 1, w, t, ctx),
              (jc.c_plus - jc.c_minus) / (2 * std::sqrt(oracle::pi * t)) * std::exp(-w * w / (4 * t)), 1e-15);
  EXPECT_NEAR(lad::t_derivative(LayerTerm::W1, 0.0, t, ctx), (jc.e_plus + jc.e_minus) / 2, 1e-14);
}

TEST(InternalLayer, MatchingTails) {
  const JumpConstants jc = generic_jc();
  const LayerContext ctx{jc, 1.0, 0.01};
  for (LayerTerm term : {LayerTerm::W0, LayerTerm::W12, LayerTerm::W1, LayerTerm::W32}) {
    for (double t : {0.1, 0.6, 1.2}) {
      const double mp = lad::matching_polynomial(term, Side::plus, 40.0, t, ctx);
      const double mm = lad::matching_polynomial(term, Side::minus, -40.0, t, ctx);
      EXPECT_LE(std::abs(lad::layer_value(term, 40.0, t, ctx) - mp), 1e-10 * (1 + std::abs(mp)));
      EXPECT_LE(std::abs(lad::layer_value(term, -40.0, t, ctx) - mm), 1e-10 * (1 + std::abs(mm)));
    }
  }
  const double t = 0.5;
  EXPECT_NEAR(lad::matching_polynomial(LayerTerm::W12, Side::plus, 40, t, ctx), jc.d_plus * 40, 1e-12);
  EXPECT_NEAR(lad::matching_polynomial(LayerTerm::W1, Side::plus, 40, t, ctx), jc.e_plus * (800 + t), 1e-10);
  EXPECT_NEAR(lad::matching_polynomial(LayerTerm::W32, Side::plus, 40, t, ctx), jc.h_plus * (64000 + 6 * t * 40), 1e-8);
}

TEST(InternalLayer, CorrectionAgainstMultiprecision) {
  JumpConstants jc;
  jc.c_plus = 1.0;
  jc.d_plus = 0.3;
  jc.d_minus = -0.8;
  const double M = 1.0;
  // U0eps(0, 1, 0.01) = −½·erfcx(10).
  EXPECT_NEAR(lad::U0eps(0.0, 1.0, 0.01, M, jc), -0.5 * oracle::erfcx(10.0), 1e-16);
  EXPECT_NEAR(lad::U0eps(0.0, 1.0, 0.01, M, jc), -0.0280705, 1e-6);
  for (double eps : {0.1, 0.01, 1e-4}) {
    const double kappa = M / std::sqrt(eps);
    for (double t : {0.01, 0.3, 1.1}) {
      for (double w : {-3.0, -0.5, 0.0, 2.0}) {
        const double s = w / (2 * std::sqrt(t));
        // ((c⁻−c⁺)/2)·e^{κw+κ²t}·erfc(s + κ√t), in 50 digits.
        const double ref = -0.5 * oracle::exp_times_erfc(kappa * w + kappa * kappa * t, s + kappa * std::sqrt(t));
        // The exponent κw + κ²t amplifies rounding in its argument.
        const double cond = 1.0 + std::abs(kappa * w) + kappa * kappa * t;
        EXPECT_NEAR(lad::U0eps(w, t, eps, M, jc), ref, 1e-15 + 4e-16 * cond * std::abs(ref)) << eps << ' ' << t << ' ' << w;
      }
    }
  }
  JumpConstants same = jc;
  same.c_minus = same.c_plus;
  same.d_minus = same.d_plus;
  EXPECT_EQ(lad::U0eps(0.2, 0.5, 0.01, M, same), 0.0);
  EXPECT_EQ(lad::U12eps(0.2, 0.5, 0.01, M, same), 0.0);
}

TEST(InternalLayer, CorrectedTermsReproduceInflowData) {
  const JumpConstants jc = generic_jc();
  for (double M : {0.5, 1.0, 2.0}) {
    for (double eps : {1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6}) {
      for (double t = 0.02; t <= 1.2; t += 0.02) {
        const double w = -M * t / std::sqrt(eps);
        EXPECT_NEAR(lad::W0eps(w, t, eps, M, jc), jc.c_minus, 1e-12);
        EXPECT_NEAR(lad::W12eps(w, t, eps, M, jc), jc.d_minus * w, 1e-12 * (1 + std::abs(jc.d_minus * w)));
      }
    }
  }
}

TEST(InternalLayer, CorrectedCharacteristicLimit) {
  // p⁰_ε on x = Mt: (c⁺+c⁻)/2 + ((c⁻−c⁺)/2)·e^{M²t/ε}·erfc(M√t/√ε).
  const JumpConstants jc = generic_jc();
  const double M = 1.0;
  for (double eps : {0.1, 1e-3})
    for (double t : {0.05, 0.8}) {
      const double ref = (jc.c_plus + jc.c_minus) / 2 +
                         (jc.c_minus - jc.c_plus) / 2 * oracle::exp_times_erfc(M * M * t / eps, M * std::sqrt(t / eps));
      EXPECT_NEAR(lad::W0eps(0.0, t, eps, M, jc), ref, 1e-14);
    }
}

}  // namespace
