#include <gtest/gtest.h>

#include <cmath>
#include <string>

#include "layered_advect/scenario.hpp"

namespace {

using lad::ProblemData;
using lad::SmoothFunction;

ProblemData make(SmoothFunction y0, SmoothFunction v, double M = 1.0) {
  ProblemData p;
  p.M = M;
  p.T = 1.2 / std::min(M, 1.0);
  p.y0 = std::move(y0);
  p.v = std::move(v);
  return p;
}

TEST(Scenario, JumpConstantsConstantData) {
  const auto jc = lad::jump_constants(make(SmoothFunction::constant(1.0), SmoothFunction::constant(0.0)));
  EXPECT_EQ(jc.c_plus, 1.0);
  EXPECT_EQ(jc.c_minus, 0.0);
  for (double v : {jc.d_plus, jc.d_minus, jc.e_plus, jc.e_minus, jc.f_minus, jc.h_plus, jc.h_minus})
    EXPECT_EQ(v, 0.0);
}

TEST(Scenario, JumpConstantsLinearData) {
  const auto jc = lad::jump_constants(make(SmoothFunction::polynomial({0.0, 1.0}), SmoothFunction::constant(0.0), 2.0));
  EXPECT_EQ(jc.d_plus, 1.0);
  EXPECT_EQ(jc.d_minus, 0.0);
  EXPECT_EQ(jc.c_plus, 0.0);
  EXPECT_EQ(jc.c_minus, 0.0);
}

TEST(Scenario, JumpConstantsCubicData) {
  // y0''' = 6 and v''' = 6: h⁺ = 6/6, h⁻ = −6/(6·1³).
  const auto jc = lad::jump_constants(make(SmoothFunction::polynomial({0, 0, 0, 1}), SmoothFunction::polynomial({0, 0, 0, 1})));
  EXPECT_DOUBLE_EQ(jc.h_plus, 1.0);
  EXPECT_DOUBLE_EQ(jc.h_minus, -1.0);
  EXPECT_EQ(jc.f_minus, 0.0);
}

TEST(Scenario, JumpConstantsGeneralScaling) {
  // v = 2 + 3t + 5t² − 7t³, M = 2: d⁻ = −3/2, e⁻ = 10/4, f⁻ = 10/8, h⁻ = 42/(6·8).
  const auto jc = lad::jump_constants(make(SmoothFunction::constant(0.0), SmoothFunction::polynomial({2, 3, 5, -7}), 2.0));
  EXPECT_DOUBLE_EQ(jc.c_minus, 2.0);
  EXPECT_DOUBLE_EQ(jc.d_minus, -1.5);
  EXPECT_DOUBLE_EQ(jc.e_minus, 2.5);
  EXPECT_DOUBLE_EQ(jc.f_minus, 1.25);
  EXPECT_DOUBLE_EQ(jc.h_minus, 42.0 / 48.0);
}

TEST(Scenario, CompatibilityDefect) {
  const auto shock = lad::compatibility_defect(make(SmoothFunction::constant(1.0), SmoothFunction::constant(0.0)), 2);
  EXPECT_EQ(shock[0], 1.0);
  const auto zero = lad::compatibility_defect(make(SmoothFunction::constant(0.0), SmoothFunction::constant(0.0)), 4);
  for (double d : zero) EXPECT_EQ(d, 0.0);
  // y0 = x, v = Mt with M = 2: M·1 + (+1)·M = 4.
  const auto lin = lad::compatibility_defect(make(SmoothFunction::polynomial({0, 1}), SmoothFunction::polynomial({0, 2}), 2.0), 1);
  EXPECT_EQ(lin[0], 0.0);
  EXPECT_DOUBLE_EQ(lin[1], 4.0);
  EXPECT_THROW((void)lad::compatibility_defect(make(SmoothFunction(), SmoothFunction()), 5), std::domain_error);
}

TEST(Scenario, ClassifyRegion) {
  EXPECT_EQ(lad::classify_region(0.8, 0.1, 1.0), lad::Region::above_characteristic);
  EXPECT_EQ(lad::classify_region(0.1, 0.8, 1.0), lad::Region::below_characteristic);
  EXPECT_EQ(lad::classify_region(0.5, 0.5, 1.0), lad::Region::on_characteristic);
}

TEST(Scenario, ScaledCoordinates) {
  const auto c = lad::ScaledCoords::from(0.7, 0.5, 1.0, 0.04);
  EXPECT_DOUBLE_EQ(c.w, 0.2 / 0.2);
  EXPECT_DOUBLE_EQ(c.z, 0.3 / 0.04);
  EXPECT_DOUBLE_EQ(c.tau, 0.5 / 0.2);
  EXPECT_NEAR(c.x_from_z(0.04), 0.7, 1e-15);
}

TEST(Scenario, SmoothFunctionDerivatives) {
  const SmoothFunction f = SmoothFunction::sum({SmoothFunction::polynomial({1, 2, 3}), SmoothFunction::scaled_sine(0.5, 3.0)});
  const double s = 0.37;
  EXPECT_DOUBLE_EQ(f(s), 1 + 2 * s + 3 * s * s + 0.5 * std::sin(3 * s));
  EXPECT_DOUBLE_EQ(f.derivative(1, s), 2 + 6 * s + 1.5 * std::cos(3 * s));
  EXPECT_DOUBLE_EQ(f.derivative(2, s), 6 - 4.5 * std::sin(3 * s));
  EXPECT_DOUBLE_EQ(f.derivative(4, s), 0.5 * 81 * std::sin(3 * s));
  const auto jet = f.jet(s);
  for (int i = 0; i <= 4; ++i) EXPECT_DOUBLE_EQ(jet[i], f.derivative(i, s));
  EXPECT_TRUE(SmoothFunction::polynomial({0, 0}).is_zero());
  EXPECT_FALSE(f.is_zero());
}

TEST(Scenario, ParseFunctionGrammar) {
  EXPECT_DOUBLE_EQ(lad::parse_function("const:2.5")(0.3), 2.5);
  EXPECT_DOUBLE_EQ(lad::parse_function("poly:[1,-2,1]")(0.25), 0.5625);
  EXPECT_DOUBLE_EQ(lad::parse_function("sine:[2,0.5]")(1.0), 2 * std::sin(0.5));
  EXPECT_DOUBLE_EQ(lad::parse_function("sum:[const:1, poly:[0,1], sine:[1,1]]")(0.5), 1.5 + std::sin(0.5));
  for (const char* bad : {"", "poly:[1,", "const:", "cos:[1,2]", "sine:[1]", "poly:[1,x]", "sum:[const:1"})
    EXPECT_THROW((void)lad::parse_function(bad), lad::ScenarioError) << bad;
}

TEST(Scenario, ParseScenarioRoundTrip) {
  const std::string text = "# shock\nM = 2\nT = 1.5\ny0 = poly:[1,0.5]\nv = sum:[const:1, sine:[0.5,3]]\n";
  const ProblemData p = lad::parse_scenario(text);
  EXPECT_EQ(p.M, 2.0);
  EXPECT_EQ(p.T, 1.5);
  const ProblemData q = lad::parse_scenario(lad::format_scenario(p));
  for (double s : {0.0, 0.3, 0.9}) {
    EXPECT_EQ(q.y0(s), p.y0(s));
    EXPECT_EQ(q.v(s), p.v(s));
  }
}

std::size_t error_line(const std::string& text) {
  try {
    (void)lad::parse_scenario(text);
  } catch (const lad::ScenarioError& e) {
    return e.line();
  }
  return static_cast<std::size_t>(-1);
}

TEST(Scenario, ParseErrorsCarryLineNumbers) {
  EXPECT_EQ(error_line("M = 1\nT = 1.2\ny0 = poly:[1,\nv = const:0\n"), 3u);
  EXPECT_EQ(error_line("M = 1\nT = 1.2\ny0 = const:1\nv = const:0\nfoo = 3\n"), 5u);  // unknown key
  EXPECT_EQ(error_line("M = 1\nM = 2\nT = 1.2\ny0 = const:1\nv = const:0\n"), 2u);    // repeated key
  EXPECT_EQ(error_line("M = abc\nT = 1.2\ny0 = const:1\nv = const:0\n"), 1u);
  EXPECT_EQ(error_line("M = 1\nT 1.2\ny0 = const:1\nv = const:0\n"), 2u);             // missing '='
  EXPECT_EQ(error_line("M = 1\nT = 1.2\ny0 = const:1\n"), 0u);                        // missing key
}

TEST(Scenario, ParseErrorNamesTheField) {
  try {
    (void)lad::parse_scenario("M = 1\nT = 1.2\ny0 = poly:[1,\nv = const:0\n");
    FAIL() << "expected ScenarioError";
  } catch (const lad::ScenarioError& e) {
    EXPECT_NE(std::string(e.what()).find("y0"), std::string::npos) << e.what();
  }
}

TEST(Scenario, ValidationRejectsBadParameters) {
  EXPECT_THROW((void)lad::parse_scenario("M = -1\nT = 1.2\ny0 = const:1\nv = const:0\n"), std::exception);
  EXPECT_THROW((void)lad::parse_scenario("M = 1\nT = 0.5\ny0 = const:1\nv = const:0\n"), std::exception);
}

}  // namespace
