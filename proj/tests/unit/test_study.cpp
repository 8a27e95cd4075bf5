#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "layered_advect/acceptance.hpp"
#include "layered_advect/composite.hpp"
#include "layered_advect/study.hpp"
#include "oracles.hpp"

namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream is(p, std::ios::binary);
  std::stringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("layered_advect_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

TEST(Study, FitLine) {
  const double x[] = {0, 1, 2, 3};
  const double y[] = {1, 3, 5, 7};
  const auto f = lad::fit_line(x, y, 4);
  EXPECT_NEAR(f.slope, 2.0, 1e-14);
  EXPECT_NEAR(f.intercept, 1.0, 1e-14);
  EXPECT_NEAR(f.residual, 0.0, 1e-14);
}

TEST(Study, JudgeSlope) {
  lad::LineFit fit;
  fit.slope = 1.4;
  EXPECT_TRUE(lad::judge_slope("a", fit, 1.5, 1.35, INFINITY, true).passed);
  EXPECT_FALSE(lad::judge_slope("a", fit, 1.5, 1.35, INFINITY, false).passed);  // gate failed
  EXPECT_FALSE(lad::judge_slope("a", fit, 0.5, 0.35, 0.65, true).passed);
}

TEST(Study, TransientMask) {
  EXPECT_NEAR(lad::transient_mask(0.01, 1.0, 4.0), 4.0 * 0.01 * std::log(100.0), 1e-15);
  EXPECT_NEAR(lad::transient_mask(0.01, 2.0, 4.0), 0.01 * std::log(100.0), 1e-15);
}

TEST(Study, WorkerThreadsFromEnvironment) {
  ::setenv("LAYERED_ADVECT_THREADS", "3", 1);
  EXPECT_EQ(lad::worker_threads(), 3u);
  ::setenv("LAYERED_ADVECT_THREADS", "0", 1);
  EXPECT_GE(lad::worker_threads(), 1u);
  ::unsetenv("LAYERED_ADVECT_THREADS");
  EXPECT_GE(lad::worker_threads(), 1u);
}

TEST(Study, VariantChoice) {
  EXPECT_EQ(lad::parse_variant_choice("both"), lad::VariantChoice::both);
  EXPECT_EQ(lad::variants_of(lad::VariantChoice::both).size(), 2u);
  EXPECT_THROW((void)lad::parse_variant_choice("neither"), std::invalid_argument);
}

TEST(Study, SweepValidation) {
  lad::SweepConfig cfg;
  cfg.problem = lad::shipped_scenario("shock");
  EXPECT_NO_THROW(cfg.validate());
  cfg.eps = {0.01, 0.02};
  EXPECT_THROW(cfg.validate(), std::invalid_argument);
  cfg.eps = {0.01};
  EXPECT_THROW(cfg.validate(), std::invalid_argument);
  cfg.eps = {0.02, 0.01};
  cfg.nx_rule = 0.0;
  EXPECT_THROW(cfg.validate(), std::invalid_argument);
}

TEST(Study, LevelCrossingsAndWidth) {
  // u = (1 + erf(x/δ))/2 centred at 0.4: the 10%–90% width is 2δ·erf⁻¹(0.8).
  const double delta = 0.01;
  std::vector<double> x(4001), y(4001);
  for (std::size_t i = 0; i < x.size(); ++i) {
    x[i] = i / 4000.0;
    y[i] = 0.5 * (1 + oracle::erf((x[i] - 0.4) / delta)) * (x[i] < 0.9 ? 1.0 : 0.0);
  }
  const auto c = lad::level_crossings(x, y, 0.5);
  ASSERT_EQ(c.up.size(), 1u);
  ASSERT_EQ(c.down.size(), 1u);
  EXPECT_NEAR(c.up[0], 0.4, 1e-4);
  EXPECT_NEAR(c.down[0], 0.89987, 1e-4);
  const double erfinv08 = 0.9061938024368232;
  EXPECT_NEAR(lad::transition_width(x, y, 0.4), 2 * delta * erfinv08, 2e-4);
}

TEST(Study, InternalTransitionWidthScalesWithSqrtEps) {
  const auto p = lad::shipped_scenario("shock");
  std::vector<double> x(20001);
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = i / 20000.0;
  auto width = [&](double eps) {
    const lad::CompositeApprox a(p, eps, lad::Variant::corrected);
    const auto s = a.slice(0.5);
    std::vector<double> y(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) y[i] = s.value(x[i]);
    return lad::transition_width(x, y, 0.5);
  };
  EXPECT_NEAR(width(1e-2) / width(1e-3), std::sqrt(10.0), 0.05 * std::sqrt(10.0));
}

TEST(Study, FieldsAreDeterministicAndWellFormed) {
  const auto p = lad::shipped_scenario("shock");
  const auto a = scratch("fields_a"), b = scratch("fields_b");
  const auto fa = lad::emit_fields(p, 0.01, lad::Variant::corrected, {0.5, 1.0}, a, 400, 40, 24);
  const auto fb = lad::emit_fields(p, 0.01, lad::Variant::corrected, {0.5, 1.0}, b, 400, 40, 24);
  ASSERT_EQ(fa.slices.size(), 2u);
  for (std::size_t k = 0; k < 2; ++k) EXPECT_EQ(slurp(fa.slices[k]), slurp(fb.slices[k]));
  EXPECT_EQ(slurp(fa.surface), slurp(fb.surface));
  const std::string s = slurp(fa.slices[0]);
  EXPECT_EQ(s.rfind("x,t,value\n", 0), 0u);
  EXPECT_EQ(std::count(s.begin(), s.end(), '\n'), 402);
  const std::string surf = slurp(fa.surface);
  EXPECT_EQ(std::count(surf.begin(), surf.end(), '\n'), 1 + 41 * 25);
}

// A short sweep on compatible data, small enough for the unit suite.
lad::RateReport small_sweep() {
  lad::SweepConfig cfg;
  cfg.scenario_name = "compatible";
  cfg.problem = lad::shipped_scenario("compatible");
  cfg.eps = {0.08, 0.04, 0.02};
  cfg.nx_rule = 16;
  cfg.time_samples = 100;
  lad::RateReport r = lad::run_rate_study(cfg);
  lad::add_default_rate_verdicts(r);
  return r;
}

TEST(Study, RateSweepOnCompatibleData) {
  const lad::RateReport r = small_sweep();
  ASSERT_EQ(r.variants.size(), 2u);
  const auto* corr = r.find(lad::Variant::corrected);
  const auto* plain = r.find(lad::Variant::plain);
  ASSERT_TRUE(corr && plain);
  // Compatible data: the correction vanishes and both variants coincide.
  for (std::size_t i = 0; i < corr->norms.size(); ++i) EXPECT_EQ(corr->norms[i].linf_l2, plain->norms[i].linf_l2);
  // The masked error decreases along the sweep.
  for (std::size_t i = 1; i < corr->norms.size(); ++i)
    EXPECT_LT(corr->norms[i].linf_l2_masked, corr->norms[i - 1].linf_l2_masked * 1.05);
  EXPECT_EQ(r.gate.size(), 3u);
  for (const auto& v : r.verdicts) EXPECT_EQ(v.gate_passed, r.gate_passed) << v.name;

  const auto dir = scratch("rates");
  lad::write_rates_csv(*corr, dir / "rates.csv");
  const std::string csv = slurp(dir / "rates.csv");
  EXPECT_EQ(csv.rfind("epsilon,norm_linf_l2,norm_l2_h1,masked\n", 0), 0u);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 1 + 2 * 3);

  const std::string text = lad::format_verdicts(r.verdicts);
  for (const char* key : {"target_slope", "fitted_slope", "fit_residual", "verdict", "grid_gate"})
    EXPECT_NE(text.find(key), std::string::npos) << key;
  const auto j = nlohmann::json::parse(lad::rate_report_json(r));
  EXPECT_EQ(j["verdicts"].size(), r.verdicts.size());
}

TEST(Study, TraceSweep) {
  const auto r = lad::run_trace_study("angular", lad::shipped_scenario("angular"), {0.04, 0.02}, lad::Variant::corrected);
  ASSERT_EQ(r.records.size(), 2u);
  EXPECT_GT(r.fit_z.slope, 1.9);
  EXPECT_EQ(r.verdicts.size(), 3u);
  const auto dir = scratch("traces");
  lad::write_trace_csv(r, dir / "t.csv");
  EXPECT_FALSE(slurp(dir / "t.csv").empty());
  EXPECT_TRUE(nlohmann::json::parse(lad::trace_report_json(r)).is_object());
}

TEST(Study, DecayFamiliesAndSmallSweep) {
  const auto fams = lad::default_decay_families();
  ASSERT_EQ(fams.size(), 3u);
  EXPECT_EQ(fams[0].target_slope, 0.25);
  EXPECT_EQ(fams[1].target_slope, 0.75);
  EXPECT_EQ(fams[2].target_slope, 1.25);
  lad::DecayConfig cfg;
  cfg.families = {fams[0]};
  cfg.eps = {0.02, 0.01};
  const auto r = lad::run_decay_study(cfg);
  ASSERT_EQ(r.families.size(), 1u);
  const auto& f = r.families[0];
  ASSERT_EQ(f.records.size(), 2u);
  for (const auto& rec : f.records) {
    EXPECT_GT(rec.norm, 0.0);
    // The approximation tracks the solver at t = 1/M.
    EXPECT_NEAR(rec.approx_norm, rec.norm, 0.05 * rec.norm);
  }
  EXPECT_LT(f.records[1].norm, f.records[0].norm);
  EXPECT_EQ(f.gate.eps, 0.02);
}

TEST(Study, ShippedScenarioFilesMatchBuiltIns) {
  for (const auto& name : lad::shipped_scenario_names()) {
    const auto file = fs::path(LAYERED_ADVECT_SCENARIO_DIR) / (name + ".cfg");
    const auto a = lad::load_scenario(file.string());
    const auto b = lad::shipped_scenario(name);
    EXPECT_EQ(a.M, b.M) << name;
    EXPECT_EQ(a.T, b.T) << name;
    for (double s : {0.0, 0.25, 0.5, 1.0}) {
      EXPECT_NEAR(a.y0(s), b.y0(s), 1e-15) << name;
      EXPECT_NEAR(a.v(s), b.v(s), 1e-15) << name;
    }
  }
}

}  // namespace
