#include "layered_advect/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <stdexcept>

#include "layered_advect/boundary_layer.hpp"
#include "layered_advect/composite.hpp"
#include "layered_advect/internal_layer.hpp"
#include "layered_advect/outer_expansion.hpp"
#include "layered_advect/reference_solver.hpp"
#include "layered_advect/special_functions.hpp"
#include "layered_advect/study.hpp"

namespace lad {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string kv(const char* key, double value) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "%s=%.4g", key, value);
  return buf;
}

std::string join(const std::vector<std::string>& parts) {
  std::string out;
  for (const auto& s : parts) {
    if (!out.empty()) out += ' ';
    out += s;
  }
  return out;
}

const SlopeVerdict* find_verdict(const std::vector<SlopeVerdict>& vs, std::string_view prefix) {
  for (const auto& v : vs)
    if (v.name.rfind(prefix, 0) == 0) return &v;
  return nullptr;
}

// Tracks the worst value of a sub-check against its tolerance.
struct Worst {
  std::string name;
  double tolerance = 0.0;
  double worst = 0.0;
  void add(double deviation) {
    if (std::isnan(deviation)) deviation = std::numeric_limits<double>::infinity();
    worst = std::max(worst, deviation);
  }
  [[nodiscard]] bool ok() const { return worst <= tolerance; }
};

CheckResult summarise(std::string name, const std::vector<Worst>& parts, Clock::time_point t0) {
  CheckResult r;
  r.name = std::move(name);
  r.passed = true;
  std::vector<std::string> detail;
  for (const auto& w : parts) {
    r.passed = r.passed && w.ok();
    char buf[160];
    std::snprintf(buf, sizeof buf, "%s=%.2e/%.0e%s", w.name.c_str(), w.worst, w.tolerance,
                  w.ok() ? "" : "!");
    detail.emplace_back(buf);
  }
  r.detail = join(detail);
  r.seconds = seconds_since(t0);
  return r;
}

// Problems with generic (all non-zero) jump constants, for the identity sweeps.
std::vector<ProblemData> identity_problems() {
  std::vector<ProblemData> out;
  out.push_back(shipped_scenario("shock"));
  out.push_back(shipped_scenario("angular"));
  ProblemData g;
  g.M = 1.5;
  g.T = 1.2;
  g.y0 = SmoothFunction::polynomial({0.7, -1.3, 2.1, 0.9, -0.4});
  g.v = SmoothFunction::sum({SmoothFunction::polynomial({-0.2, 0.8, -1.1, 0.6}),
                             SmoothFunction::scaled_sine(0.3, 2.0)});
  out.push_back(g);
  return out;
}

}  // namespace

ProblemData shipped_scenario(std::string_view name) {
  ProblemData p;
  p.M = 1.0;
  p.T = 1.2;
  if (name == "shock") {
    p.y0 = SmoothFunction::constant(1.0);
    p.v = SmoothFunction::constant(0.0);
  } else if (name == "angular") {
    p.y0 = SmoothFunction::polynomial({0.0, 1.0});
    p.v = SmoothFunction::constant(0.0);
  } else if (name == "outflow_flat") {
    p.y0 = SmoothFunction::polynomial({1.0, -2.0, 1.0});
    p.v = SmoothFunction::constant(1.0);
  } else if (name == "compatible") {
    p.y0 = SmoothFunction::constant(1.0);
    p.v = SmoothFunction::sum(
        {SmoothFunction::constant(1.0), SmoothFunction::scaled_sine(0.5, pi)});
  } else {
    throw std::invalid_argument("unknown scenario '" + std::string(name) + "'");
  }
  return p;
}

std::vector<std::string> shipped_scenario_names() {
  return {"shock", "angular", "outflow_flat", "compatible"};
}

std::vector<CheckResult> check_shock_rates(unsigned threads) {
  const auto t0 = Clock::now();
  SweepConfig cfg;
  cfg.scenario_name = "shock";
  cfg.problem = shipped_scenario("shock");
  cfg.threads = threads;
  RateReport rep = run_rate_study(cfg);
  add_default_rate_verdicts(rep);
  const double secs = seconds_since(t0);

  const SlopeVerdict* corr = find_verdict(rep.verdicts, "corrected masked");
  const SlopeVerdict* plain = find_verdict(rep.verdicts, "plain");
  const SlopeVerdict* sep = find_verdict(rep.verdicts, "corrected minus plain");
  double worst_gate = 0.0;
  for (const auto& g : rep.gate) worst_gate = std::max(worst_gate, g.relative_change);

  CheckResult a;
  a.name = "shock-layer rate: corrected masked Linf(L2) slope >= 1.35, gate < 5%, runtime <= 600 s";
  a.passed = corr && corr->passed && rep.gate_passed && secs <= 600.0;
  a.detail = join({kv("slope", corr ? corr->fitted_slope : NAN),
                   kv("fit_residual", corr ? corr->fit_residual : NAN), kv("gate_max_change", worst_gate),
                   kv("runtime_s", secs)});
  a.seconds = secs;

  CheckResult b;
  b.name = "uncorrected degradation: plain slope 0.5 +- 0.15, separation >= 0.7";
  b.passed = plain && plain->passed && sep && sep->passed;
  b.detail = join({kv("plain_slope", plain ? plain->fitted_slope : NAN),
                   kv("separation", sep ? sep->fitted_slope : NAN)});
  b.seconds = 0.0;
  return {a, b};
}

CheckResult check_h1_rate(unsigned threads) {
  const auto t0 = Clock::now();
  SweepConfig cfg;
  cfg.scenario_name = "outflow_flat";
  cfg.problem = shipped_scenario("outflow_flat");
  cfg.variant = VariantChoice::corrected;
  cfg.nx_rule = 32.0;
  cfg.gate_metric = GateMetric::l2_h1;
  cfg.threads = threads;
  RateReport rep = run_rate_study(cfg);
  add_default_rate_verdicts(rep);
  const SlopeVerdict* h1 = find_verdict(rep.verdicts, "corrected L2(H1)");
  CheckResult r;
  r.name = "L2(H1) rate with y0(1) = y0'(1) = 0: slope >= 0.85";
  r.passed = rep.hypotheses_hold && h1 && h1->passed;
  double worst_gate = 0.0;
  for (const auto& g : rep.gate) worst_gate = std::max(worst_gate, g.relative_change);
  r.detail = join({kv("slope", h1 ? h1->fitted_slope : NAN), kv("fit_residual", h1 ? h1->fit_residual : NAN),
                   kv("gate_max_change", worst_gate)});
  r.seconds = seconds_since(t0);
  return r;
}

CheckResult check_trace_rates(unsigned threads) {
  const auto t0 = Clock::now();
  const TraceReport rep = run_trace_study("angular", shipped_scenario("angular"),
                                          {0.04, 0.02, 0.01, 0.005}, Variant::corrected, threads);
  CheckResult r;
  r.name = "solver-free rates: residual L1(L2) >= 1.4, z(0,.) L1 >= 1.9, z_t(0,.) L1 >= 0.9";
  r.passed = !rep.verdicts.empty() &&
             std::all_of(rep.verdicts.begin(), rep.verdicts.end(), [](const auto& v) { return v.passed; });
  r.detail = join({kv("residual_slope", rep.fit_residual.slope), kv("z_slope", rep.fit_z.slope),
                   kv("z_t_slope", rep.fit_z_t.slope)});
  r.seconds = seconds_since(t0);
  return r;
}

CheckResult check_decay_rates(unsigned threads) {
  const auto t0 = Clock::now();
  DecayConfig cfg;
  cfg.threads = threads;
  const DecayReport rep = run_decay_study(cfg);
  CheckResult r;
  r.name = "decay at t = 1/M: slopes 0.25 +- 0.05, 0.75 +- 0.07, 1.25 +- 0.1";
  r.passed = !rep.families.empty();
  std::vector<std::string> detail;
  for (const auto& f : rep.families) {
    r.passed = r.passed && f.verdict.passed;
    detail.push_back(kv(("slope[" + f.family.name + "]").c_str(), f.verdict.fitted_slope));
    detail.push_back(kv(("gate[" + f.family.name + "]").c_str(), f.gate.relative_change));
  }
  r.detail = join(detail);
  r.seconds = seconds_since(t0);
  return r;
}

CheckResult check_exact_identities() {
  const auto t0 = Clock::now();
  Worst w0eps{"W0eps_inflow", 1e-12};
  Worst w12eps{"W12eps_inflow", 1e-12};
  Worst outflow{"P_at_x1", 1e-12};
  Worst z00{"z0_limit", 1e-12};
  Worst explicit_form{"explicit_v0_y01", 1e-12};
  Worst ops{"operator_identities", 1e-9};

  const std::vector<double> eps_list{1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6};
  for (const ProblemData& p : identity_problems()) {
    const JumpConstants jc = jump_constants(p);
    for (double eps : eps_list) {
      const double se = std::sqrt(eps);
      for (int k = 1; k <= 60; ++k) {
        const double t = p.T * k / 60.0;
        const double w = -p.M * t / se;
        w0eps.add(std::abs(W0eps(w, t, eps, p.M, jc) - jc.c_minus));
        // d⁻·w can reach 10³ in size; the deviation is measured relative to it.
        w12eps.add(std::abs(W12eps(w, t, eps, p.M, jc) - jc.d_minus * w) / (1.0 + std::abs(jc.d_minus * w)));
      }
    }
    for (double eps : {1e-1, 1e-2, 1e-3}) {
      for (Variant var : {Variant::plain, Variant::corrected}) {
        const CompositeApprox a(p, eps, var);
        for (int k = 1; k <= 60; ++k) outflow.add(std::abs(a.value(1.0, p.T * k / 60.0)));
      }
    }
  }

  // t → 0⁺ limit of the inflow trace error against its closed form, with data
  // for which e^{−M/ε} is visible.
  {
    ProblemData p;
    p.M = 1.0;
    p.T = 1.2;
    p.y0 = SmoothFunction::polynomial({0.0, 0.5, 0.0, 0.5});  // y0(1) = 1, y0'(1) = 2
    p.v = SmoothFunction::constant(0.0);
    for (double eps : {0.5, 0.25, 0.1}) {
      const CompositeApprox a(p, eps, Variant::corrected);
      z00.add(std::abs(a.boundary_trace_z0(1e-30) - a.z0_at_t0()));
    }
  }

  // Closed form for y0 = 1, v = 0 written out with the corrected leading layer
  // term alone.
  {
    const ProblemData p = shipped_scenario("shock");
    const JumpConstants jc = jump_constants(p);
    std::mt19937_64 rng(20240611);
    std::uniform_real_distribution<double> ux(0.0, 1.0), ut(0.0, p.T);
    for (double eps : {1e-2, 1e-3}) {
      const CompositeApprox a(p, eps, Variant::corrected);
      const LayerContext ctx{jc, p.M, eps};
      const double se = std::sqrt(eps);
      for (int i = 0; i < 200; ++i) {
        const double x = ux(rng);
        const double t = std::max(ut(rng), 1e-6);
        const double w = (x - p.M * t) / se;
        const double mtau = (1.0 - p.M * t) / se;
        const double z = (1.0 - x) / eps;
        auto d = [&](int j) { return w_derivative(LayerTerm::W0eps, j, mtau, t, ctx); };
        const double poly = d(0) + se * z * d(1) + eps * z * z / 2.0 * d(2) + eps * se * z * z * z / 6.0 * d(3);
        const double e = p.M * z < 745.0 ? std::exp(-p.M * z) : 0.0;
        const double expected = layer_value(LayerTerm::W0eps, w, t, ctx) - poly * e;
        explicit_form.add(std::abs(a.value(x, t) - expected));
      }
    }
  }

  ops.add(operator_identities_check().max_deviation());
  return summarise("exact identities: inflow traces, P(1,t), z(0,0+), closed form, operator identities",
                   {w0eps, w12eps, outflow, z00, explicit_form, ops}, t0);
}

CheckResult check_property_suites() {
  const auto t0 = Clock::now();
  Worst heat{"layer_heat_residual", 1e-6};
  Worst ode{"boundary_ode_residual", 1e-6};
  Worst tail_w{"tail_w40", 1e-10};
  Worst tail_z{"tail_z60", 1e-10};
  Worst chu{"erfc_bounds_violation", 0.0};
  Worst order{"solver_order_deficit", 0.0};
  Worst theta{"theta_profile", 1e-6};

  const auto problems = identity_problems();

  // W_t = W_ww by finite differences of the closed forms.
  for (const ProblemData& p : problems) {
    const JumpConstants jc = jump_constants(p);
    for (double eps : {1e-1, 1e-2, 1e-3}) {
      const LayerContext ctx{jc, p.M, eps};
      for (LayerTerm term : {LayerTerm::W0, LayerTerm::W12, LayerTerm::W1, LayerTerm::W32, LayerTerm::U0eps,
                             LayerTerm::U12eps}) {
        for (int i = 0; i <= 20; ++i) {
          const double w = -5.0 + 0.5 * i;
          for (double t : {0.1, 0.35, 0.7, 1.1}) {
            auto f = [&](double ww, double tt) { return layer_value(term, ww, tt, ctx); };
            const double ht = 1e-5, hw = 1e-3;
            const double ft = (f(w, t + ht) - f(w, t - ht)) / (2.0 * ht);
            const double fww = (-f(w + 2 * hw, t) + 16 * f(w + hw, t) - 30 * f(w, t) + 16 * f(w - hw, t) -
                                f(w - 2 * hw, t)) /
                               (12.0 * hw * hw);
            heat.add(std::abs(ft - fww) / (1.0 + std::abs(f(w, t))));
          }
        }
      }
    }
  }

  // Boundary-layer ODEs, matching tails at z = 60/M and |w| = 40.
  for (const ProblemData& p : problems) {
    const JumpConstants jc = jump_constants(p);
    for (double eps : {1e-1, 1e-2, 1e-3}) {
      for (bool corrected : {false, true}) {
        for (double t : {0.2, 0.6, 0.95, 1.1}) {
          const double tau = (1.0 / p.M - t) / std::sqrt(eps);
          for (int k = 0; k <= 3; ++k) {
            for (double z : {0.1, 0.5, 1.0, 2.5, 6.0}) {
              const double y = Y_profile(k, z, tau, t, p, eps, corrected);
              ode.add(std::abs(ode_residual(k, z, tau, t, p, eps, corrected)) / (1.0 + std::abs(y)));
            }
            const double zf = 60.0 / p.M;
            const double c = match_coeffs(k, zf, tau, t, p, eps, corrected);
            tail_z.add(std::abs(Y_profile(k, zf, tau, t, p, eps, corrected) - c) / (1.0 + std::abs(c)));
          }
        }
      }
      const LayerContext ctx{jc, p.M, eps};
      for (LayerTerm term : {LayerTerm::W0, LayerTerm::W12, LayerTerm::W1, LayerTerm::W32}) {
        for (double t : {0.1, 0.5, 1.2}) {
          for (auto [w, side] : {std::pair{40.0, Side::plus}, std::pair{-40.0, Side::minus}}) {
            const double m = matching_polynomial(term, side, w, t, ctx);
            tail_w.add(std::abs(layer_value(term, w, t, ctx) - m) / (1.0 + std::abs(m)));
          }
        }
      }
    }
  }

  // ½·e^{−4y²/π} ≤ erfc(y) ≤ e^{−y²} for y ≥ 0.
  for (int i = 0; i <= 20000; ++i) {
    const double y = 6.0 * i / 20000.0;
    const double c = erfc(y);
    const double lower = 0.5 * std::exp(-4.0 * y * y / pi);
    const double upper = std::exp(-y * y);
    chu.add(std::max(0.0, lower - c) + std::max(0.0, c - upper * (1.0 + 1e-15)));
  }

  // Manufactured solution y = e^{−t} sin(πx) on refined grids.
  {
    ProblemData p;
    p.M = 1.0;
    p.T = 1.0;
    p.y0 = SmoothFunction::scaled_sine(1.0, pi);
    p.v = SmoothFunction::constant(0.0);
    const double eps = 0.1;
    const SourceTerm f = [&](double x, double t) {
      return std::exp(-t) * ((eps * pi * pi - 1.0) * std::sin(pi * x) + p.M * pi * std::cos(pi * x));
    };
    std::vector<double> err;
    for (std::size_t n : {40, 80, 160}) {
      const FieldGrid g = solve(p, eps, n, n, f);
      double e = 0.0;
      for (std::size_t i = 0; i <= n; ++i)
        e = std::max(e, std::abs(g.at(i, n) - std::exp(-1.0) * std::sin(pi * g.grid.x(i))));
      err.push_back(e);
    }
    const double observed = std::log2(err[1] / err[2]);
    order.add(std::max(0.0, 1.9 - observed));
  }

  // Initial corner profile against the approximation just after t = 0.
  {
    ProblemData p;
    p.M = 1.0;
    p.T = 1.2;
    p.y0 = SmoothFunction::polynomial({1.0, 1.0});  // y0(1) = 2, y0'(1) = 1
    p.v = SmoothFunction::constant(1.0);
    for (double eps : {1e-1, 1e-2, 1e-3}) {
      const CompositeApprox a(p, eps, Variant::corrected);
      for (int i = 0; i <= 200; ++i) {
        // Near x = 1 only: at x = 0 the internal corner layer grows like √t.
        const double x = 1.0 - std::min(10.0 * eps, 0.5) * i / 200.0;
        // P(x,t) − y0(x) − θ(x) = O(t); the limit t → 0⁺ is extrapolated linearly.
        const double limit = 2.0 * a.value(x, 1e-8) - a.value(x, 2e-8);
        theta.add(std::abs(limit - p.y0(x) - theta_initial_profile(x, eps, p)));
      }
    }
  }

  return summarise("property suites: heat and ODE residuals, matching tails, erfc bounds, solver order, initial profile",
                   {heat, ode, tail_w, tail_z, chu, order, theta}, t0);
}

CheckResult check_field_features() {
  const auto t0 = Clock::now();
  const ProblemData p = shipped_scenario("shock");
  const std::size_t n = 20000;
  std::vector<double> x(n + 1);
  for (std::size_t i = 0; i <= n; ++i) x[i] = static_cast<double>(i) / n;
  auto sample = [&](double eps, double t) {
    const CompositeApprox a(p, eps, Variant::corrected);
    const auto s = a.slice(t);
    std::vector<double> y(n + 1);
    for (std::size_t i = 0; i <= n; ++i) y[i] = s.value(x[i]);
    return y;
  };
  const double half = 0.5 / p.M, full = 1.0 / p.M;
  const auto y2h = sample(1e-2, half);
  const auto y3h = sample(1e-3, half);
  const auto y2f = sample(1e-2, full);

  const Crossings ch = level_crossings(x, y2h, 0.5);
  const bool half_ok = ch.up.size() == 1 && ch.down.size() == 1 && std::abs(ch.up[0] - 0.5) < 0.02 &&
                       ch.down[0] > 0.95;
  // At t = 1/M both transitions sit in the last few internal-layer widths.
  const Crossings cf = level_crossings(x, y2f, 0.25);
  const bool full_ok = cf.up.size() == 1 && cf.down.size() == 1 && cf.up[0] > 0.7 && cf.down[0] > 0.95;
  const double ratio = transition_width(x, y2h, 0.5) / transition_width(x, y3h, 0.5);
  const bool ratio_ok = std::abs(ratio - std::sqrt(10.0)) < 0.05 * std::sqrt(10.0);

  CheckResult r;
  r.name = "field features: transitions at x = 1/2 and 1 for t = 1/(2M), merged near x = 1 at t = 1/M, width ratio sqrt(10)";
  r.passed = half_ok && full_ok && ratio_ok;
  r.detail = join({kv("up_half", ch.up.empty() ? NAN : ch.up[0]), kv("down_half", ch.down.empty() ? NAN : ch.down[0]),
                   kv("up_full", cf.up.empty() ? NAN : cf.up[0]), kv("down_full", cf.down.empty() ? NAN : cf.down[0]),
                   kv("width_ratio", ratio)});
  r.seconds = seconds_since(t0);
  return r;
}

std::vector<CheckResult> run_acceptance(unsigned threads, const std::function<void(const CheckResult&)>& on_result) {
  std::vector<CheckResult> out;
  auto push = [&](CheckResult r) {
    if (on_result) on_result(r);
    out.push_back(std::move(r));
  };
  auto guarded = [&](const char* name, auto&& fn) {
    try {
      fn();
    } catch (const std::exception& e) {
      push(CheckResult{name, false, std::string("exception: ") + e.what(), 0.0});
    }
  };
  guarded("exact identities", [&] { push(check_exact_identities()); });
  guarded("property suites", [&] { push(check_property_suites()); });
  guarded("solver-free rates", [&] { push(check_trace_rates(threads)); });
  guarded("field features", [&] { push(check_field_features()); });
  guarded("shock-layer rates", [&] {
    for (auto& r : check_shock_rates(threads)) push(std::move(r));
  });
  guarded("L2(H1) rate", [&] { push(check_h1_rate(threads)); });
  guarded("decay", [&] { push(check_decay_rates(threads)); });
  return out;
}

std::string format_check(const CheckResult& r) {
  char secs[32];
  std::snprintf(secs, sizeof secs, "%.1fs", r.seconds);
  return std::string(r.passed ? "PASS " : "FAIL ") + r.name + " (" + secs + ") " + r.detail;
}

}  // namespace lad
