#pragma once

#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "layered_advect/scenario.hpp"

namespace lad {

/// The four scenarios shipped in `scenarios/`, also available without files:
/// "shock" (y0 = 1, v = 0), "angular" (y0 = x, v = 0), "outflow_flat"
/// (y0 = (1−x)², v = 1) and "compatible" (y0 = 1, v = 1 + sin(πt)/2).
/// All use M = 1, T = 1.2. Throws std::invalid_argument for other names.
[[nodiscard]] ProblemData shipped_scenario(std::string_view name);
[[nodiscard]] std::vector<std::string> shipped_scenario_names();

/// One line of the acceptance report.
struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;  ///< measured quantities, one `key=value` list
  double seconds = 0.0;
};

/// Convergence rate of the corrected approximation on the shock scenario
/// (masked L∞(L²), grid gate) and the degradation of the plain one. Both come
/// from a single sweep, so this returns two results.
[[nodiscard]] std::vector<CheckResult> check_shock_rates(unsigned threads = 0);
/// L²(H¹) rate on the outflow_flat scenario.
[[nodiscard]] CheckResult check_h1_rate(unsigned threads = 0);
/// Inflow-trace and residual rates by quadrature (no PDE solve).
[[nodiscard]] CheckResult check_trace_rates(unsigned threads = 0);
/// ‖y(·,1/M)‖ decay exponents for the three y0 families with v = 0.
[[nodiscard]] CheckResult check_decay_rates(unsigned threads = 0);
/// Exact algebraic identities: inflow traces of the ε-corrected layer terms,
/// the outflow Dirichlet value, the t → 0 inflow trace limit, the closed form
/// for y0 = 1, v = 0, and the operator identities.
[[nodiscard]] CheckResult check_exact_identities();
/// Heat-equation residuals of the layer terms, boundary-layer ODE residuals,
/// matching tails, erfc bounds, manufactured-solution order of the solver and
/// the initial corner profile.
[[nodiscard]] CheckResult check_property_suites();
/// Qualitative shape of the shock-scenario slices: transitions near x = 1/2
/// and x = 1 at t = 1/(2M), both near x = 1 at t = 1/M, width ratio √10.
[[nodiscard]] CheckResult check_field_features();

/// Runs every check in order, reporting each result as soon as it is known.
[[nodiscard]] std::vector<CheckResult> run_acceptance(
    unsigned threads = 0, const std::function<void(const CheckResult&)>& on_result = {});

/// `PASS <name> (<seconds>s) <detail>` or `FAIL ...`.
[[nodiscard]] std::string format_check(const CheckResult& r);

}  // namespace lad
