// Command-line front end: solver runs, approximation slices, rate/trace/decay
// studies, field export, identity report and the full self-test.
//
// Exit codes: 0 success, 1 a verdict or check failed, 2 usage error or
// malformed scenario.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "layered_advect/acceptance.hpp"
#include "layered_advect/composite.hpp"
#include "layered_advect/reference_solver.hpp"
#include "layered_advect/scenario.hpp"
#include "layered_advect/study.hpp"

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_failed = 1;
constexpr int exit_usage = 2;

// Raised for inconsistent option combinations detected after parsing.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string scenario;
  std::vector<double> eps;
  std::optional<double> nx_rule;
  std::string variant;
  bool mask = true;
  std::string out;
  std::vector<double> times;
};

// Everything a run resolved to, written verbatim to manifest.json.
struct Run {
  std::string command;
  std::vector<std::string> argv;
  json config = json::object();
  std::vector<std::string> outputs;
  fs::path out_dir;

  void output(const fs::path& p) { outputs.push_back(p.string()); }

  void write_manifest(int exit_code, double seconds) const {
    json m;
    m["command"] = command;
    m["argv"] = argv;
    m["config"] = config;
    m["outputs"] = outputs;
    m["exit_code"] = exit_code;
    m["seconds"] = seconds;
    const char* threads_env = std::getenv("LAYERED_ADVECT_THREADS");
    m["environment"]["LAYERED_ADVECT_THREADS"] = threads_env ? json(threads_env) : json(nullptr);
    m["environment"]["worker_threads"] = lad::worker_threads();
    fs::create_directories(out_dir);
    std::ofstream os(out_dir / "manifest.json");
    os << m.dump(2) << '\n';
  }
};

// Short ε tag for file and directory names.
std::string tag(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

std::string g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_text(const fs::path& file, const std::string& text) {
  fs::create_directories(file.parent_path());
  std::ofstream os(file);
  if (!os) throw std::runtime_error("cannot write " + file.string());
  os << text;
}

json problem_json(const lad::ProblemData& p) {
  return {{"M", p.M}, {"T", p.T}, {"y0", p.y0.to_string()}, {"v", p.v.to_string()}};
}

lad::ProblemData require_scenario(const Options& o, Run& run) {
  if (o.scenario.empty()) throw UsageError("--scenario is required for '" + run.command + "'");
  lad::ProblemData p = lad::load_scenario(o.scenario);
  run.config["scenario"] = o.scenario;
  run.config["problem"] = problem_json(p);
  return p;
}

std::vector<double> eps_or(const Options& o, std::vector<double> fallback) {
  return o.eps.empty() ? fallback : o.eps;
}

bool all_passed(const std::vector<lad::SlopeVerdict>& vs) {
  for (const auto& v : vs)
    if (!v.passed) return false;
  return true;
}

lad::Variant single_variant(const Options& o) {
  if (o.variant.empty()) return lad::Variant::corrected;
  try {
    return lad::parse_variant(o.variant);
  } catch (const std::invalid_argument&) {
    throw UsageError("--variant must be 'plain' or 'corrected' for this command");
  }
}

// ---------------------------------------------------------------------------

int cmd_solve(const Options& o, Run& run) {
  const lad::ProblemData p = require_scenario(o, run);
  const auto eps = eps_or(o, {0.01});
  const double m = o.nx_rule.value_or(8.0);
  run.config["eps"] = eps;
  run.config["nx_rule"] = m;
  run.config["time_rows"] = 100;
  for (double e : eps) {
    const lad::GridSpec g = lad::layer_grid(e, p.M, p.T, m);
    const auto file = run.out_dir / ("solution_eps" + tag(e) + ".csv");
    fs::create_directories(run.out_dir);
    std::ofstream os(file);
    os << "x,t,value\n";
    const std::size_t stride = std::max<std::size_t>(1, g.nt / 100);
    const lad::MarchInfo info = lad::march(p, e, g, [&](std::size_t n, double t, std::span<const double> row) {
      if (n % stride != 0 && n != g.nt) return;
      for (std::size_t i = 0; i < row.size(); ++i) os << g17(g.x(i)) << ',' << g17(t) << ',' << g17(row[i]) << '\n';
    });
    run.output(file);
    std::cout << "eps=" << e << " nx=" << g.nx << " nt=" << g.nt << " peclet=" << info.peclet
              << (info.peclet_warning ? " (cell Peclet > 1)" : "") << " -> " << file.string() << '\n';
  }
  return exit_ok;
}

int cmd_approx(const Options& o, Run& run) {
  const lad::ProblemData p = require_scenario(o, run);
  const auto eps = eps_or(o, {0.01});
  const lad::Variant variant = single_variant(o);
  const std::vector<double> times = o.times.empty() ? std::vector<double>{0.5 / p.M, 1.0 / p.M} : o.times;
  run.config["eps"] = eps;
  run.config["variant"] = std::string(lad::to_string(variant));
  run.config["times"] = times;
  run.config["nx"] = 2000;
  fs::create_directories(run.out_dir);
  for (double e : eps) {
    const lad::CompositeApprox a(p, e, variant);
    const auto file = run.out_dir / ("approx_eps" + tag(e) + ".csv");
    std::ofstream os(file);
    os << "x,t,value,dx,residual\n";
    for (double t : times) {
      if (!(t > 0.0 && t <= p.T)) throw UsageError("--times entries must lie in (0, T]");
      const auto s = a.slice(t);
      for (int i = 0; i <= 2000; ++i) {
        const double x = i / 2000.0;
        double v = 0.0, d = 0.0;
        s.value_dx(x, v, d);
        os << g17(x) << ',' << g17(t) << ',' << g17(v) << ',' << g17(d) << ',' << g17(s.residual(x)) << '\n';
      }
    }
    run.output(file);
    std::cout << "eps=" << e << " -> " << file.string() << '\n';
  }
  return exit_ok;
}

int cmd_rates(const Options& o, Run& run) {
  lad::SweepConfig cfg;
  cfg.problem = require_scenario(o, run);
  cfg.scenario_name = fs::path(o.scenario).stem().string();
  if (!o.eps.empty()) cfg.eps = o.eps;
  if (o.nx_rule) cfg.nx_rule = *o.nx_rule;
  if (!o.variant.empty()) {
    try {
      cfg.variant = lad::parse_variant_choice(o.variant);
    } catch (const std::invalid_argument&) {
      throw UsageError("--variant must be 'plain', 'corrected' or 'both'");
    }
  }
  cfg.mask = o.mask;
  if (cfg.problem.y0(1.0) == 0.0 && cfg.problem.y0.derivative(1, 1.0) == 0.0) cfg.gate_metric = lad::GateMetric::l2_h1;
  try {
    cfg.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  run.config["eps"] = cfg.eps;
  run.config["nx_rule"] = cfg.nx_rule;
  run.config["variant"] = std::string(lad::to_string(cfg.variant));
  run.config["mask"] = cfg.mask;
  run.config["mask_factor"] = cfg.mask_factor;
  run.config["grid_gate"] = cfg.grid_gate;
  run.config["gate_metric"] = std::string(lad::to_string(cfg.gate_metric));
  run.config["gate_tolerance"] = cfg.gate_tolerance;
  run.config["time_samples"] = cfg.time_samples;

  lad::RateReport rep = lad::run_rate_study(cfg);
  lad::add_default_rate_verdicts(rep);
  for (const auto& v : rep.variants) {
    const auto file = run.out_dir / ("rates_" + std::string(lad::to_string(v.variant)) + ".csv");
    lad::write_rates_csv(v, file);
    run.output(file);
  }
  const std::string text = lad::format_verdicts(rep.verdicts);
  write_text(run.out_dir / "report.txt", text);
  write_text(run.out_dir / "report.json", lad::rate_report_json(rep));
  run.output(run.out_dir / "report.txt");
  run.output(run.out_dir / "report.json");
  std::cout << text;
  return all_passed(rep.verdicts) ? exit_ok : exit_failed;
}

int cmd_traces(const Options& o, Run& run) {
  const lad::ProblemData p = require_scenario(o, run);
  const auto eps = eps_or(o, {0.04, 0.02, 0.01, 0.005});
  const lad::Variant variant = single_variant(o);
  run.config["eps"] = eps;
  run.config["variant"] = std::string(lad::to_string(variant));
  if (eps.size() < 2) throw UsageError("--eps needs at least two values");
  const lad::TraceReport rep =
      lad::run_trace_study(fs::path(o.scenario).stem().string(), p, eps, variant);
  lad::write_trace_csv(rep, run.out_dir / "traces.csv");
  const std::string text = lad::format_verdicts(rep.verdicts);
  write_text(run.out_dir / "report.txt", text);
  write_text(run.out_dir / "report.json", lad::trace_report_json(rep));
  for (const char* f : {"traces.csv", "report.txt", "report.json"}) run.output(run.out_dir / f);
  std::cout << text;
  return all_passed(rep.verdicts) ? exit_ok : exit_failed;
}

int cmd_decay(const Options& o, Run& run) {
  lad::DecayConfig cfg;
  if (!o.eps.empty()) cfg.eps = o.eps;
  if (o.nx_rule) cfg.nx_rule = *o.nx_rule;
  if (!o.scenario.empty()) {
    // A user scenario replaces the three default families; it is reported
    // against the target implied by its leading non-zero derivative at 0.
    lad::ProblemData p = require_scenario(o, run);
    if (!p.v.is_zero()) throw UsageError("decay requires a scenario with v = 0");
    double target = 1.25, tol = 0.1;
    if (p.y0(0.0) != 0.0) {
      target = 0.25;
      tol = 0.05;
    } else if (p.y0.derivative(1, 0.0) != 0.0) {
      target = 0.75;
      tol = 0.07;
    }
    cfg.families = {lad::DecayFamily{fs::path(o.scenario).stem().string(), p, target, tol}};
  }
  if (cfg.eps.size() < 2) throw UsageError("--eps needs at least two values");
  run.config["eps"] = cfg.eps;
  run.config["nx_rule"] = cfg.nx_rule;
  run.config["gate_tolerance"] = cfg.gate_tolerance;
  json fams = json::array();
  for (const auto& f : cfg.families)
    fams.push_back({{"name", f.name}, {"problem", problem_json(f.problem)}, {"target", f.target_slope},
                    {"tolerance", f.tolerance}});
  run.config["families"] = fams;

  const lad::DecayReport rep = lad::run_decay_study(cfg);
  lad::write_decay_csv(rep, run.out_dir / "decay.csv");
  std::vector<lad::SlopeVerdict> verdicts;
  for (const auto& f : rep.families) verdicts.push_back(f.verdict);
  const std::string text = lad::format_verdicts(verdicts);
  write_text(run.out_dir / "report.txt", text);
  write_text(run.out_dir / "report.json", lad::decay_report_json(rep));
  for (const char* f : {"decay.csv", "report.txt", "report.json"}) run.output(run.out_dir / f);
  std::cout << text;
  return all_passed(verdicts) ? exit_ok : exit_failed;
}

int cmd_fields(const Options& o, Run& run) {
  const lad::ProblemData p = require_scenario(o, run);
  const auto eps = eps_or(o, {0.01});
  const lad::Variant variant = single_variant(o);
  const std::vector<double> times = o.times.empty() ? std::vector<double>{0.5 / p.M, 1.0 / p.M} : o.times;
  for (double t : times)
    if (!(t > 0.0 && t <= p.T)) throw UsageError("--times entries must lie in (0, T]");
  run.config["eps"] = eps;
  run.config["variant"] = std::string(lad::to_string(variant));
  run.config["times"] = times;
  run.config["nx_slice"] = 2000;
  run.config["nx_surface"] = 200;
  run.config["nt_surface"] = 120;
  for (double e : eps) {
    const fs::path dir = eps.size() == 1 ? run.out_dir : run.out_dir / ("eps" + tag(e));
    const lad::FieldOutput out = lad::emit_fields(p, e, variant, times, dir);
    for (const auto& f : out.slices) run.output(f);
    run.output(out.surface);
  }
  for (const auto& f : run.outputs) std::cout << f << '\n';
  return exit_ok;
}

int cmd_identities(const Options&, Run& run) {
  const double tol = 1e-9;
  run.config["tolerance"] = tol;
  const lad::IdentityReport rep = lad::operator_identities_check();
  json j = json::array();
  std::string text;
  for (const auto& r : rep.identities) {
    char line[200];
    std::snprintf(line, sizeof line, "%-28s max_deviation=%.3e samples=%zu\n", r.name.c_str(), r.max_deviation,
                  r.samples);
    text += line;
    j.push_back({{"name", r.name}, {"max_deviation", r.max_deviation}, {"samples", r.samples}});
  }
  const bool ok = rep.max_deviation() <= tol;
  char tail[120];
  std::snprintf(tail, sizeof tail, "max_deviation=%.3e tolerance=%.0e verdict=%s\n", rep.max_deviation(), tol,
                ok ? "PASS" : "FAIL");
  text += tail;
  write_text(run.out_dir / "identities.txt", text);
  write_text(run.out_dir / "identities.json",
             json{{"identities", j}, {"max_deviation", rep.max_deviation()}, {"passed", ok}}.dump(2) + "\n");
  run.output(run.out_dir / "identities.txt");
  run.output(run.out_dir / "identities.json");
  std::cout << text;
  return ok ? exit_ok : exit_failed;
}

int cmd_selftest(const Options&, Run& run) {
  bool ok = true;
  std::string text;
  json j = json::array();
  const auto results = lad::run_acceptance(0, [&](const lad::CheckResult& r) {
    const std::string line = lad::format_check(r);
    std::cout << line << std::endl;
    text += line + '\n';
    ok = ok && r.passed;
    j.push_back({{"name", r.name}, {"passed", r.passed}, {"detail", r.detail}, {"seconds", r.seconds}});
  });
  write_text(run.out_dir / "selftest.txt", text);
  write_text(run.out_dir / "selftest.json", j.dump(2) + "\n");
  run.output(run.out_dir / "selftest.txt");
  run.output(run.out_dir / "selftest.json");
  std::cout << (ok ? "selftest: all checks passed\n" : "selftest: FAILED\n");
  return ok ? exit_ok : exit_failed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Layered advection-diffusion: asymptotic approximations, reference solver and rate studies"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Expand all help");

  Options o;
  using Handler = int (*)(const Options&, Run&);
  struct Sub {
    const char* name;
    const char* help;
    Handler fn;
    bool scenario, eps, nx_rule, variant, mask, times;
  };
  const std::vector<Sub> subs{
      {"solve", "Run the reference solver and write sampled rows", cmd_solve, true, true, true, false, false, false},
      {"approx", "Evaluate the approximation, its x-derivative and residual on slices", cmd_approx, true, true,
       false, true, false, true},
      {"rates", "Solver-vs-approximation convergence rates", cmd_rates, true, true, true, true, true, false},
      {"traces", "Solver-free inflow-trace and residual rates", cmd_traces, true, true, false, true, false, false},
      {"decay", "Decay of the solution at t = 1/M for v = 0", cmd_decay, true, true, true, false, false, false},
      {"fields", "Slice and surface CSVs of the approximation", cmd_fields, true, true, false, true, false, true},
      {"identities", "Operator identity report", cmd_identities, false, false, false, false, false, false},
      {"selftest", "Run every acceptance check", cmd_selftest, false, false, false, false, false, false},
  };
  std::vector<std::pair<CLI::App*, const Sub*>> apps;
  for (const auto& s : subs) {
    CLI::App* sub = app.add_subcommand(s.name, s.help);
    if (s.scenario) sub->add_option("--scenario", o.scenario, "Scenario file (key = value lines)");
    if (s.eps) sub->add_option("--eps", o.eps, "Comma-separated list of epsilon values")->delimiter(',');
    if (s.nx_rule)
      sub->add_option("--nx-rule", o.nx_rule, "Grid multiplier m in dx = eps/m")->check(CLI::PositiveNumber);
    if (s.variant) sub->add_option("--variant", o.variant, "plain | corrected (rates also: both)");
    if (s.mask) sub->add_flag("--mask,!--no-mask", o.mask, "Apply the transient mask (default on)");
    if (s.times) sub->add_option("--times", o.times, "Comma-separated slice times")->delimiter(',');
    sub->add_option("--out", o.out, "Output directory (default out/<command>)");
    apps.emplace_back(sub, &s);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? exit_ok : exit_usage;
  }

  for (const auto& [sub, s] : apps) {
    if (!sub->parsed()) continue;
    Run run;
    run.command = s->name;
    run.argv.assign(argv, argv + argc);
    run.out_dir = o.out.empty() ? fs::path("out") / s->name : fs::path(o.out);
    run.config["out"] = run.out_dir.string();
    const auto t0 = std::chrono::steady_clock::now();
    int code = exit_ok;
    try {
      code = s->fn(o, run);
    } catch (const lad::ScenarioError& e) {
      // The message carries the line and field when they are known.
      std::cerr << "error: scenario " << o.scenario << ": " << e.what() << '\n';
      code = exit_usage;
    } catch (const UsageError& e) {
      std::cerr << "error: " << e.what() << '\n';
      code = exit_usage;
    } catch (const std::invalid_argument& e) {
      std::cerr << "error: " << e.what() << '\n';
      code = exit_usage;
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << '\n';
      code = exit_failed;
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    try {
      run.write_manifest(code, secs);
    } catch (const std::exception& e) {
      std::cerr << "error: cannot write manifest: " << e.what() << '\n';
      if (code == exit_ok) code = exit_failed;
    }
    return code;
  }
  return exit_usage;
}
