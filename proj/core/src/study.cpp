#include "layered_advect/study.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <limits>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "json.hpp"

namespace lad {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

// Runs job(i) for i in [0, n) on up to `threads` workers. The first exception
// thrown by any job is rethrown on the calling thread.
template <class Job>
void parallel_for(std::size_t n, unsigned threads, Job job) {
  if (threads == 0) threads = worker_threads();
  const std::size_t workers = std::min<std::size_t>(threads, n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) job(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        job(i);
      } catch (...) {
        const std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

LineFit fit_log_log(const std::vector<double>& eps, const std::vector<double>& norms) {
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < eps.size(); ++i) {
    if (!(norms[i] > 0.0) || !std::isfinite(norms[i])) {
      LineFit bad;
      bad.slope = std::numeric_limits<double>::quiet_NaN();
      bad.residual = std::numeric_limits<double>::quiet_NaN();
      return bad;
    }
    lx.push_back(std::log(eps[i]));
    ly.push_back(std::log(norms[i]));
  }
  return fit_line(lx.data(), ly.data(), lx.size());
}

struct RunResult {
  std::vector<NormRecord> norms;  // one per variant
  std::size_t nx = 0, nt = 0;
  bool peclet_warning = false;
};

// One solver run at dx = ε/m with every requested approximation sampled on the
// solver nodes.
RunResult measure(const SweepConfig& cfg, double eps, double m, const std::vector<Variant>& variants) {
  const ProblemData& p = cfg.problem;
  const GridSpec g = layer_grid(eps, p.M, p.T, m);
  const double t_min = cfg.mask ? transient_mask(eps, p.M, cfg.mask_factor) : 0.0;

  std::vector<std::unique_ptr<CompositeApprox>> approx;
  std::vector<ErrorAccumulator> acc;
  for (Variant v : variants) {
    approx.push_back(std::make_unique<CompositeApprox>(p, eps, v));
    acc.emplace_back(t_min);
  }

  const std::size_t stride = std::max<std::size_t>(1, g.nt / std::max<std::size_t>(1, cfg.time_samples));
  const auto n_min = static_cast<std::size_t>(std::ceil(t_min / g.dt() - 1e-9));
  auto sampled = [&](std::size_t n) {
    if (n % stride == 0 || n == g.nt || n == n_min) return true;
    // Geometric refinement towards t = 0 for the time integral of the H¹ norm.
    return n < stride && (n & (n - 1)) == 0;
  };

  const std::size_t nodes = g.nx + 1;
  std::vector<double> dy(nodes), e(nodes), ex(nodes);
  const double dx = g.dx();
  const MarchInfo info = march(p, eps, g, [&](std::size_t n, double t, std::span<const double> row) {
    if (!sampled(n)) return;
    differentiate(row, dx, dy);
    for (std::size_t k = 0; k < approx.size(); ++k) {
      const auto slice = approx[k]->slice(t);
      for (std::size_t i = 0; i < nodes; ++i) {
        double v = 0.0, vx = 0.0;
        slice.value_dx(g.x(i), v, vx);
        e[i] = row[i] - v;
        ex[i] = dy[i] - vx;
      }
      acc[k].add(t, l2_norm(e, dx), l2_norm(ex, dx));
    }
  });

  RunResult r;
  r.nx = g.nx;
  r.nt = g.nt;
  r.peclet_warning = info.peclet_warning;
  for (std::size_t k = 0; k < approx.size(); ++k) {
    NormRecord rec;
    rec.eps = eps;
    rec.linf_l2 = acc[k].linf_l2();
    rec.linf_l2_masked = acc[k].linf_l2_masked();
    rec.l2_h1 = acc[k].l2_h1();
    rec.t_min = t_min;
    r.norms.push_back(rec);
  }
  return r;
}

double gate_value(const NormRecord& n, GateMetric metric, bool masked) {
  if (metric == GateMetric::l2_h1) return n.l2_h1;
  return masked ? n.linf_l2_masked : n.linf_l2;
}

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::ofstream open_output(const std::filesystem::path& file) {
  if (file.has_parent_path()) std::filesystem::create_directories(file.parent_path());
  std::ofstream out(file);
  if (!out) throw std::runtime_error("cannot open '" + file.string() + "' for writing");
  return out;
}

nlohmann::json fit_json(const LineFit& f) {
  return {{"slope", f.slope}, {"intercept", f.intercept}, {"residual", f.residual},
          {"slope_stderr", f.slope_stderr}};
}

nlohmann::json verdicts_json(const std::vector<SlopeVerdict>& vs) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& v : vs) {
    arr.push_back({{"name", v.name},
                   {"target_slope", v.target_slope},
                   {"lower", v.lower},
                   {"upper", std::isfinite(v.upper) ? nlohmann::json(v.upper) : nlohmann::json(nullptr)},
                   {"fitted_slope", v.fitted_slope},
                   {"fit_residual", v.fit_residual},
                   {"grid_gate", v.gate_passed},
                   {"verdict", v.passed ? "pass" : "fail"}});
  }
  return arr;
}

nlohmann::json problem_json(const ProblemData& p) {
  return {{"M", p.M}, {"T", p.T}, {"y0", p.y0.to_string()}, {"v", p.v.to_string()}};
}

}  // namespace

// ---------------------------------------------------------------------------

std::string_view to_string(VariantChoice v) noexcept {
  switch (v) {
    case VariantChoice::corrected: return "corrected";
    case VariantChoice::plain: return "plain";
    default: return "both";
  }
}

VariantChoice parse_variant_choice(std::string_view s) {
  if (s == "corrected") return VariantChoice::corrected;
  if (s == "plain") return VariantChoice::plain;
  if (s == "both") return VariantChoice::both;
  throw std::invalid_argument("unknown variant '" + std::string(s) + "' (corrected|plain|both)");
}

std::vector<Variant> variants_of(VariantChoice v) {
  switch (v) {
    case VariantChoice::corrected: return {Variant::corrected};
    case VariantChoice::plain: return {Variant::plain};
    default: return {Variant::corrected, Variant::plain};
  }
}

std::string_view to_string(GateMetric g) noexcept {
  return g == GateMetric::linf_l2 ? "linf_l2" : "l2_h1";
}

double transient_mask(double eps, double M, double factor) {
  return factor * eps / (M * M) * std::abs(std::log(eps));
}

unsigned worker_threads() {
  if (const char* env = std::getenv("LAYERED_ADVECT_THREADS")) {
    char* end = nullptr;
    const long n = std::strtol(env, &end, 10);
    if (end != env && n > 0) return static_cast<unsigned>(n);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

void SweepConfig::validate() const {
  problem.validate();
  if (eps.size() < 2) throw std::invalid_argument("sweep: need at least two values of eps");
  for (std::size_t i = 0; i < eps.size(); ++i) {
    if (!(eps[i] > 0.0 && eps[i] < 1.0)) throw std::invalid_argument("sweep: eps must lie in (0,1)");
    if (i > 0 && !(eps[i] < eps[i - 1]))
      throw std::invalid_argument("sweep: eps list must be strictly decreasing");
  }
  if (!(nx_rule > 0.0)) throw std::invalid_argument("sweep: nx rule must be positive");
  if (!(mask_factor >= 0.0)) throw std::invalid_argument("sweep: mask factor must be nonnegative");
  if (time_samples == 0) throw std::invalid_argument("sweep: time_samples must be positive");
}

SlopeVerdict judge_slope(std::string name, const LineFit& fit, double target, double lower,
                         double upper, bool gate_passed) {
  SlopeVerdict v;
  v.name = std::move(name);
  v.target_slope = target;
  v.lower = lower;
  v.upper = upper;
  v.fitted_slope = fit.slope;
  v.fit_residual = fit.residual;
  v.gate_passed = gate_passed;
  v.passed = gate_passed && std::isfinite(fit.slope) && fit.slope >= lower && fit.slope <= upper;
  return v;
}

const VariantRates* RateReport::find(Variant v) const {
  for (const auto& r : variants)
    if (r.variant == v) return &r;
  return nullptr;
}

RateReport run_rate_study(const SweepConfig& cfg) {
  cfg.validate();
  const auto t0 = Clock::now();
  const std::vector<Variant> variants = variants_of(cfg.variant);
  const std::size_t n_eps = cfg.eps.size();

  std::vector<RunResult> coarse(n_eps), fine(n_eps);
  // Work items: (ε, grid) pairs; the finest grids first so the longest jobs start early.
  const std::size_t grids = cfg.grid_gate ? 2 : 1;
  parallel_for(n_eps * grids, cfg.threads, [&](std::size_t job) {
    const std::size_t i = n_eps - 1 - job / grids;
    const bool refined = cfg.grid_gate && job % grids == 0;
    const double m = refined ? 2.0 * cfg.nx_rule : cfg.nx_rule;
    (refined || !cfg.grid_gate ? fine : coarse)[i] = measure(cfg, cfg.eps[i], m, variants);
  });

  RateReport report;
  report.config = cfg;
  report.hypotheses_hold = std::abs(cfg.problem.y0(1.0)) < 1e-14 &&
                           std::abs(cfg.problem.y0.derivative(1, 1.0)) < 1e-14;
  for (std::size_t k = 0; k < variants.size(); ++k) {
    VariantRates vr;
    vr.variant = variants[k];
    std::vector<double> a, b, c;
    for (std::size_t i = 0; i < n_eps; ++i) {
      vr.norms.push_back(fine[i].norms[k]);
      a.push_back(fine[i].norms[k].linf_l2);
      b.push_back(fine[i].norms[k].linf_l2_masked);
      c.push_back(fine[i].norms[k].l2_h1);
    }
    vr.fit_linf_l2 = fit_log_log(cfg.eps, a);
    vr.fit_linf_l2_masked = fit_log_log(cfg.eps, b);
    vr.fit_l2_h1 = fit_log_log(cfg.eps, c);
    report.variants.push_back(std::move(vr));
  }
  for (std::size_t i = 0; i < n_eps; ++i) {
    report.peclet_warning = report.peclet_warning || fine[i].peclet_warning;
    report.nx_finest = std::max(report.nx_finest, fine[i].nx);
    report.nt_finest = std::max(report.nt_finest, fine[i].nt);
    if (!cfg.grid_gate) continue;
    GateRecord gr;
    gr.eps = cfg.eps[i];
    gr.coarse = gate_value(coarse[i].norms[0], cfg.gate_metric, cfg.mask);
    gr.fine = gate_value(fine[i].norms[0], cfg.gate_metric, cfg.mask);
    gr.relative_change = std::abs(gr.coarse - gr.fine) / std::max(gr.fine, 1e-300);
    gr.passed = gr.relative_change < cfg.gate_tolerance;
    report.gate_passed = report.gate_passed && gr.passed;
    report.gate.push_back(gr);
  }
  report.seconds = seconds_since(t0);
  return report;
}

void add_default_rate_verdicts(RateReport& r) {
  const bool masked = r.config.mask;
  const bool gate = r.gate_passed;
  const JumpConstants jc = jump_constants(r.config.problem);
  const bool compatible = jc.c_plus == jc.c_minus;
  const double inf = std::numeric_limits<double>::infinity();
  auto linf_fit = [&](const VariantRates& v) { return masked ? v.fit_linf_l2_masked : v.fit_linf_l2; };
  const std::string norm_name = masked ? "masked L-inf(L2)" : "L-inf(L2)";

  const VariantRates* corr = r.find(Variant::corrected);
  const VariantRates* plain = r.find(Variant::plain);
  if (corr)
    r.verdicts.push_back(judge_slope("corrected " + norm_name + " slope", linf_fit(*corr), 1.5, 1.35, inf, gate));
  if (plain) {
    if (compatible)
      r.verdicts.push_back(judge_slope("plain " + norm_name + " slope (compatible data)", linf_fit(*plain), 1.5,
                                       1.35, inf, gate));
    else
      r.verdicts.push_back(judge_slope("plain " + norm_name + " slope", linf_fit(*plain), 0.5, 0.35, 0.65, gate));
  }
  if (corr && plain && !compatible) {
    LineFit sep;
    sep.slope = linf_fit(*corr).slope - linf_fit(*plain).slope;
    sep.residual = std::max(linf_fit(*corr).residual, linf_fit(*plain).residual);
    r.verdicts.push_back(judge_slope("corrected minus plain slope", sep, 1.0, 0.7, inf, gate));
  }
  if (corr && r.hypotheses_hold)
    r.verdicts.push_back(judge_slope("corrected L2(H1) slope", corr->fit_l2_h1, 1.0, 0.85, inf, gate));
}

// ---------------------------------------------------------------------------

TraceReport run_trace_study(const std::string& scenario_name, const ProblemData& p,
                            const std::vector<double>& eps, Variant variant, unsigned threads) {
  p.validate();
  if (eps.size() < 2) throw std::invalid_argument("trace study: need at least two values of eps");
  const auto t0 = Clock::now();
  TraceReport report;
  report.scenario_name = scenario_name;
  report.problem = p;
  report.variant = variant;
  report.records.resize(eps.size());
  parallel_for(eps.size(), threads, [&](std::size_t i) {
    const CompositeApprox a(p, eps[i], variant);
    const TraceNorms n = a.trace_l1_norms();
    TraceRecord& rec = report.records[i];
    rec.eps = eps[i];
    rec.z_l1 = n.z_l1;
    rec.z_t_l1 = n.z_t_l1;
    rec.z_at_0 = n.z_at_0;
    rec.residual_l1_l2 = a.residual_l1_l2();
  });
  std::vector<double> z, zt, res;
  for (const auto& r : report.records) {
    z.push_back(r.z_l1);
    zt.push_back(r.z_t_l1);
    res.push_back(r.residual_l1_l2);
  }
  report.fit_z = fit_log_log(eps, z);
  report.fit_z_t = fit_log_log(eps, zt);
  report.fit_residual = fit_log_log(eps, res);
  const double inf = std::numeric_limits<double>::infinity();
  report.verdicts.push_back(judge_slope("L1 norm of z(0,t) slope", report.fit_z, 2.0, 1.9, inf, true));
  report.verdicts.push_back(judge_slope("L1 norm of z_t(0,t) slope", report.fit_z_t, 1.0, 0.9, inf, true));
  report.verdicts.push_back(
      judge_slope("L1(L2) norm of the residual slope", report.fit_residual, 1.5, 1.4, inf, true));
  report.seconds = seconds_since(t0);
  return report;
}

// ---------------------------------------------------------------------------

std::vector<DecayFamily> default_decay_families(double M) {
  auto make = [M](std::string name, SmoothFunction y0, double target, double tol) {
    DecayFamily f;
    f.name = std::move(name);
    f.problem.M = M;
    f.problem.T = 1.0 / M;
    f.problem.y0 = std::move(y0);
    f.problem.v = SmoothFunction::constant(0.0);
    f.target_slope = target;
    f.tolerance = tol;
    return f;
  };
  return {make("y0=1", SmoothFunction::constant(1.0), 0.25, 0.05),
          make("y0=x", SmoothFunction::polynomial({0.0, 1.0}), 0.75, 0.07),
          make("y0=x^2", SmoothFunction::polynomial({0.0, 0.0, 1.0}), 1.25, 0.1)};
}

double approx_l2_at(const CompositeApprox& a, double t) {
  const auto s = a.slice(t);
  const double eps = a.eps();
  const double M = a.problem().M;
  std::vector<double> cuts{0.0, 1.0};
  const double xc = M * t;
  const double half = 40.0 * std::sqrt(eps * std::max(t, eps));
  for (double c : {xc - half, xc, xc + half, 1.0 - 60.0 * eps / M})
    if (c > 0.0 && c < 1.0) cuts.push_back(c);
  std::sort(cuts.begin(), cuts.end());
  double acc = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    if (cuts[i + 1] <= cuts[i]) continue;
    acc += simpson_fixed(
        [&](double x) {
          const double v = s.value(x);
          return v * v;
        },
        cuts[i], cuts[i + 1], 4000);
  }
  return std::sqrt(acc);
}

DecayReport run_decay_study(const DecayConfig& cfg) {
  if (cfg.eps.size() < 2) throw std::invalid_argument("decay study: need at least two values of eps");
  for (const auto& f : cfg.families) {
    if (!f.problem.v.is_zero()) throw std::invalid_argument("decay study: family '" + f.name + "' needs v == 0");
    f.problem.validate();
  }
  const auto t0 = Clock::now();
  const std::size_t nf = cfg.families.size();
  const std::size_t ne = cfg.eps.size();
  DecayReport report;
  report.config = cfg;
  report.families.resize(nf);
  for (std::size_t f = 0; f < nf; ++f) {
    report.families[f].family = cfg.families[f];
    report.families[f].records.resize(ne);
  }
  // Jobs: every (family, ε) pair plus one refined run per family.
  const std::size_t per_family = ne + 1;
  parallel_for(nf * per_family, cfg.threads, [&](std::size_t job) {
    const std::size_t f = job / per_family;
    const std::size_t k = job % per_family;
    const ProblemData& p = cfg.families[f].problem;
    const double T = 1.0 / p.M;
    DecayFamilyReport& fr = report.families[f];
    if (k == ne) {
      const double eps = cfg.eps.front();
      fr.gate.eps = eps;
      fr.gate.fine = decay_at_final(p, eps, layer_grid(eps, p.M, T, 2.0 * cfg.nx_rule));
      return;
    }
    // Smallest ε (largest grid) first.
    const std::size_t i = ne - 1 - k;
    const double eps = cfg.eps[i];
    DecayRecord& rec = fr.records[i];
    rec.eps = eps;
    rec.norm = decay_at_final(p, eps, layer_grid(eps, p.M, T, cfg.nx_rule));
    rec.approx_norm = approx_l2_at(CompositeApprox(p, eps, Variant::corrected), T);
  });
  for (auto& fr : report.families) {
    std::vector<double> n;
    for (const auto& r : fr.records) n.push_back(r.norm);
    fr.fit = fit_log_log(cfg.eps, n);
    fr.gate.coarse = fr.records.front().norm;
    fr.gate.relative_change = std::abs(fr.gate.coarse - fr.gate.fine) / std::max(fr.gate.fine, 1e-300);
    fr.gate.passed = fr.gate.relative_change < cfg.gate_tolerance;
    const DecayFamily& fam = fr.family;
    fr.verdict = judge_slope("decay slope " + fam.name, fr.fit, fam.target_slope,
                             fam.target_slope - fam.tolerance, fam.target_slope + fam.tolerance,
                             fr.gate.passed);
  }
  report.seconds = seconds_since(t0);
  return report;
}

// ---------------------------------------------------------------------------

FieldOutput emit_fields(const ProblemData& p, double eps, Variant variant,
                        const std::vector<double>& times, const std::filesystem::path& dir,
                        std::size_t nx_slice, std::size_t nx_surface, std::size_t nt_surface) {
  if (nx_slice < 2 || nx_surface < 2 || nt_surface < 1)
    throw std::invalid_argument("emit_fields: grid too small");
  const CompositeApprox a(p, eps, variant);
  FieldOutput out;
  std::filesystem::create_directories(dir);
  for (std::size_t k = 0; k < times.size(); ++k) {
    const auto file = dir / ("slice_t" + std::to_string(k) + ".csv");
    std::ofstream os = open_output(file);
    os << "x,t,value\n";
    const auto s = a.slice(times[k]);
    for (std::size_t i = 0; i <= nx_slice; ++i) {
      const double x = static_cast<double>(i) / static_cast<double>(nx_slice);
      os << fmt_double(x) << ',' << fmt_double(times[k]) << ',' << fmt_double(s.value(x)) << '\n';
    }
    out.slices.push_back(file);
  }
  out.surface = dir / "surface.csv";
  std::ofstream os = open_output(out.surface);
  os << "x,t,value\n";
  const double t_end = 1.2 / p.M;
  for (std::size_t j = 0; j <= nt_surface; ++j) {
    const double t = t_end * static_cast<double>(j) / static_cast<double>(nt_surface);
    const auto s = a.slice(t);
    for (std::size_t i = 0; i <= nx_surface; ++i) {
      const double x = static_cast<double>(i) / static_cast<double>(nx_surface);
      os << fmt_double(x) << ',' << fmt_double(t) << ',' << fmt_double(s.value(x)) << '\n';
    }
  }
  return out;
}

Crossings level_crossings(const std::vector<double>& x, const std::vector<double>& y, double level) {
  if (x.size() != y.size()) throw std::invalid_argument("level_crossings: size mismatch");
  Crossings c;
  for (std::size_t i = 0; i + 1 < x.size(); ++i) {
    const double a = y[i] - level;
    const double b = y[i + 1] - level;
    if ((a < 0.0) == (b < 0.0)) continue;
    const double xc = x[i] + (x[i + 1] - x[i]) * a / (a - b);
    (b > a ? c.up : c.down).push_back(xc);
  }
  return c;
}

double transition_width(const std::vector<double>& x, const std::vector<double>& y, double x_hint) {
  auto nearest = [](const std::vector<double>& v, double target, bool below) {
    double best = std::numeric_limits<double>::quiet_NaN();
    for (double c : v) {
      if (below ? c > target : c < target) continue;
      if (std::isnan(best) || std::abs(c - target) < std::abs(best - target)) best = c;
    }
    return best;
  };
  const Crossings mid = level_crossings(x, y, 0.5);
  double x50 = std::numeric_limits<double>::quiet_NaN();
  for (double c : mid.up)
    if (std::isnan(x50) || std::abs(c - x_hint) < std::abs(x50 - x_hint)) x50 = c;
  if (std::isnan(x50)) return x50;
  const double x10 = nearest(level_crossings(x, y, 0.1).up, x50, true);
  const double x90 = nearest(level_crossings(x, y, 0.9).up, x50, false);
  return x90 - x10;
}

// ---------------------------------------------------------------------------

void write_rates_csv(const VariantRates& rates, const std::filesystem::path& file) {
  std::ofstream os = open_output(file);
  os << "epsilon,norm_linf_l2,norm_l2_h1,masked\n";
  for (const auto& n : rates.norms) {
    os << fmt_double(n.eps) << ',' << fmt_double(n.linf_l2_masked) << ',' << fmt_double(n.l2_h1) << ",1\n";
    os << fmt_double(n.eps) << ',' << fmt_double(n.linf_l2) << ',' << fmt_double(n.l2_h1) << ",0\n";
  }
}

void write_trace_csv(const TraceReport& report, const std::filesystem::path& file) {
  std::ofstream os = open_output(file);
  os << "epsilon,z_l1,z_t_l1,z_at_0,residual_l1_l2\n";
  for (const auto& r : report.records)
    os << fmt_double(r.eps) << ',' << fmt_double(r.z_l1) << ',' << fmt_double(r.z_t_l1) << ','
       << fmt_double(r.z_at_0) << ',' << fmt_double(r.residual_l1_l2) << '\n';
}

void write_decay_csv(const DecayReport& report, const std::filesystem::path& file) {
  std::ofstream os = open_output(file);
  os << "family,epsilon,norm,approx_norm\n";
  for (const auto& f : report.families)
    for (const auto& r : f.records)
      os << f.family.name << ',' << fmt_double(r.eps) << ',' << fmt_double(r.norm) << ','
         << fmt_double(r.approx_norm) << '\n';
}

std::string format_verdicts(const std::vector<SlopeVerdict>& verdicts) {
  std::string out;
  char buf[256];
  for (const auto& v : verdicts) {
    out += "[" + v.name + "]\n";
    std::snprintf(buf, sizeof buf, "  target_slope: %.4g\n", v.target_slope);
    out += buf;
    if (std::isfinite(v.upper))
      std::snprintf(buf, sizeof buf, "  accepted: [%.4g, %.4g]\n", v.lower, v.upper);
    else
      std::snprintf(buf, sizeof buf, "  accepted: >= %.4g\n", v.lower);
    out += buf;
    std::snprintf(buf, sizeof buf, "  fitted_slope: %.4f\n  fit_residual: %.3e\n", v.fitted_slope,
                  v.fit_residual);
    out += buf;
    out += std::string("  grid_gate: ") + (v.gate_passed ? "pass" : "fail") + "\n";
    out += std::string("  verdict: ") + (v.passed ? "pass" : "fail") + "\n";
  }
  return out;
}

std::string rate_report_json(const RateReport& r) {
  nlohmann::json j;
  const SweepConfig& c = r.config;
  j["scenario"] = c.scenario_name;
  j["problem"] = problem_json(c.problem);
  j["config"] = {{"eps", c.eps},
                 {"variant", std::string(to_string(c.variant))},
                 {"nx_rule", c.nx_rule},
                 {"mask", c.mask},
                 {"mask_factor", c.mask_factor},
                 {"grid_gate", c.grid_gate},
                 {"gate_metric", std::string(to_string(c.gate_metric))},
                 {"gate_tolerance", c.gate_tolerance},
                 {"time_samples", c.time_samples}};
  j["hypotheses_hold"] = r.hypotheses_hold;
  j["nx_finest"] = r.nx_finest;
  j["nt_finest"] = r.nt_finest;
  j["peclet_warning"] = r.peclet_warning;
  j["seconds"] = r.seconds;
  nlohmann::json vars = nlohmann::json::array();
  for (const auto& v : r.variants) {
    nlohmann::json norms = nlohmann::json::array();
    for (const auto& n : v.norms)
      norms.push_back({{"eps", n.eps},
                       {"linf_l2", n.linf_l2},
                       {"linf_l2_masked", n.linf_l2_masked},
                       {"l2_h1", n.l2_h1},
                       {"t_min", n.t_min}});
    vars.push_back({{"variant", std::string(to_string(v.variant))},
                    {"norms", norms},
                    {"fit_linf_l2", fit_json(v.fit_linf_l2)},
                    {"fit_linf_l2_masked", fit_json(v.fit_linf_l2_masked)},
                    {"fit_l2_h1", fit_json(v.fit_l2_h1)}});
  }
  j["variants"] = vars;
  nlohmann::json gate = nlohmann::json::array();
  for (const auto& g : r.gate)
    gate.push_back({{"eps", g.eps},
                    {"coarse", g.coarse},
                    {"fine", g.fine},
                    {"relative_change", g.relative_change},
                    {"passed", g.passed}});
  j["grid_gate"] = {{"passed", r.gate_passed}, {"runs", gate}};
  j["verdicts"] = verdicts_json(r.verdicts);
  return j.dump(2);
}

std::string trace_report_json(const TraceReport& r) {
  nlohmann::json j;
  j["scenario"] = r.scenario_name;
  j["problem"] = problem_json(r.problem);
  j["variant"] = std::string(to_string(r.variant));
  nlohmann::json recs = nlohmann::json::array();
  for (const auto& x : r.records)
    recs.push_back({{"eps", x.eps},
                    {"z_l1", x.z_l1},
                    {"z_t_l1", x.z_t_l1},
                    {"z_at_0", x.z_at_0},
                    {"residual_l1_l2", x.residual_l1_l2}});
  j["records"] = recs;
  j["fit_z_l1"] = fit_json(r.fit_z);
  j["fit_z_t_l1"] = fit_json(r.fit_z_t);
  j["fit_residual"] = fit_json(r.fit_residual);
  j["verdicts"] = verdicts_json(r.verdicts);
  j["seconds"] = r.seconds;
  return j.dump(2);
}

std::string decay_report_json(const DecayReport& r) {
  nlohmann::json j;
  j["config"] = {{"eps", r.config.eps}, {"nx_rule", r.config.nx_rule}, {"gate_tolerance", r.config.gate_tolerance}};
  nlohmann::json fams = nlohmann::json::array();
  std::vector<SlopeVerdict> vs;
  for (const auto& f : r.families) {
    nlohmann::json recs = nlohmann::json::array();
    for (const auto& x : f.records)
      recs.push_back({{"eps", x.eps}, {"norm", x.norm}, {"approx_norm", x.approx_norm}});
    fams.push_back({{"name", f.family.name},
                    {"problem", problem_json(f.family.problem)},
                    {"records", recs},
                    {"fit", fit_json(f.fit)},
                    {"grid_gate",
                     {{"eps", f.gate.eps},
                      {"coarse", f.gate.coarse},
                      {"fine", f.gate.fine},
                      {"relative_change", f.gate.relative_change},
                      {"passed", f.gate.passed}}}});
    vs.push_back(f.verdict);
  }
  j["families"] = fams;
  j["verdicts"] = verdicts_json(vs);
  j["seconds"] = r.seconds;
  return j.dump(2);
}

}  // namespace lad
