#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "layered_advect/composite.hpp"
#include "layered_advect/quadrature.hpp"
#include "layered_advect/reference_solver.hpp"
#include "layered_advect/scenario.hpp"

namespace lad {

/// Which approximations a rate study compares against the solver.
enum class VariantChoice { corrected, plain, both };

[[nodiscard]] std::string_view to_string(VariantChoice v) noexcept;
/// Parses "corrected", "plain" or "both"; throws std::invalid_argument otherwise.
[[nodiscard]] VariantChoice parse_variant_choice(std::string_view s);
[[nodiscard]] std::vector<Variant> variants_of(VariantChoice v);

/// Error norm on which the grid-independence gate is evaluated.
enum class GateMetric { linf_l2, l2_h1 };
[[nodiscard]] std::string_view to_string(GateMetric g) noexcept;

/// Start of the measured window: t_min = K·(ε/M²)·|ln ε|. The initial-layer
/// error decays like √ε·e^{−M²t/(4ε)}, so K = 4 is where it falls to ε^{3/2}.
[[nodiscard]] double transient_mask(double eps, double M, double factor);

/// Number of worker threads: LAYERED_ADVECT_THREADS if set and positive,
/// otherwise the hardware concurrency (at least 1).
[[nodiscard]] unsigned worker_threads();

struct SweepConfig {
  std::string scenario_name = "scenario";
  ProblemData problem;
  std::vector<double> eps{0.04, 0.02, 0.01, 0.005};
  VariantChoice variant = VariantChoice::both;
  double nx_rule = 128.0;       ///< m in dx = ε/m (dt = dx/M)
  bool mask = true;             ///< apply the transient mask to the L∞(L²) norm
  double mask_factor = 4.0;     ///< K in t_min = K·(ε/M²)·|ln ε|
  bool grid_gate = true;        ///< rerun at dx/2, dt/2 and compare
  GateMetric gate_metric = GateMetric::linf_l2;
  double gate_tolerance = 0.05; ///< maximal relative change on refinement
  std::size_t time_samples = 600;  ///< approximately this many rows enter the norms
  unsigned threads = 0;         ///< 0: worker_threads()

  /// Throws std::invalid_argument unless ε is strictly decreasing in (0,1),
  /// has at least two entries, and the grid rule is positive.
  void validate() const;
};

/// Error norms of one approximation against the solver at one ε.
struct NormRecord {
  double eps = 0.0;
  double linf_l2 = 0.0;         ///< max over sampled t of ‖y − P‖_{L²}
  double linf_l2_masked = 0.0;  ///< same, over t ≥ t_min
  double l2_h1 = 0.0;           ///< ‖(y − P)_x‖_{L²(Q_T)}
  double t_min = 0.0;
};

struct GateRecord {
  double eps = 0.0;
  double coarse = 0.0;  ///< gate metric at dx = ε/m
  double fine = 0.0;    ///< gate metric at dx = ε/(2m)
  double relative_change = 0.0;
  bool passed = false;
};

struct VariantRates {
  Variant variant = Variant::corrected;
  std::vector<NormRecord> norms;
  LineFit fit_linf_l2;         ///< unmasked
  LineFit fit_linf_l2_masked;
  LineFit fit_l2_h1;
};

/// Pass/fail of a fitted slope against a target, lower ≤ slope ≤ upper.
struct SlopeVerdict {
  std::string name;
  double target_slope = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  double fitted_slope = 0.0;
  double fit_residual = 0.0;
  bool gate_passed = true;
  bool passed = false;
};

[[nodiscard]] SlopeVerdict judge_slope(std::string name, const LineFit& fit, double target,
                                       double lower, double upper, bool gate_passed);

struct RateReport {
  SweepConfig config;
  std::vector<VariantRates> variants;
  std::vector<GateRecord> gate;
  bool gate_passed = true;
  bool hypotheses_hold = true;  ///< y0(1) = y0'(1) = 0 (needed for the L²(H¹) rate)
  std::size_t nx_finest = 0;
  std::size_t nt_finest = 0;
  bool peclet_warning = false;
  double seconds = 0.0;
  std::vector<SlopeVerdict> verdicts;

  [[nodiscard]] const VariantRates* find(Variant v) const;
};

/// Solver-vs-approximation sweep. For every ε the solver runs on the grid
/// dx = ε/m (and, with the gate enabled, again on dx = ε/(2m)); the
/// approximations are sampled on the same nodes. Reported norms come from the
/// finest grid run. Slopes are least-squares fits of log(norm) on log ε.
[[nodiscard]] RateReport run_rate_study(const SweepConfig& cfg);

/// Adds the standard verdicts for a rate report: corrected L∞(L²) (masked)
/// slope ≥ 1.35, plain slope 0.5 ± 0.15 and their separation ≥ 0.7 when both
/// variants ran, and the L²(H¹) slope ≥ 0.85 when the hypotheses hold.
void add_default_rate_verdicts(RateReport& report);

struct TraceRecord {
  double eps = 0.0;
  double z_l1 = 0.0;
  double z_t_l1 = 0.0;
  double z_at_0 = 0.0;
  double residual_l1_l2 = 0.0;
};

struct TraceReport {
  std::string scenario_name;
  ProblemData problem;
  Variant variant = Variant::corrected;
  std::vector<TraceRecord> records;
  LineFit fit_z, fit_z_t, fit_residual;
  std::vector<SlopeVerdict> verdicts;
  double seconds = 0.0;
};

/// Solver-free sweep: L¹ norms of the inflow trace error and its time
/// derivative, and ‖L_ε P‖_{L¹(L²)}, all by quadrature of closed forms.
[[nodiscard]] TraceReport run_trace_study(const std::string& scenario_name, const ProblemData& p,
                                          const std::vector<double>& eps,
                                          Variant variant = Variant::corrected, unsigned threads = 0);

struct DecayFamily {
  std::string name;
  ProblemData problem;  ///< v ≡ 0
  double target_slope = 0.0;
  double tolerance = 0.0;
};

/// The three families isolating y0(0), y0'(0) and y0''(0): y0 = 1, x, x²,
/// v ≡ 0, with targets 1/4 ± 0.05, 3/4 ± 0.07 and 5/4 ± 0.1.
[[nodiscard]] std::vector<DecayFamily> default_decay_families(double M = 1.0);

struct DecayRecord {
  double eps = 0.0;
  double norm = 0.0;          ///< solver ‖y(·,1/M)‖_{L²}
  double approx_norm = 0.0;   ///< ‖P(·,1/M)‖_{L²} of the corrected approximation
};

struct DecayFamilyReport {
  DecayFamily family;
  std::vector<DecayRecord> records;
  LineFit fit;
  GateRecord gate;  ///< refinement check at the largest ε
  SlopeVerdict verdict;
};

struct DecayConfig {
  std::vector<DecayFamily> families = default_decay_families();
  std::vector<double> eps{1.25e-3, 6.25e-4, 3.125e-4, 1.5625e-4};
  double nx_rule = 8.0;
  double gate_tolerance = 0.05;
  unsigned threads = 0;
};

struct DecayReport {
  DecayConfig config;
  std::vector<DecayFamilyReport> families;
  double seconds = 0.0;
};

/// ‖y(·,1/M)‖ sweeps for each family; the gate reruns the largest ε on the
/// refined grid (the grid is ε-relative, so one check covers the sweep).
[[nodiscard]] DecayReport run_decay_study(const DecayConfig& cfg);

/// ‖P(·,t)‖_{L²(0,1)} of an approximation by composite Simpson, with break
/// points at the characteristic and at the boundary layer.
[[nodiscard]] double approx_l2_at(const CompositeApprox& a, double t);

struct FieldOutput {
  std::vector<std::filesystem::path> slices;
  std::filesystem::path surface;
};

/// Writes `slice_t<k>.csv` for each requested time (nx_slice+1 points) and
/// `surface.csv` on an (nx_surface+1)×(nt_surface+1) grid over
/// [0,1]×[0, 1.2/M]; CSV header `x,t,value`, 17 significant digits.
FieldOutput emit_fields(const ProblemData& p, double eps, Variant variant,
                        const std::vector<double>& times, const std::filesystem::path& dir,
                        std::size_t nx_slice = 2000, std::size_t nx_surface = 200,
                        std::size_t nt_surface = 120);

/// Sign changes of a sampled curve through `level`: x-positions (linear
/// interpolation) where the curve crosses upward and downward.
struct Crossings {
  std::vector<double> up;
  std::vector<double> down;
};
[[nodiscard]] Crossings level_crossings(const std::vector<double>& x, const std::vector<double>& y,
                                        double level);

/// Width of the upward transition around `x_hint`: distance between the
/// nearest 10% and 90% crossings (linear interpolation).
[[nodiscard]] double transition_width(const std::vector<double>& x, const std::vector<double>& y,
                                      double x_hint);

// Serialisation ---------------------------------------------------------------

/// `epsilon,norm_linf_l2,norm_l2_h1,masked`: two rows per ε (masked = 1, 0).
void write_rates_csv(const VariantRates& rates, const std::filesystem::path& file);
void write_trace_csv(const TraceReport& report, const std::filesystem::path& file);
void write_decay_csv(const DecayReport& report, const std::filesystem::path& file);

/// Structured text: one block per verdict with target_slope, fitted_slope,
/// fit_residual and verdict, plus the gate result.
[[nodiscard]] std::string format_verdicts(const std::vector<SlopeVerdict>& verdicts);

[[nodiscard]] std::string rate_report_json(const RateReport& r);
[[nodiscard]] std::string trace_report_json(const TraceReport& r);
[[nodiscard]] std::string decay_report_json(const DecayReport& r);

}  // namespace lad
