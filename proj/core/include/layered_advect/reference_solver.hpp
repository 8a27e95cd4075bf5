#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "layered_advect/scenario.hpp"

namespace lad {

/// Optional right-hand side f(x, t) of y_t − ε y_xx + M y_x = f.
using SourceTerm = std::function<double(double x, double t)>;

/// Uniform space-time grid on [0,1]×[0,T].
struct GridSpec {
  std::size_t nx = 0;  ///< number of spatial cells; dx = 1/nx
  std::size_t nt = 0;  ///< number of time steps; dt = T/nt
  double T = 0.0;

  [[nodiscard]] double dx() const noexcept { return 1.0 / static_cast<double>(nx); }
  [[nodiscard]] double dt() const noexcept { return T / static_cast<double>(nt); }
  [[nodiscard]] double x(std::size_t i) const noexcept { return static_cast<double>(i) * dx(); }
  [[nodiscard]] double t(std::size_t n) const noexcept {
    return n == nt ? T : static_cast<double>(n) * dt();
  }
};

/// Layer-resolving grid: dx ≤ ε/m and dt ≤ dx/M, with nt chosen so that
/// t = 1/M falls exactly on a step whenever T·M is an integer multiple of 1/k
/// for small k (the step count is rounded up to a multiple of `time_multiple`).
[[nodiscard]] GridSpec layer_grid(double eps, double M, double T, double m,
                                  std::size_t time_multiple = 60);

/// Node-centred solution values, (nt+1) rows of (nx+1) values.
struct FieldGrid {
  GridSpec grid;
  std::vector<double> values;
  bool peclet_warning = false;  ///< cell Péclet M·dx/(2ε) > 1

  [[nodiscard]] std::size_t nx() const noexcept { return grid.nx; }
  [[nodiscard]] std::size_t nt() const noexcept { return grid.nt; }
  [[nodiscard]] double dx() const noexcept { return grid.dx(); }
  [[nodiscard]] double dt() const noexcept { return grid.dt(); }
  [[nodiscard]] double& at(std::size_t i, std::size_t n) { return values[n * (grid.nx + 1) + i]; }
  [[nodiscard]] double at(std::size_t i, std::size_t n) const {
    return values[n * (grid.nx + 1) + i];
  }
  [[nodiscard]] std::span<const double> row(std::size_t n) const {
    return {values.data() + n * (grid.nx + 1), grid.nx + 1};
  }
};

/// Called after every completed time step (and once for the initial row, n = 0).
using RowCallback = std::function<void(std::size_t n, double t, std::span<const double> row)>;

struct MarchInfo {
  bool peclet_warning = false;
  double peclet = 0.0;  ///< M·dx/(2ε)
};

/// Crank–Nicolson in time with centred second-order differences for y_xx and
/// y_x; Dirichlet values imposed strongly at both ends. The first two steps are
/// replaced by four backward-Euler half steps (Rannacher start-up), which damps
/// the non-smooth modes of incompatible initial data that plain Crank–Nicolson
/// would leave oscillating. Throws std::invalid_argument unless nx, nt ≥ 8 and
/// ε > 0.
MarchInfo march(const ProblemData& p, double eps, const GridSpec& grid, const RowCallback& on_row,
                const SourceTerm& source = {});

/// Runs `march` and stores every row.
[[nodiscard]] FieldGrid solve(const ProblemData& p, double eps, std::size_t nx, std::size_t nt,
                              const SourceTerm& source = {});

struct NormSet {
  double linf_l2 = 0.0;     ///< max over stored steps of ‖·‖_{L²(0,1)}
  double l2_h1 = 0.0;       ///< ‖∂_x ·‖_{L²(Q_T)}
  double l2_at_time = 0.0;  ///< ‖·(t*)‖_{L²(0,1)} at the stored step nearest t*
};

/// ‖row‖_{L²(0,1)} by the composite trapezoid rule on a uniform grid.
[[nodiscard]] double l2_norm(std::span<const double> row, double dx);

/// Fourth-order finite-difference ∂_x of a uniformly sampled row (five-point
/// centred stencil inside, five-point one-sided stencils at the two ends).
/// Requires at least five samples.
void differentiate(std::span<const double> row, double dx, std::span<double> out);

/// Norms of a stored difference field: L² by trapezoid in x, L∞ over steps,
/// H¹ seminorm by centred differences in x and trapezoid in t.
[[nodiscard]] NormSet norms(const FieldGrid& diff, double t_star);

/// Collects per-time spatial norms of an error and reduces them to
/// L∞(t ≥ t_min; L²) and L²(0,T; H¹) with the trapezoid rule over the samples.
class ErrorAccumulator {
 public:
  explicit ErrorAccumulator(double t_min = 0.0) : t_min_(t_min) {}

  /// Adds one time sample (times must be added in increasing order).
  void add(double t, double l2, double h1_seminorm);

  [[nodiscard]] double linf_l2() const noexcept { return linf_all_; }
  [[nodiscard]] double linf_l2_masked() const noexcept { return linf_masked_; }
  [[nodiscard]] double l2_h1() const;
  [[nodiscard]] std::size_t samples() const noexcept { return t_.size(); }

 private:
  double t_min_;
  double linf_all_ = 0.0;
  double linf_masked_ = 0.0;
  std::vector<double> t_, h1sq_;
};

/// ‖y(·, 1/M)‖_{L²(0,1)} for v ≡ 0 data, from the stored step nearest to 1/M.
/// Throws std::invalid_argument unless v ≡ 0 and T ≥ 1/M.
[[nodiscard]] double decay_at_final(const ProblemData& p, double eps, const GridSpec& grid);

}  // namespace lad
