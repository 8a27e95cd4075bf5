#pragma once

#include <cstddef>
#include <functional>

namespace lad {

struct QuadratureResult {
  double value = 0.0;
  std::size_t panels = 0;
  bool converged = false;
};

/// Composite Simpson rule on [a, b] starting from `min_panels` panels and
/// doubling until the relative change is at most `rtol` (absolute floor
/// `atol`) or `max_panels` is reached. Panel counts are kept even.
[[nodiscard]] QuadratureResult simpson(const std::function<double(double)>& f, double a, double b,
                                       std::size_t min_panels = 4096, double rtol = 1e-8,
                                       double atol = 1e-300, std::size_t max_panels = 1u << 22);

/// ∫_a^b |f| by `simpson` on the pieces between the sign changes of f.
/// Sign changes are located on `scan` equal subintervals and refined by
/// bisection, so the integrand is smooth on every piece.
[[nodiscard]] QuadratureResult simpson_abs(const std::function<double(double)>& f, double a, double b,
                                           std::size_t scan = 4096, std::size_t min_panels = 4096,
                                           double rtol = 1e-8, double atol = 1e-300);

/// Composite Simpson with a fixed (even) number of panels.
[[nodiscard]] double simpson_fixed(const std::function<double(double)>& f, double a, double b,
                                   std::size_t panels);

/// Least-squares line through (x_i, y_i).
struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double residual = 0.0;     ///< root-mean-square residual
  double slope_stderr = 0.0; ///< standard error of the slope (0 for two points)
};

[[nodiscard]] LineFit fit_line(const double* x, const double* y, std::size_t n);

}  // namespace lad
