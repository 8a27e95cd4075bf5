#include "layered_advect/special_functions.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace lad {

namespace {

// Beyond this argument the continued fraction for erfcx converges in a few
// dozen terms; below it e^{y²}·erfc(y) is evaluated directly.
constexpr double cf_threshold = 4.0;

// K(y) = (1/2)/(y + 1/(y + (3/2)/(y + 2/(y + ...)))), the tail of the Laplace
// continued fraction √π·erfcx(y) = 1/(y + K(y)). Modified Lentz evaluation.
double laplace_tail(double y) noexcept {
  constexpr double tiny = 1e-300;
  double f = y;  // b0 of the tail is y (after the leading partial numerator 1/2)
  double C = f;
  double D = 0.0;
  for (int n = 2; n < 2000; ++n) {
    const double a = 0.5 * static_cast<double>(n);
    D = y + a * D;
    if (D == 0.0) D = tiny;
    C = y + a / C;
    if (C == 0.0) C = tiny;
    D = 1.0 / D;
    const double delta = C * D;
    f *= delta;
    if (std::abs(delta - 1.0) < 1e-16) break;
  }
  return 0.5 / f;
}

}  // namespace

double erf(double y) noexcept { return std::erf(y); }

double erfc(double y) noexcept { return std::erfc(y); }

double exp_of_square(double y) noexcept {
  const double hi = y * y;
  const double lo = std::fma(y, y, -hi);
  return std::exp(hi) * (1.0 + lo);
}

double exp_of_minus_square(double y) noexcept {
  const double hi = y * y;
  const double lo = std::fma(y, y, -hi);
  return std::exp(-hi) * (1.0 - lo);
}

double erfcx(double y) noexcept {
  if (std::isnan(y)) return y;
  if (y < 0.0) {
    if (y < -26.7) return std::numeric_limits<double>::infinity();
    return 2.0 * exp_of_square(y) - erfcx(-y);
  }
  if (y < cf_threshold) return exp_of_square(y) * std::erfc(y);
  if (y > 1e8) {
    // Two-term asymptotic series; the next term is below 1e-32 relative.
    const double r = 1.0 / (y * y);
    return inv_sqrt_pi / y * (1.0 - 0.5 * r);
  }
  return inv_sqrt_pi / (y + laplace_tail(y));
}

double ierfcx(double y) noexcept {
  if (std::isnan(y)) return y;
  if (y < cf_threshold) return inv_sqrt_pi - y * erfcx(y);
  if (y > 1e8) {
    const double r = 1.0 / (y * y);
    return inv_sqrt_pi * (0.5 * r) * (1.0 - 1.5 * r);
  }
  // 1 − y/(y + K) = K/(y + K): no cancellation.
  const double K = laplace_tail(y);
  return inv_sqrt_pi * K / (y + K);
}

double ierfc(double y) noexcept {
  if (y < 0.0) {
    // Both terms are positive for y < 0, so the direct formula is exact enough.
    return exp_of_minus_square(y) * inv_sqrt_pi - y * std::erfc(y);
  }
  if (y > 27.3) return 0.0;  // e^{−y²} underflows
  return exp_of_minus_square(y) * ierfcx(y);
}

double heat_kernel(double w, double t) {
  if (!(t > 0.0)) throw std::domain_error("heat_kernel: t must be positive");
  return std::exp(-w * w / (4.0 * t)) / std::sqrt(4.0 * pi * t);
}

}  // namespace lad
