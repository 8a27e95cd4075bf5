#pragma once

// Independent reference values for the unit tests. Nothing here calls into
// the library: special functions come from Boost.Math in 50-digit
// arithmetic, layer terms from numerical heat-kernel convolution, and
// derivatives from finite differences.

#include <cmath>
#include <functional>
#include <limits>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/erf.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

namespace oracle {

using mp = boost::multiprecision::cpp_bin_float_50;

inline constexpr double pi = 3.141592653589793238462643383279502884;

inline double erf(double y) { return static_cast<double>(boost::math::erf(mp(y))); }
inline double erfc(double y) { return static_cast<double>(boost::math::erfc(mp(y))); }
inline double erfcx(double y) {
  const mp x(y);
  return static_cast<double>(exp(x * x) * boost::math::erfc(x));
}
/// ∫_y^∞ erfc(s) ds = e^{−y²}/√π − y·erfc(y), in 50 digits.
inline double ierfc(double y) {
  const mp x(y);
  return static_cast<double>(exp(-x * x) / sqrt(boost::math::constants::pi<mp>()) - x * boost::math::erfc(x));
}
/// e^{a}·erfc(b) without intermediate overflow or underflow.
inline double exp_times_erfc(double a, double b) {
  return static_cast<double>(exp(mp(a)) * boost::math::erfc(mp(b)));
}

/// Adaptive Gauss–Kronrod on a possibly infinite interval.
inline double integrate(const std::function<double(double)>& f, double a, double b) {
  return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, a, b, 20, 1e-14);
}

/// Solution at (w, t) of W_t = W_ww on the line with initial data g⁺(s) for
/// s > 0 and g⁻(s) for s < 0, by convolution with the heat kernel:
///   W(w,t) = π^{−1/2} ∫ g(w − 2√t·u) e^{−u²} du.
inline double heat_convolution(const std::function<double(double)>& g_plus,
                               const std::function<double(double)>& g_minus, double w, double t) {
  const double r = 2.0 * std::sqrt(t);
  const double u_star = w / r;  // s = 0
  const double inf = std::numeric_limits<double>::infinity();
  const double left = integrate([&](double u) { return g_plus(w - r * u) * std::exp(-u * u); }, -inf, u_star);
  const double right = integrate([&](double u) { return g_minus(w - r * u) * std::exp(-u * u); }, u_star, inf);
  return (left + right) / std::sqrt(pi);
}

/// Fourth-order central difference of f at x with step h.
inline double d1(const std::function<double(double)>& f, double x, double h) {
  return (f(x - 2 * h) - 8 * f(x - h) + 8 * f(x + h) - f(x + 2 * h)) / (12 * h);
}
/// Fourth-order central second difference.
inline double d2(const std::function<double(double)>& f, double x, double h) {
  return (-f(x - 2 * h) + 16 * f(x - h) - 30 * f(x) + 16 * f(x + h) - f(x + 2 * h)) / (12 * h * h);
}

}  // namespace oracle
