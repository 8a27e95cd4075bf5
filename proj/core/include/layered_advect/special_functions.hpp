#pragma once

namespace lad {

inline constexpr double pi = 3.141592653589793238462643383279502884;
inline constexpr double inv_sqrt_pi = 0.564189583547756286948079451560772586;

/// Error function with the standard 2/√π normalisation, so erf(∞) = 1.
[[nodiscard]] double erf(double y) noexcept;

/// Complementary error function 1 − erf(y), accurate without cancellation for y > 0.
[[nodiscard]] double erfc(double y) noexcept;

/// Scaled complementary error function e^{y²}·erfc(y).
///
/// Finite for every y ≥ 0 (≈ 1/(√π y) for large y); overflows to +∞ only for
/// y below about −26.6, where e^{y²} itself is not representable.
[[nodiscard]] double erfcx(double y) noexcept;

/// First repeated integral of erfc: ∫_y^∞ erfc(s) ds = e^{−y²}/√π − y·erfc(y).
[[nodiscard]] double ierfc(double y) noexcept;

/// Scaled repeated integral e^{y²}·ierfc(y) = 1/√π − y·erfcx(y), evaluated
/// without the cancellation of the direct formula for large y.
[[nodiscard]] double ierfcx(double y) noexcept;

/// Heat kernel (4πt)^{−1/2} e^{−w²/(4t)} for the equation W_t = W_ww.
/// Throws std::domain_error for t ≤ 0.
[[nodiscard]] double heat_kernel(double w, double t);

/// e^{x} for x = y² with the rounding error of y² compensated, so the
/// relative error stays at a few ulps even for y² of several hundred.
[[nodiscard]] double exp_of_square(double y) noexcept;

/// e^{−y²} with the same compensation.
[[nodiscard]] double exp_of_minus_square(double y) noexcept;

}  // namespace lad
