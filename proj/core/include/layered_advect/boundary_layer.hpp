#pragma once

#include <array>
#include <optional>

#include "layered_advect/internal_layer.hpp"
#include "layered_advect/outer_expansion.hpp"
#include "layered_advect/scenario.hpp"

namespace lad {

/// A boundary-layer coefficient as a function of (τ, t), with both partials.
struct Coefficient {
  double value = 0.0;
  double d_tau = 0.0;
  double d_t = 0.0;

  /// d/dt along x = 1, where τ = (1/M − t)/√ε: ∂_t − ∂_τ/√ε.
  [[nodiscard]] double total_dt(double sqrt_eps) const noexcept { return d_t - d_tau / sqrt_eps; }
};

/// Coefficients of the four boundary-layer profiles at one (τ, t). Internal-
/// layer quantities are taken at w = Mτ; outer traces at x = 1.
///
///   C_0(z)   = C00
///   C_1/2(z) = C12 − S·z                       (S = W⁰_w, or W⁰_{ε,w})
///   C_1(z)   = A + B·z + C·z²/2                (C = W⁰_ww, or W⁰_{ε,ww})
///   C_3/2(z) = Ã + B̃·z + C̃·z²/2 + D̃·z³/6      (D̃ = −W⁰_www, or −W⁰_{ε,www})
///
/// and Y_{k/2}(z) = C_{k/2}(z) + e^{−Mz}·Q_{k/2}(z) with the mirrored polynomials
/// Q_0 = −C00, Q_1/2 = −C12 − S z, Q_1 = −A + B z − C z²/2,
/// Q_3/2 = −Ã + B̃ z − C̃ z²/2 + D̃ z³/6.
struct BoundaryCoefficients {
  Side side = Side::plus;  ///< side of x = 1 relative to the characteristic
  double tau = 0.0;
  double t = 0.0;
  Coefficient C00, C12, S;
  Coefficient A, B, C;
  Coefficient At, Bt, Ct, Dt;  ///< Ã, B̃, C̃, D̃

  /// Coefficients (ascending powers of z) of C_{k/2}(z), k ∈ {0,1,2,3}.
  [[nodiscard]] std::array<double, 4> matching(int k) const;
  /// Coefficients of Q_{k/2}(z).
  [[nodiscard]] std::array<double, 4> mirror(int k) const;
  /// ∂_τ and ∂_t of the same polynomials.
  [[nodiscard]] std::array<double, 4> matching_d_tau(int k) const;
  [[nodiscard]] std::array<double, 4> matching_d_t(int k) const;
  [[nodiscard]] std::array<double, 4> mirror_d_tau(int k) const;
  [[nodiscard]] std::array<double, 4> mirror_d_t(int k) const;
};

/// Boundary-layer builder for one problem, ε and variant.
/// `corrected` substitutes W⁰_ε for W⁰ wherever the corrected matching
/// coefficients prescribe it (C00, S, C, D̃); other coefficients are unchanged.
class BoundaryLayer {
 public:
  BoundaryLayer(const ProblemData& p, double eps, bool corrected);

  [[nodiscard]] const ProblemData& problem() const noexcept { return *p_; }
  [[nodiscard]] double eps() const noexcept { return eps_; }
  [[nodiscard]] bool corrected() const noexcept { return corrected_; }
  [[nodiscard]] const LayerContext& context() const noexcept { return ctx_; }

  /// Coefficients at (τ, t). The side defaults to the position of x = 1
  /// relative to the characteristic (minus when 1 ≤ Mt); it can be forced to
  /// evaluate one-sided limits at τ = 0.
  [[nodiscard]] BoundaryCoefficients coefficients(double tau, double t,
                                                  std::optional<Side> side = {}) const;

 private:
  const ProblemData* p_;
  double eps_;
  bool corrected_;
  LayerContext ctx_;
};

/// Evaluates Σ_i poly[i]·z^i.
[[nodiscard]] double eval_z(const std::array<double, 4>& poly, double z) noexcept;

/// Matching polynomial C_{k/2}(z, τ, t) (k ∈ {0,1,2,3}, i.e. order k/2).
/// Throws std::domain_error for other k. Requires t > 0.
[[nodiscard]] double match_coeffs(int k, double z, double tau, double t, const ProblemData& p,
                                  double eps, bool corrected);

/// Boundary-layer profile Y_{k/2}(z, τ, t) = C_{k/2}(z) + e^{−Mz}·Q_{k/2}(z).
/// Throws std::domain_error for z < 0 or k outside {0,1,2,3}.
[[nodiscard]] double Y_profile(int k, double z, double tau, double t, const ProblemData& p,
                               double eps, bool corrected);

/// Y_zz + M·Y_z − R for the profile of order k/2, where R is 0, −Y⁰_τ,
/// Y⁰_t − Y^{1/2}_τ, Y^{1/2}_t − Y¹_τ for k = 0, 1, 2, 3. All derivatives exact.
[[nodiscard]] double ode_residual(int k, double z, double tau, double t, const ProblemData& p,
                                  double eps, bool corrected);

/// Value of the profile polynomial pair (matching, mirror) and its z-derivatives.
struct ProfileJet {
  double value = 0.0;
  double dz = 0.0;
  double dzz = 0.0;
};
[[nodiscard]] ProfileJet profile_jet(const std::array<double, 4>& matching,
                                     const std::array<double, 4>& mirror, double M,
                                     double z) noexcept;

}  // namespace lad
