#pragma once

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "layered_advect/boundary_layer.hpp"
#include "layered_advect/internal_layer.hpp"
#include "layered_advect/scenario.hpp"

namespace lad {

/// `plain` uses W⁰ in the shock layer; `corrected` uses W⁰_ε = W⁰ + U⁰_ε, which
/// reproduces the inflow datum exactly.
enum class Variant { plain, corrected };

[[nodiscard]] std::string_view to_string(Variant v) noexcept;
/// Parses "plain" or "corrected"; throws std::invalid_argument otherwise.
[[nodiscard]] Variant parse_variant(std::string_view s);

/// L¹-in-time norms of the inflow trace error z(0,t) = P(0,t) − v(t).
struct TraceNorms {
  double z_l1 = 0.0;     ///< ‖z(0,·)‖_{L¹(0,T)}
  double z_t_l1 = 0.0;   ///< ‖∂_t z(0,·)‖_{L¹(0,T)}
  double z_at_0 = 0.0;   ///< closed-form limit z(0,0⁺)
};

/// Composite approximation P = Σ_{k=0}^{3} ε^{k/2}·P^{k/2} of the layered
/// solution, with P^{k/2} = p^{k/2} + e^{−Mz}·Q_{k/2}(z):
///   p^{k/2}  outer term plus internal-layer term minus their common part,
///   Q_{k/2}  the mirrored boundary-layer polynomial at x = 1.
class CompositeApprox {
 public:
  CompositeApprox(ProblemData p, double eps, Variant variant);
  // Slices and the boundary-layer evaluator refer back to this object.
  CompositeApprox(const CompositeApprox&) = delete;
  CompositeApprox& operator=(const CompositeApprox&) = delete;

  /// Everything that depends on t alone, precomputed for fast evaluation
  /// along one time row.
  class Slice {
   public:
    [[nodiscard]] double t() const noexcept { return t_; }
    [[nodiscard]] double value(double x) const;
    /// Analytic ∂_x.
    [[nodiscard]] double dx(double x) const;
    /// Value and ∂_x sharing the transcendental evaluations.
    void value_dx(double x, double& value, double& dx) const;

    /// p^{k/2}(x, t), k ∈ {0,1,2,3} (order k/2), unweighted.
    [[nodiscard]] double p_term(int k, double x) const;
    /// P^{k/2}(x, t), unweighted.
    [[nodiscard]] double P_term(int k, double x) const;

    /// L_ε P = P_t − ε P_xx + M P_x, assembled from the five closed-form groups:
    /// −ε²y¹_xx; and, multiplying e^{−Mz}, the order-ε polynomial
    /// −(y¹_t(1,t) + W¹_t − ∂_t y¹±) − (y⁰_xt(1,t) + W^{1/2}_wt)·z − W⁰_wwt·z²/2
    /// and the order-ε^{3/2} polynomial −Ã_t + B̃_t z − C̃_t z²/2 + D̃_t z³/6
    /// (total time derivatives along x = 1).
    [[nodiscard]] double residual(double x) const;

    [[nodiscard]] const BoundaryCoefficients& boundary() const noexcept { return bc_; }

   private:
    friend class CompositeApprox;
    const CompositeApprox* owner_ = nullptr;
    double t_ = 0.0;
    std::array<LayerForm, 4> forms_;
    LayerForm combined_, combined_dw_;
    BoundaryCoefficients bc_;
    std::array<double, 4> q_sum_{};     ///< Σ ε^{k/2} Q_{k/2}
    std::array<double, 4> q_sum_dz_{};  ///< its z-derivative
  };

  [[nodiscard]] Slice slice(double t) const;

  [[nodiscard]] const ProblemData& problem() const noexcept { return p_; }
  [[nodiscard]] double eps() const noexcept { return eps_; }
  [[nodiscard]] Variant variant() const noexcept { return variant_; }
  [[nodiscard]] const JumpConstants& jump() const noexcept { return ctx_.jc; }

  [[nodiscard]] double value(double x, double t) const { return slice(t).value(x); }
  [[nodiscard]] double dx(double x, double t) const { return slice(t).dx(x); }
  [[nodiscard]] double p_term(int k, double x, double t) const { return slice(t).p_term(k, x); }
  [[nodiscard]] double P_term(int k, double x, double t) const { return slice(t).P_term(k, x); }
  [[nodiscard]] double residual(double x, double t) const { return slice(t).residual(x); }

  /// z(0,t) = P(0,t) − v(t), including the e^{−M/ε} boundary-layer remainder.
  [[nodiscard]] double boundary_trace_z0(double t) const;
  /// ∂_t z(0,t), analytic.
  [[nodiscard]] double boundary_trace_z0_dt(double t) const;
  /// lim_{t→0⁺} z(0,t) = −(y0(1) + y0'(1))·e^{−M/ε}.
  [[nodiscard]] double z0_at_t0() const;
  /// L¹(0,T) norms of z(0,·) and ∂_t z(0,·) by composite Simpson in s = √t.
  [[nodiscard]] TraceNorms trace_l1_norms() const;

  /// ‖L_ε P‖_{L¹(0,T; L²(0,1))} by nested composite Simpson.
  [[nodiscard]] double residual_l1_l2() const;
  /// ‖L_ε P(·,t)‖_{L²(0,1)} at one time.
  [[nodiscard]] double residual_l2_at(double t) const;

 private:
  ProblemData p_;
  double eps_;
  double sqrt_eps_;
  Variant variant_;
  LayerContext ctx_;
  BoundaryLayer bl_;
};

/// Initial profile of the corner layer, lim_{t→0⁺} P(x,t) − y0(x):
/// −(y0(1) + ε·y0'(1)·z)·e^{−Mz} with z = (1−x)/ε.
[[nodiscard]] double theta_initial_profile(double x, double eps, const ProblemData& p);

/// Lifting f_ε(x) = (1−x)·e^{−Mx/ε}: f_ε(0) = 1, f_ε(1) = 0.
[[nodiscard]] double lifting_function(double x, double eps, double M);

/// One operator identity L_ε(f) = g checked at sample points.
struct IdentityResult {
  std::string name;
  double max_deviation = 0.0;  ///< max |L_ε f − g| / (1 + |f_t| + ε|f_xx| + M|f_x|)
  std::size_t samples = 0;
};

struct IdentityReport {
  std::vector<IdentityResult> identities;
  [[nodiscard]] double max_deviation() const noexcept;
};

/// Applies L_ε = ∂_t − ε∂_xx + M∂_x by exact forward-mode differentiation to
/// the layer terms (in x, t), e^{−Mz}, z^k e^{−Mz}, w^k and τ^k, and compares
/// with the closed-form right-hand sides, over a fixed deterministic sample.
[[nodiscard]] IdentityReport operator_identities_check(double M = 1.0,
                                                       const std::vector<double>& eps_list = {
                                                           0.1, 0.03, 0.01, 0.003});

}  // namespace lad
