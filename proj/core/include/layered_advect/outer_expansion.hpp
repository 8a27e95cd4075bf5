#pragma once

#include "layered_advect/scenario.hpp"

namespace lad {

/// Side of the characteristic x = Mt: `plus` is x > Mt (data from y0),
/// `minus` is x < Mt (data from v).
enum class Side { plus, minus };

/// Side selected by position; points on the characteristic go to `minus`.
[[nodiscard]] inline Side side_of(double x, double t, double M) noexcept {
  return x - M * t > 0.0 ? Side::plus : Side::minus;
}

/// Value and the partial derivatives of an outer term needed downstream.
struct OuterJet {
  double value = 0.0;
  double dx = 0.0;
  double dt = 0.0;
  double dxx = 0.0;
  double dxt = 0.0;
};

/// Outer term y^k (k = 0 or 1) on the given side of the characteristic, with
/// exact derivatives. y^0 is y0(x−Mt) / v(t−x/M); y^1 is t·y0''(x−Mt) /
/// (x/M³)·v''(t−x/M). Throws std::domain_error for other orders.
[[nodiscard]] OuterJet outer_jet(int order, double x, double t, const ProblemData& p, Side side);

/// y^0 with the side picked by position.
[[nodiscard]] double outer_y0(double x, double t, const ProblemData& p);
[[nodiscard]] double outer_y0(double x, double t, const ProblemData& p, Side side);

/// y^1 with the side picked by position.
[[nodiscard]] double outer_y1(double x, double t, const ProblemData& p);
[[nodiscard]] double outer_y1(double x, double t, const ProblemData& p, Side side);

/// y^2: (t²/2)·y0''''(x−Mt) above, −(2x/M⁵)v'''(t−x/M) + (x²/(2M⁶))v''''(t−x/M) below.
[[nodiscard]] double outer_y2(double x, double t, const ProblemData& p);
[[nodiscard]] double outer_y2(double x, double t, const ProblemData& p, Side side);

/// One-sided limit at x → (Mt)± of ∂_x^{derivative_order} y^{term_order}.
/// Supported: term 0 with derivative 0..3, term 1 with derivative 0..1.
/// Throws std::domain_error otherwise.
[[nodiscard]] double trace(int derivative_order, int term_order, Side side, double t,
                           const JumpConstants& jc);
[[nodiscard]] double trace(int derivative_order, int term_order, Side side, double t,
                           const ProblemData& p);

}  // namespace lad
