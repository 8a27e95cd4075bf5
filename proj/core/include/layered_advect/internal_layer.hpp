#pragma once

#include <array>
#include <initializer_list>

#include "layered_advect/outer_expansion.hpp"
#include "layered_advect/scenario.hpp"

namespace lad {

/// Polynomial in w with a small fixed capacity, used for the coefficients of
/// internal-layer closed forms.
class SmallPoly {
 public:
  static constexpr int capacity = 16;

  SmallPoly() = default;
  SmallPoly(std::initializer_list<double> coefficients);

  [[nodiscard]] int size() const noexcept { return n_; }
  [[nodiscard]] double operator[](int k) const noexcept { return k < n_ ? c_[k] : 0.0; }
  [[nodiscard]] bool is_zero() const noexcept;

  [[nodiscard]] double operator()(double w) const noexcept;
  [[nodiscard]] SmallPoly derivative() const noexcept;
  [[nodiscard]] SmallPoly times_w() const;

  SmallPoly& operator+=(const SmallPoly& o);
  SmallPoly& operator-=(const SmallPoly& o);
  SmallPoly& operator*=(double s) noexcept;
  friend SmallPoly operator+(SmallPoly a, const SmallPoly& b) { return a += b; }
  friend SmallPoly operator-(SmallPoly a, const SmallPoly& b) { return a -= b; }
  friend SmallPoly operator*(double s, SmallPoly a) noexcept { return a *= s; }

 private:
  void set(int k, double v);
  std::array<double, capacity> c_{};
  int n_ = 0;
};

/// Shared transcendental factors of a layer form at one point (w, t):
/// erf(s), erfc(±s), G = e^{−s²} and F = e^{−s²}·erfcx(s + M√t/√ε), s = w/(2√t).
struct LayerBasis {
  double erf_s = 0.0;
  double erfc_s = 0.0;      ///< erfc(s) = 1 − erf(s)
  double erfc_minus = 0.0;  ///< erfc(−s) = 1 + erf(s)
  double G = 0.0;
  double F = 0.0;
};

/// Closed form f(w) = a(w)·erf(s) + b(w) + c(w)·G + d(w)·F at a fixed time t.
///
/// Every internal-layer term and every ε-correction belongs to this family,
/// and the family is closed under ∂_w:
///   f' = a'erf + b' + (a/√(πt) + c' − c·w/(2t) − d/√(πt))·G + (d' + κ d)·F,
/// with κ = M/√ε. Derivatives are therefore exact closed forms; because every
/// term solves the heat equation, ∂_t = ∂_w² as well.
///
/// For t ≤ 0 the form evaluates to its pointwise limit (erf → sign with
/// w = 0 counted positive, G → 0, F → 2e^{κw} for w < 0 and 0 otherwise).
class LayerForm {
 public:
  LayerForm() = default;
  LayerForm(double t, double kappa);

  SmallPoly a, b, c, d;

  [[nodiscard]] double t() const noexcept { return t_; }
  [[nodiscard]] double kappa() const noexcept { return kappa_; }

  /// ∂_w of the form.
  [[nodiscard]] LayerForm derivative() const;
  /// ∂_w^j of the form.
  [[nodiscard]] LayerForm derivative(int j) const;

  [[nodiscard]] LayerBasis basis(double w) const noexcept;
  [[nodiscard]] double value(double w) const noexcept { return value(w, basis(w)); }
  [[nodiscard]] double value(double w, const LayerBasis& B) const noexcept;

  /// f(w) minus its large-|w| matching polynomial on the given side (a + b for
  /// plus, b − a for minus), computed without cancellation as ∓a·erfc(±s) + cG + dF.
  [[nodiscard]] double value_minus_tail(double w, Side side, const LayerBasis& B) const noexcept;
  [[nodiscard]] double value_minus_tail(double w, Side side) const noexcept {
    return value_minus_tail(w, side, basis(w));
  }

  /// Matching polynomial of the given side at w.
  [[nodiscard]] double tail(double w, Side side) const noexcept;

  LayerForm& operator+=(const LayerForm& o);
  LayerForm& operator*=(double s) noexcept;
  friend LayerForm operator+(LayerForm x, const LayerForm& y) { return x += y; }
  friend LayerForm operator*(double s, LayerForm x) noexcept { return x *= s; }

 private:
  double t_ = 0.0;
  double kappa_ = 0.0;
};

/// The internal-layer terms. W0eps = W0 + U0eps and W12eps = W12 + U12eps.
enum class LayerTerm { W0, W12, W1, W32, U0eps, U12eps, W0eps, W12eps };

/// Data the layer terms depend on. `eps` and `M` matter only for ε-corrections.
struct LayerContext {
  JumpConstants jc;
  double M = 1.0;
  double eps = 0.0;
};

/// Closed form of a term at time t.
[[nodiscard]] LayerForm layer_form(LayerTerm term, double t, const LayerContext& ctx);

[[nodiscard]] double layer_value(LayerTerm term, double w, double t, const LayerContext& ctx);

/// ∂_w^j of a term, j ∈ [0, 4]; throws std::domain_error otherwise.
[[nodiscard]] double w_derivative(LayerTerm term, int j, double w, double t, const LayerContext& ctx);

/// ∂_t of a term (exact; every term solves W_t = W_ww).
[[nodiscard]] double t_derivative(LayerTerm term, double w, double t, const LayerContext& ctx);

/// ∂_w^jw ∂_t^jt of a term, jw + 2·jt ≤ 8; throws std::domain_error otherwise.
[[nodiscard]] double mixed_derivative(LayerTerm term, int jw, int jt, double w, double t,
                                      const LayerContext& ctx);

/// Large-|w| matching polynomial of a term on one side (zero for the ε-corrections).
[[nodiscard]] double matching_polynomial(LayerTerm term, Side side, double w, double t,
                                         const LayerContext& ctx);

/// ((c⁺−c⁻)/2)·erf(w/(2√t)) + (c⁺+c⁻)/2.
[[nodiscard]] double W0(double w, double t, const JumpConstants& jc);
/// w·(((d⁺−d⁻)/2)·erf + (d⁺+d⁻)/2) + (d⁺−d⁻)·√(t/π)·e^{−w²/(4t)}.
[[nodiscard]] double W12(double w, double t, const JumpConstants& jc);
/// (w²/2+t)·(((e⁺−e⁻)/2)·erf + (e⁺+e⁻)/2) + ((e⁺−e⁻)/2)·w·√(t/π)·e^{−w²/(4t)}.
[[nodiscard]] double W1(double w, double t, const JumpConstants& jc);
/// (w³/2+3tw)·((h⁺−h⁻)·erf + h⁺+h⁻) + (h⁺−h⁻)(4t+w²)√(t/π)e^{−w²/(4t)}
///   − f⁻√(t/π)e^{−w²/(4t)} + (f⁻/2)·w·erfc(w/(2√t)).
[[nodiscard]] double W32(double w, double t, const JumpConstants& jc);
/// ((c⁻−c⁺)/2)·e^{−w²/(4t)}·erfcx(w/(2√t) + M√t/√ε).
[[nodiscard]] double U0eps(double w, double t, double eps, double M, const JumpConstants& jc);
[[nodiscard]] double W0eps(double w, double t, double eps, double M, const JumpConstants& jc);
/// (d⁻−d⁺)·√t·e^{−w²/(4t)}·ierfcx(w/(2√t) + M√t/√ε); makes W12eps equal to
/// d⁻·w on the inflow boundary w = −Mt/√ε.
[[nodiscard]] double U12eps(double w, double t, double eps, double M, const JumpConstants& jc);
[[nodiscard]] double W12eps(double w, double t, double eps, double M, const JumpConstants& jc);

}  // namespace lad
