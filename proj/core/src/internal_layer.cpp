#include "layered_advect/internal_layer.hpp"

#include <cmath>
#include <stdexcept>

#include "layered_advect/special_functions.hpp"

namespace lad {

// ---------------------------------------------------------------------------
// SmallPoly

SmallPoly::SmallPoly(std::initializer_list<double> coefficients) {
  if (coefficients.size() > static_cast<std::size_t>(capacity)) {
    throw std::length_error("SmallPoly: too many coefficients");
  }
  for (double v : coefficients) c_[n_++] = v;
}

void SmallPoly::set(int k, double v) {
  if (k >= capacity) throw std::length_error("SmallPoly: capacity exceeded");
  if (k >= n_) {
    for (int j = n_; j < k; ++j) c_[j] = 0.0;
    n_ = k + 1;
  }
  c_[k] = v;
}

bool SmallPoly::is_zero() const noexcept {
  for (int k = 0; k < n_; ++k)
    if (c_[k] != 0.0) return false;
  return true;
}

double SmallPoly::operator()(double w) const noexcept {
  double acc = 0.0;
  for (int k = n_ - 1; k >= 0; --k) acc = acc * w + c_[k];
  return acc;
}

SmallPoly SmallPoly::derivative() const noexcept {
  SmallPoly r;
  for (int k = 1; k < n_; ++k) r.c_[k - 1] = static_cast<double>(k) * c_[k];
  r.n_ = n_ > 0 ? n_ - 1 : 0;
  return r;
}

SmallPoly SmallPoly::times_w() const {
  if (n_ == 0) return {};
  if (n_ + 1 > capacity) throw std::length_error("SmallPoly: capacity exceeded");
  SmallPoly r;
  r.n_ = n_ + 1;
  r.c_[0] = 0.0;
  for (int k = 0; k < n_; ++k) r.c_[k + 1] = c_[k];
  return r;
}

SmallPoly& SmallPoly::operator+=(const SmallPoly& o) {
  for (int k = 0; k < o.n_; ++k) set(k, (*this)[k] + o.c_[k]);
  return *this;
}

SmallPoly& SmallPoly::operator-=(const SmallPoly& o) {
  for (int k = 0; k < o.n_; ++k) set(k, (*this)[k] - o.c_[k]);
  return *this;
}

SmallPoly& SmallPoly::operator*=(double s) noexcept {
  for (int k = 0; k < n_; ++k) c_[k] *= s;
  return *this;
}

// ---------------------------------------------------------------------------
// LayerForm

LayerForm::LayerForm(double t, double kappa) : t_(t), kappa_(kappa) {}

LayerForm LayerForm::derivative() const {
  LayerForm r(t_, kappa_);
  r.a = a.derivative();
  r.b = b.derivative();
  if (t_ > 0.0) {
    const double g = inv_sqrt_pi / std::sqrt(t_);  // 1/√(πt)
    r.c = g * a;
    r.c += c.derivative();
    r.c -= (0.5 / t_) * c.times_w();
    r.c -= g * d;
  }
  r.d = d.derivative();
  r.d += kappa_ * d;
  return r;
}

LayerForm LayerForm::derivative(int j) const {
  LayerForm r = *this;
  for (int k = 0; k < j; ++k) r = r.derivative();
  return r;
}

LayerBasis LayerForm::basis(double w) const noexcept {
  LayerBasis B;
  if (!(t_ > 0.0)) {
    const bool pos = w >= 0.0;
    B.erf_s = pos ? 1.0 : -1.0;
    B.erfc_s = pos ? 0.0 : 2.0;
    B.erfc_minus = pos ? 2.0 : 0.0;
    B.G = 0.0;
    B.F = (!pos && !d.is_zero()) ? 2.0 * std::exp(kappa_ * w) : 0.0;
    return B;
  }
  const double st = std::sqrt(t_);
  const double s = w / (2.0 * st);
  B.erf_s = std::erf(s);
  B.erfc_s = std::erfc(s);
  B.erfc_minus = std::erfc(-s);
  B.G = exp_of_minus_square(s);
  if (!d.is_zero()) {
    const double q = s + kappa_ * st;
    if (q >= 0.0) {
      B.F = B.G * erfcx(q);
    } else {
      // e^{κw+κ²t}·erfc(q) with erfc(q) = 2 − erfc(−q).
      B.F = 2.0 * std::exp(kappa_ * w + kappa_ * kappa_ * t_) - B.G * erfcx(-q);
    }
  }
  return B;
}

double LayerForm::value(double w, const LayerBasis& B) const noexcept {
  double v = a(w) * B.erf_s + b(w);
  if (B.G != 0.0) v += c(w) * B.G;
  if (B.F != 0.0) v += d(w) * B.F;
  return v;
}

double LayerForm::value_minus_tail(double w, Side side, const LayerBasis& B) const noexcept {
  double v = side == Side::plus ? -a(w) * B.erfc_s : a(w) * B.erfc_minus;
  if (B.G != 0.0) v += c(w) * B.G;
  if (B.F != 0.0) v += d(w) * B.F;
  return v;
}

double LayerForm::tail(double w, Side side) const noexcept {
  return side == Side::plus ? b(w) + a(w) : b(w) - a(w);
}

LayerForm& LayerForm::operator+=(const LayerForm& o) {
  if (t_ != o.t_ && !(a.is_zero() && b.is_zero() && c.is_zero() && d.is_zero())) {
    throw std::invalid_argument("LayerForm: adding forms at different times");
  }
  if (kappa_ != o.kappa_ && !d.is_zero() && !o.d.is_zero()) {
    throw std::invalid_argument("LayerForm: adding corrections with different kappa");
  }
  t_ = o.t_;
  if (!o.d.is_zero()) kappa_ = o.kappa_;
  a += o.a;
  b += o.b;
  c += o.c;
  d += o.d;
  return *this;
}

LayerForm& LayerForm::operator*=(double s) noexcept {
  a *= s;
  b *= s;
  c *= s;
  d *= s;
  return *this;
}

// ---------------------------------------------------------------------------
// Terms

namespace {

double kappa_of(const LayerContext& ctx) {
  return ctx.eps > 0.0 ? ctx.M / std::sqrt(ctx.eps) : 0.0;
}

void require_eps(const LayerContext& ctx) {
  if (!(ctx.eps > 0.0)) throw std::domain_error("layer term: epsilon-correction needs eps > 0");
}

}  // namespace

LayerForm layer_form(LayerTerm term, double t, const LayerContext& ctx) {
  const JumpConstants& jc = ctx.jc;
  const double kappa = kappa_of(ctx);
  LayerForm f(t, kappa);
  const double r = t > 0.0 ? std::sqrt(t / pi) : 0.0;  // √(t/π)
  switch (term) {
    case LayerTerm::W0:
      f.a = {0.5 * (jc.c_plus - jc.c_minus)};
      f.b = {0.5 * (jc.c_plus + jc.c_minus)};
      break;
    case LayerTerm::W12: {
      const double D = jc.d_plus - jc.d_minus;
      f.a = {0.0, 0.5 * D};
      f.b = {0.0, 0.5 * (jc.d_plus + jc.d_minus)};
      f.c = {D * r};
      break;
    }
    case LayerTerm::W1: {
      const double D = jc.e_plus - jc.e_minus;
      const double S = jc.e_plus + jc.e_minus;
      f.a = {0.5 * D * t, 0.0, 0.25 * D};
      f.b = {0.5 * S * t, 0.0, 0.25 * S};
      f.c = {0.0, 0.5 * D * r};
      break;
    }
    case LayerTerm::W32: {
      const double D = jc.h_plus - jc.h_minus;
      const double S = jc.h_plus + jc.h_minus;
      const double fm = jc.f_minus;
      // (f⁻/2)·w·erfc(s) = (f⁻/2)·w − (f⁻/2)·w·erf(s)
      f.a = {0.0, 3.0 * t * D - 0.5 * fm, 0.0, 0.5 * D};
      f.b = {0.0, 3.0 * t * S + 0.5 * fm, 0.0, 0.5 * S};
      f.c = {(4.0 * t * D - fm) * r, 0.0, D * r};
      break;
    }
    case LayerTerm::U0eps:
      require_eps(ctx);
      f.d = {0.5 * (jc.c_minus - jc.c_plus)};
      break;
    case LayerTerm::U12eps: {
      require_eps(ctx);
      // (d⁻−d⁺)·√t·e^{κw+κ²t}·ierfc(q) = (d⁻−d⁺)·[√(t/π)·G − (w/2 + Mt/√ε)·F]
      const double D = jc.d_minus - jc.d_plus;
      f.c = {D * r};
      f.d = {-D * kappa * t, -0.5 * D};
      break;
    }
    case LayerTerm::W0eps:
      f = layer_form(LayerTerm::W0, t, ctx);
      f += layer_form(LayerTerm::U0eps, t, ctx);
      break;
    case LayerTerm::W12eps:
      f = layer_form(LayerTerm::W12, t, ctx);
      f += layer_form(LayerTerm::U12eps, t, ctx);
      break;
  }
  return f;
}

double layer_value(LayerTerm term, double w, double t, const LayerContext& ctx) {
  return layer_form(term, t, ctx).value(w);
}

double w_derivative(LayerTerm term, int j, double w, double t, const LayerContext& ctx) {
  if (j < 0 || j > 4) throw std::domain_error("w_derivative: order must be in [0, 4]");
  return layer_form(term, t, ctx).derivative(j).value(w);
}

double t_derivative(LayerTerm term, double w, double t, const LayerContext& ctx) {
  return layer_form(term, t, ctx).derivative(2).value(w);
}

double mixed_derivative(LayerTerm term, int jw, int jt, double w, double t,
                        const LayerContext& ctx) {
  if (jw < 0 || jt < 0 || jw + 2 * jt > 8) {
    throw std::domain_error("mixed_derivative: need jw + 2 jt <= 8");
  }
  return layer_form(term, t, ctx).derivative(jw + 2 * jt).value(w);
}

double matching_polynomial(LayerTerm term, Side side, double w, double t, const LayerContext& ctx) {
  return layer_form(term, t, ctx).tail(w, side);
}

double W0(double w, double t, const JumpConstants& jc) {
  return layer_value(LayerTerm::W0, w, t, {jc, 1.0, 0.0});
}
double W12(double w, double t, const JumpConstants& jc) {
  return layer_value(LayerTerm::W12, w, t, {jc, 1.0, 0.0});
}
double W1(double w, double t, const JumpConstants& jc) {
  return layer_value(LayerTerm::W1, w, t, {jc, 1.0, 0.0});
}
double W32(double w, double t, const JumpConstants& jc) {
  return layer_value(LayerTerm::W32, w, t, {jc, 1.0, 0.0});
}
double U0eps(double w, double t, double eps, double M, const JumpConstants& jc) {
  return layer_value(LayerTerm::U0eps, w, t, {jc, M, eps});
}
double W0eps(double w, double t, double eps, double M, const JumpConstants& jc) {
  return layer_value(LayerTerm::W0eps, w, t, {jc, M, eps});
}
double U12eps(double w, double t, double eps, double M, const JumpConstants& jc) {
  return layer_value(LayerTerm::U12eps, w, t, {jc, M, eps});
}
double W12eps(double w, double t, double eps, double M, const JumpConstants& jc) {
  return layer_value(LayerTerm::W12eps, w, t, {jc, M, eps});
}

}  // namespace lad
