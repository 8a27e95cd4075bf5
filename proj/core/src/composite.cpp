#include "layered_advect/composite.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

#include "layered_advect/outer_expansion.hpp"
#include "layered_advect/quadrature.hpp"
#include "layered_advect/special_functions.hpp"

namespace lad {

namespace {

// e^{−Mz} underflows below the smallest normal double beyond this exponent.
constexpr double max_exponent = 745.0;

double decay(double M, double z) noexcept {
  const double a = M * z;
  return a < max_exponent ? std::exp(-a) : 0.0;
}

std::array<double, 4> dz_coefficients(const std::array<double, 4>& q) noexcept {
  return {q[1], 2.0 * q[2], 3.0 * q[3], 0.0};
}

}  // namespace

std::string_view to_string(Variant v) noexcept {
  return v == Variant::plain ? "plain" : "corrected";
}

Variant parse_variant(std::string_view s) {
  if (s == "plain") return Variant::plain;
  if (s == "corrected") return Variant::corrected;
  throw std::invalid_argument("unknown variant '" + std::string(s) + "' (plain|corrected)");
}

// ---------------------------------------------------------------------------
// CompositeApprox

CompositeApprox::CompositeApprox(ProblemData p, double eps, Variant variant)
    : p_(std::move(p)),
      eps_(eps),
      sqrt_eps_(std::sqrt(eps)),
      variant_(variant),
      ctx_{jump_constants(p_), p_.M, eps},
      bl_(p_, eps, variant == Variant::corrected) {
  if (!(eps > 0.0 && eps < 1.0)) throw std::domain_error("CompositeApprox: eps must be in (0,1)");
  p_.validate();
}

CompositeApprox::Slice CompositeApprox::slice(double t) const {
  Slice s;
  s.owner_ = this;
  s.t_ = t;
  s.forms_[0] = layer_form(variant_ == Variant::corrected ? LayerTerm::W0eps : LayerTerm::W0, t, ctx_);
  s.forms_[1] = layer_form(LayerTerm::W12, t, ctx_);
  s.forms_[2] = layer_form(LayerTerm::W1, t, ctx_);
  s.forms_[3] = layer_form(LayerTerm::W32, t, ctx_);
  s.combined_ = s.forms_[0];
  double weight = 1.0;
  for (int k = 1; k < 4; ++k) {
    weight *= sqrt_eps_;
    s.combined_ += weight * s.forms_[static_cast<std::size_t>(k)];
  }
  s.combined_dw_ = s.combined_.derivative();

  const double tau = (1.0 / p_.M - t) / sqrt_eps_;
  s.bc_ = bl_.coefficients(tau, t);
  weight = 1.0;
  for (int k = 0; k < 4; ++k) {
    const auto q = s.bc_.mirror(k);
    for (std::size_t i = 0; i < 4; ++i) s.q_sum_[i] += weight * q[i];
    weight *= sqrt_eps_;
  }
  s.q_sum_dz_ = dz_coefficients(s.q_sum_);
  return s;
}

void CompositeApprox::Slice::value_dx(double x, double& value, double& dx) const {
  const CompositeApprox& o = *owner_;
  const ProblemData& p = o.p_;
  const double M = p.M;
  const double eps = o.eps_;
  const Side side = side_of(x, t_, M);

  double outer = 0.0, outer_x = 0.0;
  if (side == Side::plus) {
    const auto f = p.y0.jet(x - M * t_);
    outer = f[0] + eps * t_ * f[2];
    outer_x = f[1] + eps * t_ * f[3];
  } else {
    const auto g = p.v.jet(t_ - x / M);
    const double M3 = M * M * M;
    outer = g[0] + eps * x * g[2] / M3;
    outer_x = -g[1] / M + eps * (g[2] / M3 - x * g[3] / (M3 * M));
  }

  const double w = (x - M * t_) / o.sqrt_eps_;
  const LayerBasis B = combined_.basis(w);
  const double layer = combined_.value_minus_tail(w, side, B);
  const double layer_x = combined_dw_.value_minus_tail(w, side, B) / o.sqrt_eps_;

  const double z = (1.0 - x) / eps;
  const double e = decay(M, z);
  double bnd = 0.0, bnd_x = 0.0;
  if (e != 0.0) {
    const double q = eval_z(q_sum_, z);
    bnd = e * q;
    bnd_x = -e * (eval_z(q_sum_dz_, z) - M * q) / eps;
  }
  value = outer + layer + bnd;
  dx = outer_x + layer_x + bnd_x;
}

double CompositeApprox::Slice::value(double x) const {
  double v = 0.0, d = 0.0;
  value_dx(x, v, d);
  return v;
}

double CompositeApprox::Slice::dx(double x) const {
  double v = 0.0, d = 0.0;
  value_dx(x, v, d);
  return d;
}

double CompositeApprox::Slice::p_term(int k, double x) const {
  if (k < 0 || k > 3) throw std::domain_error("p_term: order must be 0, 1/2, 1 or 3/2");
  const CompositeApprox& o = *owner_;
  const ProblemData& p = o.p_;
  const Side side = side_of(x, t_, p.M);
  double outer = 0.0;
  if (k == 0) outer = outer_y0(x, t_, p, side);
  if (k == 2) outer = outer_y1(x, t_, p, side);
  const double w = (x - p.M * t_) / o.sqrt_eps_;
  return outer + forms_[static_cast<std::size_t>(k)].value_minus_tail(w, side);
}

double CompositeApprox::Slice::P_term(int k, double x) const {
  const double z = (1.0 - x) / owner_->eps_;
  return p_term(k, x) + decay(owner_->p_.M, z) * eval_z(bc_.mirror(k), z);
}

double CompositeApprox::Slice::residual(double x) const {
  const CompositeApprox& o = *owner_;
  const ProblemData& p = o.p_;
  const double M = p.M;
  const double eps = o.eps_;
  const double se = o.sqrt_eps_;
  const Side side = side_of(x, t_, M);

  // −ε² y¹_xx
  double r = -eps * eps * outer_jet(1, x, t_, p, side).dxx;

  const double z = (1.0 - x) / eps;
  const double e = decay(M, z);
  if (e == 0.0) return r;

  const BoundaryCoefficients& bc = bc_;
  // Order ε: −(y¹_t(1,t) + W¹_t − ∂_t y¹±) − (y⁰_xt(1,t) + W^{1/2}_wt) z − W⁰_wwt z²/2.
  const double g1 = -bc.A.d_t;
  const double g2 = bc.B.d_t;
  const double g3 = -0.5 * bc.C.d_t;
  // Order ε^{3/2}: total time derivatives of Ã, B̃, C̃, D̃ along x = 1.
  const double At = bc.At.total_dt(se);
  const double Bt = bc.Bt.total_dt(se);
  const double Ct = bc.Ct.total_dt(se);
  const double Dt = bc.Dt.total_dt(se);
  const double group_eps = g1 + z * (g2 + z * g3);
  const double group_eps32 = -At + z * (Bt + z * (-0.5 * Ct + z * Dt / 6.0));
  r += e * (eps * group_eps + eps * se * group_eps32);
  return r;
}

double CompositeApprox::boundary_trace_z0(double t) const {
  const Slice s = slice(t);
  const double w0 = -p_.M * t / sqrt_eps_;
  const double layer = s.combined_.value_minus_tail(w0, Side::minus);
  const double z = 1.0 / eps_;
  return layer + decay(p_.M, z) * eval_z(s.q_sum_, z);
}

double CompositeApprox::boundary_trace_z0_dt(double t) const {
  const Slice s = slice(t);
  const double M = p_.M;
  const double w0 = -M * t / sqrt_eps_;
  const LayerBasis B = s.combined_dw_.basis(w0);
  // Both the layer form and its matching polynomial solve the heat equation,
  // so ∂_t(form − tail) = ∂_w²(form − tail).
  const double L_w = s.combined_dw_.value_minus_tail(w0, Side::minus, B);
  const double L_t = s.combined_dw_.derivative().value_minus_tail(w0, Side::minus, B);
  double out = L_t - M / sqrt_eps_ * L_w;

  const double z = 1.0 / eps_;
  const double e = decay(M, z);
  if (e != 0.0) {
    double weight = 1.0;
    double acc = 0.0;
    for (int k = 0; k < 4; ++k) {
      const auto qt = s.bc_.mirror_d_t(k);
      const auto qtau = s.bc_.mirror_d_tau(k);
      std::array<double, 4> total{};
      for (std::size_t i = 0; i < 4; ++i) total[i] = qt[i] - qtau[i] / sqrt_eps_;
      acc += weight * eval_z(total, z);
      weight *= sqrt_eps_;
    }
    out += e * acc;
  }
  return out;
}

double CompositeApprox::z0_at_t0() const {
  return -(p_.y0(1.0) + p_.y0.derivative(1, 1.0)) * decay(p_.M, 1.0 / eps_);
}

TraceNorms CompositeApprox::trace_l1_norms() const {
  // t = s² turns the t^{-1/2} behaviour of ∂_t z at t = 0 into a smooth
  // integrand with a finite, nonzero limit at s = 0; that limit is taken by
  // evaluating at a point where the difference is below rounding.
  const double S = std::sqrt(p_.T);
  const double s_floor = 1e-12 * S;
  auto z_int = [&](double s) {
    s = std::max(s, s_floor);
    return 2.0 * s * boundary_trace_z0(s * s);
  };
  auto zt_int = [&](double s) {
    s = std::max(s, s_floor);
    return 2.0 * s * boundary_trace_z0_dt(s * s);
  };
  // The boundary-layer coefficients switch from the y0 side to the v side when
  // the characteristic from the corner reaches x = 1, at t = 1/M.
  const double s_star = std::min(S, std::sqrt(1.0 / p_.M));
  auto l1 = [&](const std::function<double(double)>& f) {
    double v = simpson_abs(f, 0.0, s_star).value;
    if (s_star < S) v += simpson_abs(f, s_star, S).value;
    return v;
  };
  TraceNorms n;
  n.z_l1 = l1(z_int);
  n.z_t_l1 = l1(zt_int);
  n.z_at_0 = z0_at_t0();
  return n;
}

double CompositeApprox::residual_l2_at(double t) const {
  const Slice s = slice(t);
  auto sq = [&](double x) {
    const double r = s.residual(x);
    return r * r;
  };
  // Break points: the characteristic (y¹_xx jumps there) and the start of the
  // boundary layer, where the integrand varies on the scale ε.
  std::vector<double> cuts{0.0, 1.0};
  const double xc = p_.M * t;
  if (xc > 0.0 && xc < 1.0) cuts.push_back(xc);
  const double xb = 1.0 - std::min(1.0, 60.0 * eps_ / p_.M);
  if (xb > 0.0) cuts.push_back(xb);
  std::sort(cuts.begin(), cuts.end());
  double acc = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    if (cuts[i + 1] > cuts[i]) acc += simpson_fixed(sq, cuts[i], cuts[i + 1], 1024);
  }
  return std::sqrt(acc);
}

double CompositeApprox::residual_l1_l2() const {
  return simpson([&](double t) { return residual_l2_at(t); }, 0.0, p_.T, 4096, 1e-8, 1e-300,
                 1u << 14)
      .value;
}

// ---------------------------------------------------------------------------
// Free functions

double theta_initial_profile(double x, double eps, const ProblemData& p) {
  const double z = (1.0 - x) / eps;
  return -(p.y0(1.0) + eps * p.y0.derivative(1, 1.0) * z) * decay(p.M, z);
}

double lifting_function(double x, double eps, double M) {
  return (1.0 - x) * std::exp(-M * x / eps);
}

double IdentityReport::max_deviation() const noexcept {
  double m = 0.0;
  for (const auto& r : identities) m = std::max(m, r.max_deviation);
  return m;
}

namespace {

// Second-order forward-mode jet in (x, t): value, ∂x, ∂t, ∂xx.
struct Jet {
  double v = 0.0, x = 0.0, t = 0.0, xx = 0.0;
};

Jet constant(double c) { return {c, 0.0, 0.0, 0.0}; }
Jet operator+(Jet a, Jet b) { return {a.v + b.v, a.x + b.x, a.t + b.t, a.xx + b.xx}; }
Jet operator-(Jet a, Jet b) { return {a.v - b.v, a.x - b.x, a.t - b.t, a.xx - b.xx}; }
Jet operator*(double s, Jet a) { return {s * a.v, s * a.x, s * a.t, s * a.xx}; }
Jet operator+(double s, Jet a) { return {s + a.v, a.x, a.t, a.xx}; }
Jet operator+(Jet a, double s) { return s + a; }
Jet operator*(Jet a, Jet b) {
  return {a.v * b.v, a.x * b.v + a.v * b.x, a.t * b.v + a.v * b.t,
          a.xx * b.v + 2.0 * a.x * b.x + a.v * b.xx};
}
// φ∘a given φ(a), φ'(a), φ''(a).
Jet chain(Jet a, double f0, double f1, double f2) {
  return {f0, f1 * a.x, f1 * a.t, f2 * a.x * a.x + f1 * a.xx};
}
Jet jexp(Jet a) {
  const double e = std::exp(a.v);
  return chain(a, e, e, e);
}
Jet jsqrt(Jet a) {
  const double r = std::sqrt(a.v);
  return chain(a, r, 0.5 / r, -0.25 / (r * a.v));
}
Jet jerf(Jet a) {
  const double d1 = 2.0 * inv_sqrt_pi * std::exp(-a.v * a.v);
  return chain(a, std::erf(a.v), d1, -2.0 * a.v * d1);
}
Jet jerfcx(Jet a) {
  const double E = erfcx(a.v);
  const double d1 = 2.0 * a.v * E - 2.0 * inv_sqrt_pi;
  return chain(a, E, d1, 2.0 * E + 2.0 * a.v * d1);
}
Jet jierfcx(Jet a) {
  // ierfcx = 1/√π − y·erfcx
  const double E = erfcx(a.v);
  const double E1 = 2.0 * a.v * E - 2.0 * inv_sqrt_pi;
  const double E2 = 2.0 * E + 2.0 * a.v * E1;
  return chain(a, ierfcx(a.v), -E - a.v * E1, -2.0 * E1 - a.v * E2);
}
Jet jpow(Jet a, int n) {
  Jet r = constant(1.0);
  for (int i = 0; i < n; ++i) r = r * a;
  return r;
}

struct IdentityCase {
  std::string name;
  std::function<Jet(Jet X, Jet T)> lhs;                   // f(x,t)
  std::function<double(double x, double t)> rhs;          // L_ε f
};

}  // namespace

IdentityReport operator_identities_check(double M, const std::vector<double>& eps_list) {
  // Generic one-sided data so that every layer coefficient is nonzero.
  JumpConstants jc;
  jc.c_plus = 1.3;
  jc.c_minus = -0.4;
  jc.d_plus = 0.7;
  jc.d_minus = -1.1;
  jc.e_plus = 0.5;
  jc.e_minus = 1.7;
  jc.f_minus = 0.9;
  jc.h_plus = 0.3;
  jc.h_minus = -0.8;

  std::vector<IdentityResult> results;
  auto record = [&](const std::string& name, double dev) {
    for (auto& r : results) {
      if (r.name == name) {
        r.max_deviation = std::max(r.max_deviation, dev);
        ++r.samples;
        return;
      }
    }
    results.push_back({name, dev, 1});
  };

  for (double eps : eps_list) {
    const double se = std::sqrt(eps);
    const double kappa = M / se;
    std::vector<IdentityCase> cases;
    auto w_of = [=](Jet X, Jet T) { return (1.0 / se) * (X - M * T); };
    auto z_of = [=](Jet X) { return (1.0 / eps) * ((-1.0) * X + 1.0); };
    auto tau_of = [=](Jet T) { return (-1.0 / se) * T + 1.0 / (M * se); };
    auto s_of = [=](Jet X, Jet T) { return w_of(X, T) * (0.5 * chain(T, 1.0 / std::sqrt(T.v), -0.5 / (T.v * std::sqrt(T.v)), 0.75 / (T.v * T.v * std::sqrt(T.v)))); };
    auto gauss = [=](Jet X, Jet T) {
      const Jet s = s_of(X, T);
      return jexp((-1.0) * (s * s));
    };
    auto r_of = [=](Jet T) { return jsqrt((1.0 / pi) * T); };
    auto zero = [](double, double) { return 0.0; };

    const double A0 = 0.5 * (jc.c_plus - jc.c_minus), B0 = 0.5 * (jc.c_plus + jc.c_minus);
    cases.push_back({"L(W0)=0",
                     [=](Jet X, Jet T) { return A0 * jerf(s_of(X, T)) + B0; }, zero});
    const double D1 = jc.d_plus - jc.d_minus, S1 = jc.d_plus + jc.d_minus;
    cases.push_back({"L(W12)=0",
                     [=](Jet X, Jet T) {
                       const Jet w = w_of(X, T);
                       return w * (0.5 * D1 * jerf(s_of(X, T)) + 0.5 * S1) +
                              D1 * (r_of(T) * gauss(X, T));
                     },
                     zero});
    const double D2 = jc.e_plus - jc.e_minus, S2 = jc.e_plus + jc.e_minus;
    cases.push_back({"L(W1)=0",
                     [=](Jet X, Jet T) {
                       const Jet w = w_of(X, T);
                       return (0.5 * (w * w) + T) * (0.5 * D2 * jerf(s_of(X, T)) + 0.5 * S2) +
                              0.5 * D2 * (w * r_of(T) * gauss(X, T));
                     },
                     zero});
    const double D3 = jc.h_plus - jc.h_minus, S3 = jc.h_plus + jc.h_minus, f = jc.f_minus;
    cases.push_back({"L(W32)=0",
                     [=](Jet X, Jet T) {
                       const Jet w = w_of(X, T);
                       const Jet E = jerf(s_of(X, T));
                       const Jet rG = r_of(T) * gauss(X, T);
                       return (0.5 * jpow(w, 3) + 3.0 * (T * w)) * (D3 * E + S3) +
                              D3 * ((4.0 * T + w * w) * rG) - f * rG +
                              0.5 * f * (w * (1.0 + (-1.0) * E));
                     },
                     zero});
    cases.push_back({"L(U0eps)=0",
                     [=](Jet X, Jet T) {
                       const Jet q = s_of(X, T) + kappa * jsqrt(T);
                       return 0.5 * (jc.c_minus - jc.c_plus) * (gauss(X, T) * jerfcx(q));
                     },
                     zero});
    cases.push_back({"L(U12eps)=0",
                     [=](Jet X, Jet T) {
                       const Jet q = s_of(X, T) + kappa * jsqrt(T);
                       return (jc.d_minus - jc.d_plus) * (jsqrt(T) * gauss(X, T) * jierfcx(q));
                     },
                     zero});
    cases.push_back({"L(exp(-Mz))=0",
                     [=](Jet X, Jet) { return jexp((-M) * z_of(X)); }, zero});
    cases.push_back({"L(z exp(-Mz))=(M/eps)exp(-Mz)",
                     [=](Jet X, Jet) { return z_of(X) * jexp((-M) * z_of(X)); },
                     [=](double x, double) { return M / eps * std::exp(-M * (1.0 - x) / eps); }});
    cases.push_back({"L(z^2 exp(-Mz))=-(2/eps)(1-Mz)exp(-Mz)",
                     [=](Jet X, Jet) { return jpow(z_of(X), 2) * jexp((-M) * z_of(X)); },
                     [=](double x, double) {
                       const double z = (1.0 - x) / eps;
                       return -2.0 / eps * (1.0 - M * z) * std::exp(-M * z);
                     }});
    cases.push_back({"L(z^3 exp(-Mz))=-(3/eps)(2-Mz)z exp(-Mz)",
                     [=](Jet X, Jet) { return jpow(z_of(X), 3) * jexp((-M) * z_of(X)); },
                     [=](double x, double) {
                       const double z = (1.0 - x) / eps;
                       return -3.0 / eps * (2.0 - M * z) * z * std::exp(-M * z);
                     }});
    cases.push_back({"L(w)=0", [=](Jet X, Jet T) { return w_of(X, T); }, zero});
    cases.push_back({"L(w^2)=-2", [=](Jet X, Jet T) { return jpow(w_of(X, T), 2); },
                     [](double, double) { return -2.0; }});
    cases.push_back({"L(w^3)=-6w", [=](Jet X, Jet T) { return jpow(w_of(X, T), 3); },
                     [=](double x, double t) { return -6.0 * (x - M * t) / se; }});
    cases.push_back({"L(w^4)=-12w^2", [=](Jet X, Jet T) { return jpow(w_of(X, T), 4); },
                     [=](double x, double t) {
                       const double w = (x - M * t) / se;
                       return -12.0 * w * w;
                     }});
    cases.push_back({"L(tau)=-1/sqrt(eps)", [=](Jet, Jet T) { return tau_of(T); },
                     [=](double, double) { return -1.0 / se; }});
    cases.push_back({"L(tau^2)=-2tau/sqrt(eps)", [=](Jet, Jet T) { return jpow(tau_of(T), 2); },
                     [=](double, double t) { return -2.0 * (1.0 / M - t) / eps; }});
    cases.push_back({"L(tau^3)=-3tau^2/sqrt(eps)",
                     [=](Jet, Jet T) { return jpow(tau_of(T), 3); },
                     [=](double, double t) {
                       const double tau = (1.0 / M - t) / se;
                       return -3.0 * tau * tau / se;
                     }});

    // Interior grid plus points inside the boundary layer and near the
    // characteristic, where the layer terms vary fastest.
    std::vector<std::pair<double, double>> points;
    for (int i = 1; i <= 7; ++i) {
      for (int j = 1; j <= 7; ++j) points.emplace_back(0.125 * i, 0.15 * j);
    }
    for (double t : {0.05, 0.4, 0.9}) {
      for (double dz : {0.1, 0.5, 1.0, 2.0, 5.0}) points.emplace_back(1.0 - eps * dz, t);
      for (double dw : {-2.0, -0.5, 0.0, 0.5, 2.0}) points.emplace_back(M * t + se * dw * std::sqrt(t), t);
    }
    for (const auto& c : cases) {
      for (auto [x, t] : points) {
        if (x <= 0.0 || x >= 1.0) continue;
        const Jet f = c.lhs(Jet{x, 1.0, 0.0, 0.0}, Jet{t, 0.0, 1.0, 0.0});
        const double L = f.t - eps * f.xx + M * f.x;
        const double scale = 1.0 + std::abs(f.t) + eps * std::abs(f.xx) + M * std::abs(f.x);
        record(c.name, std::abs(L - c.rhs(x, t)) / scale);
      }
    }
  }
  IdentityReport report;
  report.identities = std::move(results);
  return report;
}

}  // namespace lad
