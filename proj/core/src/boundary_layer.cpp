#include "layered_advect/boundary_layer.hpp"

#include <cmath>
#include <stdexcept>

namespace lad {

namespace {

void check_order(int k) {
  if (k < 0 || k > 3) throw std::domain_error("boundary layer: order must be 0, 1/2, 1 or 3/2");
}

// Builds the C_{k/2} (mirror=false) or Q_{k/2} (mirror=true) polynomial from
// one component (value, ∂τ or ∂t) of the coefficients.
template <class Pick>
std::array<double, 4> assemble(const BoundaryCoefficients& bc, int k, bool mirror, Pick pick) {
  check_order(k);
  const double m = mirror ? -1.0 : 1.0;
  switch (k) {
    case 0: return {m * pick(bc.C00), 0.0, 0.0, 0.0};
    case 1: return {m * pick(bc.C12), -pick(bc.S), 0.0, 0.0};
    case 2: return {m * pick(bc.A), pick(bc.B), m * 0.5 * pick(bc.C), 0.0};
    default:
      return {m * pick(bc.At), pick(bc.Bt), m * 0.5 * pick(bc.Ct), pick(bc.Dt) / 6.0};
  }
}

constexpr auto pick_value = [](const Coefficient& c) { return c.value; };
constexpr auto pick_tau = [](const Coefficient& c) { return c.d_tau; };
constexpr auto pick_t = [](const Coefficient& c) { return c.d_t; };

}  // namespace

std::array<double, 4> BoundaryCoefficients::matching(int k) const {
  return assemble(*this, k, false, pick_value);
}
std::array<double, 4> BoundaryCoefficients::mirror(int k) const {
  return assemble(*this, k, true, pick_value);
}
std::array<double, 4> BoundaryCoefficients::matching_d_tau(int k) const {
  return assemble(*this, k, false, pick_tau);
}
std::array<double, 4> BoundaryCoefficients::matching_d_t(int k) const {
  return assemble(*this, k, false, pick_t);
}
std::array<double, 4> BoundaryCoefficients::mirror_d_tau(int k) const {
  return assemble(*this, k, true, pick_tau);
}
std::array<double, 4> BoundaryCoefficients::mirror_d_t(int k) const {
  return assemble(*this, k, true, pick_t);
}

BoundaryLayer::BoundaryLayer(const ProblemData& p, double eps, bool corrected)
    : p_(&p), eps_(eps), corrected_(corrected), ctx_{jump_constants(p), p.M, eps} {
  if (!(eps > 0.0)) throw std::domain_error("BoundaryLayer: eps must be positive");
}

BoundaryCoefficients BoundaryLayer::coefficients(double tau, double t,
                                                 std::optional<Side> side) const {
  const ProblemData& p = *p_;
  const double M = p.M;
  const double w = M * tau;
  const Side s = side.value_or(tau > 0.0 ? Side::plus : Side::minus);

  // ∂_w^j of each internal-layer term at w = Mτ.
  auto derivatives = [&](LayerTerm term, int jmax) {
    std::array<double, 6> out{};
    LayerForm f = layer_form(term, t, ctx_);
    for (int j = 0; j <= jmax; ++j) {
      out[static_cast<std::size_t>(j)] = f.value(w);
      if (j < jmax) f = f.derivative();
    }
    return out;
  };
  const auto W0 = derivatives(corrected_ ? LayerTerm::W0eps : LayerTerm::W0, 5);
  const auto W12 = derivatives(LayerTerm::W12, 4);
  const auto W1 = derivatives(LayerTerm::W1, 3);
  const auto W32 = derivatives(LayerTerm::W32, 2);

  const OuterJet y0 = outer_jet(0, 1.0, t, p, s);
  const OuterJet y1 = outer_jet(1, 1.0, t, p, s);
  const JumpConstants& jc = ctx_.jc;
  const double c_s = trace(0, 0, s, t, jc);
  const double d_s = trace(1, 0, s, t, jc);
  const double e_s = trace(2, 0, s, t, jc);
  const double g_s = trace(3, 0, s, t, jc);   // y⁰_xxx trace, constant in t
  const double y1_s = trace(0, 1, s, t, jc);  // t·e±
  const double y1x_s = trace(1, 1, s, t, jc);

  BoundaryCoefficients bc;
  bc.side = s;
  bc.tau = tau;
  bc.t = t;

  bc.C00 = {y0.value + W0[0] - c_s, M * W0[1], y0.dt + W0[2]};
  bc.C12 = {W12[0] - w * d_s, M * W12[1] - M * d_s, W12[2]};
  bc.S = {W0[1], M * W0[2], W0[3]};

  bc.A = {y1.value + W1[0] - (0.5 * w * w * e_s + y1_s), M * W1[1] - M * w * e_s,
          y1.dt + W1[2] - e_s};
  bc.B = {-y0.dx - W12[1] + d_s, -M * W12[2], -y0.dxt - W12[3]};
  bc.C = {W0[2], M * W0[3], W0[4]};

  bc.At = {W32[0] - (w * w * w / 6.0 * g_s + w * y1x_s),
           M * W32[1] - M * (0.5 * w * w * g_s + y1x_s), W32[2] - w * g_s};
  bc.Bt = {-(W1[1] - w * e_s), -M * W1[2] + M * e_s, -W1[3]};
  bc.Ct = {W12[2], M * W12[3], W12[4]};
  bc.Dt = {-W0[3], -M * W0[4], -W0[5]};
  return bc;
}

double eval_z(const std::array<double, 4>& poly, double z) noexcept {
  return ((poly[3] * z + poly[2]) * z + poly[1]) * z + poly[0];
}

ProfileJet profile_jet(const std::array<double, 4>& P, const std::array<double, 4>& Q, double M,
                       double z) noexcept {
  const double p0 = eval_z(P, z);
  const double p1 = (3.0 * P[3] * z + 2.0 * P[2]) * z + P[1];
  const double p2 = 6.0 * P[3] * z + 2.0 * P[2];
  const double q0 = eval_z(Q, z);
  const double q1 = (3.0 * Q[3] * z + 2.0 * Q[2]) * z + Q[1];
  const double q2 = 6.0 * Q[3] * z + 2.0 * Q[2];
  const double e = std::exp(-M * z);
  ProfileJet j;
  j.value = p0 + e * q0;
  j.dz = p1 + e * (q1 - M * q0);
  j.dzz = p2 + e * (q2 - 2.0 * M * q1 + M * M * q0);
  return j;
}

double match_coeffs(int k, double z, double tau, double t, const ProblemData& p, double eps,
                    bool corrected) {
  check_order(k);
  const BoundaryLayer bl(p, eps, corrected);
  return eval_z(bl.coefficients(tau, t).matching(k), z);
}

double Y_profile(int k, double z, double tau, double t, const ProblemData& p, double eps,
                 bool corrected) {
  check_order(k);
  if (z < 0.0) throw std::domain_error("Y_profile: z must be nonnegative");
  const BoundaryLayer bl(p, eps, corrected);
  const auto bc = bl.coefficients(tau, t);
  return profile_jet(bc.matching(k), bc.mirror(k), p.M, z).value;
}

double ode_residual(int k, double z, double tau, double t, const ProblemData& p, double eps,
                    bool corrected) {
  check_order(k);
  const double M = p.M;
  const BoundaryLayer bl(p, eps, corrected);
  const auto bc = bl.coefficients(tau, t);
  const auto Y = profile_jet(bc.matching(k), bc.mirror(k), M, z);
  auto d_tau = [&](int j) { return profile_jet(bc.matching_d_tau(j), bc.mirror_d_tau(j), M, z).value; };
  auto d_t = [&](int j) { return profile_jet(bc.matching_d_t(j), bc.mirror_d_t(j), M, z).value; };
  double rhs = 0.0;
  if (k == 1) rhs = -d_tau(0);
  if (k == 2) rhs = d_t(0) - d_tau(1);
  if (k == 3) rhs = d_t(1) - d_tau(2);
  return Y.dzz + M * Y.dz - rhs;
}

}  // namespace lad
