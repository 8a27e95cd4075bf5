#include "layered_advect/outer_expansion.hpp"

#include <stdexcept>

namespace lad {

OuterJet outer_jet(int order, double x, double t, const ProblemData& p, Side side) {
  const double M = p.M;
  OuterJet j;
  if (side == Side::plus) {
    const auto f = p.y0.jet(x - M * t);
    if (order == 0) {
      j.value = f[0];
      j.dx = f[1];
      j.dt = -M * f[1];
      j.dxx = f[2];
      j.dxt = -M * f[2];
    } else if (order == 1) {
      j.value = t * f[2];
      j.dx = t * f[3];
      j.dt = f[2] - M * t * f[3];
      j.dxx = t * f[4];
      j.dxt = f[3] - M * t * f[4];
    } else {
      throw std::domain_error("outer_jet: order must be 0 or 1");
    }
    return j;
  }
  const auto g = p.v.jet(t - x / M);
  const double M2 = M * M, M3 = M2 * M, M4 = M3 * M, M5 = M4 * M;
  if (order == 0) {
    j.value = g[0];
    j.dx = -g[1] / M;
    j.dt = g[1];
    j.dxx = g[2] / M2;
    j.dxt = -g[2] / M;
  } else if (order == 1) {
    j.value = x * g[2] / M3;
    j.dx = g[2] / M3 - x * g[3] / M4;
    j.dt = x * g[3] / M3;
    j.dxx = -2.0 * g[3] / M4 + x * g[4] / M5;
    j.dxt = g[3] / M3 - x * g[4] / M4;
  } else {
    throw std::domain_error("outer_jet: order must be 0 or 1");
  }
  return j;
}

double outer_y0(double x, double t, const ProblemData& p, Side side) {
  return side == Side::plus ? p.y0(x - p.M * t) : p.v(t - x / p.M);
}

double outer_y0(double x, double t, const ProblemData& p) {
  return outer_y0(x, t, p, side_of(x, t, p.M));
}

double outer_y1(double x, double t, const ProblemData& p, Side side) {
  const double M = p.M;
  return side == Side::plus ? t * p.y0.derivative(2, x - M * t)
                            : x / (M * M * M) * p.v.derivative(2, t - x / M);
}

double outer_y1(double x, double t, const ProblemData& p) {
  return outer_y1(x, t, p, side_of(x, t, p.M));
}

double outer_y2(double x, double t, const ProblemData& p, Side side) {
  const double M = p.M;
  if (side == Side::plus) return 0.5 * t * t * p.y0.derivative(4, x - M * t);
  const double s = t - x / M;
  const double M5 = M * M * M * M * M;
  return -2.0 * x / M5 * p.v.derivative(3, s) + x * x / (2.0 * M5 * M) * p.v.derivative(4, s);
}

double outer_y2(double x, double t, const ProblemData& p) {
  return outer_y2(x, t, p, side_of(x, t, p.M));
}

double trace(int derivative_order, int term_order, Side side, double t, const JumpConstants& jc) {
  const bool plus = side == Side::plus;
  if (term_order == 0) {
    switch (derivative_order) {
      case 0: return plus ? jc.c_plus : jc.c_minus;
      case 1: return plus ? jc.d_plus : jc.d_minus;
      case 2: return plus ? jc.e_plus : jc.e_minus;
      case 3: return 6.0 * (plus ? jc.h_plus : jc.h_minus);
      default: break;
    }
  } else if (term_order == 1) {
    switch (derivative_order) {
      case 0: return t * (plus ? jc.e_plus : jc.e_minus);
      case 1: return plus ? 6.0 * jc.h_plus * t : 6.0 * jc.h_minus * t + jc.f_minus;
      default: break;
    }
  }
  throw std::domain_error("trace: unsupported (derivative_order, term_order)");
}

double trace(int derivative_order, int term_order, Side side, double t, const ProblemData& p) {
  return trace(derivative_order, term_order, side, t, jump_constants(p));
}

}  // namespace lad
