#include "layered_advect/reference_solver.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace lad {

namespace {

// LU factors of the constant-coefficient tridiagonal matrix tridiag(a, b, c)
// (Thomas algorithm). The pivots converge geometrically to a fixed point, so
// only the leading entries are stored and the limit is used beyond them.
class ConstantTridiagonal {
 public:
  ConstantTridiagonal(std::size_t n, double a, double b, double c) : a_(a) {
    double cp = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double inv = 1.0 / (b - a * cp);
      const double next = c * inv;
      inv_.push_back(inv);
      cp_.push_back(next);
      if (i > 0 && next == cp) break;
      cp = next;
    }
  }

  [[nodiscard]] double a() const noexcept { return a_; }
  [[nodiscard]] double inv(std::size_t i) const noexcept {
    return i < inv_.size() ? inv_[i] : inv_.back();
  }
  [[nodiscard]] double cp(std::size_t i) const noexcept {
    return i < cp_.size() ? cp_[i] : cp_.back();
  }

 private:
  double a_;
  std::vector<double> cp_, inv_;
};

}  // namespace

GridSpec layer_grid(double eps, double M, double T, double m, std::size_t time_multiple) {
  if (!(eps > 0.0) || !(M > 0.0) || !(T > 0.0) || !(m > 0.0))
    throw std::invalid_argument("layer_grid: eps, M, T and m must be positive");
  GridSpec g;
  g.T = T;
  g.nx = std::max<std::size_t>(8, static_cast<std::size_t>(std::ceil(m / eps - 1e-9)));
  const double dt_max = g.dx() / M;
  std::size_t nt = static_cast<std::size_t>(std::ceil(T / dt_max - 1e-9));
  if (time_multiple > 1) nt = (nt + time_multiple - 1) / time_multiple * time_multiple;
  g.nt = std::max<std::size_t>(8, nt);
  return g;
}

MarchInfo march(const ProblemData& p, double eps, const GridSpec& grid, const RowCallback& on_row,
                const SourceTerm& source) {
  if (grid.nx < 8 || grid.nt < 8) throw std::invalid_argument("march: nx and nt must be >= 8");
  if (!(eps > 0.0)) throw std::invalid_argument("march: eps must be positive");
  if (!(grid.T > 0.0)) throw std::invalid_argument("march: T must be positive");

  const std::size_t nx = grid.nx;
  const double dx = grid.dx();
  const double dt = grid.dt();
  const double M = p.M;

  MarchInfo info;
  info.peclet = M * dx / (2.0 * eps);
  info.peclet_warning = info.peclet > 1.0;

  // Semi-discrete operator A u = ε u_xx − M u_x, row i: lo·u_{i−1} + di·u_i + up·u_{i+1}.
  const double lo = eps / (dx * dx) + M / (2.0 * dx);
  const double di = -2.0 * eps / (dx * dx);
  const double up = eps / (dx * dx) - M / (2.0 * dx);

  const std::size_t n_int = nx - 1;
  // Implicit matrix I − θ h A for a step of size h.
  auto factor = [&](double theta, double h) {
    return ConstantTridiagonal(n_int, -theta * h * lo, 1.0 - theta * h * di, -theta * h * up);
  };
  const ConstantTridiagonal half_be = factor(1.0, 0.5 * dt);
  const ConstantTridiagonal cn = factor(0.5, dt);

  std::vector<double> u(nx + 1), dp(nx + 1);
  for (std::size_t i = 1; i < nx; ++i) u[i] = p.y0(grid.x(i));
  u[0] = p.v(0.0);
  u[nx] = 0.0;
  on_row(0, 0.0, u);

  // One step u(t) → u(t + h) with weight θ on the new level. The right-hand
  // side is formed inside the forward sweep, so each step streams over the
  // grid twice.
  auto step = [&](const ConstantTridiagonal& lu, double theta, double t, double h) {
    const double ew = (1.0 - theta) * h;
    const double left_new = p.v(t + h);
    const double a = lu.a();
    double prev = 0.0;
    for (std::size_t i = 1; i < nx; ++i) {
      double r = u[i] + ew * (lo * u[i - 1] + di * u[i] + up * u[i + 1]);
      if (source) {
        const double x = grid.x(i);
        r += h * (theta * source(x, t + h) + (1.0 - theta) * source(x, t));
      }
      // The known inflow value of the new level moves to the right-hand side;
      // the outflow value is zero.
      if (i == 1) r += theta * h * lo * left_new;
      // Written as r·inv − (a·inv)·prev so the loop-carried dependency is one fma.
      const double inv = lu.inv(i - 1);
      prev = r * inv - (a * inv) * prev;
      dp[i] = prev;
    }
    u[nx - 1] = dp[nx - 1];
    for (std::size_t i = nx - 1; i-- > 1;) u[i] = dp[i] - lu.cp(i - 1) * u[i + 1];
    u[0] = left_new;
    u[nx] = 0.0;
  };

  const std::size_t startup = std::min<std::size_t>(2, grid.nt);
  for (std::size_t n = 1; n <= grid.nt; ++n) {
    const double t0 = grid.t(n - 1);
    if (n <= startup) {
      step(half_be, 1.0, t0, 0.5 * dt);
      step(half_be, 1.0, t0 + 0.5 * dt, 0.5 * dt);
    } else {
      step(cn, 0.5, t0, dt);
    }
    on_row(n, grid.t(n), u);
  }
  return info;
}

FieldGrid solve(const ProblemData& p, double eps, std::size_t nx, std::size_t nt,
                const SourceTerm& source) {
  FieldGrid f;
  f.grid = GridSpec{nx, nt, p.T};
  if (nx < 8 || nt < 8) throw std::invalid_argument("solve: nx and nt must be >= 8");
  f.values.resize((nx + 1) * (nt + 1));
  const MarchInfo info = march(
      p, eps, f.grid,
      [&](std::size_t n, double, std::span<const double> row) {
        std::copy(row.begin(), row.end(), f.values.begin() + static_cast<std::ptrdiff_t>(n * (nx + 1)));
      },
      source);
  f.peclet_warning = info.peclet_warning;
  return f;
}

double l2_norm(std::span<const double> row, double dx) {
  if (row.size() < 2) return 0.0;
  double s = 0.5 * (row.front() * row.front() + row.back() * row.back());
  for (std::size_t i = 1; i + 1 < row.size(); ++i) s += row[i] * row[i];
  return std::sqrt(s * dx);
}

void differentiate(std::span<const double> f, double dx, std::span<double> out) {
  const std::size_t n = f.size();
  if (n < 5 || out.size() != n) throw std::invalid_argument("differentiate: need >= 5 samples");
  const double h = 1.0 / (12.0 * dx);
  for (std::size_t i = 2; i + 2 < n; ++i)
    out[i] = (f[i - 2] - 8.0 * f[i - 1] + 8.0 * f[i + 1] - f[i + 2]) * h;
  out[0] = (-25.0 * f[0] + 48.0 * f[1] - 36.0 * f[2] + 16.0 * f[3] - 3.0 * f[4]) * h;
  out[1] = (-3.0 * f[0] - 10.0 * f[1] + 18.0 * f[2] - 6.0 * f[3] + f[4]) * h;
  const std::size_t m = n - 1;
  out[m] = (25.0 * f[m] - 48.0 * f[m - 1] + 36.0 * f[m - 2] - 16.0 * f[m - 3] + 3.0 * f[m - 4]) * h;
  out[m - 1] = (3.0 * f[m] + 10.0 * f[m - 1] - 18.0 * f[m - 2] + 6.0 * f[m - 3] - f[m - 4]) * h;
}

NormSet norms(const FieldGrid& diff, double t_star) {
  NormSet out;
  const double dx = diff.dx();
  std::vector<double> d(diff.nx() + 1);
  ErrorAccumulator acc;
  std::size_t n_star = 0;
  double best = std::abs(diff.grid.t(0) - t_star);
  for (std::size_t n = 0; n <= diff.nt(); ++n) {
    const auto row = diff.row(n);
    differentiate(row, dx, d);
    acc.add(diff.grid.t(n), l2_norm(row, dx), l2_norm(d, dx));
    const double gap = std::abs(diff.grid.t(n) - t_star);
    if (gap < best) {
      best = gap;
      n_star = n;
    }
  }
  out.linf_l2 = acc.linf_l2();
  out.l2_h1 = acc.l2_h1();
  out.l2_at_time = l2_norm(diff.row(n_star), dx);
  return out;
}

void ErrorAccumulator::add(double t, double l2, double h1_seminorm) {
  if (!t_.empty() && t < t_.back()) throw std::invalid_argument("ErrorAccumulator: times must increase");
  linf_all_ = std::max(linf_all_, l2);
  if (t >= t_min_) linf_masked_ = std::max(linf_masked_, l2);
  t_.push_back(t);
  h1sq_.push_back(h1_seminorm * h1_seminorm);
}

double ErrorAccumulator::l2_h1() const {
  double s = 0.0;
  for (std::size_t i = 1; i < t_.size(); ++i) s += 0.5 * (t_[i] - t_[i - 1]) * (h1sq_[i] + h1sq_[i - 1]);
  return std::sqrt(s);
}

double decay_at_final(const ProblemData& p, double eps, const GridSpec& grid) {
  if (!p.v.is_zero()) throw std::invalid_argument("decay_at_final: requires v == 0");
  if (grid.T * p.M < 1.0 - 1e-12) throw std::invalid_argument("decay_at_final: requires T >= 1/M");
  const double t_star = 1.0 / p.M;
  const auto n_star = static_cast<std::size_t>(std::llround(t_star / grid.dt()));
  const double dx = grid.dx();
  double result = 0.0;
  ProblemData q = p;
  q.T = grid.T;
  GridSpec g = grid;
  g.nt = std::max<std::size_t>(n_star, 8);
  g.T = static_cast<double>(g.nt) * grid.dt();
  march(q, eps, g, [&](std::size_t n, double, std::span<const double> row) {
    if (n == n_star) result = l2_norm(row, dx);
  });
  return result;
}

}  // namespace lad
