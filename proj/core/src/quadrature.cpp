#include "layered_advect/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>
#include <stdexcept>

namespace lad {

double simpson_fixed(const std::function<double(double)>& f, double a, double b,
                     std::size_t panels) {
  if (panels < 2) panels = 2;
  if (panels % 2) ++panels;
  const double h = (b - a) / static_cast<double>(panels);
  double odd = 0.0, even = 0.0;
  for (std::size_t i = 1; i < panels; ++i) {
    const double v = f(a + h * static_cast<double>(i));
    (i % 2 ? odd : even) += v;
  }
  return h / 3.0 * (f(a) + f(b) + 4.0 * odd + 2.0 * even);
}

QuadratureResult simpson(const std::function<double(double)>& f, double a, double b,
                         std::size_t min_panels, double rtol, double atol,
                         std::size_t max_panels) {
  if (min_panels < 2) min_panels = 2;
  if (min_panels % 2) ++min_panels;
  // Reuse samples across doublings: keep the sum of interior points split by parity.
  std::size_t n = min_panels;
  double h = (b - a) / static_cast<double>(n);
  const double ends = f(a) + f(b);
  double odd = 0.0, even = 0.0;
  for (std::size_t i = 1; i < n; ++i) {
    const double v = f(a + h * static_cast<double>(i));
    (i % 2 ? odd : even) += v;
  }
  double prev = h / 3.0 * (ends + 4.0 * odd + 2.0 * even);
  QuadratureResult r{prev, n, false};
  while (2 * n <= max_panels) {
    // Old interior points all become even points of the refined rule.
    even += odd;
    n *= 2;
    h *= 0.5;
    odd = 0.0;
    for (std::size_t i = 1; i < n; i += 2) odd += f(a + h * static_cast<double>(i));
    const double cur = h / 3.0 * (ends + 4.0 * odd + 2.0 * even);
    r = {cur, n, false};
    if (std::abs(cur - prev) <= std::max(rtol * std::abs(cur), atol)) {
      r.converged = true;
      return r;
    }
    prev = cur;
  }
  return r;
}

QuadratureResult simpson_abs(const std::function<double(double)>& f, double a, double b,
                             std::size_t scan, std::size_t min_panels, double rtol, double atol) {
  if (scan < 1) scan = 1;
  std::vector<double> cuts{a};
  const double h = (b - a) / static_cast<double>(scan);
  double x0 = a, f0 = f(a);
  for (std::size_t i = 1; i <= scan; ++i) {
    const double x1 = i == scan ? b : a + h * static_cast<double>(i);
    const double f1 = f(x1);
    if ((f0 < 0.0 && f1 > 0.0) || (f0 > 0.0 && f1 < 0.0)) {
      double lo = x0, hi = x1, flo = f0;
      for (int it = 0; it < 100 && hi - lo > 4.0 * std::numeric_limits<double>::epsilon() * std::abs(hi); ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if ((fm < 0.0) == (flo < 0.0)) {
          lo = mid;
          flo = fm;
        } else {
          hi = mid;
        }
      }
      cuts.push_back(0.5 * (lo + hi));
    }
    x0 = x1;
    f0 = f1;
  }
  cuts.push_back(b);
  QuadratureResult total{0.0, 0, true};
  const auto abs_f = [&](double x) { return std::abs(f(x)); };
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const auto r = simpson(abs_f, cuts[i], cuts[i + 1], min_panels, rtol, atol);
    total.value += r.value;
    total.panels += r.panels;
    total.converged = total.converged && r.converged;
  }
  return total;
}

LineFit fit_line(const double* x, const double* y, std::size_t n) {
  if (n < 2) throw std::invalid_argument("fit_line: need at least two points");
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx == 0.0) throw std::invalid_argument("fit_line: abscissae are all equal");
  LineFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ss = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double e = y[i] - (fit.intercept + fit.slope * x[i]);
    ss += e * e;
  }
  fit.residual = std::sqrt(ss / static_cast<double>(n));
  fit.slope_stderr = n > 2 ? std::sqrt(ss / static_cast<double>(n - 2) / sxx) : 0.0;
  return fit;
}

}  // namespace lad
