#include "momentlab/numeric.hpp"

#include <algorithm>
#include <string>

namespace momentlab {

double derivative(const std::function<double(double)>& f, double x, int order, Interval domain) {
  if (order != 1 && order != 2) throw DomainError("derivative: order must be 1 or 2");
  const double h = order == 1 ? kFirstDerivativeStep : kSecondDerivativeStep;
  if (!domain.contains(x - h) || !domain.contains(x + h)) {
    throw DomainClippedError("derivative: stencil around x=" + std::to_string(x) + " leaves [" +
                             std::to_string(domain.lo) + ", " + std::to_string(domain.hi) + "]");
  }
  if (order == 1) return (f(x + h) - f(x - h)) / (2.0 * h);
  return (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h);
}

Extremum golden_minimize(const std::function<double(double)>& f, double a, double b, double tol) {
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - invphi * (b - a);
  double d = a + invphi * (b - a);
  double fc = f(c);
  double fd = f(d);
  while (b - a > tol) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - invphi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + invphi * (b - a);
      fd = f(d);
    }
  }
  const double x = 0.5 * (a + b);
  return {x, f(x)};
}

Extremum golden_maximize(const std::function<double(double)>& f, double a, double b, double tol) {
  auto best = golden_minimize([&](double x) { return -f(x); }, a, b, tol);
  best.value = -best.value;
  return best;
}

std::vector<double> linspace(double a, double b, std::size_t steps) {
  std::vector<double> xs(steps + 1);
  for (std::size_t i = 0; i <= steps; ++i) {
    xs[i] = i == steps ? b : a + (b - a) * static_cast<double>(i) / static_cast<double>(steps);
  }
  return xs;
}

Extremum scan_minimize(const std::function<double(double)>& f, double a, double b, std::size_t steps, double tol) {
  const auto xs = linspace(a, b, steps);
  std::size_t best = 0;
  double best_value = f(xs[0]);
  for (std::size_t i = 1; i < xs.size(); ++i) {
    const double v = f(xs[i]);
    if (v < best_value) {
      best_value = v;
      best = i;
    }
  }
  const double lo = xs[best == 0 ? 0 : best - 1];
  const double hi = xs[std::min(best + 1, steps)];
  auto refined = golden_minimize(f, lo, hi, tol);
  if (refined.value <= best_value) return refined;
  return {xs[best], best_value};
}

Extremum scan_maximize(const std::function<double(double)>& f, double a, double b, std::size_t steps, double tol) {
  auto best = scan_minimize([&](double x) { return -f(x); }, a, b, steps, tol);
  best.value = -best.value;
  return best;
}

double bisect_root(const std::function<double(double)>& f, double a, double b, double tol) {
  double fa = f(a);
  const double fb = f(b);
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  if ((fa > 0) == (fb > 0)) throw NumericalError("bisect_root: no sign change in bracket");
  while (b - a > tol) {
    const double mid = 0.5 * (a + b);
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((fm > 0) == (fa > 0)) {
      a = mid;
      fa = fm;
    } else {
      b = mid;
    }
  }
  return 0.5 * (a + b);
}

}  // namespace momentlab
