#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <vector>

#include "momentlab/errors.hpp"

namespace momentlab {

struct Interval {
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();
  bool contains(double x) const noexcept { return x >= lo && x <= hi; }
};

/// Central-difference steps: first order uses h = 1e-6, second order h = 1e-4.
inline constexpr double kFirstDerivativeStep = 1e-6;
inline constexpr double kSecondDerivativeStep = 1e-4;

/// Central finite difference of order 1 or 2. Throws DomainClippedError when
/// the stencil x ± h leaves `domain`.
double derivative(const std::function<double(double)>& f, double x, int order, Interval domain = {});

struct Extremum {
  double x = 0;
  double value = 0;
};

/// Golden-section search for the minimum of a unimodal f on [a, b].
Extremum golden_minimize(const std::function<double(double)>& f, double a, double b, double tol = 1e-10);
Extremum golden_maximize(const std::function<double(double)>& f, double a, double b, double tol = 1e-10);

/// Scan `steps`+1 equispaced points of [a, b], then refine the best one by
/// golden section on its neighbouring cells.
Extremum scan_minimize(const std::function<double(double)>& f, double a, double b, std::size_t steps,
                       double tol = 1e-10);
Extremum scan_maximize(const std::function<double(double)>& f, double a, double b, std::size_t steps,
                       double tol = 1e-10);

/// Bisection on a sign change of f in [a, b]; returns the bracket midpoint once
/// the bracket is narrower than tol. Requires f(a), f(b) of opposite sign (or zero).
double bisect_root(const std::function<double(double)>& f, double a, double b, double tol);

/// Equispaced points a, a+h, ..., b (count = steps + 1).
std::vector<double> linspace(double a, double b, std::size_t steps);

}  // namespace momentlab
