#include "momentlab/characteristic.hpp"

#include <algorithm>
#include <cmath>

#include "momentlab/errors.hpp"
#include "momentlab/moments.hpp"
#include "momentlab/numeric.hpp"

namespace momentlab {

bool CharacteristicSet::contains(double delta, double tol) const {
  return std::any_of(points.begin(), points.end(),
                     [&](const CharacteristicPoint& p) { return std::abs(p.delta - delta) <= tol; });
}

CharacteristicSet find_characteristic_set(const RelationIndexSet& rel, int grid_steps, double tol) {
  if (grid_steps < 1000) throw DomainError("find_characteristic_set: grid_steps must be >= 1000");
  if (!(tol > 0.0)) throw DomainError("find_characteristic_set: tol must be positive");

  auto slope = [&](double x) { return g_prime(rel, x); };
  const auto grid = linspace(0.0, 1.0, static_cast<std::size_t>(grid_steps));

  CharacteristicSet out{rel, {}};
  // Track the last grid point with a nonzero slope so flat stretches and
  // exact zeros on the grid are bracketed by points of definite sign.
  int last_sign = 0;
  double last_x = 0.0;
  for (double x : grid) {
    const double s = slope(x);
    const int sign = s > 0 ? 1 : (s < 0 ? -1 : 0);
    if (sign == 0) continue;
    if (last_sign > 0 && sign < 0) {
      const double root = bisect_root(slope, last_x, x, tol);
      CharacteristicPoint p;
      p.delta = root;
      p.g_value = g(rel, root);
      p.g_second = g_second(rel, root);
      p.plateau = !(p.g_second < -1e-12);
      out.points.push_back(p);
    }
    last_sign = sign;
    last_x = x;
  }
  if (out.points.empty()) {
    throw NumericalError("find_characteristic_set: no local maximum of g found for " + rel.to_string());
  }
  return out;
}

void annotate_gamma(CharacteristicSet& set, double r) {
  for (auto& p : set.points) p.gamma_at_r = gamma(set.relation, r, p.delta);
}

double gprime_closed_at_independence(const RelationIndexSet& rel, double delta) {
  if (!(delta > 0.0 && delta < 1.0)) throw DomainError("gprime_closed_at_independence: delta must lie in (0,1)");
  const double gp = g_prime(rel, delta);
  return -delta * gp * gp / rel.k();
}

double gprime_closed_at_independence_alt(const RelationIndexSet& rel, double delta) {
  return gprime_closed_at_independence(rel, delta) / ((1.0 - delta) * (1.0 - delta));
}

double independence_slope(const RelationIndexSet& rel, double delta, double r) {
  if (!(delta > 0.0 && delta < 1.0)) throw DomainError("independence_slope: delta must lie in (0,1)");
  auto f = [&](double mu) { return bigGamma(rel, delta, r, mu); };
  return derivative(f, 1.0 - delta, 1, Interval{0.0, overlap_max(delta)});
}

bool verify_stationarity(const RelationIndexSet& rel, double delta, double r, double tol) {
  return std::abs(independence_slope(rel, delta, r)) < tol;
}

double best_delta(const CharacteristicSet& set, double r) {
  const auto& pts = set.points;
  double best = pts.front().delta;
  double best_value = log_gamma(set.relation, r, best);
  for (std::size_t i = 1; i < pts.size(); ++i) {
    const double v = log_gamma(set.relation, r, pts[i].delta);
    if (v > best_value) {
      best_value = v;
      best = pts[i].delta;
    }
  }
  return best;
}

double best_delta(const RelationIndexSet& rel, double r) { return best_delta(find_characteristic_set(rel), r); }

}  // namespace momentlab
