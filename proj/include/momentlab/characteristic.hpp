#pragma once

#include <optional>
#include <vector>

#include "momentlab/relation.hpp"

namespace momentlab {

struct CharacteristicPoint {
  double delta = 0;
  double g_value = 0;
  double g_second = 0;
  /// g'' is not strictly negative at the maximizer (higher-order maximum).
  bool plateau = false;
  std::optional<double> gamma_at_r;
};

/// Local maximizers of g on (0, 1), sorted by delta.
struct CharacteristicSet {
  RelationIndexSet relation;
  std::vector<CharacteristicPoint> points;

  bool contains(double delta, double tol) const;
};

inline constexpr int kDefaultCharacteristicGrid = 4000;
inline constexpr double kDefaultCharacteristicTol = 1e-10;

/// Brackets sign changes (+ to -) of the analytic g' on a uniform grid and
/// refines each by bisection until the bracket is narrower than `tol`.
/// Zeros of even multiplicity do not change sign and are skipped.
CharacteristicSet find_characteristic_set(const RelationIndexSet& rel, int grid_steps = kDefaultCharacteristicGrid,
                                          double tol = kDefaultCharacteristicTol);

/// Fills gamma_at_r for every point.
void annotate_gamma(CharacteristicSet& set, double r);

/// -δ g'(δ)² / k: the derivative of G(δ, ·) at the independence point.
double gprime_closed_at_independence(const RelationIndexSet& rel, double delta);
/// -δ g'(δ)² / (k (1-δ)²), the variant that carries an extra (1-δ)^-2. Kept so
/// the two can be compared; it only agrees with the derivative where g' = 0.
double gprime_closed_at_independence_alt(const RelationIndexSet& rel, double delta);

/// Γ'(1-δ) by central finite difference.
double independence_slope(const RelationIndexSet& rel, double delta, double r);

/// |Γ'(1-δ)| < tol.
bool verify_stationarity(const RelationIndexSet& rel, double delta, double r, double tol = 1e-6);

/// Member of Δ maximizing γ(r, ·); ties go to the smallest delta.
double best_delta(const RelationIndexSet& rel, double r);
double best_delta(const CharacteristicSet& set, double r);

}  // namespace momentlab
