#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

#include "momentlab/relation.hpp"

namespace momentlab {

enum class MomentMethod { Enumeration, ProductFormula };

const char* to_string(MomentMethod method);

struct RationalMoment {
  mpq_class value;
  mpz_class space_size;  // (n^k)^m instances for enumeration, 1 for the formula
  MomentMethod method = MomentMethod::ProductFormula;
};

/// Largest instance space enumerated before SizeLimitError.
inline constexpr std::uint64_t kEnumerationCap = 100'000'000;
/// Enumeration tracks valuations as bits of a 64-bit mask.
inline constexpr int kEnumerationMaxN = 6;

/// E[X_p]: expected number of p-ones valuations satisfying a uniform random
/// instance with m constraints over n variables (coordinates drawn with repetition).
RationalMoment exact_first_moment(int n, int p, int m, const RelationIndexSet& rel,
                                  MomentMethod method = MomentMethod::ProductFormula);
/// E[X_p^2], summing over ordered pairs of p-ones valuations.
RationalMoment exact_second_moment(int n, int p, int m, const RelationIndexSet& rel,
                                   MomentMethod method = MomentMethod::ProductFormula);

/// Enumerates E[number of solutions with p ones] for every p = 0..n in one pass,
/// plus E[total number of solutions] computed independently.
struct SolutionCountMoments {
  std::vector<mpq_class> by_ones;
  mpq_class total;
};
SolutionCountMoments enumerate_solution_counts(int n, int m, const RelationIndexSet& rel);

/// Enumerates all n^k tuples against two valuations with the prescribed overlap
/// and compares the fraction with i ones under the first and j under the second
/// with the closed-form sum.
bool verify_phi_counts(int n, int p, int p_prime, int i, int j, int k);
/// The enumerated fraction itself.
mpq_class enumerate_phi_fraction(int n, int p, int p_prime, int i, int j, int k);

/// E[X_p]^2 / E[X_p^2] by the product formulas; 0 when E[X_p^2] = 0.
mpq_class moment_ratio(int n, int p, int m, const RelationIndexSet& rel);

}  // namespace momentlab
