#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "momentlab/check_report.hpp"
#include "momentlab/relation.hpp"
#include "momentlab/rng.hpp"

namespace momentlab {

/// Check groups run by `momentlab verify`, in order.
const std::vector<std::string>& verify_group_names();

struct VerifyOptions {
  std::vector<std::string> only;  // empty: every group
  std::optional<int> k;           // restricts the 1-in-k certificate groups
  int max_n = 4;                  // largest n in the enumeration sweep
  std::uint64_t seed = 0x6d6f6d656e74ULL;
};

struct TimedReport {
  CheckReport report;
  double seconds = 0;
};

/// Throws ValidationError for an unknown group name.
std::vector<TimedReport> run_verification(const VerifyOptions& options = {});

CheckReport verify_identities(std::uint64_t seed);
CheckReport verify_characteristic_sets();
CheckReport verify_bound_certificates();
CheckReport verify_overlap_maximum(std::optional<int> k);
CheckReport verify_first_moment_fact(std::optional<int> k);
CheckReport verify_oracle(int max_n);
CheckReport verify_laplace();

/// Uniform double in [0, 1) from the top 53 bits.
inline double unit_draw(SplitMix64& rng) { return static_cast<double>(rng.next() >> 11) * 0x1.0p-53; }

/// Relation with k in [k_min, k_max] and a random nonempty allowed set.
RelationIndexSet random_relation(SplitMix64& rng, int k_min, int k_max);

}  // namespace momentlab
