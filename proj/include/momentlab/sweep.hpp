#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "momentlab/relation.hpp"

namespace momentlab {

inline constexpr double kWilsonZ95 = 1.959963984540054;

struct WilsonInterval {
  double lo = 0;
  double hi = 1;
};

/// 95% Wilson score interval; [0, 1] when there are no trials.
WilsonInterval wilson_interval(std::size_t successes, std::size_t trials, double z = kWilsonZ95);

struct SweepPoint {
  double r = 0;
  std::size_t m = 0;
  std::size_t trials = 0;
  std::size_t sat = 0;
  std::size_t unresolved = 0;  // node budget exhausted; excluded from frac
  double frac = 0;
  WilsonInterval ci;
};

struct SweepResult {
  RelationIndexSet relation;
  std::size_t n = 0;
  std::size_t trials = 0;
  std::uint64_t master_seed = 0;
  std::vector<SweepPoint> points;

  std::size_t total_unresolved() const;
  double unresolved_rate() const;
};

struct SweepOptions {
  std::uint64_t node_budget = 5'000'000;
  /// 0 means: MOMENTLAB_THREADS if set, else hardware concurrency.
  unsigned threads = 0;
};

/// Ratios r_min, r_min + step, ... up to r_max (inclusive within step/1e6).
std::vector<double> ratio_grid(double r_min, double r_max, double r_step);

/// Trial t at grid index i uses generate_instance(n, round(r n), rel, derive_seed(master, i, t)).
SweepResult sweep(const RelationIndexSet& rel, std::size_t n, double r_min, double r_max, double r_step,
                  std::size_t trials, std::uint64_t master_seed, const SweepOptions& options = {});

/// Worker count: explicit request, else MOMENTLAB_THREADS, else hardware; always >= 1.
unsigned resolve_thread_count(unsigned requested);

/// Runs body(i) for i in [0, count) on up to `threads` workers.
void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& body);

std::string to_csv(const SweepResult& result);
/// Inverse of to_csv. Throws ParseError with a line number on malformed input.
SweepResult parse_sweep_csv(const std::string& text);

struct ThresholdEstimate {
  double r = 0;   // crossing of frac through 1/2
  double lo = 0;  // crossing of the upper CI curve
  double hi = 0;  // crossing of the lower CI curve
};

/// Linear interpolation of the first downward crossing of 1/2. Throws NoCrossingError.
ThresholdEstimate empirical_threshold(const SweepResult& result);

}  // namespace momentlab
