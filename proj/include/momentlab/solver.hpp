#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "momentlab/relation.hpp"

namespace momentlab {

enum class SolveStatus { Sat, Unsat };

const char* to_string(SolveStatus status);

struct SolveStats {
  std::uint64_t nodes = 0;         // branching decisions
  std::uint64_t propagations = 0;  // assignments forced by interval reasoning
};

struct SolveResult {
  SolveStatus status = SolveStatus::Unsat;
  std::optional<Valuation> witness;
  SolveStats stats;
};

struct SolveOptions {
  std::uint64_t node_budget = 5'000'000;
  /// Branch on 0 first. Unset: decided from the relation's characteristic set.
  std::optional<bool> zero_first;
};

/// True when the relation's preferred characteristic delta (at ratio r) is below 1/2.
bool prefers_zero_first(const RelationIndexSet& rel, double r);

/// Complete backtracking search. Throws ResourceLimitExceeded past the node budget.
SolveResult solve(const Instance& inst, const SolveOptions& options = {});

}  // namespace momentlab
