#pragma once

#include "peakpack/core.hpp"

namespace peakpack {

struct ExactLimits {
  long long maxNodes = 20'000'000;
  double timeLimitSec = 60.0;
  // All starts restricted to multiples of startGrid. Only valid when every
  // processing time is a multiple of startGrid: flooring starts to the grid
  // then preserves disjoint pairs, and any set of jobs simultaneously active
  // at a grid time was simultaneously active at some original time (Helly
  // property of intervals), so the gridded optimum equals the true optimum.
  Int startGrid = 1;
};

enum class ExactStatus { Optimal, NodeLimit, TimeLimit };

struct ExactResult {
  ExactStatus status = ExactStatus::Optimal;
  Int peak = 0;          // best peak found (optimal iff status == Optimal)
  Schedule schedule;     // schedule achieving .peak
  long long nodes = 0;
};

// Branch and bound over integer start times, minimizing the peak demand.
// Deterministic: branch order is decreasing p*e (ties by energy then id),
// starts increase, the first-branched job is restricted to the left half
// (mirror symmetry) and identical jobs get nondecreasing starts.
ExactResult exactOpt(const Instance& inst, const ExactLimits& limits = {});

enum class DecisionStatus { Feasible, Infeasible, Limit };

// Is there a schedule with peak <= T?
DecisionStatus exactDecision(const Instance& inst, Int T,
                             const ExactLimits& limits = {});

}  // namespace peakpack
