#pragma once

#include <string>
#include <vector>

#include "peakpack/core.hpp"
#include "peakpack/rational.hpp"

namespace peakpack {

// Places seq jobs left-aligned at cumulative widths in order of decreasing
// energy (ties by id) and wide jobs right-aligned at deadline - p. Returns a
// partial schedule covering exactly seq + wide. Throws PreconditionFailed if
// the two sets intersect or the seq widths exceed the deadline.
Schedule lshapeSchedule(const Instance& inst,
                        const std::vector<std::string>& seqIds,
                        const std::vector<std::string>& wideIds);

struct LShapeResult {
  Schedule schedule;              // partial: seq + wide only
  std::vector<std::string> seq;   // {e > T/2}, T = lower bound
  std::vector<std::string> wide;  // {p > D/2} \ seq
  Int peak = 0;                   // measured peak of the partial schedule
  Rat bound;                      // T + h(wide)/2
};

// Builds the L-shaped arrangement for seq = {e > T/2} and wide = {p > D/2}
// minus seq, with T the instance lower bound, and asserts the measured peak
// is at most T + h(wide)/2 (which is at most 3/2 of the optimum).
LShapeResult lshapeBoundCheck(const Instance& inst);

}  // namespace peakpack
