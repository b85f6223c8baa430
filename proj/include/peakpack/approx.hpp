#pragma once

#include "peakpack/core.hpp"
#include "peakpack/rational.hpp"

namespace peakpack {

// Derived parameter bundle. For a target ratio of (5/3)(1+eps)-flavor
// guarantees the pipeline uses eps' = (3/5)eps for the near-optimal base
// schedule, gamma = (3/40)eps as the overflow container width fraction and
// w = (3/4)eps as the tall-width threshold of the first structured case.
struct EpsilonParams {
  Rat eps;
  Rat epsPrime;
  Rat gamma;
  Rat w;

  static EpsilonParams fromEps(const Rat& eps);  // requires 0 < eps <= 1/3
};

// Structured case 1: enough width is covered by jobs taller than (2/3)T.
// Requires w({e > (2/3)T}) >= (1 - w)D. Peak at most (5/3 + eps)T, asserted.
Schedule solveCase1(const Instance& inst, const Rat& T, const EpsilonParams& params);

// Structured case 2: jobs of width >= (3/4)D are taller than (2/3)T
// combined. Peak at most (5/3)T, asserted.
Schedule solveCase2(const Instance& inst, const Rat& T, const EpsilonParams& params);

enum class SolveBranch { Case1, Case2, Repack };

struct SolveResult {
  Schedule schedule;
  SolveBranch branch = SolveBranch::Repack;
  Rat tPrime;  // instance lower bound used for dispatch
  Int peak = 0;
};

// Full solver: dispatches to case 1, case 2, or the rescheduling pipeline
// (near-optimal base plus overflow container, then the container is folded
// back in). The returned schedule is complete and validated.
SolveResult solve(const Instance& inst, const Rat& eps);

}  // namespace peakpack
