#pragma once

#include <vector>

#include "peakpack/rational.hpp"

namespace peakpack {

// Exact-rational feasibility solver for A x = b, x >= 0 (callers add slack
// columns for inequalities). Phase-1 simplex over an artificial basis with
// Bland's rule, so it terminates without cycling. On success x is a basic
// solution: at most A.size() entries are nonzero.
struct LpSolution {
  bool feasible = false;
  std::vector<Rat> x;
  std::vector<int> basis;  // column index per row, -1 for a leftover artificial at zero
};

LpSolution phase1Feasible(const std::vector<std::vector<Rat>>& A, const std::vector<Rat>& b);

}  // namespace peakpack
