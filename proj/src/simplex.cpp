#include "peakpack/simplex.hpp"

#include <cstddef>
#include <vector>

#include "peakpack/errors.hpp"

namespace peakpack {

// Phase-1 simplex on the tableau [A | I | b] with one artificial per row,
// minimizing the artificial sum. Bland's rule (smallest entering index,
// leaving row with the smallest basic index among minimal ratios) rules out
// cycling, and exact rationals rule out drift, so termination is
// unconditional. Artificials never re-enter once they leave.
LpSolution phase1Feasible(const std::vector<std::vector<Rat>>& A, const std::vector<Rat>& b) {
  const std::size_t m = A.size();
  if (b.size() != m) throw InvalidInput("b length does not match the row count");
  std::size_t n = 0;
  for (const auto& row : A) n = std::max(n, row.size());
  for (const auto& row : A)
    if (row.size() != n) throw InvalidInput("ragged constraint matrix");

  LpSolution sol;
  sol.x.assign(n, Rat(0));
  if (m == 0) {
    sol.feasible = true;
    return sol;
  }

  const std::size_t rhs = n + m;
  std::vector<std::vector<Rat>> tab(m, std::vector<Rat>(n + m + 1, Rat(0)));
  std::vector<int> basis(m);
  for (std::size_t i = 0; i < m; ++i) {
    bool flip = b[i] < 0;
    for (std::size_t j = 0; j < n; ++j) tab[i][j] = flip ? -A[i][j] : A[i][j];
    tab[i][n + i] = 1;
    tab[i][rhs] = flip ? -b[i] : b[i];
    basis[i] = static_cast<int>(n + i);
  }

  // Objective row for sum of artificials, expressed over the nonbasic
  // columns by subtracting every constraint row once.
  std::vector<Rat> z(n + m + 1, Rat(0));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j <= rhs; ++j)
      if (j < n || j == rhs) z[j] -= tab[i][j];

  auto pivot = [&](std::size_t row, std::size_t col) {
    Rat p = tab[row][col];
    for (std::size_t j = 0; j <= rhs; ++j) tab[row][j] /= p;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == row || tab[i][col] == 0) continue;
      Rat f = tab[i][col];
      for (std::size_t j = 0; j <= rhs; ++j) tab[i][j] -= f * tab[row][j];
    }
    if (z[col] != 0) {
      Rat f = z[col];
      for (std::size_t j = 0; j <= rhs; ++j) z[j] -= f * tab[row][j];
    }
    basis[row] = static_cast<int>(col);
  };

  while (true) {
    std::size_t enter = n;
    for (std::size_t j = 0; j < n; ++j)
      if (z[j] < 0) {
        enter = j;
        break;
      }
    if (enter == n) break;

    std::size_t leave = m;
    Rat best;
    for (std::size_t i = 0; i < m; ++i) {
      if (!(tab[i][enter] > 0)) continue;
      Rat ratio = tab[i][rhs] / tab[i][enter];
      if (leave == m || ratio < best ||
          (ratio == best && basis[i] < basis[leave])) {
        leave = i;
        best = ratio;
      }
    }
    if (leave == m)
      throw InternalInvariant("phase-1 objective is unbounded below");
    pivot(leave, enter);
  }

  if (-z[rhs] != 0) return sol;  // infeasible: artificials cannot reach zero

  // Drive leftover artificials out of the basis; a row with no original
  // coefficient left is redundant and keeps its artificial at value zero.
  for (std::size_t i = 0; i < m; ++i) {
    if (basis[i] < static_cast<int>(n)) continue;
    std::size_t col = n;
    for (std::size_t j = 0; j < n; ++j)
      if (tab[i][j] != 0) {
        col = j;
        break;
      }
    if (col == n) {
      basis[i] = -1;
      continue;
    }
    pivot(i, col);
  }

  sol.feasible = true;
  sol.basis = basis;
  for (std::size_t i = 0; i < m; ++i)
    if (basis[i] >= 0 && basis[i] < static_cast<int>(n))
      sol.x[static_cast<std::size_t>(basis[i])] = tab[i][rhs];
  return sol;
}

}  // namespace peakpack
