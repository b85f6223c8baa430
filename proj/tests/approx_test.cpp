#include "doctest.h"

#include <algorithm>
#include <random>
#include <vector>

#include "helpers.hpp"
#include "peakpack/approx.hpp"
#include "peakpack/bounds.hpp"
#include "peakpack/errors.hpp"
#include "peakpack/exact.hpp"

using namespace peakpack;
using testhelp::makeInst;
using testhelp::randomInst;

TEST_CASE("EpsilonParams derives the dependent parameters") {
  EpsilonParams p = EpsilonParams::fromEps(Rat(1) / 3);
  CHECK(p.eps == Rat(1) / 3);
  CHECK(p.epsPrime == Rat(1) / 5);
  CHECK(p.gamma == Rat(1) / 40);
  CHECK(p.w == Rat(1) / 4);
}

TEST_CASE("EpsilonParams rejects eps outside (0, 1/3]") {
  CHECK_THROWS_AS(EpsilonParams::fromEps(Rat(0)), InvalidInput);
  CHECK_THROWS_AS(EpsilonParams::fromEps(Rat(-1) / 3), InvalidInput);
  CHECK_THROWS_AS(EpsilonParams::fromEps(Rat(1) / 2), InvalidInput);
  CHECK_NOTHROW(EpsilonParams::fromEps(Rat(1) / 3));
  CHECK_NOTHROW(EpsilonParams::fromEps(Rat(1) / 100));
}

TEST_CASE("solveCase1 chains four tall jobs back to back") {
  // All width is covered by jobs taller than (2/3)*9 = 6, so case 1 applies
  // at the lower bound 9 and the jobs simply line up.
  Instance inst = makeInst(12, {{3, 9}, {3, 9}, {3, 9}, {3, 9}});
  CHECK(lowerBound(inst).t == 9);
  EpsilonParams params = EpsilonParams::fromEps(Rat(1) / 3);
  Schedule sched = solveCase1(inst, Rat(9), params);
  CHECK(validate(inst, sched).empty());
  CHECK(peakOf(inst, sched) == 9);
  std::vector<Int> starts;
  for (const Assignment& a : sched.assignments) starts.push_back(a.start);
  std::sort(starts.begin(), starts.end());
  CHECK(starts == std::vector<Int>{0, 3, 6, 9});
}

TEST_CASE("solveCase1 rejects targets whose tall set is too narrow") {
  Instance inst = makeInst(12, {{3, 9}, {3, 9}, {3, 9}, {3, 9}});
  EpsilonParams params = EpsilonParams::fromEps(Rat(1) / 3);
  // At T = 27/2 nothing is taller than (2/3)T = 9, so the tall width is 0.
  CHECK_THROWS_AS(solveCase1(inst, Rat(27) / 2, params), PreconditionFailed);
}

TEST_CASE("solveCase2 interleaves the wide tall block") {
  // Both jobs have width >= (3/4)*8 = 6 and combined energy 6 > (2/3)*6.
  Instance inst = makeInst(8, {{6, 3}, {7, 3}});
  CHECK(lowerBound(inst).t == 6);
  EpsilonParams params = EpsilonParams::fromEps(Rat(1) / 3);
  Schedule sched = solveCase2(inst, Rat(6), params);
  CHECK(validate(inst, sched).empty());
  CHECK(peakOf(inst, sched) == 6);
  CHECK(exactOpt(inst).peak == 6);
}

TEST_CASE("solveCase2 rejects instances without the wide tall mass") {
  Instance inst = makeInst(10, {{6, 3}, {6, 4}});
  EpsilonParams params = EpsilonParams::fromEps(Rat(1) / 3);
  // No job reaches width (3/4)*10, so the case-2 hypothesis is empty.
  CHECK_THROWS_AS(solveCase2(inst, Rat(7), params), PreconditionFailed);
}

TEST_CASE("solve dispatches case 1 on the tall chain") {
  Instance inst = makeInst(12, {{3, 9}, {3, 9}, {3, 9}, {3, 9}});
  SolveResult res = solve(inst, Rat(1) / 3);
  CHECK(res.branch == SolveBranch::Case1);
  CHECK(res.tPrime == 9);
  CHECK(res.peak == 9);
  CHECK(validate(inst, res.schedule).empty());
}

TEST_CASE("solve dispatches case 2 on the wide tall pair") {
  Instance inst = makeInst(8, {{6, 3}, {7, 3}});
  SolveResult res = solve(inst, Rat(1) / 3);
  CHECK(res.branch == SolveBranch::Case2);
  CHECK(res.tPrime == 6);
  CHECK(res.peak == 6);
  CHECK(validate(inst, res.schedule).empty());
}

TEST_CASE("solve falls back to the repacking pipeline elsewhere") {
  Instance inst = makeInst(10, {{6, 3}, {6, 4}});
  SolveResult res = solve(inst, Rat(1) / 3);
  CHECK(res.branch == SolveBranch::Repack);
  CHECK(res.tPrime == 7);
  CHECK(res.peak == 7);
  CHECK(validate(inst, res.schedule).empty());
  CHECK(peakOf(inst, res.schedule) == res.peak);
}

TEST_CASE("solve rejects eps outside the supported range") {
  Instance inst = makeInst(10, {{6, 3}, {6, 4}});
  CHECK_THROWS_AS(solve(inst, Rat(1) / 2), InvalidInput);
  CHECK_THROWS_AS(solve(inst, Rat(0)), InvalidInput);
}

TEST_CASE("solve keeps the approximation ratio on random instances") {
  std::mt19937_64 rng(1234);
  for (int iter = 0; iter < 30; ++iter) {
    Int n = 1 + static_cast<Int>(rng() % 6);
    Int deadline = 2 + static_cast<Int>(rng() % 9);
    Instance inst = randomInst(rng, n, deadline, 6);
    Int opt = exactOpt(inst).peak;
    SolveResult res = solve(inst, Rat(1) / 3);
    CHECK(validate(inst, res.schedule).empty());
    CHECK(res.peak >= opt);
    // 5/3 + 1/3 = 2
    CHECK(Rat(res.peak) <= Rat(2) * opt);
    CHECK(res.tPrime <= opt);
  }
}
