#include "doctest.h"

#include <random>

#include "helpers.hpp"
#include "peakpack/bounds.hpp"
#include "peakpack/exact.hpp"

using namespace peakpack;
using testhelp::makeInst;
using testhelp::randomInst;

TEST_CASE("bounds on a single deadline-wide job") {
  // One job filling the whole horizon: every schedule has peak 5.
  Instance inst = makeInst(10, {{10, 5}});
  LowerBounds lb = lowerBound(inst);
  CHECK(lb.t1 == 5);
  CHECK(lb.t2 == 0);
  CHECK(lb.t3 == 5);
  CHECK(lb.t4 == 5);
  CHECK(lb.t == 5);
  CHECK(exactOpt(inst).peak == 5);
}

TEST_CASE("bounds on two overlapping wide jobs") {
  // Both jobs are wider than D/2, so they overlap in any schedule and the
  // stacked height 7 is already forced; T1 captures it.
  Instance inst = makeInst(10, {{6, 3}, {6, 4}});
  LowerBounds lb = lowerBound(inst);
  CHECK(lb.t1 == 7);
  CHECK(lb.t2 == 6);
  CHECK(lb.t3 == 4);
  CHECK(lb.t4 == Rat(11) / 2);
  CHECK(lb.t == 7);
  CHECK(exactOpt(inst).peak == 7);
}

TEST_CASE("bounds on three tall jobs that cannot spread out") {
  // Three jobs of energy 9 and width 4 in a deadline of 10: at most two fit
  // side by side, so two must overlap; T2 proves 18.
  Instance inst = makeInst(10, {{4, 9}, {4, 9}, {4, 9}});
  LowerBounds lb = lowerBound(inst);
  CHECK(lb.t1 == Rat(54) / 5);
  CHECK(lb.t2 == 18);
  CHECK(lb.t3 == 9);
  CHECK(lb.t4 == 9);
  CHECK(lb.t == 18);
  CHECK(exactOpt(inst).peak == 18);
}

TEST_CASE("bounds where the prefix argument wins") {
  // The tall narrow job must overlap the deadline-wide job; T3 adds their
  // heights.
  Instance inst = makeInst(10, {{2, 10}, {10, 4}});
  LowerBounds lb = lowerBound(inst);
  CHECK(lb.t1 == 10);
  CHECK(lb.t2 == 8);
  CHECK(lb.t3 == 14);
  CHECK(lb.t4 == 12);
  CHECK(lb.t == 14);
  CHECK(exactOpt(inst).peak == 14);
}

TEST_CASE("bounds where the halved wide heights win") {
  Instance inst = makeInst(10, {{2, 10}, {9, 4}, {9, 4}});
  LowerBounds lb = lowerBound(inst);
  CHECK(lb.t1 == 10);
  CHECK(lb.t2 == 12);
  CHECK(lb.t3 == 10);
  CHECK(lb.t4 == 14);
  CHECK(lb.t == 14);
  // The bound is not tight here: the optimum stacks all three jobs.
  CHECK(exactOpt(inst).peak == 18);
}

TEST_CASE("boundT2 scans 3n + 1 candidate values") {
  CHECK(t2CandidateCount(makeInst(10, {{10, 5}})) == 4);
  CHECK(t2CandidateCount(makeInst(10, {{6, 3}, {6, 4}})) == 7);
  CHECK(t2CandidateCount(makeInst(10, {{4, 9}, {4, 9}, {4, 9}})) == 10);
}

TEST_CASE("every bound is below the exact optimum on random instances") {
  std::mt19937_64 rng(4242);
  for (int iter = 0; iter < 100; ++iter) {
    Int n = 1 + static_cast<Int>(rng() % 6);
    Int deadline = 2 + static_cast<Int>(rng() % 9);
    Instance inst = randomInst(rng, n, deadline, 6);
    LowerBounds lb = lowerBound(inst);
    Rat opt = ratOf(exactOpt(inst).peak);
    CHECK(lb.t1 <= opt);
    CHECK(lb.t2 <= opt);
    CHECK(lb.t3 <= opt);
    CHECK(lb.t4 <= opt);
    CHECK(lb.t == std::max(std::max(lb.t1, lb.t2), std::max(lb.t3, lb.t4)));
  }
}
