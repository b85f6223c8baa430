#include "doctest.h"

#include <random>
#include <vector>

#include "helpers.hpp"
#include "peakpack/bounds.hpp"
#include "peakpack/errors.hpp"
#include "peakpack/lshape.hpp"

using namespace peakpack;
using testhelp::makeInst;
using testhelp::randomInst;

TEST_CASE("lshapeSchedule stacks the sequence left and the wide jobs right") {
  Instance inst = makeInst(10, {{2, 10}, {2, 8}, {9, 4}});
  Schedule sched = lshapeSchedule(inst, {"a", "b"}, {"c"});
  // Sequence in decreasing energy at cumulative widths, wide jobs ending at
  // the deadline.
  CHECK(sched.startOf("a") == 0);
  CHECK(sched.startOf("b") == 2);
  CHECK(sched.startOf("c") == 1);
  // a and c overlap on [1,2): 10 + 4 = 14.
  CHECK(profileOf(inst, sched).peak() == 14);
}

TEST_CASE("lshapeSchedule covers exactly the two given sets") {
  Instance inst = makeInst(10, {{2, 10}, {2, 8}, {9, 4}, {1, 1}});
  Schedule sched = lshapeSchedule(inst, {"a", "b"}, {"c"});
  CHECK(sched.has("a"));
  CHECK(sched.has("b"));
  CHECK(sched.has("c"));
  CHECK(!sched.has("d"));
}

TEST_CASE("lshapeSchedule rejects bad set pairs") {
  Instance inst = makeInst(10, {{2, 10}, {2, 8}, {9, 4}});
  // Sets must be disjoint.
  CHECK_THROWS_AS(lshapeSchedule(inst, {"a", "b"}, {"a"}), PreconditionFailed);
  // Sequence widths 2 + 2 + 9 exceed the deadline.
  CHECK_THROWS_AS(lshapeSchedule(inst, {"a", "b", "c"}, {}), PreconditionFailed);
}

TEST_CASE("lshapeBoundCheck on the tall-plus-wide fixture") {
  Instance inst = makeInst(10, {{2, 10}, {2, 8}, {9, 4}});
  LShapeResult res = lshapeBoundCheck(inst);
  // Lower bound is 12 (the two tall jobs and the wide one cannot all avoid
  // each other), the sequence is everything taller than 6, the wide set just
  // the 9-wide job.
  REQUIRE(res.seq.size() == 2);
  CHECK(res.seq[0] == "a");
  CHECK(res.seq[1] == "b");
  REQUIRE(res.wide.size() == 1);
  CHECK(res.wide[0] == "c");
  CHECK(res.peak == 14);
  CHECK(res.bound == 14);  // T + h(wide)/2 = 12 + 2
  CHECK(Rat(res.peak) <= res.bound);
}

TEST_CASE("lshapeBoundCheck holds its bound on random instances") {
  std::mt19937_64 rng(515);
  for (int iter = 0; iter < 100; ++iter) {
    Int n = 1 + static_cast<Int>(rng() % 6);
    Int deadline = 2 + static_cast<Int>(rng() % 9);
    Instance inst = randomInst(rng, n, deadline, 6);
    LShapeResult res = lshapeBoundCheck(inst);
    CHECK(Rat(res.peak) <= res.bound);
    // bound = T + h(wide)/2 with T the instance lower bound
    Rat t = lowerBound(inst).t;
    Rat wideH = 0;
    for (const std::string& id : res.wide) wideH += inst.job(id).e;
    CHECK(res.bound == t + wideH / 2);
    for (const std::string& id : res.seq) CHECK(res.schedule.has(id));
    for (const std::string& id : res.wide) CHECK(res.schedule.has(id));
    CHECK(res.schedule.assignments.size() == res.seq.size() + res.wide.size());
  }
}
