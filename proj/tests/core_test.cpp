#include "doctest.h"

#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include "helpers.hpp"
#include "peakpack/core.hpp"
#include "peakpack/errors.hpp"

using namespace peakpack;
using testhelp::makeInst;
using testhelp::makeSched;
using testhelp::randomInst;
using testhelp::randomSched;

namespace {

bool hasKind(const std::vector<Violation>& violations, const std::string& kind) {
  return std::any_of(violations.begin(), violations.end(),
                     [&](const Violation& v) { return v.kind == kind; });
}

}  // namespace

TEST_CASE("checkInstance accepts a well-formed instance") {
  Instance inst = makeInst(10, {{6, 3}, {6, 4}});
  CHECK_NOTHROW(checkInstance(inst));
  CHECK(maxEnergy(inst) == 4);
  CHECK(maxWidth(inst) == 6);
  CHECK(totalArea(inst) == 6 * 3 + 6 * 4);
}

TEST_CASE("checkInstance rejects malformed instances") {
  Instance base = makeInst(10, {{6, 3}, {6, 4}});

  Instance noJobs = base;
  noJobs.jobs.clear();
  CHECK_THROWS_AS(checkInstance(noJobs), InvalidInput);

  Instance badDeadline = base;
  badDeadline.deadline = 0;
  CHECK_THROWS_AS(checkInstance(badDeadline), InvalidInput);

  Instance dupIds = base;
  dupIds.jobs[1].id = "a";
  CHECK_THROWS_AS(checkInstance(dupIds), InvalidInput);

  Instance emptyId = base;
  emptyId.jobs[0].id = "";
  CHECK_THROWS_AS(checkInstance(emptyId), InvalidInput);

  Instance zeroWidth = base;
  zeroWidth.jobs[0].p = 0;
  CHECK_THROWS_AS(checkInstance(zeroWidth), InvalidInput);

  Instance tooWide = base;
  tooWide.jobs[0].p = 11;
  CHECK_THROWS_AS(checkInstance(tooWide), InvalidInput);

  Instance zeroEnergy = base;
  zeroEnergy.jobs[1].e = 0;
  CHECK_THROWS_AS(checkInstance(zeroEnergy), InvalidInput);
}

TEST_CASE("Instance and Schedule lookups throw on unknown ids") {
  Instance inst = makeInst(10, {{6, 3}});
  CHECK(inst.has("a"));
  CHECK(!inst.has("z"));
  CHECK_THROWS_AS(inst.job("z"), InvalidInput);

  Schedule sched = makeSched({{"a", 0}});
  CHECK(sched.has("a"));
  CHECK(sched.startOf("a") == 0);
  CHECK_THROWS_AS(sched.startOf("z"), InvalidInput);
  sched.set("a", 3);
  CHECK(sched.startOf("a") == 3);
}

TEST_CASE("profileOf measures the overlap structure") {
  // a covers [0,6) at energy 3, b covers [4,10) at energy 4; they overlap on
  // [4,6) where the load is 7.
  Instance inst = makeInst(10, {{6, 3}, {6, 4}});
  Schedule sched = makeSched({{"a", 0}, {"b", 4}});
  Profile prof = profileOf(inst, sched);
  CHECK(prof.levelAt(0) == 3);
  CHECK(prof.levelAt(3) == 3);
  CHECK(prof.levelAt(4) == 7);
  CHECK(prof.levelAt(5) == 7);
  CHECK(prof.levelAt(6) == 4);
  CHECK(prof.levelAt(9) == 4);
  CHECK(prof.peak() == 7);
  CHECK(peakOf(inst, sched) == 7);
}

TEST_CASE("profileOf accepts partial schedules but peakOf does not") {
  Instance inst = makeInst(10, {{6, 3}, {6, 4}});
  Schedule partial = makeSched({{"a", 0}});
  CHECK(profileOf(inst, partial).peak() == 3);
  CHECK_THROWS_AS(peakOf(inst, partial), InvalidInput);
}

TEST_CASE("validate reports each violation kind") {
  Instance inst = makeInst(10, {{6, 3}, {6, 4}});

  CHECK(validate(inst, makeSched({{"a", 0}, {"b", 4}})).empty());
  CHECK(hasKind(validate(inst, makeSched({{"a", 0}, {"b", 4}, {"z", 0}})), "unknown-job"));
  CHECK(hasKind(validate(inst, makeSched({{"a", 0}, {"a", 1}, {"b", 4}})), "duplicate"));
  CHECK(hasKind(validate(inst, makeSched({{"a", 0}})), "missing"));
  CHECK(hasKind(validate(inst, makeSched({{"a", -1}, {"b", 4}})), "negative-start"));
  // a starting at 5 completes at 11, one unit past the deadline
  CHECK(hasKind(validate(inst, makeSched({{"a", 5}, {"b", 4}})), "deadline"));
}

TEST_CASE("mirrored reflects starts and preserves the peak") {
  Instance inst = makeInst(10, {{6, 3}, {6, 4}});
  Schedule sched = makeSched({{"a", 0}, {"b", 4}});
  Schedule mir = mirrored(inst, sched);
  // sigma'(j) = D - p - sigma: a -> 10-6-0 = 4, b -> 10-6-4 = 0
  CHECK(mir.startOf("a") == 4);
  CHECK(mir.startOf("b") == 0);
  CHECK(peakOf(inst, mir) == 7);

  Schedule twice = mirrored(inst, mir);
  CHECK(twice.startOf("a") == 0);
  CHECK(twice.startOf("b") == 4);
}

TEST_CASE("mirrored is a peak-preserving involution on random schedules") {
  std::mt19937_64 rng(2024);
  for (int iter = 0; iter < 50; ++iter) {
    Int n = 1 + static_cast<Int>(rng() % 5);
    Int deadline = 2 + static_cast<Int>(rng() % 11);
    Instance inst = randomInst(rng, n, deadline, 6);
    Schedule sched = randomSched(rng, inst);
    Schedule mir = mirrored(inst, sched);
    CHECK(validate(inst, mir).empty());
    CHECK(peakOf(inst, mir) == peakOf(inst, sched));
    Schedule twice = mirrored(inst, mir);
    for (const Job& j : inst.jobs) CHECK(twice.startOf(j.id) == sched.startOf(j.id));
  }
}

TEST_CASE("RatProfile levelAt, peak and maxOn") {
  std::vector<RatEvent> events = {
      {Rat(0), Rat(2), Rat(1) / 2},
      {Rat(1), Rat(3), Rat(1) / 3},
  };
  RatProfile prof = ratProfileOf(events);
  // levels: 1/2 on [0,1), 5/6 on [1,2), 1/3 on [2,3), 0 afterwards
  CHECK(prof.levelAt(Rat(1) / 2) == Rat(1) / 2);
  CHECK(prof.levelAt(Rat(1)) == Rat(5) / 6);
  CHECK(prof.levelAt(Rat(2)) == Rat(1) / 3);
  CHECK(prof.levelAt(Rat(3)) == 0);
  CHECK(prof.peak() == Rat(5) / 6);
  CHECK(prof.maxOn(Rat(0), Rat(1)) == Rat(1) / 2);
  CHECK(prof.maxOn(Rat(1) / 2, Rat(5) / 2) == Rat(5) / 6);
  CHECK(prof.maxOn(Rat(2), Rat(3)) == Rat(1) / 3);
  CHECK(prof.maxOn(Rat(3), Rat(4)) == 0);
  CHECK(prof.maxOn(Rat(1), Rat(1)) == 0);

  RatProfile empty = ratProfileOf({});
  CHECK(empty.peak() == 0);
  CHECK(empty.levelAt(Rat(0)) == 0);
}

TEST_CASE("floorStarts floors without raising the peak") {
  // Fractional: a on [1/2, 7/2), b on [5/2, 11/2), overlapping on [5/2, 7/2)
  // at level 5. Floored: a@0 on [0,3), b@2 on [2,5), overlapping on [2,3).
  Instance inst = makeInst(10, {{3, 2}, {3, 3}});
  std::vector<RatAssignment> starts = {{"a", Rat(1) / 2}, {"b", Rat(5) / 2}};
  Schedule sched = floorStarts(inst, "floored", starts);
  CHECK(sched.startOf("a") == 0);
  CHECK(sched.startOf("b") == 2);
  CHECK(sched.peak == 5);
  CHECK(sched.algorithm == "floored");
}

TEST_CASE("floorStarts rejects out-of-range and incomplete inputs") {
  Instance inst = makeInst(10, {{3, 2}, {3, 3}});
  std::vector<RatAssignment> tooLate = {{"a", Rat(8)}, {"b", Rat(0)}};
  CHECK_THROWS_AS(floorStarts(inst, "x", tooLate), InternalInvariant);
  std::vector<RatAssignment> negative = {{"a", Rat(-1) / 2}, {"b", Rat(0)}};
  CHECK_THROWS_AS(floorStarts(inst, "x", negative), InternalInvariant);
  std::vector<RatAssignment> missing = {{"a", Rat(0)}};
  CHECK_THROWS_AS(floorStarts(inst, "x", missing), InvalidInput);
}

TEST_CASE("floorStarts never exceeds the fractional peak on random inputs") {
  std::mt19937_64 rng(77);
  for (int iter = 0; iter < 100; ++iter) {
    Int n = 1 + static_cast<Int>(rng() % 5);
    Int deadline = 2 + static_cast<Int>(rng() % 9);
    Instance inst = randomInst(rng, n, deadline, 6);
    std::vector<RatAssignment> starts;
    std::vector<RatEvent> events;
    for (const Job& j : inst.jobs) {
      // random start in [0, D - p] on a quarter-unit grid
      Int room = 4 * (deadline - j.p);
      Rat s = room > 0 ? Rat(static_cast<Int>(rng() % static_cast<std::uint64_t>(room + 1))) / 4
                       : Rat(0);
      starts.push_back({j.id, s});
      events.push_back({s, s + j.p, ratOf(j.e)});
    }
    Rat fracPeak = ratProfileOf(events).peak();
    Schedule sched = floorStarts(inst, "floored", starts);
    CHECK(Rat(sched.peak) <= fracPeak);
    CHECK(validate(inst, sched).empty());
  }
}
