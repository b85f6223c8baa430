#pragma once

#include <string>
#include <vector>

#include "peakpack/rational.hpp"

namespace peakpack {

// A job needs its machine exclusively for p consecutive time units and draws a
// constant e units of power while running. Only the start time is a decision;
// vertical position in the demand profile is immaterial.
struct Job {
  std::string id;
  Int p = 0;  // processing time (width)
  Int e = 0;  // energy demand per unit time (height)
};

struct Instance {
  Int deadline = 0;
  std::vector<Job> jobs;

  bool has(const std::string& id) const;
  const Job& job(const std::string& id) const;  // throws InvalidInput
};

// Throws InvalidInput unless: deadline >= 1, at least one job, all ids unique
// and non-empty, every p in [1, deadline], every e >= 1.
void checkInstance(const Instance& inst);

Int maxEnergy(const Instance& inst);
Int maxWidth(const Instance& inst);
Int totalArea(const Instance& inst);  // sum of p*e

struct Assignment {
  std::string id;
  Int start = 0;
};

struct Schedule {
  std::string algorithm;
  Int peak = 0;  // filled when measured or loaded; not trusted by validate
  std::vector<Assignment> assignments;

  bool has(const std::string& id) const;
  Int startOf(const std::string& id) const;  // throws InvalidInput
  void set(const std::string& id, Int start);
};

struct Violation {
  std::string kind;  // "unknown-job" | "duplicate" | "missing" | "negative-start" | "deadline"
  std::string id;
  std::string detail;
};

// Structural check of a complete schedule against an instance. Violations are
// returned as data; nothing throws here.
std::vector<Violation> validate(const Instance& inst, const Schedule& sched);

// Integer demand profile over [0, deadline), piecewise constant. Breakpoints
// carry (time, level) with strictly increasing times and the first time 0.
struct Profile {
  std::vector<std::pair<Int, Int>> breakpoints;

  Int levelAt(Int t) const;
  Int peak() const;
};

// Profile of the whole schedule; assignments may cover a subset of the
// instance (partial schedules are a first-class object here).
Profile profileOf(const Instance& inst, const Schedule& sched);

// Peak demand of a schedule covering the whole instance. Throws InvalidInput
// if validate() reports anything.
Int peakOf(const Instance& inst, const Schedule& sched);

// Mirror in time: sigma'(j) = deadline - p(j) - sigma(j). An involution that
// preserves the multiset of overlaps, hence the peak.
Schedule mirrored(const Instance& inst, const Schedule& sched);

// Rational-time demand profile used by the analyses that place containers at
// fractional offsets before the final flooring step.
struct RatEvent {
  Rat start;
  Rat end;
  Rat height;
};

struct RatProfile {
  // steps[i] = (t_i, level on [t_i, t_{i+1})); last level runs to infinity
  // conceptually but every event is bounded, so the level beyond the final
  // breakpoint is 0.
  std::vector<std::pair<Rat, Rat>> steps;

  Rat levelAt(const Rat& t) const;
  Rat peak() const;
  // Max level over [lo, hi); equals the max over the open interval because
  // steps have positive length. Returns 0 when lo >= hi.
  Rat maxOn(const Rat& lo, const Rat& hi) const;
};

RatProfile ratProfileOf(const std::vector<RatEvent>& events);

// A placement at a rational start; the last step of every fractional
// construction floors these to integers.
struct RatAssignment {
  std::string id;
  Rat start;
};

// Floors every start. With integer processing times this never raises the
// peak: a job active at integer time t after flooring has its fractional
// start in [t - p + 1, t + 1) and hence completes at or after t + 1, so all
// jobs counted at t are simultaneously active just before t + 1 in the
// fractional schedule. Starts must cover the instance exactly; the result is
// validated and carries its measured peak.
Schedule floorStarts(const Instance& inst, const std::string& algorithm,
                     const std::vector<RatAssignment>& starts);

}  // namespace peakpack
