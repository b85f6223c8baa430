#include "peakpack/core.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "peakpack/errors.hpp"

namespace peakpack {

bool Instance::has(const std::string& id) const {
  for (const Job& j : jobs)
    if (j.id == id) return true;
  return false;
}

const Job& Instance::job(const std::string& id) const {
  for (const Job& j : jobs)
    if (j.id == id) return j;
  throw InvalidInput("unknown job id: " + id);
}

void checkInstance(const Instance& inst) {
  if (inst.deadline < 1) throw InvalidInput("deadline must be >= 1");
  if (inst.jobs.empty()) throw InvalidInput("instance has no jobs");
  std::set<std::string> seen;
  for (const Job& j : inst.jobs) {
    if (j.id.empty()) throw InvalidInput("job with empty id");
    if (!seen.insert(j.id).second)
      throw InvalidInput("duplicate job id: " + j.id);
    if (j.p < 1) throw InvalidInput("job " + j.id + " has p < 1");
    if (j.e < 1) throw InvalidInput("job " + j.id + " has e < 1");
    if (j.p > inst.deadline)
      throw InvalidInput("job " + j.id + " does not fit before the deadline");
  }
}

Int maxEnergy(const Instance& inst) {
  Int m = 0;
  for (const Job& j : inst.jobs) m = std::max(m, j.e);
  return m;
}

Int maxWidth(const Instance& inst) {
  Int m = 0;
  for (const Job& j : inst.jobs) m = std::max(m, j.p);
  return m;
}

Int totalArea(const Instance& inst) {
  Int a = 0;
  for (const Job& j : inst.jobs) a += j.p * j.e;
  return a;
}

bool Schedule::has(const std::string& id) const {
  for (const Assignment& a : assignments)
    if (a.id == id) return true;
  return false;
}

Int Schedule::startOf(const std::string& id) const {
  for (const Assignment& a : assignments)
    if (a.id == id) return a.start;
  throw InvalidInput("no assignment for job id: " + id);
}

void Schedule::set(const std::string& id, Int start) {
  for (Assignment& a : assignments) {
    if (a.id == id) {
      a.start = start;
      return;
    }
  }
  assignments.push_back({id, start});
}

std::vector<Violation> validate(const Instance& inst, const Schedule& sched) {
  std::vector<Violation> out;
  std::set<std::string> seen;
  for (const Assignment& a : sched.assignments) {
    if (!inst.has(a.id)) {
      out.push_back({"unknown-job", a.id, "assignment for a job not in the instance"});
      continue;
    }
    if (!seen.insert(a.id).second) {
      out.push_back({"duplicate", a.id, "job assigned more than once"});
      continue;
    }
    const Job& j = inst.job(a.id);
    if (a.start < 0)
      out.push_back({"negative-start", a.id, "start " + std::to_string(a.start)});
    else if (a.start + j.p > inst.deadline)
      out.push_back({"deadline", a.id,
                     "completes at " + std::to_string(a.start + j.p) +
                         " > deadline " + std::to_string(inst.deadline)});
  }
  for (const Job& j : inst.jobs)
    if (!seen.count(j.id)) out.push_back({"missing", j.id, "job never assigned"});
  return out;
}

Int Profile::levelAt(Int t) const {
  Int level = 0;
  for (const auto& [bt, bl] : breakpoints) {
    if (bt > t) break;
    level = bl;
  }
  return level;
}

Int Profile::peak() const {
  Int m = 0;
  for (const auto& [bt, bl] : breakpoints) m = std::max(m, bl);
  return m;
}

Profile profileOf(const Instance& inst, const Schedule& sched) {
  std::map<Int, Int> delta;
  delta[0];  // force a breakpoint at time 0
  for (const Assignment& a : sched.assignments) {
    const Job& j = inst.job(a.id);
    delta[a.start] += j.e;
    delta[a.start + j.p] -= j.e;
  }
  Profile prof;
  Int level = 0;
  for (const auto& [t, d] : delta) {
    level += d;
    if (t < 0) continue;               // accumulate; measured from 0 onwards
    if (t >= inst.deadline) continue;  // domain is [0, deadline)
    if (!prof.breakpoints.empty() && prof.breakpoints.back().second == level)
      continue;
    prof.breakpoints.emplace_back(t, level);
  }
  if (prof.breakpoints.empty() || prof.breakpoints.front().first != 0)
    prof.breakpoints.insert(prof.breakpoints.begin(), {0, 0});
  return prof;
}

Int peakOf(const Instance& inst, const Schedule& sched) {
  auto violations = validate(inst, sched);
  if (!violations.empty())
    throw InvalidInput("invalid schedule: " + violations.front().kind + " (" +
                       violations.front().id + ")");
  return profileOf(inst, sched).peak();
}

Schedule mirrored(const Instance& inst, const Schedule& sched) {
  Schedule out = sched;
  for (Assignment& a : out.assignments) {
    const Job& j = inst.job(a.id);
    a.start = inst.deadline - j.p - a.start;
  }
  return out;
}

Rat RatProfile::levelAt(const Rat& t) const {
  Rat level = 0;
  for (const auto& [bt, bl] : steps) {
    if (bt > t) break;
    level = bl;
  }
  return level;
}

Rat RatProfile::peak() const {
  Rat m = 0;
  for (const auto& [bt, bl] : steps) m = std::max(m, bl);
  return m;
}

Rat RatProfile::maxOn(const Rat& lo, const Rat& hi) const {
  if (!(lo < hi)) return 0;
  Rat m = 0;
  for (std::size_t i = 0; i < steps.size(); ++i) {
    const Rat& t0 = steps[i].first;
    // step i holds on [t0, t1) where t1 is the next breakpoint (or beyond all
    // events, where the level is 0 anyway)
    if (t0 >= hi) break;
    bool lastStep = (i + 1 == steps.size());
    if (!lastStep && steps[i + 1].first <= lo) continue;
    m = std::max(m, steps[i].second);
  }
  return m;
}

RatProfile ratProfileOf(const std::vector<RatEvent>& events) {
  std::map<Rat, Rat> delta;
  delta[Rat(0)];
  for (const RatEvent& ev : events) {
    if (!(ev.start < ev.end)) continue;  // zero-length events carry no demand
    delta[ev.start] += ev.height;
    delta[ev.end] -= ev.height;
  }
  RatProfile prof;
  Rat level = 0;
  for (const auto& [t, d] : delta) {
    level += d;
    if (!prof.steps.empty() && prof.steps.back().second == level) continue;
    prof.steps.emplace_back(t, level);
  }
  return prof;
}

Schedule floorStarts(const Instance& inst, const std::string& algorithm,
                     const std::vector<RatAssignment>& starts) {
  Schedule sched;
  sched.algorithm = algorithm;
  for (const RatAssignment& ra : starts) {
    const Job& j = inst.job(ra.id);
    if (ra.start < 0 || ra.start + j.p > inst.deadline)
      throw InternalInvariant("fractional start of job " + ra.id +
                              " leaves [0, deadline]: " + ratToString(ra.start));
    sched.assignments.push_back({ra.id, floorRat(ra.start)});
  }
  sched.peak = peakOf(inst, sched);
  return sched;
}

}  // namespace peakpack
