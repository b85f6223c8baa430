#pragma once

#include <random>
#include <string>
#include <utility>
#include <vector>

#include "peakpack/core.hpp"

namespace peakpack::testhelp {

// Instance with jobs named a, b, c, ... built from (p, e) pairs.
inline Instance makeInst(Int deadline, const std::vector<std::pair<Int, Int>>& jobs) {
  Instance inst;
  inst.deadline = deadline;
  char name = 'a';
  for (const auto& [p, e] : jobs) inst.jobs.push_back({std::string(1, name++), p, e});
  return inst;
}

inline Schedule makeSched(const std::vector<std::pair<std::string, Int>>& starts) {
  Schedule sched;
  for (const auto& [id, start] : starts) sched.assignments.push_back({id, start});
  return sched;
}

// Uniform random instance: n jobs, widths in [1, deadline], energies in
// [1, maxEnergy], ids j0, j1, ...
inline Instance randomInst(std::mt19937_64& rng, Int n, Int deadline, Int maxEnergy) {
  Instance inst;
  inst.deadline = deadline;
  for (Int i = 0; i < n; ++i) {
    Int p = 1 + static_cast<Int>(rng() % static_cast<std::uint64_t>(deadline));
    Int e = 1 + static_cast<Int>(rng() % static_cast<std::uint64_t>(maxEnergy));
    inst.jobs.push_back({"j" + std::to_string(i), p, e});
  }
  return inst;
}

// Random complete schedule with every start drawn uniformly from [0, D - p].
inline Schedule randomSched(std::mt19937_64& rng, const Instance& inst) {
  Schedule sched;
  sched.algorithm = "random";
  for (const Job& j : inst.jobs) {
    Int room = inst.deadline - j.p;
    Int s = room > 0 ? static_cast<Int>(rng() % static_cast<std::uint64_t>(room + 1)) : 0;
    sched.assignments.push_back({j.id, s});
  }
  return sched;
}

}  // namespace peakpack::testhelp
