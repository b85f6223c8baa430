#include "peakpack/bounds.hpp"

#include <algorithm>
#include <set>
#include <vector>

#include "peakpack/errors.hpp"

namespace peakpack {

namespace {

// All threshold sets use strict comparison; this is the single place where
// that convention is encoded.
Int widthTallerThan(const Instance& inst, const Rat& thr) {
  Int w = 0;
  for (const Job& j : inst.jobs)
    if (Rat(j.e) > thr) w += j.p;
  return w;
}

bool t2Feasible(const Instance& inst, const Rat& T) {
  Int D = inst.deadline;
  if (widthTallerThan(inst, T / 3) + widthTallerThan(inst, T * 2 / 3) > 2 * D)
    return false;
  return widthTallerThan(inst, T / 2) <= D;
}

std::vector<const Job*> byEnergyDesc(const std::vector<const Job*>& jobs) {
  std::vector<const Job*> out = jobs;
  std::sort(out.begin(), out.end(), [](const Job* a, const Job* b) {
    if (a->e != b->e) return a->e > b->e;
    return a->id < b->id;
  });
  return out;
}

std::vector<const Job*> allJobs(const Instance& inst) {
  std::vector<const Job*> out;
  for (const Job& j : inst.jobs) out.push_back(&j);
  return out;
}

}  // namespace

Rat boundT1(const Instance& inst) {
  Rat best = maxEnergy(inst);
  best = std::max(best, Rat(totalArea(inst)) / inst.deadline);
  Int hWide = 0;
  for (const Job& j : inst.jobs)
    if (2 * j.p > inst.deadline) hWide += j.e;
  return std::max(best, Rat(hWide));
}

std::size_t t2CandidateCount(const Instance& inst) {
  return 3 * inst.jobs.size() + 1;
}

Rat boundT2(const Instance& inst) {
  std::vector<Rat> candidates;
  candidates.push_back(Rat(0));
  for (const Job& j : inst.jobs) {
    candidates.push_back(Rat(3 * j.e));       // leaves {e > T/3} at this T
    candidates.push_back(Rat(3 * j.e) / 2);   // leaves {e > 2T/3}
    candidates.push_back(Rat(2 * j.e));       // leaves {e > T/2}
  }
  bool found = false;
  Rat best = 0;
  for (const Rat& c : candidates) {
    if (!t2Feasible(inst, c)) continue;
    if (!found || c < best) {
      best = c;
      found = true;
    }
  }
  if (!found)
    throw InternalInvariant(
        "t2 candidate scan found no feasible value; 3*emax must be feasible");
  return best;
}

namespace {

// Shared prefix machinery for T3/T4. pool: jobs eligible for the prefix,
// already sorted by decreasing energy. wideThresholdHalf: when true the wide
// set uses max(D - w(prefix), D/2) as threshold (T4), else D - w(prefix)/2.
// subtractPrefix: whether prefix members are removed from the wide set.
// halfWide: whether the wide set's height counts half (T4).
Rat prefixBound(const Instance& inst, const std::vector<const Job*>& pool,
                bool thresholdWithHalfD, bool subtractPrefix, bool halfWide) {
  Int D = inst.deadline;
  Rat best = 0;
  Int prefixWidth = 0;
  std::set<std::string> prefixIds;
  for (std::size_t k = 0; k < pool.size(); ++k) {
    prefixWidth += pool[k]->p;
    prefixIds.insert(pool[k]->id);
    if (prefixWidth > D) break;  // widths only grow with k
    Int hk = pool[k]->e;         // smallest energy inside the prefix
    // threshold for "wide": w(j) > D - w(prefix)/2, or with T4's floor at D/2
    Rat threshold = thresholdWithHalfD
                        ? std::max(Rat(D - prefixWidth), Rat(D) / 2)
                        : Rat(2 * D - prefixWidth) / 2;
    Int hWide = 0;
    for (const Job& j : inst.jobs) {
      if (!(Rat(j.p) > threshold)) continue;
      if (prefixIds.count(j.id)) {
        if (!subtractPrefix)
          throw InternalInvariant(
              "wide set unexpectedly intersects the prefix for job " + j.id);
        continue;
      }
      hWide += j.e;
    }
    Rat wideTerm = halfWide ? Rat(hk) + Rat(hWide) / 2 : Rat(hk + hWide);
    Rat val = std::min(Rat(2 * hk), wideTerm);
    best = std::max(best, val);
  }
  return best;
}

}  // namespace

Rat boundT3(const Instance& inst) {
  auto sortedAll = byEnergyDesc(allJobs(inst));
  Rat a = prefixBound(inst, sortedAll, false, true, false);

  std::vector<const Job*> narrow;
  for (const Job& j : inst.jobs)
    if (2 * j.p <= inst.deadline) narrow.push_back(&j);
  // With prefixes drawn from {w <= D/2}, every wide-set member has
  // w > D - w(prefix)/2 >= D/2, so the sets are disjoint by construction and
  // prefixBound asserts exactly that.
  Rat b = prefixBound(inst, byEnergyDesc(narrow), false, false, false);
  return std::max(a, b);
}

Rat boundT4(const Instance& inst) {
  auto sortedAll = byEnergyDesc(allJobs(inst));
  return prefixBound(inst, sortedAll, true, true, true);
}

LowerBounds lowerBound(const Instance& inst) {
  LowerBounds lb;
  lb.t1 = boundT1(inst);
  lb.t2 = boundT2(inst);
  lb.t3 = boundT3(inst);
  lb.t4 = boundT4(inst);
  lb.t = std::max(std::max(lb.t1, lb.t2), std::max(lb.t3, lb.t4));
  return lb;
}

}  // namespace peakpack
