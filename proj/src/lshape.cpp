#include "peakpack/lshape.hpp"

#include <algorithm>
#include <set>

#include "peakpack/bounds.hpp"
#include "peakpack/errors.hpp"

namespace peakpack {

Schedule lshapeSchedule(const Instance& inst,
                        const std::vector<std::string>& seqIds,
                        const std::vector<std::string>& wideIds) {
  std::set<std::string> seqSet(seqIds.begin(), seqIds.end());
  for (const std::string& id : wideIds)
    if (seqSet.count(id))
      throw PreconditionFailed("job " + id + " appears in both seq and wide");

  std::vector<const Job*> seq;
  for (const std::string& id : seqIds) seq.push_back(&inst.job(id));
  std::sort(seq.begin(), seq.end(), [](const Job* a, const Job* b) {
    if (a->e != b->e) return a->e > b->e;
    return a->id < b->id;
  });
  Int width = 0;
  for (const Job* j : seq) width += j->p;
  if (width > inst.deadline)
    throw PreconditionFailed("seq jobs are wider than the deadline combined");

  Schedule sched;
  sched.algorithm = "lshape";
  Int cursor = 0;
  for (const Job* j : seq) {
    sched.assignments.push_back({j->id, cursor});
    cursor += j->p;
  }
  for (const std::string& id : wideIds) {
    const Job& j = inst.job(id);
    sched.assignments.push_back({id, inst.deadline - j.p});
  }
  return sched;
}

LShapeResult lshapeBoundCheck(const Instance& inst) {
  checkInstance(inst);
  Rat T = lowerBound(inst).t;

  LShapeResult res;
  Int wideHeight = 0;
  Int seqWidth = 0;
  for (const Job& j : inst.jobs) {
    if (Rat(2 * j.e) > T) {
      res.seq.push_back(j.id);
      seqWidth += j.p;
    } else if (2 * j.p > inst.deadline) {
      res.wide.push_back(j.id);
      wideHeight += j.e;
    }
  }
  // Jobs with e > T/2 pairwise overlap in any schedule (their total width
  // would otherwise violate the T2 condition at T), so their widths fit the
  // deadline; anything else is an arithmetic bug, not a bad input.
  if (seqWidth > inst.deadline)
    throw InternalInvariant("seq of {e > T/2} jobs exceeds the deadline");

  res.schedule = lshapeSchedule(inst, res.seq, res.wide);
  res.peak = profileOf(inst, res.schedule).peak();
  res.bound = T + Rat(wideHeight) / 2;
  if (Rat(res.peak) > res.bound)
    throw InternalInvariant("L-shape peak exceeds T + h(wide)/2");
  return res;
}

}  // namespace peakpack
