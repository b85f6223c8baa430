#include "peakpack/approx.hpp"

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "peakpack/aeptas.hpp"
#include "peakpack/bounds.hpp"
#include "peakpack/errors.hpp"
#include "peakpack/packing.hpp"
#include "peakpack/repack.hpp"

namespace peakpack {

namespace {

// Shared order for energy-driven sequences: tallest first, ties by id.
void sortByEnergyDesc(std::vector<const Job*>& jobs) {
  std::sort(jobs.begin(), jobs.end(), [](const Job* a, const Job* b) {
    if (a->e != b->e) return a->e > b->e;
    return a->id < b->id;
  });
}

Rat ratPeakOf(const Instance& inst, const std::vector<RatAssignment>& starts) {
  std::vector<RatEvent> events;
  for (const RatAssignment& ra : starts) {
    const Job& j = inst.job(ra.id);
    events.push_back({ra.start, ra.start + j.p, ratOf(j.e)});
  }
  return ratProfileOf(events).peak();
}

// Checks the fractional schedule against the peak bound, floors it, and
// checks again. Coverage is verified up front so a bookkeeping slip surfaces
// as an invariant violation rather than a validation error.
Schedule finishFractional(const Instance& inst, const std::string& algorithm,
                          const std::vector<RatAssignment>& starts, const Rat& peakBound) {
  std::set<std::string> seen;
  for (const RatAssignment& ra : starts)
    if (!seen.insert(ra.id).second)
      throw InternalInvariant(algorithm + " placed job " + ra.id + " twice");
  for (const Job& j : inst.jobs)
    if (!seen.count(j.id))
      throw InternalInvariant(algorithm + " never placed job " + j.id);

  Rat frac = ratPeakOf(inst, starts);
  if (frac > peakBound)
    throw InternalInvariant(algorithm + " fractional peak " + ratToString(frac) +
                            " exceeds " + ratToString(peakBound));
  Schedule sched = floorStarts(inst, algorithm, starts);
  if (Rat(sched.peak) > peakBound)
    throw InternalInvariant(algorithm + " floored peak " + std::to_string(sched.peak) +
                            " exceeds " + ratToString(peakBound));
  return sched;
}

}  // namespace

EpsilonParams EpsilonParams::fromEps(const Rat& eps) {
  if (!(eps > 0) || eps > ratOf(1, 3))
    throw InvalidInput("eps must lie in (0, 1/3], got " + ratToString(eps));
  EpsilonParams p;
  p.eps = eps;
  p.epsPrime = eps * 3 / 5;
  p.gamma = eps * 3 / 40;
  p.w = eps * 3 / 4;
  return p;
}

Schedule solveCase1(const Instance& inst, const Rat& T, const EpsilonParams& params) {
  checkInstance(inst);
  const Int D = inst.deadline;
  const Rat& eps = params.eps;
  const Rat& w = params.w;

  Int tallWidth = 0;  // w({e > (2/3)T})
  for (const Job& j : inst.jobs)
    if (Rat(j.e) * 3 > T * 2) tallWidth += j.p;
  if (Rat(tallWidth) < (1 - w) * D)
    throw PreconditionFailed("jobs taller than (2/3)T cover width " + std::to_string(tallWidth) +
                             ", need at least (1-w)D = " + ratToString((1 - w) * D));
  Rat lb = lowerBound(inst).t;
  if (T < lb)
    throw PreconditionFailed("target " + ratToString(T) + " is below the instance lower bound " +
                             ratToString(lb));

  // Left-aligned sequence {e > T/2}, tallest first. These jobs pairwise
  // overlap in any schedule with peak T, and T is T2-feasible, so their
  // combined width cannot exceed the deadline.
  std::vector<const Job*> seq;
  std::set<std::string> placedWideOrSeq;
  for (const Job& j : inst.jobs)
    if (Rat(j.e) * 2 > T) {
      seq.push_back(&j);
      placedWideOrSeq.insert(j.id);
    }
  sortByEnergyDesc(seq);
  Int seqWidth = 0;
  for (const Job* j : seq) seqWidth += j->p;
  if (seqWidth > D)
    throw InternalInvariant("sequence of {e > T/2} jobs is wider than the deadline");

  std::vector<RatAssignment> starts;
  const Rat coverLine = (1 - 2 * w) * D;
  const Job* covering = nullptr;
  Int cursor = 0;
  for (const Job* j : seq) {
    starts.push_back({j->id, ratOf(cursor)});
    if (Rat(cursor) <= coverLine && coverLine < Rat(cursor + j->p)) covering = j;
    cursor += j->p;
  }
  // The tall jobs alone cover width at least (1-w)D > (1-2w)D and sort to
  // the front of the sequence, so the job over the line is itself tall.
  if (covering == nullptr)
    throw InternalInvariant("no sequence job covers the line (1-2w)D");
  if (!(Rat(covering->e) * 3 > T * 2))
    throw InternalInvariant("job covering (1-2w)D is not taller than (2/3)T");

  // Very wide jobs without a sequence slot are right-aligned at the deadline.
  Int hD = 0;  // h(I_D)
  for (const Job& j : inst.jobs) {
    if (placedWideOrSeq.count(j.id)) continue;
    if (Rat(j.p) > (ratOf(1, 2) + w) * D) {
      placedWideOrSeq.insert(j.id);
      hD += j.e;
      starts.push_back({j.id, ratOf(D - j.p)});
    }
  }

  // The covering job and all of I_D must coexist with peak T: the energy
  // prefix down to the covering job is wider than (1-2w)D, so I_D lies in
  // the wide set of the corresponding prefix bound, and doubling the
  // covering job alone would already exceed T. Hence T3 <= T forces the sum
  // below T, and rho = h(I_D)/T stays under 1/3.
  if (Rat(covering->e) + hD > T)
    throw InternalInvariant("h(covering) + h(I_D) exceeds T");
  Rat rho = Rat(hD) / T;
  if (rho > ratOf(1, 3)) throw InternalInvariant("rho = h(I_D)/T exceeds 1/3");

  // T2-feasibility of T gives w({e > T/3}) + w({e > (2/3)T}) <= 2D, so the
  // band (T/3, (2/3)T] is at most 2D - 2(1-w)D = 2wD wide.
  Int bandWideWidth = 0;
  for (const Job& j : inst.jobs)
    if (Rat(j.e) * 3 > T && !(Rat(j.e) * 3 > T * 2)) bandWideWidth += j.p;
  if (Rat(bandWideWidth) > 2 * w * D)
    throw InternalInvariant("band (T/3, (2/3)T] is wider than 2wD");

  const bool caseA = (eps <= rho / 2);
  const Rat bandLow = caseA ? T / 3 : (ratOf(2, 3) + eps - rho / 2) * T / 2;
  if (!caseA && bandLow < T / 3)
    throw InternalInvariant("case B band floor fell below T/3");
  if (caseA) {
    if (w * ratOf(4, 3) - rho * (w + ratOf(1, 2)) > eps * (1 + 2 * w))
      throw InternalInvariant("case A area inequality (4/3)w - rho(w+1/2) <= eps(1+2w) failed");
  } else {
    if ((ratOf(4, 3) - 2 * rho) * w - rho / 2 > eps)
      throw InternalInvariant("case B area inequality (4/3-2rho)w - rho/2 <= eps failed");
  }

  // Band jobs go right-aligned next to each other; everything else is
  // residual and bound for the Steinberg box.
  std::vector<const Job*> row;
  std::vector<const Job*> residual;
  for (const Job& j : inst.jobs) {
    if (placedWideOrSeq.count(j.id)) continue;
    if (Rat(j.e) > bandLow && !(Rat(j.e) * 2 > T))
      row.push_back(&j);
    else
      residual.push_back(&j);
  }
  sortByEnergyDesc(row);

  const Rat wMaxCap = (ratOf(1, 2) + w) * D;
  for (const Job* j : residual) {
    if (Rat(j->e) > bandLow)
      throw InternalInvariant("residual job " + j->id + " is taller than the band floor");
    if (Rat(j->p) > wMaxCap)
      throw InternalInvariant("residual job " + j->id + " is wider than (1/2+w)D");
  }

  Int rowWidth = 0;
  for (const Job* j : row) rowWidth += j->p;
  Rat lambda = Rat(rowWidth) / D;

  if (caseA) {
    // Here eps <= rho/2 <= 1/6, so (1/2+w)D <= (1-2w)D <= (1-lambda)D and no
    // residual job can be too wide for the box.
    for (const Job* j : residual)
      if (Rat(j->p) > (1 - lambda) * D)
        throw InternalInvariant("residual job " + j->id + " is wider than the box in case A");
  } else {
    // For eps > 2/9 a residual job can still be wider than (1-lambda)D. Such
    // a job is at most half the box height (its energy is at most the band
    // floor, which equals b/2), so appending it to the right-aligned row
    // keeps the area inequality intact; widest first so one pass settles the
    // monotone shrink of the box.
    std::sort(residual.begin(), residual.end(), [](const Job* a, const Job* b) {
      if (a->p != b->p) return a->p > b->p;
      return a->id < b->id;
    });
    std::vector<const Job*> keep;
    for (const Job* j : residual) {
      if (Rat(j->p) > (1 - lambda) * D) {
        row.push_back(j);
        rowWidth += j->p;
        lambda = Rat(rowWidth) / D;
      } else {
        keep.push_back(j);
      }
    }
    residual.swap(keep);
  }

  if (rowWidth > D)
    throw InternalInvariant("right-aligned row is wider than the deadline");
  Int rowCursor = D;
  for (const Job* j : row) {
    rowCursor -= j->p;
    starts.push_back({j->id, ratOf(rowCursor)});
  }

  const Rat a = (1 - lambda) * D;
  const Rat b = (ratOf(2, 3) - rho / 2 + eps) * T;
  std::vector<Rect> rects;
  for (const Job* j : residual) rects.push_back({j->id, ratOf(j->p), ratOf(j->e)});
  for (const RectPlacement& rp : steinbergPack(rects, {a, b}))
    starts.push_back({rp.id, rp.x});

  return finishFractional(inst, "case1", starts, (ratOf(5, 3) + eps) * T);
}

Schedule solveCase2(const Instance& inst, const Rat& T, const EpsilonParams&) {
  checkInstance(inst);
  const Int D = inst.deadline;

  Int veryWideHeight = 0;  // h({w >= (3/4)D})
  for (const Job& j : inst.jobs)
    if (Rat(j.p) * 4 >= Rat(D) * 3) veryWideHeight += j.e;
  if (!(Rat(veryWideHeight) * 3 > T * 2))
    throw PreconditionFailed("jobs at least (3/4)D wide stack to " +
                             std::to_string(veryWideHeight) + ", need more than (2/3)T = " +
                             ratToString(T * 2 / 3));
  Rat lb = lowerBound(inst).t;
  if (T < lb)
    throw PreconditionFailed("target " + ratToString(T) + " is below the instance lower bound " +
                             ratToString(lb));

  // All jobs wider than D/2 are right-aligned at the deadline.
  std::vector<RatAssignment> starts;
  std::set<std::string> placed;
  Int hD = 0;
  for (const Job& j : inst.jobs)
    if (2 * j.p > D) {
      placed.insert(j.id);
      hD += j.e;
      starts.push_back({j.id, ratOf(D - j.p)});
    }

  // h(I_D) = (2/3 + rho)T with rho in (0, 1/3]: above 2/3 because the jobs
  // at least (3/4)D wide are a subset, at most 1 because stacked wide jobs
  // are counted by the first lower bound.
  Rat rho = Rat(hD) / T - ratOf(2, 3);
  if (!(rho > 0)) throw InternalInvariant("h({w > D/2}) does not exceed (2/3)T");
  if (rho > ratOf(1, 3)) throw InternalInvariant("h({w > D/2}) exceeds T");

  // Left-aligned sequence {e > T/2} minus the wide jobs. A width above D/2
  // would force two of them past the midpoint alongside the very wide stack.
  std::vector<const Job*> seq;
  for (const Job& j : inst.jobs) {
    if (placed.count(j.id)) continue;
    if (Rat(j.e) * 2 > T) seq.push_back(&j);
  }
  sortByEnergyDesc(seq);
  Int seqWidth = 0;
  for (const Job* j : seq) {
    starts.push_back({j->id, ratOf(seqWidth)});
    placed.insert(j->id);
    seqWidth += j->p;
  }
  Rat lambda = Rat(seqWidth) / D;
  if (lambda > ratOf(1, 2)) throw InternalInvariant("w(seq) exceeds D/2");

  // Residual jobs: at most T/2 tall and D/2 wide by construction, with area
  // at most (1/2 - rho/2 - lambda/2)DT by subtracting the three placed
  // groups from the total area bound DT.
  std::vector<const Job*> residual;
  Rat resArea = 0;
  for (const Job& j : inst.jobs) {
    if (placed.count(j.id)) continue;
    if (Rat(j.e) * 2 > T)
      throw InternalInvariant("residual job " + j.id + " is taller than T/2");
    if (2 * j.p > D)
      throw InternalInvariant("residual job " + j.id + " is wider than D/2");
    residual.push_back(&j);
    resArea += Rat(j.p) * j.e;
  }
  if (resArea > (ratOf(1, 2) - rho / 2 - lambda / 2) * D * T)
    throw InternalInvariant("residual area exceeds (1/2 - rho/2 - lambda/2)DT");

  const Rat a = (1 - lambda) * D;
  const Rat b = (1 - rho) * T;
  if (b * 2 < T) throw InternalInvariant("box height (1-rho)T fell below T/2");

  std::vector<Rect> rects;
  for (const Job* j : residual) rects.push_back({j->id, ratOf(j->p), ratOf(j->e)});
  for (const RectPlacement& rp : steinbergPack(rects, {a, b}))
    starts.push_back({rp.id, Rat(seqWidth) + rp.x});

  return finishFractional(inst, "case2", starts, T * 5 / 3);
}

SolveResult solve(const Instance& inst, const Rat& eps) {
  checkInstance(inst);
  EpsilonParams params = EpsilonParams::fromEps(eps);
  const Int D = inst.deadline;

  SolveResult res;
  res.tPrime = lowerBound(inst).t;

  Int tallWidth = 0;
  Int veryWideHeight = 0;
  for (const Job& j : inst.jobs) {
    if (Rat(j.e) * 3 > res.tPrime * 2) tallWidth += j.p;
    if (Rat(j.p) * 4 >= Rat(D) * 3) veryWideHeight += j.e;
  }

  if (Rat(tallWidth) >= (1 - params.w) * D) {
    res.branch = SolveBranch::Case1;
    res.schedule = solveCase1(inst, res.tPrime, params);
  } else if (Rat(veryWideHeight) * 3 > res.tPrime * 2) {
    res.branch = SolveBranch::Case2;
    res.schedule = solveCase2(inst, res.tPrime, params);
  } else {
    res.branch = SolveBranch::Repack;
    LiteResult lite = scheduleLite(inst, eps, OverflowVariant::C1);
    // The repacking target must dominate the base peak, the lower bound and
    // (when the container is nonempty) the container's height budget, which
    // can stand slightly above the ladder rung that produced it.
    Rat target = std::max(Rat(lite.base.peak), res.tPrime);
    if (!lite.overflow.contents.assignments.empty())
      target = std::max(target, lite.overflow.heightBudget);
    res.schedule = repack(inst, lite.base, target, lite.overflow, params);
  }
  res.peak = res.schedule.peak;
  return res;
}

}  // namespace peakpack
