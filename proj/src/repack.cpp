#include "peakpack/repack.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "peakpack/bounds.hpp"
#include "peakpack/errors.hpp"
#include "peakpack/packing.hpp"

namespace peakpack {

Rat Container::usedWidth(const Instance& inst) const {
  Rat used = 0;
  for (const Assignment& a : contents.assignments)
    used = std::max(used, Rat(a.start + inst.job(a.id).p));
  return used;
}

Int Container::contentsPeak(const Instance& inst) const {
  if (contents.assignments.empty()) return 0;
  return profileOf(inst, contents).peak();
}

std::vector<Segment> splitSegments(Int deadline, const Rat& gamma) {
  const Rat D = ratOf(deadline);
  const std::vector<Rat> tau = {
      D / 8,
      (15 - 24 * gamma) * D / 64,
      (9 + 11 * gamma) * D / 32,
      (3 + 2 * gamma) * D / 8,
      D / 2,
  };
  std::vector<Segment> segs;
  Rat prev = 0;
  for (int i = 0; i < 5; ++i) {
    segs.push_back({i + 1, false, prev, tau[i]});
    prev = tau[i];
  }
  for (int i = 4; i >= 0; --i) {
    Rat hi = (i == 0) ? D : D - tau[i - 1];
    segs.push_back({i + 1, true, D - tau[i], hi});
  }
  return segs;
}

bool isHugeEnergy(Int e, const Rat& T) { return Rat(e) * 3 > T * 2; }

std::optional<std::string> findMediumJob(const Instance& inst, const Schedule& base,
                                         const Rat& T, const Rat& gamma) {
  const Rat D = ratOf(inst.deadline);
  std::vector<std::string> ids;
  for (const Assignment& a : base.assignments) ids.push_back(a.id);
  std::sort(ids.begin(), ids.end());
  for (const std::string& id : ids) {
    const Job& j = inst.job(id);
    if (Rat(j.p) >= gamma * D && Rat(j.p) <= (1 - 2 * gamma) * D &&
        Rat(j.e) * 3 >= T && Rat(j.e) * 3 <= T * 2)
      return id;
  }
  return std::nullopt;
}

namespace {

struct HugePos {
  const Job* job;
  Int start;
  Int end;
};

std::vector<HugePos> hugeJobs(const Instance& inst, const Schedule& sched, const Rat& T) {
  std::vector<HugePos> huges;
  for (const Assignment& a : sched.assignments) {
    const Job& j = inst.job(a.id);
    if (isHugeEnergy(j.e, T)) huges.push_back({&j, a.start, a.start + j.p});
  }
  std::sort(huges.begin(), huges.end(), [](const HugePos& a, const HugePos& b) {
    if (a.start != b.start) return a.start < b.start;
    return a.job->id < b.job->id;
  });
  return huges;
}

// Time inside [lo, hi) not covered by any huge job. Two huge jobs can never
// run concurrently under peak T (together they would exceed (4/3)T), so
// summing the per-job overlaps is exact.
Rat uncoveredTime(const std::vector<HugePos>& huges, const Rat& lo, const Rat& hi) {
  Rat covered = 0;
  for (const HugePos& h : huges) {
    Rat s = std::max(lo, ratOf(h.start));
    Rat e = std::min(hi, ratOf(h.end));
    if (s < e) covered += e - s;
  }
  return (hi - lo) - covered;
}

Segment adjustLeft(const Instance& inst, const Schedule& sched, const Segment& seg,
                   const Rat& T, const Rat& gamma) {
  const Rat D = ratOf(inst.deadline);
  std::vector<HugePos> huges = hugeJobs(inst, sched, T);
  const Rat before = uncoveredTime(huges, seg.start, seg.end);

  Segment out = seg;
  const HugePos* active = nullptr;
  for (const HugePos& h : huges)
    if (Rat(h.start) <= out.start && out.start < Rat(h.end)) active = &h;
  if (active != nullptr) {
    // A huge job runs across the start: snap the start to its completion.
    // The segment keeps at least gamma*D huge-free time, all of it right of
    // that completion, so the snap stays gamma*D short of the end.
    out.start = ratOf(active->end);
    if (out.start > seg.end - gamma * D)
      throw InternalInvariant("start snap of segment " + std::to_string(seg.k) +
                              " consumed the huge-free time");
  } else if (seg.k != 1) {
    // Pull the start (and end) left to the completion of the last huge job
    // ending at or before it. Every earlier segment has less than gamma*D
    // huge-free time, so the gap being skipped is shorter than gamma*D.
    const HugePos* last = nullptr;
    for (const HugePos& h : huges)
      if (Rat(h.end) <= out.start) last = &h;
    if (last == nullptr)
      throw InternalInvariant("no huge job ends before segment " + std::to_string(seg.k) +
                              "; segment 1 should have qualified first");
    Rat shift = out.start - Rat(last->end);
    if (shift > gamma * D)
      throw InternalInvariant("start of segment " + std::to_string(seg.k) +
                              " moved left by more than gamma*D");
    out.start -= shift;
    out.end -= shift;
  }

  // Clip the end so no huge job runs across it. Only one clip can be needed:
  // a second huge job active at the clipped end would overlap the first.
  for (const HugePos& h : huges)
    if (Rat(h.start) <= out.end && out.end < Rat(h.end)) {
      out.end = ratOf(h.start);
      break;
    }

  if (out.end - out.start > seg.end - seg.start)
    throw InternalInvariant("border adjustment widened segment " + std::to_string(seg.k));
  if (uncoveredTime(huges, out.start, out.end) < before)
    throw InternalInvariant("border adjustment lost huge-free time in segment " +
                            std::to_string(seg.k));
  return out;
}

}  // namespace

Segment adjustBorders(const Instance& inst, const Schedule& base, const Segment& seg,
                      const Rat& T, const Rat& gamma, bool fromRight) {
  if (!fromRight) return adjustLeft(inst, base, seg, T, gamma);
  // The right-hand procedure is the exact mirror image; running the left
  // procedure on the mirrored schedule also flips the half-open border
  // conventions the right way around.
  const Rat D = ratOf(inst.deadline);
  Segment flipped{seg.k, false, D - seg.end, D - seg.start};
  Segment adj = adjustLeft(inst, mirrored(inst, base), flipped, T, gamma);
  return {seg.k, true, D - adj.end, D - adj.start};
}

Container buildCCont(const Instance& inst, const std::vector<std::string>& jobIds,
                     const Rat& segWidth, const Rat& T) {
  std::vector<Rect> rects;
  for (const std::string& id : jobIds) {
    const Job& j = inst.job(id);
    rects.push_back({id, ratOf(j.p), ratOf(j.e)});
  }
  // Jobs confined to a segment of width s under peak T carry area at most
  // s*T and width at most s, so the condition for a 3s x (2/3)T box reduces
  // to 2*area <= 2sT and always holds for such inputs.
  Box box{segWidth * 3, T * 2 / 3};
  Container c;
  c.widthBudget = box.width;
  c.heightBudget = box.height;
  c.contents.algorithm = "ccont";
  for (const RectPlacement& rp : steinbergPack(rects, box))
    c.contents.assignments.push_back({rp.id, floorRat(rp.x)});
  return c;
}

Schedule shiftRightSet(const Instance& inst, const Schedule& base, const Rat& tau,
                       const std::vector<std::string>& moveIds) {
  Schedule out = base;
  for (const std::string& id : moveIds) {
    const Job& j = inst.job(id);
    Int s = out.startOf(id);
    if (!(Rat(s) <= tau && tau < Rat(s + j.p)))
      throw PreconditionFailed("job " + id + " does not overlap tau in the base schedule");
    out.set(id, inst.deadline - j.p);
  }
  out.peak = profileOf(inst, out).peak();
  return out;
}

namespace {

std::vector<RatEvent> eventsOf(const Instance& inst, const std::vector<RatAssignment>& starts) {
  std::vector<RatEvent> events;
  for (const RatAssignment& ra : starts) {
    const Job& j = inst.job(ra.id);
    events.push_back({ra.start, ra.start + j.p, ratOf(j.e)});
  }
  return events;
}

// Offset in [lo, hi] for the tall container minimizing the measured overall
// peak. Candidates are both interval ends plus every alignment of a container
// edge with a breakpoint of the fixed part; ties go to the leftmost.
Rat bestTallOffset(const Instance& inst, const std::vector<RatAssignment>& fixed,
                   const Container& ctall, const Rat& lo, const Rat& hi) {
  if (hi < lo) throw InternalInvariant("tall container is wider than its segment");
  std::vector<RatEvent> fixedEvents = eventsOf(inst, fixed);
  RatProfile prof = ratProfileOf(fixedEvents);
  Rat width = ctall.usedWidth(inst);

  std::set<Rat> cands{lo, hi};
  for (const auto& [t, level] : prof.steps) {
    if (t >= lo && t <= hi) cands.insert(t);
    Rat leftEdge = t - width;
    if (leftEdge >= lo && leftEdge <= hi) cands.insert(leftEdge);
  }

  Rat bestOffset = lo;
  Rat bestPeak;
  bool first = true;
  for (const Rat& o : cands) {
    std::vector<RatEvent> events = fixedEvents;
    for (const Assignment& a : ctall.contents.assignments) {
      const Job& j = inst.job(a.id);
      events.push_back({o + a.start, o + a.start + j.p, ratOf(j.e)});
    }
    Rat peak = ratProfileOf(events).peak();
    if (first || peak < bestPeak) {
      first = false;
      bestPeak = peak;
      bestOffset = o;
    }
  }
  return bestOffset;
}

void appendContainer(std::vector<RatAssignment>& starts, const Container& c, const Rat& offset) {
  for (const Assignment& a : c.contents.assignments)
    starts.push_back({a.id, offset + a.start});
}

Schedule finishRepack(const Instance& inst, const std::vector<RatAssignment>& starts,
                      const Rat& peakBound) {
  std::set<std::string> seen;
  for (const RatAssignment& ra : starts)
    if (!seen.insert(ra.id).second)
      throw InternalInvariant("repack placed job " + ra.id + " twice");
  for (const Job& j : inst.jobs)
    if (!seen.count(j.id)) throw InternalInvariant("repack never placed job " + j.id);

  Rat frac = ratProfileOf(eventsOf(inst, starts)).peak();
  if (frac > peakBound)
    throw InternalInvariant("repack fractional peak " + ratToString(frac) + " exceeds " +
                            ratToString(peakBound));
  Schedule sched = floorStarts(inst, "repack", starts);
  if (Rat(sched.peak) > peakBound)
    throw InternalInvariant("repack floored peak " + std::to_string(sched.peak) + " exceeds " +
                            ratToString(peakBound));
  return sched;
}

}  // namespace

Schedule repack(const Instance& inst, const Schedule& base, const Rat& T,
                const Container& cGamma, const EpsilonParams& params) {
  checkInstance(inst);
  const Int D = inst.deadline;
  const Rat Drat = ratOf(D);
  const Rat& gamma = params.gamma;

  // Base and container contents must split the instance exactly.
  std::set<std::string> coverage;
  for (const Assignment& a : base.assignments)
    if (!inst.has(a.id) || !coverage.insert(a.id).second)
      throw PreconditionFailed("base schedule misuses job " + a.id);
  for (const Assignment& a : cGamma.contents.assignments)
    if (!inst.has(a.id) || !coverage.insert(a.id).second)
      throw PreconditionFailed("container misuses job " + a.id);
  for (const Job& j : inst.jobs)
    if (!coverage.count(j.id))
      throw PreconditionFailed("job " + j.id + " is in neither the base nor the container");
  for (const Assignment& a : base.assignments) {
    const Job& j = inst.job(a.id);
    if (a.start < 0 || a.start + j.p > D)
      throw PreconditionFailed("base places job " + a.id + " outside [0, deadline]");
  }

  if (Rat(profileOf(inst, base).peak()) > T)
    throw PreconditionFailed("base schedule peaks above the target T");
  if (cGamma.widthBudget > gamma * Drat || cGamma.heightBudget > T)
    throw PreconditionFailed("container budgets exceed gamma*D x T");
  if (cGamma.usedWidth(inst) > cGamma.widthBudget ||
      Rat(cGamma.contentsPeak(inst)) > cGamma.heightBudget)
    throw PreconditionFailed("container contents overflow its budgets");

  const Rat tPrime = lowerBound(inst).t;
  if (T < tPrime)
    throw PreconditionFailed("target " + ratToString(T) + " is below the instance lower bound " +
                             ratToString(tPrime));
  Int veryWideHeight = 0;
  Int tallWidth = 0;
  for (const Job& j : inst.jobs) {
    if (Rat(j.p) * 4 > Drat * 3) veryWideHeight += j.e;
    if (Rat(j.e) * 3 > tPrime * 2) tallWidth += j.p;
  }
  if (Rat(veryWideHeight) * 3 > tPrime * 2)
    throw PreconditionFailed("jobs wider than (3/4)D stack above (2/3)T'");
  if (Rat(tallWidth) > (1 - params.eps * 3 / 4) * Drat)
    throw PreconditionFailed("jobs taller than (2/3)T' cover more than (1-(3/4)eps)D");

  const Rat bound = T * 5 / 3;

  if (cGamma.contents.assignments.empty()) {
    Schedule out = base;
    out.algorithm = "repack";
    out.peak = peakOf(inst, out);
    return out;
  }

  // Fast path: one base job of medium width and medium energy makes room for
  // the whole container. Mirror so its right-hand gap is the larger one,
  // send it to the right edge (a move of at least gamma*D, since its width
  // leaves 2*gamma*D spare) and drop the container at its old start, where
  // removing at least (1/3)T of energy left at most (2/3)T below.
  if (auto med = findMediumJob(inst, base, T, gamma)) {
    const Job& j = inst.job(*med);
    Schedule work = base;
    Int s = work.startOf(*med);
    if (s > D - (s + j.p)) {
      work = mirrored(inst, work);
      s = work.startOf(*med);
    }
    if (Rat(D - j.p - s) < gamma * Drat)
      throw InternalInvariant("medium job cannot move right by gamma*D");
    work.set(*med, D - j.p);

    std::vector<RatAssignment> starts;
    for (const Assignment& a : work.assignments) starts.push_back({a.id, ratOf(a.start)});
    Rat window = ratProfileOf(eventsOf(inst, starts)).maxOn(ratOf(s), Rat(s) + gamma * Drat);
    if (window * 3 > T * 2)
      throw InternalInvariant("window left by the medium job still exceeds (2/3)T");
    appendContainer(starts, cGamma, ratOf(s));
    return finishRepack(inst, starts, bound);
  }

  // Segment machinery. Huge jobs cover at most (1 - (3/4)eps)D = D - 10*gamma*D
  // in total, so by pigeonhole one of the ten segments has gamma*D free.
  std::vector<Segment> segs = splitSegments(D, gamma);
  std::vector<HugePos> huges = hugeJobs(inst, base, T);
  const Segment* firstQ = nullptr;
  const Segment* lastQ = nullptr;
  for (const Segment& s : segs) {
    if (uncoveredTime(huges, s.start, s.end) >= gamma * Drat) {
      if (firstQ == nullptr) firstQ = &s;
      lastQ = &s;
    }
  }
  if (firstQ == nullptr) throw InternalInvariant("no segment has gamma*D huge-free time");

  Segment sl = adjustBorders(inst, base, *firstQ, T, gamma, false);
  Segment sr = adjustBorders(inst, base, *lastQ, T, gamma, true);

  // Work on whichever adjusted segment comes first once mirrored into the
  // left half; on a tie the left segment wins and nothing is mirrored. The
  // chosen segment keeps its own border index.
  Schedule work = base;
  Segment chosen = sl;
  if (Drat - sr.end < sl.start) {
    work = mirrored(inst, base);
    chosen = Segment{sr.k, false, Drat - sr.end, Drat - sr.start};
  }
  const Segment& slot = segs[static_cast<std::size_t>(chosen.k - 1)];
  if (chosen.start < slot.start - gamma * Drat)
    throw InternalInvariant("chosen segment starts left of tau_{k-1} - gamma*D");
  if (chosen.end - chosen.start > slot.end - slot.start)
    throw InternalInvariant("chosen segment is wider than its split slot");
  if (chosen.end > Drat / 2)
    throw InternalInvariant("chosen segment reaches past D/2");

  // Jobs wholly inside the segment leave it: non-huge ones into the content
  // container, huge ones side by side into the tall container ahead of the
  // overflow contents.
  std::vector<std::string> contIds;
  std::vector<const Job*> tallIn;
  std::set<std::string> removed;
  for (const Assignment& a : work.assignments) {
    const Job& j = inst.job(a.id);
    if (Rat(a.start) >= chosen.start && Rat(a.start + j.p) <= chosen.end) {
      if (isHugeEnergy(j.e, T))
        tallIn.push_back(&j);
      else
        contIds.push_back(a.id);
      removed.insert(a.id);
    }
  }
  std::sort(tallIn.begin(), tallIn.end(),
            [](const Job* a, const Job* b) { return a->id < b->id; });

  Container ctall;
  ctall.heightBudget = T;
  ctall.contents.algorithm = "ctall";
  Int tallCursor = 0;
  for (const Job* j : tallIn) {
    ctall.contents.assignments.push_back({j->id, tallCursor});
    tallCursor += j->p;
  }
  for (const Assignment& a : cGamma.contents.assignments)
    ctall.contents.assignments.push_back({a.id, tallCursor + a.start});
  ctall.widthBudget = ctall.usedWidth(inst);
  if (ctall.widthBudget > chosen.end - chosen.start)
    throw InternalInvariant("tall container is wider than the huge-free allowance");
  if (Rat(ctall.contentsPeak(inst)) > T)
    throw InternalInvariant("tall container contents peak above T");

  Schedule rest;
  rest.algorithm = work.algorithm;
  for (const Assignment& a : work.assignments)
    if (!removed.count(a.id)) rest.assignments.push_back(a);

  Container ccont = buildCCont(inst, contIds, chosen.end - chosen.start, T);

  std::vector<RatAssignment> starts;
  for (const Assignment& a : rest.assignments) starts.push_back({a.id, ratOf(a.start)});

  // Only border-crossing jobs remain inside the segment. If they already
  // stay under (2/3)T there, the tall container fits among them and the
  // content container goes right of the midpoint.
  Rat innerPeak = ratProfileOf(eventsOf(inst, starts)).maxOn(chosen.start, chosen.end);
  if (innerPeak * 3 <= T * 2) {
    if (Drat / 2 + ccont.usedWidth(inst) > Drat)
      throw InternalInvariant("content container does not fit right of D/2");
    appendContainer(starts, ccont, Drat / 2);
    Rat offset = bestTallOffset(inst, starts, ctall, chosen.start,
                                chosen.end - ctall.widthBudget);
    appendContainer(starts, ctall, offset);
    return finishRepack(inst, starts, bound);
  }

  if (chosen.k == 1) {
    // Shift the narrow jobs over the right border out to the deadline,
    // tallest first until (1/3)T is gone. Under-(1/3)T picks keep the total
    // below (2/3)T; a first pick at or above (1/3)T stops immediately. Huge
    // jobs are skipped: after the border adjustment the only huge touching
    // the border starts exactly there, entirely right of the segment.
    const Rat tau = chosen.end;
    std::vector<const Job*> pool;
    for (const Assignment& a : rest.assignments) {
      const Job& j = inst.job(a.id);
      if (Rat(a.start) <= tau && tau < Rat(a.start + j.p) && Rat(j.p) * 4 <= Drat * 3 &&
          !isHugeEnergy(j.e, T))
        pool.push_back(&j);
    }
    std::sort(pool.begin(), pool.end(), [](const Job* a, const Job* b) {
      if (a->e != b->e) return a->e > b->e;
      return a->id < b->id;
    });
    std::vector<std::string> moveIds;
    Int moved = 0;
    for (const Job* j : pool) {
      if (Rat(moved) * 3 >= T) break;
      moveIds.push_back(j->id);
      moved += j->e;
    }
    if (Rat(moved) * 3 > T * 2)
      throw InternalInvariant("moved jobs exceed (2/3)T in the first segment case");
    rest = shiftRightSet(inst, rest, tau, moveIds);
    for (const std::string& id : moveIds) {
      const Job& j = inst.job(id);
      if (Rat(D - j.p) * 4 < Drat)
        throw InternalInvariant("moved job " + id + " still reaches back over D/4");
    }

    starts.clear();
    for (const Assignment& a : rest.assignments) starts.push_back({a.id, ratOf(a.start)});
    if (Drat / 8 + ccont.usedWidth(inst) > Drat / 2)
      throw InternalInvariant("content container does not fit between D/8 and D/2");
    appendContainer(starts, ccont, Drat / 8);
    Rat offset = bestTallOffset(inst, starts, ctall, chosen.start,
                                chosen.end - ctall.widthBudget);
    appendContainer(starts, ctall, offset);
    return finishRepack(inst, starts, bound);
  }

  // k >= 2: the segment is flanked by huge jobs. j_l ends exactly at its
  // start; j_r is the next huge start at or after its end and sits no
  // further out than the mirrored segment start.
  std::vector<HugePos> hugesW = hugeJobs(inst, work, T);
  const HugePos* jl = nullptr;
  for (const HugePos& h : hugesW)
    if (Rat(h.end) == chosen.start) jl = &h;
  if (jl == nullptr)
    throw InternalInvariant("no huge job ends at the chosen segment start");
  const HugePos* jr = nullptr;
  for (const HugePos& h : hugesW)
    if (Rat(h.start) >= chosen.end && (jr == nullptr || h.start < jr->start)) jr = &h;
  if (jr == nullptr)
    throw InternalInvariant("no huge job starts after the chosen segment");
  if (Rat(jr->start) > Drat - chosen.start)
    throw InternalInvariant("next huge job starts past D - sigma(segment)");

  // Jobs over the end border but over neither the start border nor sigma(j_r)
  // are narrow enough to clear the segment when sent to the deadline.
  std::vector<const Job*> poolM;
  std::map<std::string, Int> restStart;
  for (const Assignment& a : rest.assignments) restStart[a.id] = a.start;
  for (const Assignment& a : rest.assignments) {
    const Job& j = inst.job(a.id);
    Rat s = ratOf(a.start);
    Rat c = ratOf(a.start + j.p);
    bool overEnd = s <= chosen.end && chosen.end < c;
    bool overStart = s <= chosen.start && chosen.start < c;
    bool overJr = s <= Rat(jr->start) && Rat(jr->start) < c;
    if (overEnd && !overStart && !overJr) poolM.push_back(&j);
  }
  std::sort(poolM.begin(), poolM.end(), [&](const Job* a, const Job* b) {
    Int sa = restStart[a->id];
    Int sb = restStart[b->id];
    if (sa != sb) return sa < sb;
    return a->id < b->id;
  });

  std::vector<std::string> moveIds;
  Int moved = 0;
  const Job* lastPick = nullptr;
  for (const Job* j : poolM) {
    if (Rat(moved) * 3 >= T) break;
    moveIds.push_back(j->id);
    moved += j->e;
    lastPick = j;
  }
  const Job* jv = nullptr;
  if (Rat(moved) * 3 > T * 2) {
    // The final pick pushed past (2/3)T, so it alone carries at least
    // (1/3)T; with no medium job in the base its width must be under
    // gamma*D, and it is placed separately.
    jv = lastPick;
    if (Rat(jv->e) * 3 < T)
      throw InternalInvariant("oversized last pick is not at least (1/3)T tall");
    if (Rat(jv->p) > gamma * Drat)
      throw InternalInvariant("oversized last pick is wider than gamma*D");
    moveIds.pop_back();
    moved -= jv->e;
  }
  rest = shiftRightSet(inst, rest, chosen.end, moveIds);
  for (const std::string& id : moveIds)
    if (Rat(D - inst.job(id).p) < chosen.end)
      throw InternalInvariant("moved job " + id + " still overlaps the segment end");

  starts.clear();
  for (const Assignment& a : rest.assignments)
    if (jv == nullptr || a.id != jv->id) starts.push_back({a.id, ratOf(a.start)});

  Rat contWidth = ccont.usedWidth(inst);
  if (chosen.k <= 3) {
    if (chosen.end + contWidth > Drat / 2 + chosen.start / 2)
      throw InternalInvariant("content container reaches past D/2 + sigma/2");
    appendContainer(starts, ccont, chosen.end);
    if (jv != nullptr) starts.push_back({jv->id, Rat(0)});
  } else {
    if (contWidth > chosen.start)
      throw InternalInvariant("content container is wider than sigma(segment)");
    appendContainer(starts, ccont, Rat(0));
    if (jv != nullptr) starts.push_back({jv->id, chosen.end});
  }
  Rat offset = bestTallOffset(inst, starts, ctall, chosen.start,
                              chosen.end - ctall.widthBudget);
  appendContainer(starts, ctall, offset);
  return finishRepack(inst, starts, bound);
}

}  // namespace peakpack
