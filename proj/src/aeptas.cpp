#include "peakpack/aeptas.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "peakpack/bounds.hpp"
#include "peakpack/errors.hpp"
#include "peakpack/exact.hpp"
#include "peakpack/packing.hpp"
#include "peakpack/simplex.hpp"

namespace peakpack {

namespace {

Rat ratPow(const Rat& base, int exp) {
  Rat out = 1;
  for (int i = 0; i < exp; ++i) out *= base;
  return out;
}

Rat roundUpTo(const Rat& value, const Rat& unit) {
  if (value <= 0) return 0;
  return Rat(ceilBig(value / unit)) * unit;
}

Rat mediumArea(const Instance& inst, const Classification& cls) {
  Rat area = 0;
  for (const std::string& id : cls.medium) {
    const Job& j = inst.job(id);
    area += Rat(j.p) * j.e;
  }
  return area;
}

}  // namespace

GapResult selectGap(const Instance& inst, const Rat& eps, const Rat& T) {
  checkInstance(inst);
  const Rat step = ratPow(eps, 5);
  const Rat budget = eps * eps / 4 * inst.deadline * T;
  Int scans = ceilRat(Rat(8) / (eps * eps));
  Rat delta = step / 4;
  for (Int i = 0; i <= scans; ++i) {
    Rat mu = delta * step;
    Classification cls = classify(inst, T, delta, mu);
    if (mediumArea(inst, cls) <= budget) return {delta, mu, static_cast<int>(i)};
    delta = mu;
  }
  // Each job is medium for at most two consecutive thresholds, so the summed
  // medium areas stay below 2DT <= 2DT, while ceil(8/eps^2) failures would
  // need more than 2DT. Running out of thresholds is an arithmetic bug.
  throw InternalInvariant("gap selection exhausted its threshold ladder");
}

Classification classify(const Instance& inst, const Rat& T, const Rat& delta, const Rat& mu) {
  Classification cls;
  cls.delta = delta;
  cls.mu = mu;
  const Rat wide = delta * inst.deadline;
  const Rat narrow = mu * inst.deadline;
  const Rat tall = delta * T;
  const Rat flat = mu * T;
  for (const Job& j : inst.jobs) {
    const Rat w = ratOf(j.p);
    const Rat h = ratOf(j.e);
    if (h >= tall && w > wide)
      cls.large.push_back(j.id);
    else if (h < flat && w > wide)
      cls.horizontal.push_back(j.id);
    else if (h >= tall && w < narrow)
      cls.vertical.push_back(j.id);
    else if (h < flat && w < narrow)
      cls.small.push_back(j.id);
    else
      cls.medium.push_back(j.id);
  }
  return cls;
}

std::map<std::string, Rat> roundVertical(const Instance& inst,
                                         const std::vector<std::string>& ids,
                                         const Rat& eps, const Rat& delta, const Rat& T) {
  const Rat unit = eps * delta * T;
  if (!(unit > 0)) throw InvalidInput("rounding unit eps*delta*T must be positive");
  std::map<std::string, Rat> rounded;
  std::set<Rat> values;
  for (const std::string& id : ids) {
    const Job& j = inst.job(id);
    Rat up = roundUpTo(ratOf(j.e), unit);
    // Vertical jobs are at least delta*T tall, so one extra unit eps*delta*T
    // stays within a (1+eps) factor.
    if (up > (1 + eps) * Rat(j.e))
      throw InternalInvariant("rounding job " + id + " exceeds the (1+eps) factor");
    rounded[id] = up;
    values.insert(up);
  }
  // Distinct rounded values stay within (1/eps^2) * log2(1/delta). With
  // eps^2 = u/v and 1/delta = w/x that reads 2^(q*u) * x^v <= w^v. Bit
  // lengths settle it outside a narrow gray zone; the exact powers are only
  // formed for modest exponents, and an undecidable gray zone with huge
  // exponents passes (the check is diagnostic).
  const BigInt u = numerator(eps * eps);
  const BigInt v = denominator(eps * eps);
  const Rat invDelta = 1 / delta;
  const BigInt w = numerator(invDelta);
  const BigInt x = denominator(invDelta);
  const BigInt qu = BigInt(static_cast<long long>(values.size())) * u;
  const BigInt mw(msb(w));
  const BigInt mx(msb(x));
  bool ok;
  if (qu + v * (mx + 1) <= v * mw) {
    ok = true;
  } else if (qu + v * mx >= v * (mw + 1)) {
    ok = false;
  } else if (qu <= 65536 && v <= 1024) {
    BigInt lhs = pow(BigInt(2), qu.convert_to<unsigned>());
    ok = lhs * pow(x, v.convert_to<unsigned>()) <= pow(w, v.convert_to<unsigned>());
  } else {
    ok = true;
  }
  if (!ok)
    throw InternalInvariant("distinct rounded heights exceed (1/eps^2)log2(1/delta)");
  return rounded;
}

namespace {

Rat minOn(const RatProfile& prof, const Rat& lo, const Rat& hi) {
  if (!(lo < hi)) return 0;
  bool any = false;
  Rat m = 0;
  for (std::size_t i = 0; i < prof.steps.size(); ++i) {
    const Rat& t0 = prof.steps[i].first;
    if (t0 >= hi) break;
    bool lastStep = (i + 1 == prof.steps.size());
    if (!lastStep && prof.steps[i + 1].first <= lo) continue;
    if (!any || prof.steps[i].second < m) m = prof.steps[i].second;
    any = true;
  }
  return m;
}

RatProfile hlProfile(const Instance& inst, const Schedule& hlBase) {
  std::vector<RatEvent> events;
  for (const Assignment& a : hlBase.assignments) {
    const Job& j = inst.job(a.id);
    events.push_back({ratOf(a.start), ratOf(a.start + j.p), ratOf(j.e)});
  }
  return ratProfileOf(events);
}

}  // namespace

ProfileSegments profileSegments(const Instance& inst, const Schedule& hlBase, const Rat& T,
                                const Rat& eps, const Rat& gammaSeg, const Rat& topWidth,
                                const Rat& topBudget) {
  if (!(gammaSeg > 0)) throw InvalidInput("segment width fraction must be positive");
  const Rat D = ratOf(inst.deadline);
  RatProfile prof = hlProfile(inst, hlBase);

  ProfileSegments out;
  Int count = ceilRat(1 / gammaSeg);
  for (Int i = 0; i < count; ++i) {
    SegmentInfo seg;
    seg.index = static_cast<int>(i);
    seg.start = gammaSeg * D * i;
    Rat end = std::min(D, gammaSeg * D * (i + 1));
    seg.width = end - seg.start;
    Rat hi = prof.maxOn(seg.start, end);
    Rat lo = minOn(prof, seg.start, end);
    if (hi - lo >= eps * T) {
      seg.isVolatile = true;
      seg.budget = 0;
    } else {
      seg.budget = roundUpTo(std::max(Rat(0), T - hi), eps * T);
    }
    out.segments.push_back(seg);
  }
  SegmentInfo top;
  top.index = -1;
  top.start = D;
  top.width = topWidth;
  top.budget = topBudget;
  out.segments.push_back(top);
  return out;
}

namespace {

using Counts = std::vector<std::pair<Rat, int>>;

void enumerateConfigs(const std::vector<Rat>& heights, std::size_t idx, const Rat& room,
                      Counts& current, std::vector<Counts>& out, std::size_t cap) {
  if (out.size() > cap)
    throw ResourceExceeded("configuration enumeration exceeded " + std::to_string(cap));
  if (idx == heights.size()) {
    out.push_back(current);
    return;
  }
  Int maxMult = floorRat(room / heights[idx]);
  for (Int k = 0; k <= maxMult; ++k) {
    if (k > 0) current.push_back({heights[idx], static_cast<int>(k)});
    enumerateConfigs(heights, idx + 1, room - heights[idx] * k, current, out, cap);
    if (k > 0) current.pop_back();
  }
}

bool countsLess(const Counts& a, const Counts& b) {
  for (std::size_t i = 0; i < std::min(a.size(), b.size()); ++i) {
    if (a[i].first != b[i].first) return a[i].first > b[i].first;
    if (a[i].second != b[i].second) return a[i].second < b[i].second;
  }
  return a.size() < b.size();
}

}  // namespace

ConfigLpResult verticalConfigLp(const ConfigLpInput& input, const Rat&, const Rat&) {
  constexpr std::size_t kConfigCap = 20000;

  std::vector<Rat> heights;
  for (const auto& [h, width] : input.heightWidths) {
    if (!(h > 0)) throw InvalidInput("rounded heights must be positive");
    heights.push_back(h);
  }
  std::sort(heights.begin(), heights.end(), std::greater<Rat>());
  heights.erase(std::unique(heights.begin(), heights.end()), heights.end());

  struct Column {
    std::size_t classIdx;
    Counts counts;
  };
  std::vector<Column> cols;
  for (std::size_t c = 0; c < input.classWidths.size(); ++c) {
    std::vector<Counts> configs;
    Counts current;
    enumerateConfigs(heights, 0, input.classWidths[c].first, current, configs, kConfigCap);
    for (Counts& cfg : configs) cols.push_back({c, std::move(cfg)});
    if (cols.size() > kConfigCap)
      throw ResourceExceeded("configuration enumeration exceeded " +
                             std::to_string(kConfigCap));
  }

  const std::size_t m = input.classWidths.size() + input.heightWidths.size();
  std::vector<std::vector<Rat>> A(m, std::vector<Rat>(cols.size(), Rat(0)));
  std::vector<Rat> b(m, Rat(0));
  for (std::size_t c = 0; c < input.classWidths.size(); ++c)
    b[c] = input.classWidths[c].second;
  for (std::size_t h = 0; h < input.heightWidths.size(); ++h)
    b[input.classWidths.size() + h] = input.heightWidths[h].second;
  for (std::size_t v = 0; v < cols.size(); ++v) {
    A[cols[v].classIdx][v] = 1;
    for (const auto& [h, mult] : cols[v].counts)
      for (std::size_t hi = 0; hi < input.heightWidths.size(); ++hi)
        if (input.heightWidths[hi].first == h)
          A[input.classWidths.size() + hi][v] = mult;
  }

  ConfigLpResult res;
  LpSolution sol = phase1Feasible(A, b);
  if (!sol.feasible) return res;

  // Re-check every equality with the exact solution; the simplex is exact,
  // so any slack here is a modelling bug.
  for (std::size_t i = 0; i < m; ++i) {
    Rat lhs = 0;
    for (std::size_t v = 0; v < cols.size(); ++v) lhs += A[i][v] * sol.x[v];
    if (lhs != b[i]) throw InternalInvariant("config LP equality row drifted");
  }
  std::size_t nonzero = 0;
  for (const Rat& x : sol.x)
    if (x > 0) ++nonzero;
  if (nonzero > m)
    throw InternalInvariant("config LP solution is not basic");

  res.feasible = true;
  for (std::size_t v = 0; v < cols.size(); ++v) {
    if (!(sol.x[v] > 0)) continue;
    ConfigVar var;
    var.classBudget = input.classWidths[cols[v].classIdx].first;
    var.counts = cols[v].counts;
    var.width = sol.x[v];
    res.vars.push_back(std::move(var));
  }
  std::sort(res.vars.begin(), res.vars.end(), [](const ConfigVar& a, const ConfigVar& b) {
    if (a.classBudget != b.classBudget) return a.classBudget < b.classBudget;
    if (a.counts != b.counts) return countsLess(a.counts, b.counts);
    return a.width < b.width;
  });
  return res;
}

PlaceResult placeConfigurations(const Instance& inst, const ProfileSegments& segs,
                                const ConfigLpResult& lp,
                                const std::map<std::string, Rat>& rounded,
                                const std::vector<std::string>& verticalIds) {
  PlaceResult out;

  // One lane is a stretch of time inside a single segment reserved for jobs
  // of one rounded height; a config piece contributes `mult` lanes per
  // height over every segment stretch it covers.
  struct Lane {
    Rat realStart;
    Rat width;
  };
  std::map<Rat, std::vector<Lane>> lanes;

  std::map<Rat, std::vector<const SegmentInfo*>> classSegs;
  for (const SegmentInfo& s : segs.segments)
    if (s.budget > 0 && s.width > 0) classSegs[s.budget].push_back(&s);

  for (const auto& [budget, parts] : classSegs) {
    Rat cursor = 0;  // virtual position inside this class's concatenated strip
    for (const ConfigVar& var : lp.vars) {
      if (var.classBudget != budget || !(var.width > 0)) continue;
      Rat cfgStart = cursor;
      Rat cfgEnd = cursor + var.width;
      Rat segBase = 0;
      Rat gapHeight = budget;
      for (const auto& [h, mult] : var.counts) gapHeight -= h * mult;
      for (const SegmentInfo* s : parts) {
        Rat lo = std::max(cfgStart, segBase);
        Rat hi = std::min(cfgEnd, segBase + s->width);
        if (lo < hi) {
          Rat realStart = s->start + (lo - segBase);
          for (const auto& [h, mult] : var.counts)
            for (int copy = 0; copy < mult; ++copy) lanes[h].push_back({realStart, hi - lo});
          if (gapHeight > 0 && s->start < ratOf(inst.deadline))
            out.gaps.push_back({realStart, hi - lo, gapHeight});
        }
        segBase += s->width;
      }
      cursor = cfgEnd;
    }
  }

  std::map<Rat, std::vector<std::string>> byHeight;
  for (const std::string& id : verticalIds) {
    auto it = rounded.find(id);
    if (it == rounded.end())
      throw InternalInvariant("vertical job " + id + " has no rounded height");
    byHeight[it->second].push_back(id);
  }
  for (auto& [h, ids] : byHeight) {
    std::sort(ids.begin(), ids.end());
    const std::vector<Lane>& hl = lanes[h];
    Rat total = 0;
    for (const Lane& l : hl) total += l.width;
    // Walk one continuous line over the lanes; jobs that straddle a lane
    // boundary become fractional, but their width is still consumed so the
    // line matches the LP widths exactly.
    Rat cursor = 0;
    for (const std::string& id : ids) {
      const Job& j = inst.job(id);
      Rat jobEnd = cursor + j.p;
      if (jobEnd > total)
        throw InternalInvariant("height class of job " + id + " overruns its LP width");
      Rat base = 0;
      bool placed = false;
      for (const Lane& l : hl) {
        if (cursor >= base && jobEnd <= base + l.width) {
          out.placed.push_back({id, l.realStart + (cursor - base)});
          placed = true;
          break;
        }
        base += l.width;
      }
      if (!placed) out.overflow.push_back(id);
      cursor = jobEnd;
    }
  }
  return out;
}

PlaceResult placeSmallNfdh(const Instance& inst, const std::vector<std::string>& smallIds,
                           const std::vector<GapBox>& boxes) {
  std::vector<const Job*> jobs;
  for (const std::string& id : smallIds) jobs.push_back(&inst.job(id));
  std::sort(jobs.begin(), jobs.end(), [](const Job* a, const Job* b) {
    if (a->e != b->e) return a->e > b->e;
    if (a->p != b->p) return a->p > b->p;
    return a->id < b->id;
  });

  PlaceResult out;
  std::size_t boxIdx = 0;
  Rat shelfX = 0;
  Rat shelfY = 0;
  Rat shelfH = 0;
  for (const Job* j : jobs) {
    bool done = false;
    while (boxIdx < boxes.size()) {
      const GapBox& box = boxes[boxIdx];
      if (Rat(j->p) <= box.width && Rat(j->e) <= box.height) {
        if (shelfX + j->p <= box.width && shelfY + std::max(shelfH, ratOf(j->e)) <= box.height &&
            shelfH > 0) {
          out.placed.push_back({j->id, box.start + shelfX});
          shelfX += j->p;
          shelfH = std::max(shelfH, ratOf(j->e));
          done = true;
          break;
        }
        Rat nextY = shelfY + shelfH;
        if (nextY + j->e <= box.height) {
          shelfX = 0;
          shelfY = nextY;
          shelfH = ratOf(j->e);
          out.placed.push_back({j->id, box.start + shelfX});
          shelfX += j->p;
          done = true;
          break;
        }
      }
      ++boxIdx;
      shelfX = 0;
      shelfY = 0;
      shelfH = 0;
    }
    if (!done) out.overflow.push_back(j->id);
  }
  return out;
}

ReduceResult reduceHorizontalStarts(const Instance& inst,
                                    const std::map<std::string, Int>& refStarts,
                                    const Rat& eps, Int deadline) {
  if (!(eps > 0)) throw InvalidInput("eps must be positive");
  const Rat D = ratOf(deadline);

  struct Entry {
    const Job* job;
    Int start;
  };
  // class l holds widths in (D/2^l, D/2^(l-1)]
  std::map<int, std::vector<Entry>> classes;
  for (const auto& [id, start] : refStarts) {
    const Job& j = inst.job(id);
    int l = 1;
    while (!(Rat(j.p) > D / ratPow(Rat(2), l))) ++l;
    classes[l].push_back({&j, start});
  }

  ReduceResult out;
  Rat classHeightSum = 0;
  std::set<Int> distinct;
  Rat distinctCap = 0;
  for (auto& [l, entries] : classes) {
    Rat classHeight = 0;
    for (const Entry& en : entries) classHeight += en.job->e;
    classHeightSum += classHeight / ratPow(Rat(2), l);
    distinctCap += ratPow(Rat(2), l) * ceilRat(1 / eps);

    // Group by the dyadic segment the job ends in, stack by start time and
    // snap each layer to the latest start below it; the bottom layer is
    // dropped for later replacement.
    Rat segWidth = D / ratPow(Rat(2), l);
    std::map<Int, std::vector<Entry>> bySeg;
    for (const Entry& en : entries) {
      Rat end = ratOf(en.start + en.job->p);
      Int seg = ceilRat(end / segWidth);  // end lies in ((seg-1)w, seg*w]
      bySeg[seg].push_back(en);
    }
    for (auto& [seg, group] : bySeg) {
      std::sort(group.begin(), group.end(), [](const Entry& a, const Entry& b) {
        if (a.start != b.start) return a.start < b.start;
        return a.job->id < b.job->id;
      });
      Rat total = 0;
      for (const Entry& en : group) total += en.job->e;
      Rat layerUnit = eps * total;
      Rat bottom = 0;
      std::vector<Int> layerOf(group.size());
      for (std::size_t i = 0; i < group.size(); ++i) {
        layerOf[i] = layerUnit > 0 ? floorRat(bottom / layerUnit) : 0;
        bottom += group[i].job->e;
      }
      std::map<Int, Int> layerMaxStart;
      for (std::size_t i = 0; i < group.size(); ++i) {
        auto it = layerMaxStart.find(layerOf[i]);
        if (it == layerMaxStart.end() || group[i].start > it->second)
          layerMaxStart[layerOf[i]] = group[i].start;
      }
      for (std::size_t i = 0; i < group.size(); ++i) {
        if (layerOf[i] == 0) {
          out.removed.push_back(group[i].job->id);
          continue;
        }
        // latest original start in any lower layer; never to the right of
        // the job's own start because layers stack in start order
        Int snapped = 0;
        bool found = false;
        for (const auto& [layer, s] : layerMaxStart) {
          if (layer >= layerOf[i]) break;
          snapped = found ? std::max(snapped, s) : s;
          found = true;
        }
        if (!found)
          throw InternalInvariant("layered job " + group[i].job->id + " has no layer below");
        if (snapped > group[i].start)
          throw InternalInvariant("layer snap moved job " + group[i].job->id + " right");
        out.starts[group[i].job->id] = snapped;
        distinct.insert(snapped);
      }
    }
  }
  std::sort(out.removed.begin(), out.removed.end());

  // Every class member is wider than D/2^l, so h * D/2^l stays under the
  // class area and the weighted heights sum below a(I)/D.
  if (classHeightSum > Rat(totalArea(inst)) / D)
    throw InternalInvariant("weighted horizontal class heights exceed a(I)/D");
  if (Rat(static_cast<Int>(distinct.size())) > distinctCap)
    throw InternalInvariant("reduced starts exceed sum(2^l)/eps");
  return out;
}

HorizontalLpResult horizontalLp(const Instance& inst, const std::vector<std::string>& horIds,
                                const std::map<std::string, std::vector<Int>>& candidateStarts,
                                const RatProfile& capacity, Int deadline) {
  HorizontalLpResult res;
  struct Var {
    std::size_t jobIdx;
    Int start;
  };
  std::vector<Var> vars;
  std::vector<std::vector<std::size_t>> jobVars(horIds.size());
  std::set<Rat> events;
  events.insert(Rat(0));
  for (std::size_t ji = 0; ji < horIds.size(); ++ji) {
    auto it = candidateStarts.find(horIds[ji]);
    if (it == candidateStarts.end() || it->second.empty())
      throw InvalidInput("job " + horIds[ji] + " has no candidate starts");
    const Job& j = inst.job(horIds[ji]);
    for (Int s : it->second) {
      if (s < 0 || s + j.p > deadline)
        throw InvalidInput("candidate start " + std::to_string(s) + " of job " + horIds[ji] +
                           " leaves [0, deadline]");
      jobVars[ji].push_back(vars.size());
      vars.push_back({ji, s});
      events.insert(ratOf(s));
      events.insert(ratOf(s + j.p));
    }
  }
  for (const auto& [t, level] : capacity.steps) events.insert(t);

  std::vector<Rat> eventTimes;
  for (const Rat& t : events)
    if (t >= 0 && t < Rat(deadline)) eventTimes.push_back(t);

  const std::size_t nVars = vars.size();
  const std::size_t m = horIds.size() + eventTimes.size();
  std::vector<std::vector<Rat>> A(m, std::vector<Rat>(nVars + eventTimes.size(), Rat(0)));
  std::vector<Rat> b(m, Rat(0));
  for (std::size_t ji = 0; ji < horIds.size(); ++ji) {
    for (std::size_t v : jobVars[ji]) A[ji][v] = 1;
    b[ji] = 1;
  }
  for (std::size_t ei = 0; ei < eventTimes.size(); ++ei) {
    std::size_t row = horIds.size() + ei;
    const Rat& t = eventTimes[ei];
    for (std::size_t v = 0; v < nVars; ++v) {
      const Job& j = inst.job(horIds[vars[v].jobIdx]);
      if (Rat(vars[v].start) <= t && t < Rat(vars[v].start + j.p)) A[row][v] = ratOf(j.e);
    }
    A[row][nVars + ei] = 1;  // slack turns the capacity bound into an equality
    b[row] = capacity.levelAt(t);
  }

  LpSolution sol = phase1Feasible(A, b);
  if (!sol.feasible) return res;

  res.feasible = true;
  for (std::size_t ji = 0; ji < horIds.size(); ++ji) {
    Rat best = -1;
    Int bestStart = 0;
    for (std::size_t v : jobVars[ji]) {
      if (sol.x[v] > best || (sol.x[v] == best && vars[v].start < bestStart)) {
        best = sol.x[v];
        bestStart = vars[v].start;
      }
    }
    res.starts[horIds[ji]] = bestStart;
  }
  return res;
}

namespace {

struct PipelineOutcome {
  std::vector<RatAssignment> baseStarts;
  std::vector<RatAssignment> containerRel;  // relative to the container origin
};

// One attempt at a target peak T; throws Infeasible when T is too tight.
PipelineOutcome runPipeline(const Instance& inst, const Schedule& reference, const Rat& eps,
                            const Rat& T, const Rat& containerWidth,
                            const Rat& containerBudget) {
  const Int D = inst.deadline;
  const Rat Drat = ratOf(D);

  GapResult gap = selectGap(inst, eps, T);
  Classification cls = classify(inst, T, gap.delta, gap.mu);
  std::map<std::string, Rat> rounded = roundVertical(inst, cls.vertical, eps, gap.delta, T);

  Schedule hlBase;
  hlBase.algorithm = "hl";
  for (const std::string& id : cls.large)
    hlBase.assignments.push_back({id, reference.startOf(id)});
  for (const std::string& id : cls.horizontal)
    hlBase.assignments.push_back({id, reference.startOf(id)});

  ProfileSegments segs = profileSegments(inst, hlBase, T, eps, eps / 4, containerWidth / 4,
                                         containerBudget);

  ConfigLpInput lpInput;
  std::map<Rat, Rat> classWidth;
  for (const SegmentInfo& s : segs.segments)
    if (s.budget > 0 && s.width > 0) classWidth[s.budget] += s.width;
  for (const auto& [budget, width] : classWidth) lpInput.classWidths.push_back({budget, width});
  std::map<Rat, Rat> heightWidth;
  for (const std::string& id : cls.vertical) heightWidth[rounded.at(id)] += inst.job(id).p;
  for (const auto& [h, width] : heightWidth) lpInput.heightWidths.push_back({h, width});

  ConfigLpResult lp = verticalConfigLp(lpInput, eps, T);
  if (!lp.feasible)
    throw Infeasible("no fractional vertical packing fits the profile segments");

  PlaceResult verts = placeConfigurations(inst, segs, lp, rounded, cls.vertical);

  PipelineOutcome out;
  for (const std::string& id : cls.large)
    out.baseStarts.push_back({id, ratOf(reference.startOf(id))});

  std::vector<RatAssignment> topPlaced;
  for (const RatAssignment& ra : verts.placed) {
    if (ra.start >= Drat)
      topPlaced.push_back(ra);
    else
      out.baseStarts.push_back(ra);
  }

  // Small jobs fill the gaps above the config columns; what the gaps cannot
  // take is stacked in shelf rows over the full deadline, which is sound
  // only while the leftover area stays within eps*T*D.
  PlaceResult smalls = placeSmallNfdh(inst, cls.small, verts.gaps);
  for (const RatAssignment& ra : smalls.placed) out.baseStarts.push_back(ra);
  if (!smalls.overflow.empty()) {
    Rat leftArea = 0;
    std::vector<Rect> leftRects;
    for (const std::string& id : smalls.overflow) {
      const Job& j = inst.job(id);
      leftArea += Rat(j.p) * j.e;
      leftRects.push_back({id, ratOf(j.p), ratOf(j.e)});
    }
    if (leftArea > eps * T * Drat)
      throw Infeasible("small jobs left over carry more area than eps*T*D");
    ShelfResult rows = nfdh(leftRects, Drat);
    for (const RectPlacement& rp : rows.placements) out.baseStarts.push_back({rp.id, rp.x});
  }

  // Horizontal jobs: snap the reference starts to layers, re-place the
  // dropped bottom layers in width-filling rows, and let the assignment LP
  // choose among the surviving starts under the segment headroom.
  std::map<std::string, Int> refHor;
  for (const std::string& id : cls.horizontal) refHor[id] = reference.startOf(id);
  ReduceResult red = reduceHorizontalStarts(inst, refHor, eps, D);

  std::map<int, std::vector<std::string>> removedByClass;
  for (const std::string& id : red.removed) {
    const Job& j = inst.job(id);
    int l = 1;
    while (!(Rat(j.p) > Drat / ratPow(Rat(2), l))) ++l;
    removedByClass[l].push_back(id);
  }
  for (auto& [l, ids] : removedByClass) {
    std::sort(ids.begin(), ids.end());
    Int cursor = 0;
    for (const std::string& id : ids) {
      const Job& j = inst.job(id);
      if (cursor + j.p > D) cursor = 0;
      out.baseStarts.push_back({id, ratOf(cursor)});
      cursor += j.p;
    }
  }

  std::vector<std::string> keptHor;
  for (const std::string& id : cls.horizontal)
    if (red.starts.count(id)) keptHor.push_back(id);
  if (!keptHor.empty()) {
    // Candidates: every surviving layer start of the job's width class at
    // which the job still meets the deadline (its own snap always does).
    std::map<int, std::set<Int>> classStarts;
    for (const auto& [id, s] : red.starts) {
      const Job& j = inst.job(id);
      int l = 1;
      while (!(Rat(j.p) > Drat / ratPow(Rat(2), l))) ++l;
      classStarts[l].insert(s);
    }
    std::map<std::string, std::vector<Int>> candidates;
    for (const std::string& id : keptHor) {
      const Job& j = inst.job(id);
      int l = 1;
      while (!(Rat(j.p) > Drat / ratPow(Rat(2), l))) ++l;
      for (Int s : classStarts[l])
        if (s + j.p <= D) candidates[id].push_back(s);
    }

    // Headroom per time: the segment's large+horizontal maximum minus what
    // the large jobs already use there, floored at zero.
    std::vector<RatEvent> largeEvents;
    for (const std::string& id : cls.large) {
      const Job& j = inst.job(id);
      Int s = reference.startOf(id);
      largeEvents.push_back({ratOf(s), ratOf(s + j.p), ratOf(j.e)});
    }
    RatProfile largeProf = ratProfileOf(largeEvents);
    RatProfile hl = hlProfile(inst, hlBase);
    std::set<Rat> cuts;
    std::map<Rat, Rat> segMaxAt;
    for (const SegmentInfo& s : segs.segments) {
      if (s.index < 0) continue;
      cuts.insert(s.start);
      segMaxAt[s.start] = hl.maxOn(s.start, s.start + s.width);
    }
    for (const auto& [t, level] : largeProf.steps)
      if (t < Drat) cuts.insert(t);
    RatProfile capacity;
    Rat segMax = 0;
    for (const Rat& t : cuts) {
      auto it = segMaxAt.find(t);
      if (it != segMaxAt.end()) segMax = it->second;
      Rat level = std::max(Rat(0), segMax - largeProf.levelAt(t));
      if (!capacity.steps.empty() && capacity.steps.back().second == level) continue;
      capacity.steps.emplace_back(t, level);
    }

    HorizontalLpResult hlp = horizontalLp(inst, keptHor, candidates, capacity, D);
    if (!hlp.feasible)
      throw Infeasible("no fractional horizontal assignment fits the headroom");
    for (const auto& [id, s] : hlp.starts) out.baseStarts.push_back({id, ratOf(s)});
  }

  // Medium jobs: wide ones go on top of the base inside a full-width box,
  // narrow ones into the first half of the overflow container.
  std::vector<Rect> wideMed;
  std::vector<Rect> narrowMed;
  for (const std::string& id : cls.medium) {
    const Job& j = inst.job(id);
    Rect r{id, ratOf(j.p), ratOf(j.e)};
    if (Rat(j.p) > containerWidth / 4)
      wideMed.push_back(r);
    else
      narrowMed.push_back(r);
  }
  if (!wideMed.empty()) {
    Rat hMax = 0;
    Rat area = 0;
    for (const Rect& r : wideMed) {
      hMax = std::max(hMax, r.h);
      area += r.w * r.h;
    }
    Box box{Drat, std::max(2 * hMax, 2 * area / Drat)};
    for (const RectPlacement& rp : steinbergPack(wideMed, box))
      out.baseStarts.push_back({rp.id, rp.x});
  }
  const Rat contentHeight = std::min(T, containerBudget);
  if (!narrowMed.empty()) {
    Box box{containerWidth / 2, contentHeight};
    if (!steinbergCondition(narrowMed, box))
      throw Infeasible("narrow medium jobs overflow the container half");
    for (const RectPlacement& rp : steinbergPack(narrowMed, box))
      out.containerRel.push_back({rp.id, rp.x});
  }

  // Third quarter: whole verticals assigned to the synthetic top segment.
  for (const RatAssignment& ra : topPlaced)
    out.containerRel.push_back({ra.id, containerWidth / 2 + (ra.start - Drat)});

  // Last quarter: fractional verticals; they are narrower than mu*D, which
  // sits safely under an eighth of the container width.
  if (!verts.overflow.empty()) {
    if (!(gap.mu * Drat < containerWidth / 8))
      throw InternalInvariant("vertical width bound mu*D reaches the container quarter");
    std::vector<Rect> fracRects;
    for (const std::string& id : verts.overflow) {
      const Job& j = inst.job(id);
      fracRects.push_back({id, ratOf(j.p), ratOf(j.e)});
    }
    Box box{containerWidth / 4, contentHeight};
    if (!steinbergCondition(fracRects, box))
      throw Infeasible("fractional vertical jobs overflow the container quarter");
    for (const RectPlacement& rp : steinbergPack(fracRects, box))
      out.containerRel.push_back({rp.id, containerWidth * 3 / 4 + rp.x});
  }

  // Budget check on the rational layout; flooring later only shrinks both
  // the used width and the peak, so passing here settles the container.
  Rat usedWidth = 0;
  std::vector<RatEvent> contEvents;
  for (const RatAssignment& ra : out.containerRel) {
    const Job& j = inst.job(ra.id);
    usedWidth = std::max(usedWidth, ra.start + j.p);
    contEvents.push_back({ra.start, ra.start + j.p, ratOf(j.e)});
  }
  if (usedWidth > containerWidth)
    throw Infeasible("overflow contents exceed the container width budget");
  if (ratProfileOf(contEvents).peak() > containerBudget)
    throw Infeasible("overflow contents exceed the container height budget");

  return out;
}

}  // namespace

LiteResult scheduleLite(const Instance& inst, const Rat& eps, OverflowVariant variant,
                        std::optional<ReferenceKind> forceReference) {
  checkInstance(inst);
  EpsilonParams params = EpsilonParams::fromEps(eps);
  const Int D = inst.deadline;
  const Rat Drat = ratOf(D);

  LiteResult res;
  res.variant = variant;

  // Reference schedule: exact optimum when affordable, first-fit shelves
  // otherwise. It anchors the large and horizontal placements and serves as
  // the fallback if every ladder rung fails.
  const bool oracleReach = inst.jobs.size() <= 9 && D <= 24;
  const bool useExact =
      forceReference ? *forceReference == ReferenceKind::Exact : oracleReach;
  if (useExact && !oracleReach)
    throw InvalidInput("exact reference requires n <= 9 and deadline <= 24");
  Schedule reference;
  if (useExact) {
    reference = exactOpt(inst).schedule;
    res.reference = ReferenceKind::Exact;
  } else {
    std::vector<Rect> rects;
    for (const Job& j : inst.jobs) rects.push_back({j.id, ratOf(j.p), ratOf(j.e)});
    reference.algorithm = "ffdh";
    for (const RectPlacement& rp : ffdh(rects, Drat).placements)
      reference.assignments.push_back({rp.id, floorRat(rp.x)});
    res.reference = ReferenceKind::Shelf;
  }
  res.refPeak = peakOf(inst, reference);

  const Rat tPrime = lowerBound(inst).t;
  const Rat cap = std::max(Rat(2) * totalArea(inst) / Drat, Rat(2 * maxEnergy(inst)));
  const Rat top = std::max(tPrime, cap);

  std::vector<RatAssignment> baseStarts;
  std::vector<RatAssignment> containerRel;
  bool solved = false;
  Rat T = tPrime;
  for (; T <= top; T += eps * tPrime) {
    res.tUsed = T;
    Rat containerWidth = variant == OverflowVariant::C1 ? params.gamma * Drat : Drat;
    Rat containerBudget = variant == OverflowVariant::C1
                              ? Rat(ceilRat(1 / eps)) * eps * T
                              : roundUpTo(ratOf(maxEnergy(inst)), eps * T);
    try {
      PipelineOutcome outcome =
          runPipeline(inst, reference, eps, T, containerWidth, containerBudget);
      baseStarts = std::move(outcome.baseStarts);
      containerRel = std::move(outcome.containerRel);
      res.overflow.widthBudget = containerWidth;
      res.overflow.heightBudget = containerBudget;
      solved = true;
      break;
    } catch (const Infeasible&) {
      continue;
    }
  }

  if (!solved) {
    // No rung accepted the instance; fall back to the reference schedule
    // with an empty container so callers still get a complete answer.
    res.base = reference;
    res.base.algorithm = "lite";
    res.base.peak = res.refPeak;
    res.overflow.widthBudget =
        variant == OverflowVariant::C1 ? params.gamma * Drat : Drat;
    res.overflow.heightBudget = variant == OverflowVariant::C1
                                    ? Rat(ceilRat(1 / eps)) * eps * res.tUsed
                                    : roundUpTo(ratOf(maxEnergy(inst)), eps * res.tUsed);
    res.overflow.contents.algorithm = "overflow";
    res.kMeasured = 0;
    return res;
  }

  res.base.algorithm = "lite";
  for (const RatAssignment& ra : baseStarts) {
    const Job& j = inst.job(ra.id);
    if (ra.start < 0 || ra.start + j.p > Drat)
      throw InternalInvariant("base start of job " + ra.id + " leaves [0, deadline]");
    res.base.assignments.push_back({ra.id, floorRat(ra.start)});
  }
  res.base.peak = profileOf(inst, res.base).peak();

  res.overflow.contents.algorithm = "overflow";
  for (const RatAssignment& ra : containerRel)
    res.overflow.contents.assignments.push_back({ra.id, floorRat(ra.start)});
  // The rational layout already passed the budget checks and flooring can
  // only shrink the extent and the peak.
  if (res.overflow.usedWidth(inst) > res.overflow.widthBudget)
    throw InternalInvariant("flooring widened the overflow container");
  if (Rat(res.overflow.contentsPeak(inst)) > res.overflow.heightBudget)
    throw InternalInvariant("flooring raised the overflow container peak");

  std::set<std::string> covered;
  for (const Assignment& a : res.base.assignments)
    if (!covered.insert(a.id).second)
      throw InternalInvariant("job " + a.id + " placed twice across base and container");
  for (const Assignment& a : res.overflow.contents.assignments)
    if (!covered.insert(a.id).second)
      throw InternalInvariant("job " + a.id + " placed twice across base and container");
  for (const Job& j : inst.jobs)
    if (!covered.count(j.id))
      throw InternalInvariant("job " + j.id + " fell through the pipeline");

  res.kMeasured = (Rat(res.base.peak) / Rat(res.refPeak) - 1) / eps;
  return res;
}

}  // namespace peakpack
