#pragma once

#include <optional>
#include <string>
#include <vector>

#include "peakpack/approx.hpp"
#include "peakpack/core.hpp"
#include "peakpack/rational.hpp"

namespace peakpack {

// A reserved region of the time axis holding jobs at starts relative to the
// container origin. Placing the container at offset t schedules content job j
// at t + contents.startOf(j).
struct Container {
  Rat widthBudget;
  Rat heightBudget;
  Schedule contents;

  Rat usedWidth(const Instance& inst) const;  // max relative completion
  Int contentsPeak(const Instance& inst) const;
};

// One of the ten candidate regions between consecutive split points. k is the
// defining border index 1..5 (a mirrored segment keeps its own k); start/end
// delimit [start, end) in time.
struct Segment {
  int k = 0;
  bool rightSide = false;
  Rat start;
  Rat end;
};

// Split points tau_1..tau_5 and their mirrors D - tau_i, yielding ten
// segments in time order with k-indices 1,2,3,4,5,5,4,3,2,1:
//   tau_1 = D/8, tau_2 = (15 - 24g)D/64, tau_3 = (9 + 11g)D/32,
//   tau_4 = (3 + 2g)D/8, tau_5 = D/2.
std::vector<Segment> splitSegments(Int deadline, const Rat& gamma);

// A job whose energy demand exceeds (2/3)T; such jobs anchor the segment
// machinery (two of them can never run concurrently under peak T).
bool isHugeEnergy(Int e, const Rat& T);

// First base job (by id) with width in [gamma*D, (1-2gamma)D] and energy in
// [(1/3)T, (2/3)T]; enables the fast path.
std::optional<std::string> findMediumJob(const Instance& inst, const Schedule& base,
                                         const Rat& T, const Rat& gamma);

// Border adjustment: aligns the segment's start with the completion of a huge
// job (shifting by at most gamma*D) and clips the end so no huge job is
// active there. fromRight runs the mirrored procedure. The uncovered time
// inside the segment never decreases and the width never grows, asserted.
Segment adjustBorders(const Instance& inst, const Schedule& base, const Segment& seg,
                      const Rat& T, const Rat& gamma, bool fromRight);

// Packs the given non-huge jobs into a container of width budget 3*segWidth
// and height (2/3)T via the Steinberg packer; the condition always holds for
// jobs confined to a segment of width segWidth under peak T.
Container buildCCont(const Instance& inst, const std::vector<std::string>& jobIds,
                     const Rat& segWidth, const Rat& T);

// Moves the listed jobs to start at deadline - p. All movers must overlap
// tau in base. With h(move) <= a*T and T the base peak, the result peaks at
// most T before D/2 + tau*/2 (tau* = earliest mover start) and (1+a)T after.
Schedule shiftRightSet(const Instance& inst, const Schedule& base, const Rat& tau,
                       const std::vector<std::string>& moveIds);

// Folds the overflow container back into a near-optimal base schedule.
// Preconditions: peak(base) <= T; container budgets within gamma*D and T;
// h({w > (3/4)D}) <= (2/3)T' and w({e > (2/3)T'}) <= (1 - (3/4)eps)D for the
// instance lower bound T'. Result peak <= (5/3)T, asserted.
Schedule repack(const Instance& inst, const Schedule& base, const Rat& T,
                const Container& cGamma, const EpsilonParams& params);

}  // namespace peakpack
