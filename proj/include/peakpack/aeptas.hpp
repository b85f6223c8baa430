#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "peakpack/core.hpp"
#include "peakpack/rational.hpp"
#include "peakpack/repack.hpp"

namespace peakpack {

// Which overflow container the pipeline produced: C1 is the narrow tall
// container handed to the repacking stage; C2 is the wide flat fallback.
enum class OverflowVariant { C1, C2 };

// How the internal reference schedule was obtained.
enum class ReferenceKind { Exact, Shelf };

// Gap selection: geometric threshold ladder rho_0 = eps^5/4,
// rho_{i+1} = rho_i * eps^5, scanned until the jobs between delta = rho_i and
// mu = rho_{i+1} carry area at most (eps^2/4) * D * T.
struct GapResult {
  Rat delta;
  Rat mu;
  int index = 0;
};
GapResult selectGap(const Instance& inst, const Rat& eps, const Rat& T);

// Partition by the (delta, mu) gap: large jobs are both tall and wide,
// horizontal ones flat and wide, vertical ones tall and narrow, small ones
// flat and narrow, and everything else is medium.
struct Classification {
  std::vector<std::string> large;
  std::vector<std::string> horizontal;
  std::vector<std::string> vertical;
  std::vector<std::string> small;
  std::vector<std::string> medium;
  Rat delta;
  Rat mu;
};
Classification classify(const Instance& inst, const Rat& T, const Rat& delta, const Rat& mu);

// Rounds each listed job's energy up to the next multiple of eps*delta*T.
// Per-job inflation is at most a factor (1 + eps).
std::map<std::string, Rat> roundVertical(const Instance& inst,
                                         const std::vector<std::string>& ids,
                                         const Rat& eps, const Rat& delta, const Rat& T);

// Time segments of width gammaSeg * D. A segment is volatile when the
// large+horizontal profile varies by at least eps*T across it; its budget is
// T minus the profile maximum, rounded up to a multiple of eps*T (floored at
// zero). index -1 marks the synthetic top segment above the overflow
// container.
struct SegmentInfo {
  int index = 0;
  Rat start;
  Rat width;
  Rat budget;
  bool isVolatile = false;
};
struct ProfileSegments {
  std::vector<SegmentInfo> segments;
};
ProfileSegments profileSegments(const Instance& inst, const Schedule& hlBase, const Rat& T,
                                const Rat& eps, const Rat& gammaSeg, const Rat& topWidth,
                                const Rat& topBudget);

// One column pattern: a multiset of rounded heights summing to at most the
// class budget, with the solved horizontal extent.
struct ConfigVar {
  Rat classBudget;
  std::vector<std::pair<Rat, int>> counts;  // (rounded height, multiplicity)
  Rat width;
};
struct ConfigLpInput {
  std::vector<std::pair<Rat, Rat>> classWidths;   // (budget, total segment width)
  std::vector<std::pair<Rat, Rat>> heightWidths;  // (rounded height, total job width)
};
struct ConfigLpResult {
  bool feasible = false;
  std::vector<ConfigVar> vars;  // basic variables with width > 0
};
// Exact-rational configuration LP: class widths must be covered exactly and
// every rounded height class must receive exactly its total job width.
ConfigLpResult verticalConfigLp(const ConfigLpInput& input, const Rat& eps, const Rat& T);

// A free region above a config column, inside the owning segment's budget.
struct GapBox {
  Rat start;
  Rat width;
  Rat height;
};

// Stacks vertical jobs into the config columns laid side by side along their
// class segments. Jobs that straddle a column or segment border become
// fractional and fall into the overflow. gaps collects the unused headroom
// above each placed column for the small jobs.
struct PlaceResult {
  std::vector<RatAssignment> placed;
  std::vector<std::string> overflow;
  std::vector<GapBox> gaps;
};
PlaceResult placeConfigurations(const Instance& inst, const ProfileSegments& segs,
                                const ConfigLpResult& lp,
                                const std::map<std::string, Rat>& rounded,
                                const std::vector<std::string>& verticalIds);

// Next-fit-decreasing-height over the gap boxes in order; jobs no box can
// take are returned in overflow for the caller to shelve.
PlaceResult placeSmallNfdh(const Instance& inst, const std::vector<std::string>& smallIds,
                           const std::vector<GapBox>& boxes);

// Snaps horizontal jobs to at most 1/(eps) start layers per dyadic width
// class and segment, dropping the bottom layer of each stack.
struct ReduceResult {
  std::map<std::string, Int> starts;
  std::vector<std::string> removed;
};
ReduceResult reduceHorizontalStarts(const Instance& inst, const std::map<std::string, Int>& refStarts,
                                    const Rat& eps, Int deadline);

// Assignment LP over the reduced start set: each job picks a distribution
// over candidate starts subject to the residual capacity profile; the
// rounding takes each job's largest-weight start.
struct HorizontalLpResult {
  bool feasible = false;
  std::map<std::string, Int> starts;
};
HorizontalLpResult horizontalLp(const Instance& inst, const std::vector<std::string>& horIds,
                                const std::map<std::string, std::vector<Int>>& candidateStarts,
                                const RatProfile& capacity, Int deadline);

// Outcome of the lite pipeline: a base schedule for most jobs plus one
// overflow container holding the rest.
struct LiteResult {
  Schedule base;
  Container overflow;
  OverflowVariant variant = OverflowVariant::C1;
  ReferenceKind reference = ReferenceKind::Shelf;
  Rat tUsed;
  Int refPeak = 0;
  Rat kMeasured;  // (peak(base)/refPeak - 1)/eps, reported not enforced
};
// Runs the pipeline on a ladder of targets T = T', T' + eps*T', ... until one
// succeeds. variant selects the overflow container shape. By default the
// reference is exact for small instances and shelf-based otherwise;
// forceReference overrides that choice (Exact rejects instances beyond the
// oracle's reach).
LiteResult scheduleLite(const Instance& inst, const Rat& eps, OverflowVariant variant,
                        std::optional<ReferenceKind> forceReference = std::nullopt);

}  // namespace peakpack
