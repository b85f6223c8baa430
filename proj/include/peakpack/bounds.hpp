#pragma once

#include "peakpack/core.hpp"
#include "peakpack/rational.hpp"

namespace peakpack {

// Four lower bounds on the optimal peak demand, all exact rationals, and
// their maximum t. Each is individually sound: t <= OPT for every instance.
struct LowerBounds {
  Rat t1;
  Rat t2;
  Rat t3;
  Rat t4;
  Rat t;
};

// max{ e_max, totalArea/deadline, h({w > D/2}) }. The last term is sound
// because jobs wider than half the deadline pairwise overlap in any schedule.
Rat boundT1(const Instance& inst);

// Minimum T >= 0 such that
//   w({e > T/3}) + w({e > 2T/3}) <= 2D  and  w({e > T/2}) <= D.
// Feasibility is monotone in T and both conditions hold at T = OPT, so the
// minimum is a valid lower bound. Computed by scanning the candidate values
// {0} and {3e_j, (3/2)e_j, 2e_j} where a set membership can flip.
Rat boundT2(const Instance& inst);

// Prefix bound over the k highest-energy jobs (ties by id): the smallest
// member of the prefix must overlap either every sufficiently wide job
// outside the prefix or a mirrored copy of itself. Two variants: (a) prefixes
// of all jobs, wide set {w > D - w(prefix)/2} minus the prefix; (b) prefixes
// of the jobs with w <= D/2, wide set {w > D - w(prefix)/2} which is then
// disjoint from the prefix by construction.
Rat boundT3(const Instance& inst);

// Like T3 but the wide jobs' heights only count half:
//   min{ 2h(i_k), h(i_k) + h({w > max(D - w(prefix), D/2)} \ prefix)/2 }.
Rat boundT4(const Instance& inst);

LowerBounds lowerBound(const Instance& inst);

// Number of candidate values boundT2 inspects (3n + 1); exposed for tests.
std::size_t t2CandidateCount(const Instance& inst);

}  // namespace peakpack
