#include "peakpack/exact.hpp"

#include <algorithm>
#include <chrono>
#include <vector>

#include "peakpack/bounds.hpp"
#include "peakpack/errors.hpp"

namespace peakpack {

namespace {

using Clock = std::chrono::steady_clock;

struct Searcher {
  const Instance& inst;
  const ExactLimits& limits;
  Int D;
  std::vector<const Job*> order;  // branch order
  std::vector<int> prevIdentical; // index of previous job with same (p, e)
  std::vector<Int> load;          // demand per unit time
  std::vector<Int> starts;        // current partial assignment
  Int curPeak = 0;
  Int bestPeak = 0;
  std::vector<Int> bestStarts;
  bool haveBest = false;
  long long nodes = 0;
  Clock::time_point t0;
  ExactStatus status = ExactStatus::Optimal;
  Int targetPeak = -1;  // decision mode: succeed as soon as peak <= target
  bool decisionFound = false;
  Int globalLb = 0;

  Searcher(const Instance& i, const ExactLimits& l) : inst(i), limits(l) {
    checkInstance(inst);
    D = inst.deadline;
    if (limits.startGrid < 1) throw InvalidInput("startGrid must be >= 1");
    for (const Job& j : inst.jobs) {
      if (j.p % limits.startGrid != 0)
        throw InvalidInput(
            "startGrid requires all processing times to be multiples of it");
      order.push_back(&j);
    }
    std::sort(order.begin(), order.end(), [](const Job* a, const Job* b) {
      if (a->p * a->e != b->p * b->e) return a->p * a->e > b->p * b->e;
      if (a->e != b->e) return a->e > b->e;
      return a->id < b->id;
    });
    prevIdentical.assign(order.size(), -1);
    for (std::size_t i = 0; i < order.size(); ++i)
      for (std::size_t k = i; k-- > 0;)
        if (order[k]->p == order[i]->p && order[k]->e == order[i]->e) {
          prevIdentical[i] = static_cast<int>(k);
          break;
        }
    load.assign(static_cast<std::size_t>(D), 0);
    starts.assign(order.size(), -1);
    t0 = Clock::now();
  }

  bool limitsHit() {
    if (nodes >= limits.maxNodes) {
      status = ExactStatus::NodeLimit;
      return true;
    }
    if ((nodes & 4095) == 0) {
      double secs = std::chrono::duration<double>(Clock::now() - t0).count();
      if (secs > limits.timeLimitSec) {
        status = ExactStatus::TimeLimit;
        return true;
      }
    }
    return false;
  }

  Int place(std::size_t idx, Int s) {
    const Job* j = order[idx];
    Int newPeak = curPeak;
    for (Int t = s; t < s + j->p; ++t) {
      load[static_cast<std::size_t>(t)] += j->e;
      newPeak = std::max(newPeak, load[static_cast<std::size_t>(t)]);
    }
    starts[idx] = s;
    std::swap(curPeak, newPeak);
    return newPeak;  // old peak, for undo
  }

  void unplace(std::size_t idx, Int s, Int oldPeak) {
    const Job* j = order[idx];
    for (Int t = s; t < s + j->p; ++t)
      load[static_cast<std::size_t>(t)] -= j->e;
    starts[idx] = -1;
    curPeak = oldPeak;
  }

  // Greedy seed: each job at the start minimizing the running peak.
  void seedIncumbent() {
    for (std::size_t i = 0; i < order.size(); ++i) {
      Int bestS = 0, bestP = -1;
      for (Int s = 0; s + order[i]->p <= D; s += limits.startGrid) {
        Int probe = curPeak;
        for (Int t = s; t < s + order[i]->p; ++t)
          probe = std::max(probe, load[static_cast<std::size_t>(t)] + order[i]->e);
        if (bestP < 0 || probe < bestP) {
          bestP = probe;
          bestS = s;
        }
      }
      place(i, bestS);
    }
    bestPeak = curPeak;
    bestStarts = starts;
    haveBest = true;
    for (std::size_t i = order.size(); i-- > 0;)
      unplace(i, starts[i], 0);
    curPeak = 0;
  }

  bool done() const {
    if (targetPeak >= 0) return decisionFound;
    return haveBest && bestPeak <= globalLb;
  }

  void dfs(std::size_t idx) {
    if (status != ExactStatus::Optimal || done()) return;
    if (idx == order.size()) {
      if (targetPeak >= 0) {
        if (curPeak <= targetPeak) {
          decisionFound = true;
          bestPeak = curPeak;
          bestStarts = starts;
          haveBest = true;
        }
        return;
      }
      if (!haveBest || curPeak < bestPeak) {
        bestPeak = curPeak;
        bestStarts = starts;
        haveBest = true;
      }
      return;
    }
    const Job* j = order[idx];
    Int lo = 0;
    Int hi = D - j->p;
    if (idx == 0) hi = (D - j->p) / 2;  // mirror symmetry
    if (prevIdentical[idx] >= 0)
      lo = starts[static_cast<std::size_t>(prevIdentical[idx])];
    lo = ((lo + limits.startGrid - 1) / limits.startGrid) * limits.startGrid;
    for (Int s = lo; s <= hi; s += limits.startGrid) {
      ++nodes;
      if (limitsHit()) return;
      Int oldPeak = place(idx, s);
      bool prune;
      if (targetPeak >= 0)
        prune = curPeak > targetPeak;
      else
        prune = haveBest && curPeak >= bestPeak;
      if (!prune) dfs(idx + 1);
      unplace(idx, s, oldPeak);
      if (status != ExactStatus::Optimal || done()) return;
    }
  }

  Schedule buildSchedule(const char* algorithm) const {
    Schedule sched;
    sched.algorithm = algorithm;
    sched.peak = bestPeak;
    for (std::size_t i = 0; i < order.size(); ++i)
      sched.assignments.push_back({order[i]->id, bestStarts[i]});
    std::sort(sched.assignments.begin(), sched.assignments.end(),
              [](const Assignment& a, const Assignment& b) { return a.id < b.id; });
    return sched;
  }
};

}  // namespace

ExactResult exactOpt(const Instance& inst, const ExactLimits& limits) {
  Searcher s(inst, limits);
  s.globalLb = ceilRat(lowerBound(inst).t);
  s.seedIncumbent();
  if (s.bestPeak > s.globalLb) s.dfs(0);
  ExactResult res;
  res.status = s.status;
  res.peak = s.bestPeak;
  res.schedule = s.buildSchedule("exact");
  res.nodes = s.nodes;
  return res;
}

DecisionStatus exactDecision(const Instance& inst, Int T,
                             const ExactLimits& limits) {
  Searcher s(inst, limits);
  s.targetPeak = T;
  if (ceilRat(lowerBound(inst).t) > T) return DecisionStatus::Infeasible;
  s.dfs(0);
  if (s.decisionFound) return DecisionStatus::Feasible;
  if (s.status != ExactStatus::Optimal) return DecisionStatus::Limit;
  return DecisionStatus::Infeasible;
}

}  // namespace peakpack
