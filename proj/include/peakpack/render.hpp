#pragma once

#include <string>

#include "peakpack/core.hpp"

namespace peakpack {

// SVG drawing of a schedule: one column per unit time slot, jobs stacked in
// (start, id) order, dashed guide lines at the instance lower bound T' and
// at (5/3)T'. All coordinates are integers scaled by a fixed factor, so the
// output is byte-stable for a given schedule.
std::string renderSvg(const Instance& inst, const Schedule& sched);

}  // namespace peakpack
