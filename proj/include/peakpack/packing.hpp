#pragma once

#include <string>
#include <vector>

#include "peakpack/core.hpp"
#include "peakpack/rational.hpp"

namespace peakpack {

struct Rect {
  std::string id;
  Rat w;
  Rat h;
};

struct RectPlacement {
  std::string id;
  Rat x;
  Rat y;
};

struct Box {
  Rat width;
  Rat height;
};

// Sufficient condition for packability into the box:
//   w_max <= W, h_max <= H, and
//   2*sum(w*h) <= W*H - max(2*w_max - W, 0) * max(2*h_max - H, 0).
// Sufficient but not necessary: a single 4x4 rect fails it for a 5x5 box yet
// obviously fits.
bool steinbergCondition(const std::vector<Rect>& rects, const Box& box);

// Packs rects into the box whenever steinbergCondition holds. Throws
// ConditionViolated if it does not hold, InternalInvariant if the recursion
// ever reaches a state its own invariants forbid. The returned placement is
// re-verified before being returned.
std::vector<RectPlacement> steinbergPack(const std::vector<Rect>& rects,
                                         const Box& box);

struct ShelfResult {
  std::vector<RectPlacement> placements;
  Rat usedHeight;
};

// Next-fit decreasing height: sort by decreasing height (ties decreasing
// width, then id) and fill shelves left to right, opening a new shelf when
// the current one cannot take the next rect.
ShelfResult nfdh(const std::vector<Rect>& rects, const Rat& stripWidth);

// First-fit decreasing height: same order, but each rect goes to the first
// shelf with room.
ShelfResult ffdh(const std::vector<Rect>& rects, const Rat& stripWidth);

struct PackViolation {
  std::string kind;  // "out-of-box" | "overlap" | "unknown-rect" | "duplicate" | "missing"
  std::string id;
  std::string detail;
};

std::vector<PackViolation> verifyPacking(const std::vector<Rect>& rects,
                                         const std::vector<RectPlacement>& placements,
                                         const Box& box);

}  // namespace peakpack
