#include "doctest.h"

#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include "peakpack/errors.hpp"
#include "peakpack/packing.hpp"

using namespace peakpack;

namespace {

bool hasKind(const std::vector<PackViolation>& violations, const std::string& kind) {
  return std::any_of(violations.begin(), violations.end(),
                     [&](const PackViolation& v) { return v.kind == kind; });
}

std::vector<Rect> rectsOf(const std::vector<std::pair<Rat, Rat>>& dims) {
  std::vector<Rect> rects;
  int n = 0;
  for (const auto& [w, h] : dims) rects.push_back({"r" + std::to_string(n++), w, h});
  return rects;
}

}  // namespace

TEST_CASE("steinbergCondition on hand-checked boxes") {
  // A single 4x4 rect in a 5x5 box: 2*16 = 32 > 25 - 3*3 = 16, so the
  // condition fails even though the rect obviously fits.
  CHECK(!steinbergCondition(rectsOf({{4, 4}}), Box{5, 5}));
  // Three 3x3 rects in 10x6: 2*27 = 54 <= 60 with no corrective term.
  CHECK(steinbergCondition(rectsOf({{3, 3}, {3, 3}, {3, 3}}), Box{10, 6}));
  // Width 6 exceeds the box width 5 outright.
  CHECK(!steinbergCondition(rectsOf({{6, 1}}), Box{5, 5}));
}

TEST_CASE("steinbergPack packs hand-checked sets and rejects failing ones") {
  std::vector<Rect> rects = rectsOf({{3, 3}, {3, 3}, {3, 3}});
  Box box{10, 6};
  std::vector<RectPlacement> placements = steinbergPack(rects, box);
  CHECK(verifyPacking(rects, placements, box).empty());

  CHECK_THROWS_AS(steinbergPack(rectsOf({{4, 4}}), Box{5, 5}), ConditionViolated);
}

TEST_CASE("steinbergPack handles fractional dimensions") {
  std::vector<Rect> rects = rectsOf({{Rat(1) / 2, Rat(1) / 2},
                                     {Rat(1) / 2, Rat(1) / 2},
                                     {Rat(1) / 2, Rat(1) / 2},
                                     {Rat(1) / 2, Rat(1) / 2}});
  Box box{2, 2};
  CHECK(steinbergCondition(rects, box));
  CHECK(verifyPacking(rects, steinbergPack(rects, box), box).empty());
}

TEST_CASE("steinbergPack survives random condition-passing sets") {
  std::mt19937_64 rng(99);
  int packed = 0;
  for (int iter = 0; iter < 60; ++iter) {
    Rat W = 4 + static_cast<Int>(rng() % 9);
    Rat H = 4 + static_cast<Int>(rng() % 9);
    Box box{W, H};
    std::vector<Rect> rects;
    // Grow the set while the condition still holds; halves keep the
    // arithmetic rational without being trivial.
    for (int k = 0; k < 12; ++k) {
      Rat w = Rat(1 + static_cast<Int>(rng() % (2 * floorRat(W)))) / 2;
      Rat h = Rat(1 + static_cast<Int>(rng() % (2 * floorRat(H)))) / 2;
      rects.push_back({"r" + std::to_string(k), w, h});
      if (!steinbergCondition(rects, box)) {
        rects.pop_back();
        break;
      }
    }
    if (rects.empty()) continue;
    std::vector<RectPlacement> placements = steinbergPack(rects, box);
    CHECK(verifyPacking(rects, placements, box).empty());
    ++packed;
  }
  CHECK(packed > 30);
}

TEST_CASE("ffdh and nfdh agree on a single-pass fixture") {
  // Sorted order is (6,3), (4,2), (3,2): shelf one takes the first two, the
  // third opens a shelf of height 2 on top of height 3.
  std::vector<Rect> rects = rectsOf({{6, 3}, {3, 2}, {4, 2}});
  ShelfResult f = ffdh(rects, 10);
  ShelfResult n = nfdh(rects, 10);
  CHECK(f.usedHeight == 5);
  CHECK(n.usedHeight == 5);
  CHECK(verifyPacking(rects, f.placements, Box{10, f.usedHeight}).empty());
  CHECK(verifyPacking(rects, n.placements, Box{10, n.usedHeight}).empty());
}

TEST_CASE("ffdh revisits earlier shelves where nfdh cannot") {
  // Sorted order is (6,3), (5,2), (5,2), (4,2). Next-fit closes the first
  // shelf after the 6-wide rect, first-fit slots the final 4-wide rect back
  // into it.
  std::vector<Rect> rects = rectsOf({{6, 3}, {5, 2}, {4, 2}, {5, 2}});
  CHECK(nfdh(rects, 10).usedHeight == 7);
  CHECK(ffdh(rects, 10).usedHeight == 5);
}

TEST_CASE("shelf packers reject rects wider than the strip") {
  CHECK_THROWS_AS(ffdh(rectsOf({{11, 1}}), 10), PreconditionFailed);
  CHECK_THROWS_AS(nfdh(rectsOf({{11, 1}}), 10), PreconditionFailed);
}

TEST_CASE("verifyPacking reports each violation kind") {
  std::vector<Rect> rects = rectsOf({{2, 2}, {2, 2}});
  Box box{4, 4};

  CHECK(verifyPacking(rects, {{"r0", 0, 0}, {"r1", 2, 0}}, box).empty());
  CHECK(hasKind(verifyPacking(rects, {{"r0", 3, 0}, {"r1", 0, 0}}, box), "out-of-box"));
  CHECK(hasKind(verifyPacking(rects, {{"r0", 0, 0}, {"r1", 1, 1}}, box), "overlap"));
  CHECK(hasKind(verifyPacking(rects, {{"r0", 0, 0}, {"r1", 2, 0}, {"z", 0, 2}}, box),
                "unknown-rect"));
  CHECK(hasKind(verifyPacking(rects, {{"r0", 0, 0}, {"r0", 2, 0}, {"r1", 0, 2}}, box),
                "duplicate"));
  CHECK(hasKind(verifyPacking(rects, {{"r0", 0, 0}}, box), "missing"));
}

TEST_CASE("touching rects do not count as overlapping") {
  std::vector<Rect> rects = rectsOf({{2, 4}, {2, 4}});
  CHECK(verifyPacking(rects, {{"r0", 0, 0}, {"r1", 2, 0}}, Box{4, 4}).empty());
}
