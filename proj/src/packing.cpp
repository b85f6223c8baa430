#include "peakpack/packing.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "peakpack/errors.hpp"

namespace peakpack {

namespace {

Rat posPart(const Rat& x) { return x > 0 ? x : Rat(0); }

void checkRects(const std::vector<Rect>& rects) {
  std::set<std::string> seen;
  for (const Rect& r : rects) {
    if (r.id.empty()) throw InvalidInput("rect with empty id");
    if (!seen.insert(r.id).second) throw InvalidInput("duplicate rect id: " + r.id);
    if (!(r.w > 0) || !(r.h > 0))
      throw InvalidInput("rect " + r.id + " has nonpositive dimensions");
  }
}

Rat totalRectArea(const std::vector<Rect>& rects) {
  Rat a = 0;
  for (const Rect& r : rects) a += r.w * r.h;
  return a;
}

bool admissible(const std::vector<Rect>& rects, const Rat& u, const Rat& v) {
  if (rects.empty()) return true;
  Rat wmax = 0, hmax = 0;
  for (const Rect& r : rects) {
    wmax = std::max(wmax, r.w);
    hmax = std::max(hmax, r.h);
  }
  if (wmax > u || hmax > v) return false;
  return 2 * totalRectArea(rects) <=
         u * v - posPart(2 * wmax - u) * posPart(2 * hmax - v);
}

std::vector<const Rect*> byHeightDesc(std::vector<const Rect*> rects) {
  std::sort(rects.begin(), rects.end(), [](const Rect* a, const Rect* b) {
    if (a->h != b->h) return a->h > b->h;
    if (a->w != b->w) return a->w > b->w;
    return a->id < b->id;
  });
  return rects;
}

std::vector<const Rect*> byWidthDesc(std::vector<const Rect*> rects) {
  std::sort(rects.begin(), rects.end(), [](const Rect* a, const Rect* b) {
    if (a->w != b->w) return a->w > b->w;
    if (a->h != b->h) return a->h > b->h;
    return a->id < b->id;
  });
  return rects;
}

struct Shelf {
  Rat y;
  Rat height;
  Rat used;
};

ShelfResult shelfPack(const std::vector<Rect>& rects, const Rat& stripWidth,
                      bool firstFit) {
  checkRects(rects);
  for (const Rect& r : rects)
    if (r.w > stripWidth)
      throw PreconditionFailed("rect " + r.id + " is wider than the strip");
  std::vector<const Rect*> order;
  for (const Rect& r : rects) order.push_back(&r);
  order = byHeightDesc(order);

  ShelfResult res;
  res.usedHeight = 0;
  std::vector<Shelf> shelves;
  for (const Rect* r : order) {
    Shelf* target = nullptr;
    if (firstFit) {
      for (Shelf& s : shelves)
        if (s.used + r->w <= stripWidth) {
          target = &s;
          break;
        }
    } else if (!shelves.empty() && shelves.back().used + r->w <= stripWidth) {
      target = &shelves.back();
    }
    if (!target) {
      shelves.push_back({res.usedHeight, r->h, Rat(0)});
      res.usedHeight += r->h;
      target = &shelves.back();
    }
    res.placements.push_back({r->id, target->used, target->y});
    target->used += r->w;
  }
  return res;
}

// Recursive packer. The construction at each node (proofs below rely on the
// node's admissibility, asserted on entry):
//
//  * wides W = {w > u/2} stacked bottom-left by decreasing width;
//  * pure talls Tp = {h > v/2, w <= u/2} in a top-right row, tallest at the
//    right edge; a transpose first ensures w(Tp) <= u/2 (if w(Tp) > u/2 then
//    h(W \ talls) <= v/2 by area, so the transposed instance satisfies it);
//  * blockers B = {h > v - h(W)} among the remaining quarter rects, in a
//    top-aligned row immediately left of the talls (nonempty only when
//    h(W) > v/2);
//  * the rest recursed into the (u - w(Tp) - w(B)) x (v - h(W)) box above
//    the wides and left of the two rows.
//
// No-collision arguments, writing H = h(W), X = w(Tp), WB = w(B), A = total
// area, and using 2A <= uv - (2wmax-u)+(2hmax-v)+ at this node:
//  * wide (width a, top at Y) vs tall (height c): a collision needs a > u - X_k
//    and Y > v - c, but then 2A >= 2aY + 2cX_k > 2av + 2uc - 4ac, which
//    exceeds uv - (2a-u)(2c-v) >= 2A, a contradiction.
//  * wide vs blocker (height hb <= v/2): a collision needs Y > v - hb, and
//    counting wides below Y, talls, and the blockers right of the colliding
//    one gives 2A > uv using h(W) > v - hb from the blocker definition.
//  * capacity: 2A >= u*H + v*X + 2*WB*(v-H) forces X + WB < u/2 when B is
//    nonempty, and X < u always.
// Sub-box admissibility: 2A(rest) <= 2A - uH - vX - 2WB(v-H) and the product
// term of the sub-box condition is bounded by (X+WB)(v-H) (when B nonempty,
// H > v/2 makes 2(v-H) <= v) or by the original condition's slack
// (2wmax-u)(2hmax-v) when both W and Tp are nonempty; the remaining
// degenerate combinations make the product term vanish.
struct Packer {
  std::vector<RectPlacement> out;

  void solve(std::vector<const Rect*> items, const Rat& u, const Rat& v,
             const Rat& ox, const Rat& oy) {
    if (items.empty()) return;
    if (!nodeAdmissible(items, u, v))
      throw InternalInvariant("packing recursion reached an inadmissible node");

    if (tryShelves(items, u, v, ox, oy)) return;

    std::vector<const Rect*> wides, talls, rest;
    for (const Rect* r : items) {
      if (2 * r->w > u)
        wides.push_back(r);
      else if (2 * r->h > v)
        talls.push_back(r);
      else
        rest.push_back(r);
    }

    if (wides.empty() && talls.empty()) {
      quarter(items, u, v, ox, oy);
      return;
    }

    Rat tallsWidth = 0;
    for (const Rect* r : talls) tallsWidth += r->w;
    if (2 * tallsWidth > u) {
      transposeSolve(items, u, v, ox, oy);
      return;
    }
    mixed(wides, talls, rest, u, v, ox, oy);
  }

  static bool nodeAdmissible(const std::vector<const Rect*>& items, const Rat& u,
                             const Rat& v) {
    std::vector<Rect> tmp;
    for (const Rect* r : items) tmp.push_back(*r);
    return admissible(tmp, u, v);
  }

  bool tryShelves(const std::vector<const Rect*>& items, const Rat& u,
                  const Rat& v, const Rat& ox, const Rat& oy) {
    std::vector<Rect> tmp;
    for (const Rect* r : items) tmp.push_back(*r);
    for (bool firstFit : {false, true}) {
      ShelfResult sr = shelfPack(tmp, u, firstFit);
      if (sr.usedHeight <= v) {
        for (const RectPlacement& p : sr.placements)
          out.push_back({p.id, p.x + ox, p.y + oy});
        return true;
      }
    }
    return false;
  }

  void transposeSolve(const std::vector<const Rect*>& items, const Rat& u,
                      const Rat& v, const Rat& ox, const Rat& oy) {
    std::vector<Rect> flipped;
    for (const Rect* r : items) flipped.push_back({r->id, r->h, r->w});
    Packer sub;
    std::vector<const Rect*> subItems;
    for (const Rect& r : flipped) subItems.push_back(&r);
    sub.solve(subItems, v, u, Rat(0), Rat(0));
    for (const RectPlacement& p : sub.out)
      out.push_back({p.id, p.y + ox, p.x + oy});
  }

  void mixed(const std::vector<const Rect*>& wides,
             const std::vector<const Rect*>& talls,
             const std::vector<const Rect*>& rest, const Rat& u, const Rat& v,
             const Rat& ox, const Rat& oy) {
    auto sortedWides = byWidthDesc(wides);
    Rat wideHeight = 0;
    for (const Rect* r : sortedWides) {
      out.push_back({r->id, ox, oy + wideHeight});
      wideHeight += r->h;
    }
    if (wideHeight > v)
      throw InternalInvariant("wide stack exceeds the box height");

    auto sortedTalls = byHeightDesc(talls);
    Rat tallsWidth = 0;
    for (const Rect* r : sortedTalls) {
      tallsWidth += r->w;
      out.push_back({r->id, ox + u - tallsWidth, oy + v - r->h});
    }

    std::vector<const Rect*> blockers, inner;
    for (const Rect* r : rest) {
      if (r->h > v - wideHeight)
        blockers.push_back(r);
      else
        inner.push_back(r);
    }
    if (!blockers.empty() && !(2 * wideHeight > v))
      throw InternalInvariant("blockers exist although the wide stack is low");

    auto sortedBlockers = byHeightDesc(blockers);
    Rat blockersWidth = 0;
    for (const Rect* r : sortedBlockers) {
      blockersWidth += r->w;
      out.push_back({r->id, ox + u - tallsWidth - blockersWidth, oy + v - r->h});
    }
    if (tallsWidth + blockersWidth > u)
      throw InternalInvariant("top rows exceed the box width");

    solve(inner, u - tallsWidth - blockersWidth, v - wideHeight, ox,
          oy + wideHeight);
  }

  // All rects have w <= u/2 and h <= v/2, so the condition degenerates to
  // 2A <= uv. Try a prefix split along either axis with directly verified
  // sub-conditions; the shelf fast paths already ran.
  void quarter(const std::vector<const Rect*>& items, const Rat& u, const Rat& v,
               const Rat& ox, const Rat& oy) {
    if (trySplit(items, u, v, ox, oy, false)) return;
    if (trySplit(items, u, v, ox, oy, true)) return;
    throw InternalInvariant("quarter case: no split applies");
  }

  bool trySplit(const std::vector<const Rect*>& items, const Rat& u, const Rat& v,
                const Rat& ox, const Rat& oy, bool horizontal) {
    // For the horizontal split, work transposed and flip placements locally.
    auto order = horizontal ? byHeightDesc(items) : byWidthDesc(items);
    Rat U = horizontal ? v : u;
    Rat V = horizontal ? u : v;
    auto dim = [&](const Rect* r) { return horizontal ? r->h : r->w; };

    Rat total = 0;
    for (const Rect* r : order) total += r->w * r->h;
    Rat prefix = 0;
    for (std::size_t k = 0; k + 1 < order.size(); ++k) {
      prefix += order[k]->w * order[k]->h;
      Rat uL = std::max(dim(order[0]), 2 * prefix / V);
      if (dim(order[k + 1]) > U - uL) continue;
      if (2 * (total - prefix) > (U - uL) * V) continue;
      std::vector<const Rect*> left(order.begin(), order.begin() + k + 1);
      std::vector<const Rect*> right(order.begin() + k + 1, order.end());
      if (!horizontal) {
        solve(left, uL, v, ox, oy);
        solve(right, u - uL, v, ox + uL, oy);
      } else {
        solve(left, u, uL, ox, oy);
        solve(right, u, v - uL, ox, oy + uL);
      }
      return true;
    }
    return false;
  }
};

}  // namespace

bool steinbergCondition(const std::vector<Rect>& rects, const Box& box) {
  checkRects(rects);
  return admissible(rects, box.width, box.height);
}

std::vector<RectPlacement> steinbergPack(const std::vector<Rect>& rects,
                                         const Box& box) {
  checkRects(rects);
  if (!admissible(rects, box.width, box.height))
    throw ConditionViolated("rect set fails the packing condition");
  Packer packer;
  std::vector<const Rect*> items;
  for (const Rect& r : rects) items.push_back(&r);
  packer.solve(items, box.width, box.height, Rat(0), Rat(0));
  auto violations = verifyPacking(rects, packer.out, box);
  if (!violations.empty())
    throw InternalInvariant("packer produced an invalid layout: " +
                            violations.front().kind + " (" +
                            violations.front().id + ")");
  return packer.out;
}

ShelfResult nfdh(const std::vector<Rect>& rects, const Rat& stripWidth) {
  return shelfPack(rects, stripWidth, false);
}

ShelfResult ffdh(const std::vector<Rect>& rects, const Rat& stripWidth) {
  return shelfPack(rects, stripWidth, true);
}

std::vector<PackViolation> verifyPacking(const std::vector<Rect>& rects,
                                         const std::vector<RectPlacement>& placements,
                                         const Box& box) {
  std::vector<PackViolation> out;
  std::map<std::string, const Rect*> byId;
  for (const Rect& r : rects) byId[r.id] = &r;

  std::set<std::string> placed;
  std::vector<std::pair<const Rect*, const RectPlacement*>> good;
  for (const RectPlacement& p : placements) {
    auto it = byId.find(p.id);
    if (it == byId.end()) {
      out.push_back({"unknown-rect", p.id, "placement for an unknown rect"});
      continue;
    }
    if (!placed.insert(p.id).second) {
      out.push_back({"duplicate", p.id, "rect placed more than once"});
      continue;
    }
    const Rect* r = it->second;
    if (p.x < 0 || p.y < 0 || p.x + r->w > box.width || p.y + r->h > box.height)
      out.push_back({"out-of-box", p.id, "rect extends outside the box"});
    good.emplace_back(r, &p);
  }
  for (const Rect& r : rects)
    if (!placed.count(r.id)) out.push_back({"missing", r.id, "rect never placed"});

  for (std::size_t i = 0; i < good.size(); ++i)
    for (std::size_t k = i + 1; k < good.size(); ++k) {
      const auto& [ra, pa] = good[i];
      const auto& [rb, pb] = good[k];
      bool xOverlap = pa->x < pb->x + rb->w && pb->x < pa->x + ra->w;
      bool yOverlap = pa->y < pb->y + rb->h && pb->y < pa->y + ra->h;
      if (xOverlap && yOverlap)
        out.push_back({"overlap", pa->id, "overlaps rect " + pb->id});
    }
  return out;
}

}  // namespace peakpack
