#include "peakpack/render.hpp"

#include <algorithm>
#include <cstdint>
#include <sstream>
#include <vector>

#include "peakpack/bounds.hpp"
#include "peakpack/errors.hpp"

namespace peakpack {

namespace {

constexpr Int kCellW = 24;  // pixels per time unit
constexpr Int kCellH = 12;  // pixels per energy unit
constexpr Int kMargin = 30;

// FNV-1a over the id bytes; std::hash is implementation-defined and would
// break byte-stable output across platforms.
std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

const char* const kPalette[] = {"#4e79a7", "#f28e2b", "#59a14f", "#e15759",
                               "#76b7b2", "#edc948", "#b07aa1", "#9c755f"};

}  // namespace

std::string renderSvg(const Instance& inst, const Schedule& sched) {
  const std::vector<Violation> errs = validate(inst, sched);
  if (!errs.empty()) throw InvalidInput("cannot render: " + errs.front().detail);

  const Int D = inst.deadline;
  const Rat tPrime = lowerBound(inst).t;
  const Rat guideHigh = tPrime * 5 / 3;
  const Int peak = profileOf(inst, sched).peak();
  const Int topUnits = std::max(peak, ceilRat(guideHigh)) + 1;

  const Int width = D * kCellW + 2 * kMargin;
  const Int height = topUnits * kCellH + 2 * kMargin;
  const auto yOf = [&](const Rat& units) {
    return kMargin + (topUnits * kCellH - floorRat(units * kCellH));
  };

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
      << height << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
  out << "<rect x=\"0\" y=\"0\" width=\"" << width << "\" height=\"" << height
      << "\" fill=\"#ffffff\"/>\n";

  // Stack the active jobs of every unit time slot in (start, id) order.
  std::vector<const Assignment*> order;
  for (const Assignment& a : sched.assignments) order.push_back(&a);
  std::sort(order.begin(), order.end(), [](const Assignment* a, const Assignment* b) {
    if (a->start != b->start) return a->start < b->start;
    return a->id < b->id;
  });
  for (Int tau = 0; tau < D; ++tau) {
    Int bottom = 0;
    for (const Assignment* a : order) {
      const Job& j = inst.job(a->id);
      if (!(a->start <= tau && tau < a->start + j.p)) continue;
      const Int x = kMargin + tau * kCellW;
      const Int y = yOf(ratOf(bottom + j.e));
      out << "<rect x=\"" << x << "\" y=\"" << y << "\" width=\"" << kCellW
          << "\" height=\"" << j.e * kCellH << "\" fill=\""
          << kPalette[fnv1a(a->id) % (sizeof(kPalette) / sizeof(kPalette[0]))]
          << "\" stroke=\"#333333\" stroke-width=\"1\"><title>" << a->id
          << "</title></rect>\n";
      bottom += j.e;
    }
  }

  // Axis line at demand zero plus the two dashed guides.
  out << "<line x1=\"" << kMargin << "\" y1=\"" << yOf(Rat(0)) << "\" x2=\""
      << (width - kMargin) << "\" y2=\"" << yOf(Rat(0))
      << "\" stroke=\"#000000\" stroke-width=\"1\"/>\n";
  const auto guide = [&](const Rat& level, const char* label) {
    const Int y = yOf(level);
    out << "<line x1=\"" << kMargin << "\" y1=\"" << y << "\" x2=\"" << (width - kMargin)
        << "\" y2=\"" << y
        << "\" stroke=\"#cc0000\" stroke-width=\"1\" stroke-dasharray=\"6 4\"/>\n";
    out << "<text x=\"" << (kMargin + 4) << "\" y=\"" << (y - 3)
        << "\" font-family=\"monospace\" font-size=\"10\" fill=\"#cc0000\">" << label
        << "</text>\n";
  };
  guide(tPrime, "T'");
  guide(guideHigh, "5/3 T'");
  out << "</svg>\n";
  return out.str();
}

}  // namespace peakpack
