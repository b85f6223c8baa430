#pragma once

#include <cstdint>
#include <string>

#include "peakpack/core.hpp"

namespace peakpack {

// Instance families the generator can draw from. ManyTall skews energies
// high and widths low; ManyWide gives at least half the jobs width >=
// (3/4)D; Balanced draws both uniformly.
enum class GenDist { Balanced, ManyTall, ManyWide };

struct GenSpec {
  int n = 0;
  Int deadline = 0;
  Int maxEnergy = 0;  // 0 picks a default tied to the deadline
  GenDist dist = GenDist::Balanced;
  std::uint64_t seed = 0;
};

GenDist parseDist(const std::string& name);  // throws InvalidInput on unknown names

// Deterministic across platforms: all draws go through one bounded-draw
// helper over mt19937_64, never through distribution objects.
Instance generate(const GenSpec& spec);

}  // namespace peakpack
