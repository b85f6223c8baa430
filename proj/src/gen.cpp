#include "peakpack/gen.hpp"

#include <random>

#include "peakpack/errors.hpp"

namespace peakpack {

namespace {

// Uniform draw from [lo, hi] via modulo; the slight bias is irrelevant here
// and the result does not depend on library distribution internals.
Int draw(std::mt19937_64& rng, Int lo, Int hi) {
  return lo + static_cast<Int>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

}  // namespace

GenDist parseDist(const std::string& name) {
  if (name == "balanced") return GenDist::Balanced;
  if (name == "many-tall") return GenDist::ManyTall;
  if (name == "many-wide") return GenDist::ManyWide;
  throw InvalidInput("unknown distribution \"" + name + "\"");
}

Instance generate(const GenSpec& spec) {
  if (spec.n <= 0) throw InvalidInput("job count must be positive");
  if (spec.deadline <= 0) throw InvalidInput("deadline must be positive");
  if (spec.maxEnergy < 0) throw InvalidInput("maxEnergy must be nonnegative");
  const Int D = spec.deadline;
  const Int eMax = spec.maxEnergy > 0 ? spec.maxEnergy : std::max<Int>(Int(1), D / 2);

  std::mt19937_64 rng(spec.seed);
  Instance inst;
  inst.deadline = D;
  for (int i = 0; i < spec.n; ++i) {
    Job j;
    j.id = "j" + std::to_string(i);
    switch (spec.dist) {
      case GenDist::Balanced:
        j.p = draw(rng, 1, D);
        j.e = draw(rng, 1, eMax);
        break;
      case GenDist::ManyTall:
        // Narrow and tall: widths from the low quarter, energies from the
        // high half.
        j.p = draw(rng, 1, std::max<Int>(Int(1), D / 4));
        j.e = draw(rng, (eMax + 1) / 2 > 0 ? (eMax + 1) / 2 : 1, eMax);
        break;
      case GenDist::ManyWide:
        // Alternate wide and narrow so at least half the jobs occupy width
        // >= (3/4)D.
        if (i % 2 == 0) {
          Int lo = (3 * D + 3) / 4;
          j.p = draw(rng, std::min(lo, D), D);
        } else {
          j.p = draw(rng, 1, D);
        }
        j.e = draw(rng, 1, eMax);
        break;
    }
    inst.jobs.push_back(j);
  }
  checkInstance(inst);
  return inst;
}

}  // namespace peakpack
