#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "peakpack/aeptas.hpp"
#include "peakpack/approx.hpp"
#include "peakpack/bounds.hpp"
#include "peakpack/core.hpp"
#include "peakpack/errors.hpp"
#include "peakpack/exact.hpp"
#include "peakpack/gen.hpp"
#include "peakpack/io.hpp"
#include "peakpack/lshape.hpp"
#include "peakpack/packing.hpp"
#include "peakpack/render.hpp"
#include "peakpack/repack.hpp"

namespace {

using nlohmann::ordered_json;
using namespace peakpack;

Rat ratArg(const std::string& text, const std::string& what) {
  std::optional<Rat> r = ratFromString(text);
  if (!r) throw InvalidInput(what + " is not a rational: \"" + text + "\"");
  return *r;
}

void emitText(const std::string& text, const std::string& outPath) {
  if (outPath.empty())
    std::cout << text;
  else
    writeFile(outPath, text);
}

// Every schedule leaves the process only after passing the validator.
void requireValid(const Instance& inst, const Schedule& sched) {
  std::vector<Violation> errs = validate(inst, sched);
  if (!errs.empty())
    throw InternalInvariant("emitted schedule failed validation: " + errs.front().detail);
}

Instance subInstance(const Instance& inst, const Schedule& covering) {
  Instance sub;
  sub.deadline = inst.deadline;
  for (const Job& j : inst.jobs)
    if (covering.has(j.id)) sub.jobs.push_back(j);
  return sub;
}

Schedule shelfSchedule(const Instance& inst, bool firstFit) {
  std::vector<Rect> rects;
  for (const Job& j : inst.jobs) rects.push_back({j.id, ratOf(j.p), ratOf(j.e)});
  ShelfResult shelf =
      firstFit ? ffdh(rects, ratOf(inst.deadline)) : nfdh(rects, ratOf(inst.deadline));
  Schedule sched;
  sched.algorithm = firstFit ? "ffdh" : "nfdh";
  for (const RectPlacement& rp : shelf.placements)
    sched.assignments.push_back({rp.id, floorRat(rp.x)});
  sched.peak = peakOf(inst, sched);
  return sched;
}

// L-shape over seq = {e > T'/2} and wide = {p > D/2} \ seq, then the
// remaining jobs one by one at the start that keeps the peak lowest
// (leftmost on ties).
Schedule lshapeComplete(const Instance& inst) {
  const Rat tPrime = lowerBound(inst).t;
  std::vector<const Job*> seqJobs;
  std::vector<std::string> wide;
  for (const Job& j : inst.jobs)
    if (Rat(j.e) * 2 > tPrime) seqJobs.push_back(&j);
  std::sort(seqJobs.begin(), seqJobs.end(), [](const Job* a, const Job* b) {
    if (a->e != b->e) return a->e > b->e;
    return a->id < b->id;
  });
  std::vector<std::string> seq;
  for (const Job* j : seqJobs) seq.push_back(j->id);
  for (const Job& j : inst.jobs)
    if (j.p * 2 > inst.deadline && !std::count(seq.begin(), seq.end(), j.id))
      wide.push_back(j.id);

  Schedule sched = lshapeSchedule(inst, seq, wide);
  sched.algorithm = "lshape";
  for (const Job& j : inst.jobs) {
    if (sched.has(j.id)) continue;
    Int bestStart = 0;
    Int bestPeak = 0;
    bool first = true;
    for (Int s = 0; s + j.p <= inst.deadline; ++s) {
      sched.assignments.push_back({j.id, s});
      Int peak = profileOf(inst, sched).peak();
      sched.assignments.pop_back();
      if (first || peak < bestPeak) {
        first = false;
        bestPeak = peak;
        bestStart = s;
      }
    }
    sched.assignments.push_back({j.id, bestStart});
  }
  sched.peak = peakOf(inst, sched);
  return sched;
}

Schedule runSolve(const Instance& inst, const std::string& algorithm, const Rat& eps,
                  const std::optional<Rat>& target) {
  if (algorithm == "auto") return solve(inst, eps).schedule;
  if (algorithm == "case1" || algorithm == "case2") {
    EpsilonParams params = EpsilonParams::fromEps(eps);
    Rat T = target ? *target : lowerBound(inst).t;
    return algorithm == "case1" ? solveCase1(inst, T, params) : solveCase2(inst, T, params);
  }
  if (algorithm == "lshape") return lshapeComplete(inst);
  if (algorithm == "ffdh") return shelfSchedule(inst, true);
  if (algorithm == "nfdh") return shelfSchedule(inst, false);
  if (algorithm == "exact") {
    ExactResult res = exactOpt(inst);
    if (res.status != ExactStatus::Optimal)
      throw ResourceExceeded("exact search hit its node or time limit");
    return res.schedule;
  }
  throw InvalidInput("unknown algorithm \"" + algorithm + "\"");
}

struct BenchRow {
  std::string instance;
  std::string algorithm;
  Int peak = 0;
  Rat lowerBoundT;
  std::optional<Int> opt;
  Rat ratio;
  long long wallMs = 0;
  std::string error;  // non-empty marks a skipped row
};

void runBench(const std::string& dir, const std::vector<std::string>& algorithms,
              const Rat& eps, unsigned threads, const std::string& outPath) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(dir)) throw InvalidInput("not a directory: " + dir);
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir))
    if (entry.is_regular_file() && entry.path().extension() == ".json")
      files.push_back(entry.path());
  std::sort(files.begin(), files.end());

  std::vector<std::pair<std::string, Instance>> instances;
  for (const fs::path& f : files) instances.emplace_back(f.filename().string(), loadInstance(f.string()));

  std::vector<std::vector<BenchRow>> rows(instances.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= instances.size()) return;
      const auto& [name, inst] = instances[i];
      const Rat lbT = lowerBound(inst).t;
      std::optional<Int> opt;
      if (inst.jobs.size() <= 9 && inst.deadline <= 24) {
        ExactResult oracle = exactOpt(inst);
        if (oracle.status == ExactStatus::Optimal) opt = oracle.peak;
      }
      for (const std::string& alg : algorithms) {
        BenchRow row;
        row.instance = name;
        row.algorithm = alg;
        row.lowerBoundT = lbT;
        row.opt = opt;
        try {
          auto t0 = std::chrono::steady_clock::now();
          Schedule sched = runSolve(inst, alg, eps, std::nullopt);
          auto t1 = std::chrono::steady_clock::now();
          requireValid(inst, sched);
          row.peak = peakOf(inst, sched);
          row.wallMs =
              std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count();
          const Rat denom = opt ? ratOf(*opt) : lbT;
          row.ratio = denom > 0 ? Rat(row.peak) / denom : Rat(0);
        } catch (const Error& e) {
          row.error = e.what();
        }
        rows[i].push_back(std::move(row));
      }
    }
  };
  unsigned workerCount = std::max(1u, std::min<unsigned>(threads, instances.size()));
  std::vector<std::thread> pool;
  for (unsigned i = 0; i < workerCount; ++i) pool.emplace_back(worker);
  for (std::thread& t : pool) t.join();

  std::ostringstream csv;
  csv << "instance,algorithm,peak,lower_bound,opt,ratio,wall_ms\n";
  std::map<std::string, std::pair<Rat, std::pair<Rat, Int>>> summary;  // alg -> (max, (sum, count))
  for (const auto& perInstance : rows) {
    for (const BenchRow& row : perInstance) {
      if (!row.error.empty()) {
        std::cerr << "warning: " << row.instance << " " << row.algorithm << ": " << row.error
                  << "\n";
        continue;
      }
      csv << row.instance << "," << row.algorithm << "," << row.peak << ","
          << ratToString(row.lowerBoundT) << ","
          << (row.opt ? std::to_string(*row.opt) : std::string()) << ","
          << ratToString(row.ratio) << "," << row.wallMs << "\n";
      auto& [mx, acc] = summary[row.algorithm];
      mx = std::max(mx, row.ratio);
      acc.first += row.ratio;
      acc.second += 1;
    }
  }
  emitText(csv.str(), outPath);
  for (const auto& [alg, stat] : summary) {
    const auto& [mx, acc] = stat;
    std::cerr << alg << ": max ratio " << ratToString(mx) << ", mean ratio "
              << ratToString(acc.first / acc.second) << " over " << acc.second << " runs\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Nonpreemptive peak demand minimization toolkit"};
  app.require_subcommand(1);

  std::string instPath;
  std::string schedPath;
  std::string basePath;
  std::string overflowPath;
  std::string outPath;
  std::string algorithm = "auto";
  std::string epsText = "1/3";
  std::string targetText;
  std::string variantText = "c1";
  std::string referenceText = "auto";
  std::string distText = "balanced";
  std::string algorithmsText = "auto,lshape,ffdh,nfdh,exact";
  long long maxNodes = ExactLimits{}.maxNodes;
  double timeoutSec = ExactLimits{}.timeLimitSec;
  int genN = 0;
  Int genDeadline = 0;
  Int genMaxEnergy = 0;
  std::uint64_t genSeed = 1;
  unsigned threads = std::max(1u, std::thread::hardware_concurrency());

  CLI::App* cmdBounds = app.add_subcommand("bounds", "Print the four lower bounds");
  cmdBounds->add_option("instance", instPath, "instance JSON file")->required();
  cmdBounds->add_option("-o,--out", outPath, "output file (default stdout)");

  CLI::App* cmdSolve = app.add_subcommand("solve", "Compute a schedule");
  cmdSolve->add_option("instance", instPath, "instance JSON file")->required();
  cmdSolve->add_option("--algorithm", algorithm, "solver to run")
      ->check(CLI::IsMember({"auto", "case1", "case2", "lshape", "ffdh", "nfdh", "exact"}));
  cmdSolve->add_option("--epsilon", epsText, "accuracy parameter, rational in (0, 1/3]");
  cmdSolve->add_option("--target", targetText,
                       "target peak T for case1/case2 (default: the lower bound)");
  cmdSolve->add_option("-o,--out", outPath, "output file (default stdout)");

  CLI::App* cmdExact = app.add_subcommand("exact", "Exact branch and bound");
  cmdExact->add_option("instance", instPath, "instance JSON file")->required();
  cmdExact->add_option("--max-nodes", maxNodes, "node budget");
  cmdExact->add_option("--timeout", timeoutSec, "time budget in seconds");
  cmdExact->add_option("-o,--out", outPath, "output file (default stdout)");

  CLI::App* cmdRepack = app.add_subcommand("repack", "Fold an overflow container into a base");
  cmdRepack->add_option("instance", instPath, "instance JSON file")->required();
  cmdRepack->add_option("--base", basePath, "base schedule JSON")->required();
  cmdRepack->add_option("--overflow", overflowPath, "instance subset JSON for the container")
      ->required();
  cmdRepack->add_option("--epsilon", epsText, "accuracy parameter, rational in (0, 1/3]");
  cmdRepack->add_option("--target", targetText,
                        "target peak T (default: max(base peak, lower bound))");
  cmdRepack->add_option("-o,--out", outPath, "output file (default stdout)");

  CLI::App* cmdAeptas = app.add_subcommand("aeptas", "Near-optimal base plus overflow container");
  cmdAeptas->add_option("instance", instPath, "instance JSON file")->required();
  cmdAeptas->add_option("--epsilon", epsText, "accuracy parameter, rational in (0, 1/3]");
  cmdAeptas->add_option("--variant", variantText, "overflow container shape")
      ->check(CLI::IsMember({"c1", "c2"}));
  cmdAeptas->add_option("--reference", referenceText, "reference schedule source")
      ->check(CLI::IsMember({"auto", "exact", "ffdh"}));
  cmdAeptas->add_option("-o,--out", outPath, "output file (default stdout)");

  CLI::App* cmdVerify = app.add_subcommand("verify", "Validate a schedule against an instance");
  cmdVerify->add_option("instance", instPath, "instance JSON file")->required();
  cmdVerify->add_option("schedule", schedPath, "schedule JSON file")->required();
  cmdVerify->add_option("-o,--out", outPath, "output file (default stdout)");

  CLI::App* cmdRender = app.add_subcommand("render", "Draw a schedule as SVG");
  cmdRender->add_option("instance", instPath, "instance JSON file")->required();
  cmdRender->add_option("schedule", schedPath, "schedule JSON file")->required();
  cmdRender->add_option("-o,--out", outPath, "output file (default stdout)");

  CLI::App* cmdGen = app.add_subcommand("gen", "Generate a random instance");
  cmdGen->add_option("--n", genN, "number of jobs")->required();
  cmdGen->add_option("--deadline", genDeadline, "deadline D")->required();
  cmdGen->add_option("--max-energy", genMaxEnergy, "energy cap (0 = deadline/2)");
  cmdGen->add_option("--dist", distText, "distribution family")
      ->check(CLI::IsMember({"balanced", "many-tall", "many-wide"}));
  cmdGen->add_option("--seed", genSeed, "RNG seed (PEAKPACK_SEED overrides)");
  cmdGen->add_option("-o,--out", outPath, "output file (default stdout)");

  CLI::App* cmdBench = app.add_subcommand("bench", "Run algorithms over an instance directory");
  cmdBench->add_option("dir", instPath, "directory of instance JSON files")->required();
  cmdBench->add_option("--algorithms", algorithmsText, "comma-separated algorithm list");
  cmdBench->add_option("--epsilon", epsText, "accuracy parameter for auto");
  cmdBench->add_option("--threads", threads, "worker pool size");
  cmdBench->add_option("-o,--out", outPath, "CSV output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (cmdBounds->parsed()) {
      LowerBounds lb = lowerBound(loadInstance(instPath));
      ordered_json out;
      out["t1"] = ratToString(lb.t1);
      out["t2"] = ratToString(lb.t2);
      out["t3"] = ratToString(lb.t3);
      out["t4"] = ratToString(lb.t4);
      out["t"] = ratToString(lb.t);
      emitText(out.dump(2) + "\n", outPath);
    } else if (cmdSolve->parsed()) {
      Instance inst = loadInstance(instPath);
      Rat eps = ratArg(epsText, "--epsilon");
      std::optional<Rat> target;
      if (!targetText.empty()) target = ratArg(targetText, "--target");
      Schedule sched = runSolve(inst, algorithm, eps, target);
      requireValid(inst, sched);
      emitText(scheduleToJson(sched), outPath);
    } else if (cmdExact->parsed()) {
      Instance inst = loadInstance(instPath);
      ExactLimits limits;
      limits.maxNodes = maxNodes;
      limits.timeLimitSec = timeoutSec;
      ExactResult res = exactOpt(inst, limits);
      if (res.status != ExactStatus::Optimal)
        throw ResourceExceeded("exact search hit its node or time limit");
      requireValid(inst, res.schedule);
      emitText(scheduleToJson(res.schedule), outPath);
    } else if (cmdRepack->parsed()) {
      Instance inst = loadInstance(instPath);
      Schedule base = loadSchedule(basePath);
      Instance over = loadInstance(overflowPath);
      Rat eps = ratArg(epsText, "--epsilon");
      EpsilonParams params = EpsilonParams::fromEps(eps);
      Container c;
      c.contents.algorithm = "overflow";
      Int cursor = 0;
      for (const Job& j : over.jobs) {
        if (!inst.has(j.id) || inst.job(j.id).p != j.p || inst.job(j.id).e != j.e)
          throw InvalidInput("overflow subset disagrees with the instance at job " + j.id);
        c.contents.assignments.push_back({j.id, cursor});
        cursor += j.p;
      }
      c.contents.peak = c.contents.assignments.empty()
                            ? 0
                            : profileOf(inst, c.contents).peak();
      Rat T;
      if (!targetText.empty()) {
        T = ratArg(targetText, "--target");
      } else {
        T = std::max(Rat(profileOf(inst, base).peak()), lowerBound(inst).t);
      }
      c.widthBudget = params.gamma * inst.deadline;
      c.heightBudget = Rat(ceilRat(1 / eps)) * eps * T;
      Schedule out = repack(inst, base, T, c, params);
      requireValid(inst, out);
      emitText(scheduleToJson(out), outPath);
    } else if (cmdAeptas->parsed()) {
      Instance inst = loadInstance(instPath);
      Rat eps = ratArg(epsText, "--epsilon");
      OverflowVariant variant =
          variantText == "c2" ? OverflowVariant::C2 : OverflowVariant::C1;
      std::optional<ReferenceKind> force;
      if (referenceText == "exact") force = ReferenceKind::Exact;
      if (referenceText == "ffdh") force = ReferenceKind::Shelf;
      LiteResult lite = scheduleLite(inst, eps, variant, force);
      requireValid(subInstance(inst, lite.base), lite.base);
      requireValid(subInstance(inst, lite.overflow.contents), lite.overflow.contents);
      ordered_json out;
      out["base"] = ordered_json::parse(scheduleToJson(lite.base));
      ordered_json ov;
      ov["width_budget"] = ratToString(lite.overflow.widthBudget);
      ov["height_budget"] = ratToString(lite.overflow.heightBudget);
      ov["contents"] = ordered_json::parse(scheduleToJson(lite.overflow.contents));
      out["overflow"] = ov;
      out["reference"] = lite.reference == ReferenceKind::Exact ? "exact" : "ffdh";
      out["t_used"] = ratToString(lite.tUsed);
      out["ref_peak"] = lite.refPeak;
      out["k_measured"] = ratToString(lite.kMeasured);
      emitText(out.dump(2) + "\n", outPath);
    } else if (cmdVerify->parsed()) {
      Instance inst = loadInstance(instPath);
      Schedule sched = loadSchedule(schedPath);
      std::vector<Violation> errs = validate(inst, sched);
      ordered_json out;
      out["ok"] = errs.empty();
      out["violations"] = ordered_json::array();
      for (const Violation& v : errs) {
        ordered_json item;
        item["kind"] = v.kind;
        item["id"] = v.id;
        item["detail"] = v.detail;
        out["violations"].push_back(item);
      }
      emitText(out.dump(2) + "\n", outPath);
      if (!errs.empty()) return 3;
    } else if (cmdRender->parsed()) {
      Instance inst = loadInstance(instPath);
      Schedule sched = loadSchedule(schedPath);
      emitText(renderSvg(inst, sched), outPath);
    } else if (cmdGen->parsed()) {
      GenSpec spec;
      spec.n = genN;
      spec.deadline = genDeadline;
      spec.maxEnergy = genMaxEnergy;
      spec.dist = parseDist(distText);
      spec.seed = genSeed;
      if (const char* env = std::getenv("PEAKPACK_SEED")) {
        try {
          spec.seed = std::stoull(env);
        } catch (const std::exception&) {
          throw InvalidInput("PEAKPACK_SEED is not an unsigned integer");
        }
      }
      emitText(instanceToJson(generate(spec)), outPath);
    } else if (cmdBench->parsed()) {
      std::vector<std::string> algorithms;
      std::string token;
      std::istringstream split(algorithmsText);
      while (std::getline(split, token, ','))
        if (!token.empty()) algorithms.push_back(token);
      if (algorithms.empty()) throw InvalidInput("--algorithms must name at least one solver");
      runBench(instPath, algorithms, ratArg(epsText, "--epsilon"), threads, outPath);
    }
    return 0;
  } catch (const InvalidInput& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const PreconditionFailed& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const Infeasible& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const ResourceExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const ConditionViolated& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const InternalInvariant& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  }
}
