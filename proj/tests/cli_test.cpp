#include "doctest.h"

#include <sys/wait.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const char* kInstB =
    R"({"deadline": 10, "jobs": [{"id": "a", "p": 6, "e": 3}, {"id": "b", "p": 6, "e": 4}]})";

fs::path scratchDir() {
  static fs::path dir = [] {
    fs::path d = fs::current_path() / "cli_scratch";
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

void writeText(const fs::path& p, const std::string& text) {
  std::ofstream out(p);
  out << text;
}

std::string readText(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// Runs the CLI with the given arguments, captures stdout into outFile and
// returns the process exit code.
int runCli(const std::string& args, const fs::path& outFile, const std::string& envPrefix = "") {
  std::string cmd = envPrefix + "\"" PEAKPACK_CLI_PATH "\" " + args + " > " + outFile.string() +
                    " 2> " + (scratchDir() / "stderr.txt").string();
  int raw = std::system(cmd.c_str());
  REQUIRE(WIFEXITED(raw));
  return WEXITSTATUS(raw);
}

}  // namespace

TEST_CASE("cli bounds prints the exact rational bounds") {
  fs::path inst = scratchDir() / "fixb.json";
  writeText(inst, kInstB);
  fs::path out = scratchDir() / "bounds.json";
  REQUIRE(runCli("bounds " + inst.string(), out) == 0);
  std::string text = readText(out);
  REQUIRE(!text.empty());
  CHECK(text.back() == '\n');
  json j = json::parse(text);
  CHECK(j["t1"] == "7/1");
  CHECK(j["t2"] == "6/1");
  CHECK(j["t3"] == "4/1");
  CHECK(j["t4"] == "11/2");
  CHECK(j["t"] == "7/1");
}

TEST_CASE("cli solve and verify round-trip") {
  fs::path inst = scratchDir() / "fixb.json";
  writeText(inst, kInstB);
  fs::path sched = scratchDir() / "sched.json";
  fs::path out = scratchDir() / "solve.out";
  REQUIRE(runCli("solve " + inst.string() + " -o " + sched.string(), out) == 0);
  json sj = json::parse(readText(sched));
  CHECK(sj["peak"] == 7);
  CHECK(sj["assignments"].size() == 2);

  fs::path vout = scratchDir() / "verify.json";
  REQUIRE(runCli("verify " + inst.string() + " " + sched.string(), vout) == 0);
  json vj = json::parse(readText(vout));
  CHECK(vj["ok"] == true);
  CHECK(vj["violations"].empty());
}

TEST_CASE("cli verify flags a broken schedule with exit code 3") {
  fs::path inst = scratchDir() / "fixb.json";
  writeText(inst, kInstB);
  fs::path bad = scratchDir() / "bad_sched.json";
  writeText(bad, R"({"algorithm": "manual", "peak": 7, "assignments": )"
                 R"([{"id": "a", "start": 9}, {"id": "b", "start": 0}]})");
  fs::path out = scratchDir() / "verify_bad.json";
  CHECK(runCli("verify " + inst.string() + " " + bad.string(), out) == 3);
  json vj = json::parse(readText(out));
  CHECK(vj["ok"] == false);
  CHECK(!vj["violations"].empty());
}

TEST_CASE("cli exact emits an optimal schedule") {
  fs::path inst = scratchDir() / "fixb.json";
  writeText(inst, kInstB);
  fs::path out = scratchDir() / "exact.json";
  REQUIRE(runCli("exact " + inst.string(), out) == 0);
  json j = json::parse(readText(out));
  CHECK(j["algorithm"] == "exact");
  CHECK(j["peak"] == 7);
}

TEST_CASE("cli maps error classes to exit codes") {
  fs::path garbage = scratchDir() / "garbage.json";
  writeText(garbage, "{");
  fs::path out = scratchDir() / "err.out";
  // Unreadable input data.
  CHECK(runCli("bounds " + garbage.string(), out) == 2);
  // Unknown option value is a parse error.
  fs::path inst = scratchDir() / "fixb.json";
  writeText(inst, kInstB);
  CHECK(runCli("solve " + inst.string() + " --algorithm bogus", out) == 2);
  // Structured case 1 does not apply to this instance.
  CHECK(runCli("solve " + inst.string() + " --algorithm case1", out) == 3);
  // Epsilon outside (0, 1/3].
  CHECK(runCli("solve " + inst.string() + " --epsilon 1/2", out) == 2);
  // Help is not an error.
  CHECK(runCli("--help", out) == 0);
}

TEST_CASE("cli gen is reproducible byte for byte") {
  fs::path g1 = scratchDir() / "g1.json";
  fs::path g2 = scratchDir() / "g2.json";
  fs::path out = scratchDir() / "gen.out";
  REQUIRE(runCli("gen --n 5 --deadline 10 --seed 42 -o " + g1.string(), out) == 0);
  REQUIRE(runCli("gen --n 5 --deadline 10 --seed 42 -o " + g2.string(), out) == 0);
  std::string bytes1 = readText(g1);
  CHECK(!bytes1.empty());
  CHECK(bytes1 == readText(g2));

  // The environment variable beats the flag.
  fs::path g3 = scratchDir() / "g3.json";
  fs::path g4 = scratchDir() / "g4.json";
  REQUIRE(runCli("gen --n 5 --deadline 10 --seed 42 -o " + g3.string(), out,
                 "PEAKPACK_SEED=7 ") == 0);
  REQUIRE(runCli("gen --n 5 --deadline 10 --seed 7 -o " + g4.string(), out) == 0);
  CHECK(readText(g3) == readText(g4));
  CHECK(readText(g3) != bytes1);
}

TEST_CASE("cli gen many-wide alternates wide jobs") {
  fs::path g = scratchDir() / "wide.json";
  fs::path out = scratchDir() / "gen.out";
  REQUIRE(runCli("gen --n 6 --deadline 10 --dist many-wide --seed 3 -o " + g.string(), out) == 0);
  json j = json::parse(readText(g));
  REQUIRE(j["jobs"].size() == 6);
  for (std::size_t i = 0; i < 6; i += 2) {
    // ceil(3*10/4) = 8
    CHECK(j["jobs"][i]["p"].get<long long>() >= 8);
  }
  for (const auto& job : j["jobs"]) {
    CHECK(job["p"].get<long long>() >= 1);
    CHECK(job["p"].get<long long>() <= 10);
  }
}

TEST_CASE("cli repack folds an overflow file into a base schedule") {
  fs::path inst = scratchDir() / "rp_inst.json";
  writeText(inst,
            R"({"deadline": 40, "jobs": [{"id": "a", "p": 20, "e": 4}, {"id": "b", "p": 1, "e": 9}]})");
  fs::path base = scratchDir() / "rp_base.json";
  writeText(base, R"({"algorithm": "manual", "peak": 4, "assignments": [{"id": "a", "start": 0}]})");
  fs::path over = scratchDir() / "rp_over.json";
  writeText(over, R"({"deadline": 40, "jobs": [{"id": "b", "p": 1, "e": 9}]})");
  fs::path out = scratchDir() / "rp_out.json";
  REQUIRE(runCli("repack " + inst.string() + " --base " + base.string() + " --overflow " +
                     over.string(),
                 out) == 0);
  json j = json::parse(readText(out));
  CHECK(j["peak"] == 9);
  for (const auto& a : j["assignments"]) {
    if (a["id"] == "a") CHECK(a["start"] == 20);
    if (a["id"] == "b") CHECK(a["start"] == 0);
  }
}

TEST_CASE("cli aeptas reports the container and the measured slack") {
  fs::path inst = scratchDir() / "fixb.json";
  writeText(inst, kInstB);
  fs::path out = scratchDir() / "aeptas.json";
  REQUIRE(runCli("aeptas " + inst.string(), out) == 0);
  json j = json::parse(readText(out));
  CHECK(j.contains("base"));
  CHECK(j.contains("overflow"));
  CHECK(j["overflow"].contains("width_budget"));
  CHECK(j["overflow"].contains("height_budget"));
  CHECK(j["reference"] == "exact");
  CHECK(j["ref_peak"] == 7);
  CHECK(j["k_measured"] == "0/1");
}

TEST_CASE("cli render draws an SVG with guide lines") {
  fs::path inst = scratchDir() / "fixb.json";
  writeText(inst, kInstB);
  fs::path sched = scratchDir() / "render_sched.json";
  fs::path tmp = scratchDir() / "tmp.out";
  REQUIRE(runCli("solve " + inst.string() + " -o " + sched.string(), tmp) == 0);
  fs::path svg = scratchDir() / "out.svg";
  REQUIRE(runCli("render " + inst.string() + " " + sched.string() + " -o " + svg.string(), tmp) ==
          0);
  std::string text = readText(svg);
  CHECK(text.find("<svg") != std::string::npos);
  CHECK(text.find("</svg>") != std::string::npos);
  CHECK(text.find("stroke-dasharray") != std::string::npos);
}

TEST_CASE("cli bench writes the fixed CSV schema") {
  fs::path dir = scratchDir() / "bench_dir";
  fs::create_directories(dir);
  writeText(dir / "i1.json", kInstB);
  writeText(dir / "i2.json",
            R"({"deadline": 8, "jobs": [{"id": "a", "p": 6, "e": 3}, {"id": "b", "p": 7, "e": 3}]})");
  fs::path csv = scratchDir() / "bench.csv";
  fs::path out = scratchDir() / "bench.out";
  REQUIRE(runCli("bench " + dir.string() + " --algorithms ffdh,exact --threads 2 -o " +
                     csv.string(),
                 out) == 0);
  std::ifstream in(csv);
  std::string header;
  REQUIRE(std::getline(in, header));
  CHECK(header == "instance,algorithm,peak,lower_bound,opt,ratio,wall_ms");
  int rows = 0;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    ++rows;
    CHECK(std::count(line.begin(), line.end(), ',') == 6);
  }
  CHECK(rows == 4);
}
