#include "peakpack/io.hpp"

#include <fstream>
#include <json.hpp>
#include <sstream>

#include "peakpack/errors.hpp"

namespace peakpack {

using ordered_json = nlohmann::ordered_json;

std::string readFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void writeFile(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidInput("cannot write file: " + path);
  out << content;
}

namespace {

ordered_json parseJson(const std::string& text, const char* what) {
  ordered_json j = ordered_json::parse(text, nullptr, false);
  if (j.is_discarded())
    throw InvalidInput(std::string("malformed JSON in ") + what);
  return j;
}

Int requireInt(const ordered_json& j, const char* field, const char* ctx) {
  if (!j.contains(field) || !j[field].is_number_integer())
    throw InvalidInput(std::string(ctx) + ": missing or non-integer field '" +
                       field + "'");
  return j[field].get<Int>();
}

std::string requireString(const ordered_json& j, const char* field,
                          const char* ctx) {
  if (!j.contains(field) || !j[field].is_string())
    throw InvalidInput(std::string(ctx) + ": missing or non-string field '" +
                       field + "'");
  return j[field].get<std::string>();
}

}  // namespace

Instance parseInstance(const std::string& jsonText) {
  ordered_json j = parseJson(jsonText, "instance");
  Instance inst;
  inst.deadline = requireInt(j, "deadline", "instance");
  if (!j.contains("jobs") || !j["jobs"].is_array())
    throw InvalidInput("instance: missing 'jobs' array");
  for (const auto& ej : j["jobs"]) {
    Job job;
    job.id = requireString(ej, "id", "job");
    job.p = requireInt(ej, "p", "job");
    job.e = requireInt(ej, "e", "job");
    inst.jobs.push_back(std::move(job));
  }
  checkInstance(inst);
  return inst;
}

Instance loadInstance(const std::string& path) {
  return parseInstance(readFile(path));
}

std::string instanceToJson(const Instance& inst) {
  ordered_json j;
  j["deadline"] = inst.deadline;
  j["jobs"] = ordered_json::array();
  for (const Job& job : inst.jobs) {
    ordered_json ej;
    ej["id"] = job.id;
    ej["p"] = job.p;
    ej["e"] = job.e;
    j["jobs"].push_back(std::move(ej));
  }
  return j.dump(2) + "\n";
}

void saveInstance(const Instance& inst, const std::string& path) {
  writeFile(path, instanceToJson(inst));
}

Schedule parseSchedule(const std::string& jsonText) {
  ordered_json j = parseJson(jsonText, "schedule");
  Schedule sched;
  sched.algorithm = requireString(j, "algorithm", "schedule");
  sched.peak = requireInt(j, "peak", "schedule");
  if (!j.contains("assignments") || !j["assignments"].is_array())
    throw InvalidInput("schedule: missing 'assignments' array");
  for (const auto& ea : j["assignments"]) {
    Assignment a;
    a.id = requireString(ea, "id", "assignment");
    a.start = requireInt(ea, "start", "assignment");
    sched.assignments.push_back(std::move(a));
  }
  return sched;
}

Schedule loadSchedule(const std::string& path) {
  return parseSchedule(readFile(path));
}

std::string scheduleToJson(const Schedule& sched) {
  ordered_json j;
  j["algorithm"] = sched.algorithm;
  j["peak"] = sched.peak;
  j["assignments"] = ordered_json::array();
  for (const Assignment& a : sched.assignments) {
    ordered_json ea;
    ea["id"] = a.id;
    ea["start"] = a.start;
    j["assignments"].push_back(std::move(ea));
  }
  return j.dump(2) + "\n";
}

void saveSchedule(const Schedule& sched, const std::string& path) {
  writeFile(path, scheduleToJson(sched));
}

}  // namespace peakpack
