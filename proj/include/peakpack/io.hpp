#pragma once

#include <string>

#include "peakpack/core.hpp"

namespace peakpack {

// File formats are canonical: objects are written with fixed field order so
// byte-for-byte comparisons of saved artifacts are meaningful.
//
// instance: {"deadline": int, "jobs": [{"id": str, "p": int, "e": int}, ...]}
// schedule: {"algorithm": str, "peak": int,
//            "assignments": [{"id": str, "start": int}, ...]}

std::string readFile(const std::string& path);
void writeFile(const std::string& path, const std::string& content);

Instance parseInstance(const std::string& jsonText);
Instance loadInstance(const std::string& path);
std::string instanceToJson(const Instance& inst);
void saveInstance(const Instance& inst, const std::string& path);

Schedule parseSchedule(const std::string& jsonText);
Schedule loadSchedule(const std::string& path);
std::string scheduleToJson(const Schedule& sched);
void saveSchedule(const Schedule& sched, const std::string& path);

}  // namespace peakpack
