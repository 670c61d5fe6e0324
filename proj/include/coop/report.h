#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "coop/planner.h"
#include "coop/scenario.h"

namespace coop {

struct RunReport {
  std::string scenario;
  std::string ego_id;
  std::vector<std::string> vehicle_ids;  // ensemble order
  SamplingConfig config;
  PlanResult result;
};

RunReport MakeReport(const Scenario& scenario, const SamplingConfig& config,
                     PlanResult result);

/// Header `vehicle,t,s,v,a`, one row per vehicle and sample.
std::string ReportCsv(const RunReport& report);
std::string ReportJson(const RunReport& report);

enum class ReportFormat { kCsv, kJson, kBoth };

/// Writes <scenario>.csv and/or <scenario>.json into `dir`, creating it if
/// needed. Returns the written paths. Throws Error{kIo}.
std::vector<std::filesystem::path> ExportReport(const RunReport& report,
                                                const std::filesystem::path& dir,
                                                ReportFormat format);

}  // namespace coop
