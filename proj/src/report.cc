#include "coop/report.h"

#include <cmath>
#include <fstream>

#include <fmt/format.h>
#include <json.hpp>

#include "coop/errors.h"

namespace coop {
namespace {

using nlohmann::ordered_json;

/// Shortest round-trip text; non-finite values become null.
ordered_json Num(double v) {
  if (!std::isfinite(v)) return nullptr;
  return v;
}

ordered_json Breakdown(const CostBreakdown& c) {
  ordered_json j;
  j["comfort"] = Num(c.comfort);
  j["discomfort"] = Num(c.discomfort);
  j["infeasibility"] = Num(c.infeasibility);
  j["row"] = Num(c.row);
  j["total"] = Num(c.Total());
  return j;
}

ordered_json Interval(const ArcInterval& i) { return {Num(i.s_in), Num(i.s_out)}; }

void WriteFile(const std::filesystem::path& file, const std::string& text) {
  std::ofstream out(file, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIo, "cannot write '" + file.string() + "'");
  out << text;
  out.close();
  if (!out) throw Error(ErrorCode::kIo, "error writing '" + file.string() + "'");
}

}  // namespace

RunReport MakeReport(const Scenario& scenario, const SamplingConfig& config,
                     PlanResult result) {
  RunReport r;
  r.scenario = scenario.name;
  r.ego_id = scenario.ego_id;
  r.config = config;
  if (result.outcome == Outcome::kSelected) {
    for (const VehicleSpec& v : scenario.vehicles) r.vehicle_ids.push_back(v.id);
  } else {
    r.vehicle_ids.push_back(scenario.ego_id);
  }
  r.result = std::move(result);
  return r;
}

std::string ReportCsv(const RunReport& report) {
  fmt::memory_buffer buf;
  fmt::format_to(std::back_inserter(buf), "vehicle,t,s,v,a\n");
  for (std::size_t i = 0; i < report.result.ensemble.size(); ++i) {
    const VelocityProfile& p = report.result.ensemble[i].profile;
    for (std::size_t k = 0; k < p.states.size(); ++k) {
      const LongState& st = p.states[k];
      fmt::format_to(std::back_inserter(buf), "{},{},{},{},{}\n", report.vehicle_ids[i],
                     p.TimeAt(k), st.s, st.v, st.a);
    }
  }
  return fmt::to_string(buf);
}

std::string ReportJson(const RunReport& report) {
  const PlanResult& r = report.result;
  ordered_json j;
  j["scenario"] = report.scenario;
  j["outcome"] = OutcomeName(r.outcome);
  j["total_cost"] = Num(r.total_cost);
  j["candidates_evaluated"] = r.candidates_evaluated;
  j["plan_b_checks"] = r.plan_b_checks;
  j["ego"] = report.ego_id;
  j["sampling"] = {{"seed", report.config.seed},
                   {"profiles_per_vehicle", report.config.profiles_per_vehicle},
                   {"jerk_levels", report.config.jerk_levels},
                   {"dt", report.config.dt},
                   {"horizon", report.config.horizon},
                   {"exhaustive", report.config.exhaustive}};

  ordered_json vehicles = ordered_json::array();
  for (std::size_t i = 0; i < r.ensemble.size(); ++i) {
    ordered_json v;
    v["id"] = report.vehicle_ids[i];
    if (i < r.profile_indices.size()) v["profile_index"] = r.profile_indices[i];
    if (i < r.per_vehicle.size()) v["cost"] = Breakdown(r.per_vehicle[i]);
    ordered_json samples = ordered_json::array();
    const VelocityProfile& p = r.ensemble[i].profile;
    for (std::size_t k = 0; k < p.states.size(); ++k) {
      samples.push_back({Num(p.TimeAt(k)), Num(p.states[k].s), Num(p.states[k].v),
                         Num(p.states[k].a)});
    }
    v["samples"] = samples;
    vehicles.push_back(v);
  }
  j["vehicles"] = vehicles;

  ordered_json zones = ordered_json::array();
  for (std::size_t a = 0; a < r.zones.size(); ++a) {
    for (std::size_t b = a + 1; b < r.zones[a].size(); ++b) {
      const CollisionZone& z = r.zones[a][b];
      ordered_json zj;
      zj["pair"] = {a, b};
      zj["empty"] = z.empty;
      if (!z.empty) {
        zj["interval_first"] = Interval(z.interval_a);
        zj["interval_second"] = Interval(z.interval_b);
      }
      zones.push_back(zj);
    }
  }
  j["zones"] = zones;

  ordered_json plan_b = ordered_json::array();
  for (const PlanBPairVerdict& v : r.plan_b) {
    ordered_json pj;
    pj["other"] = v.other;
    pj["valid"] = v.verdict.valid;
    if (v.verdict.failing_time) pj["failing_time"] = Num(*v.verdict.failing_time);
    if (v.verdict.failing_case) pj["failing_case"] = PlanBCaseName(*v.verdict.failing_case);
    plan_b.push_back(pj);
  }
  j["plan_b"] = plan_b;
  return j.dump(2) + "\n";
}

std::vector<std::filesystem::path> ExportReport(const RunReport& report,
                                                const std::filesystem::path& dir,
                                                ReportFormat format) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::kIo, "cannot create '" + dir.string() + "': " + ec.message());
  const std::string stem = report.scenario.empty() ? "run" : report.scenario;
  std::vector<std::filesystem::path> written;
  if (format != ReportFormat::kJson) {
    written.push_back(dir / (stem + ".csv"));
    WriteFile(written.back(), ReportCsv(report));
  }
  if (format != ReportFormat::kCsv) {
    written.push_back(dir / (stem + ".json"));
    WriteFile(written.back(), ReportJson(report));
  }
  return written;
}

}  // namespace coop
