// Command-line front end: run a scenario file or built-in and export reports.
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "coop/builtin_scenarios.h"
#include "coop/errors.h"
#include "coop/planner.h"
#include "coop/report.h"
#include "coop/scenario_io.h"

namespace {

constexpr int kExitSelected = 0;
constexpr int kExitError = 1;
constexpr int kExitEmergency = 2;

coop::Scenario Resolve(const std::string& target) {
  if (coop::IsBuiltin(target)) return coop::BuiltinScenario(target);
  return coop::LoadScenarioFile(target);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cooperative trajectory planner for interacting vehicles"};
  app.require_subcommand(1);

  std::string target;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> samples;
  std::optional<double> dt;
  std::optional<double> horizon;
  std::string format = "both";
  std::string out_dir = ".";
  std::size_t threads = 0;

  auto* run = app.add_subcommand("run", "Plan a scenario and write reports");
  run->add_option("scenario", target, "Scenario file or built-in name")->required();
  run->add_option("--seed", seed, "Sampling seed");
  run->add_option("--samples", samples, "Profiles per vehicle");
  run->add_option("--dt", dt, "Sampling step [s]");
  run->add_option("--horizon", horizon, "Planning horizon [s]");
  run->add_option("--format", format, "Report format")
      ->check(CLI::IsMember({"csv", "json", "both"}));
  run->add_option("--out-dir", out_dir, "Report directory");
  run->add_option("--threads", threads, "Worker threads (0 = all cores)");

  auto* list = app.add_subcommand("list-builtins", "Print the built-in scenario names");

  std::string validate_file;
  auto* validate = app.add_subcommand("validate", "Check a scenario file");
  validate->add_option("file", validate_file, "Scenario file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitError;
  }

  try {
    if (*list) {
      for (const auto& name : coop::BuiltinNames()) std::cout << name << "\n";
      return kExitSelected;
    }
    if (*validate) {
      const coop::Scenario s = coop::LoadScenarioFile(validate_file);
      std::cout << "ok: " << (s.name.empty() ? validate_file : s.name) << " ("
                << s.vehicles.size() << " vehicles)\n";
      return kExitSelected;
    }

    const coop::Scenario scenario = Resolve(target);
    coop::SamplingConfig config = scenario.sampling;
    if (seed) config.seed = *seed;
    if (samples) config.profiles_per_vehicle = *samples;
    if (dt) config.dt = *dt;
    if (horizon) config.horizon = *horizon;

    coop::PlannerOptions options;
    options.enumeration.threads = threads;
    coop::PlanResult result = coop::Plan(scenario, config, options);
    const coop::Outcome outcome = result.outcome;
    const double cost = result.total_cost;
    const coop::RunReport report = coop::MakeReport(scenario, config, std::move(result));
    const auto fmt = format == "csv"    ? coop::ReportFormat::kCsv
                     : format == "json" ? coop::ReportFormat::kJson
                                        : coop::ReportFormat::kBoth;
    for (const auto& path : coop::ExportReport(report, out_dir, fmt)) {
      std::cerr << "wrote " << path.string() << "\n";
    }
    std::cout << coop::OutcomeName(outcome) << " " << cost << "\n";
    return outcome == coop::Outcome::kSelected ? kExitSelected : kExitEmergency;
  } catch (const coop::Error& e) {
    std::cerr << "error [" << coop::ErrorCodeName(e.code()) << "]: " << e.what() << "\n";
    return kExitError;
  }
}
