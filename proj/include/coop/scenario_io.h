#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "coop/scenario.h"

namespace coop {

/// Parses a JSON scenario document. Omitted optional fields take the library
/// defaults (cost parameters from DefaultVehicleCostParams with the vehicle's
/// desired_speed, or the speed limit when that is absent too).
///
/// Throws Error{kParse} naming the offending field path for schema
/// violations, Error{kValidation} when the parsed scenario breaks an
/// invariant.
Scenario LoadScenario(std::string_view document);

/// Reads and parses a file; Error{kIo} when it cannot be read.
Scenario LoadScenarioFile(const std::filesystem::path& file);

/// Complete document with every parameter spelled out;
/// LoadScenario(SerializeScenario(s)) == s.
std::string SerializeScenario(const Scenario& scenario);

}  // namespace coop
