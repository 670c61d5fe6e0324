#pragma once

#include <string>
#include <vector>

#include "coop/scenario.h"

namespace coop {

enum class Priority { kNone, kFirst, kSecond };

/// Left turn across an oncoming lane. "lower" drives straight east, "upper"
/// comes from the east and turns left into the southern arm. Start positions are given as the distance to the vehicle's own
/// zone entry (front bumper).
struct TJunctionSetup {
  double speed_limit = 10.0;
  double lower_gap = 25.0;
  double lower_speed = 10.0;
  double upper_gap = 12.0;
  double upper_speed = 6.0;
  double upper_desired_speed = 6.0;
  /// kFirst: lower has right of way, kSecond: upper has right of way.
  Priority priority = Priority::kNone;
  std::string ego = "upper";
};

/// Two opposing vehicles meeting where the road gets too narrow for both.
/// "left" drives east, "right" drives west.
struct NarrowingSetup {
  double speed_limit = 10.0;
  double left_gap = 30.0;
  double right_gap = 20.0;
  double left_speed = 10.0;
  double right_speed = 10.0;
  /// kFirst: left has right of way, kSecond: right has right of way.
  Priority priority = Priority::kNone;
  std::string ego = "left";
};

Scenario MakeTJunction(const std::string& name, const TJunctionSetup& setup);
Scenario MakeNarrowing(const std::string& name, const NarrowingSetup& setup);

/// t_junction_unsigned, t_junction_row, narrowing_unsigned, narrowing_row.
std::vector<std::string> BuiltinNames();
std::vector<Scenario> BuiltinScenarios();

/// Accepts the four names plus the aliases t_junction_row_upper and
/// t_junction_row_lower. Throws Error{kInvalidInput} for unknown names.
Scenario BuiltinScenario(const std::string& name);
bool IsBuiltin(const std::string& name);

}  // namespace coop
