#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "coop/cost_model.h"
#include "coop/kinematics.h"
#include "coop/path_geometry.h"
#include "coop/safety.h"

namespace coop {

struct SamplingConfig {
  std::uint64_t seed = 1;
  std::size_t profiles_per_vehicle = 2000;
  std::vector<double> jerk_levels = {-6.0, -3.0, 0.0, 3.0, 6.0};
  double dt = 0.25;
  double horizon = 8.0;
  /// Enumerate every jerk sequence instead of drawing profiles_per_vehicle.
  bool exhaustive = false;

  /// Throws Error{kInvalidInput} unless horizon/dt is integral.
  std::size_t Steps() const;
  void Validate() const;
  friend bool operator==(const SamplingConfig&, const SamplingConfig&) = default;
};

struct VehicleSpec {
  std::string id;
  std::shared_ptr<const Path> path;
  LongState initial;
  Limits limits;
  VehicleCostParams cost;
};

bool operator==(const VehicleSpec& a, const VehicleSpec& b);

struct RightOfWay {
  std::string priority;  // has right of way
  std::string yielding;

  friend bool operator==(const RightOfWay&, const RightOfWay&) = default;
};

struct Scenario {
  std::string name;
  double speed_limit = 10.0;
  std::string ego_id;
  std::vector<VehicleSpec> vehicles;
  std::vector<RightOfWay> right_of_way;
  SamplingConfig sampling;
  PlanBOptions plan_b;

  /// Throws Error{kValidation} on duplicate ids, unknown ids, a reflexive or
  /// cyclic right-of-way relation, a missing ego or an initial state that
  /// violates the vehicle's limits or path.
  void Validate() const;
  std::size_t IndexOf(const std::string& id) const;
  std::size_t EgoIndex() const { return IndexOf(ego_id); }

  /// Pairwise zones; result[i][j].interval_a lies on vehicle i's path.
  std::vector<std::vector<CollisionZone>> ComputeZones() const;
  std::vector<std::vector<bool>> PriorityMatrix() const;
  CostContext MakeCostContext(std::vector<std::vector<CollisionZone>> zones) const;
  std::vector<Limits> AllLimits() const;

  /// Same road with only the named vehicle on it.
  Scenario Solo(const std::string& id) const;

  friend bool operator==(const Scenario& a, const Scenario& b);
};

}  // namespace coop
