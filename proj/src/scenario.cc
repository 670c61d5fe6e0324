#include "coop/scenario.h"

#include <algorithm>
#include <cmath>
#include <set>

#include "coop/errors.h"

namespace coop {
namespace {

[[noreturn]] void Invalid(const std::string& what) {
  throw Error(ErrorCode::kValidation, what);
}

}  // namespace

std::size_t SamplingConfig::Steps() const {
  if (!(dt > 0.0) || !(horizon > 0.0)) {
    throw Error(ErrorCode::kInvalidInput, "dt and horizon must be positive");
  }
  const double ratio = horizon / dt;
  const double rounded = std::round(ratio);
  if (std::abs(ratio - rounded) > 1e-9 * std::max(1.0, ratio) || rounded < 1.0) {
    throw Error(ErrorCode::kInvalidInput, "horizon must be an integer multiple of dt");
  }
  return static_cast<std::size_t>(rounded);
}

void SamplingConfig::Validate() const {
  Steps();
  if (profiles_per_vehicle < 1) {
    throw Error(ErrorCode::kInvalidInput, "profiles_per_vehicle must be >= 1");
  }
  if (jerk_levels.empty()) {
    throw Error(ErrorCode::kInvalidInput, "jerk_levels must not be empty");
  }
  for (double j : jerk_levels) {
    if (!std::isfinite(j)) throw Error(ErrorCode::kInvalidInput, "non-finite jerk level");
  }
}

bool operator==(const VehicleSpec& a, const VehicleSpec& b) {
  const bool paths_equal =
      (a.path == nullptr) == (b.path == nullptr) && (!a.path || *a.path == *b.path);
  return a.id == b.id && paths_equal && a.initial == b.initial &&
         a.limits == b.limits && a.cost == b.cost;
}

bool operator==(const Scenario& a, const Scenario& b) {
  return a.name == b.name && a.speed_limit == b.speed_limit && a.ego_id == b.ego_id &&
         a.vehicles == b.vehicles && a.right_of_way == b.right_of_way &&
         a.sampling == b.sampling &&
         a.plan_b.reaction_delay == b.plan_b.reaction_delay;
}

std::size_t Scenario::IndexOf(const std::string& id) const {
  for (std::size_t i = 0; i < vehicles.size(); ++i) {
    if (vehicles[i].id == id) return i;
  }
  Invalid("unknown vehicle id '" + id + "'");
}

void Scenario::Validate() const {
  if (vehicles.empty()) Invalid("scenario has no vehicles");
  if (!(speed_limit > 0.0)) Invalid("speed_limit must be positive");
  std::set<std::string> ids;
  for (const VehicleSpec& v : vehicles) {
    if (v.id.empty()) Invalid("vehicle id must not be empty");
    if (!ids.insert(v.id).second) Invalid("duplicate vehicle id '" + v.id + "'");
    if (!v.path) Invalid("vehicle '" + v.id + "' has no path");
    try {
      v.limits.Validate();
      v.cost.Validate();
    } catch (const Error& e) {
      Invalid("vehicle '" + v.id + "': " + e.what());
    }
    if (v.initial.s < 0.0 || v.initial.s > v.path->length()) {
      Invalid("vehicle '" + v.id + "' starts outside its path");
    }
    if (v.initial.v < 0.0 || v.initial.v > v.limits.v_max) {
      Invalid("vehicle '" + v.id + "' initial speed outside [0, v_max]");
    }
    if (v.initial.a < v.limits.a_min || v.initial.a > v.limits.a_max) {
      Invalid("vehicle '" + v.id + "' initial acceleration outside limits");
    }
    for (double j : sampling.jerk_levels) {
      if (j < v.limits.j_min || j > v.limits.j_max) {
        Invalid("jerk level outside the limits of vehicle '" + v.id + "'");
      }
    }
  }
  if (!ids.contains(ego_id)) Invalid("ego id '" + ego_id + "' is not a vehicle");

  std::set<std::pair<std::string, std::string>> pairs;
  for (const RightOfWay& r : right_of_way) {
    if (!ids.contains(r.priority) || !ids.contains(r.yielding)) {
      Invalid("right_of_way references an unknown vehicle");
    }
    if (r.priority == r.yielding) Invalid("right_of_way must be irreflexive");
    if (pairs.contains({r.yielding, r.priority})) {
      Invalid("right_of_way is cyclic between '" + r.priority + "' and '" +
              r.yielding + "'");
    }
    pairs.insert({r.priority, r.yielding});
  }
  try {
    sampling.Validate();
  } catch (const Error& e) {
    Invalid(std::string("sampling: ") + e.what());
  }
  if (plan_b.reaction_delay < 0.0) Invalid("reaction_delay must be >= 0");
}

std::vector<std::vector<CollisionZone>> Scenario::ComputeZones() const {
  const std::size_t n = vehicles.size();
  std::vector<std::vector<CollisionZone>> zones(n, std::vector<CollisionZone>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      zones[i][j] = ComputeCollisionZone(*vehicles[i].path, *vehicles[j].path);
      zones[j][i] = zones[i][j].Mirrored();
    }
  }
  return zones;
}

std::vector<std::vector<bool>> Scenario::PriorityMatrix() const {
  const std::size_t n = vehicles.size();
  std::vector<std::vector<bool>> prio(n, std::vector<bool>(n, false));
  for (const RightOfWay& r : right_of_way) {
    prio[IndexOf(r.priority)][IndexOf(r.yielding)] = true;
  }
  return prio;
}

CostContext Scenario::MakeCostContext(
    std::vector<std::vector<CollisionZone>> zones) const {
  CostContext ctx;
  for (const VehicleSpec& v : vehicles) ctx.params.push_back(v.cost);
  ctx.zones = std::move(zones);
  ctx.priority = PriorityMatrix();
  return ctx;
}

std::vector<Limits> Scenario::AllLimits() const {
  std::vector<Limits> out;
  for (const VehicleSpec& v : vehicles) out.push_back(v.limits);
  return out;
}

Scenario Scenario::Solo(const std::string& id) const {
  Scenario solo = *this;
  solo.name = name + "/solo:" + id;
  solo.vehicles = {vehicles[IndexOf(id)]};
  solo.right_of_way.clear();
  solo.ego_id = id;
  return solo;
}

}  // namespace coop
