#pragma once

#include <optional>
#include <span>
#include <vector>

#include "coop/kinematics.h"
#include "coop/path_geometry.h"

namespace coop {

/// True iff both vehicles occupy their (bumper-shifted) zone intervals at a
/// common instant. Symmetric in its trajectory arguments.
bool Collides(const Trajectory& traj_a, const Trajectory& traj_b,
              const CollisionZone& zone);

enum class PlanBCase { kOtherFirst, kEgoFirst };

const char* PlanBCaseName(PlanBCase c);

struct PlanBVerdict {
  bool valid = true;
  std::optional<double> failing_time;
  std::optional<PlanBCase> failing_case;

  static PlanBVerdict Valid() { return {}; }
  static PlanBVerdict Invalid(double t, PlanBCase c) { return {false, t, c}; }
  friend bool operator==(const PlanBVerdict&, const PlanBVerdict&) = default;
};

struct PlanBOptions {
  /// Time between the other vehicle's deviation and the ego's response [s].
  double reaction_delay = 0.0;
};

/// Worst-case envelopes of a vehicle from state (s, v) under constant
/// acceleration, clipped at standstill or at v_max.
namespace envelope {

/// Arc length at which a vehicle braking with a_min comes to rest.
double StopPosition(double s, double v, double a_min);
/// Time for the braking envelope to reach `target`; nullopt if it stops short.
std::optional<double> BrakingTimeTo(double s, double v, double a_min, double target);
/// Time for the full-acceleration envelope (capped at v_max) to reach
/// `target`; 0 when already there.
double AcceleratingTimeTo(double s, double v, double a_max, double v_max,
                          double target);

}  // namespace envelope

/// Case 1: the other vehicle is planned to clear the zone before the ego
/// enters. At each sample before ego entry the other may brake as hard as it
/// can; while it can still come to rest inside the zone, or would only clear
/// it after the ego's planned entry, the ego must be able to stop before its
/// effective zone entry.
PlanBVerdict PlanBOtherFirst(const Trajectory& ego, const Trajectory& other,
                             const CollisionZone& zone, const Limits& ego_limits,
                             const Limits& other_limits,
                             const PlanBOptions& options = {});

/// Case 2: the ego is planned to clear the zone before the other enters. At
/// each sample before ego exit the other may accelerate as hard as it can;
/// the ego must either escape through the zone with full acceleration before
/// the other's earliest entry, or (if not yet in the zone) stop before it.
PlanBVerdict PlanBEgoFirst(const Trajectory& ego, const Trajectory& other,
                           const CollisionZone& zone, const Limits& ego_limits,
                           const Limits& other_limits,
                           const PlanBOptions& options = {});

/// Picks the case from the planned passing order: ego-first when the ego
/// enters the zone before the other does. zone.interval_a lies on the ego path.
PlanBVerdict CheckPlanB(const Trajectory& ego, const Trajectory& other,
                        const CollisionZone& zone, const Limits& ego_limits,
                        const Limits& other_limits, const PlanBOptions& options = {});

struct PlanBPairVerdict {
  std::size_t other = 0;
  PlanBVerdict verdict;
};

/// Checks every zone-sharing pair that contains the ego vehicle.
/// zones[i][j].interval_a lies on vehicle i's path.
std::vector<PlanBPairVerdict> CheckEnsemblePlanB(
    std::span<const Trajectory> ensemble,
    const std::vector<std::vector<CollisionZone>>& zones,
    std::span<const Limits> limits, std::size_t ego, const PlanBOptions& options = {});

bool HasValidPlanB(std::span<const Trajectory> ensemble,
                   const std::vector<std::vector<CollisionZone>>& zones,
                   std::span<const Limits> limits, std::size_t ego,
                   const PlanBOptions& options = {});

/// Full-braking profile from `initial`: jerk j_min until a_min, then hold.
VelocityProfile EmergencyBrakeProfile(const LongState& initial, const Limits& limits,
                                      double dt, std::size_t steps, double t0 = 0.0);

}  // namespace coop
