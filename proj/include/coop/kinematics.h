#pragma once

#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "coop/path_geometry.h"

namespace coop {

/// Longitudinal state along a path.
struct LongState {
  double s = 0.0;  // arc length [m]
  double v = 0.0;  // speed [m/s], never negative
  double a = 0.0;  // longitudinal acceleration [m/s^2]

  friend bool operator==(const LongState&, const LongState&) = default;
};

struct Limits {
  double v_max = 15.0;
  double a_min = -8.0;
  double a_max = 4.0;
  double j_min = -6.0;
  double j_max = 6.0;

  void Validate() const;
  friend bool operator==(const Limits&, const Limits&) = default;
};

/// States sampled at t_i = t0 + i * dt.
struct VelocityProfile {
  double t0 = 0.0;
  double dt = 0.25;
  std::vector<LongState> states;

  double TimeAt(std::size_t i) const { return t0 + static_cast<double>(i) * dt; }
  double EndTime() const { return TimeAt(states.size() - 1); }
  /// Piecewise-linear s(t); held constant outside the sampled range.
  double PositionAtTime(double t) const;
  double SpeedAtTime(double t) const;
  /// Earliest time at which the interpolated s(t) reaches `s`.
  std::optional<double> TimeToReach(double s) const;
};

/// Exact piecewise constant-jerk integration of one step, with the
/// acceleration clamped to [a_min, a_max] and the speed to [0, v_max].
/// Reaching v = 0 zeroes acceleration and motion for the rest of the step.
LongState IntegrateStep(const LongState& state, double jerk, double dt,
                        const Limits& limits);

VelocityProfile IntegrateJerkSequence(const LongState& initial,
                                      std::span<const double> jerks, double dt,
                                      const Limits& limits, double t0 = 0.0);

/// Per-sample planar quantities derived from a profile on its path.
struct TrajectorySample {
  Vec2 position;
  double psi = 0.0;
  double kappa = 0.0;
  double omega = 0.0;  // yaw rate [rad/s]
  double a_lon = 0.0;
  double a_lat = 0.0;  // v^2 * kappa
};

struct Trajectory {
  VelocityProfile profile;
  std::shared_ptr<const Path> path;
  std::vector<TrajectorySample> samples;

  double dt() const { return profile.dt; }
  double t0() const { return profile.t0; }
  std::size_t size() const { return profile.states.size(); }
  const LongState& state(std::size_t i) const { return profile.states[i]; }
};

/// Throws Error{kOverrun} when the profile runs past the end of the path.
Trajectory LiftToTrajectory(VelocityProfile profile,
                            std::shared_ptr<const Path> path);

/// Arc-length bounds of the reference point that count as zone occupancy:
/// entry once the front bumper reaches the zone, exit once the rear bumper
/// has cleared it.
ArcInterval EffectiveInterval(const ArcInterval& interval, double vehicle_length);

struct CrossingTimes {
  std::optional<double> t_in;
  std::optional<double> t_out;
};

CrossingTimes ZoneCrossingTimes(const VelocityProfile& profile,
                                const ArcInterval& interval,
                                double vehicle_length);
CrossingTimes ZoneCrossingTimes(const Trajectory& trajectory,
                                const ArcInterval& interval);

/// Reaching the exit bound exactly counts as cleared.
bool ReachesZoneEnd(const Trajectory& trajectory, const ArcInterval& interval);

}  // namespace coop
