#include "coop/kinematics.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "coop/errors.h"

namespace coop {
namespace {

constexpr double kEventEps = 1e-12;

/// Smallest root of c + b t + q t^2 in (kEventEps, horizon].
std::optional<double> FirstRoot(double q, double b, double c, double horizon) {
  std::optional<double> best;
  auto consider = [&](double t) {
    if (t > kEventEps && t <= horizon && (!best || t < *best)) best = t;
  };
  if (std::abs(q) < 1e-15) {
    if (b != 0.0) consider(-c / b);
    return best;
  }
  const double disc = b * b - 4.0 * q * c;
  if (disc < 0.0) return best;
  const double root = std::sqrt(disc);
  // Numerically stable pair of roots.
  const double k = -0.5 * (b + std::copysign(root, b));
  if (k != 0.0) {
    consider(k / q);
    consider(c / k);
  } else {
    consider(0.0);
  }
  return best;
}

}  // namespace

void Limits::Validate() const {
  if (!(v_max > 0.0) || !(a_min < 0.0 && a_max > 0.0) ||
      !(j_min < 0.0 && j_max > 0.0)) {
    throw Error(ErrorCode::kInvalidInput,
                "limits need v_max > 0, a_min < 0 < a_max and j_min < 0 < j_max");
  }
}

double VelocityProfile::PositionAtTime(double t) const {
  if (t <= t0) return states.front().s;
  const double u = (t - t0) / dt;
  const auto i = static_cast<std::size_t>(std::floor(u));
  if (i + 1 >= states.size()) return states.back().s;
  const double frac = u - static_cast<double>(i);
  return states[i].s + frac * (states[i + 1].s - states[i].s);
}

double VelocityProfile::SpeedAtTime(double t) const {
  if (t <= t0) return states.front().v;
  const double u = (t - t0) / dt;
  const auto i = static_cast<std::size_t>(std::floor(u));
  if (i + 1 >= states.size()) return states.back().v;
  const double frac = u - static_cast<double>(i);
  return states[i].v + frac * (states[i + 1].v - states[i].v);
}

std::optional<double> VelocityProfile::TimeToReach(double s) const {
  if (states.front().s >= s) return t0;
  for (std::size_t i = 1; i < states.size(); ++i) {
    if (states[i].s >= s) {
      const double ds = states[i].s - states[i - 1].s;
      const double frac = (s - states[i - 1].s) / ds;
      return TimeAt(i - 1) + frac * dt;
    }
  }
  return std::nullopt;
}

LongState IntegrateStep(const LongState& state, double jerk, double dt,
                        const Limits& limits) {
  double s = state.s;
  double v = std::clamp(state.v, 0.0, limits.v_max);
  double a = std::clamp(state.a, limits.a_min, limits.a_max);
  double remaining = dt;

  for (int phase = 0; phase < 8 && remaining > kEventEps; ++phase) {
    if (v <= 0.0 && a < 0.0) a = 0.0;
    if (v >= limits.v_max && a > 0.0) a = 0.0;
    double j = jerk;
    if (a >= limits.a_max && j > 0.0) j = 0.0;
    if (a <= limits.a_min && j < 0.0) j = 0.0;

    if (v <= 0.0 && a <= 0.0 && j <= 0.0) {
      v = 0.0;
      a = 0.0;
      break;
    }
    if (v >= limits.v_max && a >= 0.0 && j >= 0.0) {
      v = limits.v_max;
      a = 0.0;
      s += v * remaining;
      break;
    }

    double h = remaining;
    if (j > 0.0) h = std::min(h, (limits.a_max - a) / j);
    if (j < 0.0) h = std::min(h, (limits.a_min - a) / j);

    const auto to_stop = FirstRoot(0.5 * j, a, v, h);
    const auto to_vmax = FirstRoot(0.5 * j, a, v - limits.v_max, h);
    double tau = h;
    if (to_stop) tau = std::min(tau, *to_stop);
    if (to_vmax) tau = std::min(tau, *to_vmax);

    s += v * tau + 0.5 * a * tau * tau + j * tau * tau * tau / 6.0;
    v += a * tau + 0.5 * j * tau * tau;
    a += j * tau;
    remaining -= tau;

    if (to_stop && tau == *to_stop) {
      v = 0.0;
      a = 0.0;
      break;
    }
    if (to_vmax && tau == *to_vmax) {
      v = limits.v_max;
      a = 0.0;
    }
    if (j > 0.0 && a > limits.a_max) a = limits.a_max;
    if (j < 0.0 && a < limits.a_min) a = limits.a_min;
  }
  return {s, std::clamp(v, 0.0, limits.v_max), a};
}

VelocityProfile IntegrateJerkSequence(const LongState& initial,
                                      std::span<const double> jerks, double dt,
                                      const Limits& limits, double t0) {
  if (!(dt > 0.0)) throw Error(ErrorCode::kInvalidInput, "dt must be positive");
  VelocityProfile profile;
  profile.t0 = t0;
  profile.dt = dt;
  profile.states.reserve(jerks.size() + 1);
  profile.states.push_back(initial);
  for (double j : jerks) {
    if (!std::isfinite(j)) {
      throw Error(ErrorCode::kInvalidInput, "jerk values must be finite");
    }
    profile.states.push_back(IntegrateStep(profile.states.back(), j, dt, limits));
  }
  return profile;
}

Trajectory LiftToTrajectory(VelocityProfile profile,
                            std::shared_ptr<const Path> path) {
  if (profile.states.empty()) {
    throw Error(ErrorCode::kInvalidInput, "empty velocity profile");
  }
  const double end_s = profile.states.back().s;
  if (end_s > path->length()) {
    throw Error(ErrorCode::kOverrun, "profile reaches s = " + std::to_string(end_s) +
                                         " beyond path length " +
                                         std::to_string(path->length()));
  }
  Trajectory traj;
  traj.samples.reserve(profile.states.size());
  for (const LongState& st : profile.states) {
    const PathPoint p = path->Eval(st.s);
    traj.samples.push_back(
        {p.position, p.psi, p.kappa, 0.0, st.a, st.v * st.v * p.kappa});
  }
  const std::size_t n = traj.samples.size();
  const double dt = profile.dt;
  for (std::size_t i = 0; n > 1 && i < n; ++i) {
    auto& smp = traj.samples;
    if (i == 0) {
      smp[i].omega = (smp[1].psi - smp[0].psi) / dt;
    } else if (i + 1 == n) {
      smp[i].omega = (smp[i].psi - smp[i - 1].psi) / dt;
    } else {
      smp[i].omega = (smp[i + 1].psi - smp[i - 1].psi) / (2.0 * dt);
    }
  }
  traj.profile = std::move(profile);
  traj.path = std::move(path);
  return traj;
}

ArcInterval EffectiveInterval(const ArcInterval& interval, double vehicle_length) {
  return {interval.s_in - 0.5 * vehicle_length,
          interval.s_out + 0.5 * vehicle_length};
}

CrossingTimes ZoneCrossingTimes(const VelocityProfile& profile,
                                const ArcInterval& interval,
                                double vehicle_length) {
  const ArcInterval eff = EffectiveInterval(interval, vehicle_length);
  return {profile.TimeToReach(eff.s_in), profile.TimeToReach(eff.s_out)};
}

CrossingTimes ZoneCrossingTimes(const Trajectory& trajectory,
                                const ArcInterval& interval) {
  return ZoneCrossingTimes(trajectory.profile, interval,
                           trajectory.path->vehicle_length());
}

bool ReachesZoneEnd(const Trajectory& trajectory, const ArcInterval& interval) {
  return ZoneCrossingTimes(trajectory, interval).t_out.has_value();
}

}  // namespace coop
