#include "coop/safety.h"

#include <cmath>
#include <limits>

#include "coop/cost_model.h"

namespace coop {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct CaseInputs {
  ZoneOccupancy ego;
  ZoneOccupancy other;
};

CaseInputs Occupancies(const Trajectory& ego, const Trajectory& other,
                       const CollisionZone& zone) {
  return {ComputeOccupancy(ego.profile, zone.interval_a, ego.path->vehicle_length()),
          ComputeOccupancy(other.profile, zone.interval_b,
                           other.path->vehicle_length())};
}

}  // namespace

const char* PlanBCaseName(PlanBCase c) {
  return c == PlanBCase::kOtherFirst ? "other_first" : "ego_first";
}

bool Collides(const Trajectory& traj_a, const Trajectory& traj_b,
              const CollisionZone& zone) {
  if (zone.empty) return false;
  const auto occ = Occupancies(traj_a, traj_b, zone);
  return OccupancyOverlaps(occ.ego, occ.other);
}

namespace envelope {

double StopPosition(double s, double v, double a_min) {
  return s + v * v / (2.0 * -a_min);
}

std::optional<double> BrakingTimeTo(double s, double v, double a_min, double target) {
  const double d = target - s;
  if (d <= 0.0) return 0.0;
  const double decel = -a_min;
  const double disc = v * v - 2.0 * decel * d;
  if (disc < 0.0) return std::nullopt;
  return (v - std::sqrt(disc)) / decel;
}

double AcceleratingTimeTo(double s, double v, double a_max, double v_max,
                          double target) {
  const double d = target - s;
  if (d <= 0.0) return 0.0;
  if (v >= v_max) return d / v_max;
  const double t_cap = (v_max - v) / a_max;
  const double d_cap = v * t_cap + 0.5 * a_max * t_cap * t_cap;
  if (d <= d_cap) return (-v + std::sqrt(v * v + 2.0 * a_max * d)) / a_max;
  return t_cap + (d - d_cap) / v_max;
}

}  // namespace envelope

PlanBVerdict PlanBOtherFirst(const Trajectory& ego, const Trajectory& other,
                             const CollisionZone& zone, const Limits& ego_limits,
                             const Limits& other_limits, const PlanBOptions& options) {
  if (zone.empty) return PlanBVerdict::Valid();
  const auto occ = Occupancies(ego, other, zone);
  const double ego_entry_time = occ.ego.enters ? occ.ego.t_in : kInf;
  const double delay = options.reaction_delay;

  for (std::size_t k = 0; k < ego.size(); ++k) {
    const double t = ego.profile.TimeAt(k);
    const LongState& e = ego.state(k);
    const LongState& o = other.state(k);
    if (e.s >= occ.ego.entry_s) break;
    if (o.s >= occ.other.exit_s) break;

    // A vehicle that cannot come to rest inside the zone clears it at the
    // latest when its braking envelope does.
    if (envelope::StopPosition(o.s, o.v, other_limits.a_min) >= occ.other.exit_s) {
      const auto tau =
          envelope::BrakingTimeTo(o.s, o.v, other_limits.a_min, occ.other.exit_s);
      if (tau && t + *tau < ego_entry_time) continue;
    }
    const double reacted_s = e.s + e.v * delay;
    if (envelope::StopPosition(reacted_s, e.v, ego_limits.a_min) < occ.ego.entry_s) {
      continue;
    }
    return PlanBVerdict::Invalid(t, PlanBCase::kOtherFirst);
  }
  return PlanBVerdict::Valid();
}

PlanBVerdict PlanBEgoFirst(const Trajectory& ego, const Trajectory& other,
                           const CollisionZone& zone, const Limits& ego_limits,
                           const Limits& other_limits, const PlanBOptions& options) {
  if (zone.empty) return PlanBVerdict::Valid();
  const auto occ = Occupancies(ego, other, zone);
  const double delay = options.reaction_delay;

  for (std::size_t k = 0; k < ego.size(); ++k) {
    const double t = ego.profile.TimeAt(k);
    const LongState& e = ego.state(k);
    const LongState& o = other.state(k);
    if (e.s >= occ.ego.exit_s) break;
    if (o.s >= occ.other.exit_s) break;

    const double earliest_entry =
        t + envelope::AcceleratingTimeTo(o.s, o.v, other_limits.a_max,
                                         other_limits.v_max, occ.other.entry_s);
    const double reacted_s = e.s + e.v * delay;
    const double escape =
        t + delay +
        envelope::AcceleratingTimeTo(reacted_s, e.v, ego_limits.a_max,
                                     ego_limits.v_max, occ.ego.exit_s);
    if (escape < earliest_entry) continue;
    if (e.s < occ.ego.entry_s &&
        envelope::StopPosition(reacted_s, e.v, ego_limits.a_min) < occ.ego.entry_s) {
      continue;
    }
    return PlanBVerdict::Invalid(t, PlanBCase::kEgoFirst);
  }
  return PlanBVerdict::Valid();
}

PlanBVerdict CheckPlanB(const Trajectory& ego, const Trajectory& other,
                        const CollisionZone& zone, const Limits& ego_limits,
                        const Limits& other_limits, const PlanBOptions& options) {
  if (zone.empty) return PlanBVerdict::Valid();
  const auto occ = Occupancies(ego, other, zone);
  if (occ.ego.passed || occ.other.passed) return PlanBVerdict::Valid();
  const double other_entry = occ.other.enters ? occ.other.t_in : kInf;
  // Whoever occupies the zone first; an ego that never clears it still has
  // to be able to escape.
  const bool ego_first = occ.ego.enters && occ.ego.t_in < other_entry;
  return ego_first
             ? PlanBEgoFirst(ego, other, zone, ego_limits, other_limits, options)
             : PlanBOtherFirst(ego, other, zone, ego_limits, other_limits, options);
}

std::vector<PlanBPairVerdict> CheckEnsemblePlanB(
    std::span<const Trajectory> ensemble,
    const std::vector<std::vector<CollisionZone>>& zones,
    std::span<const Limits> limits, std::size_t ego, const PlanBOptions& options) {
  std::vector<PlanBPairVerdict> out;
  for (std::size_t j = 0; j < ensemble.size(); ++j) {
    if (j == ego || zones[ego][j].empty) continue;
    out.push_back({j, CheckPlanB(ensemble[ego], ensemble[j], zones[ego][j],
                                 limits[ego], limits[j], options)});
  }
  return out;
}

bool HasValidPlanB(std::span<const Trajectory> ensemble,
                   const std::vector<std::vector<CollisionZone>>& zones,
                   std::span<const Limits> limits, std::size_t ego,
                   const PlanBOptions& options) {
  for (const auto& pair : CheckEnsemblePlanB(ensemble, zones, limits, ego, options)) {
    if (!pair.verdict.valid) return false;
  }
  return true;
}

VelocityProfile EmergencyBrakeProfile(const LongState& initial, const Limits& limits,
                                      double dt, std::size_t steps, double t0) {
  const std::vector<double> jerks(steps, limits.j_min);
  return IntegrateJerkSequence(initial, jerks, dt, limits, t0);
}

}  // namespace coop
