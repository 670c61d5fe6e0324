#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "coop/kinematics.h"
#include "coop/path_geometry.h"

namespace coop {

/// Three-zone evaluation functional for one scalar trajectory property.
///
/// Around the optimum the cost grows with a small quadratic comfort term.
/// Past f_disc the discomfort term b*(f - f_disc)^2 is added on top, and past
/// f_inf -/+ margin the infeasibility term c*d^2*exp(|d|) is added as well.
/// Every added term starts from zero at its onset so the sum is continuous.
/// The coefficients are anchored to thresholds:
///   a = T_comf / cmargin^2            (comfort cost T_comf at f_opt +- cmargin)
///   c = T_inf / (margin^2 e^margin)   (infeasibility cost T_inf at f_inf)
struct EvaluationFunctionalParams {
  double f_opt = 0.0;
  double f_disc_plus = 0.0;
  double f_disc_minus = 0.0;
  double f_inf_plus = 0.0;
  double f_inf_minus = 0.0;
  double margin_plus = 1.0;
  double margin_minus = 1.0;
  double cmargin_plus = 1.0;
  double cmargin_minus = 1.0;
  double t_comf = 1.0;
  double t_inf = 1e6;
  double b_plus = 0.0;
  double b_minus = 0.0;
  /// When false only deviations below f_opt cost anything.
  bool upper_side = true;

  // Derived from the fields above by Finalize().
  double a_plus = 0.0;
  double a_minus = 0.0;
  double c_plus = 0.0;
  double c_minus = 0.0;

  /// Computes a+-, c+- and checks the zone ordering. Throws
  /// Error{kInvalidInput} on violated invariants.
  EvaluationFunctionalParams& Finalize();
  void Validate() const;

  friend bool operator==(const EvaluationFunctionalParams&,
                         const EvaluationFunctionalParams&) = default;
};

/// Convenience builder: b+- = b_factor * a+-.
EvaluationFunctionalParams MakeFunctional(double f_opt, double cmargin_minus,
                                          double cmargin_plus, double f_disc_minus,
                                          double f_disc_plus, double f_inf_minus,
                                          double f_inf_plus, double margin_minus,
                                          double margin_plus, double t_comf,
                                          double t_inf, double b_factor);

/// Only the lower side is active; f_opt acts as an open upper region.
EvaluationFunctionalParams MakeLowerFunctional(double f_opt, double cmargin_minus,
                                               double f_disc_minus,
                                               double f_inf_minus,
                                               double margin_minus, double t_comf,
                                               double t_inf, double b_factor);

struct CostBreakdown {
  double comfort = 0.0;
  double discomfort = 0.0;
  double infeasibility = 0.0;
  double row = 0.0;

  double Total() const { return comfort + discomfort + infeasibility + row; }
  CostBreakdown& operator+=(const CostBreakdown& o);
  CostBreakdown Scaled(double k) const;
  friend CostBreakdown operator+(CostBreakdown a, const CostBreakdown& b) {
    return a += b;
  }
  friend bool operator==(const CostBreakdown&, const CostBreakdown&) = default;
};

/// Throws Error{kInvalidInput} for non-finite f.
CostBreakdown EvalFunctional(const EvaluationFunctionalParams& params, double f);

struct VehicleCostParams {
  EvaluationFunctionalParams v;
  EvaluationFunctionalParams a_lon;
  EvaluationFunctionalParams a_lat;
  EvaluationFunctionalParams omega;
  EvaluationFunctionalParams offset;
  EvaluationFunctionalParams tzc;
  double row_factor = 10.0;

  void Validate() const;
  /// Smallest infeasibility threshold among the property functionals.
  double InfeasibilityThreshold() const;
  friend bool operator==(const VehicleCostParams&,
                         const VehicleCostParams&) = default;
};

/// Defaults for a vehicle whose optimal speed is `desired_speed`, on a road
/// with the given speed limit.
VehicleCostParams DefaultVehicleCostParams(double desired_speed,
                                           double speed_limit);

/// Riemann sum over samples 1..N (the initial state is given, not planned)
/// of the per-sample functional costs, each weighted by dt. Jerk, curvature
/// and minimum-distance terms are not part of the sum; curvature enters only
/// through the lateral acceleration.
CostBreakdown SingletonCost(const Trajectory& traj, const VehicleCostParams& params);

/// Time of zone clearance between two trajectories on the zone's paths
/// (zone.interval_a belongs to traj_a). +inf when the zone is empty or no
/// entry follows; <= 0 (minus the overlap duration) when both occupy the zone
/// at the same time.
double Tzc(const Trajectory& traj_a, const Trajectory& traj_b,
           const CollisionZone& zone);

/// Occupancy window [t_in, t_out] of a vehicle for one zone, in the form the
/// planner caches per trajectory.
struct ZoneOccupancy {
  bool enters = false;   // reaches the effective entry within the horizon
  bool passed = false;   // already beyond the effective exit at t0
  double t_in = 0.0;
  double t_out = 0.0;    // +inf when not cleared within the horizon
  double entry_s = 0.0;  // effective entry arc length
  double exit_s = 0.0;   // effective exit arc length
};

ZoneOccupancy ComputeOccupancy(const VelocityProfile& profile,
                               const ArcInterval& interval, double vehicle_length);

/// Closed-window overlap test on cached occupancies.
bool OccupancyOverlaps(const ZoneOccupancy& a, const ZoneOccupancy& b);

/// TZC on cached occupancies; `profile_*` supply the interpolated state of the
/// second vehicle at the first vehicle's exit.
double TzcFromOccupancy(const ZoneOccupancy& occ_a, const VelocityProfile& profile_a,
                        const ZoneOccupancy& occ_b, const VelocityProfile& profile_b);

/// G_TZC for vehicle i; +inf TZC costs nothing.
CostBreakdown TzcCost(const EvaluationFunctionalParams& tzc_params, double tzc);

/// Right-of-way term: u * (comfort + discomfort) of the priority holder's
/// singleton cost, recorded in `row`.
CostBreakdown RowCost(const CostBreakdown& singleton_i, double row_factor);

/// Pairwise cost G_{i,j}: TZC term plus, when i has right of way over j, the
/// upscaled comfort-related singleton costs of i.
CostBreakdown PairwiseCost(const Trajectory& traj_i, const Trajectory& traj_j,
                           const CollisionZone& zone, bool i_has_priority,
                           const VehicleCostParams& params_i,
                           const VehicleCostParams& params_j);

/// Everything ensemble evaluation needs besides the trajectories.
struct CostContext {
  std::vector<VehicleCostParams> params;
  /// zones[i][j].interval_a lies on vehicle i's path.
  std::vector<std::vector<CollisionZone>> zones;
  /// priority[i][j]: i has right of way over j.
  std::vector<std::vector<bool>> priority;
};

struct EnsembleCost {
  double total = 0.0;
  std::vector<CostBreakdown> per_vehicle;
};

/// Accumulates per-vehicle costs in a fixed order: singleton, then for each
/// j != i the TZC term followed by the right-of-way term. `tzc` is the
/// row-major n x n matrix of pairwise TZC values. Returns the total.
double AssembleEnsembleCost(std::span<const CostBreakdown> singleton,
                            std::span<const double> tzc, const CostContext& context,
                            std::span<CostBreakdown> per_vehicle);

/// G_total = sum_i (G_i0 + sum_{j != i} G_ij). Throws Error{kInvalidInput}
/// when the trajectories do not share t0, dt and sample count.
EnsembleCost ComputeEnsembleCost(std::span<const Trajectory> ensemble,
                                 const CostContext& context);

}  // namespace coop
