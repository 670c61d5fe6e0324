#include "coop/cost_model.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "coop/errors.h"

namespace coop {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double InfeasibilityTerm(double c, double d) { return c * d * d * std::exp(std::abs(d)); }

}  // namespace

void EvaluationFunctionalParams::Validate() const {
  auto fail = [](const std::string& what) {
    throw Error(ErrorCode::kInvalidInput, "evaluation functional: " + what);
  };
  if (!(t_comf > 0.0) || !(t_inf > t_comf)) fail("need T_inf > T_comf > 0");
  if (!(cmargin_minus > 0.0)) fail("cmargin_minus must be positive");
  if (!(margin_minus > 0.0)) fail("margin_minus must be positive");
  if (!(f_inf_minus + margin_minus <= f_disc_minus && f_disc_minus <= f_opt)) {
    fail("need f_inf_minus + margin_minus <= f_disc_minus <= f_opt");
  }
  if (!(b_minus > a_minus)) fail("b_minus must exceed a_minus");
  if (upper_side) {
    if (!(cmargin_plus > 0.0)) fail("cmargin_plus must be positive");
    if (!(margin_plus > 0.0)) fail("margin_plus must be positive");
    if (!(f_opt <= f_disc_plus && f_disc_plus <= f_inf_plus - margin_plus)) {
      fail("need f_opt <= f_disc_plus <= f_inf_plus - margin_plus");
    }
    if (!(b_plus > a_plus)) fail("b_plus must exceed a_plus");
  }
}

EvaluationFunctionalParams& EvaluationFunctionalParams::Finalize() {
  a_minus = t_comf / (cmargin_minus * cmargin_minus);
  c_minus = t_inf / (margin_minus * margin_minus * std::exp(margin_minus));
  if (upper_side) {
    a_plus = t_comf / (cmargin_plus * cmargin_plus);
    c_plus = t_inf / (margin_plus * margin_plus * std::exp(margin_plus));
  } else {
    a_plus = 0.0;
    c_plus = 0.0;
  }
  Validate();
  return *this;
}

EvaluationFunctionalParams MakeFunctional(double f_opt, double cmargin_minus,
                                          double cmargin_plus, double f_disc_minus,
                                          double f_disc_plus, double f_inf_minus,
                                          double f_inf_plus, double margin_minus,
                                          double margin_plus, double t_comf,
                                          double t_inf, double b_factor) {
  EvaluationFunctionalParams p;
  p.f_opt = f_opt;
  p.cmargin_minus = cmargin_minus;
  p.cmargin_plus = cmargin_plus;
  p.f_disc_minus = f_disc_minus;
  p.f_disc_plus = f_disc_plus;
  p.f_inf_minus = f_inf_minus;
  p.f_inf_plus = f_inf_plus;
  p.margin_minus = margin_minus;
  p.margin_plus = margin_plus;
  p.t_comf = t_comf;
  p.t_inf = t_inf;
  p.b_minus = b_factor * t_comf / (cmargin_minus * cmargin_minus);
  p.b_plus = b_factor * t_comf / (cmargin_plus * cmargin_plus);
  return p.Finalize();
}

EvaluationFunctionalParams MakeLowerFunctional(double f_opt, double cmargin_minus,
                                               double f_disc_minus,
                                               double f_inf_minus,
                                               double margin_minus, double t_comf,
                                               double t_inf, double b_factor) {
  EvaluationFunctionalParams p;
  p.upper_side = false;
  p.f_opt = f_opt;
  p.cmargin_minus = cmargin_minus;
  p.cmargin_plus = cmargin_minus;
  p.f_disc_minus = f_disc_minus;
  p.f_disc_plus = kInf;
  p.f_inf_minus = f_inf_minus;
  p.f_inf_plus = kInf;
  p.margin_minus = margin_minus;
  p.margin_plus = margin_minus;
  p.t_comf = t_comf;
  p.t_inf = t_inf;
  p.b_minus = b_factor * t_comf / (cmargin_minus * cmargin_minus);
  p.b_plus = 0.0;
  return p.Finalize();
}

CostBreakdown& CostBreakdown::operator+=(const CostBreakdown& o) {
  comfort += o.comfort;
  discomfort += o.discomfort;
  infeasibility += o.infeasibility;
  row += o.row;
  return *this;
}

CostBreakdown CostBreakdown::Scaled(double k) const {
  return {comfort * k, discomfort * k, infeasibility * k, row * k};
}

CostBreakdown EvalFunctional(const EvaluationFunctionalParams& p, double f) {
  if (!std::isfinite(f)) {
    throw Error(ErrorCode::kInvalidInput, "functional argument must be finite");
  }
  CostBreakdown out;
  const double dev = f - p.f_opt;
  if (dev > 0.0 && p.upper_side) {
    out.comfort = p.a_plus * dev * dev;
    if (f > p.f_disc_plus) {
      const double d = f - p.f_disc_plus;
      out.discomfort = p.b_plus * d * d;
    }
    const double onset = p.f_inf_plus - p.margin_plus;
    if (f > onset) out.infeasibility = InfeasibilityTerm(p.c_plus, f - onset);
  } else if (dev < 0.0) {
    out.comfort = p.a_minus * dev * dev;
    if (f < p.f_disc_minus) {
      const double d = p.f_disc_minus - f;
      out.discomfort = p.b_minus * d * d;
    }
    const double onset = p.f_inf_minus + p.margin_minus;
    if (f < onset) out.infeasibility = InfeasibilityTerm(p.c_minus, onset - f);
  }
  return out;
}

void VehicleCostParams::Validate() const {
  for (const auto* f : {&v, &a_lon, &a_lat, &omega, &offset, &tzc}) f->Validate();
  if (tzc.upper_side) {
    throw Error(ErrorCode::kInvalidInput, "TZC functional must be lower-side only");
  }
  if (!(row_factor > 1.0)) {
    throw Error(ErrorCode::kInvalidInput, "row_factor must exceed 1");
  }
}

double VehicleCostParams::InfeasibilityThreshold() const {
  return std::min({v.t_inf, a_lon.t_inf, a_lat.t_inf, omega.t_inf, offset.t_inf,
                   tzc.t_inf});
}

VehicleCostParams DefaultVehicleCostParams(double desired_speed, double speed_limit) {
  constexpr double kComf = 1.0;
  constexpr double kInfeasible = 1e6;
  constexpr double kB = 20.0;
  VehicleCostParams p;
  const double v_cm_plus = 0.1 * speed_limit;
  const double v_disc_plus = std::max(desired_speed, 1.05 * speed_limit);
  const double v_margin_plus = 0.1 * speed_limit;
  const double v_inf_plus = std::max(1.2 * speed_limit, v_disc_plus + v_margin_plus);
  p.v = MakeFunctional(desired_speed, 0.2 * desired_speed, v_cm_plus,
                       0.5 * desired_speed, v_disc_plus, -1.0, v_inf_plus, 0.5,
                       v_margin_plus, kComf, kInfeasible, kB);
  p.a_lon = MakeFunctional(0.0, 1.5, 1.5, -2.5, 2.5, -8.0, 8.0, 1.0, 1.0, kComf,
                           kInfeasible, kB);
  p.a_lat = MakeFunctional(0.0, 1.5, 1.5, -2.5, 2.5, -6.0, 6.0, 1.0, 1.0, kComf,
                           kInfeasible, kB);
  p.omega = MakeFunctional(0.0, 0.3, 0.3, -0.5, 0.5, -1.5, 1.5, 0.3, 0.3, kComf,
                           kInfeasible, kB);
  p.offset = MakeFunctional(0.0, 0.5, 0.5, -1.0, 1.0, -2.0, 2.0, 0.5, 0.5, kComf,
                            kInfeasible, kB);
  p.tzc = MakeLowerFunctional(4.0, 2.0, 2.0, 0.0, 0.5, kComf, kInfeasible, kB);
  p.row_factor = 10.0;
  return p;
}

CostBreakdown SingletonCost(const Trajectory& traj, const VehicleCostParams& params) {
  CostBreakdown sum;
  const double dt = traj.dt();
  // Lateral offset is fixed by the path under path-velocity decomposition.
  const double offset = 0.0;
  for (std::size_t i = 1; i < traj.size(); ++i) {
    const LongState& st = traj.state(i);
    const TrajectorySample& smp = traj.samples[i];
    CostBreakdown step = EvalFunctional(params.v, st.v);
    step += EvalFunctional(params.a_lon, smp.a_lon);
    step += EvalFunctional(params.a_lat, smp.a_lat);
    step += EvalFunctional(params.omega, smp.omega);
    step += EvalFunctional(params.offset, offset);
    sum += step.Scaled(dt);
  }
  return sum;
}

ZoneOccupancy ComputeOccupancy(const VelocityProfile& profile,
                               const ArcInterval& interval, double vehicle_length) {
  const ArcInterval eff = EffectiveInterval(interval, vehicle_length);
  ZoneOccupancy occ;
  occ.entry_s = eff.s_in;
  occ.exit_s = eff.s_out;
  if (profile.states.front().s >= eff.s_out) {
    occ.passed = true;
    return occ;
  }
  const auto t_in = profile.TimeToReach(eff.s_in);
  if (!t_in) return occ;
  occ.enters = true;
  occ.t_in = *t_in;
  occ.t_out = profile.TimeToReach(eff.s_out).value_or(kInf);
  return occ;
}

bool OccupancyOverlaps(const ZoneOccupancy& a, const ZoneOccupancy& b) {
  if (!a.enters || !b.enters) return false;
  return std::max(a.t_in, b.t_in) <= std::min(a.t_out, b.t_out);
}

double TzcFromOccupancy(const ZoneOccupancy& occ_a, const VelocityProfile& profile_a,
                        const ZoneOccupancy& occ_b, const VelocityProfile& profile_b) {
  if (OccupancyOverlaps(occ_a, occ_b)) {
    const double out_a = std::min(occ_a.t_out, profile_a.EndTime());
    const double out_b = std::min(occ_b.t_out, profile_b.EndTime());
    const double overlap = std::min(out_a, out_b) - std::max(occ_a.t_in, occ_b.t_in);
    return -std::max(0.0, overlap);
  }
  // Time at which each vehicle has cleared the zone.
  auto clear_time = [](const ZoneOccupancy& occ) {
    if (occ.passed) return -kInf;
    return occ.enters ? occ.t_out : kInf;
  };
  const double clear_a = clear_time(occ_a);
  const double clear_b = clear_time(occ_b);
  const bool a_first = clear_a <= clear_b;
  const double t_first_out = a_first ? clear_a : clear_b;
  const ZoneOccupancy& second = a_first ? occ_b : occ_a;
  const VelocityProfile& second_profile = a_first ? profile_b : profile_a;
  // A vehicle past the zone at t0 no longer interacts; nobody clearing within
  // the horizon leaves no entry to measure.
  if (!std::isfinite(t_first_out) || second.passed) return kInf;
  const double s2 = second_profile.PositionAtTime(t_first_out);
  const double v2 = second_profile.SpeedAtTime(t_first_out);
  if (!(v2 > 0.0)) return kInf;
  return (second.entry_s - s2) / v2;
}

double Tzc(const Trajectory& traj_a, const Trajectory& traj_b,
           const CollisionZone& zone) {
  if (zone.empty) return kInf;
  const ZoneOccupancy occ_a = ComputeOccupancy(traj_a.profile, zone.interval_a,
                                               traj_a.path->vehicle_length());
  const ZoneOccupancy occ_b = ComputeOccupancy(traj_b.profile, zone.interval_b,
                                               traj_b.path->vehicle_length());
  return TzcFromOccupancy(occ_a, traj_a.profile, occ_b, traj_b.profile);
}

CostBreakdown TzcCost(const EvaluationFunctionalParams& tzc_params, double tzc) {
  if (!std::isfinite(tzc) || tzc >= tzc_params.f_opt) return {};
  return EvalFunctional(tzc_params, tzc);
}

CostBreakdown RowCost(const CostBreakdown& singleton_i, double row_factor) {
  CostBreakdown out;
  out.row = row_factor * (singleton_i.comfort + singleton_i.discomfort);
  return out;
}

CostBreakdown PairwiseCost(const Trajectory& traj_i, const Trajectory& traj_j,
                           const CollisionZone& zone, bool i_has_priority,
                           const VehicleCostParams& params_i,
                           const VehicleCostParams& /*params_j*/) {
  CostBreakdown out = TzcCost(params_i.tzc, Tzc(traj_i, traj_j, zone));
  if (i_has_priority) {
    out += RowCost(SingletonCost(traj_i, params_i), params_i.row_factor);
  }
  return out;
}

double AssembleEnsembleCost(std::span<const CostBreakdown> singleton,
                            std::span<const double> tzc, const CostContext& context,
                            std::span<CostBreakdown> per_vehicle) {
  const std::size_t n = singleton.size();
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    CostBreakdown acc = singleton[i];
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      acc += TzcCost(context.params[i].tzc, tzc[i * n + j]);
      if (context.priority[i][j]) {
        acc += RowCost(singleton[i], context.params[i].row_factor);
      }
    }
    per_vehicle[i] = acc;
    total += acc.Total();
  }
  return total;
}

EnsembleCost ComputeEnsembleCost(std::span<const Trajectory> ensemble,
                                 const CostContext& context) {
  const std::size_t n = ensemble.size();
  if (n == 0 || context.params.size() != n) {
    throw Error(ErrorCode::kInvalidInput,
                "ensemble and cost context disagree on vehicle count");
  }
  for (const Trajectory& t : ensemble) {
    if (t.dt() != ensemble[0].dt() || t.t0() != ensemble[0].t0() ||
        t.size() != ensemble[0].size()) {
      throw Error(ErrorCode::kInvalidInput,
                  "ensemble trajectories must share t0, dt and sample count");
    }
  }
  std::vector<CostBreakdown> singleton(n);
  for (std::size_t i = 0; i < n; ++i) {
    singleton[i] = SingletonCost(ensemble[i], context.params[i]);
  }
  std::vector<double> tzc(n * n, kInf);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j) tzc[i * n + j] = Tzc(ensemble[i], ensemble[j], context.zones[i][j]);
    }
  }
  EnsembleCost result;
  result.per_vehicle.resize(n);
  result.total = AssembleEnsembleCost(singleton, tzc, context, result.per_vehicle);
  return result;
}

}  // namespace coop
