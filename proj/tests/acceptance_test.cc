// Scenario-level acceptance checks; prints one PASS/FAIL line per criterion.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "coop/builtin_scenarios.h"
#include "coop/cost_model.h"
#include "coop/planner.h"
#include "coop/report.h"
#include "coop/safety.h"
#include "support/oracle.h"

namespace coop {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kMaxRunSeconds = 10.0;

struct CriterionResult {
  bool pass = true;
  std::string detail;
};

void Require(CriterionResult& out, bool ok, const std::string& what) {
  if (!ok) {
    out.pass = false;
    out.detail += (out.detail.empty() ? "" : "; ") + what;
  }
}

struct TimedPlan {
  PlanResult result;
  double seconds = 0.0;
};

TimedPlan TimePlan(const Scenario& s, const SamplingConfig& cfg) {
  const auto start = std::chrono::steady_clock::now();
  TimedPlan t{Plan(s, cfg), 0.0};
  t.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return t;
}

TimedPlan TimePlan(const Scenario& s) { return TimePlan(s, s.sampling); }

double EntryTime(const PlanResult& r, std::size_t i) {
  const std::size_t j = 1 - i;
  const auto occ = ComputeOccupancy(r.ensemble[i].profile, r.zones[i][j].interval_a,
                                    r.ensemble[i].path->vehicle_length());
  return occ.enters ? occ.t_in : kInf;
}

void CheckRuntime(CriterionResult& out, const TimedPlan& t, const std::string& name) {
  Require(out, t.seconds < kMaxRunSeconds, fmt::format("{} took {:.2f} s", name, t.seconds));
}

// 1. The priority vehicle drives as if alone.
CriterionResult RightOfWayNonInterference() {
  CriterionResult out;
  const Scenario s = BuiltinScenario("t_junction_row");
  const std::string prio = s.right_of_way.at(0).priority;
  const std::size_t i = s.IndexOf(prio);
  const TimedPlan joint = TimePlan(s);
  const TimedPlan solo = TimePlan(s.Solo(prio));
  CheckRuntime(out, joint, s.name);
  if (joint.result.outcome != Outcome::kSelected || solo.result.outcome != Outcome::kSelected) {
    Require(out, false, "no selection");
    return out;
  }
  const double in_ensemble =
      SingletonCost(joint.result.ensemble[i], s.vehicles[i].cost).Total();
  const double alone = solo.result.total_cost;
  const double rel = std::abs(in_ensemble - alone) / std::max(alone, 1e-9);
  out.detail = fmt::format("{} singleton {:.4f} vs solo {:.4f} ({:.3f}%)", prio,
                           in_ensemble, alone, 100.0 * rel);
  Require(out, rel <= 0.01, "more than 1% above solo optimum");
  return out;
}

// 2./3. Passing order at the narrowing.
struct Order {
  std::string first;
  double t_left = kInf;
  double t_right = kInf;
};

Order NarrowingOrder(const std::string& name, CriterionResult& out) {
  const Scenario s = BuiltinScenario(name);
  const TimedPlan t = TimePlan(s);
  CheckRuntime(out, t, name);
  Order o;
  if (t.result.outcome != Outcome::kSelected) {
    Require(out, false, name + " not selected");
    return o;
  }
  o.t_left = EntryTime(t.result, s.IndexOf("left"));
  o.t_right = EntryTime(t.result, s.IndexOf("right"));
  o.first = o.t_left < o.t_right ? "left" : (o.t_right < o.t_left ? "right" : "tie");
  return o;
}

std::string CloserVehicle() {
  const Scenario s = BuiltinScenario("narrowing_unsigned");
  const auto zones = s.ComputeZones();
  const double left = EffectiveInterval(zones[0][1].interval_a, 4.5).s_in - s.vehicles[0].initial.s;
  const double right = EffectiveInterval(zones[1][0].interval_a, 4.5).s_in - s.vehicles[1].initial.s;
  return left < right ? s.vehicles[0].id : s.vehicles[1].id;
}

CriterionResult UnsignedNarrowingOrder() {
  CriterionResult out;
  const std::string closer = CloserVehicle();
  const Order o = NarrowingOrder("narrowing_unsigned", out);
  if (!out.pass) return out;
  out.detail = fmt::format("closer {} ; entry left {:.3f} s, right {:.3f} s", closer,
                           o.t_left, o.t_right);
  Require(out, o.first == closer, "closer vehicle does not pass first");
  return out;
}

CriterionResult SignOverrulesOrder() {
  CriterionResult out;
  const Scenario s = BuiltinScenario("narrowing_row");
  const std::string prio = s.right_of_way.at(0).priority;
  const std::string closer = CloserVehicle();
  CriterionResult scratch;
  const Order unsigned_order = NarrowingOrder("narrowing_unsigned", scratch);
  const Order o = NarrowingOrder("narrowing_row", out);
  if (!out.pass || !scratch.pass) {
    out.pass = false;
    return out;
  }
  out.detail = fmt::format("priority {} ; entry left {:.3f} s, right {:.3f} s", prio,
                           o.t_left, o.t_right);
  Require(out, prio != closer, "priority should go to the farther vehicle");
  Require(out, o.first == prio, "priority vehicle does not pass first");
  Require(out, o.first != unsigned_order.first, "order not flipped");
  return out;
}

// 4. Upper has right of way, but lower is too close to stop before the zone.
CriterionResult InfeasibilityOverrulesRegulation() {
  CriterionResult out;
  TJunctionSetup setup;
  setup.priority = Priority::kSecond;
  setup.ego = "upper";
  setup.lower_gap = 4.0;
  const Scenario s = MakeTJunction("t_junction_too_close", setup);
  const std::size_t lower = s.IndexOf("lower"), upper = s.IndexOf("upper");
  const auto zones = s.ComputeZones();
  const VehicleSpec& lv = s.vehicles[lower];
  const double entry = EffectiveInterval(zones[lower][upper].interval_a, 4.5).s_in;
  Require(out, envelope::StopPosition(lv.initial.s, lv.initial.v, lv.limits.a_min) > entry,
          "lower could still stop");

  const TimedPlan t = TimePlan(s);
  CheckRuntime(out, t, s.name);
  if (t.result.outcome != Outcome::kSelected) {
    Require(out, false, "not selected");
    return out;
  }
  const PlanResult& r = t.result;
  const double t_lower = EntryTime(r, lower), t_upper = EntryTime(r, upper);
  Require(out, t_lower < t_upper, "lower does not go first");
  Require(out, !Collides(r.ensemble[0], r.ensemble[1], r.zones[0][1]), "selected ensemble collides");
  Require(out, r.total_cost < 1e6, "selected cost infeasible");

  // Every admissible ensemble lets the lower vehicle go first: yielding is impossible.
  std::vector<CandidateSet> sets;
  for (std::size_t i = 0; i < 2; ++i) sets.push_back(BuildCandidates(s, i, s.sampling, zones));
  const auto ctx = s.MakeCostContext(zones);
  const auto ranking = EnumerateEnsembles(sets, ctx, 1e6);
  std::vector<std::vector<ZoneOccupancy>> occ(2);
  for (std::size_t i = 0; i < 2; ++i) {
    for (const auto& tr : sets[i].trajectories) {
      occ[i].push_back(ComputeOccupancy(tr.profile, zones[i][1 - i].interval_a, 4.5));
    }
  }
  std::size_t upper_first = 0, colliding = 0;
  for (const auto& e : ranking.entries) {
    const auto m = ranking.Members(e.linear);
    const auto& ol = occ[lower][m[lower]];
    const auto& ou = occ[upper][m[upper]];
    if (OccupancyOverlaps(ol, ou)) ++colliding;
    if (!ol.enters || (ou.enters && ou.t_out < ol.t_in)) ++upper_first;
  }
  Require(out, colliding == 0, "colliding ensemble ranked");
  Require(out, upper_first == 0, "a yielding ensemble exists");
  out.detail = fmt::format(
      "lower stop point {:.2f} m past its entry; {} admissible ensembles, {} with upper "
      "first; selected lower enters {:.3f} s, upper {:.3f} s, cost {:.2f}",
      envelope::StopPosition(lv.initial.s, lv.initial.v, lv.limits.a_min) - entry,
      ranking.entries.size(), upper_first, t_lower, t_upper, r.total_cost);
  return out;
}

// 5. Lower (ego) can neither stop nor escape ahead of upper's worst case.
CriterionResult EmergencyFallback() {
  CriterionResult out;
  TJunctionSetup setup;
  setup.priority = Priority::kSecond;
  setup.ego = "lower";
  setup.lower_gap = 5.0;
  const Scenario s = MakeTJunction("t_junction_cornered", setup);
  const TimedPlan t = TimePlan(s);
  CheckRuntime(out, t, s.name);
  const PlanResult& r = t.result;
  Require(out, r.outcome == Outcome::kEmergencyBrake, "not an emergency brake");
  Require(out, r.candidates_evaluated > 0 && r.plan_b_checks > 0, "nothing was checked");
  const VehicleSpec& ego = s.vehicles[s.EgoIndex()];
  const VelocityProfile expected =
      EmergencyBrakeProfile(ego.initial, ego.limits, s.sampling.dt, s.sampling.Steps());
  Require(out, r.ensemble.size() == 1 && r.ensemble[0].profile.states == expected.states,
          "ego profile is not the full-braking profile");
  double min_a = 0.0;
  if (!r.ensemble.empty()) {
    for (const auto& st : r.ensemble[0].profile.states) min_a = std::min(min_a, st.a);
  }
  Require(out, min_a == ego.limits.a_min, "maximal deceleration never reached");
  out.detail = fmt::format("{} candidates, {} plan-B checks, min accel {}",
                           r.candidates_evaluated, r.plan_b_checks, min_a);
  return out;
}

// 6. Exhaustive planner against the brute-force oracle.
CriterionResult OracleEquivalence() {
  CriterionResult out;
  const std::vector<double> levels{-3.0, 0.0, 3.0};
  int found = 0;
  for (const auto& s : BuiltinScenarios()) {
    SamplingConfig cfg = s.sampling;
    cfg.exhaustive = true;
    cfg.jerk_levels = levels;
    cfg.dt = 1.6;
    cfg.horizon = 8.0;
    const TimedPlan t = TimePlan(s, cfg);
    CheckRuntime(out, t, s.name);
    const oracle::OracleResult best = oracle::ExhaustiveBest(s, {levels, 5, 1.6});
    const bool selected = t.result.outcome == Outcome::kSelected;
    Require(out, selected == best.found, s.name + ": outcome differs");
    if (selected && best.found) {
      ++found;
      Require(out, t.result.total_cost == best.cost, s.name + ": cost differs");
      Require(out, t.result.profile_indices == best.profile_indices,
              s.name + ": ensemble differs");
    }
  }
  out.detail += fmt::format("{} of 4 scenarios with a selection, all identical", found);
  return out;
}

// 7. Functional anchors and continuity for every built-in functional.
CriterionResult FunctionalAnchors() {
  CriterionResult out;
  std::vector<EvaluationFunctionalParams> all;
  for (const auto& s : BuiltinScenarios()) {
    for (const auto& v : s.vehicles) {
      all.insert(all.end(), {v.cost.v, v.cost.a_lon, v.cost.a_lat, v.cost.omega,
                             v.cost.offset, v.cost.tzc});
    }
  }
  const auto rel = [](double got, double want) {
    return std::abs(got - want) / std::max(std::abs(want), 1e-300);
  };
  const double eps = 1e-8;
  double worst_anchor = 0.0, worst_jump = 0.0;
  for (const auto& p : all) {
    Require(out, EvalFunctional(p, p.f_opt).Total() == 0.0, "G(f_opt) != 0");
    worst_anchor = std::max(worst_anchor,
                            rel(EvalFunctional(p, p.f_opt - p.cmargin_minus).comfort, p.t_comf));
    worst_anchor =
        std::max(worst_anchor, rel(EvalFunctional(p, p.f_inf_minus).infeasibility, p.t_inf));
    std::vector<double> bounds{p.f_opt, p.f_disc_minus, p.f_inf_minus + p.margin_minus,
                               p.f_inf_minus};
    if (p.upper_side) {
      worst_anchor = std::max(
          worst_anchor, rel(EvalFunctional(p, p.f_opt + p.cmargin_plus).comfort, p.t_comf));
      worst_anchor =
          std::max(worst_anchor, rel(EvalFunctional(p, p.f_inf_plus).infeasibility, p.t_inf));
      bounds.insert(bounds.end(), {p.f_disc_plus, p.f_inf_plus - p.margin_plus, p.f_inf_plus});
    }
    for (double b : bounds) {
      const double lo = EvalFunctional(p, b - eps).Total();
      const double hi = EvalFunctional(p, b + eps).Total();
      const double mid = EvalFunctional(p, b).Total();
      worst_jump = std::max(worst_jump, std::abs(lo - hi) / std::max(1.0, std::abs(mid)));
    }
  }
  Require(out, worst_anchor <= 1e-9, "anchor off");
  Require(out, worst_jump <= 1e-6, "discontinuity");
  out.detail = fmt::format("{} functionals, worst anchor error {:.2e}, worst jump {:.2e}",
                           all.size(), worst_anchor, worst_jump);
  return out;
}

std::shared_ptr<const Path> RandomPath(std::mt19937& rng, double angle) {
  std::uniform_real_distribution<double> bend(-0.4, 0.4), off(-3.0, 3.0);
  const double c = std::cos(angle), s = std::sin(angle);
  const double o = off(rng), b = bend(rng);
  std::vector<Vec2> pts;
  // Incoming leg towards the origin, then a bend.
  pts.push_back({-60.0 * c - o * s, -60.0 * s + o * c});
  pts.push_back({-o * s, o * c});
  pts.push_back({60.0 * std::cos(angle + b) - o * s, 60.0 * std::sin(angle + b) + o * c});
  return std::make_shared<const Path>(Path::Build(pts, 1.75, VehicleDims{}));
}

Trajectory RandomTrajectory(std::mt19937& rng, const std::shared_ptr<const Path>& path,
                            const ArcInterval& interval) {
  std::uniform_real_distribution<double> gap(-5.0, 40.0), speed(0.0, 12.0);
  std::uniform_int_distribution<int> pick(0, 4);
  const double levels[5] = {-6, -3, 0, 3, 6};
  const double entry = EffectiveInterval(interval, path->vehicle_length()).s_in;
  while (true) {
    std::vector<double> jerks;
    for (int k = 0; k < 32; ++k) jerks.push_back(levels[pick(rng)]);
    const double s0 = std::max(0.0, entry - gap(rng));
    VelocityProfile p = IntegrateJerkSequence({s0, speed(rng), 0.0}, jerks, 0.25, Limits{});
    if (p.states.back().s <= path->length()) return LiftToTrajectory(std::move(p), path);
  }
}

// 8. TZC sign against dense occupancy, and the closed form.
CriterionResult TzcProperties() {
  CriterionResult out;
  std::mt19937 rng(8);
  std::uniform_real_distribution<double> angle(0.5, 2.6);
  const auto far_a = std::make_shared<const Path>(Path::Build({{0, 0}, {100, 0}}, 1.75, {}));
  const auto far_b = std::make_shared<const Path>(Path::Build({{0, 30}, {100, 30}}, 1.75, {}));
  const CollisionZone none = ComputeCollisionZone(*far_a, *far_b);
  Require(out, none.empty, "far paths overlap");
  const Trajectory fa = RandomTrajectory(rng, far_a, {50, 55});
  const Trajectory fb = RandomTrajectory(rng, far_b, {50, 55});
  Require(out, Tzc(fa, fb, none) == kInf, "empty zone TZC not infinite");

  constexpr int kPathPairs = 100, kPerPair = 10;
  int mismatches = 0, overlapping = 0, pairs = 0;
  double worst_closed_form = 0.0;
  for (int p = 0; p < kPathPairs; ++p) {
    const auto a = RandomPath(rng, 0.0);
    const auto b = RandomPath(rng, angle(rng));
    const CollisionZone zone = ComputeCollisionZone(*a, *b);
    if (zone.empty) {
      --p;
      continue;
    }
    for (int q = 0; q < kPerPair; ++q) {
      const Trajectory ta = RandomTrajectory(rng, a, zone.interval_a);
      const Trajectory tb = RandomTrajectory(rng, b, zone.interval_b);
      const bool tzc_says = Tzc(ta, tb, zone) <= 0.0;
      const bool dense = oracle::DenseOccupancyCheck(ta, tb, zone, 1000);
      mismatches += tzc_says != dense ? 1 : 0;
      overlapping += dense ? 1 : 0;
      ++pairs;
    }
    // Constant speeds: a clears first, b still approaching.
    const ArcInterval ea = EffectiveInterval(zone.interval_a, 4.5);
    const ArcInterval eb = EffectiveInterval(zone.interval_b, 4.5);
    std::uniform_real_distribution<double> v(2.0, 14.0);
    const double va = v(rng), vb = v(rng);
    const double t_clear = 1.0;
    const double sa0 = ea.s_out - va * t_clear;
    const double lead = 3.0 + 10.0 * std::generate_canonical<double, 53>(rng);
    const double sb0 = eb.s_in - vb * t_clear - lead;
    if (sa0 < 0.0 || sb0 < 0.0 || ea.s_out + 8.0 * va > a->length() ||
        sb0 + 8.0 * vb > b->length()) {
      continue;
    }
    const auto cruise = [](std::shared_ptr<const Path> path, double s0, double speed) {
      return LiftToTrajectory(
          IntegrateJerkSequence({s0, speed, 0.0}, std::vector<double>(32, 0.0), 0.25, Limits{}),
          path);
    };
    const double got = Tzc(cruise(a, sa0, va), cruise(b, sb0, vb), zone);
    worst_closed_form = std::max(worst_closed_form, std::abs(got - lead / vb));
  }
  Require(out, mismatches == 0, fmt::format("{} sign mismatches", mismatches));
  Require(out, worst_closed_form <= 1e-9, "closed form off");
  Require(out, overlapping > 0 && overlapping < pairs, "degenerate sample");
  out.detail = fmt::format("{} pairs ({} overlapping), {} mismatches, closed-form error {:.1e} s",
                           pairs, overlapping, mismatches, worst_closed_form);
  return out;
}

// 9. Plan-B soundness against random bounded adversaries.

// Exact constant-acceleration motion with the speed held in [0, v_max].
void Advance(double& s, double& v, double a, double tau, double v_max) {
  while (tau > 0.0) {
    double limit = tau;
    if (a < 0.0 && v > 0.0) limit = std::min(limit, v / -a);
    if (a > 0.0 && v < v_max) limit = std::min(limit, (v_max - v) / a);
    const bool frozen = (a <= 0.0 && v <= 0.0) || (a >= 0.0 && v >= v_max);
    if (frozen) {
      s += v * tau;
      return;
    }
    s += v * limit + 0.5 * a * limit * limit;
    v += a * limit;
    if (limit == tau) return;
    v = a < 0.0 ? 0.0 : v_max;
    tau -= limit;
  }
}

struct Motion {
  std::vector<double> s;  // on the dense grid
};

struct Adversary {
  std::vector<double> accel;  // per piece
  double piece = 0.125;
};

Motion AdversaryMotion(const LongState& init, const Adversary& adv, const Limits& lim,
                       double step, std::size_t n, std::vector<LongState>& at_samples,
                       double sample_dt) {
  Motion m;
  m.s.resize(n + 1);
  double s = init.s, v = init.v, t = 0.0;
  std::size_t next_sample = 0;
  at_samples.clear();
  // Walk the union of dense points, sample points and piece boundaries.
  for (std::size_t k = 0; k <= n; ++k) {
    const double target = static_cast<double>(k) * step;
    while (t < target - 1e-12) {
      const std::size_t piece = static_cast<std::size_t>(std::floor(t / adv.piece + 1e-9));
      const double piece_end = static_cast<double>(piece + 1) * adv.piece;
      const double sample_t = static_cast<double>(next_sample) * sample_dt;
      double until = std::min(target, piece_end);
      if (sample_t > t + 1e-12) until = std::min(until, sample_t);
      Advance(s, v, adv.accel[std::min(piece, adv.accel.size() - 1)], until - t, lim.v_max);
      t = until;
      if (std::abs(t - static_cast<double>(next_sample) * sample_dt) < 1e-9) {
        at_samples.push_back({s, v, 0.0});
        ++next_sample;
      }
    }
    if (k == 0) {
      at_samples.push_back({s, v, 0.0});
      next_sample = 1;
    }
    m.s[k] = s;
  }
  return m;
}

bool DenseCollision(const Motion& a, const Motion& b, const ArcInterval& ea,
                    const ArcInterval& eb) {
  for (std::size_t k = 0; k < a.s.size(); ++k) {
    if (a.s[k] >= ea.s_in && a.s[k] <= ea.s_out && b.s[k] >= eb.s_in && b.s[k] <= eb.s_out) {
      return true;
    }
  }
  return false;
}

enum class Response { kFollow, kBrake, kEscape };

// Ego motion: follow the plan (linear between samples) until the response
// switches at a sample, then constant maximal braking or acceleration.
Motion EgoMotion(const Trajectory& plan, std::size_t switch_k, Response response,
                 const Limits& lim, double step, std::size_t n) {
  Motion m;
  m.s.resize(n + 1);
  const double t_switch = plan.profile.TimeAt(switch_k);
  const LongState& at = plan.state(std::min(switch_k, plan.size() - 1));
  for (std::size_t k = 0; k <= n; ++k) {
    const double t = static_cast<double>(k) * step;
    if (response == Response::kFollow || t <= t_switch) {
      m.s[k] = plan.profile.PositionAtTime(t);
      continue;
    }
    double s = at.s, v = at.v;
    Advance(s, v, response == Response::kBrake ? lim.a_min : lim.a_max, t - t_switch,
            lim.v_max);
    m.s[k] = s;
  }
  return m;
}

struct Decision {
  std::size_t k = 0;
  Response response = Response::kFollow;
};

// The prescribed response, decided at every sample from the other vehicle's
// observed state: keep the plan while the next planned state still leaves a
// way out, otherwise take the way out now.
Decision Respond(const Trajectory& plan, bool ego_first, const std::vector<LongState>& other,
                 const ArcInterval& ego_eff, const ArcInterval& other_eff, const Limits& el,
                 const Limits& ol, double planned_entry, double planned_exit) {
  for (std::size_t k = 0; k + 1 < plan.size(); ++k) {
    const double t = plan.profile.TimeAt(k);
    const LongState& e = plan.state(k);
    const LongState& next = plan.state(k + 1);
    const LongState& o = other[k];
    if (o.s > other_eff.s_out) return {};
    if (!ego_first) {
      if (e.s >= ego_eff.s_in) return {};
      if (envelope::StopPosition(o.s, o.v, ol.a_min) > other_eff.s_out) {
        const auto tau = envelope::BrakingTimeTo(o.s, o.v, ol.a_min, other_eff.s_out);
        if (tau && t + *tau < planned_entry) return {};
      }
      if (envelope::StopPosition(next.s, next.v, el.a_min) < ego_eff.s_in) continue;
      return {k, Response::kBrake};
    }
    if (e.s > ego_eff.s_out) return {};
    const double earliest =
        t + envelope::AcceleratingTimeTo(o.s, o.v, ol.a_max, ol.v_max, other_eff.s_in);
    if (planned_exit < earliest) return {};
    const double t1 = plan.profile.TimeAt(k + 1);
    if (t1 + envelope::AcceleratingTimeTo(next.s, next.v, el.a_max, el.v_max, ego_eff.s_out) <
        earliest) {
      continue;
    }
    if (next.s < ego_eff.s_in && envelope::StopPosition(next.s, next.v, el.a_min) < ego_eff.s_in) {
      continue;
    }
    if (t + envelope::AcceleratingTimeTo(e.s, e.v, el.a_max, el.v_max, ego_eff.s_out) < earliest) {
      return {k, Response::kEscape};
    }
    return {k, Response::kBrake};
  }
  return {};
}

CriterionResult PlanBSoundness() {
  CriterionResult out;
  std::mt19937 rng(99);
  const auto ego_path =
      std::make_shared<const Path>(Path::Build({{-300, 0}, {300, 0}}, 1.75, {}));
  const auto other_path =
      std::make_shared<const Path>(Path::Build({{0, -300}, {0, 300}}, 1.75, {}));
  const CollisionZone zone = ComputeCollisionZone(*ego_path, *other_path);
  const ArcInterval ego_eff = EffectiveInterval(zone.interval_a, 4.5);
  const ArcInterval other_eff = EffectiveInterval(zone.interval_b, 4.5);
  const Limits lim;
  constexpr int kInstances = 1000, kAdversaries = 1000;
  constexpr double kStep = 0.01;
  const std::size_t n = static_cast<std::size_t>(std::llround(8.0 / kStep));

  std::uniform_real_distribution<double> accel(lim.a_min, lim.a_max);
  std::uniform_int_distribution<int> style(0, 3);
  int instances = 0, ego_first_count = 0, collisions = 0, braked = 0, escaped = 0;
  std::vector<LongState> samples;
  while (instances < kInstances) {
    const Trajectory ego = RandomTrajectory(rng, ego_path, zone.interval_a);
    const Trajectory other = RandomTrajectory(rng, other_path, zone.interval_b);
    if (Collides(ego, other, zone)) continue;
    if (!CheckPlanB(ego, other, zone, lim, lim).valid) continue;
    const auto occ_e = ComputeOccupancy(ego.profile, zone.interval_a, 4.5);
    const auto occ_o = ComputeOccupancy(other.profile, zone.interval_b, 4.5);
    if (occ_e.passed || occ_o.passed || !(occ_e.enters || occ_o.enters)) continue;
    const bool ego_first = occ_e.enters && occ_e.t_in < (occ_o.enters ? occ_o.t_in : kInf);
    ++instances;
    ego_first_count += ego_first ? 1 : 0;
    const double planned_entry = occ_e.enters ? occ_e.t_in : kInf;
    const double planned_exit = occ_e.t_out;
    for (int q = 0; q < kAdversaries; ++q) {
      Adversary adv;
      adv.accel.resize(64);
      const int kind = style(rng);
      for (auto& a : adv.accel) {
        a = kind == 0 ? lim.a_min : kind == 1 ? lim.a_max : accel(rng);
      }
      if (kind == 3) {
        // Follow the plan for a while, then deviate to an extreme.
        const std::size_t from = std::uniform_int_distribution<std::size_t>(0, 63)(rng);
        for (std::size_t i = 0; i < from; ++i) {
          const std::size_t k = std::min<std::size_t>(i / 2, other.size() - 1);
          adv.accel[i] = std::clamp(other.state(k).a, lim.a_min, lim.a_max);
        }
        const double extreme = std::uniform_int_distribution<int>(0, 1)(rng) ? lim.a_min : lim.a_max;
        for (std::size_t i = from; i < 64; ++i) adv.accel[i] = extreme;
      }
      const Motion om = AdversaryMotion(other.state(0), adv, lim, kStep, n, samples, ego.dt());
      const Decision d = Respond(ego, ego_first, samples, ego_eff, other_eff, lim, lim,
                                 planned_entry, planned_exit);
      braked += d.response == Response::kBrake ? 1 : 0;
      escaped += d.response == Response::kEscape ? 1 : 0;
      const Motion em = EgoMotion(ego, d.k, d.response, lim, kStep, n);
      if (DenseCollision(em, om, ego_eff, other_eff)) ++collisions;
    }
  }
  Require(out, collisions == 0, fmt::format("{} collisions", collisions));
  out.detail = fmt::format(
      "{} instances ({} ego first) x {} adversaries, {} collisions; responses: {} brake, "
      "{} escape",
      instances, ego_first_count, kAdversaries, collisions, braked, escaped);
  return out;
}

// 10. Byte-identical reports for identical runs.
CriterionResult Determinism() {
  CriterionResult out;
  namespace fs = std::filesystem;
  const fs::path root = fs::temp_directory_path() / "coop_acceptance";
  fs::remove_all(root);
  const auto read = [](const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  };
  std::size_t files = 0;
  for (const auto& s : BuiltinScenarios()) {
    std::vector<std::string> runs[2];
    for (int run = 0; run < 2; ++run) {
      const TimedPlan t = TimePlan(s);
      CheckRuntime(out, t, s.name);
      const RunReport report = MakeReport(s, s.sampling, t.result);
      for (const auto& p : ExportReport(report, root / std::to_string(run), ReportFormat::kBoth)) {
        runs[run].push_back(read(p));
      }
    }
    Require(out, runs[0].size() == 2 && runs[0] == runs[1], s.name + " reports differ");
    files += runs[0].size();
  }
  out.detail = fmt::format("{} report files identical across two runs", files);
  return out;
}

}  // namespace
}  // namespace coop

int main() {
  using coop::CriterionResult;
  const std::vector<std::pair<std::string, std::function<CriterionResult()>>> criteria{
      {"right of way not interfered", coop::RightOfWayNonInterference},
      {"closer vehicle passes first", coop::UnsignedNarrowingOrder},
      {"sign flips the passing order", coop::SignOverrulesOrder},
      {"infeasibility overrules regulation", coop::InfeasibilityOverrulesRegulation},
      {"emergency brake fallback", coop::EmergencyFallback},
      {"exhaustive planner matches oracle", coop::OracleEquivalence},
      {"cost functional anchors", coop::FunctionalAnchors},
      {"TZC properties", coop::TzcProperties},
      {"plan-B soundness", coop::PlanBSoundness},
      {"deterministic reports", coop::Determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    CriterionResult o;
    const auto start = std::chrono::steady_clock::now();
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s criterion %zu: %s (%s) [%.1f s]\n", o.pass ? "PASS" : "FAIL", i + 1,
                criteria[i].first.c_str(), o.detail.c_str(), secs);
    std::fflush(stdout);
    failed += o.pass ? 0 : 1;
  }
  return failed == 0 ? 0 : 1;
}
