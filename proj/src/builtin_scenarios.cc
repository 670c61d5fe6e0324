#include "coop/builtin_scenarios.h"

#include <cmath>
#include <numbers>

#include "coop/errors.h"

namespace coop {
namespace {

constexpr double kLane = 1.75;
constexpr double kTurnRadius = 15.0;
constexpr double kReach = 150.0;
constexpr double kNarrowHalf = 2.0;    // half length of the narrow section
constexpr double kTaper = 15.0;
constexpr double kNarrowLane = 0.85;   // lane offset inside the narrow section
// Strong enough that a signposted right of way outweighs the comfort gain of
// the natural passing order.
constexpr double kRowFactor = 50.0;

std::shared_ptr<const Path> MakePath(std::vector<Vec2> points) {
  return std::make_shared<const Path>(Path::Build(std::move(points), kLane, VehicleDims{}));
}

std::vector<Vec2> LowerLane() { return {{-kReach, -kLane}, {kReach, -kLane}}; }

std::vector<Vec2> LeftTurn() {
  const Vec2 center{kLane + kTurnRadius - 2.0 * kLane, kLane - kTurnRadius};
  std::vector<Vec2> pts{{kReach, kLane}};
  constexpr int kArcSteps = 90;
  for (int k = 0; k <= kArcSteps; ++k) {
    const double phi = std::numbers::pi / 2.0 + std::numbers::pi / 2.0 * k / kArcSteps;
    pts.push_back({center.x + kTurnRadius * std::cos(phi),
                   center.y + kTurnRadius * std::sin(phi)});
  }
  pts.push_back({-kLane, -kReach});
  return pts;
}

/// Lane offset blend: 1 on the open road, 0 in the narrow section.
double Taper(double x) {
  const double d = std::abs(x) - kNarrowHalf;
  if (d <= 0.0) return 0.0;
  if (d >= kTaper) return 1.0;
  return 0.5 * (1.0 - std::cos(std::numbers::pi * d / kTaper));
}

std::vector<Vec2> NarrowingLane(double side, bool eastbound) {
  std::vector<double> xs{-kReach};
  constexpr double kStep = 0.5;
  const double outer = kNarrowHalf + kTaper;
  for (double x = -outer; x <= outer + 1e-9; x += kStep) xs.push_back(x);
  xs.push_back(kReach);
  std::vector<Vec2> pts;
  for (double x : xs) {
    pts.push_back({x, side * (kNarrowLane + (kLane - kNarrowLane) * Taper(x))});
  }
  if (!eastbound) {
    std::vector<Vec2> reversed(pts.rbegin(), pts.rend());
    return reversed;
  }
  return pts;
}

VehicleSpec MakeVehicle(const std::string& id, std::shared_ptr<const Path> path,
                        const ArcInterval& zone, double gap, double speed,
                        double desired_speed, double speed_limit) {
  VehicleSpec v;
  v.id = id;
  const double entry = EffectiveInterval(zone, path->vehicle_length()).s_in;
  if (gap < 0.0 || gap > entry) {
    throw Error(ErrorCode::kInvalidInput, "start gap of '" + id + "' outside the path");
  }
  v.initial = {entry - gap, speed, 0.0};
  v.path = std::move(path);
  v.cost = DefaultVehicleCostParams(desired_speed, speed_limit);
  v.cost.row_factor = kRowFactor;
  return v;
}

void AddPriority(Scenario& s, Priority p, const std::string& first,
                 const std::string& second) {
  if (p == Priority::kFirst) s.right_of_way.push_back({first, second});
  if (p == Priority::kSecond) s.right_of_way.push_back({second, first});
}

}  // namespace

Scenario MakeTJunction(const std::string& name, const TJunctionSetup& setup) {
  auto lower = MakePath(LowerLane());
  auto upper = MakePath(LeftTurn());
  const CollisionZone zone = ComputeCollisionZone(*lower, *upper);
  Scenario s;
  s.name = name;
  s.speed_limit = setup.speed_limit;
  s.ego_id = setup.ego;
  s.vehicles.push_back(MakeVehicle("lower", lower, zone.interval_a, setup.lower_gap,
                                   setup.lower_speed, setup.speed_limit,
                                   setup.speed_limit));
  s.vehicles.push_back(MakeVehicle("upper", upper, zone.interval_b, setup.upper_gap,
                                   setup.upper_speed, setup.upper_desired_speed,
                                   setup.speed_limit));
  AddPriority(s, setup.priority, "lower", "upper");
  s.Validate();
  return s;
}

Scenario MakeNarrowing(const std::string& name, const NarrowingSetup& setup) {
  auto left = MakePath(NarrowingLane(-1.0, true));
  auto right = MakePath(NarrowingLane(1.0, false));
  const CollisionZone zone = ComputeCollisionZone(*left, *right);
  Scenario s;
  s.name = name;
  s.speed_limit = setup.speed_limit;
  s.ego_id = setup.ego;
  s.vehicles.push_back(MakeVehicle("left", left, zone.interval_a, setup.left_gap,
                                   setup.left_speed, setup.speed_limit,
                                   setup.speed_limit));
  s.vehicles.push_back(MakeVehicle("right", right, zone.interval_b, setup.right_gap,
                                   setup.right_speed, setup.speed_limit,
                                   setup.speed_limit));
  AddPriority(s, setup.priority, "left", "right");
  s.Validate();
  return s;
}

std::vector<std::string> BuiltinNames() {
  return {"t_junction_unsigned", "t_junction_row", "narrowing_unsigned", "narrowing_row"};
}

bool IsBuiltin(const std::string& name) {
  for (const auto& n : BuiltinNames()) {
    if (n == name) return true;
  }
  return name == "t_junction_row_upper" || name == "t_junction_row_lower";
}

Scenario BuiltinScenario(const std::string& name) {
  // The ego is the vehicle expected to give way; its plan B then guards the
  // gap it leaves to the other vehicle.
  if (name == "t_junction_unsigned" || name == "t_junction_row_lower") {
    // Without signs the oncoming straight-ahead vehicle goes before the left turn.
    TJunctionSetup setup;
    setup.priority = Priority::kFirst;
    setup.ego = "upper";
    return MakeTJunction(name, setup);
  }
  if (name == "t_junction_row" || name == "t_junction_row_upper") {
    TJunctionSetup setup;
    setup.priority = Priority::kSecond;
    setup.ego = "lower";
    return MakeTJunction(name, setup);
  }
  if (name == "narrowing_unsigned") {
    NarrowingSetup setup;
    setup.ego = "left";
    return MakeNarrowing(name, setup);
  }
  if (name == "narrowing_row") {
    NarrowingSetup setup;
    setup.priority = Priority::kFirst;
    setup.ego = "right";
    return MakeNarrowing(name, setup);
  }
  throw Error(ErrorCode::kInvalidInput, "unknown built-in scenario '" + name + "'");
}

std::vector<Scenario> BuiltinScenarios() {
  std::vector<Scenario> out;
  for (const auto& n : BuiltinNames()) out.push_back(BuiltinScenario(n));
  return out;
}

}  // namespace coop
