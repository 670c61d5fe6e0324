#include "coop/scenario_io.h"

#include <cmath>
#include <fstream>
#include <initializer_list>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "coop/errors.h"

namespace coop {
namespace {

using nlohmann::json;
using nlohmann::ordered_json;

constexpr double kInf = std::numeric_limits<double>::infinity();

[[noreturn]] void ParseError(const std::string& path, const std::string& what) {
  throw Error(ErrorCode::kParse, path + ": " + what);
}

std::string Join(const std::string& path, const std::string& key) {
  return path.empty() ? key : path + "." + key;
}

std::string Index(const std::string& path, std::size_t i) {
  return path + "[" + std::to_string(i) + "]";
}

void ExpectObject(const json& j, const std::string& path) {
  if (!j.is_object()) ParseError(path, "expected an object");
}

void CheckKeys(const json& j, const std::string& path,
               std::initializer_list<const char*> allowed) {
  for (const auto& [key, value] : j.items()) {
    bool known = false;
    for (const char* a : allowed) known = known || key == a;
    if (!known) ParseError(Join(path, key), "unknown field");
  }
}

const json& Require(const json& obj, const char* key, const std::string& path) {
  auto it = obj.find(key);
  if (it == obj.end()) ParseError(Join(path, key), "missing required field");
  return *it;
}

double Number(const json& j, const std::string& path) {
  if (!j.is_number()) ParseError(path, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) ParseError(path, "expected a finite number");
  return v;
}

void ReadNumber(const json& obj, const char* key, const std::string& path, double& out) {
  auto it = obj.find(key);
  if (it != obj.end()) out = Number(*it, Join(path, key));
}

std::string String(const json& j, const std::string& path) {
  if (!j.is_string()) ParseError(path, "expected a string");
  return j.get<std::string>();
}

bool Bool(const json& j, const std::string& path) {
  if (!j.is_boolean()) ParseError(path, "expected a boolean");
  return j.get<bool>();
}

std::uint64_t Unsigned(const json& j, const std::string& path) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<std::int64_t>() >= 0)) {
    ParseError(path, "expected a non-negative integer");
  }
  return j.get<std::uint64_t>();
}

const json& Array(const json& j, const std::string& path) {
  if (!j.is_array()) ParseError(path, "expected an array");
  return j;
}

EvaluationFunctionalParams ReadFunctional(const json& j, const std::string& path,
                                          EvaluationFunctionalParams p) {
  ExpectObject(j, path);
  CheckKeys(j, path,
            {"f_opt", "f_disc_plus", "f_disc_minus", "f_inf_plus", "f_inf_minus",
             "margin_plus", "margin_minus", "cmargin_plus", "cmargin_minus", "t_comf",
             "t_inf", "b_plus", "b_minus", "upper_side"});
  ReadNumber(j, "f_opt", path, p.f_opt);
  ReadNumber(j, "f_disc_minus", path, p.f_disc_minus);
  ReadNumber(j, "f_inf_minus", path, p.f_inf_minus);
  ReadNumber(j, "margin_minus", path, p.margin_minus);
  ReadNumber(j, "cmargin_minus", path, p.cmargin_minus);
  ReadNumber(j, "t_comf", path, p.t_comf);
  ReadNumber(j, "t_inf", path, p.t_inf);
  ReadNumber(j, "b_minus", path, p.b_minus);
  if (auto it = j.find("upper_side"); it != j.end()) {
    p.upper_side = Bool(*it, Join(path, "upper_side"));
  }
  if (p.upper_side) {
    ReadNumber(j, "f_disc_plus", path, p.f_disc_plus);
    ReadNumber(j, "f_inf_plus", path, p.f_inf_plus);
    ReadNumber(j, "margin_plus", path, p.margin_plus);
    ReadNumber(j, "cmargin_plus", path, p.cmargin_plus);
    ReadNumber(j, "b_plus", path, p.b_plus);
  } else {
    p.f_disc_plus = kInf;
    p.f_inf_plus = kInf;
    p.margin_plus = p.margin_minus;
    p.cmargin_plus = p.cmargin_minus;
    p.b_plus = 0.0;
  }
  try {
    p.Finalize();
  } catch (const Error& e) {
    throw Error(ErrorCode::kValidation, path + ": " + e.what());
  }
  return p;
}

VehicleCostParams ReadCost(const json& j, const std::string& path, VehicleCostParams p) {
  ExpectObject(j, path);
  CheckKeys(j, path, {"v", "a_lon", "a_lat", "omega", "offset", "tzc", "row_factor"});
  struct Slot {
    const char* key;
    EvaluationFunctionalParams* target;
  };
  for (Slot s : {Slot{"v", &p.v}, Slot{"a_lon", &p.a_lon}, Slot{"a_lat", &p.a_lat},
                 Slot{"omega", &p.omega}, Slot{"offset", &p.offset},
                 Slot{"tzc", &p.tzc}}) {
    if (auto it = j.find(s.key); it != j.end()) {
      *s.target = ReadFunctional(*it, Join(path, s.key), *s.target);
    }
  }
  ReadNumber(j, "row_factor", path, p.row_factor);
  return p;
}

std::shared_ptr<const Path> ReadPath(const json& j, const std::string& path) {
  ExpectObject(j, path);
  CheckKeys(j, path, {"waypoints", "corridor_halfwidth", "vehicle_length", "vehicle_width"});
  const std::string wp_path = Join(path, "waypoints");
  const json& wps = Array(Require(j, "waypoints", path), wp_path);
  std::vector<Vec2> waypoints;
  for (std::size_t i = 0; i < wps.size(); ++i) {
    const std::string p = Index(wp_path, i);
    if (!wps[i].is_array() || wps[i].size() != 2) ParseError(p, "expected [x, y]");
    waypoints.push_back({Number(wps[i][0], p + "[0]"), Number(wps[i][1], p + "[1]")});
  }
  VehicleDims dims;
  double halfwidth = 1.75;
  ReadNumber(j, "corridor_halfwidth", path, halfwidth);
  ReadNumber(j, "vehicle_length", path, dims.length);
  ReadNumber(j, "vehicle_width", path, dims.width);
  try {
    return std::make_shared<const Path>(Path::Build(std::move(waypoints), halfwidth, dims));
  } catch (const Error& e) {
    throw Error(ErrorCode::kValidation, path + ": " + e.what());
  }
}

VehicleSpec ReadVehicle(const json& j, const std::string& path, double speed_limit) {
  ExpectObject(j, path);
  CheckKeys(j, path, {"id", "path", "initial", "limits", "desired_speed", "cost"});
  VehicleSpec v;
  v.id = String(Require(j, "id", path), Join(path, "id"));
  v.path = ReadPath(Require(j, "path", path), Join(path, "path"));

  const std::string init_path = Join(path, "initial");
  const json& init = Require(j, "initial", path);
  ExpectObject(init, init_path);
  CheckKeys(init, init_path, {"s", "v", "a"});
  v.initial.s = Number(Require(init, "s", init_path), Join(init_path, "s"));
  v.initial.v = Number(Require(init, "v", init_path), Join(init_path, "v"));
  ReadNumber(init, "a", init_path, v.initial.a);

  if (auto it = j.find("limits"); it != j.end()) {
    const std::string lp = Join(path, "limits");
    ExpectObject(*it, lp);
    CheckKeys(*it, lp, {"v_max", "a_min", "a_max", "j_min", "j_max"});
    ReadNumber(*it, "v_max", lp, v.limits.v_max);
    ReadNumber(*it, "a_min", lp, v.limits.a_min);
    ReadNumber(*it, "a_max", lp, v.limits.a_max);
    ReadNumber(*it, "j_min", lp, v.limits.j_min);
    ReadNumber(*it, "j_max", lp, v.limits.j_max);
  }

  double desired = speed_limit;
  ReadNumber(j, "desired_speed", path, desired);
  VehicleCostParams cost;
  try {
    cost = DefaultVehicleCostParams(desired, speed_limit);
  } catch (const Error& e) {
    throw Error(ErrorCode::kValidation, Join(path, "desired_speed") + ": " + e.what());
  }
  if (auto it = j.find("cost"); it != j.end()) {
    cost = ReadCost(*it, Join(path, "cost"), cost);
  }
  v.cost = cost;
  return v;
}

SamplingConfig ReadSampling(const json& j, const std::string& path) {
  ExpectObject(j, path);
  CheckKeys(j, path,
            {"seed", "profiles_per_vehicle", "jerk_levels", "dt", "horizon", "exhaustive"});
  SamplingConfig c;
  if (auto it = j.find("seed"); it != j.end()) c.seed = Unsigned(*it, Join(path, "seed"));
  if (auto it = j.find("profiles_per_vehicle"); it != j.end()) {
    c.profiles_per_vehicle = Unsigned(*it, Join(path, "profiles_per_vehicle"));
  }
  if (auto it = j.find("jerk_levels"); it != j.end()) {
    const std::string lp = Join(path, "jerk_levels");
    c.jerk_levels.clear();
    const json& levels = Array(*it, lp);
    for (std::size_t i = 0; i < levels.size(); ++i) {
      c.jerk_levels.push_back(Number(levels[i], Index(lp, i)));
    }
  }
  ReadNumber(j, "dt", path, c.dt);
  ReadNumber(j, "horizon", path, c.horizon);
  if (auto it = j.find("exhaustive"); it != j.end()) {
    c.exhaustive = Bool(*it, Join(path, "exhaustive"));
  }
  return c;
}

ordered_json WriteFunctional(const EvaluationFunctionalParams& p) {
  ordered_json j;
  j["f_opt"] = p.f_opt;
  j["cmargin_minus"] = p.cmargin_minus;
  j["f_disc_minus"] = p.f_disc_minus;
  j["f_inf_minus"] = p.f_inf_minus;
  j["margin_minus"] = p.margin_minus;
  j["b_minus"] = p.b_minus;
  j["upper_side"] = p.upper_side;
  if (p.upper_side) {
    j["cmargin_plus"] = p.cmargin_plus;
    j["f_disc_plus"] = p.f_disc_plus;
    j["f_inf_plus"] = p.f_inf_plus;
    j["margin_plus"] = p.margin_plus;
    j["b_plus"] = p.b_plus;
  }
  j["t_comf"] = p.t_comf;
  j["t_inf"] = p.t_inf;
  return j;
}

ordered_json WriteVehicle(const VehicleSpec& v) {
  ordered_json j;
  j["id"] = v.id;
  ordered_json path;
  path["waypoints"] = ordered_json::array();
  for (const Vec2& p : v.path->waypoints()) path["waypoints"].push_back({p.x, p.y});
  path["corridor_halfwidth"] = v.path->corridor_halfwidth();
  path["vehicle_length"] = v.path->vehicle_length();
  path["vehicle_width"] = v.path->vehicle_width();
  j["path"] = path;
  j["initial"] = {{"s", v.initial.s}, {"v", v.initial.v}, {"a", v.initial.a}};
  j["limits"] = {{"v_max", v.limits.v_max}, {"a_min", v.limits.a_min},
                 {"a_max", v.limits.a_max}, {"j_min", v.limits.j_min},
                 {"j_max", v.limits.j_max}};
  ordered_json cost;
  cost["v"] = WriteFunctional(v.cost.v);
  cost["a_lon"] = WriteFunctional(v.cost.a_lon);
  cost["a_lat"] = WriteFunctional(v.cost.a_lat);
  cost["omega"] = WriteFunctional(v.cost.omega);
  cost["offset"] = WriteFunctional(v.cost.offset);
  cost["tzc"] = WriteFunctional(v.cost.tzc);
  cost["row_factor"] = v.cost.row_factor;
  j["cost"] = cost;
  return j;
}

}  // namespace

Scenario LoadScenario(std::string_view document) {
  json root;
  try {
    root = json::parse(document);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::kParse, std::string("document: ") + e.what());
  }
  ExpectObject(root, "document");
  CheckKeys(root, "",
            {"name", "speed_limit", "ego", "right_of_way", "sampling", "plan_b", "vehicles"});
  Scenario s;
  if (auto it = root.find("name"); it != root.end()) s.name = String(*it, "name");
  ReadNumber(root, "speed_limit", "", s.speed_limit);
  if (!(s.speed_limit > 0.0)) throw Error(ErrorCode::kValidation, "speed_limit must be positive");

  const json& vehicles = Array(Require(root, "vehicles", ""), "vehicles");
  for (std::size_t i = 0; i < vehicles.size(); ++i) {
    s.vehicles.push_back(ReadVehicle(vehicles[i], Index("vehicles", i), s.speed_limit));
  }
  if (auto it = root.find("ego"); it != root.end()) {
    s.ego_id = String(*it, "ego");
  } else if (!s.vehicles.empty()) {
    s.ego_id = s.vehicles.front().id;
  }
  if (auto it = root.find("right_of_way"); it != root.end()) {
    const json& pairs = Array(*it, "right_of_way");
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      const std::string p = Index("right_of_way", i);
      if (!pairs[i].is_array() || pairs[i].size() != 2) {
        ParseError(p, "expected [priority_id, yielding_id]");
      }
      s.right_of_way.push_back({String(pairs[i][0], p + "[0]"), String(pairs[i][1], p + "[1]")});
    }
  }
  if (auto it = root.find("sampling"); it != root.end()) {
    s.sampling = ReadSampling(*it, "sampling");
  }
  if (auto it = root.find("plan_b"); it != root.end()) {
    ExpectObject(*it, "plan_b");
    CheckKeys(*it, "plan_b", {"reaction_delay"});
    ReadNumber(*it, "reaction_delay", "plan_b", s.plan_b.reaction_delay);
  }
  s.Validate();
  return s;
}

Scenario LoadScenarioFile(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot read '" + file.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw Error(ErrorCode::kIo, "error reading '" + file.string() + "'");
  return LoadScenario(buf.str());
}

std::string SerializeScenario(const Scenario& scenario) {
  ordered_json root;
  root["name"] = scenario.name;
  root["speed_limit"] = scenario.speed_limit;
  root["ego"] = scenario.ego_id;
  root["right_of_way"] = ordered_json::array();
  for (const RightOfWay& r : scenario.right_of_way) {
    root["right_of_way"].push_back({r.priority, r.yielding});
  }
  const SamplingConfig& c = scenario.sampling;
  ordered_json sampling;
  sampling["seed"] = c.seed;
  sampling["profiles_per_vehicle"] = c.profiles_per_vehicle;
  sampling["jerk_levels"] = c.jerk_levels;
  sampling["dt"] = c.dt;
  sampling["horizon"] = c.horizon;
  sampling["exhaustive"] = c.exhaustive;
  root["sampling"] = sampling;
  root["plan_b"] = {{"reaction_delay", scenario.plan_b.reaction_delay}};
  root["vehicles"] = ordered_json::array();
  for (const VehicleSpec& v : scenario.vehicles) root["vehicles"].push_back(WriteVehicle(v));
  return root.dump(2) + "\n";
}

}  // namespace coop
