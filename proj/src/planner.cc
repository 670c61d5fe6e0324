#include "coop/planner.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <thread>

#include "coop/errors.h"

namespace coop {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr std::uint64_t kMaxExhaustiveProfiles = 10'000'000;

std::uint64_t SplitMix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::uint64_t Fnv1a(const std::string& text) {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001B3ULL;
  }
  return h;
}

bool EntryLess(const EnsembleRanking::Entry& a, const EnsembleRanking::Entry& b) {
  if (a.cost != b.cost) return a.cost < b.cost;
  return a.linear < b.linear;
}

/// Per-vehicle data the inner enumeration loop reads.
struct VehicleCache {
  std::vector<CostBreakdown> singleton;
  /// occupancy[j][k]: candidate k against vehicle j's zone.
  std::vector<std::vector<ZoneOccupancy>> occupancy;
};

struct PairRef {
  std::size_t i;
  std::size_t j;
};

}  // namespace

std::uint64_t VehicleStreamSeed(std::uint64_t seed, const std::string& vehicle_id) {
  return SplitMix64(seed ^ SplitMix64(Fnv1a(vehicle_id)));
}

std::vector<std::vector<double>> SampleJerkSequences(const SamplingConfig& config,
                                                     std::uint64_t stream_seed) {
  config.Validate();
  const std::size_t steps = config.Steps();
  const std::size_t levels = config.jerk_levels.size();
  std::vector<std::vector<double>> out;
  if (config.exhaustive) {
    const double count = std::pow(static_cast<double>(levels), static_cast<double>(steps));
    if (count > static_cast<double>(kMaxExhaustiveProfiles)) {
      throw Error(ErrorCode::kIntractable,
                  "exhaustive sampling would produce too many profiles");
    }
    const auto total = static_cast<std::size_t>(std::llround(count));
    out.reserve(total);
    std::vector<std::size_t> digits(steps, 0);
    for (std::size_t n = 0; n < total; ++n) {
      std::vector<double> seq(steps);
      for (std::size_t k = 0; k < steps; ++k) seq[k] = config.jerk_levels[digits[k]];
      out.push_back(std::move(seq));
      for (std::size_t k = steps; k-- > 0;) {
        if (++digits[k] < levels) break;
        digits[k] = 0;
      }
    }
    return out;
  }
  std::mt19937_64 rng(stream_seed);
  out.reserve(config.profiles_per_vehicle);
  for (std::size_t n = 0; n < config.profiles_per_vehicle; ++n) {
    std::vector<double> seq(steps);
    // Modulo keeps the draw sequence identical across standard libraries.
    for (double& j : seq) j = config.jerk_levels[rng() % levels];
    out.push_back(std::move(seq));
  }
  return out;
}

std::vector<VelocityProfile> SampleProfiles(const LongState& initial,
                                            const SamplingConfig& config,
                                            const Limits& limits,
                                            std::uint64_t stream_seed) {
  std::vector<VelocityProfile> out;
  for (const auto& seq : SampleJerkSequences(config, stream_seed)) {
    out.push_back(IntegrateJerkSequence(initial, seq, config.dt, limits));
  }
  return out;
}

CandidateSet BuildCandidates(const Scenario& scenario, std::size_t vehicle,
                             const SamplingConfig& config,
                             const std::vector<std::vector<CollisionZone>>& zones) {
  const VehicleSpec& spec = scenario.vehicles[vehicle];
  const auto profiles = SampleProfiles(spec.initial, config, spec.limits,
                                       VehicleStreamSeed(config.seed, spec.id));
  CandidateSet set;
  set.sampled = profiles.size();
  for (std::size_t k = 0; k < profiles.size(); ++k) {
    if (profiles[k].states.back().s > spec.path->length()) {
      ++set.overrun;
      continue;
    }
    Trajectory traj = LiftToTrajectory(profiles[k], spec.path);
    bool keep = true;
    for (std::size_t j = 0; j < zones.size() && keep; ++j) {
      if (j == vehicle || zones[vehicle][j].empty) continue;
      keep = ReachesZoneEnd(traj, zones[vehicle][j].interval_a);
    }
    if (!keep) continue;
    set.trajectories.push_back(std::move(traj));
    set.profile_index.push_back(k);
  }
  return set;
}

std::vector<std::size_t> EnsembleRanking::Members(std::uint64_t linear) const {
  std::vector<std::size_t> members(dims.size());
  for (std::size_t i = dims.size(); i-- > 0;) {
    members[i] = static_cast<std::size_t>(linear % dims[i]);
    linear /= dims[i];
  }
  return members;
}

EnsembleRanking EnumerateEnsembles(const std::vector<CandidateSet>& candidates,
                                   const CostContext& context,
                                   double infeasibility_threshold,
                                   const EnumerationOptions& options) {
  const std::size_t n = candidates.size();
  EnsembleRanking ranking;
  ranking.product_size = 1;
  for (const CandidateSet& c : candidates) {
    ranking.dims.push_back(c.trajectories.size());
    if (c.trajectories.empty()) {
      ranking.product_size = 0;
      break;
    }
    if (ranking.product_size > kMaxEnsembles / c.trajectories.size()) {
      throw Error(ErrorCode::kIntractable, "ensemble product too large to enumerate");
    }
    ranking.product_size *= c.trajectories.size();
  }
  if (ranking.product_size == 0) return ranking;

  std::vector<VehicleCache> cache(n);
  std::vector<PairRef> pairs;
  for (std::size_t i = 0; i < n; ++i) {
    const CandidateSet& set = candidates[i];
    cache[i].occupancy.resize(n);
    for (const Trajectory& t : set.trajectories) {
      cache[i].singleton.push_back(SingletonCost(t, context.params[i]));
    }
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j || context.zones[i][j].empty) continue;
      for (const Trajectory& t : set.trajectories) {
        cache[i].occupancy[j].push_back(ComputeOccupancy(
            t.profile, context.zones[i][j].interval_a, t.path->vehicle_length()));
      }
      if (i < j) pairs.push_back({i, j});
    }
  }

  std::size_t threads = options.threads != 0 ? options.threads
                                             : std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<std::size_t>(threads, ranking.dims[0]);

  struct Partial {
    std::vector<EnsembleRanking::Entry> entries;
    std::uint64_t colliding = 0;
    std::uint64_t infeasible = 0;
  };
  std::vector<Partial> partials(threads);
  const std::uint64_t stride = ranking.product_size / ranking.dims[0];

  auto worker = [&](std::size_t w) {
    Partial& out = partials[w];
    const std::size_t first_begin = ranking.dims[0] * w / threads;
    const std::size_t first_end = ranking.dims[0] * (w + 1) / threads;
    std::vector<std::size_t> idx(n, 0);
    std::vector<CostBreakdown> singleton(n);
    std::vector<CostBreakdown> per_vehicle(n);
    std::vector<double> tzc(n * n, kInf);
    const std::uint64_t begin = first_begin * stride;
    const std::uint64_t end = first_end * stride;
    idx[0] = first_begin;
    for (std::uint64_t linear = begin; linear < end; ++linear) {
      bool collides = false;
      for (const PairRef& p : pairs) {
        const ZoneOccupancy& oi = cache[p.i].occupancy[p.j][idx[p.i]];
        const ZoneOccupancy& oj = cache[p.j].occupancy[p.i][idx[p.j]];
        if (OccupancyOverlaps(oi, oj)) {
          collides = true;
          break;
        }
        const double value =
            TzcFromOccupancy(oi, candidates[p.i].trajectories[idx[p.i]].profile, oj,
                             candidates[p.j].trajectories[idx[p.j]].profile);
        tzc[p.i * n + p.j] = value;
        tzc[p.j * n + p.i] = value;
      }
      if (collides) {
        ++out.colliding;
      } else {
        for (std::size_t i = 0; i < n; ++i) singleton[i] = cache[i].singleton[idx[i]];
        const double total = AssembleEnsembleCost(singleton, tzc, context, per_vehicle);
        if (total >= infeasibility_threshold) {
          ++out.infeasible;
        } else {
          out.entries.push_back({total, linear});
        }
      }
      for (std::size_t i = n; i-- > 0;) {
        if (++idx[i] < ranking.dims[i]) break;
        idx[i] = 0;
      }
    }
  };

  if (threads <= 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < threads; ++w) pool.emplace_back(worker, w);
    for (auto& t : pool) t.join();
  }

  for (Partial& p : partials) {
    ranking.colliding += p.colliding;
    ranking.infeasible += p.infeasible;
    ranking.entries.insert(ranking.entries.end(), p.entries.begin(), p.entries.end());
  }
  std::sort(ranking.entries.begin(), ranking.entries.end(), EntryLess);
  return ranking;
}

const char* OutcomeName(Outcome outcome) {
  return outcome == Outcome::kSelected ? "selected" : "emergency_brake";
}

PlanResult Plan(const Scenario& scenario, const SamplingConfig& config,
                const PlannerOptions& options) {
  scenario.Validate();
  try {
    config.Validate();
  } catch (const Error& e) {
    throw Error(ErrorCode::kValidation, std::string("sampling: ") + e.what());
  }
  for (const VehicleSpec& v : scenario.vehicles) {
    for (double j : config.jerk_levels) {
      if (j < v.limits.j_min || j > v.limits.j_max) {
        throw Error(ErrorCode::kValidation,
                    "sampling: jerk level outside the limits of vehicle '" + v.id + "'");
      }
    }
  }
  PlanResult result;
  result.ego = scenario.EgoIndex();
  result.zones = scenario.ComputeZones();
  const CostContext context = scenario.MakeCostContext(result.zones);
  const std::vector<Limits> limits = scenario.AllLimits();

  std::vector<CandidateSet> candidates;
  for (std::size_t i = 0; i < scenario.vehicles.size(); ++i) {
    candidates.push_back(BuildCandidates(scenario, i, config, result.zones));
  }
  double threshold = kInf;
  for (const VehicleSpec& v : scenario.vehicles) {
    threshold = std::min(threshold, v.cost.InfeasibilityThreshold());
  }
  const EnsembleRanking ranking =
      EnumerateEnsembles(candidates, context, threshold, options.enumeration);
  result.candidates_evaluated =
      static_cast<std::size_t>(ranking.product_size - ranking.colliding);

  std::vector<Trajectory> ensemble(scenario.vehicles.size());
  for (const auto& entry : ranking.entries) {
    const auto members = ranking.Members(entry.linear);
    for (std::size_t i = 0; i < members.size(); ++i) {
      ensemble[i] = candidates[i].trajectories[members[i]];
    }
    ++result.plan_b_checks;
    auto verdicts = CheckEnsemblePlanB(ensemble, result.zones, limits, result.ego,
                                       scenario.plan_b);
    const bool valid = std::all_of(verdicts.begin(), verdicts.end(),
                                   [](const auto& v) { return v.verdict.valid; });
    if (!valid) continue;
    const EnsembleCost cost = ComputeEnsembleCost(ensemble, context);
    result.outcome = Outcome::kSelected;
    result.total_cost = cost.total;
    result.per_vehicle = cost.per_vehicle;
    result.plan_b = std::move(verdicts);
    for (std::size_t i = 0; i < members.size(); ++i) {
      result.profile_indices.push_back(candidates[i].profile_index[members[i]]);
    }
    result.ensemble = std::move(ensemble);
    return result;
  }

  const VehicleSpec& ego = scenario.vehicles[result.ego];
  VelocityProfile brake =
      EmergencyBrakeProfile(ego.initial, ego.limits, config.dt, config.Steps());
  result.outcome = Outcome::kEmergencyBrake;
  result.total_cost = kInf;
  result.ensemble.push_back(LiftToTrajectory(std::move(brake), ego.path));
  return result;
}

PlanResult Plan(const Scenario& scenario) { return Plan(scenario, scenario.sampling); }

}  // namespace coop
