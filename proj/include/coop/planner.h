#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "coop/cost_model.h"
#include "coop/kinematics.h"
#include "coop/safety.h"
#include "coop/scenario.h"

namespace coop {

/// Deterministic per-vehicle random stream: the same seed and vehicle id give
/// the same draws whatever other vehicles share the scenario.
std::uint64_t VehicleStreamSeed(std::uint64_t seed, const std::string& vehicle_id);

/// Jerk sequences drawn uniformly per step from config.jerk_levels, or every
/// sequence in lexicographic order when config.exhaustive is set.
std::vector<std::vector<double>> SampleJerkSequences(const SamplingConfig& config,
                                                     std::uint64_t stream_seed);

std::vector<VelocityProfile> SampleProfiles(const LongState& initial,
                                            const SamplingConfig& config,
                                            const Limits& limits,
                                            std::uint64_t stream_seed);

/// Trajectories kept for one vehicle after lifting and zone-end filtering;
/// `profile_index` refers to the position in the sampled set.
struct CandidateSet {
  std::vector<Trajectory> trajectories;
  std::vector<std::size_t> profile_index;
  std::size_t sampled = 0;
  std::size_t overrun = 0;
};

CandidateSet BuildCandidates(const Scenario& scenario, std::size_t vehicle,
                             const SamplingConfig& config,
                             const std::vector<std::vector<CollisionZone>>& zones);

/// Filtered Cartesian product of the candidate sets, sorted by cost and then
/// lexicographically by member index. Entries store the product index with
/// the first vehicle most significant.
struct EnsembleRanking {
  struct Entry {
    double cost = 0.0;
    std::uint64_t linear = 0;
  };
  std::vector<std::size_t> dims;
  std::vector<Entry> entries;
  std::uint64_t product_size = 0;
  std::uint64_t colliding = 0;
  std::uint64_t infeasible = 0;

  std::vector<std::size_t> Members(std::uint64_t linear) const;
};

struct EnumerationOptions {
  /// 0 picks the hardware concurrency.
  std::size_t threads = 0;
};

/// Drops colliding ensembles and ensembles whose total reaches the
/// infeasibility threshold. Evaluation is split across threads; the result
/// does not depend on the thread count. Throws Error{kIntractable} when the
/// product exceeds kMaxEnsembles.
EnsembleRanking EnumerateEnsembles(const std::vector<CandidateSet>& candidates,
                                   const CostContext& context,
                                   double infeasibility_threshold,
                                   const EnumerationOptions& options = {});

inline constexpr std::uint64_t kMaxEnsembles = 200'000'000;

enum class Outcome { kSelected, kEmergencyBrake };

const char* OutcomeName(Outcome outcome);

struct PlanResult {
  Outcome outcome = Outcome::kEmergencyBrake;
  std::size_t ego = 0;
  /// Selected ensemble, or just the ego's full-braking trajectory.
  std::vector<Trajectory> ensemble;
  /// Sampled-set index of each member (selected outcome only).
  std::vector<std::size_t> profile_indices;
  double total_cost = 0.0;
  std::vector<CostBreakdown> per_vehicle;
  std::vector<PlanBPairVerdict> plan_b;
  std::size_t candidates_evaluated = 0;
  std::size_t plan_b_checks = 0;
  std::vector<std::vector<CollisionZone>> zones;
};

struct PlannerOptions {
  EnumerationOptions enumeration;
};

/// Ranks every admissible ensemble by cost, then returns the cheapest one
/// whose ego has a valid plan B. Falls back to emergency braking of the ego.
/// Throws Error{kValidation} for a malformed scenario.
PlanResult Plan(const Scenario& scenario, const SamplingConfig& config,
                const PlannerOptions& options = {});
PlanResult Plan(const Scenario& scenario);

}  // namespace coop
