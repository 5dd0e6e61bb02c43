#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "trapwalk/distribution.hpp"
#include "trapwalk/rng.hpp"
#include "trapwalk/sampler.hpp"

namespace trapwalk {

/// One realisation of the (X, T) chain: positions X_0..X_N and trap clocks T_0..T_N.
struct Trajectory {
  std::vector<std::int64_t> positions;
  std::vector<Tau> traps;
};

/// Moments of X_t^2 over an ensemble of independent walkers.
struct EnsembleStats {
  std::size_t horizon = 0;
  std::size_t walkers = 0;
  std::uint64_t seed = 0;
  std::vector<double> msd_hat;
  std::vector<double> msd_se;
};

/// X_t and N_t = #{s <= t : T_s = 0} per walker at each checkpoint; x[c][w], n[c][w].
struct CheckpointSamples {
  std::vector<std::size_t> checkpoints;
  std::vector<std::vector<std::int32_t>> x;
  std::vector<std::vector<std::int32_t>> n;
};

/// Long-run frequency of T_t = tau for tau < freq.size(), with batch-means errors.
struct OccupancyEstimate {
  std::size_t steps = 0;
  std::size_t batches = 0;
  std::vector<double> freq;
  std::vector<double> se;
};

/// Renewal-driven view of a single walker. The walker sits still between
/// escape-level visits, so only visit times and moves are generated; at each
/// visit the +-1 move is drawn before the fresh trap.
class WalkerEvents {
 public:
  WalkerEvents(const TrapSampler& sampler, PhiloxStream& rng)
      : sampler_(&sampler), rng_(&rng), next_visit_((*sampler_)(rng)) {}

  /// Time of the next visit to the escape level (T = 0).
  Tau next_visit() const { return next_visit_; }
  /// X_t for every t up to and including next_visit().
  std::int64_t position() const { return position_; }

  /// Performs the move at next_visit() and draws the following trap.
  void advance() {
    position_ += rng_->next_bit() ? 1 : -1;
    const Tau trap = (*sampler_)(*rng_);
    const Tau room = TrapSampler::kSaturated - next_visit_;
    next_visit_ = (trap >= room || room <= 1) ? TrapSampler::kSaturated : next_visit_ + 1 + trap;
  }

 private:
  const TrapSampler* sampler_;
  PhiloxStream* rng_;
  Tau next_visit_;
  std::int64_t position_ = 0;
};

/// Number of worker threads to use for `requested` (0 = hardware concurrency).
unsigned resolve_workers(unsigned requested);

/// Step-by-step path of walker `stream_id` for t = 0..horizon.
Trajectory simulate_walker(const TrappingDistribution& d, std::size_t horizon, std::uint64_t seed,
                           std::uint64_t stream_id = 0);
Trajectory simulate_walker(const TrapSampler& sampler, std::size_t horizon, PhiloxStream& rng);

/// Empirical MSD with standard errors. Walker i uses stream (seed, i); sums of
/// X^2 and X^4 are accumulated in exact integer arithmetic, so the result does
/// not depend on the worker count or scheduling.
EnsembleStats ensemble_msd(const TrappingDistribution& d, std::size_t horizon, std::size_t walkers,
                           std::uint64_t seed, unsigned workers = 0);

/// Checkpoints must be strictly ascending.
CheckpointSamples ensemble_samples(const TrappingDistribution& d,
                                   const std::vector<std::size_t>& checkpoints,
                                   std::size_t walkers, std::uint64_t seed, unsigned workers = 0);

/// Occupancy of the trap clock along one long path of `steps` steps.
OccupancyEstimate trap_occupancy(const TrappingDistribution& d, std::size_t steps,
                                 std::size_t states, std::size_t batches, std::uint64_t seed);

}  // namespace trapwalk
