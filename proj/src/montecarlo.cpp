#include "trapwalk/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <string>
#include <thread>

#include "trapwalk/errors.hpp"

namespace trapwalk {

namespace {

using Wide = unsigned __int128;

constexpr std::size_t kBlock = 1024;

// Runs fn(block_index, worker_index) over all blocks. Any result that depends on
// the partition must be merged in block order by the caller.
template <class Fn>
void for_each_block(std::size_t blocks, unsigned workers, Fn&& fn) {
  const unsigned w = static_cast<unsigned>(std::min<std::size_t>(workers, std::max<std::size_t>(blocks, 1)));
  if (w <= 1) {
    for (std::size_t b = 0; b < blocks; ++b) fn(b, 0u);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(w);
  for (unsigned k = 0; k < w; ++k) {
    pool.emplace_back([&, k] {
      for (std::size_t b = next++; b < blocks; b = next++) fn(b, k);
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace

unsigned resolve_workers(unsigned requested) {
  if (requested > 0) return requested;
  return std::max(1u, std::thread::hardware_concurrency());
}

Trajectory simulate_walker(const TrapSampler& sampler, std::size_t horizon, PhiloxStream& rng) {
  Trajectory path;
  path.positions.resize(horizon + 1);
  path.traps.resize(horizon + 1);
  WalkerEvents walker(sampler, rng);
  std::size_t t = 0;
  while (t <= horizon) {
    const Tau visit = walker.next_visit();
    for (; t <= horizon && t <= visit; ++t) {
      path.positions[t] = walker.position();
      path.traps[t] = visit - t;
    }
    if (t > horizon) break;
    walker.advance();
  }
  return path;
}

Trajectory simulate_walker(const TrappingDistribution& d, std::size_t horizon, std::uint64_t seed,
                           std::uint64_t stream_id) {
  const TrapSampler sampler(d);
  PhiloxStream rng(seed, stream_id);
  return simulate_walker(sampler, horizon, rng);
}

EnsembleStats ensemble_msd(const TrappingDistribution& d, std::size_t horizon, std::size_t walkers,
                           std::uint64_t seed, unsigned workers) {
  if (walkers < 2) throw DomainError("ensemble needs at least two walkers");
  if (horizon < 1) throw DomainError("horizon must be at least 1");
  const TrapSampler sampler(d);
  const unsigned w = resolve_workers(workers);
  const std::size_t blocks = (walkers + kBlock - 1) / kBlock;

  // difference arrays of X^2 and X^4 over t, one pair per worker (mod 2^128)
  std::vector<std::vector<Wide>> d2(w, std::vector<Wide>(horizon + 2, 0));
  std::vector<std::vector<Wide>> d4(w, std::vector<Wide>(horizon + 2, 0));

  for_each_block(blocks, w, [&](std::size_t b, unsigned k) {
    auto& s2 = d2[k];
    auto& s4 = d4[k];
    const std::size_t end = std::min(walkers, (b + 1) * kBlock);
    for (std::size_t i = b * kBlock; i < end; ++i) {
      PhiloxStream rng(seed, i);
      WalkerEvents walker(sampler, rng);
      while (walker.next_visit() < horizon) {
        const Tau from = walker.next_visit() + 1;
        walker.advance();
        const Tau to = std::min<Tau>(walker.next_visit(), horizon);
        const auto x = static_cast<Wide>(walker.position() < 0 ? -walker.position() : walker.position());
        if (x == 0) continue;
        const Wide x2 = x * x;
        const Wide x4 = x2 * x2;
        s2[from] += x2;
        s2[to + 1] -= x2;
        s4[from] += x4;
        s4[to + 1] -= x4;
      }
    }
  });

  EnsembleStats out;
  out.horizon = horizon;
  out.walkers = walkers;
  out.seed = seed;
  out.msd_hat.resize(horizon + 1);
  out.msd_se.resize(horizon + 1);
  Wide run2 = 0;
  Wide run4 = 0;
  const long double m = static_cast<long double>(walkers);
  for (std::size_t t = 0; t <= horizon; ++t) {
    for (unsigned k = 0; k < w; ++k) {
      run2 += d2[k][t];
      run4 += d4[k][t];
    }
    const long double s2 = static_cast<long double>(run2);
    const long double s4 = static_cast<long double>(run4);
    const long double mean = s2 / m;
    const long double var = std::max(0.0L, (s4 - s2 * mean) / (m - 1.0L));
    out.msd_hat[t] = static_cast<double>(mean);
    out.msd_se[t] = static_cast<double>(std::sqrt(var / m));
  }
  return out;
}

CheckpointSamples ensemble_samples(const TrappingDistribution& d,
                                   const std::vector<std::size_t>& checkpoints,
                                   std::size_t walkers, std::uint64_t seed, unsigned workers) {
  if (walkers < 1) throw DomainError("ensemble needs at least one walker");
  for (std::size_t c = 1; c < checkpoints.size(); ++c)
    if (checkpoints[c] <= checkpoints[c - 1]) throw DomainError("checkpoints must be strictly ascending");
  if (!checkpoints.empty() && checkpoints.back() >= std::numeric_limits<std::int32_t>::max())
    throw DomainError("checkpoint too large");

  const TrapSampler sampler(d);
  const unsigned w = resolve_workers(workers);
  const std::size_t blocks = (walkers + kBlock - 1) / kBlock;
  const std::size_t nc = checkpoints.size();

  CheckpointSamples out;
  out.checkpoints = checkpoints;
  out.x.assign(nc, std::vector<std::int32_t>(walkers));
  out.n.assign(nc, std::vector<std::int32_t>(walkers));

  for_each_block(blocks, w, [&](std::size_t b, unsigned) {
    const std::size_t end = std::min(walkers, (b + 1) * kBlock);
    for (std::size_t i = b * kBlock; i < end; ++i) {
      PhiloxStream rng(seed, i);
      WalkerEvents walker(sampler, rng);
      std::int32_t visits = 0;
      std::size_t c = 0;
      while (c < nc) {
        const Tau r = walker.next_visit();
        for (; c < nc && checkpoints[c] < r; ++c) {
          out.x[c][i] = static_cast<std::int32_t>(walker.position());
          out.n[c][i] = visits;
        }
        if (c == nc) break;
        ++visits;
        for (; c < nc && checkpoints[c] == r; ++c) {
          out.x[c][i] = static_cast<std::int32_t>(walker.position());
          out.n[c][i] = visits;
        }
        walker.advance();
      }
    }
  });
  return out;
}

OccupancyEstimate trap_occupancy(const TrappingDistribution& d, std::size_t steps,
                                 std::size_t states, std::size_t batches, std::uint64_t seed) {
  if (batches < 2 || steps < batches) throw DomainError("occupancy needs steps >= batches >= 2");
  const TrapSampler sampler(d);
  PhiloxStream rng(seed, 0);
  WalkerEvents walker(sampler, rng);
  const std::size_t batch_len = steps / batches;
  const std::size_t used = batch_len * batches;
  std::vector<std::vector<std::uint64_t>> counts(batches, std::vector<std::uint64_t>(states, 0));

  // T_t = visit - t on each segment (previous visit, visit]
  Tau seg_start = 0;
  for (;;) {
    const Tau visit = walker.next_visit();
    for (std::size_t j = 0; j < states && j <= visit; ++j) {
      const Tau t = visit - j;
      if (t < seg_start) break;
      if (t < used) ++counts[t / batch_len][j];
    }
    if (visit + 1 >= used) break;
    seg_start = visit + 1;
    walker.advance();
  }

  OccupancyEstimate out;
  out.steps = used;
  out.batches = batches;
  out.freq.assign(states, 0.0);
  out.se.assign(states, 0.0);
  const double bl = static_cast<double>(batch_len);
  for (std::size_t j = 0; j < states; ++j) {
    double mean = 0.0;
    for (std::size_t b = 0; b < batches; ++b) mean += static_cast<double>(counts[b][j]) / bl;
    mean /= static_cast<double>(batches);
    double ss = 0.0;
    for (std::size_t b = 0; b < batches; ++b) {
      const double dev = static_cast<double>(counts[b][j]) / bl - mean;
      ss += dev * dev;
    }
    out.freq[j] = mean;
    out.se[j] = std::sqrt(ss / static_cast<double>(batches - 1) / static_cast<double>(batches));
  }
  return out;
}

}  // namespace trapwalk
