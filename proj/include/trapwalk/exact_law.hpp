#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "trapwalk/distribution.hpp"

namespace trapwalk {

/// Law of N_t = #{0 <= s <= t : T_s = 0}, the number of visits to the escape
/// level up to time t. Equivalently N_t = max{n : S_n <= t + 1} with
/// S_n = sum_{k=1}^{n} (T_k + 1). probs[n] for n = 0..t+1.
struct CountDistribution {
  std::size_t t = 0;
  std::vector<double> probs;

  double total() const;
  double mean() const;
};

/// Law of X_t on z in [-t, t]; probs[z + t].
struct PositionDistribution {
  std::size_t t = 0;
  std::vector<double> probs;

  double prob(std::int64_t z) const;
  double total() const;
  double mean() const;
  double second_moment() const;
};

/// Ceiling for the exact laws: 4096, or TRAPWALK_MAX_HORIZON when set.
std::size_t max_exact_horizon();
/// Ceiling for the brute-force oracle.
inline constexpr std::size_t kOracleHorizon = 512;

/// Renewal-count law via repeated convolution of the law of T + 1.
CountDistribution count_distribution(const TrappingDistribution& d, std::size_t t);

/// P(X_t = z) = sum_n P(N_{t-1} = n) 2^-n C(n, (n+z)/2), binomial rows built by
/// neighbour averaging.
PositionDistribution position_distribution(const TrappingDistribution& d, std::size_t t);

/// Independent oracle: forward DP over the (position, next-move time) chain with
/// moves at or after t folded into one absorbing column. t <= kOracleHorizon.
PositionDistribution brute_force_distribution(const TrappingDistribution& d, std::size_t t);

}  // namespace trapwalk
