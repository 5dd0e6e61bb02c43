#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "trapwalk/distribution.hpp"

namespace trapwalk {

/// Horizon ceiling for the O(N^2) recurrences: 2^17 unless TRAPWALK_MAX_HORIZON is set.
std::size_t max_horizon();

/// sigma_t^2 = E(X_t^2) for t = 0..horizon.
struct MsdSeries {
  std::string dist_spec;
  std::size_t horizon = 0;
  std::vector<double> sigma2;
  std::optional<double> diffusion;
};

/// Envelope lower[t] <= sigma_t^2 - D t <= upper[t] for finite-mean laws.
struct BoundEnvelope {
  std::vector<double> r_t;
  std::vector<double> lower;
  std::vector<double> upper;
  double kappa = 1.0;
  double mean = 0.0;
  double diffusion = 1.0;
};

/// Exact MSD by the renewal recurrence
///   sigma_{t+1}^2 = P(T <= t) + sum_{tau <= t} p(tau) sigma_{t-tau}^2.
///
/// Every term is non-negative, so no cancellation occurs. The inner sums are
/// compensated dot products (error of a single rounding per step), so the
/// accumulated error grows like sqrt(N) ulp(sigma_N^2) rather than N ulp.
MsdSeries msd_series(const TrappingDistribution& d, std::size_t horizon);

/// Q_0 = 1, Q_{t+1} = sum_{tau <= t} Q_{t-tau} p(tau).
std::vector<double> renewal_mass(const TrappingDistribution& d, std::size_t horizon);

/// kappa = -log(p0) / (1 - p0), continued to 1 at p0 = 1.
double escape_rate_constant(double p0);

/// R_t, the upper envelope R_t and the lower envelope exp(-kappa E(T)) R_t - E(T).
/// Throws InfiniteMean when E(T) diverges and ZeroEscape when p(0) = 0.
BoundEnvelope linear_bounds(const TrappingDistribution& d, std::size_t horizon);

}  // namespace trapwalk
