#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "trapwalk/distribution.hpp"

namespace trapwalk {

/// Standard normal CDF.
double normal_cdf(double x);

/// sup_x |F_n(x) - Phi(x)| for the empirical law of values[i] / scale.
double kolmogorov_to_normal(std::span<const std::int32_t> values, double scale);

/// sup_x |F_a(x) - G_b(x)| between empirical laws of a[i] / scale_a and b[j] / scale_b.
double two_sample_distance(std::span<const std::int32_t> a, double scale_a,
                           std::span<const std::int32_t> b, double scale_b);

/// sup_x |P(Y <= x) - P(Y >= -x)|; zero for an exactly symmetric sample, atoms included.
double symmetry_defect(std::span<const std::int32_t> values);

/// OLS slope of log(y) against log(x).
double loglog_slope(std::span<const double> x, std::span<const double> y);

struct CltReport {
  std::vector<std::size_t> checkpoints;
  std::vector<double> sup_distance;  ///< Kolmogorov distance of X_t / sqrt(t / mu) to N(0,1)
  double rate_fit = 0.0;             ///< slope of log sup_distance on log t
  double mu = 1.0;                   ///< E(T) + 1
  std::optional<double> alpha;
  std::optional<double> theoretical_rate;  ///< (1 - alpha) / (1 + alpha)
  std::optional<double> c_t;               ///< E(|T - E(T)|^alpha)
  std::optional<double> constant_floor;    ///< 8 C_T / mu + sqrt(2 mu / pi)
  std::size_t walkers = 0;
  std::uint64_t seed = 0;
};

struct ConcentrationReport {
  std::vector<std::size_t> checkpoints;
  double alpha = 0.0;
  std::vector<double> h_values;        ///< P(T >= t) (t+1)^alpha
  std::vector<bool> skipped;           ///< h(t) >= 1: the interval is empty
  std::vector<double> violation_freq;  ///< P(N_t outside t^alpha [h, h^-2])
  std::vector<double> ratio;           ///< violation_freq / h
  std::vector<double> median_scaled;   ///< median of N_t / t^alpha
  std::size_t walkers = 0;
  std::uint64_t seed = 0;
};

struct HeavyTailReport {
  std::vector<std::size_t> checkpoints;
  double alpha = 0.0;
  std::vector<double> pairwise_distance;  ///< between consecutive checkpoints of X_t / t^(alpha/2)
  std::vector<double> symmetry_defect;
  std::vector<double> second_moment;      ///< sample mean of (X_t / t^(alpha/2))^2
  std::vector<double> normal_distance;    ///< only for alpha = 1 with finite E(T), against sqrt(t / mu)
  std::size_t walkers = 0;
  std::uint64_t seed = 0;
};

/// Kolmogorov distance of the normalised position to the standard normal at
/// each checkpoint, taken over the whole line. Throws InfiniteMean.
CltReport clt_check(const TrappingDistribution& d, const std::vector<std::size_t>& checkpoints,
                    std::size_t walkers, std::uint64_t seed, std::optional<double> alpha = {},
                    unsigned workers = 0);

/// Frequency of N_t falling outside t^alpha [h(t), h(t)^-2]; alpha in (0, 1),
/// equal to q - 1 for zeta laws.
ConcentrationReport concentration_check(const TrappingDistribution& d, double alpha,
                                        const std::vector<std::size_t>& checkpoints,
                                        std::size_t walkers, std::uint64_t seed,
                                        unsigned workers = 0);

/// Self-consistency of the laws of X_t / t^(alpha/2) across checkpoints;
/// alpha in (0, 1], with alpha = 1 the diffusive case.
HeavyTailReport heavy_tail_scaling_check(const TrappingDistribution& d, double alpha,
                                         const std::vector<std::size_t>& checkpoints,
                                         std::size_t walkers, std::uint64_t seed,
                                         unsigned workers = 0);

}  // namespace trapwalk
