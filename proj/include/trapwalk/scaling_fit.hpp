#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "trapwalk/msd.hpp"

namespace trapwalk {

struct ExponentFit {
  double beta = 0.0;
  double log_intercept = 0.0;
  std::size_t t_min = 0;
  std::size_t t_max = 0;
  double rms_residual = 0.0;  // log space
};

enum class SigmoidModel { TwoParam, ThreeParam };

/// beta(q) = c + 2 (1 - c) / (1 + exp(r |q - 3|^eta)), c = 0 for TwoParam.
struct SigmoidFit {
  SigmoidModel model = SigmoidModel::TwoParam;
  double r = 0.0;
  double eta = 0.0;
  std::optional<double> c;
  double rms_residual = 0.0;

  double operator()(double q) const;
};

/// How the power-law pmf is normalised in a sweep.
enum class SweepLaw {
  Zeta,       ///< (tau+1)^-q / zeta(q) on all tau >= 0
  Truncated,  ///< normalised over tau <= max(N), zero beyond
};

struct SweepRow {
  double q = 0.0;
  std::size_t horizon = 0;
  double beta = 0.0;
  double rms = 0.0;
};

struct SlowVariationProfile {
  std::vector<double> h;  ///< h[t] = sigma2[t] / t^beta for t = 1..N (h[0] unused)
  /// local log-log slope of h on [2^k, 2^(k+1)], for every window inside [1, N]
  std::vector<std::pair<int, double>> dyadic_slopes;
  double score = 0.0;  ///< max |slope| over the dyadic windows
};

/// Ordinary least squares of log sigma_t^2 on log t over every integer t in [t_min, t_max].
ExponentFit powerlaw_fit(const MsdSeries& series, std::size_t t_min, std::size_t t_max);
ExponentFit powerlaw_fit(const std::vector<double>& sigma2, std::size_t t_min, std::size_t t_max);

/// One recurrence per q at max(N_list), fitted on [t_min, N] for each N.
/// Rows are ordered by q then by N as given.
std::vector<SweepRow> beta_sweep(const std::vector<double>& q_grid,
                                 const std::vector<std::size_t>& horizons, std::size_t t_min,
                                 SweepLaw law = SweepLaw::Zeta, unsigned workers = 1);

/// Grid search followed by pattern search, on points sorted by (q, beta).
SigmoidFit sigmoid_fit(std::vector<std::pair<double, double>> points, SigmoidModel model);

SlowVariationProfile slow_variation_profile(const MsdSeries& series, double beta);

}  // namespace trapwalk
