#include "trapwalk/limit_diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "trapwalk/errors.hpp"
#include "trapwalk/montecarlo.hpp"

namespace trapwalk {

namespace {

std::vector<std::int32_t> sorted_copy(std::span<const std::int32_t> v) {
  std::vector<std::int32_t> s(v.begin(), v.end());
  std::sort(s.begin(), s.end());
  return s;
}

void check_checkpoints(const std::vector<std::size_t>& checkpoints) {
  if (checkpoints.empty()) throw DomainError("at least one checkpoint is required");
  if (checkpoints.front() < 1) throw DomainError("checkpoints must be positive");
}

// Heavy-tail regime checks shared by the concentration and scaling diagnostics.
void check_heavy_tail_alpha(const TrappingDistribution& d, double alpha, bool allow_diffusive) {
  const double hi = allow_diffusive ? 1.0 : 1.0 - 1e-15;
  if (!(alpha > 0.0 && alpha <= hi))
    throw DomainError("alpha must lie in (0, 1" + std::string(allow_diffusive ? "]" : ")") +
                      ", got " + std::to_string(alpha));
  if (const auto* z = std::get_if<PowerLawZeta>(&d.variant())) {
    const double expected = std::min(1.0, z->q - 1.0);
    if (std::abs(alpha - expected) > 1e-9)
      throw DomainError("for zeta:q the tail index is min(1, q - 1) = " + std::to_string(expected));
    return;
  }
  if (d.mean().is_finite() && alpha < 1.0)
    throw DomainError("alpha < 1 needs an infinite-mean trapping law");
}

}  // namespace

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

double kolmogorov_to_normal(std::span<const std::int32_t> values, double scale) {
  const auto s = sorted_copy(values);
  const double m = static_cast<double>(s.size());
  double worst = 0.0;
  std::size_t i = 0;
  while (i < s.size()) {
    std::size_t j = i;
    while (j < s.size() && s[j] == s[i]) ++j;
    const double phi = normal_cdf(static_cast<double>(s[i]) / scale);
    const double before = static_cast<double>(i) / m;
    const double after = static_cast<double>(j) / m;
    worst = std::max({worst, std::abs(before - phi), std::abs(after - phi)});
    i = j;
  }
  return worst;
}

double two_sample_distance(std::span<const std::int32_t> a, double scale_a,
                           std::span<const std::int32_t> b, double scale_b) {
  const auto sa = sorted_copy(a);
  const auto sb = sorted_copy(b);
  const double na = static_cast<double>(sa.size());
  const double nb = static_cast<double>(sb.size());
  std::size_t i = 0, j = 0;
  double worst = 0.0;
  while (i < sa.size() || j < sb.size()) {
    const double xa = i < sa.size() ? sa[i] / scale_a : INFINITY;
    const double xb = j < sb.size() ? sb[j] / scale_b : INFINITY;
    const double x = std::min(xa, xb);
    while (i < sa.size() && sa[i] / scale_a <= x) ++i;
    while (j < sb.size() && sb[j] / scale_b <= x) ++j;
    worst = std::max(worst, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  return worst;
}

double symmetry_defect(std::span<const std::int32_t> values) {
  const auto s = sorted_copy(values);
  const double m = static_cast<double>(s.size());
  // P(Y <= x) - P(Y >= -x) changes only at x = v or x = -v for sample values v
  std::vector<std::int64_t> points;
  points.reserve(2 * s.size());
  for (auto v : s) {
    points.push_back(v);
    points.push_back(-static_cast<std::int64_t>(v));
  }
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  double worst = 0.0;
  for (const std::int64_t x : points) {
    const auto le = std::upper_bound(s.begin(), s.end(), x) - s.begin();
    const auto ge = s.end() - std::lower_bound(s.begin(), s.end(), -x);
    worst = std::max(worst, std::abs(static_cast<double>(le) - static_cast<double>(ge)) / m);
  }
  return worst;
}

double loglog_slope(std::span<const double> x, std::span<const double> y) {
  const std::size_t n = x.size();
  if (n < 2 || y.size() != n) throw DomainError("slope fit needs two or more points");
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (!(x[i] > 0.0 && y[i] > 0.0)) throw DomainError("log-log slope needs positive data");
    mx += std::log(x[i]);
    my += std::log(y[i]);
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = std::log(x[i]) - mx;
    sxx += dx * dx;
    sxy += dx * (std::log(y[i]) - my);
  }
  return sxy / sxx;
}

CltReport clt_check(const TrappingDistribution& d, const std::vector<std::size_t>& checkpoints,
                    std::size_t walkers, std::uint64_t seed, std::optional<double> alpha,
                    unsigned workers) {
  check_checkpoints(checkpoints);
  const ExtendedReal m = d.mean();
  if (m.is_infinite()) throw InfiniteMean("the CLT check needs a finite E(T)");

  CltReport report;
  report.checkpoints = checkpoints;
  report.mu = m.value() + 1.0;
  report.walkers = walkers;
  report.seed = seed;
  if (alpha) {
    if (!(*alpha > 1.0 && *alpha <= 2.0)) throw DomainError("CLT alpha must lie in (1, 2]");
    report.alpha = alpha;
    report.theoretical_rate = (1.0 - *alpha) / (1.0 + *alpha);
    const ExtendedReal ct = d.centered_abs_moment(*alpha);
    if (ct.is_finite()) {
      report.c_t = ct.value();
      report.constant_floor = 8.0 * ct.value() / report.mu +
                              std::sqrt(2.0 * report.mu / std::numbers::pi);
    }
  }

  const CheckpointSamples samples = ensemble_samples(d, checkpoints, walkers, seed, workers);
  std::vector<double> times;
  for (std::size_t c = 0; c < checkpoints.size(); ++c) {
    const double t = static_cast<double>(checkpoints[c]);
    report.sup_distance.push_back(kolmogorov_to_normal(samples.x[c], std::sqrt(t / report.mu)));
    times.push_back(t);
  }
  if (checkpoints.size() >= 2) report.rate_fit = loglog_slope(times, report.sup_distance);
  return report;
}

ConcentrationReport concentration_check(const TrappingDistribution& d, double alpha,
                                        const std::vector<std::size_t>& checkpoints,
                                        std::size_t walkers, std::uint64_t seed,
                                        unsigned workers) {
  check_checkpoints(checkpoints);
  check_heavy_tail_alpha(d, alpha, false);

  ConcentrationReport report;
  report.checkpoints = checkpoints;
  report.alpha = alpha;
  report.walkers = walkers;
  report.seed = seed;
  const CheckpointSamples samples = ensemble_samples(d, checkpoints, walkers, seed, workers);
  for (std::size_t c = 0; c < checkpoints.size(); ++c) {
    const double t = static_cast<double>(checkpoints[c]);
    const double h = d.tail(checkpoints[c]) * std::pow(t + 1.0, alpha);
    const double scale = std::pow(t, alpha);
    report.h_values.push_back(h);

    std::vector<double> scaled(samples.n[c].begin(), samples.n[c].end());
    for (double& v : scaled) v /= scale;
    const auto mid = scaled.begin() + static_cast<std::ptrdiff_t>(scaled.size() / 2);
    std::nth_element(scaled.begin(), mid, scaled.end());
    report.median_scaled.push_back(*mid);

    if (h >= 1.0) {
      report.skipped.push_back(true);
      report.violation_freq.push_back(0.0);
      report.ratio.push_back(0.0);
      continue;
    }
    const double lo = scale * h;
    const double hi = scale / (h * h);
    std::size_t outside = 0;
    for (const auto n : samples.n[c])
      if (n < lo || n > hi) ++outside;
    const double freq = static_cast<double>(outside) / static_cast<double>(walkers);
    report.skipped.push_back(false);
    report.violation_freq.push_back(freq);
    report.ratio.push_back(freq / h);
  }
  return report;
}

HeavyTailReport heavy_tail_scaling_check(const TrappingDistribution& d, double alpha,
                                         const std::vector<std::size_t>& checkpoints,
                                         std::size_t walkers, std::uint64_t seed,
                                         unsigned workers) {
  check_checkpoints(checkpoints);
  check_heavy_tail_alpha(d, alpha, true);

  HeavyTailReport report;
  report.checkpoints = checkpoints;
  report.alpha = alpha;
  report.walkers = walkers;
  report.seed = seed;
  const CheckpointSamples samples = ensemble_samples(d, checkpoints, walkers, seed, workers);
  const bool diffusive = alpha == 1.0 && d.mean().is_finite();
  const double mu = diffusive ? d.mean().value() + 1.0 : 1.0;
  std::vector<double> scales;
  for (std::size_t c = 0; c < checkpoints.size(); ++c) {
    const double t = static_cast<double>(checkpoints[c]);
    const double scale = std::pow(t, alpha / 2.0);
    scales.push_back(scale);
    report.symmetry_defect.push_back(symmetry_defect(samples.x[c]));
    double m2 = 0.0;
    for (const auto x : samples.x[c]) m2 += (x / scale) * (x / scale);
    report.second_moment.push_back(m2 / static_cast<double>(walkers));
    if (diffusive)
      report.normal_distance.push_back(kolmogorov_to_normal(samples.x[c], std::sqrt(t / mu)));
  }
  for (std::size_t c = 1; c < checkpoints.size(); ++c)
    report.pairwise_distance.push_back(
        two_sample_distance(samples.x[c - 1], scales[c - 1], samples.x[c], scales[c]));
  return report;
}

}  // namespace trapwalk
