#include "trapwalk/msd.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <span>
#include <string>

#include "trapwalk/errors.hpp"
#include "trapwalk/simd/kernels.hpp"

namespace trapwalk {

namespace {

void check_horizon(std::size_t horizon) {
  if (horizon < 1) throw DomainError("horizon must be at least 1");
  if (horizon > max_horizon())
    throw HorizonTooLarge("horizon " + std::to_string(horizon) + " exceeds the ceiling " +
                          std::to_string(max_horizon()) + " (set TRAPWALK_MAX_HORIZON to raise it)");
}

std::vector<double> pmf_prefix(const TrappingDistribution& d, std::size_t n) {
  std::vector<double> p(n);
  for (std::size_t t = 0; t < n; ++t) p[t] = d.pmf(t);
  return p;
}

// out[t+1] = offset[t] + sum_{tau <= t} p[tau] out[t - tau]; `rev` holds out reversed
// so that the convolution is a forward dot product.
std::vector<double> renewal_recurrence(std::span<const double> p, std::span<const double> offset,
                                       double first, std::size_t horizon) {
  std::vector<double> rev(horizon + 1, 0.0);
  rev[horizon] = first;
  const auto& kernels = simd::active_kernels();
  for (std::size_t t = 0; t < horizon; ++t) {
    const double conv = kernels.dot_compensated(p.data(), rev.data() + (horizon - t), t + 1);
    rev[horizon - t - 1] = offset[t] + conv;
  }
  return {rev.rbegin(), rev.rend()};
}

}  // namespace

std::size_t max_horizon() {
  if (const char* env = std::getenv("TRAPWALK_MAX_HORIZON")) {
    std::size_t v = 0;
    const std::string_view s(env);
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec == std::errc() && ptr == s.data() + s.size() && v > 0) return v;
  }
  return std::size_t{1} << 17;
}

MsdSeries msd_series(const TrappingDistribution& d, std::size_t horizon) {
  check_horizon(horizon);
  const auto p = pmf_prefix(d, horizon);
  std::vector<double> cdf(horizon);
  for (std::size_t t = 0; t < horizon; ++t) cdf[t] = d.cdf(t);

  MsdSeries out;
  out.dist_spec = d.spec();
  out.horizon = horizon;
  out.sigma2 = renewal_recurrence(p, cdf, 0.0, horizon);
  if (d.mean().is_finite()) out.diffusion = d.diffusion_coefficient();
  return out;
}

std::vector<double> renewal_mass(const TrappingDistribution& d, std::size_t horizon) {
  check_horizon(horizon);
  const auto p = pmf_prefix(d, horizon);
  const std::vector<double> zero(horizon, 0.0);
  return renewal_recurrence(p, zero, 1.0, horizon);
}

double escape_rate_constant(double p0) {
  if (p0 >= 1.0) return 1.0;
  if (!(p0 > 0.0)) return std::numeric_limits<double>::infinity();
  return -std::log1p(p0 - 1.0) / (1.0 - p0);
}

BoundEnvelope linear_bounds(const TrappingDistribution& d, std::size_t horizon) {
  check_horizon(horizon);
  const ExtendedReal m = d.mean();
  if (m.is_infinite()) throw InfiniteMean("linear bounds need a finite E(T)");
  const double p0 = d.pmf(0);
  if (!(p0 > 0.0)) throw ZeroEscape("linear bounds are undefined when p(0) = 0");

  BoundEnvelope env;
  env.mean = m.value();
  env.diffusion = d.diffusion_coefficient();
  env.kappa = escape_rate_constant(p0);
  const double shrink = std::exp(-env.kappa * env.mean);

  env.r_t.resize(horizon + 1);
  env.lower.resize(horizon + 1);
  env.upper.resize(horizon + 1);
  // R_t = D sum_{tau <= t+1} p(tau) tau (tau+1)/2 + (t+1) D sum_{tau > t+1} (tau - t/2) p(tau)
  double head = 0.0;
  for (std::size_t t = 0; t <= horizon; ++t) {
    if (t == 0) head += d.pmf(1);  // tau = 0 contributes nothing
    else head += d.pmf(t + 1) * 0.5 * static_cast<double>(t + 1) * static_cast<double>(t + 2);
    const double td = static_cast<double>(t);
    const double beyond = d.mean_tail(t + 2) - 0.5 * td * d.tail(t + 2);
    // R_t is a sum of non-negative terms over tau <= t; the max only absorbs rounding
    const double r = std::max(env.diffusion * (head + (td + 1.0) * beyond), t ? env.r_t[t - 1] : 0.0);
    env.r_t[t] = r;
    env.upper[t] = r;
    env.lower[t] = shrink * r - env.mean;
  }
  return env;
}

}  // namespace trapwalk
