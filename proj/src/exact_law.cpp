#include "trapwalk/exact_law.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <string>

#include "trapwalk/errors.hpp"
#include "trapwalk/msd.hpp"
#include "trapwalk/simd/kernels.hpp"

namespace trapwalk {

double CountDistribution::total() const { return std::accumulate(probs.begin(), probs.end(), 0.0); }

double CountDistribution::mean() const {
  double s = 0.0;
  for (std::size_t n = 0; n < probs.size(); ++n) s += static_cast<double>(n) * probs[n];
  return s;
}

double PositionDistribution::prob(std::int64_t z) const {
  const auto ti = static_cast<std::int64_t>(t);
  if (z < -ti || z > ti) return 0.0;
  return probs[static_cast<std::size_t>(z + ti)];
}

double PositionDistribution::total() const {
  return std::accumulate(probs.begin(), probs.end(), 0.0);
}

double PositionDistribution::mean() const {
  double s = 0.0;
  const auto ti = static_cast<std::int64_t>(t);
  for (std::int64_t z = -ti; z <= ti; ++z) s += static_cast<double>(z) * prob(z);
  return s;
}

double PositionDistribution::second_moment() const {
  double s = 0.0;
  const auto ti = static_cast<std::int64_t>(t);
  for (std::int64_t z = -ti; z <= ti; ++z) s += static_cast<double>(z * z) * prob(z);
  return s;
}

std::size_t max_exact_horizon() {
  if (std::getenv("TRAPWALK_MAX_HORIZON")) return max_horizon();
  return 4096;
}

namespace {

void check_exact(std::size_t t, std::size_t ceiling) {
  if (t < 1) throw DomainError("time must be at least 1");
  if (t > ceiling)
    throw HorizonTooLarge("t = " + std::to_string(t) + " exceeds the exact-law ceiling " +
                          std::to_string(ceiling));
}

// Law of N_t for t >= 0 (t = 0 allowed internally: N_0 = 1{T_0 = 0}).
CountDistribution count_law(const TrappingDistribution& d, std::size_t t) {
  const std::size_t limit = t + 1;  // N_t = max{n : S_n <= limit}
  // reversed pmf: p(s - u - 1) = rev[top - s + u + 1], top = limit - 1
  const std::size_t top = limit - 1;
  std::vector<double> rev(limit);
  for (std::size_t j = 0; j < limit; ++j) rev[j] = d.pmf(top - j);

  const auto& kernels = simd::active_kernels();
  std::vector<double> cur(limit + 1, 0.0);
  std::vector<double> next(limit + 1, 0.0);
  cur[0] = 1.0;
  std::vector<double> within(limit + 2, 0.0);  // within[n] = P(S_n <= limit)
  within[0] = 1.0;
  for (std::size_t n = 0; n < limit; ++n) {
    // S_{n+1} is supported on [n+1, limit]
    std::fill(next.begin(), next.end(), 0.0);
    double mass = 0.0;
    for (std::size_t s = n + 1; s <= limit; ++s) {
      const double v = kernels.dot(cur.data() + n, rev.data() + (top - s + n + 1), s - n);
      next[s] = v;
      mass += v;
    }
    within[n + 1] = mass;
    cur.swap(next);
    if (mass == 0.0) break;
  }

  CountDistribution out;
  out.t = t;
  out.probs.resize(limit + 1);
  for (std::size_t n = 0; n <= limit; ++n)
    out.probs[n] = std::max(0.0, within[n] - within[n + 1]);
  return out;
}

}  // namespace

CountDistribution count_distribution(const TrappingDistribution& d, std::size_t t) {
  check_exact(t, max_exact_horizon());
  return count_law(d, t);
}

PositionDistribution position_distribution(const TrappingDistribution& d, std::size_t t) {
  check_exact(t, max_exact_horizon());
  const CountDistribution moves = count_law(d, t - 1);  // n = 0..t

  const std::size_t width = 2 * t + 3;  // z in [-t-1, t+1]
  const std::size_t origin = t + 1;
  std::vector<double> row(width, 0.0);
  std::vector<double> next(width, 0.0);
  std::vector<double> acc(width, 0.0);
  row[origin] = 1.0;

  const auto& kernels = simd::active_kernels();
  double remaining = moves.total();
  for (std::size_t n = 0; n < moves.probs.size(); ++n) {
    const double w = moves.probs[n];
    const std::size_t lo = origin - n;
    if (w != 0.0) kernels.axpy(w, row.data() + lo, acc.data() + lo, 2 * n + 1);
    remaining -= w;
    if (n + 1 == moves.probs.size() || remaining <= 0.0) break;
    // row_{n+1}(z) = (row_n(z-1) + row_n(z+1)) / 2 on [-(n+1), n+1]
    const std::size_t nlo = lo - 1;
    kernels.half_sum(row.data() + nlo - 1, row.data() + nlo + 1, next.data() + nlo, 2 * n + 3);
    row.swap(next);
  }

  PositionDistribution out;
  out.t = t;
  out.probs.assign(acc.begin() + 1, acc.end() - 1);
  return out;
}

PositionDistribution brute_force_distribution(const TrappingDistribution& d, std::size_t t) {
  check_exact(t, kOracleHorizon);
  const std::size_t cols = t + 1;       // next-move time a in [0, t]; a = t means "not before t"
  const std::size_t rows = 2 * t + 1;   // z in [-t, t]
  std::vector<double> grid(rows * cols, 0.0);
  auto cell = [&](std::size_t zi, std::size_t a) -> double& { return grid[zi * cols + a]; };

  std::vector<double> p(t);
  for (std::size_t k = 0; k < t; ++k) p[k] = d.pmf(k);

  const std::size_t origin = t;
  for (std::size_t a = 0; a < t; ++a) cell(origin, a) = p[a];
  cell(origin, t) = d.tail(t);

  const auto& kernels = simd::active_kernels();
  for (std::size_t s = 0; s < t; ++s) {
    const double fold = d.tail(t - s - 1);
    const std::size_t span = t - s - 1;
    for (std::size_t zi = origin - s; zi <= origin + s; ++zi) {
      const double v = cell(zi, s);
      if (v == 0.0) continue;
      cell(zi, s) = 0.0;
      const double half = 0.5 * v;
      for (const std::size_t target : {zi - 1, zi + 1}) {
        if (span > 0) kernels.axpy(half, p.data(), &cell(target, s + 1), span);
        cell(target, t) += half * fold;
      }
    }
  }

  PositionDistribution out;
  out.t = t;
  out.probs.resize(rows);
  for (std::size_t zi = 0; zi < rows; ++zi) out.probs[zi] = cell(zi, t);
  return out;
}

}  // namespace trapwalk
