#include "trapwalk/scaling_fit.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>
#include <thread>

#include "trapwalk/errors.hpp"
#include "trapwalk/montecarlo.hpp"

namespace trapwalk {

ExponentFit powerlaw_fit(const std::vector<double>& sigma2, std::size_t t_min, std::size_t t_max) {
  if (t_min < 1 || t_min >= t_max || t_max >= sigma2.size())
    throw WindowError("fit window [" + std::to_string(t_min) + ", " + std::to_string(t_max) +
                      "] is not inside [1, " + std::to_string(sigma2.size() - 1) + "]");
  const std::size_t n = t_max - t_min + 1;
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t t = t_min; t <= t_max; ++t) {
    if (!(sigma2[t] > 0.0))
      throw WindowError("sigma2 is not positive at t = " + std::to_string(t));
    mx += std::log(static_cast<double>(t));
    my += std::log(sigma2[t]);
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t t = t_min; t <= t_max; ++t) {
    const double dx = std::log(static_cast<double>(t)) - mx;
    sxx += dx * dx;
    sxy += dx * (std::log(sigma2[t]) - my);
  }
  ExponentFit fit;
  fit.beta = sxy / sxx;
  fit.log_intercept = my - fit.beta * mx;
  fit.t_min = t_min;
  fit.t_max = t_max;
  double ss = 0.0;
  for (std::size_t t = t_min; t <= t_max; ++t) {
    const double e = std::log(sigma2[t]) - (fit.log_intercept + fit.beta * std::log(static_cast<double>(t)));
    ss += e * e;
  }
  fit.rms_residual = std::sqrt(ss / static_cast<double>(n));
  return fit;
}

ExponentFit powerlaw_fit(const MsdSeries& series, std::size_t t_min, std::size_t t_max) {
  return powerlaw_fit(series.sigma2, t_min, t_max);
}

std::vector<SweepRow> beta_sweep(const std::vector<double>& q_grid,
                                 const std::vector<std::size_t>& horizons, std::size_t t_min,
                                 SweepLaw law, unsigned workers) {
  if (horizons.empty()) throw DomainError("beta_sweep needs at least one horizon");
  for (double q : q_grid)
    if (!(q > 1.0)) throw DomainError("beta_sweep needs every q > 1");
  const std::size_t top = *std::max_element(horizons.begin(), horizons.end());

  std::vector<SweepRow> rows(q_grid.size() * horizons.size());
  auto run = [&](std::size_t qi) {
    const double q = q_grid[qi];
    const auto d = law == SweepLaw::Zeta ? TrappingDistribution::power_law_zeta(q)
                                         : TrappingDistribution::truncated_power_law(q, top);
    const MsdSeries series = msd_series(d, top);
    for (std::size_t ni = 0; ni < horizons.size(); ++ni) {
      const ExponentFit fit = powerlaw_fit(series, t_min, horizons[ni]);
      rows[qi * horizons.size() + ni] = {q, horizons[ni], fit.beta, fit.rms_residual};
    }
  };

  const unsigned w = std::min<unsigned>(resolve_workers(workers), static_cast<unsigned>(q_grid.size()));
  if (w <= 1) {
    for (std::size_t qi = 0; qi < q_grid.size(); ++qi) run(qi);
  } else {
    std::vector<std::thread> pool;
    for (unsigned k = 0; k < w; ++k)
      pool.emplace_back([&, k] {
        for (std::size_t qi = k; qi < q_grid.size(); qi += w) run(qi);
      });
    for (auto& th : pool) th.join();
  }
  return rows;
}

double SigmoidFit::operator()(double q) const {
  const double base = c.value_or(0.0);
  return base + 2.0 * (1.0 - base) / (1.0 + std::exp(r * std::pow(std::abs(q - 3.0), eta)));
}

namespace {

// u = (log r, log eta, c)
struct SigmoidObjective {
  const std::vector<std::pair<double, double>>& points;
  bool three;

  double operator()(const std::array<double, 3>& u) const {
    SigmoidFit f;
    f.r = std::exp(u[0]);
    f.eta = std::exp(u[1]);
    if (three) f.c = u[2];
    double ss = 0.0;
    for (const auto& [q, beta] : points) {
      const double e = f(q) - beta;
      ss += e * e;
    }
    const double v = std::sqrt(ss / static_cast<double>(points.size()));
    return std::isfinite(v) ? v : std::numeric_limits<double>::infinity();
  }
};

}  // namespace

SigmoidFit sigmoid_fit(std::vector<std::pair<double, double>> points, SigmoidModel model) {
  const bool three = model == SigmoidModel::ThreeParam;
  const std::size_t need = three ? 5 : 4;
  if (points.size() < need)
    throw DomainError("sigmoid fit needs at least " + std::to_string(need) + " points");
  std::sort(points.begin(), points.end());
  const SigmoidObjective objective{points, three};

  constexpr int kGrid = 32;
  constexpr int kGridC = 16;
  const double lr0 = std::log(1e-2), lr1 = std::log(1e2);
  const double le0 = std::log(0.1), le1 = std::log(10.0);
  const double c0 = -0.5, c1 = 0.95;
  const std::array<double, 3> spacing = {(lr1 - lr0) / (kGrid - 1), (le1 - le0) / (kGrid - 1),
                                         (c1 - c0) / (kGridC - 1)};

  std::array<double, 3> best{0.0, 0.0, 0.0};
  double best_value = std::numeric_limits<double>::infinity();
  const int nc = three ? kGridC : 1;
  for (int i = 0; i < kGrid; ++i)
    for (int j = 0; j < kGrid; ++j)
      for (int k = 0; k < nc; ++k) {
        const std::array<double, 3> u = {lr0 + i * spacing[0], le0 + j * spacing[1],
                                         three ? c0 + k * spacing[2] : 0.0};
        const double v = objective(u);
        if (v < best_value) {
          best_value = v;
          best = u;
        }
      }
  if (!std::isfinite(best_value)) throw FitDiverged("sigmoid grid search found no finite residual");
  const double grid_value = best_value;

  // Hooke-Jeeves pattern search
  const int dims = three ? 3 : 2;
  std::array<double, 3> step = spacing;
  auto explore = [&](std::array<double, 3> base, double& value) {
    for (int d = 0; d < dims; ++d) {
      for (const double dir : {1.0, -1.0}) {
        std::array<double, 3> trial = base;
        trial[d] += dir * step[d];
        const double v = objective(trial);
        if (v < value) {
          value = v;
          base = trial;
          break;
        }
      }
    }
    return base;
  };
  for (int iter = 0; iter < 200; ++iter) {
    double value = best_value;
    const std::array<double, 3> moved = explore(best, value);
    if (value < best_value) {
      // pattern move along the improving direction, kept only if it helps
      std::array<double, 3> jump = moved;
      for (int d = 0; d < dims; ++d) jump[d] += moved[d] - best[d];
      double jump_value = objective(jump);
      jump = explore(jump, jump_value);
      if (jump_value < value) {
        best = jump;
        best_value = jump_value;
      } else {
        best = moved;
        best_value = value;
      }
    } else {
      bool tiny = true;
      for (int d = 0; d < dims; ++d) {
        step[d] *= 0.5;
        tiny = tiny && step[d] < 1e-14;
      }
      if (tiny) break;
    }
  }
  if (!(best_value <= grid_value)) throw FitDiverged("sigmoid refinement left the grid optimum");

  SigmoidFit fit;
  fit.model = model;
  fit.r = std::exp(best[0]);
  fit.eta = std::exp(best[1]);
  if (three) fit.c = best[2];
  fit.rms_residual = best_value;
  return fit;
}

SlowVariationProfile slow_variation_profile(const MsdSeries& series, double beta) {
  if (!(beta > 0.0 && beta <= 1.0)) throw DomainError("slow-variation exponent must lie in (0, 1]");
  SlowVariationProfile out;
  const std::size_t n = series.horizon;
  out.h.assign(n + 1, 0.0);
  for (std::size_t t = 1; t <= n; ++t)
    out.h[t] = series.sigma2[t] / std::pow(static_cast<double>(t), beta);
  for (int k = 0; (std::size_t{2} << k) <= n; ++k) {
    const std::size_t a = std::size_t{1} << k;
    const double slope = (std::log(out.h[2 * a]) - std::log(out.h[a])) / std::log(2.0);
    out.dyadic_slopes.emplace_back(k, slope);
    out.score = std::max(out.score, std::abs(slope));
  }
  return out;
}

}  // namespace trapwalk
