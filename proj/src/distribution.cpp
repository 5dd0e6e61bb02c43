#include "trapwalk/distribution.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "trapwalk/errors.hpp"
#include "trapwalk/zeta.hpp"

namespace trapwalk {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

std::string format_real(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

// Geometric-tailed series: sum over tau >= 1 of |tau - center|^alpha (1-lambda) lambda^tau.
// Stops once the ratio bound on the remainder drops below 1e-16 of the running sum.
double exponential_series(double lambda, double alpha, double center) {
  const double log_lambda = std::log(lambda);
  double sum = 0.0;
  for (Tau tau = 0;; ++tau) {
    const double x = static_cast<double>(tau) - center;
    const double weight = (1.0 - lambda) * std::exp(static_cast<double>(tau) * log_lambda);
    const double term = (x == 0.0) ? 0.0 : std::pow(std::abs(x), alpha) * weight;
    sum += term;
    if (x >= 1.0) {
      const double ratio = std::pow((x + 1.0) / x, alpha) * lambda;
      if (ratio < 1.0) {
        const double bound = term * ratio / (1.0 - ratio);
        if (bound <= 1e-16 * sum || weight == 0.0) break;
      }
    }
    if (tau > 100'000'000) break;
  }
  return sum;
}

}  // namespace

double power_tail_sum(double q, double alpha, double shift, Tau n0) {
  // (k - c)^a k^-q = sum_j C(a, j) (-c)^j k^(a - q - j), valid for k > c.
  const double origin = static_cast<double>(n0) + 1.0;
  double binom = 1.0;
  double cpow = 1.0;
  double sum = 0.0;
  for (int j = 0; j < 200; ++j) {
    const double term = binom * cpow * hurwitz_zeta(q - alpha + j, origin);
    sum += term;
    if (j > 0 && std::abs(term) <= 1e-18 * std::abs(sum)) break;
    binom *= (alpha - j) / (j + 1.0);
    cpow *= -shift;
    if (binom == 0.0) break;
  }
  return sum;
}

void TrappingDistribution::build_table(std::vector<double> pmf) {
  while (!pmf.empty() && pmf.back() == 0.0) pmf.pop_back();
  if (pmf.empty()) throw ValidationError("distribution has no mass");
  tail_.assign(pmf.size() + 1, 0.0);
  mean_tail_.assign(pmf.size() + 1, 0.0);
  for (std::size_t i = pmf.size(); i-- > 0;) {
    tail_[i] = tail_[i + 1] + pmf[i];
    mean_tail_[i] = mean_tail_[i + 1] + static_cast<double>(i) * pmf[i];
  }
  pmf_ = std::move(pmf);
}

TrappingDistribution TrappingDistribution::exponential(double lambda) {
  if (!(lambda > 0.0 && lambda < 1.0))
    throw ValidationError("exponential lambda must lie in (0,1), got " + format_real(lambda));
  return TrappingDistribution(Exponential{lambda});
}

TrappingDistribution TrappingDistribution::power_law_zeta(double q) {
  if (!(q > 1.0) || !std::isfinite(q))
    throw ValidationError("zeta exponent q must exceed 1, got " + format_real(q));
  TrappingDistribution d(PowerLawZeta{q});
  d.normalizer_ = zeta(q);
  return d;
}

TrappingDistribution TrappingDistribution::truncated_power_law(double q, Tau cutoff) {
  if (!(q > 0.0) || !std::isfinite(q))
    throw ValidationError("truncated power-law exponent must be positive, got " + format_real(q));
  if (cutoff > (Tau{1} << 26)) throw ValidationError("truncation cutoff too large");
  TrappingDistribution d(TruncatedPowerLaw{q, cutoff});
  std::vector<double> w(cutoff + 1);
  // accumulate smallest first
  double z = 0.0;
  for (Tau k = cutoff + 1; k >= 1; --k) {
    w[k - 1] = std::pow(static_cast<double>(k), -q);
    z += w[k - 1];
  }
  for (double& x : w) x /= z;
  d.normalizer_ = z;
  d.build_table(std::move(w));
  return d;
}

TrappingDistribution TrappingDistribution::deterministic(Tau tau0) {
  return TrappingDistribution(Deterministic{tau0});
}

TrappingDistribution TrappingDistribution::custom(const std::vector<std::pair<Tau, double>>& rows,
                                                  std::optional<double> tail_mass,
                                                  std::string source) {
  if (rows.empty()) throw ValidationError("custom distribution needs at least one row");
  std::vector<double> pmf;
  double total = 0.0;
  Tau previous = 0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto [tau, prob] = rows[i];
    if (i > 0 && tau <= previous) throw ValidationError("custom rows must be sorted by tau");
    if (!(prob >= 0.0 && prob <= 1.0) || !std::isfinite(prob))
      throw ValidationError("custom probability out of [0,1] at tau=" + std::to_string(tau));
    if (tau > (Tau{1} << 26)) throw ValidationError("custom tau too large");
    previous = tau;
    if (pmf.size() <= tau) pmf.resize(tau + 1, 0.0);
    pmf[tau] = prob;
    total += prob;
  }
  if (tail_mass) {
    const double m = *tail_mass;
    if (!(m >= 0.0 && m <= 1.0)) throw ValidationError("tail mass out of [0,1]");
    if (std::abs(total + m - 1.0) > 1e-9)
      throw ValidationError("tail row must carry the remaining mass 1 - sum(prob)");
    pmf.push_back(m);
    total += m;
  }
  if (std::abs(total - 1.0) > 1e-9)
    throw ValidationError("custom probabilities sum to " + format_real(total) +
                          "; add a final tail row for the remainder");
  for (double& p : pmf) p /= total;
  TrappingDistribution d(Custom{std::move(source)});
  d.build_table(std::move(pmf));
  return d;
}

std::string TrappingDistribution::spec() const {
  return std::visit(
      Overloaded{
          [](const Exponential& e) { return "exp:" + format_real(e.lambda); },
          [](const PowerLawZeta& z) { return "zeta:" + format_real(z.q); },
          [](const TruncatedPowerLaw& z) {
            return "zetacut:" + format_real(z.q) + ":" + std::to_string(z.cutoff);
          },
          [](const Deterministic& d) { return "det:" + std::to_string(d.tau0); },
          [](const Custom& c) { return "custom:" + c.source; },
      },
      variant_);
}

double TrappingDistribution::pmf(Tau tau) const {
  return std::visit(
      Overloaded{
          [&](const Exponential& e) {
            return (1.0 - e.lambda) * std::pow(e.lambda, static_cast<double>(tau));
          },
          [&](const PowerLawZeta& z) {
            return std::pow(static_cast<double>(tau) + 1.0, -z.q) / normalizer_;
          },
          [&](const Deterministic& d) { return tau == d.tau0 ? 1.0 : 0.0; },
          [&](const auto&) { return tau < pmf_.size() ? pmf_[tau] : 0.0; },
      },
      variant_);
}

double TrappingDistribution::tail(Tau tau) const {
  if (tau == 0) return 1.0;
  return std::visit(
      Overloaded{
          [&](const Exponential& e) { return std::pow(e.lambda, static_cast<double>(tau)); },
          [&](const PowerLawZeta& z) {
            return hurwitz_zeta(z.q, static_cast<double>(tau) + 1.0) / normalizer_;
          },
          [&](const Deterministic& d) { return tau <= d.tau0 ? 1.0 : 0.0; },
          [&](const auto&) { return tau < tail_.size() ? tail_[tau] : 0.0; },
      },
      variant_);
}

double TrappingDistribution::cdf(Tau tau) const {
  if (tau == 0) return pmf(0);
  return std::visit(
      Overloaded{
          [&](const Exponential& e) {
            return -std::expm1((static_cast<double>(tau) + 1.0) * std::log(e.lambda));
          },
          [&](const Deterministic& d) { return tau >= d.tau0 ? 1.0 : 0.0; },
          [&](const auto&) { return 1.0 - tail(tau + 1); },
      },
      variant_);
}

double TrappingDistribution::mean_tail(Tau tau) const {
  return std::visit(
      Overloaded{
          [&](const Exponential& e) {
            const double l = e.lambda;
            return std::pow(l, static_cast<double>(tau)) * (static_cast<double>(tau) + l / (1.0 - l));
          },
          [&](const PowerLawZeta& z) -> double {
            if (z.q <= 2.0) throw InfiniteMean("mean_tail: E(T) is infinite for q <= 2");
            const double a = static_cast<double>(tau) + 1.0;
            return (hurwitz_zeta(z.q - 1.0, a) - hurwitz_zeta(z.q, a)) / normalizer_;
          },
          [&](const Deterministic& d) {
            return tau <= d.tau0 ? static_cast<double>(d.tau0) : 0.0;
          },
          [&](const auto&) { return tau < mean_tail_.size() ? mean_tail_[tau] : 0.0; },
      },
      variant_);
}

ExtendedReal TrappingDistribution::moment(double alpha) const {
  if (!(alpha > 0.0)) throw DomainError("moment order must be positive");
  return std::visit(
      Overloaded{
          [&](const Exponential& e) { return ExtendedReal(exponential_series(e.lambda, alpha, 0.0)); },
          [&](const PowerLawZeta& z) {
            if (alpha >= z.q - 1.0) return ExtendedReal::infinite();
            constexpr Tau n0 = 64;
            double head = 0.0;
            for (Tau k = 2; k <= n0; ++k) {
              const double kd = static_cast<double>(k);
              head += std::pow(kd - 1.0, alpha) * std::pow(kd, -z.q);
            }
            return ExtendedReal((head + power_tail_sum(z.q, alpha, 1.0, n0)) / normalizer_);
          },
          [&](const Deterministic& d) {
            return ExtendedReal(std::pow(static_cast<double>(d.tau0), alpha));
          },
          [&](const auto&) {
            double s = 0.0;
            for (std::size_t k = pmf_.size(); k-- > 1;)
              s += std::pow(static_cast<double>(k), alpha) * pmf_[k];
            return ExtendedReal(s);
          },
      },
      variant_);
}

ExtendedReal TrappingDistribution::centered_abs_moment(double alpha) const {
  if (!(alpha > 0.0)) throw DomainError("moment order must be positive");
  const ExtendedReal m = mean();
  if (m.is_infinite()) throw InfiniteMean("centered moment needs a finite E(T)");
  const double mu = m.value();
  return std::visit(
      Overloaded{
          [&](const Exponential& e) { return ExtendedReal(exponential_series(e.lambda, alpha, mu)); },
          [&](const PowerLawZeta& z) {
            if (alpha >= z.q - 1.0) return ExtendedReal::infinite();
            const double shift = mu + 1.0;
            const Tau n0 = std::max<Tau>(64, static_cast<Tau>(std::ceil(64.0 * shift)));
            double head = 0.0;
            for (Tau k = 1; k <= n0; ++k) {
              const double kd = static_cast<double>(k);
              const double x = std::abs(kd - shift);
              if (x > 0.0) head += std::pow(x, alpha) * std::pow(kd, -z.q);
            }
            return ExtendedReal((head + power_tail_sum(z.q, alpha, shift, n0)) / normalizer_);
          },
          [&](const Deterministic&) { return ExtendedReal(0.0); },
          [&](const auto&) {
            double s = 0.0;
            for (std::size_t k = 0; k < pmf_.size(); ++k) {
              const double x = std::abs(static_cast<double>(k) - mu);
              if (x > 0.0) s += std::pow(x, alpha) * pmf_[k];
            }
            return ExtendedReal(s);
          },
      },
      variant_);
}

double TrappingDistribution::diffusion_coefficient() const {
  const ExtendedReal m = mean();
  if (m.is_infinite()) throw InfiniteMean("diffusion coefficient needs a finite E(T)");
  if (const auto* z = std::get_if<PowerLawZeta>(&variant_)) return normalizer_ / zeta(z->q - 1.0);
  return 1.0 / (m.value() + 1.0);
}

double TrappingDistribution::stationary(Tau tau) const {
  return diffusion_coefficient() * tail(tau);
}

std::optional<Tau> TrappingDistribution::support_max() const {
  return std::visit(
      Overloaded{
          [](const Exponential&) -> std::optional<Tau> { return std::nullopt; },
          [](const PowerLawZeta&) -> std::optional<Tau> { return std::nullopt; },
          [](const Deterministic& d) -> std::optional<Tau> { return d.tau0; },
          [&](const auto&) -> std::optional<Tau> { return pmf_.size() - 1; },
      },
      variant_);
}

namespace {

double parse_real(std::string_view text, std::size_t offset) {
  double v = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last || text.empty())
    throw ParseError("expected a real number, got '" + std::string(text) + "'", offset);
  return v;
}

Tau parse_uint(std::string_view text, std::size_t offset) {
  Tau v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty())
    throw ParseError("expected a non-negative integer, got '" + std::string(text) + "'", offset);
  return v;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

TrappingDistribution parse_spec(std::string_view text) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos)
    throw ParseError("distribution spec must look like kind:args", text.size());
  const std::string_view kind = text.substr(0, colon);
  const std::string_view args = text.substr(colon + 1);
  const std::size_t at = colon + 1;
  if (kind == "exp") return TrappingDistribution::exponential(parse_real(args, at));
  if (kind == "zeta") return TrappingDistribution::power_law_zeta(parse_real(args, at));
  if (kind == "zetacut") {
    const auto sep = args.find(':');
    if (sep == std::string_view::npos) throw ParseError("zetacut needs <q>:<cutoff>", text.size());
    return TrappingDistribution::truncated_power_law(parse_real(args.substr(0, sep), at),
                                                     parse_uint(args.substr(sep + 1), at + sep + 1));
  }
  if (kind == "det") return TrappingDistribution::deterministic(parse_uint(args, at));
  if (kind == "custom") {
    if (args.empty()) throw ParseError("custom needs a file path", at);
    return load_custom_csv(std::string(args));
  }
  throw ParseError("unknown distribution kind '" + std::string(kind) + "'", 0);
}

TrappingDistribution parse_custom_csv(std::string_view content, const std::string& source) {
  std::vector<std::pair<Tau, double>> rows;
  std::optional<double> tail_mass;
  std::size_t line_start = 0;
  bool header = false;
  while (line_start <= content.size()) {
    auto line_end = content.find('\n', line_start);
    if (line_end == std::string_view::npos) line_end = content.size();
    const std::string_view line = trim(content.substr(line_start, line_end - line_start));
    const std::size_t offset = line_start;
    line_start = line_end + 1;
    if (line.empty()) continue;
    if (!header) {
      if (line != "tau,prob") throw ParseError("custom CSV header must be 'tau,prob'", offset);
      header = true;
      continue;
    }
    if (tail_mass) throw ParseError("the tail row must be the last row", offset);
    const auto comma = line.find(',');
    if (comma == std::string_view::npos) throw ParseError("expected two columns", offset);
    const std::string_view first = trim(line.substr(0, comma));
    const double prob = parse_real(trim(line.substr(comma + 1)), offset + comma + 1);
    if (first == "tail") {
      tail_mass = prob;
    } else {
      rows.emplace_back(parse_uint(first, offset), prob);
    }
  }
  if (!header) throw ParseError("custom CSV is empty", 0);
  return TrappingDistribution::custom(rows, tail_mass, source);
}

TrappingDistribution load_custom_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open custom distribution file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_custom_csv(buf.str(), path);
}

}  // namespace trapwalk
