#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "trapwalk/extended_real.hpp"

namespace trapwalk {

using Tau = std::uint64_t;

/// p(tau) = (1 - lambda) lambda^tau.
struct Exponential {
  double lambda;
};

/// p(tau) = (tau + 1)^(-q) / zeta(q).
struct PowerLawZeta {
  double q;
};

/// p(tau) = (tau + 1)^(-q) / Z for tau <= cutoff, zero beyond; Z normalizes the
/// finite support. This is the law behind the tabulated beta_N(q) curves.
struct TruncatedPowerLaw {
  double q;
  Tau cutoff;
};

/// p(tau0) = 1.
struct Deterministic {
  Tau tau0;
};

/// Finite pmf read from a `tau,prob` table.
struct Custom {
  std::string source;
};

/// Law of the per-site trapping time T on the non-negative integers.
///
/// Immutable after construction; all queries are const and thread-safe.
/// `tail(tau)` is P(T >= tau), so P(T > t) is `tail(t + 1)`.
class TrappingDistribution {
 public:
  using Variant = std::variant<Exponential, PowerLawZeta, TruncatedPowerLaw, Deterministic, Custom>;

  static TrappingDistribution exponential(double lambda);
  static TrappingDistribution power_law_zeta(double q);
  static TrappingDistribution truncated_power_law(double q, Tau cutoff);
  static TrappingDistribution deterministic(Tau tau0);
  /// Rows (tau, prob) sorted by tau; `tail_mass`, when given, is placed on a single
  /// atom at max(tau) + 1. Listed mass must reach 1 (within 1e-9) either way.
  static TrappingDistribution custom(const std::vector<std::pair<Tau, double>>& rows,
                                     std::optional<double> tail_mass,
                                     std::string source = "inline");

  const Variant& variant() const { return variant_; }

  /// Canonical textual form accepted by parse_spec.
  std::string spec() const;

  double pmf(Tau tau) const;
  /// P(T >= tau).
  double tail(Tau tau) const;
  /// P(T <= tau).
  double cdf(Tau tau) const;
  /// Sum over tau' >= tau of tau' p(tau'); requires a finite mean.
  double mean_tail(Tau tau) const;

  /// E(T^alpha) for alpha > 0.
  ExtendedReal moment(double alpha) const;
  /// E(T).
  ExtendedReal mean() const { return moment(1.0); }
  /// E(|T - E(T)|^alpha). Throws InfiniteMean when E(T) diverges.
  ExtendedReal centered_abs_moment(double alpha) const;
  /// D = 1 / (E(T) + 1). Throws InfiniteMean.
  double diffusion_coefficient() const;
  /// pi(tau) = D P(T >= tau), the stationary law of the trap countdown chain.
  double stationary(Tau tau) const;

  /// Largest tau with positive mass, if the support is finite.
  std::optional<Tau> support_max() const;

 private:
  explicit TrappingDistribution(Variant v) : variant_(std::move(v)) {}

  Variant variant_;
  // PowerLawZeta / TruncatedPowerLaw normalizer.
  double normalizer_ = 1.0;
  // Dense tables for TruncatedPowerLaw and Custom: pmf_[tau], tail_[tau] = P(T >= tau).
  std::vector<double> pmf_;
  std::vector<double> tail_;
  std::vector<double> mean_tail_;

  void build_table(std::vector<double> pmf);
};

/// Riemann-zeta-normalized moment helper: sum over k > n0 of |k - shift|^alpha k^(-q),
/// requires q - alpha > 1 and shift < n0 + 1.
double power_tail_sum(double q, double alpha, double shift, Tau n0);

/// Parses `exp:<lambda>`, `zeta:<q>`, `zetacut:<q>:<cutoff>`, `det:<tau0>`, `custom:<path>`.
TrappingDistribution parse_spec(std::string_view text);

/// Reads a `tau,prob` table with optional final `tail,<prob>` row.
TrappingDistribution load_custom_csv(const std::string& path);
TrappingDistribution parse_custom_csv(std::string_view content, const std::string& source);

}  // namespace trapwalk
