#include <cmath>

#include "doctest.h"
#include "trapwalk/distribution.hpp"
#include "trapwalk/errors.hpp"
#include "trapwalk/exact_law.hpp"
#include "trapwalk/msd.hpp"

using namespace trapwalk;

TEST_CASE("count law for deterministic traps") {
  const auto c0 = count_distribution(TrappingDistribution::deterministic(0), 5);
  REQUIRE(c0.probs.size() == 7);
  CHECK(c0.probs[6] == 1.0);
  const auto c1 = count_distribution(TrappingDistribution::deterministic(1), 5);
  CHECK(c1.probs[3] == 1.0);
  CHECK(c1.total() == 1.0);
  const auto c3 = count_distribution(TrappingDistribution::deterministic(3), 11);
  CHECK(c3.probs[11 / 4 + 1] == 1.0);
}

TEST_CASE("count law sums to one") {
  for (const char* spec : {"exp:0.5", "zeta:1.5", "zeta:1.01", "det:4"}) {
    CAPTURE(std::string(spec));
    const auto c = count_distribution(parse_spec(spec), 64);
    CHECK(std::abs(c.total() - 1.0) <= 1e-10);
    for (double p : c.probs) CHECK(p >= 0.0);
  }
}

TEST_CASE("count law against direct enumeration of renewal sums") {
  // two-point law: T in {0, 2}; N_t = max{n : S_n <= t + 1}
  const auto d = TrappingDistribution::custom({{0, 0.6}, {2, 0.4}}, std::nullopt);
  const std::size_t t = 9;
  std::vector<double> expect(t + 2, 0.0);
  for (unsigned mask = 0; mask < (1u << (t + 2)); ++mask) {
    double p = 1.0;
    std::size_t s = 0, n = 0;
    for (std::size_t k = 0; k < t + 2; ++k) {
      const bool long_trap = mask >> k & 1u;
      p *= long_trap ? 0.4 : 0.6;
      s += long_trap ? 3 : 1;
      if (s <= t + 1) n = k + 1;
    }
    expect[n] += p;
  }
  const auto c = count_distribution(d, t);
  for (std::size_t n = 0; n <= t + 1; ++n) CHECK(std::abs(c.probs[n] - expect[n]) <= 1e-14);
}

TEST_CASE("position law after one step") {
  for (const char* spec : {"exp:0.3", "zeta:2.5", "det:0", "det:2"}) {
    const auto d = parse_spec(spec);
    for (const auto& law : {position_distribution(d, 1), brute_force_distribution(d, 1)}) {
      CHECK(law.prob(1) == doctest::Approx(d.pmf(0) / 2).epsilon(1e-15));
      CHECK(law.prob(-1) == doctest::Approx(d.pmf(0) / 2).epsilon(1e-15));
      CHECK(law.prob(0) == doctest::Approx(1.0 - d.pmf(0)).epsilon(1e-15));
    }
  }
}

TEST_CASE("binomial law for the simple walk") {
  const auto law = position_distribution(TrappingDistribution::deterministic(0), 4);
  CHECK(law.prob(0) == 0.375);
  CHECK(law.prob(2) == 0.25);
  CHECK(law.prob(4) == 0.0625);
  CHECK(law.prob(1) == 0.0);
  CHECK(law.prob(5) == 0.0);
}

TEST_CASE("brute force by hand: period-three traps") {
  const auto law = brute_force_distribution(TrappingDistribution::deterministic(2), 6);
  CHECK(law.prob(-2) == 0.25);
  CHECK(law.prob(0) == 0.5);
  CHECK(law.prob(2) == 0.25);
  CHECK(law.total() == 1.0);
}

TEST_CASE("subordination and brute force agree") {
  for (const char* spec : {"exp:0.3", "zeta:1.5", "zeta:2.5", "det:2", "zetacut:1.2:10"}) {
    CAPTURE(std::string(spec));
    const auto d = parse_spec(spec);
    for (std::size_t t : {2, 7, 33, 64}) {
      CAPTURE(t);
      const auto a = position_distribution(d, t);
      const auto b = brute_force_distribution(d, t);
      double worst = 0.0;
      for (std::int64_t z = -static_cast<std::int64_t>(t); z <= static_cast<std::int64_t>(t); ++z)
        worst = std::max(worst, std::abs(a.prob(z) - b.prob(z)));
      CHECK(worst <= 1e-10);
      CHECK(std::abs(a.total() - 1.0) <= 1e-10);
      CHECK(std::abs(a.mean()) <= 1e-12);
      CHECK(std::abs(a.prob(3) - a.prob(-3)) <= 1e-15);
    }
  }
}

TEST_CASE("second moment of the exact law is the msd") {
  const auto d = TrappingDistribution::exponential(0.5);
  CHECK(std::abs(brute_force_distribution(d, 32).second_moment() - msd_series(d, 32).sigma2[32]) <= 1e-10);
  const auto z = TrappingDistribution::power_law_zeta(2.5);
  const auto s = msd_series(z, 512);
  for (std::size_t t : {100, 512}) CHECK(std::abs(position_distribution(z, t).second_moment() - s.sigma2[t]) <= 1e-9);
}

TEST_CASE("horizon limits") {
  const auto d = TrappingDistribution::exponential(0.5);
  CHECK_THROWS_AS(brute_force_distribution(d, kOracleHorizon + 1), HorizonTooLarge);
  CHECK_THROWS_AS(position_distribution(d, max_exact_horizon() + 1), HorizonTooLarge);
  CHECK_THROWS_AS(count_distribution(d, 0), DomainError);
}
