#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <string>

#include "doctest.h"
#include "trapwalk/distribution.hpp"
#include "trapwalk/errors.hpp"
#include "trapwalk/zeta.hpp"

using namespace trapwalk;

namespace {

std::vector<TrappingDistribution> zoo() {
  return {TrappingDistribution::exponential(0.5),
          TrappingDistribution::exponential(0.9),
          TrappingDistribution::power_law_zeta(1.01),
          TrappingDistribution::power_law_zeta(1.5),
          TrappingDistribution::power_law_zeta(2.5),
          TrappingDistribution::power_law_zeta(3.5),
          TrappingDistribution::truncated_power_law(1.5, 1000),
          TrappingDistribution::deterministic(0),
          TrappingDistribution::deterministic(3),
          TrappingDistribution::custom({{0, 0.2}, {2, 0.5}, {7, 0.3}}, std::nullopt)};
}

}  // namespace

TEST_CASE("pmf spot values") {
  CHECK(TrappingDistribution::exponential(0.5).pmf(0) == 0.5);
  const auto d3 = TrappingDistribution::deterministic(3);
  CHECK(d3.pmf(3) == 1.0);
  CHECK(d3.pmf(2) == 0.0);
  CHECK(std::abs(TrappingDistribution::power_law_zeta(2.0).pmf(1) - 0.151981775463506657) <= 1e-15);
}

TEST_CASE("tail spot values") {
  CHECK(std::abs(TrappingDistribution::exponential(0.5).tail(3) - 0.125) <= 1e-16);
  const auto z = TrappingDistribution::power_law_zeta(1.5);
  CHECK(std::abs(z.tail(10) - 0.236198391494687839) <= 1e-14);
  double head = 0.0;
  for (Tau t = 0; t < 10; ++t) head += z.pmf(t);
  CHECK(std::abs(z.tail(10) - (1.0 - head)) <= 1e-14);
}

TEST_CASE("tail starts at one and telescopes into the pmf") {
  for (const auto& d : zoo()) {
    CAPTURE(d.spec());
    CHECK(d.tail(0) == 1.0);
    double worst = 0.0;
    for (Tau t = 0; t <= 10000; ++t) worst = std::max(worst, std::abs(d.tail(t) - d.tail(t + 1) - d.pmf(t)));
    CHECK(worst <= 1e-12);
    CHECK(std::abs(d.cdf(5) - (1.0 - d.tail(6))) <= 1e-15);
  }
}

TEST_CASE("moments: closed forms and divergence") {
  CHECK(TrappingDistribution::exponential(0.5).moment(1.0).value() == doctest::Approx(1.0).epsilon(1e-12));
  const auto z25 = TrappingDistribution::power_law_zeta(2.5);
  CHECK(std::abs(z25.moment(1.0).value() - (zeta(1.5) / zeta(2.5) - 1.0)) <= 1e-10);
  CHECK(z25.moment(2.0).is_infinite());
  CHECK(z25.moment(1.5).is_infinite());
  CHECK(std::abs(z25.moment(0.5).value() - 0.395279962103689744) <= 1e-10);
  const auto z3 = TrappingDistribution::power_law_zeta(3.0);
  CHECK(std::abs(z3.moment(1.2).value() - 0.498544068047709920) <= 1e-10);
  CHECK(TrappingDistribution::power_law_zeta(1.5).mean().is_infinite());
  CHECK(TrappingDistribution::deterministic(3).moment(2.0).value() == 9.0);
  CHECK_THROWS_AS(TrappingDistribution::exponential(0.5).moment(0.0), DomainError);
}

TEST_CASE("moments are monotone in the exponent up to one") {
  for (const auto& d : zoo()) {
    CAPTURE(d.spec());
    ExtendedReal prev(0.0);
    for (double a = 0.25; a <= 3.0; a += 0.25) {
      const ExtendedReal m = d.moment(a);
      if (m.is_infinite()) break;
      CHECK(prev.value() <= m.value() + 1.0);
      prev = m;
    }
  }
}

TEST_CASE("centered absolute moments") {
  CHECK(TrappingDistribution::deterministic(3).centered_abs_moment(2.0).value() == 0.0);
  CHECK(std::abs(TrappingDistribution::exponential(0.5).centered_abs_moment(2.0).value() - 2.0) <= 1e-10);
  const auto z = TrappingDistribution::power_law_zeta(3.5);
  CHECK(std::abs(z.mean().value() - 0.190598149361769493) <= 1e-12);
  CHECK(std::abs(z.centered_abs_moment(2.0).value() - 0.901014101251363065) <= 1e-8);
  CHECK(std::abs(z.centered_abs_moment(1.5).value() - 0.369323563829453186) <= 1e-8);
  CHECK_THROWS_AS(TrappingDistribution::power_law_zeta(1.5).centered_abs_moment(1.5), InfiniteMean);
}

TEST_CASE("diffusion coefficient") {
  CHECK(TrappingDistribution::exponential(0.5).diffusion_coefficient() == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(TrappingDistribution::deterministic(0).diffusion_coefficient() == 1.0);
  CHECK(std::abs(TrappingDistribution::power_law_zeta(3.0).diffusion_coefficient() - 0.730762969401438499) <= 1e-12);
  CHECK(std::abs(TrappingDistribution::power_law_zeta(3.0).diffusion_coefficient() - zeta(3.0) / zeta(2.0)) <= 1e-13);
  CHECK_THROWS_AS(TrappingDistribution::power_law_zeta(2.0).diffusion_coefficient(), InfiniteMean);
}

TEST_CASE("stationary law") {
  const auto e = TrappingDistribution::exponential(0.3);
  for (Tau t = 0; t < 20; ++t) CHECK(std::abs(e.stationary(t) - e.pmf(t)) <= 1e-15);
  const auto d1 = TrappingDistribution::deterministic(1);
  CHECK(d1.stationary(0) == 0.5);
  CHECK(d1.stationary(1) == 0.5);
  CHECK(d1.stationary(2) == 0.0);
  for (const auto& d : zoo()) {
    if (d.mean().is_infinite()) {
      CHECK_THROWS_AS(d.stationary(0), InfiniteMean);
      continue;
    }
    CAPTURE(d.spec());
    double worst = 0.0;
    for (Tau t = 0; t <= 1000; ++t)
      worst = std::max(worst, std::abs(d.stationary(t) - (d.stationary(0) * d.pmf(t) + d.stationary(t + 1))));
    CHECK(worst <= 1e-12);
  }
  double total = 0.0;
  const auto z = TrappingDistribution::power_law_zeta(3.5);
  for (Tau t = 0; t < 2000000; ++t) total += z.stationary(t);
  CHECK(std::abs(total - 1.0) <= 1e-5);  // remaining mass ~ D * E(T; T > 2e6)
}

TEST_CASE("parse_spec grammar") {
  CHECK(parse_spec("exp:0.5").spec() == "exp:0.5");
  CHECK(std::get<PowerLawZeta>(parse_spec("zeta:2.01").variant()).q == 2.01);
  CHECK(std::get<Deterministic>(parse_spec("det:4").variant()).tau0 == 4);
  const auto cut = std::get<TruncatedPowerLaw>(parse_spec("zetacut:1.5:1024").variant());
  CHECK(cut.q == 1.5);
  CHECK(cut.cutoff == 1024);
  CHECK_THROWS_AS(parse_spec("exp:1.5"), ValidationError);
  CHECK_THROWS_AS(parse_spec("zeta:1"), ValidationError);
  CHECK_THROWS_AS(parse_spec("gauss:1"), ParseError);
  CHECK_THROWS_AS(parse_spec("exp:"), ParseError);
  CHECK_THROWS_AS(parse_spec("exp:0.5x"), ParseError);
  try {
    parse_spec("det:-1");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.position() == 4);
  }
}

TEST_CASE("custom CSV tables") {
  const auto d = parse_custom_csv("tau,prob\n0,0.25\n1,0.25\n3,0.5\n", "inline");
  CHECK(d.pmf(0) == 0.25);
  CHECK(d.pmf(2) == 0.0);
  CHECK(d.pmf(3) == 0.5);
  CHECK(d.support_max() == Tau{3});
  CHECK(std::abs(d.mean().value() - 1.75) <= 1e-15);

  const auto t = parse_custom_csv("tau,prob\n0,0.5\n2,0.25\ntail,0.25\n", "inline");
  CHECK(t.pmf(3) == 0.25);
  CHECK(t.support_max() == Tau{3});

  CHECK_THROWS_AS(parse_custom_csv("tau,prob\n0,0.5\n2,0.25\n", "x"), ValidationError);
  CHECK_THROWS_AS(parse_custom_csv("tau,prob\n0,0.5\n2,0.25\ntail,0.3\n", "x"), ValidationError);
  CHECK_THROWS_AS(parse_custom_csv("tau,prob\n2,0.5\n1,0.5\n", "x"), ValidationError);
  CHECK_THROWS_AS(parse_custom_csv("tau,prob\n0,-0.5\n1,1.5\n", "x"), ValidationError);
  CHECK_THROWS_AS(parse_custom_csv("t,p\n0,1\n", "x"), ParseError);
  CHECK_THROWS_AS(parse_custom_csv("tau,prob\n0,abc\n", "x"), ParseError);

  const std::string path = "trapwalk_custom_test.csv";
  { std::ofstream(path) << "tau,prob\n0,0.5\n1,0.5\n"; }
  const auto f = parse_spec("custom:" + path);
  CHECK(f.pmf(1) == 0.5);
  std::remove(path.c_str());
  CHECK_THROWS_AS(parse_spec("custom:/nonexistent/file.csv"), IoError);
}

TEST_CASE("ExtendedReal ordering") {
  const auto inf = ExtendedReal::infinite();
  CHECK(inf > ExtendedReal(1e300));
  CHECK(ExtendedReal(2.0) < ExtendedReal(3.0));
  CHECK(inf == ExtendedReal::infinite());
  CHECK(std::isinf(inf.value()));
}
