#include "trapwalk/zeta.hpp"

#include <array>
#include <cmath>
#include <string>

#include "trapwalk/errors.hpp"

namespace trapwalk {

namespace {

// B_{2j} / (2j)! for j = 1..10.
constexpr std::array<double, 10> kBernoulliOverFactorial = {
    1.0 / 6.0 / 2.0,
    -1.0 / 30.0 / 24.0,
    1.0 / 42.0 / 720.0,
    -1.0 / 30.0 / 40320.0,
    5.0 / 66.0 / 3628800.0,
    -691.0 / 2730.0 / 479001600.0,
    7.0 / 6.0 / 87178291200.0,
    -3617.0 / 510.0 / 20922789888000.0,
    43867.0 / 798.0 / 6402373705728000.0,
    -174611.0 / 330.0 / 2432902008176640000.0,
};

// Past this origin the Euler-Maclaurin remainder after ten correction terms is
// far below double resolution for every s > 1.
constexpr double kShift = 20.0;

}  // namespace

double hurwitz_zeta(double s, double a) {
  if (!(s > 1.0)) throw DomainError("hurwitz_zeta requires s > 1, got " + std::to_string(s));
  if (!(a > 0.0)) throw DomainError("hurwitz_zeta requires a > 0");

  double head = 0.0;
  double x = a;
  while (x < kShift) {
    head += std::pow(x, -s);
    x += 1.0;
  }

  const double xs = std::pow(x, -s);
  double tail = x * xs / (s - 1.0) + 0.5 * xs;

  // rising factorial (s)_{2j-1} and x^{-s-2j+1}
  double rising = s;
  double power = xs / x;
  const double inv_x2 = 1.0 / (x * x);
  for (std::size_t j = 0; j < kBernoulliOverFactorial.size(); ++j) {
    const double term = kBernoulliOverFactorial[j] * rising * power;
    tail += term;
    if (std::abs(term) < 1e-18 * tail) break;
    const double k = 2.0 * static_cast<double>(j) + 1.0;
    rising *= (s + k) * (s + k + 1.0);
    power *= inv_x2;
  }
  return head + tail;
}

double zeta(double s) {
  if (!(s > 1.0)) throw DomainError("zeta requires s > 1, got " + std::to_string(s));
  return hurwitz_zeta(s, 1.0);
}

}  // namespace trapwalk
