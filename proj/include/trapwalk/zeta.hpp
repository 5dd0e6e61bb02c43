#pragma once

namespace trapwalk {

/// Hurwitz zeta: sum over k >= 0 of (k + a)^(-s), for s > 1 and a > 0.
/// Direct summation up to a shifted origin, then an Euler-Maclaurin tail.
double hurwitz_zeta(double s, double a);

/// Riemann zeta for s > 1; absolute error below 1e-13. Throws DomainError otherwise.
double zeta(double s);

}  // namespace trapwalk
