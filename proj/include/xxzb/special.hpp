// Complex log-gamma, Bernoulli numbers/polynomials and integer-order Hurwitz zeta.

#pragma once

#include "xxzb/core.hpp"

namespace xxzb {

/// log Gamma(z): recurrence up to Re z >= 10, then Stirling with ten Bernoulli
/// corrections. Equal to the principal log-Gamma modulo 2 pi i. Throws
/// NumericalError at the poles z = 0, -1, -2, ...
Complex log_gamma_complex(Complex z);

/// B_n with B_1 = -1/2, n <= 30.
double bernoulli_number(int n);

/// B_n(x) = sum_k C(n, k) B_k x^{n-k}.
Complex bernoulli_poly(int n, Complex x);

/// zeta(s, a) = sum_{n>=0} (a + n)^{-s}, integer s >= 2, real a > 0.
double hurwitz_zeta(int s, double a);

}  // namespace xxzb
