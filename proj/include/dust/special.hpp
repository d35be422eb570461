#pragma once

namespace dust {

/// Hurwitz zeta function sum_{k>=0} (k + q)^{-s}, for s > 1 and q > 0.
double hurwitz_zeta(double s, double q);

double digamma(double x);
double trigamma(double x);

/// log B(a, b) for a, b > 0.
double log_beta(double a, double b);

/// B(a, b) for arguments that may be negative (non-integer), by analytic
/// continuation through the gamma function. Used for Laplace exponents of
/// beta measures with 1 < a < 2.
double signed_beta(double a, double b);

/// log C(n, k) through lgamma; valid for non-integer n as well.
double log_binomial(double n, double k);

inline constexpr double kEulerGamma = 0.57721566490153286060651209;
inline constexpr double kPi = 3.14159265358979323846264338;

}  // namespace dust
