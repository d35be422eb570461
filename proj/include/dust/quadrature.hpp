#pragma once

#include <functional>

namespace dust {

/// Integrand on the unit interval evaluated as f(x, 1 - x). Both arguments
/// are supplied so that factors like (1 - x)^p keep full relative precision
/// next to x = 1.
using UnitIntegrand = std::function<double(double x, double one_minus_x)>;

/// Double-exponential quadrature over (lo, hi) within [0, 1]. Algebraic and
/// logarithmic endpoint singularities are absorbed by the tanh-sinh change of
/// variables. Throws dust::Error carrying the achieved relative error when the
/// estimate misses `rel_tol` by more than a factor 100.
double integrate_unit(const UnitIntegrand& f, double lo = 0.0, double hi = 1.0,
                      double rel_tol = 1e-12);

/// Integral over (lo, infinity) for integrands decaying at infinity.
double integrate_half_line(const std::function<double(double)>& f, double lo = 0.0,
                           double rel_tol = 1e-12);

/// Integral over a finite interval [lo, hi] of a smooth integrand.
double integrate_interval(const std::function<double(double)>& f, double lo, double hi,
                          double rel_tol = 1e-12);

}  // namespace dust
