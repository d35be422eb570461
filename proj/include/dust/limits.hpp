#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <string>

#include "dust/measure.hpp"

namespace dust {

/// Slowly varying functions available to the limit formulas.
struct SlowFunction {
  enum class Kind {
    Constant,     // scale
    LogPower,     // scale * log(x)^power
    IteratedLog,  // scale * log(log(x))^power
    ExpLogPower,  // scale * exp(log(x)^power), 0 < power < 1
  };
  Kind kind = Kind::Constant;
  double scale = 1.0;
  double power = 0.0;

  double operator()(double x) const;
  std::string describe() const;
};

enum class Reference { StandardNormal, Stable, ExpFunctional, CompoundPoisson };

struct NormConstants {
  std::string regime;
  std::int64_t n = 0;
  double a_n = 1.0;
  double b_n = 0.0;
  Reference reference = Reference::StandardNormal;
  double stable_index = 0.0;  // for Reference::Stable
};

std::string reference_name(Reference r);

/// b_n = log n / m, a_n = sqrt(s2 log n / m^3), reference N(0,1).
NormConstants tau_normal_constants(const MomentSet& moments, std::int64_t n);

/// c_k solving k L(c) / c^beta = 1 by bisection.
double stable_scale(double beta, const SlowFunction& L, double k);

/// b_n = log n / m, a_n = m^{-(beta+1)/beta} c_{floor(log n)}.
NormConstants tau_stable_constants(double beta, const SlowFunction& L, double m, std::int64_t n);

/// b_n = (1/m) int_0^n Phi(z)/z dz, a_n = sqrt((s2/m^3) int_0^n Phi(z)^2/z dz).
NormConstants collisions_slowvar_constants(const std::function<double(double)>& phi,
                                           const MomentSet& moments, std::int64_t n);

/// Gamma(2 - gamma) n^gamma ell(n) for 0 < gamma < 1.
double collisions_regvar_scale(double gamma, const SlowFunction& ell, double n);

/// exp{-|z|^beta Gamma(1-beta) (cos(pi beta/2) + i sin(pi beta/2) sgn z)}, 1 < beta < 2.
std::complex<double> stable_cf(double beta, double z);

struct LimitRegime {
  enum class Tau { Normal, Stable } tau = Tau::Normal;
  enum class Collisions { CompoundPoisson, SlowVar, RegVar } collisions =
      Collisions::CompoundPoisson;
  double stable_index = 0.0;  // beta for Tau::Stable
  SlowFunction stable_L;
  double gamma = 0.0;  // regular-variation index for Collisions::RegVar
  SlowFunction ell;

  std::string describe() const;
};

/// Regime of the absorption time and collision count for the families the
/// limit theory covers; throws "manual regime required" otherwise.
LimitRegime classify(const MeasureSpec& spec);

}  // namespace dust
