#include <doctest.h>

#include <cmath>

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/special_functions/digamma.hpp>

#include "dust/error.hpp"
#include "dust/measure.hpp"
#include "dust/special.hpp"

using namespace dust;

namespace {

// int_0^1 f(x, 1 - x, log(1 - x)) dx, split at 1/2 so both endpoints keep full precision.
template <class F>
double unit_integral(F f) {
  boost::math::quadrature::tanh_sinh<double> ts;
  const double lo = ts.integrate(
      [&](double x) { return x <= 0.0 ? 0.0 : f(x, 1.0 - x, std::log1p(-x)); }, 0.0, 0.5, 1e-14);
  const double hi = ts.integrate(
      [&](double y) { return y <= 0.0 ? 0.0 : f(1.0 - y, y, std::log(y)); }, 0.0, 0.5, 1e-14);
  return lo + hi;
}

}  // namespace

TEST_CASE("Lebesgue rates") {
  const auto spec = MeasureSpec::lebesgue();
  for (int m = 1; m <= 30; ++m) {
    for (int k = 0; k <= m; ++k) CHECK(spec.phi_rate(m, k) == doctest::Approx(1.0 / (m + 1)));
    CHECK(spec.laplace_exponent(m) == doctest::Approx(m / (m + 1.0)));
  }
  CHECK(spec.total_mass() == doctest::Approx(1.0));
  CHECK(spec.is_finite());
  CHECK(spec.has_closed_form_rates());
}

TEST_CASE("beta(1.5, 0.5) with c = 2/pi") {
  const auto spec = MeasureSpec::beta(1.5, 0.5, 2.0 / kPi);
  // lambda_{2,1} = c B(1/2, 3/2) = 1
  CHECK(spec.lambda_rate(2, 1) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(spec.phi_rate(2, 1) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK_FALSE(spec.is_finite());
  CHECK_THROWS_AS(spec.lambda_rate(3, 0), Error);
}

TEST_CASE("beta rates and Laplace exponent against quadrature") {
  for (double a : {1.3, 2.0, 2.7}) {
    for (double b : {0.5, 1.0, 2.5}) {
      const auto spec = MeasureSpec::beta(a, b);
      const double c = std::exp(-log_beta(a, b));
      const double lam = unit_integral([&](double x, double xc, double) {
        return c * std::pow(x, a - 3.0 + 2.0) * std::pow(xc, b - 1.0 + 3.0);
      });
      CHECK(spec.lambda_rate(5, 2) == doctest::Approx(lam).epsilon(1e-9));
      for (double z : {0.5, 1.0, 7.5}) {
        const double phi = unit_integral([&](double x, double xc, double lxc) {
          return -std::expm1(z * lxc) / x * c * std::pow(x, a - 2.0) *
                 std::pow(xc, b - 1.0);
        });
        CHECK(spec.laplace_exponent(z) == doctest::Approx(phi).epsilon(1e-8));
      }
    }
  }
}

TEST_CASE("beta moments") {
  // a > 2: m = c B(a-2, b) (psi(a-2+b) - psi(b))
  {
    const double a = 2.5, b = 1.0;
    const auto ms = MeasureSpec::beta(a, b).moments();
    const double c = 1.0 / std::exp(log_beta(a, b));
    const double m = c * std::exp(log_beta(a - 2.0, b)) *
                     (boost::math::digamma(a - 2.0 + b) - boost::math::digamma(b));
    CHECK(ms.m.value == doctest::Approx(m).epsilon(1e-12));
  }
  // a = 2: m = c zeta(2, b), s2 = 2 c zeta(3, b)
  {
    const auto ms = MeasureSpec::beta(2.0, 1.0).moments();
    CHECK(ms.m.value == doctest::Approx(2.0 * kPi * kPi / 6.0).epsilon(1e-12));
    CHECK(ms.s2.value == doctest::Approx(4.0 * 1.2020569031595942854).epsilon(1e-12));
  }
  // 1 < a < 2, including a - 2 + b = 0
  for (auto [a, b] : {std::pair{1.5, 0.5}, std::pair{1.4, 2.0}}) {
    const auto ms = MeasureSpec::beta(a, b, 1.0).moments();
    const double m = unit_integral([&](double x, double xc, double lxc) {
      return -lxc / x * std::pow(x, a - 2.0) * std::pow(xc, b - 1.0);
    });
    const double s2 = unit_integral([&](double x, double xc, double lxc) {
      const double l = lxc / x;
      return l * l * std::pow(x, a - 1.0) * std::pow(xc, b - 1.0);
    });
    CHECK(ms.m.value == doctest::Approx(m).epsilon(1e-8));
    CHECK(ms.s2.value == doctest::Approx(s2).epsilon(1e-8));
    CHECK(ms.theta.infinite);
  }
}

TEST_CASE("gamma measure") {
  const auto spec = MeasureSpec::gamma_phi(2.0, 3.0);
  CHECK(spec.laplace_exponent(4.0) == doctest::Approx(2.0 * std::log1p(4.0 / 3.0)).epsilon(1e-10));
  const auto ms = spec.moments();
  CHECK(ms.m.value == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  CHECK(ms.s2.value == doctest::Approx(2.0 / 9.0).epsilon(1e-12));
  CHECK_FALSE(spec.is_finite());
}

TEST_CASE("log-singular rates against quadrature") {
  const double a = 3.0, d = 1.5;
  const auto spec = MeasureSpec::log_singular(a, d);
  const double lam = unit_integral([&](double x, double xc, double lxc) {
    return std::pow(x, a - d) * std::pow(xc, 2.0) / std::pow(-lxc / x, d);
  });
  CHECK(spec.lambda_rate(5, 2) == doctest::Approx(lam).epsilon(1e-8));
  CHECK_FALSE(dust_check(LogSingular{1.2, 1.5}).ok);
  CHECK_FALSE(dust_check(LogSingular{3.0, 0.5}).ok);
}

TEST_CASE("tail-rho measure") {
  const double rho = 2.0;
  const auto spec = MeasureSpec::tail_rho(rho);
  CHECK(spec.total_mass() == doctest::Approx(1.0));
  const double x = 0.3;
  const double t = std::pow(-std::log(x), rho);
  CHECK(spec.tail(x) == doctest::Approx(t / (1.0 + t)).epsilon(1e-12));
  // theta = int_0^inf dt / (1 + t^rho)
  CHECK(spec.moments().theta.value == doctest::Approx((kPi / rho) / std::sin(kPi / rho)).epsilon(1e-8));
  // lambda_{1,1} = int x nu(dx) = int_0^1 nu([x,1]) dx
  const double mu1 = unit_integral([&](double u, double, double) {
    const double s = std::pow(-std::log(u), rho);
    return s / (1.0 + s);
  });
  CHECK(spec.lambda_rate(1, 1) == doctest::Approx(mu1).epsilon(1e-8));
}

TEST_CASE("tabulated tail") {
  const auto spec = MeasureSpec::tabulated({0.2, 0.5, 1.0}, {1.0, 0.6, 0.0});
  CHECK(spec.total_mass() == doctest::Approx(1.0));
  CHECK(spec.tail(0.5) == doctest::Approx(0.6));
  CHECK(spec.tail(0.35) == doctest::Approx(0.8));
  // density 4/3 on (0.2, 0.5) and 1.2 on (0.5, 1): lambda_{1,1} = int x nu(dx)
  const double mu1 = 4.0 / 3.0 * (0.25 - 0.04) / 2.0 + 1.2 * (1.0 - 0.25) / 2.0;
  CHECK(spec.lambda_rate(1, 1) == doctest::Approx(mu1).epsilon(1e-10));
  CHECK_THROWS_AS(MeasureSpec::tabulated({0.5, 0.2}, {1.0, 0.5}), Error);
}

TEST_CASE("log jump tail matches the tail") {
  for (const auto& spec : {MeasureSpec::beta(2.5, 1.5), MeasureSpec::beta(1.5, 1.0), MeasureSpec::lebesgue(),
                           MeasureSpec::log_singular(3.4, 2.4), MeasureSpec::tail_rho(0.3)}) {
    for (double y : {0.05, 0.7, 3.0}) {
      CHECK(spec.log_jump_tail(y) ==
            doctest::Approx(std::log(spec.tail(-std::expm1(-y)))).epsilon(1e-7));
    }
  }
  // far tails: Lebesgue e^{-y}; log-singular int_y^inf (1 - e^{-w})^{a-2} w^{-d} dw ~ y^{1-d} / (d - 1)
  CHECK(MeasureSpec::lebesgue().log_jump_tail(400.0) == doctest::Approx(-400.0).epsilon(1e-10));
  CHECK(MeasureSpec::log_singular(4.0, 2.0).log_jump_tail(300.0) ==
        doctest::Approx(-std::log(300.0)).epsilon(1e-10));
  // beta a = 2, b = 1, c = 1: nu([1 - e^{-y}, 1]) = -log(1 - e^{-y})
  CHECK(MeasureSpec::beta(2.0, 1.0, 1.0).log_jump_tail(40.0) ==
        doctest::Approx(std::log(-std::log1p(-std::exp(-40.0)))).epsilon(1e-10));
}

TEST_CASE("parse and describe") {
  const auto spec = MeasureSpec::parse("beta:a=1.5,b=1,c=auto");
  const auto* p = std::get_if<BetaFamily>(&spec.params());
  REQUIRE(p);
  CHECK(p->c == doctest::Approx(1.5));
  for (const char* text : {"beta:a=2.5,b=0.5,c=3", "lebesgue", "logsing:a=3.4,d=2.4",
                           "tailrho:rho=0.3", "gamma:alpha=1,beta=2", "table:0.2:1;0.5:0.6;1:0"}) {
    const auto s = MeasureSpec::parse(text);
    const auto again = MeasureSpec::parse(s.describe());
    CHECK(again.describe() == s.describe());
    CHECK(again.laplace_exponent(3.0) == doctest::Approx(s.laplace_exponent(3.0)));
  }
  CHECK_THROWS_AS(MeasureSpec::parse("beta:a=1,b=1"), Error);
  CHECK_THROWS_AS(MeasureSpec::parse("cauchy"), Error);
  CHECK_THROWS_AS(MeasureSpec::parse("beta:a=x,b=1"), Error);
}

TEST_CASE("dust condition") {
  CHECK(dust_check(BetaFamily{1.01, 1.0, 1.0}).ok);
  CHECK_FALSE(dust_check(BetaFamily{1.0, 1.0, 1.0}).ok);
  CHECK_FALSE(dust_check(GammaPhi{0.0, 1.0}).ok);
  CHECK_THROWS_AS(MeasureSpec::beta(0.9, 1.0), Error);
}
