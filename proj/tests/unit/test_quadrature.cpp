#include <doctest.h>

#include <cmath>

#include "dust/quadrature.hpp"
#include "dust/special.hpp"

using namespace dust;

TEST_CASE("endpoint singularities on the unit interval") {
  CHECK(integrate_unit([](double x, double) { return 1.0 / std::sqrt(x); }) ==
        doctest::Approx(2.0).epsilon(1e-12));
  CHECK(integrate_unit([](double, double xc) { return 1.0 / std::sqrt(xc); }) ==
        doctest::Approx(2.0).epsilon(1e-12));
  CHECK(integrate_unit([](double x, double) { return std::log(x); }) ==
        doctest::Approx(-1.0).epsilon(1e-12));
  // B(0.3, 0.6)
  const double b = std::exp(log_beta(0.3, 0.6));
  CHECK(integrate_unit([](double x, double xc) { return std::pow(x, -0.7) * std::pow(xc, -0.4); }) ==
        doctest::Approx(b).epsilon(1e-10));
}

TEST_CASE("sub-intervals") {
  CHECK(integrate_unit([](double x, double) { return x; }, 0.25, 0.75) ==
        doctest::Approx(0.25).epsilon(1e-13));
}

TEST_CASE("half line and finite interval") {
  CHECK(integrate_half_line([](double x) { return std::exp(-x); }) ==
        doctest::Approx(1.0).epsilon(1e-12));
  CHECK(integrate_half_line([](double x) { return 1.0 / (1.0 + x * x); }, 1.0) ==
        doctest::Approx(kPi / 4.0).epsilon(1e-10));
  CHECK(integrate_interval([](double x) { return std::sin(x); }, 0.0, kPi) ==
        doctest::Approx(2.0).epsilon(1e-13));
}
