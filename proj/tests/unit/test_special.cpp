#include <doctest.h>

#include <cmath>

#include "dust/error.hpp"
#include "dust/special.hpp"

using namespace dust;

TEST_CASE("digamma and trigamma at half-integers") {
  CHECK(digamma(1.0) == doctest::Approx(-kEulerGamma).epsilon(1e-14));
  CHECK(digamma(0.5) == doctest::Approx(-kEulerGamma - 2.0 * std::log(2.0)).epsilon(1e-14));
  CHECK(trigamma(1.0) == doctest::Approx(kPi * kPi / 6.0).epsilon(1e-14));
  CHECK(trigamma(0.5) == doctest::Approx(kPi * kPi / 2.0).epsilon(1e-14));
}

TEST_CASE("digamma recurrence") {
  for (double x : {0.3, 1.7, 4.2, 25.0}) {
    CHECK(digamma(x + 1.0) - digamma(x) == doctest::Approx(1.0 / x).epsilon(1e-12));
    CHECK(trigamma(x) - trigamma(x + 1.0) == doctest::Approx(1.0 / (x * x)).epsilon(1e-12));
  }
}

TEST_CASE("hurwitz zeta") {
  CHECK(hurwitz_zeta(2.0, 1.0) == doctest::Approx(kPi * kPi / 6.0).epsilon(1e-14));
  CHECK(hurwitz_zeta(3.0, 1.0) == doctest::Approx(1.2020569031595942854).epsilon(1e-14));
  for (double q : {0.25, 1.5, 7.0}) {
    const double diff = hurwitz_zeta(2.5, q) - hurwitz_zeta(2.5, q + 1.0);
    CHECK(diff == doctest::Approx(std::pow(q, -2.5)).epsilon(1e-11));
  }
  // direct partial sum with an integral tail estimate
  double s = 0.0;
  for (int k = 0; k < 100000; ++k) s += std::pow(k + 0.7, -3.0);
  s += 0.5 * std::pow(100000.7, -2.0);
  CHECK(hurwitz_zeta(3.0, 0.7) == doctest::Approx(s).epsilon(1e-12));
}

TEST_CASE("log_beta and signed_beta") {
  CHECK(log_beta(2.0, 3.0) == doctest::Approx(std::log(1.0 / 12.0)).epsilon(1e-14));
  CHECK(signed_beta(-0.5, 1.0) == doctest::Approx(-2.0).epsilon(1e-14));
  CHECK(signed_beta(-0.5, 1.5) == doctest::Approx(-kPi).epsilon(1e-14));
  CHECK(signed_beta(-0.5, 0.5) == 0.0);
  CHECK_THROWS_AS(signed_beta(-1.0, 2.5), Error);
  CHECK_THROWS_AS(log_beta(-1.0, 2.0), Error);
}

TEST_CASE("log_binomial") {
  CHECK(log_binomial(10.0, 3.0) == doctest::Approx(std::log(120.0)).epsilon(1e-14));
  CHECK(log_binomial(7.0, 0.0) == doctest::Approx(0.0));
}
