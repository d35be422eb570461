#include <doctest.h>

#include <cmath>
#include <vector>

#include "dust/error.hpp"
#include "dust/occupancy.hpp"

using namespace dust;

TEST_CASE("expected occupancy against enumeration") {
  const std::vector<double> p{0.5, 0.3, 0.2};
  const int n = 5;
  std::vector<double> counts(n + 1, 0.0);
  // all 3^5 assignments of balls to boxes
  int total = 1;
  for (int i = 0; i < n; ++i) total *= 3;
  for (int code = 0; code < total; ++code) {
    int c = code;
    double prob = 1.0;
    int box[3] = {0, 0, 0};
    for (int i = 0; i < n; ++i) {
      box[c % 3] += 1;
      prob *= p[c % 3];
      c /= 3;
    }
    for (int b : box) {
      if (b > 0) counts[b] += prob;
    }
  }
  for (int r = 1; r <= n; ++r) CHECK(occupancy_expected(p, n, r) == doctest::Approx(counts[r]).epsilon(1e-12));
}

TEST_CASE("single box") {
  CHECK(occupancy_expected({1.0}, 7, 7) == doctest::Approx(1.0));
  CHECK(occupancy_expected({1.0}, 7, 3) == 0.0);
}

TEST_CASE("geometric frequencies keep kappa_{n,1} / kappa_{2n,2} bounded below") {
  std::vector<double> p;
  for (int j = 1; j <= 60; ++j) p.push_back(std::ldexp(1.0, -j));
  double lo = 1e300;
  for (int n = 2; n <= 2048; n *= 2) lo = std::min(lo, occupancy_expected(p, n, 1) / occupancy_expected(p, 2 * n, 2));
  CHECK(lo > 0.1);
}

TEST_CASE("stick breaking") {
  JumpSampler jumps(MeasureSpec::lebesgue());
  Rng rng(1);
  const auto f = occupancy_frequencies(jumps, 1e-8, rng);
  double s = f.remainder;
  for (double x : f.p) s += x;
  CHECK(s == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(f.remainder < 1e-8);
  const auto c = occupancy_sample(jumps, 1000, rng);
  CHECK(total_marks(c) == 1000);
  CHECK_THROWS_AS(occupancy_sample(JumpSampler(MeasureSpec::beta(2.5, 1.0)), 10, rng), Error);
}
