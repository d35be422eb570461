#include <doctest.h>

#include <cmath>
#include <vector>

#include "dust/random.hpp"
#include "dust/special.hpp"
#include "dust/stats.hpp"

using namespace dust;

TEST_CASE("one-sample KS") {
  std::vector<double> grid;
  for (int i = 1; i <= 100; ++i) grid.push_back((i - 0.5) / 100.0);
  CHECK(ks_distance(grid, [](double x) { return x; }) == doctest::Approx(0.005));
  CHECK(ks_distance({0.5}, [](double x) { return x; }) == doctest::Approx(0.5));
}

TEST_CASE("two-sample KS") {
  CHECK(ks_distance(std::vector<double>{1, 2, 3}, std::vector<double>{1, 2, 3}) == 0.0);
  CHECK(ks_distance(std::vector<double>{1, 2}, std::vector<double>{3, 4}) == 1.0);
  CHECK(ks_distance(std::vector<double>{1, 3}, std::vector<double>{2, 4}) == doctest::Approx(0.5));
  // affine invariance
  CHECK(ks_distance(std::vector<double>{1, 5, 2}, std::vector<double>{3, 4}) ==
        ks_distance(std::vector<double>{3, 11, 5}, std::vector<double>{7, 9}));
}

TEST_CASE("normal cdf and characteristic function") {
  CHECK(normal_cdf(0.0) == 0.5);
  CHECK(normal_cdf(1.959963984540054) == doctest::Approx(0.975).epsilon(1e-12));
  const auto cf = empirical_cf({0.0, kPi}, {1.0});
  CHECK(cf[0].real() == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("moment interval") {
  Rng rng(1);
  std::vector<double> x;
  for (int i = 0; i < 20000; ++i) x.push_back(rng.exponential());
  const auto m2 = moment_ci(x, 2);
  CHECK(m2.lower < 2.0);
  CHECK(m2.upper > 2.0);
  CHECK(m2.lower < m2.estimate);
}

TEST_CASE("total variation") {
  std::map<std::int64_t, double> a{{1, 1.0}, {2, 1.0}}, b{{1, 2.0}, {2, 2.0}}, c{{3, 5.0}};
  CHECK(tv_distance(a, b) == 0.0);
  CHECK(tv_distance(a, c) == 1.0);
  CHECK(tv_distance(a, {{1, 1.0}}) == doctest::Approx(0.5));
}

TEST_CASE("chi-square") {
  std::map<std::int64_t, double> e{{0, 50.0}, {1, 50.0}};
  const auto perfect = chi_square(e, e);
  CHECK(perfect.statistic == 0.0);
  CHECK(perfect.p_value == doctest::Approx(1.0));
  // (60-50)^2/50 * 2 = 4 on one degree of freedom: p = 0.0455
  const auto off = chi_square({{0, 60.0}, {1, 40.0}}, e);
  CHECK(off.statistic == doctest::Approx(4.0));
  CHECK(off.dof == 1);
  CHECK(off.p_value == doctest::Approx(0.0455003).epsilon(1e-5));
  const auto two = chi_square_two_sample({{0, 30.0}, {1, 70.0}}, {{0, 30.0}, {1, 70.0}});
  CHECK(two.statistic == doctest::Approx(0.0));
  // sparse cells are pooled
  const auto pooled = chi_square({{0, 100.0}, {1, 1.0}, {2, 1.0}}, {{0, 100.0}, {1, 1.0}, {2, 1.0}});
  CHECK(pooled.dof <= 1);
}

TEST_CASE("running moments merge") {
  RunningMoments a, b, all;
  for (int i = 0; i < 10; ++i) {
    const double x = i * i * 0.5;
    (i < 4 ? a : b).add(x);
    all.add(x);
  }
  a.merge(b);
  CHECK(a.count() == 10);
  CHECK(a.mean() == doctest::Approx(all.mean()));
  CHECK(a.variance() == doctest::Approx(all.variance()));
}
