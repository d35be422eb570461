#include <doctest.h>

#include <cmath>

#include "dust/coalescent.hpp"
#include "dust/error.hpp"
#include "dust/recursion.hpp"

using namespace dust;

TEST_CASE("constant solution") {
  RateTable rates(MeasureSpec::beta(1.5, 1.0));
  RecursionProblem p{decrement_rows(rates), [](std::int64_t) { return 0.0; }, 3.0, {}};
  const auto sol = solve_recursion(p, 60);
  REQUIRE(sol.a.size() == 61);
  for (double v : sol.a) CHECK(v == doctest::Approx(3.0).epsilon(1e-13));
  CHECK(sol.comparison.empty());
}

TEST_CASE("visit probability of state 1") {
  RateTable rates(MeasureSpec::beta(2.5, 1.0));
  RecursionProblem p{decrement_rows(rates), [](std::int64_t n) { return n == 1 ? 1.0 : 0.0; },
                     0.0, {}};
  const auto sol = solve_recursion(p, 40);
  for (std::int64_t n = 1; n <= 40; ++n) {
    CHECK(sol.a[static_cast<std::size_t>(n)] ==
          doctest::Approx(visit_probabilities(rates, n)[1]).epsilon(1e-12));
  }
}

TEST_CASE("harmonic numbers and the comparison sequence") {
  // p_{n,n-1} = 1, r_n = 1/n: a_n = H_n
  RecursionProblem p{[](std::int64_t n, std::int64_t k) { return k == n - 1 ? 1.0 : 0.0; },
                     [](std::int64_t n) { return 1.0 / static_cast<double>(n); }, 0.0,
                     [](std::int64_t) { return 1.0; }};
  const auto sol = solve_recursion(p, 50);
  double h = 0.0, c = 0.0;
  for (int n = 1; n <= 50; ++n) {
    h += 1.0 / n;
    c += 1.0 / (static_cast<double>(n) * n);
    CHECK(sol.a[n] == doctest::Approx(h).epsilon(1e-14));
    CHECK(sol.comparison[n] == doctest::Approx(c).epsilon(1e-14));
  }
}

TEST_CASE("self-loop rows are rescaled, full self-loops rejected") {
  RecursionProblem p{[](std::int64_t n, std::int64_t k) {
                       return k == n ? 0.5 : (k == n - 1 ? 0.5 : 0.0);
                     },
                     [](std::int64_t) { return 1.0; }, 0.0, {}};
  const auto sol = solve_recursion(p, 10);
  CHECK(sol.a[10] == doctest::Approx(20.0));
  RecursionProblem q{[](std::int64_t n, std::int64_t k) { return k == n ? 1.0 : 0.0; },
                     [](std::int64_t) { return 1.0; }, 0.0, {}};
  CHECK_THROWS_AS(solve_recursion(q, 5), Error);
}
