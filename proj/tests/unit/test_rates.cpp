#include <doctest.h>

#include <cmath>
#include <map>
#include <numeric>

#include "dust/error.hpp"
#include "dust/rates.hpp"
#include "dust/stats.hpp"

using namespace dust;

namespace {

// Chi-square p-value of sampled merge sizes against phi_{m,k} / Phi(m) taken
// straight from the measure.
double merge_size_p_value(const RateTable& rates, std::int64_t m, int reps, std::uint64_t seed) {
  const MeasureSpec& spec = rates.spec();
  double total = 0.0;
  std::map<std::int64_t, double> expected, observed;
  for (std::int64_t k = 1; k <= m; ++k) total += spec.phi_rate(m, k);
  for (std::int64_t k = 1; k <= m; ++k) expected[k] = spec.phi_rate(m, k) / total * reps;
  Rng rng(seed);
  for (int i = 0; i < reps; ++i) observed[rates.sample_merge_size(m, rng)] += 1.0;
  return chi_square(observed, expected).p_value;
}

}  // namespace

TEST_CASE("decrement distribution") {
  RateTable leb(MeasureSpec::lebesgue());
  const auto d = leb.decrement_distribution(9);
  REQUIRE(d.size() == 9);
  for (double p : d) CHECK(p == doctest::Approx(1.0 / 9.0));
  CHECK(leb.total_rate(9) == doctest::Approx(0.9));
  CHECK(leb.null_rate(9) == doctest::Approx(0.1));

  RateTable beta(MeasureSpec::beta(1.5, 1.0));
  const auto e = beta.decrement_distribution(2);
  // lambda_{2,1} = c B(1/2, 2), lambda_{2,2} = c B(3/2, 1): phi = (8/3 c, 2/3 c)
  CHECK(e[0] == doctest::Approx(0.8));
  CHECK(e[1] == doctest::Approx(0.2));
  CHECK(std::accumulate(e.begin(), e.end(), 0.0) == doctest::Approx(1.0));
  CHECK_THROWS_AS(beta.null_rate(3), Error);
}

TEST_CASE("memoized rows sample the merge-size law") {
  for (const auto& spec : {MeasureSpec::beta(1.5, 1.0), MeasureSpec::beta(2.5, 0.5),
                           MeasureSpec::log_singular(3.4, 2.4), MeasureSpec::gamma_phi(1.0, 1.0)}) {
    RateTable rates(spec);
    CHECK(merge_size_p_value(rates, 12, 40000, 3) > 1e-4);
  }
}

TEST_CASE("sequential sampler above the row cap") {
  for (const auto& spec : {MeasureSpec::beta(1.5, 1.0), MeasureSpec::beta(2.0, 2.0),
                           MeasureSpec::beta(3.5, 0.5), MeasureSpec::lebesgue()}) {
    RateTable rates(spec, 4);
    CHECK(merge_size_p_value(rates, 30, 40000, 5) > 1e-4);
    rates.prepare(40);
    CHECK(merge_size_p_value(rates, 40, 40000, 6) > 1e-4);
  }
}

TEST_CASE("overflow rows above the cap") {
  RateTable rates(MeasureSpec::log_singular(3.4, 2.4), 4);
  CHECK(merge_size_p_value(rates, 15, 40000, 7) > 1e-4);
}

TEST_CASE("large m sampling stays in range") {
  RateTable rates(MeasureSpec::beta(1.5, 1.0));
  rates.prepare(100000);
  Rng rng(1);
  double mean = 0.0;
  for (int i = 0; i < 2000; ++i) {
    const auto k = rates.sample_merge_size(100000, rng);
    REQUIRE(k >= 1);
    REQUIRE(k <= 100000);
    mean += static_cast<double>(k);
  }
  CHECK(mean / 2000.0 > 1.0);
}
