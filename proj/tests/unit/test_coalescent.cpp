#include <doctest.h>

#include <cmath>
#include <vector>

#include "dust/coalescent.hpp"
#include "dust/stats.hpp"

using namespace dust;

namespace {

// E[tau_n] and E[X_n] of the block-counting chain m -> m - k + 1 at rate phi_{m,k}, k >= 2.
struct BlockMeans {
  std::vector<double> tau, X;
};

BlockMeans block_counting_means(const MeasureSpec& spec, int n) {
  BlockMeans out{std::vector<double>(n + 1, 0.0), std::vector<double>(n + 1, 0.0)};
  for (int m = 2; m <= n; ++m) {
    double rate = 0.0, et = 0.0, ex = 0.0;
    for (int k = 2; k <= m; ++k) {
      const double r = spec.phi_rate(m, k);
      rate += r;
      et += r * out.tau[m - k + 1];
      ex += r * out.X[m - k + 1];
    }
    out.tau[m] = (1.0 + et) / rate;
    out.X[m] = (rate + ex) / rate;
  }
  return out;
}

// E[tau*_n] of the primary chain m -> m - k at rate phi_{m,k}, k >= 1.
double dust_mean(const MeasureSpec& spec, int n) {
  std::vector<double> e(n + 1, 0.0);
  for (int m = 1; m <= n; ++m) {
    double rate = 0.0, acc = 0.0;
    for (int k = 1; k <= m; ++k) {
      const double r = spec.phi_rate(m, k);
      rate += r;
      acc += r * e[m - k];
    }
    e[m] = (1.0 + acc) / rate;
  }
  return e[n];
}

}  // namespace

TEST_CASE("n = 1 is absorbed at time 0") {
  RateTable rates(MeasureSpec::lebesgue());
  Rng rng(1);
  const RunStats st = simulate_full(rates, 1, rng);
  CHECK(st.tau == 0.0);
  CHECK(st.tau_star == 0.0);
  CHECK(st.X == 0);
  CHECK(st.K == 0);
  CHECK(st.D == 0);
  CHECK(st.R == 1);
}

TEST_CASE("accounting identities and ordering") {
  for (const auto& spec : {MeasureSpec::lebesgue(), MeasureSpec::beta(1.5, 1.0),
                           MeasureSpec::gamma_phi(1.0, 1.0)}) {
    RateTable rates(spec);
    Rng rng(2);
    for (int i = 0; i < 500; ++i) {
      const RunStats st = simulate_full(rates, 60, rng);
      REQUIRE(st.X == st.X_star + st.D);
      REQUIRE(st.X_star == st.K - st.K1());
      REQUIRE(total_marks(st.K_r) == 60);
      REQUIRE(st.tau_star <= st.tau);
      REQUIRE(st.R >= 1);
    }
  }
}

TEST_CASE("full simulator matches the block-counting means") {
  for (const auto& spec : {MeasureSpec::lebesgue(), MeasureSpec::beta(1.5, 1.0),
                           MeasureSpec::beta(2.5, 0.5)}) {
    const int n = 12;
    const auto exact = block_counting_means(spec, n);
    RateTable rates(spec);
    Rng rng(3);
    RunningMoments tau, X;
    for (int i = 0; i < 40000; ++i) {
      const RunStats st = simulate_full(rates, n, rng);
      tau.add(st.tau);
      X.add(static_cast<double>(st.X));
    }
    CHECK(std::fabs(tau.mean() - exact.tau[n]) < 4.0 * tau.std_error());
    CHECK(std::fabs(X.mean() - exact.X[n]) < 4.0 * X.std_error());
  }
}

TEST_CASE("dust chain and full simulator agree on tau*") {
  const auto spec = MeasureSpec::beta(2.0, 1.0);
  RateTable rates(spec);
  const int n = 15;
  const double exact = dust_mean(spec, n);
  Rng rng(4);
  RunningMoments full, dust;
  for (int i = 0; i < 40000; ++i) {
    full.add(simulate_full(rates, n, rng).tau_star);
    dust.add(simulate_dust_chain(rates, n, rng).tau_star);
  }
  CHECK(std::fabs(full.mean() - exact) < 4.0 * full.std_error());
  CHECK(std::fabs(dust.mean() - exact) < 4.0 * dust.std_error());
}

TEST_CASE("dust chain from n = 1 under Lebesgue") {
  RateTable rates(MeasureSpec::lebesgue());
  Rng rng(5);
  RunningMoments t;
  for (int i = 0; i < 40000; ++i) {
    const DustRun run = simulate_dust_chain(rates, 1, rng, true);
    REQUIRE(run.K_r.at(1) == 1);
    REQUIRE(run.states == std::vector<std::int64_t>{1, 0});
    t.add(run.tau_star);
  }
  CHECK(t.mean() == doctest::Approx(2.0).epsilon(0.03));
}

TEST_CASE("visit probabilities") {
  RateTable leb(MeasureSpec::lebesgue());
  const auto g = visit_probabilities(leb, 20);
  // uniform decrements: P(visit k) = 1 / (k + 1) for k < n
  for (int k = 0; k < 20; ++k) CHECK(g[k] == doctest::Approx(1.0 / (k + 1)).epsilon(1e-12));
  CHECK(g[20] == 1.0);

  RateTable beta(MeasureSpec::beta(1.5, 0.5, 1.0));
  const auto h = visit_probabilities(beta, 10);
  // alpha = 1/2: g_{n,k} = C(2k,k) C(2(n-k),n-k) / C(2n,n)
  auto central = [](int k) { return std::exp(std::lgamma(2.0 * k + 1) - 2.0 * std::lgamma(k + 1.0)); };
  for (int k = 0; k <= 10; ++k) {
    CHECK(h[k] == doctest::Approx(central(k) * central(10 - k) / central(10)).epsilon(1e-10));
    CHECK(g_closed_beta(0.5, 10, k) == doctest::Approx(h[k]).epsilon(1e-10));
  }
}
