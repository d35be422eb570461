#include <doctest.h>

#include <cmath>
#include <vector>

#include "dust/error.hpp"
#include "dust/stats.hpp"
#include "dust/subordinator.hpp"

using namespace dust;

namespace {

std::vector<double> draw(const JumpSampler& s, int n, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<double> out;
  for (int i = 0; i < n; ++i) out.push_back(s.sample(rng));
  return out;
}

// One-sample KS of sampled jumps against 1 - nu([1 - e^{-y}, 1]) / nu([0, 1]).
double jump_ks(const MeasureSpec& spec, JumpMethod method, std::uint64_t seed) {
  JumpSampler s(spec, method);
  const double rate = spec.total_mass();
  return ks_distance(draw(s, 20000, seed),
                     [&](double y) { return y <= 0.0 ? 0.0 : 1.0 - std::exp(spec.log_jump_tail(y)) / rate; });
}

}  // namespace

TEST_CASE("jump samplers against the jump tail") {
  // KS critical value at level 1e-3 for 20000 draws is about 0.0138
  CHECK(jump_ks(MeasureSpec::lebesgue(), JumpMethod::Automatic, 1) < 0.014);
  CHECK(jump_ks(MeasureSpec::beta(2.5, 1.0), JumpMethod::Automatic, 2) < 0.014);
  CHECK(jump_ks(MeasureSpec::beta(3.5, 0.5), JumpMethod::Automatic, 3) < 0.014);
  CHECK(jump_ks(MeasureSpec::beta(2.5, 1.0), JumpMethod::Spline, 4) < 0.014);
  CHECK(jump_ks(MeasureSpec::log_singular(4.0, 2.0), JumpMethod::Automatic, 5) < 0.014);
  CHECK(jump_ks(MeasureSpec::tail_rho(2.0), JumpMethod::Automatic, 6) < 0.014);
  CHECK(jump_ks(MeasureSpec::tabulated({0.2, 0.5, 1.0}, {1.0, 0.6, 0.0}), JumpMethod::Automatic, 7) <
        0.014);
}

TEST_CASE("jumps below the double range are clamped") {
  // tail-rho with rho = 0.3 puts mass 1 / (1 + 700^0.3) below y = e^{-700}
  JumpSampler s(MeasureSpec::tail_rho(0.3));
  const auto y = draw(s, 20000, 15);
  double tiny = 0.0;
  for (double v : y) {
    REQUIRE(v > 0.0);
    if (v <= std::exp(-699.0)) tiny += 1.0;
  }
  CHECK(tiny / 20000.0 == doctest::Approx(1.0 / (1.0 + std::pow(700.0, 0.3))).epsilon(0.05));
}

TEST_CASE("spline and exact samplers agree") {
  const auto spec = MeasureSpec::beta(2.5, 1.0);
  JumpSampler exact(spec), spline(spec, JumpMethod::Spline);
  CHECK_FALSE(exact.uses_spline());
  CHECK(spline.uses_spline());
  CHECK(ks_distance(draw(exact, 20000, 8), draw(spline, 20000, 9)) < 0.02);
}

TEST_CASE("infinite measures have no jump sampler") {
  CHECK_THROWS_AS(JumpSampler(MeasureSpec::beta(1.5, 1.0)), Error);
}

TEST_CASE("first passage of the Lebesgue subordinator") {
  // S is a rate-1 Poisson process with Exp(1) marks: T_s ~ Gamma(1 + Poisson(s)), overshoot ~ Exp(1)
  JumpSampler jumps(MeasureSpec::lebesgue());
  Rng rng(10);
  RunningMoments t, o;
  for (int i = 0; i < 40000; ++i) {
    const Passage p = first_passage(jumps, 5.0, rng);
    t.add(p.time);
    o.add(p.overshoot);
  }
  CHECK(std::fabs(t.mean() - 6.0) < 4.0 * t.std_error());
  CHECK(std::fabs(o.mean() - 1.0) < 4.0 * o.std_error());
}

TEST_CASE("renewal count") {
  Rng rng(11);
  const StepSampler step = gamma_increment(1.0, 1.0);
  for (double s : {10.0, 20.0}) {
    RunningMoments c;
    for (int i = 0; i < 20000; ++i) c.add(static_cast<double>(renewal_count(step, s, rng)));
    CHECK(std::fabs(c.mean() - (1.0 + s)) < 4.0 * c.std_error());
  }
}

TEST_CASE("paths") {
  JumpSampler jumps(MeasureSpec::lebesgue());
  Rng rng(12);
  const auto path = sample_cpp_path(jumps, PathStop{.horizon = 50.0}, rng);
  for (double t : path.times) CHECK(t < 50.0);
  double s = 0.0;
  for (double j : path.jumps) s += j;
  CHECK(path.level() == doctest::Approx(s));
  const auto up = sample_cpp_path(jumps, PathStop{.level = 3.0}, rng);
  CHECK(up.level() > 3.0);
  CHECK_THROWS_AS(sample_cpp_path(jumps, PathStop{}, rng), Error);
}

TEST_CASE("exponential functional of a path") {
  SubordinatorPath p{{1.0}, {std::log(2.0)}, 1.0};
  CHECK(exp_functional_of_path(p, 1.0, 3.0) == doctest::Approx(2.0));
  CHECK(exp_functional_of_path(p, 1.0, 0.5) == doctest::Approx(0.5));
}

TEST_CASE("exponential functional sampling") {
  const auto leb = MeasureSpec::lebesgue();
  // Phi(z) = z / (z + 1): E I = 2, E I^2 = 2 * 2 * 3/2 = 6
  CHECK(exp_functional_moment(leb, 1.0, 1) == doctest::Approx(2.0));
  CHECK(exp_functional_moment(leb, 1.0, 2) == doctest::Approx(6.0));
  ExpFunctionalSampler s(leb, 1.0, 0.0, 1e-6);
  CHECK(std::exp(-s.horizon() * leb.laplace_exponent(1.0)) == doctest::Approx(1e-6));
  Rng rng(13);
  RunningMoments m;
  for (int i = 0; i < 40000; ++i) m.add(s.sample(rng));
  CHECK(std::fabs(m.mean() - 2.0) < 4.0 * m.std_error());

  CHECK_THROWS_AS(ExpFunctionalSampler(leb, 1.0, 1.0, 1e-4), Error);
  CHECK_THROWS_AS(ExpFunctionalSampler(MeasureSpec::beta(1.5, 1.0), 0.5, 0.0), Error);
}

TEST_CASE("regenerative composition") {
  JumpSampler jumps(MeasureSpec::beta(2.5, 1.0));
  Rng rng(14);
  for (int i = 0; i < 200; ++i) {
    const auto c = regenerative_composition(jumps, 37, rng);
    REQUIRE(total_marks(c.K_r) == 37);
    REQUIRE(c.passage_time > 0.0);
  }
}
