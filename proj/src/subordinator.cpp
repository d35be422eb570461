#include "dust/subordinator.hpp"

#include <algorithm>
#include <cmath>
#include <string>

// Boost 1.74's pchip.hpp calls isnan unqualified.
namespace boost::math::interpolators {
using std::isnan;
}
#include <boost/math/interpolators/pchip.hpp>
#include <boost/math/special_functions/expint.hpp>
#include <boost/math/tools/roots.hpp>

#include "dust/error.hpp"

namespace dust {

namespace {

constexpr std::size_t kSplineNodes = 2048;
constexpr double kLogYMin = -700.0;
constexpr double kQMin = 1e-12;
constexpr double kQMax = 60.0;

}  // namespace

// ---------------------------------------------------------------------------
// Jump sampler.

struct JumpSampler::Impl {
  enum class Kind { Exponential, BetaRatio, Table, Spline } kind = Kind::Spline;

  // BetaRatio
  double shape1 = 0.0;
  double shape2 = 0.0;

  // Table
  std::vector<double> seg_lo;
  std::vector<double> seg_hi;
  std::vector<double> seg_cum;

  // Spline: u = log y as a function of log q, q = -log P(jump >= y).
  MeasureSpec spec;
  double log_total = 0.0;
  double q_lo = 0.0;
  double q_hi = 0.0;
  double u_hi = 0.0;
  std::unique_ptr<boost::math::interpolators::pchip<std::vector<double>>> spline;

  explicit Impl(const MeasureSpec& s) : spec(s) {}

  double q_of_u(double u) const { return log_total - spec.log_jump_tail(std::exp(u)); }

  double solve_u(double q, double lo, double hi) const {
    auto f = [&](double u) { return q_of_u(u) - q; };
    boost::uintmax_t iters = 200;
    auto tol = boost::math::tools::eps_tolerance<double>(50);
    const double flo = f(lo);
    const double fhi = f(hi);
    if (flo >= 0.0) return lo;
    if (fhi <= 0.0) return hi;
    auto r = boost::math::tools::toms748_solve(f, lo, hi, flo, fhi, tol, iters);
    return 0.5 * (r.first + r.second);
  }

  void build_spline() {
    log_total = std::log(spec.total_mass());
    u_hi = std::log(700.0);
    q_lo = std::max(q_of_u(kLogYMin), kQMin);
    q_hi = std::min(q_of_u(u_hi), kQMax);
    if (!(q_hi > q_lo)) throw Error("jump sampler: degenerate jump-size distribution");
    std::vector<double> lq(kSplineNodes);
    std::vector<double> u(kSplineNodes);
    const double a = std::log(q_lo);
    const double b = std::log(q_hi);
    double prev = kLogYMin;
    for (std::size_t i = 0; i < kSplineNodes; ++i) {
      lq[i] = a + (b - a) * static_cast<double>(i) / static_cast<double>(kSplineNodes - 1);
      u[i] = solve_u(std::exp(lq[i]), prev, u_hi);
      prev = u[i];
    }
    for (std::size_t i = 1; i < kSplineNodes; ++i) {
      if (!(u[i] > u[i - 1])) u[i] = std::nextafter(u[i - 1], 1e300);
    }
    spline = std::make_unique<boost::math::interpolators::pchip<std::vector<double>>>(
        std::move(lq), std::move(u));
  }

  double sample_spline(Rng& rng) const {
    const double q = rng.exponential();
    if (q < q_lo) return std::exp(solve_u(q, -745.0, kLogYMin));
    if (q > q_hi) return std::exp(solve_u(q, u_hi - 1.0, std::log(1e6)));
    return std::exp((*spline)(std::log(q)));
  }
};

JumpSampler::JumpSampler(const MeasureSpec& spec, JumpMethod method)
    : impl_(std::make_unique<Impl>(spec)) {
  if (!spec.is_finite()) {
    throw Error("compound Poisson requires finite measure (got " + spec.describe() + ")");
  }
  rate_ = spec.total_mass();
  auto& im = *impl_;
  const auto& params = spec.params();
  if (method == JumpMethod::Automatic) {
    if (std::holds_alternative<Lebesgue>(params)) {
      im.kind = Impl::Kind::Exponential;
      return;
    }
    if (const auto* b = std::get_if<BetaFamily>(&params)) {
      // x ~ Beta(a-2, b): y = -log(1-x) = log(1 + G1/G2).
      im.kind = Impl::Kind::BetaRatio;
      im.shape1 = b->a - 2.0;
      im.shape2 = b->b;
      return;
    }
    if (const auto* t = std::get_if<TabulatedTail>(&params)) {
      im.kind = Impl::Kind::Table;
      double acc = 0.0;
      auto add = [&](double lo, double hi, double mass) {
        if (mass <= 0.0) return;
        acc += mass;
        im.seg_lo.push_back(lo);
        im.seg_hi.push_back(hi);
        im.seg_cum.push_back(acc);
      };
      for (std::size_t i = 0; i + 1 < t->x.size(); ++i) {
        add(t->x[i], t->x[i + 1], t->tail[i] - t->tail[i + 1]);
      }
      if (t->x.back() < 1.0) add(t->x.back(), 1.0, t->tail.back());
      return;
    }
  }
  im.kind = Impl::Kind::Spline;
  im.build_spline();
}

JumpSampler::~JumpSampler() = default;
JumpSampler::JumpSampler(JumpSampler&&) noexcept = default;
JumpSampler& JumpSampler::operator=(JumpSampler&&) noexcept = default;

bool JumpSampler::uses_spline() const { return impl_->kind == Impl::Kind::Spline; }

double JumpSampler::sample(Rng& rng) const {
  const auto& im = *impl_;
  switch (im.kind) {
    case Impl::Kind::Exponential:
      return rng.exponential();
    case Impl::Kind::BetaRatio: {
      const double g1 = rng.gamma(im.shape1);
      const double g2 = rng.gamma(im.shape2);
      return std::log1p(g1 / g2);
    }
    case Impl::Kind::Table: {
      const double target = rng.uniform() * im.seg_cum.back();
      auto it = std::upper_bound(im.seg_cum.begin(), im.seg_cum.end(), target);
      if (it == im.seg_cum.end()) --it;
      const std::size_t i = static_cast<std::size_t>(it - im.seg_cum.begin());
      const double w = rng.uniform();
      // 1 - x with full precision when the segment ends at 1
      const double om = (1.0 - im.seg_lo[i]) - w * (im.seg_hi[i] - im.seg_lo[i]);
      return -std::log(om);
    }
    case Impl::Kind::Spline:
      return im.sample_spline(rng);
  }
  return 0.0;
}

double JumpSampler::sample_fraction(Rng& rng) const { return -std::expm1(-sample(rng)); }

// ---------------------------------------------------------------------------
// Paths and passage.

double SubordinatorPath::level() const {
  double s = 0.0;
  for (double j : jumps) s += j;
  return s;
}

SubordinatorPath sample_cpp_path(const JumpSampler& jumps, const PathStop& stop, Rng& rng) {
  if (!std::isfinite(stop.level) && !std::isfinite(stop.horizon)) {
    throw Error("sample_cpp_path: a finite level or horizon is required");
  }
  SubordinatorPath path;
  path.rate = jumps.rate();
  double t = 0.0;
  double s = 0.0;
  if (stop.horizon <= 0.0) return path;
  while (!(s > stop.level)) {
    t += rng.exponential(jumps.rate());
    if (t > stop.horizon) break;
    const double y = jumps.sample(rng);
    s += y;
    path.times.push_back(t);
    path.jumps.push_back(y);
  }
  return path;
}

Passage first_passage(const JumpSampler& jumps, double level, Rng& rng) {
  if (!(level >= 0.0)) throw Error("first_passage: level must be nonnegative");
  double t = 0.0;
  double s = 0.0;
  while (!(s > level)) {
    t += rng.exponential(jumps.rate());
    s += jumps.sample(rng);
  }
  return {t, s - level};
}

StepSampler unit_increment(const JumpSampler& jumps) {
  return [&jumps](Rng& rng) {
    double s = 0.0;
    double t = rng.exponential(jumps.rate());
    while (t <= 1.0) {
      s += jumps.sample(rng);
      t += rng.exponential(jumps.rate());
    }
    return s;
  };
}

StepSampler gamma_increment(double alpha, double beta) {
  if (!(alpha > 0.0) || !(beta > 0.0)) throw Error("gamma_increment: alpha, beta must be positive");
  return [alpha, beta](Rng& rng) { return rng.gamma(alpha) / beta; };
}

std::int64_t renewal_count(const StepSampler& step, double level, Rng& rng) {
  if (!(level >= 0.0)) throw Error("renewal_count: level must be nonnegative");
  std::int64_t count = 0;
  double w = 0.0;
  while (w <= level) {
    ++count;
    w += step(rng);
  }
  return count;
}

Composition regenerative_composition(const JumpSampler& jumps, std::int64_t n, Rng& rng) {
  if (n < 1) throw Error("regenerative_composition: n must be at least 1");
  Composition out;
  // Order statistics of n standard exponentials, generated upward.
  std::int64_t remaining = n;
  double next_mark = rng.exponential() / static_cast<double>(remaining);
  double s = 0.0;
  double t = 0.0;
  while (remaining > 0) {
    t += rng.exponential(jumps.rate());
    s += jumps.sample(rng);
    std::int64_t passed = 0;
    while (remaining > 0 && next_mark < s) {
      ++passed;
      --remaining;
      if (remaining > 0) next_mark += rng.exponential() / static_cast<double>(remaining);
    }
    if (passed > 0) ++out.K_r[passed];
  }
  out.passage_time = t;
  return out;
}

// ---------------------------------------------------------------------------
// Exponential functional.

double exp_functional_of_path(const SubordinatorPath& path, double gamma, double horizon) {
  double t = 0.0;
  double s = 0.0;
  double total = 0.0;
  for (std::size_t i = 0; i < path.times.size() && path.times[i] < horizon; ++i) {
    total += std::exp(-gamma * s) * (path.times[i] - t);
    t = path.times[i];
    s += path.jumps[i];
  }
  if (horizon > t) total += std::exp(-gamma * s) * (horizon - t);
  return total;
}

double exp_functional_horizon(const MeasureSpec& spec, double gamma, double epsilon) {
  if (!(gamma > 0.0)) throw Error("exponential functional: gamma must be positive");
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw Error("exponential functional: epsilon must lie in (0,1)");
  const double phi = spec.laplace_exponent(gamma);
  if (!(phi > 0.0)) throw Error("exponential functional: Phi(gamma) = 0");
  return std::log(1.0 / epsilon) / phi;
}

struct ExpFunctionalSampler::Impl {
  std::unique_ptr<JumpSampler> jumps;  // compound Poisson case

  // Gamma subordinator: big jumps on (delta, infinity), drift for the rest.
  double alpha = 0.0;
  double beta = 0.0;
  double delta = 0.0;
  double drift = 0.0;
  double big_rate = 0.0;
  double split = 0.0;
  double low_mass_share = 0.0;

  double sample_big_jump(Rng& rng) const {
    if (rng.uniform() < low_mass_share) {
      // log-uniform proposal on (delta, split), accept e^{-beta (y - delta)}
      for (;;) {
        const double y = delta * std::exp(rng.uniform() * std::log(split / delta));
        if (rng.uniform() < std::exp(-beta * (y - delta))) return y;
      }
    }
    for (;;) {
      const double y = split + rng.exponential(beta);
      if (rng.uniform() * y < split) return y;
    }
  }
};

ExpFunctionalSampler::ExpFunctionalSampler(const MeasureSpec& spec, double gamma,
                                           double horizon, double epsilon, double small_jump)
    : impl_(std::make_unique<Impl>()), gamma_(gamma) {
  const double needed = exp_functional_horizon(spec, gamma, epsilon);
  if (horizon <= 0.0) {
    horizon = needed;
  } else if (horizon < needed) {
    throw Error("exponential functional: horizon " + std::to_string(horizon) +
                " is too short for epsilon " + std::to_string(epsilon) +
                "; need T >= " + std::to_string(needed));
  }
  horizon_ = horizon;
  if (spec.is_finite()) {
    impl_->jumps = std::make_unique<JumpSampler>(spec);
    return;
  }
  const auto* g = std::get_if<GammaPhi>(&spec.params());
  if (!g) {
    throw Error("exponential functional sampling requires a finite measure or the gamma measure");
  }
  if (!(small_jump > 0.0)) throw Error("exponential functional: small-jump cutoff must be positive");
  auto& im = *impl_;
  im.alpha = g->alpha;
  im.beta = g->beta;
  im.delta = small_jump;
  im.drift = g->alpha * (-std::expm1(-g->beta * small_jump)) / g->beta;
  im.split = std::max(1.0 / g->beta, small_jump);
  const double e_delta = boost::math::expint(1, g->beta * small_jump);
  const double e_split = boost::math::expint(1, g->beta * im.split);
  im.big_rate = g->alpha * e_delta;
  im.low_mass_share = (e_delta - e_split) / e_delta;
}

ExpFunctionalSampler::~ExpFunctionalSampler() = default;
ExpFunctionalSampler::ExpFunctionalSampler(ExpFunctionalSampler&&) noexcept = default;

double ExpFunctionalSampler::sample(Rng& rng) const {
  const auto& im = *impl_;
  const double T = horizon_;
  double t = 0.0;
  double s = 0.0;
  double total = 0.0;
  if (im.jumps) {
    const double rate = im.jumps->rate();
    for (;;) {
      const double dt = rng.exponential(rate);
      if (t + dt >= T) {
        total += std::exp(-gamma_ * s) * (T - t);
        break;
      }
      total += std::exp(-gamma_ * s) * dt;
      t += dt;
      s += im.jumps->sample(rng);
    }
    return total;
  }
  const double gd = gamma_ * im.drift;
  for (;;) {
    double dt = rng.exponential(im.big_rate);
    const bool last = t + dt >= T;
    if (last) dt = T - t;
    // int_0^dt exp(-gamma (s + drift u)) du
    total += std::exp(-gamma_ * s) * (-std::expm1(-gd * dt)) / gd;
    if (last) break;
    t += dt;
    s += im.drift * dt + im.sample_big_jump(rng);
  }
  return total;
}

double exp_functional_moment(const MeasureSpec& spec, double gamma, int k) {
  if (k < 1) throw Error("exp_functional_moment: k must be at least 1");
  if (!(gamma > 0.0)) throw Error("exp_functional_moment: gamma must be positive");
  double value = 1.0;
  for (int i = 1; i <= k; ++i) {
    const double phi = spec.laplace_exponent(gamma * i);
    if (!(phi > 0.0)) throw Error("exp_functional_moment: Phi(gamma i) = 0");
    value *= static_cast<double>(i) / phi;
  }
  return value;
}

}  // namespace dust
