#include "dust/random.hpp"

#include <algorithm>
#include <cmath>

#include "dust/error.hpp"

namespace dust {

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t s = seed;
  const std::uint64_t a = splitmix64(s);
  std::uint64_t t = a ^ (index * 0xd1b54a32d192ed03ULL);
  splitmix64(t);
  return splitmix64(t);
}

Rng::Rng(std::uint64_t seed, std::uint64_t stream) : engine_(stream_seed(seed, stream)) {}

double Rng::uniform() {
  // 53 random bits, shifted half a step off zero.
  return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
}

double Rng::exponential(double rate) { return -std::log(uniform()) / rate; }

double Rng::gamma(double shape) {
  if (!(shape > 0.0)) throw Error("gamma: shape must be positive");
  if (shape < 1.0) {
    // Gamma(a) = Gamma(a + 1) U^{1/a}
    const double g = gamma(shape + 1.0);
    return g * std::exp(std::log(uniform()) / shape);
  }
  // Marsaglia-Tsang
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  std::normal_distribution<double> normal;
  for (;;) {
    double x = 0.0;
    double v = 0.0;
    do {
      x = normal(engine_);
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = uniform();
    if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
    if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
  }
}

double Rng::beta(double a, double b) {
  const double x = gamma(a);
  const double y = gamma(b);
  return x / (x + y);
}

std::int64_t Rng::binomial(std::int64_t trials, double p) {
  if (trials <= 0 || p <= 0.0) return 0;
  if (p >= 1.0) return trials;
  std::binomial_distribution<std::int64_t> dist(trials, p);
  return dist(engine_);
}

std::int64_t Rng::hypergeometric(std::int64_t population, std::int64_t marked,
                                 std::int64_t draws) {
  if (population < 0 || marked < 0 || draws < 0 || marked > population ||
      draws > population) {
    throw Error("hypergeometric: invalid parameters");
  }
  if (draws == 0 || marked == 0) return 0;
  if (marked == population) return draws;
  if (draws == population) return marked;
  if (draws == 1) return uniform() * static_cast<double>(population) < static_cast<double>(marked);

  // Reduce to marked <= population/2 and draws <= population/2.
  bool flip_marked = false;
  bool flip_draws = false;
  std::int64_t K = marked;
  std::int64_t n = draws;
  const std::int64_t N = population;
  if (2 * K > N) {
    K = N - K;
    flip_marked = true;
  }
  if (2 * n > N) {
    n = N - n;
    flip_draws = true;
  }
  std::int64_t j = 0;
  if (n > 0 && K > 0) {
    const std::int64_t lo = std::max<std::int64_t>(0, n - (N - K));
    const std::int64_t hi = std::min(n, K);
    std::int64_t mode = static_cast<std::int64_t>(
        std::floor((static_cast<double>(n) + 1.0) * (static_cast<double>(K) + 1.0) /
                   (static_cast<double>(N) + 2.0)));
    mode = std::clamp(mode, lo, hi);
    auto lf = [](double v) { return std::lgamma(v + 1.0); };
    const double Kd = static_cast<double>(K);
    const double nd = static_cast<double>(n);
    const double Nd = static_cast<double>(N);
    const double md = static_cast<double>(mode);
    const double log_pm = lf(Kd) - lf(md) - lf(Kd - md) + lf(Nd - Kd) - lf(nd - md) -
                          lf(Nd - Kd - nd + md) - (lf(Nd) - lf(nd) - lf(Nd - nd));
    const double p_mode = std::exp(log_pm);

    // Walk outward from the mode, alternating sides, subtracting mass.
    double u = uniform();
    u -= p_mode;
    j = mode;
    if (u > 0.0) {
      std::int64_t up = mode;
      std::int64_t down = mode;
      double p_up = p_mode;
      double p_down = p_mode;
      bool found = false;
      while (!found && (up < hi || down > lo)) {
        if (up < hi) {
          const double x = static_cast<double>(up);
          p_up *= (Kd - x) * (nd - x) / ((x + 1.0) * (Nd - Kd - nd + x + 1.0));
          ++up;
          u -= p_up;
          if (u <= 0.0) {
            j = up;
            found = true;
            break;
          }
        }
        if (down > lo) {
          const double x = static_cast<double>(down);
          p_down *= x * (Nd - Kd - nd + x) / ((Kd - x + 1.0) * (nd - x + 1.0));
          --down;
          u -= p_down;
          if (u <= 0.0) {
            j = down;
            found = true;
            break;
          }
        }
      }
      // Rounding left a sliver of mass unassigned; put it at the mode.
      if (!found) j = mode;
    }
  }
  // Undo the reductions.
  if (flip_draws) j = K - j;
  if (flip_marked) j = draws - j;
  return j;
}

}  // namespace dust
