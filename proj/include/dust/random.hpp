#pragma once

#include <cstdint>
#include <random>

namespace dust {

/// One step of the splitmix64 generator; advances `state`.
std::uint64_t splitmix64(std::uint64_t& state);

/// Seed for replicate `index` of a run seeded with `seed`. Streams for
/// different indices are decorrelated through two splitmix rounds.
std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t index);

class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0);

  static constexpr result_type min() { return std::mt19937_64::min(); }
  static constexpr result_type max() { return std::mt19937_64::max(); }
  result_type operator()() { return engine_(); }

  /// Uniform on the open interval (0, 1).
  double uniform();
  double exponential(double rate = 1.0);
  double gamma(double shape);
  /// Beta(a, b) through a gamma ratio.
  double beta(double a, double b);
  std::int64_t binomial(std::int64_t trials, double p);

  /// Number of marked items in a draw of `draws` without replacement from
  /// `population` items of which `marked` are marked. Exact inverse-CDF
  /// search started at the mode.
  std::int64_t hypergeometric(std::int64_t population, std::int64_t marked,
                              std::int64_t draws);

 private:
  std::mt19937_64 engine_;
};

}  // namespace dust
