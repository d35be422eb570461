#include "dust/occupancy.hpp"

#include <cmath>
#include <string>

#include "dust/error.hpp"
#include "dust/special.hpp"

namespace dust {

namespace {

void require_probability(const JumpSampler& jumps) {
  if (std::fabs(jumps.rate() - 1.0) > 1e-9) {
    throw Error("occupancy scheme requires a probability measure (total mass " +
                std::to_string(jumps.rate()) + ")");
  }
}

}  // namespace

OccupancyFrequencies occupancy_frequencies(const JumpSampler& jumps, double epsilon, Rng& rng,
                                           std::int64_t max_sticks) {
  require_probability(jumps);
  if (!(epsilon > 0.0)) throw Error("occupancy_frequencies: epsilon must be positive");
  OccupancyFrequencies f;
  // Track log of the remainder so that long products do not underflow early.
  double log_rem = 0.0;
  while (f.remainder >= epsilon) {
    if (static_cast<std::int64_t>(f.p.size()) >= max_sticks) {
      throw Error("occupancy: remainder " + std::to_string(f.remainder) + " still above " +
                  std::to_string(epsilon) + " after " + std::to_string(max_sticks) + " sticks");
    }
    const double y = jumps.sample(rng);
    const double x = -std::expm1(-y);
    f.p.push_back(f.remainder * x);
    log_rem -= y;
    f.remainder = std::exp(log_rem);
  }
  return f;
}

SizeCounts occupancy_sample(const JumpSampler& jumps, std::int64_t n, Rng& rng,
                            std::int64_t max_sticks) {
  require_probability(jumps);
  if (n < 1) throw Error("occupancy_sample: n must be at least 1");
  // Box k receives Binomial(balls left, 1 - W_k): the conditional law of the
  // multinomial given the first k - 1 boxes.
  SizeCounts counts;
  std::int64_t left = n;
  std::int64_t sticks = 0;
  while (left > 0) {
    if (++sticks > max_sticks) {
      throw Error("occupancy: " + std::to_string(left) + " balls unplaced after " +
                  std::to_string(max_sticks) + " sticks");
    }
    const double x = jumps.sample_fraction(rng);
    const std::int64_t b = rng.binomial(left, x);
    if (b > 0) {
      ++counts[b];
      left -= b;
    }
  }
  return counts;
}

double occupancy_expected(const std::vector<double>& p, std::int64_t n, std::int64_t r) {
  if (r < 0 || r > n) throw Error("occupancy_expected: need 0 <= r <= n");
  const double lc = log_binomial(static_cast<double>(n), static_cast<double>(r));
  double total = 0.0;
  for (double pj : p) {
    if (pj < 0.0 || pj > 1.0) throw Error("occupancy_expected: frequencies must lie in [0,1]");
    if (pj == 0.0) {
      if (r == 0) total += 1.0;
      continue;
    }
    if (pj == 1.0) {
      if (r == n) total += 1.0;
      continue;
    }
    total += std::exp(lc + static_cast<double>(r) * std::log(pj) +
                      static_cast<double>(n - r) * std::log1p(-pj));
  }
  return total;
}

}  // namespace dust
