#pragma once

#include <cstdint>
#include <vector>

#include "dust/coalescent.hpp"
#include "dust/subordinator.hpp"

namespace dust {

/// Stick-breaking frequencies P_k = W_1 ... W_{k-1} (1 - W_k).
struct OccupancyFrequencies {
  std::vector<double> p;
  double remainder = 1.0;
};

inline constexpr std::int64_t kMaxSticks = 1000000;

/// Breaks sticks until the unallocated mass drops below `epsilon`.
OccupancyFrequencies occupancy_frequencies(const JumpSampler& jumps, double epsilon, Rng& rng,
                                           std::int64_t max_sticks = kMaxSticks);

/// Throws n balls into the stick-breaking boxes and counts boxes holding
/// exactly r balls. Requires nu to be a probability measure.
SizeCounts occupancy_sample(const JumpSampler& jumps, std::int64_t n, Rng& rng,
                            std::int64_t max_sticks = kMaxSticks);

/// Expected number of boxes with exactly r of n balls:
/// C(n, r) sum_j p_j^r (1 - p_j)^{n-r}.
double occupancy_expected(const std::vector<double>& p, std::int64_t n, std::int64_t r);

}  // namespace dust
