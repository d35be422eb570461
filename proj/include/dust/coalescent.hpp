#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "dust/random.hpp"
#include "dust/rates.hpp"

namespace dust {

/// Sparse decrement counts: size r -> number of decrements of size r.
using SizeCounts = std::map<std::int64_t, std::int64_t>;

/// Sum of r * count over the entries.
std::int64_t total_marks(const SizeCounts& counts);

/// Statistics of one run of the n-coalescent.
struct RunStats {
  std::int64_t n = 0;
  double tau = 0.0;       // first time a single cluster remains
  double tau_star = 0.0;  // first time no primary cluster remains
  std::int64_t X = 0;       // collisions
  std::int64_t X_star = 0;  // collisions involving at least two primary clusters
  std::int64_t K = 0;       // decrements of the primary count
  SizeCounts K_r;           // decrements by size
  std::int64_t D = 0;       // collisions involving at most one primary cluster
  std::int64_t R = 0;       // clusters alive at tau_star

  std::int64_t K1() const {
    auto it = K_r.find(1);
    return it == K_r.end() ? 0 : it->second;
  }
};

/// Lumped (primary, secondary) chain of the coalescent started from n
/// singletons. Exact in law for every recorded statistic.
RunStats simulate_full(const RateTable& rates, std::int64_t n, Rng& rng);

struct DustRun {
  SizeCounts K_r;
  double tau_star = 0.0;
  std::vector<std::int64_t> states;  // visited states n, ..., 0 (when recorded)
};

/// The primary-count chain alone: m -> m - k with probability
/// phi_{m,k} / Phi(m) after an Exp(Phi(m)) holding time.
DustRun simulate_dust_chain(const RateTable& rates, std::int64_t n, Rng& rng,
                            bool record_states = false);

/// g_{n,k}, k = 0..n: probability that the primary-count chain started at n
/// ever visits k.
std::vector<double> visit_probabilities(const RateTable& rates, std::int64_t n);

/// (alpha)_k (alpha)_{n-k} / (alpha)_n * C(n, k) for 0 < alpha < 1,
/// the visit probability for nu(dx) = x^{-alpha-1} (1-x)^{alpha-1} dx.
double g_closed_beta(double alpha, std::int64_t n, std::int64_t k);

}  // namespace dust
