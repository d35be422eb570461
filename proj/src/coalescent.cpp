#include "dust/coalescent.hpp"

#include <cmath>
#include <limits>

#include "dust/error.hpp"
#include "dust/special.hpp"

namespace dust {

std::int64_t total_marks(const SizeCounts& counts) {
  std::int64_t total = 0;
  for (const auto& [r, c] : counts) total += r * c;
  return total;
}

RunStats simulate_full(const RateTable& rates, std::int64_t n, Rng& rng) {
  if (n < 1) throw Error("simulate_full: n must be at least 1");
  RunStats st;
  st.n = n;
  if (n == 1) {
    st.R = 1;
    return st;
  }
  std::int64_t p = n;
  std::int64_t s = 0;
  std::int64_t k1 = 0;
  double t = 0.0;
  bool dust_gone = false;
  while (p + s >= 2) {
    const std::int64_t m = p + s;
    t += rng.exponential(rates.total_rate(m));
    const std::int64_t k = rates.sample_merge_size(m, rng);
    const std::int64_t j = rng.hypergeometric(m, p, k);
    if (k == 1) {
      if (j == 1) {
        --p;
        ++s;
        ++st.K;
        ++k1;
      }
    } else {
      ++st.X;
      if (j >= 2) ++st.X_star;
      if (j >= 1) {
        ++st.K;
        if (j == 1) {
          ++k1;
        } else {
          ++st.K_r[j];
        }
      }
      if (j <= 1) ++st.D;
      p -= j;
      s = s - (k - j) + 1;
    }
    if (!dust_gone && p == 0) {
      dust_gone = true;
      st.tau_star = t;
      st.R = s;
    }
    if (p + s == 1 && p == 1) throw Error("simulate_full: reached a lone primary cluster");
  }
  st.tau = t;
  if (k1 > 0) st.K_r[1] = k1;
  return st;
}

DustRun simulate_dust_chain(const RateTable& rates, std::int64_t n, Rng& rng,
                            bool record_states) {
  if (n < 1) throw Error("simulate_dust_chain: n must be at least 1");
  DustRun run;
  std::int64_t m = n;
  std::int64_t k1 = 0;
  if (record_states) run.states.push_back(m);
  while (m > 0) {
    run.tau_star += rng.exponential(rates.total_rate(m));
    const std::int64_t k = rates.sample_merge_size(m, rng);
    if (k == 1) {
      ++k1;
    } else {
      ++run.K_r[k];
    }
    m -= k;
    if (record_states) run.states.push_back(m);
  }
  if (k1 > 0) run.K_r[1] = k1;
  return run;
}

std::vector<double> visit_probabilities(const RateTable& rates, std::int64_t n) {
  if (n < 1) throw Error("visit_probabilities: n must be at least 1");
  std::vector<double> g(static_cast<std::size_t>(n + 1), 0.0);
  g[static_cast<std::size_t>(n)] = 1.0;
  // Push mass from j down to j - k; states are visited in decreasing order.
  for (std::int64_t j = n; j >= 1; --j) {
    const double gj = g[static_cast<std::size_t>(j)];
    if (gj == 0.0) continue;
    const std::vector<double> dist = rates.decrement_distribution(j);
    for (std::int64_t k = 1; k <= j; ++k) {
      g[static_cast<std::size_t>(j - k)] += gj * dist[static_cast<std::size_t>(k - 1)];
    }
  }
  g[0] = 1.0;
  return g;
}

double g_closed_beta(double alpha, std::int64_t n, std::int64_t k) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw Error("g_closed_beta: alpha must lie in (0, 1)");
  if (k < 0 || k > n) throw Error("g_closed_beta: need 0 <= k <= n");
  if (k == n || k == 0) return 1.0;
  auto log_rising = [alpha](double j) { return std::lgamma(alpha + j) - std::lgamma(alpha); };
  const double nd = static_cast<double>(n);
  const double kd = static_cast<double>(k);
  return std::exp(log_rising(kd) + log_rising(nd - kd) - log_rising(nd) +
                  log_binomial(nd, kd));
}

}  // namespace dust
