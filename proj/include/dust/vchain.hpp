#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "dust/random.hpp"
#include "dust/rates.hpp"

namespace dust {

/// Secondary-cluster count of the compound Poisson coalescent: from m it
/// jumps to m - k + 1 at rate phi_{m,k}, k = 0, 2, 3, ..., m.
struct VTrajectory {
  std::vector<double> times;           // event times (recorded when requested)
  std::vector<std::int64_t> values;    // value after each event
  std::map<std::int64_t, double> occupation;  // time share per value after burn-in
  double observed_time = 0.0;
};

inline constexpr std::int64_t kVStateCap = 10000;

VTrajectory v_chain_simulate(const RateTable& rates, double horizon, double burn_in, Rng& rng,
                             bool record = false);

struct StationarySolution {
  std::vector<double> pi;  // pi_0 .. pi_M, pi_0 = 0
  double residual = 0.0;   // largest violation of the balance equations
};

/// Truncated balance equations pi_m = sum_{k>=0} pi_{m+k-1} phi_{m+k-1,k}
/// with phi taken from nu / nu([0,1]), pi_0 = 0 and sum pi = 1.
StationarySolution v_stationary_solve(const MeasureSpec& spec, std::int64_t truncation);

}  // namespace dust
