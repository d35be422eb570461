#include "dust/vchain.hpp"

#include <cmath>
#include <string>

#include <Eigen/Dense>

#include "dust/error.hpp"

namespace dust {

VTrajectory v_chain_simulate(const RateTable& rates, double horizon, double burn_in, Rng& rng,
                             bool record) {
  const MeasureSpec& spec = rates.spec();
  if (!spec.is_finite()) throw Error("V chain requires a finite measure");
  if (!(horizon > burn_in) || burn_in < 0.0) {
    throw Error("V chain: need 0 <= burn_in < horizon");
  }
  std::vector<double> birth;  // phi_{m,0}, cached per visited m
  auto birth_rate = [&](std::int64_t m) {
    while (static_cast<std::int64_t>(birth.size()) <= m) {
      birth.push_back(rates.null_rate(static_cast<std::int64_t>(birth.size())));
    }
    return birth[static_cast<std::size_t>(m)];
  };

  VTrajectory traj;
  std::int64_t v = 0;
  double t = 0.0;
  while (t < horizon) {
    const double up = birth_rate(v);
    const double down = v >= 1 ? rates.total_rate(v) : 0.0;
    const double dt = rng.exponential(up + down);
    const double lo = std::max(t, burn_in);
    const double hi = std::min(t + dt, horizon);
    if (hi > lo) traj.occupation[v] += hi - lo;
    t += dt;
    if (t >= horizon) break;
    std::int64_t next = v;
    if (rng.uniform() * (up + down) < up) {
      next = v + 1;
    } else {
      const std::int64_t k = rates.sample_merge_size(v, rng);
      if (k >= 2) next = v - k + 1;
    }
    if (next > kVStateCap) {
      throw Error("V chain exceeded the state cap " + std::to_string(kVStateCap));
    }
    if (next != v) {
      v = next;
      if (record) {
        traj.times.push_back(t);
        traj.values.push_back(v);
      }
    }
  }
  traj.observed_time = horizon - burn_in;
  for (auto& [m, w] : traj.occupation) w /= traj.observed_time;
  return traj;
}

StationarySolution v_stationary_solve(const MeasureSpec& spec, std::int64_t truncation) {
  if (!spec.is_finite()) throw Error("balance equations require a finite measure");
  if (truncation < 10) throw Error("balance equations: truncation M must be at least 10");
  const std::int64_t M = truncation;
  const double total = spec.total_mass();
  // phi[j][k] for 0 <= k <= j <= M, normalized by the total mass.
  std::vector<std::vector<double>> phi(static_cast<std::size_t>(M + 1));
  for (std::int64_t j = 0; j <= M; ++j) {
    auto& row = phi[static_cast<std::size_t>(j)];
    row.resize(static_cast<std::size_t>(j + 1));
    for (std::int64_t k = 0; k <= j; ++k) {
      row[static_cast<std::size_t>(k)] = spec.phi_rate(j, k) / total;
    }
  }
  // Unknowns pi_1..pi_M at indices 0..M-1. Row m-1 holds equation m:
  // pi_m - sum_{k>=0} pi_{m+k-1} phi_{m+k-1,k} = 0.
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(M, M);
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(M);
  auto coeff = [&](std::int64_t m, std::int64_t j) -> double {
    // coefficient of pi_j in the right side of equation m (j = m + k - 1)
    const std::int64_t k = j - m + 1;
    if (k < 0 || k > j) return 0.0;
    return phi[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)];
  };
  for (std::int64_t m = 1; m <= M; ++m) {
    for (std::int64_t j = 1; j <= M; ++j) {
      A(m - 1, j - 1) = (m == j ? 1.0 : 0.0) - coeff(m, j);
    }
  }
  for (std::int64_t j = 0; j < M; ++j) A(M - 1, j) = 1.0;
  rhs(M - 1) = 1.0;

  Eigen::FullPivLU<Eigen::MatrixXd> lu(A);
  if (!lu.isInvertible()) throw Error("balance equations: truncated system is singular");
  const Eigen::VectorXd x = lu.solve(rhs);

  StationarySolution sol;
  sol.pi.assign(static_cast<std::size_t>(M + 1), 0.0);
  for (std::int64_t m = 1; m <= M; ++m) sol.pi[static_cast<std::size_t>(m)] = x(m - 1);
  for (std::int64_t m = 1; m <= M; ++m) {
    double r = sol.pi[static_cast<std::size_t>(m)];
    for (std::int64_t j = 1; j <= M; ++j) r -= coeff(m, j) * sol.pi[static_cast<std::size_t>(j)];
    sol.residual = std::max(sol.residual, std::fabs(r));
  }
  return sol;
}

}  // namespace dust
