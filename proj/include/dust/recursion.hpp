#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "dust/rates.hpp"

namespace dust {

/// a_n = r_n + sum_{k<=n} p_{n,k} a_k for n >= 1, with a_0 given.
struct RecursionProblem {
  std::function<double(std::int64_t n, std::int64_t k)> p;  // row n over k = 0..n
  std::function<double(std::int64_t n)> r;
  double a0 = 0.0;
  std::function<double(std::int64_t n)> psi;  // optional comparison sequence
};

struct RecursionSolution {
  std::vector<double> a;           // a_0..a_{n_max}
  std::vector<double> comparison;  // sum_{k<=n} r_k psi_k / k, n = 0..n_max (empty without psi)
};

/// Solves a_n = (r_n + sum_{k<n} p_{n,k} a_k) / (1 - p_{n,n}). Throws
/// "degenerate row" when p_{n,n} = 1.
RecursionSolution solve_recursion(const RecursionProblem& problem, std::int64_t n_max);

/// Transition rows of the primary-count chain: p_{n,k} = phi_{n,n-k} / Phi(n)
/// for k < n, p_{n,n} = 0.
std::function<double(std::int64_t, std::int64_t)> decrement_rows(const RateTable& rates);

}  // namespace dust
