#include "dust/recursion.hpp"

#include <memory>
#include <string>

#include "dust/error.hpp"

namespace dust {

RecursionSolution solve_recursion(const RecursionProblem& problem, std::int64_t n_max) {
  if (!problem.p || !problem.r) throw Error("solve_recursion: p and r are required");
  if (n_max < 0) throw Error("solve_recursion: n_max must be nonnegative");
  RecursionSolution sol;
  sol.a.assign(static_cast<std::size_t>(n_max + 1), 0.0);
  sol.a[0] = problem.a0;
  for (std::int64_t n = 1; n <= n_max; ++n) {
    const double stay = problem.p(n, n);
    if (!(stay < 1.0)) {
      throw Error("degenerate row: p_{" + std::to_string(n) + "," + std::to_string(n) +
                  "} = " + std::to_string(stay));
    }
    double acc = problem.r(n);
    for (std::int64_t k = 0; k < n; ++k) acc += problem.p(n, k) * sol.a[static_cast<std::size_t>(k)];
    sol.a[static_cast<std::size_t>(n)] = acc / (1.0 - stay);
  }
  if (problem.psi) {
    sol.comparison.assign(static_cast<std::size_t>(n_max + 1), 0.0);
    for (std::int64_t n = 1; n <= n_max; ++n) {
      sol.comparison[static_cast<std::size_t>(n)] =
          sol.comparison[static_cast<std::size_t>(n - 1)] +
          problem.r(n) * problem.psi(n) / static_cast<double>(n);
    }
  }
  return sol;
}

std::function<double(std::int64_t, std::int64_t)> decrement_rows(const RateTable& rates) {
  return [&rates](std::int64_t n, std::int64_t k) -> double {
    if (k >= n) return 0.0;
    return rates.phi(n, n - k) / rates.total_rate(n);
  };
}

}  // namespace dust
