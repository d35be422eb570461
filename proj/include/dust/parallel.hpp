#pragma once

#include <cstdint>
#include <exception>
#include <vector>

#include <omp.h>

namespace dust {

/// Calls f(i) for i = 0..count-1 in order and collects the results.
template <class F>
auto run_replicates_serial(std::int64_t count, F&& f) {
  using T = decltype(f(std::int64_t{0}));
  std::vector<T> out;
  out.reserve(static_cast<std::size_t>(count));
  for (std::int64_t i = 0; i < count; ++i) out.push_back(f(i));
  return out;
}

/// Parallel version of run_replicates_serial over `jobs` OpenMP threads.
/// Results are stored by index, so the output does not depend on `jobs`.
/// The exception of the lowest failing index is rethrown.
template <class F>
auto run_replicates(std::int64_t count, int jobs, F&& f) {
  using T = decltype(f(std::int64_t{0}));
  if (jobs <= 1 || count < 2) return run_replicates_serial(count, f);
  std::vector<T> out(static_cast<std::size_t>(count));
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(count));
#pragma omp parallel for schedule(dynamic, 1) num_threads(jobs)
  for (std::int64_t i = 0; i < count; ++i) {
    try {
      out[static_cast<std::size_t>(i)] = f(i);
    } catch (...) {
      errors[static_cast<std::size_t>(i)] = std::current_exception();
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

}  // namespace dust
