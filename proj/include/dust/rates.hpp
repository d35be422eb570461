#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <vector>

#include "dust/measure.hpp"
#include "dust/random.hpp"

namespace dust {

/// Merge-size distributions phi_{m,.} for one measure, built lazily per
/// visited m. Rows up to `row_cap` are memoized as cumulative tables; above
/// the cap, closed-form measures are sampled by a sequential search over the
/// ratio phi_{m,k+1}/phi_{m,k} and other measures fall back to memoized rows.
/// All methods are safe to call concurrently.
class RateTable {
 public:
  static constexpr std::int64_t kDefaultRowCap = 2048;

  explicit RateTable(MeasureSpec spec, std::int64_t row_cap = kDefaultRowCap);
  ~RateTable();
  RateTable(const RateTable&) = delete;
  RateTable& operator=(const RateTable&) = delete;

  const MeasureSpec& spec() const { return spec_; }

  double lambda(std::int64_t m, std::int64_t k) const { return spec_.lambda_rate(m, k); }
  double phi(std::int64_t m, std::int64_t k) const { return spec_.phi_rate(m, k); }

  /// Phi(m) = sum_{k=1}^m phi_{m,k}, the total rate out of m in the dust chain.
  double total_rate(std::int64_t m) const;

  /// phi_{m,0} = int (1-x)^m nu(dx); finite measures only.
  double null_rate(std::int64_t m) const;

  /// k in [1, m] with probability phi_{m,k} / Phi(m).
  std::int64_t sample_merge_size(std::int64_t m, Rng& rng) const;

  /// Entries phi_{m,k} / Phi(m) for k = 1..m, stored at index k-1.
  std::vector<double> decrement_distribution(std::int64_t m) const;

  /// Precomputes per-m constants of the sequential sampler for m <= m_max.
  /// Optional; must not run concurrently with sampling.
  void prepare(std::int64_t m_max);

 private:
  struct Row {
    std::vector<double> cumulative;  // partial sums of phi_{m,1..k}
  };
  struct Slot;

  const Row& row(std::int64_t m) const;
  Row build_row(std::int64_t m) const;
  bool sequential(std::int64_t m) const;
  std::int64_t sample_sequential(std::int64_t m, Rng& rng) const;
  double sequential_head(std::int64_t m) const;

  MeasureSpec spec_;
  std::int64_t row_cap_;
  bool beta_closed_ = false;
  double a_ = 0.0;
  double b_ = 0.0;
  double c_ = 0.0;

  std::unique_ptr<Slot[]> slots_;
  mutable std::shared_mutex overflow_mutex_;
  mutable std::map<std::int64_t, std::shared_ptr<const Row>> overflow_;

  std::vector<double> head_;   // phi_{m,1} for prepared m above the cap
  std::vector<double> total_;  // Phi(m) for prepared m above the cap
};

}  // namespace dust
