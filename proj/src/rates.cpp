#include "dust/rates.hpp"

#include <algorithm>
#include <cmath>

#include "dust/error.hpp"
#include "dust/special.hpp"

namespace dust {

struct RateTable::Slot {
  std::once_flag once;
  Row row;
};

RateTable::RateTable(MeasureSpec spec, std::int64_t row_cap)
    : spec_(std::move(spec)), row_cap_(std::max<std::int64_t>(row_cap, 1)) {
  if (const auto* b = std::get_if<BetaFamily>(&spec_.params())) {
    beta_closed_ = true;
    a_ = b->a;
    b_ = b->b;
    c_ = b->c;
  } else if (std::holds_alternative<Lebesgue>(spec_.params())) {
    beta_closed_ = true;
    a_ = 3.0;
    b_ = 1.0;
    c_ = 1.0;
  }
  slots_ = std::make_unique<Slot[]>(static_cast<std::size_t>(row_cap_ + 1));
}

RateTable::~RateTable() = default;

bool RateTable::sequential(std::int64_t m) const { return beta_closed_ && m > row_cap_; }

RateTable::Row RateTable::build_row(std::int64_t m) const {
  Row r;
  r.cumulative.resize(static_cast<std::size_t>(m));
  double acc = 0.0;
  for (std::int64_t k = 1; k <= m; ++k) {
    acc += spec_.phi_rate(m, k);
    r.cumulative[static_cast<std::size_t>(k - 1)] = acc;
  }
  if (!(acc > 0.0) || !std::isfinite(acc)) {
    throw Error("rate table: total rate out of m=" + std::to_string(m) + " is " +
                std::to_string(acc));
  }
  return r;
}

const RateTable::Row& RateTable::row(std::int64_t m) const {
  if (m < 1) throw Error("rate table: m must be positive");
  if (m <= row_cap_) {
    Slot& slot = slots_[static_cast<std::size_t>(m)];
    std::call_once(slot.once, [&] { slot.row = build_row(m); });
    return slot.row;
  }
  {
    std::shared_lock lock(overflow_mutex_);
    auto it = overflow_.find(m);
    if (it != overflow_.end()) return *it->second;
  }
  auto built = std::make_shared<const Row>(build_row(m));
  std::unique_lock lock(overflow_mutex_);
  auto [it, inserted] = overflow_.emplace(m, std::move(built));
  return *it->second;
}

double RateTable::total_rate(std::int64_t m) const {
  if (sequential(m)) {
    const std::size_t i = static_cast<std::size_t>(m - row_cap_ - 1);
    if (i < total_.size()) return total_[i];
    return spec_.laplace_exponent(static_cast<double>(m));
  }
  return row(m).cumulative.back();
}

double RateTable::null_rate(std::int64_t m) const {
  if (!spec_.is_finite()) throw Error("phi_{m,0} is infinite for an infinite measure");
  return spec_.lambda_rate(m, 0);
}

double RateTable::sequential_head(std::int64_t m) const {
  const std::size_t i = static_cast<std::size_t>(m - row_cap_ - 1);
  if (i < head_.size()) return head_[i];
  const double md = static_cast<double>(m);
  return md * c_ * std::exp(log_beta(a_ - 1.0, b_ + md - 1.0));
}

void RateTable::prepare(std::int64_t m_max) {
  if (!beta_closed_ || m_max <= row_cap_) return;
  const std::size_t have = head_.size();
  const std::size_t want = static_cast<std::size_t>(m_max - row_cap_);
  if (want <= have) return;
  head_.resize(want);
  total_.resize(want);
  for (std::size_t i = have; i < want; ++i) {
    const std::int64_t m = row_cap_ + 1 + static_cast<std::int64_t>(i);
    const double md = static_cast<double>(m);
    head_[i] = md * c_ * std::exp(log_beta(a_ - 1.0, b_ + md - 1.0));
    total_[i] = spec_.laplace_exponent(md);
  }
}

std::int64_t RateTable::sample_sequential(std::int64_t m, Rng& rng) const {
  const double md = static_cast<double>(m);
  const double target = rng.uniform() * total_rate(m);
  double phi = sequential_head(m);
  double acc = phi;
  std::int64_t k = 1;
  while (acc < target && k < m) {
    const double kd = static_cast<double>(k);
    phi *= (md - kd) * (a_ + kd - 2.0) / ((kd + 1.0) * (b_ + md - kd - 1.0));
    ++k;
    acc += phi;
  }
  return k;
}

std::int64_t RateTable::sample_merge_size(std::int64_t m, Rng& rng) const {
  if (m == 1) return 1;
  if (sequential(m)) return sample_sequential(m, rng);
  const auto& cum = row(m).cumulative;
  const double target = rng.uniform() * cum.back();
  auto it = std::upper_bound(cum.begin(), cum.end(), target);
  if (it == cum.end()) --it;
  return static_cast<std::int64_t>(it - cum.begin()) + 1;
}

std::vector<double> RateTable::decrement_distribution(std::int64_t m) const {
  std::vector<double> out(static_cast<std::size_t>(m));
  if (m <= row_cap_ || !beta_closed_) {
    const auto& cum = row(m).cumulative;
    double prev = 0.0;
    for (std::size_t i = 0; i < cum.size(); ++i) {
      out[i] = (cum[i] - prev) / cum.back();
      prev = cum[i];
    }
    return out;
  }
  double total = 0.0;
  for (std::int64_t k = 1; k <= m; ++k) {
    out[static_cast<std::size_t>(k - 1)] = spec_.phi_rate(m, k);
    total += out[static_cast<std::size_t>(k - 1)];
  }
  for (double& v : out) v /= total;
  return out;
}

}  // namespace dust
