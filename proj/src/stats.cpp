#include "dust/stats.hpp"

#include <algorithm>
#include <cmath>

#include <boost/math/special_functions/gamma.hpp>

#include "dust/error.hpp"

namespace dust {

namespace {

constexpr double kZ99 = 2.5758293035489004;

void require_finite(const std::vector<double>& v, const char* what) {
  if (v.empty()) throw Error(std::string(what) + ": empty sample");
  for (double x : v) {
    if (!std::isfinite(x)) throw Error(std::string(what) + ": non-finite value in sample");
  }
}

double chi_square_p(double stat, int dof) {
  if (dof <= 0) return 1.0;
  return boost::math::gamma_q(0.5 * dof, 0.5 * stat);
}

}  // namespace

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

double ks_distance(std::vector<double> sample, const std::function<double(double)>& cdf) {
  require_finite(sample, "ks_distance");
  std::sort(sample.begin(), sample.end());
  const double n = static_cast<double>(sample.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sample.size(); ++i) {
    const double f = cdf(sample[i]);
    d = std::max(d, std::max(static_cast<double>(i + 1) / n - f, f - static_cast<double>(i) / n));
  }
  return std::min(d, 1.0);
}

double ks_distance(std::vector<double> a, std::vector<double> b) {
  require_finite(a, "ks_distance");
  require_finite(b, "ks_distance");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  std::size_t i = 0;
  std::size_t j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= x) ++i;
    while (j < b.size() && b[j] <= x) ++j;
    d = std::max(d, std::fabs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  return d;
}

std::vector<std::complex<double>> empirical_cf(const std::vector<double>& sample,
                                               const std::vector<double>& z) {
  require_finite(sample, "empirical_cf");
  std::vector<std::complex<double>> out;
  out.reserve(z.size());
  for (double zz : z) {
    if (zz == 0.0) {
      out.emplace_back(1.0, 0.0);
      continue;
    }
    double re = 0.0;
    double im = 0.0;
    for (double x : sample) {
      re += std::cos(zz * x);
      im += std::sin(zz * x);
    }
    const double n = static_cast<double>(sample.size());
    out.emplace_back(re / n, im / n);
  }
  return out;
}

MomentEstimate moment_ci(const std::vector<double>& sample, int k) {
  require_finite(sample, "moment_ci");
  if (sample.size() < 30) throw Error("moment_ci: need at least 30 values");
  if (k < 1) throw Error("moment_ci: k must be positive");
  RunningMoments acc;
  for (double x : sample) acc.add(std::pow(x, k));
  const double half = kZ99 * acc.std_error();
  return {acc.mean(), acc.mean() - half, acc.mean() + half};
}

double tv_distance(const std::map<std::int64_t, double>& a, const std::map<std::int64_t, double>& b) {
  double ta = 0.0;
  double tb = 0.0;
  for (const auto& [k, v] : a) ta += v;
  for (const auto& [k, v] : b) tb += v;
  if (!(ta > 0.0) || !(tb > 0.0)) throw Error("tv_distance: empty histogram");
  std::map<std::int64_t, double> diff;
  for (const auto& [k, v] : a) diff[k] += v / ta;
  for (const auto& [k, v] : b) diff[k] -= v / tb;
  double s = 0.0;
  for (const auto& [k, v] : diff) s += std::fabs(v);
  return std::min(0.5 * s, 1.0);
}

ChiSquareResult chi_square(const std::map<std::int64_t, double>& observed,
                           const std::map<std::int64_t, double>& expected) {
  if (expected.empty()) throw Error("chi_square: empty expected histogram");
  for (const auto& [k, v] : observed) {
    if (v > 0.0 && expected.find(k) == expected.end()) {
      throw Error("chi_square: observed count outside the expected support");
    }
  }
  std::vector<double> o;
  std::vector<double> e;
  double po = 0.0;
  double pe = 0.0;
  for (const auto& [k, ev] : expected) {
    auto it = observed.find(k);
    po += it == observed.end() ? 0.0 : it->second;
    pe += ev;
    if (pe >= 5.0) {
      o.push_back(po);
      e.push_back(pe);
      po = 0.0;
      pe = 0.0;
    }
  }
  if (pe > 0.0 || po > 0.0) {
    if (e.empty()) {
      o.push_back(po);
      e.push_back(pe);
    } else {
      o.back() += po;
      e.back() += pe;
    }
  }
  ChiSquareResult r;
  for (std::size_t i = 0; i < o.size(); ++i) {
    const double d = o[i] - e[i];
    r.statistic += d * d / e[i];
  }
  r.dof = static_cast<int>(o.size()) - 1;
  r.p_value = chi_square_p(r.statistic, r.dof);
  return r;
}

ChiSquareResult chi_square_two_sample(const std::map<std::int64_t, double>& a,
                                      const std::map<std::int64_t, double>& b) {
  std::map<std::int64_t, std::pair<double, double>> cells;
  double na = 0.0;
  double nb = 0.0;
  for (const auto& [k, v] : a) {
    cells[k].first += v;
    na += v;
  }
  for (const auto& [k, v] : b) {
    cells[k].second += v;
    nb += v;
  }
  if (!(na > 0.0) || !(nb > 0.0)) throw Error("chi_square_two_sample: empty histogram");
  const double total = na + nb;
  const double fa = na / total;
  const double fb = nb / total;
  std::vector<std::pair<double, double>> pooled;
  std::pair<double, double> run{0.0, 0.0};
  for (const auto& [k, c] : cells) {
    run.first += c.first;
    run.second += c.second;
    const double col = run.first + run.second;
    if (col * fa >= 5.0 && col * fb >= 5.0) {
      pooled.push_back(run);
      run = {0.0, 0.0};
    }
  }
  if (run.first + run.second > 0.0) {
    if (pooled.empty()) {
      pooled.push_back(run);
    } else {
      pooled.back().first += run.first;
      pooled.back().second += run.second;
    }
  }
  ChiSquareResult r;
  for (const auto& c : pooled) {
    const double col = c.first + c.second;
    const double ea = col * fa;
    const double eb = col * fb;
    r.statistic += (c.first - ea) * (c.first - ea) / ea + (c.second - eb) * (c.second - eb) / eb;
  }
  r.dof = static_cast<int>(pooled.size()) - 1;
  r.p_value = chi_square_p(r.statistic, r.dof);
  return r;
}

void RunningMoments::add(double x) {
  ++n_;
  const double delta = x - mean_;
  mean_ += delta / static_cast<double>(n_);
  m2_ += delta * (x - mean_);
}

void RunningMoments::merge(const RunningMoments& other) {
  if (other.n_ == 0) return;
  if (n_ == 0) {
    *this = other;
    return;
  }
  const double na = static_cast<double>(n_);
  const double nb = static_cast<double>(other.n_);
  const double delta = other.mean_ - mean_;
  const double n = na + nb;
  mean_ += delta * nb / n;
  m2_ += other.m2_ + delta * delta * na * nb / n;
  n_ += other.n_;
}

double RunningMoments::variance() const {
  return n_ > 1 ? m2_ / static_cast<double>(n_ - 1) : 0.0;
}

double RunningMoments::std_error() const {
  return n_ > 0 ? std::sqrt(variance() / static_cast<double>(n_)) : 0.0;
}

}  // namespace dust
