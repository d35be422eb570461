#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <map>
#include <vector>

namespace dust {

/// sup_x |F_n(x) - F(x)| for a one-sample test against a continuous CDF.
double ks_distance(std::vector<double> sample, const std::function<double(double)>& cdf);

/// Two-sample Kolmogorov-Smirnov statistic, evaluated at the pooled points.
double ks_distance(std::vector<double> a, std::vector<double> b);

double normal_cdf(double x);

/// (1/N) sum_j exp(i z x_j) for each z.
std::vector<std::complex<double>> empirical_cf(const std::vector<double>& sample,
                                               const std::vector<double>& z);

struct MomentEstimate {
  double estimate = 0.0;
  double lower = 0.0;
  double upper = 0.0;
};

/// k-th raw moment with a 99% normal-approximation interval.
MomentEstimate moment_ci(const std::vector<double>& sample, int k);

/// Total variation distance between two (unnormalized) histograms.
double tv_distance(const std::map<std::int64_t, double>& a, const std::map<std::int64_t, double>& b);

struct ChiSquareResult {
  double statistic = 0.0;
  int dof = 0;
  double p_value = 1.0;
};

/// Goodness of fit of observed counts to expected counts; cells with
/// expected count below 5 are pooled (in order of the keys).
ChiSquareResult chi_square(const std::map<std::int64_t, double>& observed,
                           const std::map<std::int64_t, double>& expected);

/// Homogeneity of two count histograms (2 x C table); cells whose pooled
/// expected count is below 5 in either row are merged.
ChiSquareResult chi_square_two_sample(const std::map<std::int64_t, double>& a,
                                      const std::map<std::int64_t, double>& b);

/// Streaming mean and variance with an associative merge.
class RunningMoments {
 public:
  void add(double x);
  void merge(const RunningMoments& other);
  std::int64_t count() const { return n_; }
  double mean() const { return mean_; }
  double variance() const;
  double std_error() const;

 private:
  std::int64_t n_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
};

}  // namespace dust
