#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <vector>

#include "dust/coalescent.hpp"
#include "dust/measure.hpp"
#include "dust/random.hpp"

namespace dust {

enum class JumpMethod {
  Automatic,  // exact sampler for the family when one exists, spline otherwise
  Spline,     // always the tabulated inverse of the jump tail
};

/// Jumps y = -log(1 - x) of the compound Poisson subordinator, x ~ nu / nu([0,1]).
class JumpSampler {
 public:
  explicit JumpSampler(const MeasureSpec& spec, JumpMethod method = JumpMethod::Automatic);
  ~JumpSampler();
  JumpSampler(JumpSampler&&) noexcept;
  JumpSampler& operator=(JumpSampler&&) noexcept;

  /// nu([0,1]), the jump rate.
  double rate() const { return rate_; }
  double sample(Rng& rng) const;
  /// x = 1 - e^{-y} for a sampled jump.
  double sample_fraction(Rng& rng) const;
  bool uses_spline() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
  double rate_ = 0.0;
};

struct SubordinatorPath {
  std::vector<double> times;
  std::vector<double> jumps;
  double rate = 0.0;

  double level() const;
};

/// Runs the path until it first exceeds `level` or until `horizon`,
/// whichever comes first. Both default to unlimited, but one must be finite.
struct PathStop {
  double level = std::numeric_limits<double>::infinity();
  double horizon = std::numeric_limits<double>::infinity();
};

SubordinatorPath sample_cpp_path(const JumpSampler& jumps, const PathStop& stop, Rng& rng);

struct Passage {
  double time = 0.0;
  double overshoot = 0.0;
};

/// T_s = inf{t : S_t > s} and S_{T_s} - s.
Passage first_passage(const JumpSampler& jumps, double level, Rng& rng);

/// Sampler of one unit-time increment S_1.
using StepSampler = std::function<double(Rng&)>;
StepSampler unit_increment(const JumpSampler& jumps);
/// S_1 ~ Gamma(alpha, rate beta) for the gamma subordinator.
StepSampler gamma_increment(double alpha, double beta);

/// Number of points of the random walk with steps S_1 in [0, level],
/// the origin included.
std::int64_t renewal_count(const StepSampler& step, double level, Rng& rng);

struct Composition {
  SizeCounts K_r;
  double passage_time = 0.0;  // time at which the last mark is passed
};

/// Groups n exponential marks by the jump of S that passes them.
Composition regenerative_composition(const JumpSampler& jumps, std::int64_t n, Rng& rng);

/// int_0^T exp(-gamma S_t) dt along a recorded path.
double exp_functional_of_path(const SubordinatorPath& path, double gamma, double horizon);

/// Horizon T with exp(-T Phi(gamma)) = epsilon, the relative truncation
/// bias of the exponential functional.
double exp_functional_horizon(const MeasureSpec& spec, double gamma, double epsilon);

/// Samples of I = int_0^T exp(-gamma S_t) dt for compound Poisson
/// subordinators (exact) and for the gamma subordinator (jumps below
/// `small_jump` replaced by their mean drift).
class ExpFunctionalSampler {
 public:
  ExpFunctionalSampler(const MeasureSpec& spec, double gamma, double horizon,
                       double epsilon = 1e-4, double small_jump = 1e-3);
  ~ExpFunctionalSampler();
  ExpFunctionalSampler(ExpFunctionalSampler&&) noexcept;

  double sample(Rng& rng) const;
  double horizon() const { return horizon_; }

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
  double gamma_ = 0.0;
  double horizon_ = 0.0;
};

/// k! / prod_{i=1}^k Phi(gamma i).
double exp_functional_moment(const MeasureSpec& spec, double gamma, int k);

}  // namespace dust
