#pragma once

#include <cstdint>
#include <limits>
#include <memory>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace dust {

/// nu(dx) = c x^{a-3} (1-x)^{b-1} dx. The dust condition is a > 1.
struct BetaFamily {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
};

/// nu(dx) = dx on [0, 1]; the same measure as BetaFamily{3, 1, 1}.
struct Lebesgue {};

/// nu(dx) = x^{a-2} / ((1-x) |log(1-x)|^d) dx.
struct LogSingular {
  double a = 0.0;
  double d = 0.0;
};

/// Measure given through its right tail nu([x,1]) = |log x|^rho / (1 + |log x|^rho).
struct TailRho {
  double rho = 0.0;
};

/// Tail values on a grid of points in (0, 1]. Between grid points the tail is
/// linear (piecewise constant density); there is no mass below the first
/// point, and above the last point the tail decreases linearly to 0 at x = 1.
struct TabulatedTail {
  std::vector<double> x;
  std::vector<double> tail;
};

/// Measure of the gamma subordinator with Laplace exponent
/// alpha * log(1 + z / beta): nu(dx) = alpha (1-x)^{beta-1} / |log(1-x)| dx.
struct GammaPhi {
  double alpha = 0.0;
  double beta = 0.0;
};

using MeasureParams =
    std::variant<BetaFamily, Lebesgue, LogSingular, TailRho, TabulatedTail, GammaPhi>;

struct DustCheck {
  bool ok = false;
  std::string diagnostic;
};

/// Decides int_0^1 x nu(dx) < infinity (and the remaining admissibility
/// conditions on the parameters) without constructing a spec.
DustCheck dust_check(const MeasureParams& params);

/// A nonnegative value that may be +infinity; infinity is a flag, never a
/// sentinel number.
struct Moment {
  double value = 0.0;
  bool infinite = false;

  static Moment finite(double v) { return {v, false}; }
  static Moment infinity() { return {std::numeric_limits<double>::infinity(), true}; }
  bool is_finite() const { return !infinite; }
};

/// Moments of the driving measure.
///  - m:     int |log(1-x)| nu(dx)     (mean of S_1)
///  - s2:    int |log(1-x)|^2 nu(dx)   (variance of S_1)
///  - theta: int |log x| nu(dx)
///  - mu1:   int x nu(dx)
struct MomentSet {
  Moment m;
  Moment s2;
  Moment theta;
  Moment mu1;
};

namespace detail {
class MeasureModel;
}

/// Immutable, cheaply copyable description of a driving measure. Every
/// constructed spec satisfies the dust condition.
class MeasureSpec {
 public:
  explicit MeasureSpec(MeasureParams params);

  /// Beta family with c = 1 / B(a, b).
  static MeasureSpec beta(double a, double b);
  static MeasureSpec beta(double a, double b, double c);
  static MeasureSpec lebesgue();
  static MeasureSpec log_singular(double a, double d);
  static MeasureSpec tail_rho(double rho);
  static MeasureSpec tabulated(std::vector<double> x, std::vector<double> tail);
  static MeasureSpec gamma_phi(double alpha, double beta);

  /// Parses the CLI text form: `beta:a=1.5,b=1,c=auto`, `lebesgue`,
  /// `logsing:a=3.4,d=2.4`, `tailrho:rho=0.3`, `table:@path.csv`,
  /// `gamma:alpha=1,beta=1`.
  static MeasureSpec parse(std::string_view text);

  /// Canonical text form; `parse(describe())` reproduces this MeasureSpec (tables are
  /// written inline as `table:x1:t1;x2:t2;...`).
  std::string describe() const;

  const MeasureParams& params() const;

  /// nu([0,1]); +infinity for infinite measures.
  double total_mass() const;
  bool is_finite() const;

  /// True when lambda/phi have closed forms (beta family, Lebesgue).
  bool has_closed_form_rates() const;

  /// lambda_{m,k} = int x^k (1-x)^{m-k} nu(dx), 0 <= k <= m. k = 0 is only
  /// finite for finite measures; otherwise throws "rate divergent".
  double lambda_rate(std::int64_t m, std::int64_t k) const;

  /// phi_{m,k} = C(m,k) lambda_{m,k}, with the binomial taken in log space.
  double phi_rate(std::int64_t m, std::int64_t k) const;

  /// Phi(z) = int (1 - (1-x)^z) nu(dx), z >= 0.
  double laplace_exponent(double z) const;

  /// nu([x,1]) for 0 < x < 1.
  double tail(double x) const;

  /// log nu([1 - e^{-y}, 1]) for y > 0: the log tail of the jump size
  /// y = -log(1-x), accurate for large y.
  double log_jump_tail(double y) const;

  MomentSet moments() const;

 private:
  std::shared_ptr<const detail::MeasureModel> model_;
};

}  // namespace dust
