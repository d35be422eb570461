#include "dust/measure.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include <boost/math/special_functions/beta.hpp>
#include <boost/math/special_functions/expint.hpp>

#include "dust/error.hpp"
#include "dust/quadrature.hpp"
#include "dust/special.hpp"

namespace dust {

namespace detail {

class MeasureModel {
 public:
  explicit MeasureModel(MeasureParams params) : params_(std::move(params)) {}
  virtual ~MeasureModel() = default;

  virtual double total_mass() const = 0;
  virtual bool closed_form() const { return false; }
  virtual double lambda(std::int64_t m, std::int64_t k) const = 0;
  virtual double log_lambda(std::int64_t m, std::int64_t k) const {
    return std::log(lambda(m, k));
  }
  virtual double laplace(double z) const = 0;
  virtual double tail(double x) const = 0;
  virtual double log_jump_tail(double y) const {
    const double x = -std::expm1(-y);
    if (!(x < 1.0)) return -std::numeric_limits<double>::infinity();
    return std::log(tail(x));
  }
  virtual MomentSet moments() const = 0;

  const MeasureParams& params() const { return params_; }

 private:
  MeasureParams params_;
};

}  // namespace detail

namespace {

using detail::MeasureModel;

std::string num(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

[[noreturn]] void divergent(std::int64_t m, std::int64_t k) {
  throw Error("rate divergent: lambda_{" + std::to_string(m) + "," + std::to_string(k) +
              "} is infinite for an infinite measure");
}

// ---------------------------------------------------------------------------
// Beta family c x^{a-3} (1-x)^{b-1}.

double x_of_y(double y) { return -std::expm1(-y); }
double y_of_x(double x) { return -std::log1p(-x); }

class BetaModel : public MeasureModel {
 public:
  BetaModel(MeasureParams params, double a, double b, double c)
      : MeasureModel(std::move(params)), a_(a), b_(b), c_(c), log_c_(std::log(c)) {}

  double total_mass() const override {
    if (a_ <= 2.0) return std::numeric_limits<double>::infinity();
    return c_ * std::exp(log_beta(a_ - 2.0, b_));
  }

  bool closed_form() const override { return true; }

  double log_lambda(std::int64_t m, std::int64_t k) const override {
    if (k == 0) {
      if (a_ <= 2.0) divergent(m, k);
      return log_c_ + log_beta(a_ - 2.0, b_ + static_cast<double>(m));
    }
    return log_c_ + log_beta(a_ + static_cast<double>(k) - 2.0,
                             b_ + static_cast<double>(m - k));
  }

  double lambda(std::int64_t m, std::int64_t k) const override {
    return std::exp(log_lambda(m, k));
  }

  double laplace(double z) const override {
    if (z == 0.0) return 0.0;
    const double s = a_ - 2.0;
    if (s == 0.0) return c_ * (digamma(b_ + z) - digamma(b_));
    if (std::fabs(s) < 1e-4) return laplace_quadrature(z);
    return c_ * (signed_beta(s, b_) - signed_beta(s, b_ + z));
  }

  double tail(double x) const override {
    if (a_ > 2.0) return total_mass() * boost::math::ibetac(a_ - 2.0, b_, x);
    const double a = a_;
    const double b = b_;
    return c_ * integrate_unit(
                    [a, b](double t, double u) {
                      return std::pow(t, a - 3.0) * std::pow(u, b - 1.0);
                    },
                    x, 1.0);
  }

  double log_jump_tail(double y) const override {
    if (a_ <= 2.0) {
      const double a = a_;
      const double b = b_;
      return std::log(c_) + std::log(integrate_half_line(
                                [a, b](double w) {
                                  return std::exp((a - 3.0) * std::log(x_of_y(w)) - b * w);
                                },
                                y));
    }
    return std::log(total_mass()) + std::log(boost::math::ibeta(b_, a_ - 2.0, std::exp(-y)));
  }

  MomentSet moments() const override {
    MomentSet out;
    const double s = a_ - 2.0;
    const double b = b_;
    out.mu1 = Moment::finite(c_ * std::exp(log_beta(a_ - 1.0, b_)));
    if (s == 0.0) {
      out.m = Moment::finite(c_ * hurwitz_zeta(2.0, b));
      out.s2 = Moment::finite(c_ * 2.0 * hurwitz_zeta(3.0, b));
    } else if (std::fabs(s) < 1e-4) {
      out.m = Moment::finite(quadrature_moment(1));
      out.s2 = Moment::finite(quadrature_moment(2));
    } else {
      // int x^{s-1} (1-x)^{b-1} log^j(1-x) dx written so that s + b -> 0 is
      // regular: with u = s + b and D = psi(u+1) - psi(b),
      //   j=1: Gamma(s)Gamma(b)/Gamma(u+1) * (u D - 1)
      //   j=2: Gamma(s)Gamma(b)/Gamma(u+1) * (u (D^2 + psi'(b) - psi'(u+1)) - 2D)
      const double u = s + b;
      const double g = (s < 0.0 ? -1.0 : 1.0) *
                       std::exp(std::lgamma(s) + std::lgamma(b) - std::lgamma(u + 1.0));
      const double D = digamma(u + 1.0) - digamma(b);
      const double j1 = g * (u * D - 1.0);
      const double j2 = g * (u * (D * D + trigamma(b) - trigamma(u + 1.0)) - 2.0 * D);
      out.m = Moment::finite(c_ * j1);
      out.s2 = Moment::finite(c_ * j2);
    }
    if (s > 0.0) {
      out.theta = Moment::finite(c_ * std::exp(log_beta(s, b)) * (digamma(s + b) - digamma(s)));
    } else {
      out.theta = Moment::infinity();
    }
    return out;
  }

 private:
  double laplace_quadrature(double z) const {
    const double a = a_;
    const double b = b_;
    return c_ * integrate_unit([a, b, z](double x, double u) {
             return -std::expm1(z * std::log(u)) * std::pow(x, a - 3.0) *
                    std::pow(u, b - 1.0);
           });
  }

  double quadrature_moment(int power) const {
    const double a = a_;
    const double b = b_;
    return c_ * integrate_unit([a, b, power](double x, double u) {
             return std::pow(-std::log(u), power) * std::pow(x, a - 3.0) *
                    std::pow(u, b - 1.0);
           });
  }

  double a_;
  double b_;
  double c_;
  double log_c_;
};

class LebesgueModel : public BetaModel {
 public:
  LebesgueModel() : BetaModel(Lebesgue{}, 3.0, 1.0, 1.0) {}

  double total_mass() const override { return 1.0; }
  double laplace(double z) const override { return z / (z + 1.0); }
  double tail(double x) const override { return 1.0 - x; }
  double log_jump_tail(double y) const override { return -y; }
  MomentSet moments() const override {
    return {Moment::finite(1.0), Moment::finite(2.0), Moment::finite(1.0),
            Moment::finite(0.5)};
  }
};

// ---------------------------------------------------------------------------
// Integrals in the jump variable y = -log(1-x), x = 1 - e^{-y}.


// nu(dx) = x^{a-2} y^{-d} dy.
class LogSingularModel : public MeasureModel {
 public:
  LogSingularModel(MeasureParams params, double a, double d)
      : MeasureModel(std::move(params)), a_(a), d_(d) {
    // Finite exactly when x^{a-2-d} is integrable at 0.
    total_ = a_ > d_ + 1.0 ? integrate_weighted([](double, double) { return 1.0; })
                           : std::numeric_limits<double>::infinity();
  }

  double total_mass() const override { return total_; }

  double lambda(std::int64_t m, std::int64_t k) const override {
    if (k == 0 && !std::isfinite(total_)) divergent(m, k);
    const double kk = static_cast<double>(k);
    const double rest = static_cast<double>(m - k);
    return integrate_weighted([kk, rest](double x, double y) {
      return std::exp(kk * std::log(x) - rest * y);
    });
  }

  double laplace(double z) const override {
    if (z == 0.0) return 0.0;
    return integrate_weighted([z](double, double y) { return -std::expm1(-z * y); });
  }

  double tail(double x) const override {
    const double a = a_;
    const double d = d_;
    return integrate_half_line(
        [a, d](double y) { return std::exp((a - 2.0) * std::log(x_of_y(y)) - d * std::log(y)); },
        y_of_x(x));
  }

  double log_jump_tail(double y) const override {
    const double a = a_;
    const double d = d_;
    return std::log(integrate_half_line(
        [a, d](double w) { return std::exp((a - 2.0) * std::log(x_of_y(w)) - d * std::log(w)); },
        y));
  }

  MomentSet moments() const override {
    MomentSet out;
    out.mu1 = Moment::finite(integrate_weighted([](double x, double) { return x; }));
    out.m = d_ > 2.0 ? Moment::finite(integrate_weighted([](double, double y) { return y; }))
                     : Moment::infinity();
    out.s2 = d_ > 3.0
                 ? Moment::finite(integrate_weighted([](double, double y) { return y * y; }))
                 : Moment::infinity();
    out.theta = a_ > d_ + 1.0 ? Moment::finite(integrate_weighted(
                                    [](double x, double) { return -std::log(x); }))
                              : Moment::infinity();
    return out;
  }

 private:
  template <class F>
  double integrate_weighted(F f) const {
    const double a = a_;
    const double d = d_;
    return integrate_half_line([a, d, &f](double y) {
      const double x = x_of_y(y);
      const double w = std::exp((a - 2.0) * std::log(x) - d * std::log(y));
      return f(x, y) * w;
    }, 0.0, 1e-11);
  }

  double a_;
  double d_;
  double total_ = 0.0;
};

// nu(dx) = alpha e^{-beta y} / y dy.
class GammaPhiModel : public MeasureModel {
 public:
  GammaPhiModel(MeasureParams params, double alpha, double beta)
      : MeasureModel(std::move(params)), alpha_(alpha), beta_(beta) {}

  double total_mass() const override { return std::numeric_limits<double>::infinity(); }

  double lambda(std::int64_t m, std::int64_t k) const override {
    if (k == 0) divergent(m, k);
    const double kk = static_cast<double>(k);
    const double rest = static_cast<double>(m - k);
    const double alpha = alpha_;
    const double beta = beta_;
    return integrate_half_line([=](double y) {
      return alpha * std::exp(kk * std::log(x_of_y(y)) - (rest + beta) * y - std::log(y));
    });
  }

  double laplace(double z) const override { return alpha_ * std::log1p(z / beta_); }

  double tail(double x) const override {
    return alpha_ * boost::math::expint(1, beta_ * y_of_x(x));
  }

  MomentSet moments() const override {
    MomentSet out;
    out.m = Moment::finite(alpha_ / beta_);
    out.s2 = Moment::finite(alpha_ / (beta_ * beta_));
    out.theta = Moment::infinity();
    const double alpha = alpha_;
    const double beta = beta_;
    out.mu1 = Moment::finite(integrate_half_line(
        [=](double y) { return alpha * x_of_y(y) * std::exp(-beta * y) / y; }));
    return out;
  }

 private:
  double alpha_;
  double beta_;
};

// ---------------------------------------------------------------------------
// Tail-specified measure; rates by integration by parts against the tail.

class TailRhoModel : public MeasureModel {
 public:
  TailRhoModel(MeasureParams params, double rho) : MeasureModel(std::move(params)), rho_(rho) {}

  double total_mass() const override { return 1.0; }

  double tail(double x) const override { return tail_with_complement(x, 1.0 - x); }

  double log_jump_tail(double y) const override {
    const double L = y > 0.5 ? -std::log1p(-std::exp(-y)) : -std::log(-std::expm1(-y));
    const double lp = rho_ * std::log(L);
    return lp - std::log1p(std::exp(lp));
  }

  double lambda(std::int64_t m, std::int64_t k) const override {
    const double mm = static_cast<double>(m);
    const double kk = static_cast<double>(k);
    if (k == 0) {
      if (m == 0) return 1.0;
      const double part = integrate_unit([this, mm](double x, double u) {
        return tail_with_complement(x, u) * std::pow(u, mm - 1.0);
      });
      return 1.0 - mm * part;
    }
    // d/dx [x^k (1-x)^{m-k}] = k x^{k-1} (1-x)^{m-k} - (m-k) x^k (1-x)^{m-k-1}
    return integrate_unit([this, mm, kk](double x, double u) {
      double deriv = kk * std::pow(x, kk - 1.0) * std::pow(u, mm - kk);
      if (mm > kk) deriv -= (mm - kk) * std::pow(x, kk) * std::pow(u, mm - kk - 1.0);
      return tail_with_complement(x, u) * deriv;
    });
  }

  double laplace(double z) const override {
    if (z == 0.0) return 0.0;
    return z * integrate_unit([this, z](double x, double u) {
             return tail_with_complement(x, u) * std::pow(u, z - 1.0);
           });
  }

  MomentSet moments() const override {
    MomentSet out;
    out.mu1 = Moment::finite(
        integrate_unit([this](double x, double u) { return tail_with_complement(x, u); }));
    out.m = Moment::finite(integrate_unit(
        [this](double x, double u) { return tail_with_complement(x, u) / u; }));
    out.s2 = Moment::finite(integrate_unit([this](double x, double u) {
      return 2.0 * tail_with_complement(x, u) * (-std::log(u)) / u;
    }));
    // int_0^infinity dL / (1 + L^rho) = (pi / rho) / sin(pi / rho)
    out.theta = rho_ > 1.0 ? Moment::finite((kPi / rho_) / std::sin(kPi / rho_))
                           : Moment::infinity();
    return out;
  }

 private:
  double tail_with_complement(double x, double one_minus_x) const {
    const double L = (x < 0.5) ? -std::log(x) : -std::log1p(-one_minus_x);
    if (L <= 0.0) return 0.0;
    const double p = std::pow(L, rho_);
    if (!std::isfinite(p)) return 1.0;
    return p / (1.0 + p);
  }

  double rho_;
};

// ---------------------------------------------------------------------------
// Piecewise linear tail: piecewise constant density, all integrals in closed form.

class TableModel : public MeasureModel {
 public:
  TableModel(MeasureParams params, const TabulatedTail& t) : MeasureModel(std::move(params)) {
    total_ = t.tail.front();
    x_ = t.x;
    tail_ = t.tail;
    for (std::size_t i = 0; i + 1 < t.x.size(); ++i) {
      const double dens = (t.tail[i] - t.tail[i + 1]) / (t.x[i + 1] - t.x[i]);
      if (dens > 0.0) segments_.push_back({t.x[i], t.x[i + 1], dens});
    }
    if (t.tail.back() > 0.0 && t.x.back() < 1.0) {
      segments_.push_back({t.x.back(), 1.0, t.tail.back() / (1.0 - t.x.back())});
    }
  }

  double total_mass() const override { return total_; }

  double tail(double x) const override {
    if (x <= x_.front()) return tail_.front();
    if (x >= x_.back()) {
      if (x_.back() >= 1.0) return 0.0;
      return tail_.back() * (1.0 - x) / (1.0 - x_.back());
    }
    const auto it = std::upper_bound(x_.begin(), x_.end(), x);
    const std::size_t i = static_cast<std::size_t>(it - x_.begin()) - 1;
    const double w = (x - x_[i]) / (x_[i + 1] - x_[i]);
    return tail_[i] + w * (tail_[i + 1] - tail_[i]);
  }

  double log_jump_tail(double y) const override {
    const double x = -std::expm1(-y);
    if (x < x_.back()) return std::log(tail(x));
    if (x_.back() >= 1.0 || tail_.back() <= 0.0) return -std::numeric_limits<double>::infinity();
    return std::log(tail_.back()) - y - std::log1p(-x_.back());
  }

  double lambda(std::int64_t m, std::int64_t k) const override {
    const double a = static_cast<double>(k) + 1.0;
    const double b = static_cast<double>(m - k) + 1.0;
    const double full = std::exp(log_beta(a, b));
    double sum = 0.0;
    for (const auto& s : segments_) {
      const double hi = s.hi >= 1.0 ? 1.0 : boost::math::ibeta(a, b, s.hi);
      const double lo = boost::math::ibeta(a, b, s.lo);
      sum += s.density * (hi - lo);
    }
    return sum * full;
  }

  double laplace(double z) const override {
    double sum = 0.0;
    for (const auto& s : segments_) {
      const double part =
          (std::pow(1.0 - s.lo, z + 1.0) - std::pow(1.0 - s.hi, z + 1.0)) / (z + 1.0);
      sum += s.density * ((s.hi - s.lo) - part);
    }
    return sum;
  }

  MomentSet moments() const override {
    auto xlogx = [](double v) { return v > 0.0 ? v * std::log(v) : 0.0; };
    // Antiderivatives of -log(1-x), log^2(1-x), -log x and x.
    auto f1 = [&](double x) { return xlogx(1.0 - x) + x; };
    auto f2 = [](double x) {
      const double u = 1.0 - x;
      if (u <= 0.0) return 0.0;
      const double L = std::log(u);
      return -u * (L * L - 2.0 * L + 2.0);
    };
    auto f3 = [&](double x) { return x - xlogx(x); };
    auto f4 = [](double x) { return 0.5 * x * x; };
    double m = 0.0, s2 = 0.0, theta = 0.0, mu1 = 0.0;
    for (const auto& s : segments_) {
      m += s.density * (f1(s.hi) - f1(s.lo));
      s2 += s.density * (f2(s.hi) - f2(s.lo));
      theta += s.density * (f3(s.hi) - f3(s.lo));
      mu1 += s.density * (f4(s.hi) - f4(s.lo));
    }
    return {Moment::finite(m), Moment::finite(s2), Moment::finite(theta), Moment::finite(mu1)};
  }

 private:
  struct Segment {
    double lo;
    double hi;
    double density;
  };
  double total_ = 0.0;
  std::vector<double> x_;
  std::vector<double> tail_;
  std::vector<Segment> segments_;
};

std::shared_ptr<const MeasureModel> make_model(const MeasureParams& params) {
  return std::visit(
      [&](const auto& p) -> std::shared_ptr<const MeasureModel> {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, BetaFamily>) {
          return std::make_shared<BetaModel>(params, p.a, p.b, p.c);
        } else if constexpr (std::is_same_v<T, Lebesgue>) {
          return std::make_shared<LebesgueModel>();
        } else if constexpr (std::is_same_v<T, LogSingular>) {
          return std::make_shared<LogSingularModel>(params, p.a, p.d);
        } else if constexpr (std::is_same_v<T, TailRho>) {
          return std::make_shared<TailRhoModel>(params, p.rho);
        } else if constexpr (std::is_same_v<T, TabulatedTail>) {
          return std::make_shared<TableModel>(params, p);
        } else {
          return std::make_shared<GammaPhiModel>(params, p.alpha, p.beta);
        }
      },
      params);
}

bool positive_finite(double v) { return std::isfinite(v) && v > 0.0; }

// ---------------------------------------------------------------------------
// Text form.

std::string trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

double parse_number(const std::string& text, const std::string& context) {
  const std::string t = trim(text);
  double v = 0.0;
  auto res = std::from_chars(t.data(), t.data() + t.size(), v);
  if (res.ec != std::errc() || res.ptr != t.data() + t.size()) {
    throw Error("invalid number '" + t + "' in measure spec '" + context + "'");
  }
  return v;
}

std::map<std::string, std::string> parse_keys(std::string_view body, const std::string& context) {
  std::map<std::string, std::string> out;
  std::size_t pos = 0;
  while (pos <= body.size()) {
    const std::size_t comma = body.find(',', pos);
    const std::string_view item =
        body.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos);
    if (!trim(item).empty()) {
      const std::size_t eq = item.find('=');
      if (eq == std::string_view::npos) {
        throw Error("expected key=value in measure spec '" + context + "'");
      }
      out[trim(item.substr(0, eq))] = trim(item.substr(eq + 1));
    }
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return out;
}

TabulatedTail read_table_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open table file '" + path + "'");
  TabulatedTail t;
  std::string line;
  while (std::getline(in, line)) {
    const std::string s = trim(line);
    if (s.empty() || s[0] == '#') continue;
    const std::size_t comma = s.find(',');
    if (comma == std::string::npos) throw Error("table row without comma: '" + s + "'");
    const std::string xs = trim(s.substr(0, comma));
    if (xs == "x") continue;  // header
    t.x.push_back(parse_number(xs, path));
    t.tail.push_back(parse_number(s.substr(comma + 1), path));
  }
  return t;
}

TabulatedTail parse_inline_table(std::string_view body, const std::string& context) {
  TabulatedTail t;
  std::size_t pos = 0;
  while (pos < body.size()) {
    const std::size_t semi = body.find(';', pos);
    const std::string_view item =
        body.substr(pos, semi == std::string_view::npos ? std::string_view::npos : semi - pos);
    const std::size_t colon = item.find(':');
    if (colon == std::string_view::npos) throw Error("expected x:tail in '" + context + "'");
    t.x.push_back(parse_number(std::string(item.substr(0, colon)), context));
    t.tail.push_back(parse_number(std::string(item.substr(colon + 1)), context));
    if (semi == std::string_view::npos) break;
    pos = semi + 1;
  }
  return t;
}

}  // namespace

DustCheck dust_check(const MeasureParams& params) {
  return std::visit(
      [](const auto& p) -> DustCheck {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, BetaFamily>) {
          if (!std::isfinite(p.a) || !(p.a > 1.0)) {
            return {false, "beta family needs a > 1 for int x nu(dx) < infinity (a=" +
                               num(p.a) + "; a < 1 comes down from infinity)"};
          }
          if (!positive_finite(p.b)) return {false, "beta family needs b > 0"};
          if (!positive_finite(p.c)) return {false, "beta family needs c > 0"};
          return {true, "a > 1: int x nu(dx) = c B(a-1, b) < infinity"};
        } else if constexpr (std::is_same_v<T, Lebesgue>) {
          return {true, "finite measure"};
        } else if constexpr (std::is_same_v<T, LogSingular>) {
          if (!std::isfinite(p.d) || !(p.d > 1.0)) {
            return {false, "log-singular measure needs d > 1 for finiteness near x = 1"};
          }
          if (!std::isfinite(p.a) || !(p.a > p.d)) {
            return {false, "log-singular measure needs a > d for int x nu(dx) < infinity"};
          }
          return {true, "a > d > 1: int x nu(dx) < infinity"};
        } else if constexpr (std::is_same_v<T, TailRho>) {
          if (!positive_finite(p.rho)) return {false, "tail-rho measure needs rho > 0"};
          return {true, "probability measure"};
        } else if constexpr (std::is_same_v<T, TabulatedTail>) {
          if (p.x.size() < 2 || p.x.size() != p.tail.size()) {
            return {false, "table needs at least two (x, tail) rows"};
          }
          for (std::size_t i = 0; i < p.x.size(); ++i) {
            if (!std::isfinite(p.x[i]) || !(p.x[i] > 0.0) || p.x[i] > 1.0) {
              return {false, "table grid must lie in (0, 1]"};
            }
            if (!std::isfinite(p.tail[i]) || p.tail[i] < 0.0) {
              return {false, "table tail values must be finite and nonnegative"};
            }
            if (i > 0 && !(p.x[i] > p.x[i - 1])) {
              return {false, "table grid must be strictly increasing"};
            }
            if (i > 0 && p.tail[i] > p.tail[i - 1]) {
              return {false, "table tail must be nonincreasing in x"};
            }
          }
          if (p.x.back() == 1.0 && p.tail.back() != 0.0) {
            return {false, "table puts an atom at 1 (tail(1) must be 0)"};
          }
          if (!(p.tail.front() > 0.0)) return {false, "table describes the zero measure"};
          return {true, "finite measure"};
        } else {
          if (!positive_finite(p.alpha) || !positive_finite(p.beta)) {
            return {false, "gamma measure needs alpha > 0 and beta > 0"};
          }
          return {true, "int x nu(dx) <= alpha / beta < infinity"};
        }
      },
      params);
}

MeasureSpec::MeasureSpec(MeasureParams params) {
  if (auto* beta = std::get_if<BetaFamily>(&params)) {
    if (beta->c == 0.0 && beta->a > 1.0 && beta->b > 0.0) {
      beta->c = std::exp(-log_beta(beta->a, beta->b));
    }
  }
  const DustCheck check = dust_check(params);
  if (!check.ok) throw Error("invalid measure: " + check.diagnostic);
  model_ = make_model(params);
}

MeasureSpec MeasureSpec::beta(double a, double b) {
  if (!(a > 0.0) || !(b > 0.0)) {
    throw Error("invalid measure: beta family needs a > 1 and b > 0");
  }
  return MeasureSpec(BetaFamily{a, b, std::exp(-log_beta(a, b))});
}
MeasureSpec MeasureSpec::beta(double a, double b, double c) {
  return MeasureSpec(BetaFamily{a, b, c});
}
MeasureSpec MeasureSpec::lebesgue() { return MeasureSpec(Lebesgue{}); }
MeasureSpec MeasureSpec::log_singular(double a, double d) {
  return MeasureSpec(LogSingular{a, d});
}
MeasureSpec MeasureSpec::tail_rho(double rho) { return MeasureSpec(TailRho{rho}); }
MeasureSpec MeasureSpec::tabulated(std::vector<double> x, std::vector<double> tail) {
  return MeasureSpec(TabulatedTail{std::move(x), std::move(tail)});
}
MeasureSpec MeasureSpec::gamma_phi(double alpha, double beta) {
  return MeasureSpec(GammaPhi{alpha, beta});
}

MeasureSpec MeasureSpec::parse(std::string_view text) {
  const std::string context(text);
  const std::string t = trim(text);
  const std::size_t colon = t.find(':');
  const std::string name = trim(t.substr(0, colon));
  const std::string body = colon == std::string::npos ? std::string() : t.substr(colon + 1);

  auto require = [&](const std::map<std::string, std::string>& keys, const std::string& key) {
    auto it = keys.find(key);
    if (it == keys.end()) throw Error("measure spec '" + context + "' is missing " + key);
    return parse_number(it->second, context);
  };
  auto reject_unknown = [&](const std::map<std::string, std::string>& keys,
                            std::initializer_list<const char*> allowed) {
    for (const auto& [k, v] : keys) {
      bool ok = false;
      for (const char* a : allowed) ok = ok || k == a;
      if (!ok) throw Error("unknown key '" + k + "' in measure spec '" + context + "'");
    }
  };

  if (name == "lebesgue") {
    if (!trim(body).empty()) throw Error("lebesgue takes no parameters");
    return lebesgue();
  }
  if (name == "beta") {
    const auto keys = parse_keys(body, context);
    reject_unknown(keys, {"a", "b", "c"});
    const double a = require(keys, "a");
    const double b = require(keys, "b");
    auto it = keys.find("c");
    if (it == keys.end() || it->second == "auto") return beta(a, b);
    return beta(a, b, parse_number(it->second, context));
  }
  if (name == "logsing") {
    const auto keys = parse_keys(body, context);
    reject_unknown(keys, {"a", "d"});
    return log_singular(require(keys, "a"), require(keys, "d"));
  }
  if (name == "tailrho") {
    const auto keys = parse_keys(body, context);
    reject_unknown(keys, {"rho"});
    return tail_rho(require(keys, "rho"));
  }
  if (name == "gamma") {
    const auto keys = parse_keys(body, context);
    reject_unknown(keys, {"alpha", "beta"});
    return gamma_phi(require(keys, "alpha"), require(keys, "beta"));
  }
  if (name == "table") {
    const std::string b = trim(body);
    if (!b.empty() && b[0] == '@') return MeasureSpec(read_table_csv(b.substr(1)));
    return MeasureSpec(parse_inline_table(b, context));
  }
  throw Error("unknown measure family '" + name + "' in '" + context + "'");
}

std::string MeasureSpec::describe() const {
  return std::visit(
      [](const auto& p) -> std::string {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, BetaFamily>) {
          return "beta:a=" + num(p.a) + ",b=" + num(p.b) + ",c=" + num(p.c);
        } else if constexpr (std::is_same_v<T, Lebesgue>) {
          return "lebesgue";
        } else if constexpr (std::is_same_v<T, LogSingular>) {
          return "logsing:a=" + num(p.a) + ",d=" + num(p.d);
        } else if constexpr (std::is_same_v<T, TailRho>) {
          return "tailrho:rho=" + num(p.rho);
        } else if constexpr (std::is_same_v<T, TabulatedTail>) {
          std::string out = "table:";
          for (std::size_t i = 0; i < p.x.size(); ++i) {
            if (i) out += ";";
            out += num(p.x[i]) + ":" + num(p.tail[i]);
          }
          return out;
        } else {
          return "gamma:alpha=" + num(p.alpha) + ",beta=" + num(p.beta);
        }
      },
      params());
}

const MeasureParams& MeasureSpec::params() const { return model_->params(); }

double MeasureSpec::total_mass() const { return model_->total_mass(); }

bool MeasureSpec::is_finite() const { return std::isfinite(model_->total_mass()); }

bool MeasureSpec::has_closed_form_rates() const { return model_->closed_form(); }

double MeasureSpec::lambda_rate(std::int64_t m, std::int64_t k) const {
  if (m < 0 || k < 0 || k > m) {
    throw Error("lambda_rate: need 0 <= k <= m (got m=" + std::to_string(m) +
                ", k=" + std::to_string(k) + ")");
  }
  const double v = model_->lambda(m, k);
  if (!std::isfinite(v)) divergent(m, k);
  return v;
}

double MeasureSpec::phi_rate(std::int64_t m, std::int64_t k) const {
  if (m < 0 || k < 0 || k > m) {
    throw Error("phi_rate: need 0 <= k <= m (got m=" + std::to_string(m) +
                ", k=" + std::to_string(k) + ")");
  }
  const double log_choose =
      log_binomial(static_cast<double>(m), static_cast<double>(k));
  if (model_->closed_form()) {
    return std::exp(log_choose + model_->log_lambda(m, k));
  }
  const double lam = model_->lambda(m, k);
  if (!std::isfinite(lam)) divergent(m, k);
  if (lam <= 0.0) return 0.0;
  return std::exp(log_choose + std::log(lam));
}

double MeasureSpec::laplace_exponent(double z) const {
  if (!(z >= 0.0)) throw Error("laplace_exponent: z must be nonnegative");
  return model_->laplace(z);
}

double MeasureSpec::tail(double x) const {
  if (!(x > 0.0 && x < 1.0)) throw Error("tail: x must lie in (0, 1)");
  return model_->tail(x);
}

double MeasureSpec::log_jump_tail(double y) const {
  if (!(y > 0.0)) throw Error("log_jump_tail: y must be positive");
  return model_->log_jump_tail(y);
}

MomentSet MeasureSpec::moments() const { return model_->moments(); }

}  // namespace dust
