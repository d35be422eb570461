#include "dust/special.hpp"

#include <array>
#include <cmath>
#include <string>

#include <boost/math/special_functions/digamma.hpp>
#include <boost/math/special_functions/trigamma.hpp>

#include "dust/error.hpp"

namespace dust {

namespace {

// B_{2j} / (2j)! for j = 1..12.
constexpr std::array<double, 12> kBernoulliOverFactorial = {
    1.0 / 12.0,
    -1.0 / 720.0,
    1.0 / 30240.0,
    -1.0 / 1209600.0,
    1.0 / 47900160.0,
    -691.0 / 1307674368000.0,
    1.0 / 74724249600.0,
    -3617.0 / 10670622842880000.0,
    43867.0 / 5109094217170944000.0,
    -174611.0 / 802857662698291200000.0,
    77683.0 / 14101100039391805440000.0,
    -236364091.0 / 1693824136731743669452800000.0,
};

int gamma_sign(double x) {
  if (x > 0.0) return 1;
  return (static_cast<long long>(std::floor(x)) % 2 == 0) ? 1 : -1;
}

}  // namespace

double hurwitz_zeta(double s, double q) {
  if (!(s > 1.0) || !(q > 0.0) || !std::isfinite(s) || !std::isfinite(q)) {
    throw Error("hurwitz_zeta: domain requires s > 1 and q > 0 (got s=" +
                std::to_string(s) + ", q=" + std::to_string(q) + ")");
  }
  // Euler-Maclaurin summation with the tail starting at q + N.
  constexpr int N = 16;
  double head = 0.0;
  for (int k = 0; k < N; ++k) head += std::pow(q + k, -s);
  const double x = q + N;
  double tail = std::pow(x, 1.0 - s) / (s - 1.0) + 0.5 * std::pow(x, -s);
  // Rising product s(s+1)...(s+2j-2) times x^{-s-2j+1}.
  double factor = s * std::pow(x, -s - 1.0);
  for (std::size_t j = 0; j < kBernoulliOverFactorial.size(); ++j) {
    const double term = kBernoulliOverFactorial[j] * factor;
    tail += term;
    if (std::fabs(term) < 1e-18 * std::fabs(tail)) break;
    const double a = s + 2.0 * static_cast<double>(j) + 1.0;
    factor *= a * (a + 1.0) / (x * x);
  }
  return head + tail;
}

double digamma(double x) {
  if (!std::isfinite(x) || (x <= 0.0 && x == std::floor(x))) {
    throw Error("digamma: pole or non-finite argument " + std::to_string(x));
  }
  return boost::math::digamma(x);
}

double trigamma(double x) {
  if (!std::isfinite(x) || (x <= 0.0 && x == std::floor(x))) {
    throw Error("trigamma: pole or non-finite argument " + std::to_string(x));
  }
  return boost::math::trigamma(x);
}

double log_beta(double a, double b) {
  if (!(a > 0.0) || !(b > 0.0)) {
    throw Error("log_beta: arguments must be positive (got a=" + std::to_string(a) +
                ", b=" + std::to_string(b) + ")");
  }
  return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
}

double signed_beta(double a, double b) {
  auto pole = [](double v) { return v <= 0.0 && v == std::floor(v); };
  for (double v : {a, b}) {
    if (pole(v)) throw Error("signed_beta: gamma pole at " + std::to_string(v));
  }
  if (pole(a + b)) return 0.0;
  const int sign = gamma_sign(a) * gamma_sign(b) * gamma_sign(a + b);
  return sign * std::exp(std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b));
}

double log_binomial(double n, double k) {
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

}  // namespace dust
