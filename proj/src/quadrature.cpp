#include "dust/quadrature.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include "dust/error.hpp"

namespace dust {

namespace {

constexpr double kAcceptFactor = 100.0;

double safe(double v) { return std::isfinite(v) ? v : 0.0; }

void check(double value, double error, double rel_tol, const char* what) {
  const double scale = std::max(std::fabs(value), std::numeric_limits<double>::min());
  if (!std::isfinite(value) || error > kAcceptFactor * rel_tol * scale + 1e-300) {
    std::ostringstream msg;
    msg << "quadrature did not converge (" << what << "): achieved relative error "
        << error / scale << ", requested " << rel_tol;
    throw Error(msg.str());
  }
}

boost::math::quadrature::tanh_sinh<double>& tanh_sinh_engine() {
  thread_local boost::math::quadrature::tanh_sinh<double> engine(15);
  return engine;
}

}  // namespace

double integrate_unit(const UnitIntegrand& f, double lo, double hi, double rel_tol) {
  if (!(lo < hi)) return 0.0;
  // Boost passes the signed distance to the nearest endpoint as the second
  // argument; map that back to (x, 1 - x) on the original unit interval.
  auto g = [&](double x, double xc) -> double {
    double one_minus_x = 1.0 - x;
    if (xc > 0.0 && hi == 1.0) one_minus_x = xc;
    double xx = x;
    if (xc < 0.0 && lo == 0.0) xx = -xc;
    if (xx <= 0.0 || one_minus_x <= 0.0) return 0.0;
    return safe(f(xx, one_minus_x));
  };
  double error = 0.0;
  double l1 = 0.0;
  double value = 0.0;
  try {
    value = tanh_sinh_engine().integrate(g, lo, hi, rel_tol, &error, &l1);
  } catch (const std::exception& e) {
    throw Error(std::string("quadrature failed: ") + e.what());
  }
  check(value, error, rel_tol, "unit interval");
  return value;
}

double integrate_half_line(const std::function<double(double)>& f, double lo,
                           double rel_tol) {
  boost::math::quadrature::exp_sinh<double> engine;
  auto g = [&](double y) -> double {
    if (!(y > lo) || !std::isfinite(y)) return 0.0;
    return safe(f(y));
  };
  double error = 0.0;
  double l1 = 0.0;
  double value = 0.0;
  try {
    value = engine.integrate(g, lo, std::numeric_limits<double>::infinity(), rel_tol,
                             &error, &l1);
  } catch (const std::exception& e) {
    throw Error(std::string("quadrature failed: ") + e.what());
  }
  check(value, error, rel_tol, "half line");
  return value;
}

double integrate_interval(const std::function<double(double)>& f, double lo, double hi,
                          double rel_tol) {
  if (!(lo < hi)) return 0.0;
  double error = 0.0;
  const double value = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
      [&](double x) { return safe(f(x)); }, lo, hi, 15, rel_tol, &error);
  check(value, error, rel_tol, "interval");
  return value;
}

}  // namespace dust
