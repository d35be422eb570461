#include "dust/limits.hpp"

#include <cmath>
#include <sstream>

#include "dust/error.hpp"
#include "dust/quadrature.hpp"
#include "dust/special.hpp"

namespace dust {

double SlowFunction::operator()(double x) const {
  switch (kind) {
    case Kind::Constant:
      return scale;
    case Kind::LogPower:
      return scale * std::pow(std::log(x), power);
    case Kind::IteratedLog:
      return scale * std::pow(std::log(std::log(x)), power);
    case Kind::ExpLogPower:
      return scale * std::exp(std::pow(std::log(x), power));
  }
  return scale;
}

std::string SlowFunction::describe() const {
  std::ostringstream out;
  switch (kind) {
    case Kind::Constant:
      out << scale;
      break;
    case Kind::LogPower:
      out << scale << "*log(x)^" << power;
      break;
    case Kind::IteratedLog:
      out << scale << "*log(log(x))^" << power;
      break;
    case Kind::ExpLogPower:
      out << scale << "*exp(log(x)^" << power << ")";
      break;
  }
  return out.str();
}

std::string reference_name(Reference r) {
  switch (r) {
    case Reference::StandardNormal:
      return "normal";
    case Reference::Stable:
      return "stable";
    case Reference::ExpFunctional:
      return "exp-functional";
    case Reference::CompoundPoisson:
      return "compound-poisson";
  }
  return "unknown";
}

NormConstants tau_normal_constants(const MomentSet& moments, std::int64_t n) {
  if (!moments.m.is_finite() || !moments.s2.is_finite()) {
    throw Error("normal constants need finite m and s2");
  }
  if (n < 1) throw Error("normal constants: n must be positive");
  const double m = moments.m.value;
  const double ln = std::log(static_cast<double>(n));
  NormConstants c;
  c.regime = "normal-tau";
  c.n = n;
  c.b_n = ln / m;
  c.a_n = std::sqrt(moments.s2.value * ln / (m * m * m));
  return c;
}

double stable_scale(double beta, const SlowFunction& L, double k) {
  if (!(beta > 1.0 && beta < 2.0)) throw Error("stable scale: beta must lie in (1,2)");
  if (!(k > 0.0)) throw Error("stable scale: k must be positive");
  // Largest root of g(c) = log k + log L(c) - beta log c, with c above the
  // point where L becomes positive.
  auto g = [&](double c) { return std::log(k) + std::log(L(c)) - beta * std::log(c); };
  double floor_c = 1.0 + 1e-9;
  if (L.kind == SlowFunction::Kind::LogPower) floor_c = std::exp(1.0);
  if (L.kind == SlowFunction::Kind::IteratedLog) floor_c = std::exp(std::exp(1.0));
  double hi = std::max(2.0 * floor_c, std::pow(k, 1.0 / beta) * 2.0);
  int grow = 0;
  while (!(g(hi) < 0.0)) {
    hi *= 2.0;
    if (++grow > 2000) {
      std::ostringstream msg;
      msg << "stable scale: no sign change below " << hi;
      throw Error(msg.str());
    }
  }
  double lo = hi;
  while (!(g(lo) > 0.0)) {
    hi = lo;
    lo = std::max(floor_c, 0.5 * lo);
    if (lo == hi) {
      std::ostringstream msg;
      msg << "stable scale: bracket [" << floor_c << ", " << hi << "] does not enclose a root";
      throw Error(msg.str());
    }
  }
  for (int i = 0; i < 400 && hi - lo > 1e-15 * hi; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (g(mid) > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

NormConstants tau_stable_constants(double beta, const SlowFunction& L, double m, std::int64_t n) {
  if (!(m > 0.0) || !std::isfinite(m)) throw Error("stable constants need finite m > 0");
  if (n < 3) throw Error("stable constants: n must be at least 3");
  const double ln = std::log(static_cast<double>(n));
  NormConstants c;
  c.regime = "stable-tau";
  c.n = n;
  c.b_n = ln / m;
  c.a_n = std::pow(m, -(beta + 1.0) / beta) * stable_scale(beta, L, std::floor(ln));
  c.reference = Reference::Stable;
  c.stable_index = beta;
  return c;
}

NormConstants collisions_slowvar_constants(const std::function<double(double)>& phi,
                                           const MomentSet& moments, std::int64_t n) {
  if (!moments.m.is_finite() || !moments.s2.is_finite()) {
    throw Error("slow-variation constants need finite m and s2");
  }
  if (n < 1) throw Error("slow-variation constants: n must be positive");
  const double m = moments.m.value;
  const double ln = std::log(static_cast<double>(n));
  // [0,1] directly, [1,n] with z = e^t.
  const double i1 = integrate_interval([&](double z) { return phi(z) / z; }, 0.0, 1.0, 1e-10) +
                    integrate_interval([&](double t) { return phi(std::exp(t)); }, 0.0, ln, 1e-10);
  const double i2 =
      integrate_interval([&](double z) { return phi(z) * phi(z) / z; }, 0.0, 1.0, 1e-10) +
      integrate_interval([&](double t) { const double v = phi(std::exp(t)); return v * v; }, 0.0,
                         ln, 1e-10);
  NormConstants c;
  c.regime = "slowvar-collisions";
  c.n = n;
  c.b_n = i1 / m;
  c.a_n = std::sqrt(moments.s2.value / (m * m * m) * i2);
  return c;
}

double collisions_regvar_scale(double gamma, const SlowFunction& ell, double n) {
  if (!(gamma > 0.0 && gamma < 1.0)) throw Error("regular variation: gamma must lie in (0,1)");
  return std::tgamma(2.0 - gamma) * std::pow(n, gamma) * ell(n);
}

std::complex<double> stable_cf(double beta, double z) {
  if (!(beta > 1.0 && beta < 2.0)) throw Error("stable_cf: beta must lie in (1,2)");
  if (z == 0.0) return {1.0, 0.0};
  const double sgn = z > 0.0 ? 1.0 : -1.0;
  const double scale = std::pow(std::fabs(z), beta) * std::tgamma(1.0 - beta);
  const std::complex<double> expo(-scale * std::cos(kPi * beta / 2.0),
                                  -scale * std::sin(kPi * beta / 2.0) * sgn);
  return std::exp(expo);
}

std::string LimitRegime::describe() const {
  std::ostringstream out;
  if (tau == Tau::Normal) {
    out << "tau: normal";
  } else {
    out << "tau: stable(beta=" << stable_index << ", L=" << stable_L.describe() << ")";
  }
  out << "; collisions: ";
  switch (collisions) {
    case Collisions::CompoundPoisson:
      out << "compound Poisson (normal)";
      break;
    case Collisions::SlowVar:
      out << "slow variation (normal)";
      break;
    case Collisions::RegVar:
      out << "regular variation (gamma=" << gamma << ", ell=" << ell.describe()
          << ", exponential functional)";
      break;
  }
  return out.str();
}

LimitRegime classify(const MeasureSpec& spec) {
  LimitRegime r;
  const auto& p = spec.params();
  if (const auto* b = std::get_if<BetaFamily>(&p)) {
    if (b->a > 2.0) {
      r.collisions = LimitRegime::Collisions::CompoundPoisson;
    } else if (b->a == 2.0) {
      r.collisions = LimitRegime::Collisions::SlowVar;
    } else {
      r.collisions = LimitRegime::Collisions::RegVar;
      r.gamma = 2.0 - b->a;
      r.ell = {SlowFunction::Kind::Constant, b->c / (2.0 - b->a), 0.0};
    }
    return r;
  }
  if (std::holds_alternative<Lebesgue>(p) || std::holds_alternative<TailRho>(p) ||
      std::holds_alternative<TabulatedTail>(p)) {
    return r;
  }
  if (std::holds_alternative<GammaPhi>(p)) {
    r.collisions = LimitRegime::Collisions::SlowVar;
    return r;
  }
  const auto& ls = std::get<LogSingular>(p);
  if (ls.d > 2.0 && ls.d < 3.0) {
    r.tau = LimitRegime::Tau::Stable;
    r.stable_index = ls.d - 1.0;
    r.stable_L = {SlowFunction::Kind::Constant, 1.0 / (ls.d - 1.0), 0.0};
  } else if (!(ls.d > 3.0)) {
    throw Error("manual regime required for " + spec.describe());
  }
  const double g = ls.d + 1.0 - ls.a;
  if (g > 0.0 && g < 1.0) {
    r.collisions = LimitRegime::Collisions::RegVar;
    r.gamma = g;
    r.ell = {SlowFunction::Kind::Constant, 1.0 / g, 0.0};
  } else if (g < 0.0) {
    r.collisions = LimitRegime::Collisions::CompoundPoisson;
  } else {
    throw Error("manual regime required for " + spec.describe());
  }
  return r;
}

}  // namespace dust
