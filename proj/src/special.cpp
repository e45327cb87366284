#include "gliomorph/survstats/special.hpp"

#include <cmath>
#include <limits>

#include "gliomorph/error.hpp"

namespace gliomorph::survstats {

double normal_cdf(double z) {
  // Phi(z) = erfc(-z / sqrt(2)) / 2; erfc keeps full precision in the tails.
  return 0.5 * std::erfc(-z * 0.7071067811865476);
}

namespace {

// Lower regularized gamma P(a, x) by power series; converges fast for x < a+1.
double gamma_p_series(double a, double x) {
  double ap = a;
  double sum = 1.0 / a;
  double term = sum;
  for (int n = 0; n < 500; ++n) {
    ap += 1.0;
    term *= x / ap;
    sum += term;
    if (std::fabs(term) < std::fabs(sum) * 1e-16) break;
  }
  return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Upper regularized gamma Q(a, x) by modified Lentz continued fraction;
// converges fast for x >= a+1.
double gamma_q_cf(double a, double x) {
  const double tiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i <= 500; ++i) {
    double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    double delta = d * c;
    h *= delta;
    if (std::fabs(delta - 1.0) < 1e-16) break;
  }
  return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

}  // namespace

double gamma_q(double a, double x) {
  if (!(a > 0.0) || x < 0.0) fail(ErrorKind::Validation, "gamma_q requires a > 0, x >= 0");
  if (x == 0.0) return 1.0;
  if (x < a + 1.0) return 1.0 - gamma_p_series(a, x);
  return gamma_q_cf(a, x);
}

double chisq_sf(double x, double df) {
  if (!(df > 0.0)) fail(ErrorKind::Validation, "chisq_sf requires df > 0");
  if (!(x >= 0.0)) fail(ErrorKind::Validation, "chisq_sf requires x >= 0");
  return gamma_q(0.5 * df, 0.5 * x);
}

}  // namespace gliomorph::survstats
