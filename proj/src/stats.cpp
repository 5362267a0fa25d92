#include "fatigue/stats.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "fatigue/errors.hpp"

namespace fatigue {

namespace {

constexpr int kMaxIterations = 500;
constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kTiny = std::numeric_limits<double>::min() / kEps;

double lower_gamma_series(double a, double x) {
  double term = 1.0 / a;
  double sum = term;
  double ap = a;
  for (int i = 0; i < kMaxIterations; ++i) {
    ap += 1.0;
    term *= x / ap;
    sum += term;
    if (std::abs(term) < std::abs(sum) * kEps) break;
  }
  return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Modified Lentz continued fraction for the upper tail Q(a, x).
double upper_gamma_cf(double a, double x) {
  double b = x + 1.0 - a;
  double c = 1.0 / kTiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i <= kMaxIterations; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < kTiny) d = kTiny;
    c = b + an / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) < kEps) break;
  }
  return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

}  // namespace

double regularized_lower_gamma(double a, double x) {
  if (!(a > 0.0) || x < 0.0) {
    throw InputError("regularized_lower_gamma requires a > 0 and x >= 0");
  }
  if (x == 0.0) return 0.0;
  return x < a + 1.0 ? lower_gamma_series(a, x)
                     : 1.0 - upper_gamma_cf(a, x);
}

double chi2_cdf(double x, int dof) {
  if (dof < 1) throw InputError("chi2_cdf requires dof >= 1");
  if (x <= 0.0) return 0.0;
  return regularized_lower_gamma(0.5 * dof, 0.5 * x);
}

double chi2_quantile(double p, int dof) {
  if (!(p > 0.0 && p < 1.0)) {
    throw InputError("chi2_quantile requires p in (0, 1)");
  }
  if (dof < 1) throw InputError("chi2_quantile requires dof >= 1");

  double lo = 0.0;
  double hi = dof + 10.0;
  while (chi2_cdf(hi, dof) < p) {
    lo = hi;
    hi *= 2.0;
  }
  while (hi - lo > 1e-9) {
    const double mid = 0.5 * (lo + hi);
    if (chi2_cdf(mid, dof) < p) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double normal_pdf(double x, double mean, double std) {
  const double z = (x - mean) / std;
  return std::exp(-0.5 * z * z) /
         (std * std::sqrt(2.0 * std::numbers::pi));
}

double normal_cdf(double x, double mean, double std) {
  return 0.5 * std::erfc(-(x - mean) / (std * std::numbers::sqrt2));
}

double normal_sf(double x, double mean, double std) {
  return 0.5 * std::erfc((x - mean) / (std * std::numbers::sqrt2));
}

double normal_two_sided_quantile(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw ConfigError("alpha must lie in (0, 1)");
  }
  // P(|Z| <= z) = 1 - alpha  <=>  z^2 is the (1 - alpha) chi-square(1)
  // quantile.
  return std::sqrt(chi2_quantile(1.0 - alpha, 1));
}

}  // namespace fatigue
