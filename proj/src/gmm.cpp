#include "fatigue/gmm.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "fatigue/errors.hpp"
#include "fatigue/stats.hpp"

namespace fatigue {

namespace {

constexpr double kVarianceFloor = 1e-6;
constexpr double kLogLikTol = 1e-8;
constexpr int kMaxIterations = 500;

GaussComponent moments(const Eigen::Ref<const Eigen::VectorXd>& xs) {
  GaussComponent c;
  c.mean = xs.mean();
  const double var = (xs.array() - c.mean).square().mean();
  c.std = std::sqrt(std::max(var, kVarianceFloor));
  return c;
}

}  // namespace

Calibration fit_gmm2(const Eigen::VectorXd& scores) {
  const Eigen::Index n = scores.size();
  if (n < 10) {
    throw InputError("mixture fit requires at least 10 scores");
  }
  const double total_var =
      (scores.array() - scores.mean()).square().mean();
  if (!(total_var > 0.0)) {
    throw CalibrationError("degenerate cohort: all scores are equal");
  }

  Calibration calib;
  {
    Eigen::VectorXd sorted = scores;
    std::sort(sorted.data(), sorted.data() + n);
    const Eigen::Index half = n / 2;
    calib.components[0] = moments(sorted.head(half));
    calib.components[1] = moments(sorted.tail(n - half));
    calib.components[0].weight = 0.5;
    calib.components[1].weight = 0.5;
  }

  Eigen::ArrayXd log_r0(n), log_r1(n), r0(n);
  double prev_ll = -std::numeric_limits<double>::infinity();
  for (int it = 0; it < kMaxIterations; ++it) {
    const GaussComponent& c0 = calib.components[0];
    const GaussComponent& c1 = calib.components[1];
    const double lw0 = std::log(std::max(c0.weight, 1e-300));
    const double lw1 = std::log(std::max(c1.weight, 1e-300));
    constexpr double kLogSqrt2Pi = 0.9189385332046727;  // log sqrt(2*pi)
    log_r0 = lw0 - std::log(c0.std) - kLogSqrt2Pi -
             0.5 * ((scores.array() - c0.mean) / c0.std).square();
    log_r1 = lw1 - std::log(c1.std) - kLogSqrt2Pi -
             0.5 * ((scores.array() - c1.mean) / c1.std).square();

    const Eigen::ArrayXd mx = log_r0.max(log_r1);
    const Eigen::ArrayXd lse =
        mx + ((log_r0 - mx).exp() + (log_r1 - mx).exp()).log();
    const double ll = lse.sum();
    calib.ll_trace.push_back(ll);
    calib.log_likelihood = ll;
    calib.iterations = it + 1;
    if (std::abs(ll - prev_ll) < kLogLikTol) {
      calib.converged = true;
      break;
    }
    prev_ll = ll;

    r0 = (log_r0 - lse).exp();
    const double n0 = std::max(r0.sum(), 1e-12);
    const double n1 = std::max(static_cast<double>(n) - r0.sum(), 1e-12);
    GaussComponent u0, u1;
    u0.weight = n0 / n;
    u1.weight = 1.0 - u0.weight;
    u0.mean = (r0 * scores.array()).sum() / n0;
    u1.mean = ((1.0 - r0) * scores.array()).sum() / n1;
    u0.std = std::sqrt(std::max(
        (r0 * (scores.array() - u0.mean).square()).sum() / n0, kVarianceFloor));
    u1.std = std::sqrt(std::max(
        ((1.0 - r0) * (scores.array() - u1.mean).square()).sum() / n1,
        kVarianceFloor));
    calib.components = {u0, u1};
  }

  if (calib.components[0].mean > calib.components[1].mean) {
    std::swap(calib.components[0], calib.components[1]);
  }
  return calib;
}

double mixture_intersection(const Calibration& calib) {
  const GaussComponent& c1 = calib.components[0];
  const GaussComponent& c2 = calib.components[1];
  if (!(c1.mean < c2.mean)) {
    throw CalibrationError("mixture components must have ordered means");
  }
  const double m1 = c1.mean, s1 = c1.std, w1 = c1.weight;
  const double m2 = c2.mean, s2 = c2.std, w2 = c2.weight;
  // log(w1 phi1) = log(w2 phi2) rearranged to
  // (x-m2)^2/(2 s2^2) - (x-m1)^2/(2 s1^2) = log(w2 s1 / (w1 s2)).
  const double rhs = std::log((w2 * s1) / (w1 * s2));

  std::vector<double> roots;
  if (std::abs(s1 - s2) <= 1e-12 * std::max(s1, s2)) {
    // Equal spreads: the quadratic terms cancel, leaving a line.
    const double s2q = s1 * s1;
    const double denom = m2 - m1;
    roots.push_back((m2 * m2 - m1 * m1 - 2.0 * s2q * rhs) / (2.0 * denom));
  } else {
    const double a = 0.5 / (s2 * s2) - 0.5 / (s1 * s1);
    const double b = m1 / (s1 * s1) - m2 / (s2 * s2);
    const double c =
        0.5 * m2 * m2 / (s2 * s2) - 0.5 * m1 * m1 / (s1 * s1) - rhs;
    const double disc = b * b - 4.0 * a * c;
    if (disc >= 0.0) {
      const double sq = std::sqrt(disc);
      // Citardauq form keeps the smaller-magnitude root accurate.
      const double q = -0.5 * (b + std::copysign(sq, b));
      roots.push_back(q / a);
      if (q != 0.0) roots.push_back(c / q);
    }
  }

  std::vector<double> inside;
  for (double r : roots) {
    if (std::isfinite(r) && r > m1 && r < m2) inside.push_back(r);
  }
  if (inside.size() != 1) {
    throw CalibrationError(
        "no unique density intersection between the component means");
  }
  return inside.front();
}

double mixture_pdf(const Calibration& calib, double x) {
  const GaussComponent& c1 = calib.components[0];
  const GaussComponent& c2 = calib.components[1];
  return c1.weight * normal_pdf(x, c1.mean, c1.std) +
         c2.weight * normal_pdf(x, c2.mean, c2.std);
}

double mixture_tail(const Calibration& calib, double x) {
  const GaussComponent& c1 = calib.components[0];
  const GaussComponent& c2 = calib.components[1];
  return c1.weight * normal_sf(x, c1.mean, c1.std) +
         c2.weight * normal_sf(x, c2.mean, c2.std);
}

Eigen::VectorXd sample_mixture(const Calibration& calib, int n,
                               std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  Eigen::VectorXd out(n);
  const GaussComponent& c1 = calib.components[0];
  const GaussComponent& c2 = calib.components[1];
  for (int i = 0; i < n; ++i) {
    const GaussComponent& c = unif(rng) < c1.weight ? c1 : c2;
    out[i] = c.mean + c.std * gauss(rng);
  }
  return out;
}

}  // namespace fatigue
