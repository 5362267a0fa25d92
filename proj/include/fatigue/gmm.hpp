#pragma once

#include <array>
#include <vector>

#include <Eigen/Dense>

namespace fatigue {

struct GaussComponent {
  double weight = 0.5;
  double mean = 0.0;
  double std = 1.0;
};

struct Calibration {
  std::array<GaussComponent, 2> components;  // ordered: mean of [0] < mean of [1]
  double threshold = 0.0;                    // density intersection, set by the caller
  double log_likelihood = 0.0;
  int iterations = 0;
  bool converged = false;
  std::vector<double> ll_trace;  // per-iteration log-likelihood diagnostics
};

// EM for a two-component 1-D Gaussian mixture. Initialization splits the
// sample at the median; iterations stop when the log-likelihood changes by
// less than 1e-8 or at 500 iterations (reported as not converged).
// Variances are floored at 1e-6.
Calibration fit_gmm2(const Eigen::VectorXd& scores);

// Solves w1*phi(x; m1, s1) = w2*phi(x; m2, s2) for the unique root strictly
// between the component means: a quadratic in x when the stds differ, linear
// when they agree within 1e-12.
double mixture_intersection(const Calibration& calib);

double mixture_pdf(const Calibration& calib, double x);

// P(X > x) under the mixture.
double mixture_tail(const Calibration& calib, double x);

// Seeded sampler, usable as a generator oracle in tests and for synthetic
// cohorts.
Eigen::VectorXd sample_mixture(const Calibration& calib, int n,
                               std::uint64_t seed);

}  // namespace fatigue
