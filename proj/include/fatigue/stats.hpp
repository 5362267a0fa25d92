#pragma once

namespace fatigue {

// Regularized lower incomplete gamma P(a, x): series expansion for
// x < a + 1, continued fraction otherwise.
double regularized_lower_gamma(double a, double x);

double chi2_cdf(double x, int dof);

// Inverse chi-square CDF by bisection, absolute tolerance 1e-9 on x.
double chi2_quantile(double p, int dof);

double normal_pdf(double x, double mean = 0.0, double std = 1.0);
double normal_cdf(double x, double mean = 0.0, double std = 1.0);

// Upper tail P(X > x).
double normal_sf(double x, double mean = 0.0, double std = 1.0);

// Two-sided standard normal quantile z such that P(|Z| <= z) = 1 - alpha.
double normal_two_sided_quantile(double alpha);

}  // namespace fatigue
