#pragma once

#include <Eigen/Dense>

namespace fatigue {

// Matern 5/2 kernel hyperparameters over the encoded search space.
struct GpParams {
  double signal_variance = 1.0;
  double length_scale = 0.5;
  double noise_variance = 1e-6;
};

double matern52(double squared_distance, const GpParams& p);

// Posterior machinery for a zero-mean GP on standardized targets. The
// stored y offset/scale restore predictions to the original objective
// units.
struct GpModel {
  Eigen::MatrixXd X;    // rows = observed encoded points
  GpParams params;
  Eigen::LLT<Eigen::MatrixXd> chol;
  Eigen::VectorXd alpha;  // K^{-1} y_standardized
  double y_offset = 0.0;
  double y_scale = 1.0;
};

struct GpPosterior {
  double mean = 0.0;
  double variance = 0.0;  // in original objective units squared
};

GpModel fit_gp(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
               const GpParams& params);

// Maximum-marginal-likelihood choice of (signal variance, length scale)
// over a small fixed grid; the observation noise stays pinned.
GpParams select_gp_params(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                          double noise_variance = 1e-6);

GpPosterior gp_posterior(const GpModel& gp,
                         const Eigen::Ref<const Eigen::VectorXd>& x);

// Expected improvement below `best` for a minimization problem.
double expected_improvement(const GpPosterior& post, double best);

}  // namespace fatigue
