#include "fatigue/gp.hpp"

#include <cmath>
#include <numbers>

#include "fatigue/errors.hpp"

namespace fatigue {

double matern52(double squared_distance, const GpParams& p) {
  const double r = std::sqrt(std::max(squared_distance, 0.0));
  const double s = std::sqrt(5.0) * r / p.length_scale;
  return p.signal_variance * (1.0 + s + s * s / 3.0) * std::exp(-s);
}

namespace {

Eigen::MatrixXd kernel_matrix(const Eigen::MatrixXd& X, const GpParams& p) {
  const Eigen::Index n = X.rows();
  Eigen::MatrixXd K(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    K(i, i) = p.signal_variance + p.noise_variance;
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double k = matern52((X.row(i) - X.row(j)).squaredNorm(), p);
      K(i, j) = k;
      K(j, i) = k;
    }
  }
  return K;
}

}  // namespace

GpModel fit_gp(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
               const GpParams& params) {
  if (X.rows() < 1 || X.rows() != y.size()) {
    throw InputError("fit_gp: X rows and y length must match and be >= 1");
  }
  GpModel gp;
  gp.X = X;
  gp.params = params;
  gp.y_offset = y.mean();
  const double sd = std::sqrt((y.array() - gp.y_offset).square().mean());
  gp.y_scale = sd > 0.0 ? sd : 1.0;
  const Eigen::VectorXd ys = (y.array() - gp.y_offset) / gp.y_scale;

  gp.chol.compute(kernel_matrix(X, params));
  if (gp.chol.info() != Eigen::Success) {
    throw CalibrationError("GP kernel matrix is not positive definite");
  }
  gp.alpha = gp.chol.solve(ys);
  return gp;
}

GpParams select_gp_params(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                          double noise_variance) {
  static const double kLengthScales[] = {0.05, 0.1, 0.2, 0.35,
                                         0.5,  0.75, 1.0, 2.0};
  static const double kSignalVariances[] = {0.25, 1.0, 4.0};

  const double mean = y.mean();
  const double sd = std::sqrt((y.array() - mean).square().mean());
  const Eigen::VectorXd ys = (y.array() - mean) / (sd > 0.0 ? sd : 1.0);
  const double n = static_cast<double>(X.rows());

  GpParams best{1.0, 0.5, noise_variance};
  double best_ll = -std::numeric_limits<double>::infinity();
  for (double sv : kSignalVariances) {
    for (double ls : kLengthScales) {
      const GpParams p{sv, ls, noise_variance};
      Eigen::LLT<Eigen::MatrixXd> chol(kernel_matrix(X, p));
      if (chol.info() != Eigen::Success) continue;
      const Eigen::VectorXd alpha = chol.solve(ys);
      double log_det = 0.0;
      for (Eigen::Index i = 0; i < X.rows(); ++i) {
        log_det += std::log(chol.matrixL()(i, i));
      }
      const double ll = -0.5 * ys.dot(alpha) - log_det -
                        0.5 * n * std::log(2.0 * std::numbers::pi);
      if (ll > best_ll) {
        best_ll = ll;
        best = p;
      }
    }
  }
  return best;
}

GpPosterior gp_posterior(const GpModel& gp,
                         const Eigen::Ref<const Eigen::VectorXd>& x) {
  const Eigen::Index n = gp.X.rows();
  Eigen::VectorXd k(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    k[i] = matern52((gp.X.row(i) - x.transpose()).squaredNorm(), gp.params);
  }
  GpPosterior post;
  post.mean = gp.y_offset + gp.y_scale * k.dot(gp.alpha);
  const Eigen::VectorXd v = gp.chol.solve(k);
  const double var_std = gp.params.signal_variance - k.dot(v);
  post.variance = std::max(var_std, 0.0) * gp.y_scale * gp.y_scale;
  return post;
}

double expected_improvement(const GpPosterior& post, double best) {
  const double sigma = std::sqrt(std::max(post.variance, 0.0));
  const double improvement = best - post.mean;
  if (sigma <= 0.0) return std::max(improvement, 0.0) > 0.0 ? improvement : 0.0;
  const double z = improvement / sigma;
  const double pdf =
      std::exp(-0.5 * z * z) / std::sqrt(2.0 * std::numbers::pi);
  const double cdf = 0.5 * std::erfc(-z / std::numbers::sqrt2);
  return improvement * cdf + sigma * pdf;
}

}  // namespace fatigue
