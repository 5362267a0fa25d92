#include "fatigue/metrics.hpp"

#include <cmath>

#include "fatigue/errors.hpp"

namespace fatigue {

namespace {

void check_lengths(const Eigen::VectorXd& predicted,
                   const Eigen::VectorXd& truth) {
  if (predicted.size() == 0 || predicted.size() != truth.size()) {
    throw InputError("metric inputs must have equal nonzero lengths");
  }
}

}  // namespace

double rmse(const Eigen::VectorXd& predicted, const Eigen::VectorXd& truth) {
  check_lengths(predicted, truth);
  return std::sqrt((predicted - truth).squaredNorm() /
                   static_cast<double>(predicted.size()));
}

double smape(const Eigen::VectorXd& predicted, const Eigen::VectorXd& truth) {
  check_lengths(predicted, truth);
  double sum = 0.0;
  for (Eigen::Index t = 0; t < predicted.size(); ++t) {
    const double denom = std::abs(predicted[t]) + std::abs(truth[t]);
    if (denom == 0.0) {
      throw InputError("smape term " + std::to_string(t) +
                       " has |F|+|A| == 0");
    }
    sum += std::abs(predicted[t] - truth[t]) / denom;
  }
  return 2.0 * sum / static_cast<double>(predicted.size());
}

}  // namespace fatigue
