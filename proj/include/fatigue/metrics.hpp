#pragma once

#include <Eigen/Dense>

namespace fatigue {

double rmse(const Eigen::VectorXd& predicted, const Eigen::VectorXd& truth);

// SMAPE = 2/n * sum |F_t - A_t| / (|F_t| + |A_t|). Ranges in [0, 2]; a
// value of 0.0116 reads as 1.16%. Any term with |F_t| + |A_t| == 0 is an
// error.
double smape(const Eigen::VectorXd& predicted, const Eigen::VectorXd& truth);

}  // namespace fatigue
