#pragma once

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "fatigue/ensemble.hpp"

namespace fatigue::detail {

// Shared split-search machinery. Sorting each feature once per matrix and
// partitioning the sorted index lists down the tree keeps a node's cost at
// O(features * node_size); boosting reuses the presorted root order across
// every cycle.
class TreeBuilder {
 public:
  explicit TreeBuilder(const Eigen::MatrixXd& X);

  // Fit on all rows.
  RegressionTree fit(const Eigen::VectorXd& y, int min_leaf_size) const;

  // Fit on a bootstrap multiset given per-row multiplicities.
  RegressionTree fit_weighted(const Eigen::VectorXd& y,
                              std::span<const int> multiplicity, int total,
                              int min_leaf_size) const;

 private:
  RegressionTree run(const Eigen::VectorXd& y, std::vector<int>& order,
                     int total, int min_leaf_size) const;

  const Eigen::MatrixXd& X_;
  int n_;
  int n_features_;
  std::vector<int> base_order_;  // layout: feature * n_ + rank
};

}  // namespace fatigue::detail
