#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace fatigue {

enum class EnsembleMethod { LSBoost, Bag };

std::string_view to_string(EnsembleMethod m);
EnsembleMethod ensemble_method_from_string(std::string_view s);

struct EnsembleConfig {
  EnsembleMethod method = EnsembleMethod::LSBoost;
  int learn_cycles = 100;      // trees in the ensemble, [1, 500]
  double learn_rate = 0.1;     // shrinkage, (0, 1]; ignored for Bag
  int min_leaf_size = 1;       // [1, 500]
  std::uint64_t rng_seed = 0;  // drives Bag bootstrap resampling
};

void validate(const EnsembleConfig& config);

// Binary regression tree stored as a flat node array, root at index 0.
// Internal nodes route x[feature] <= threshold to the left child.
struct RegressionTree {
  struct Node {
    int feature = -1;  // -1 marks a leaf
    double threshold = 0.0;
    int left = -1;
    int right = -1;
    double value = 0.0;  // leaf mean response
    int count = 0;       // leaf training sample count
  };
  std::vector<Node> nodes;

  double predict(const Eigen::Ref<const Eigen::RowVectorXd>& x) const;
};

// Greedy CART with exhaustive split search: candidate thresholds are
// midpoints between consecutive distinct sorted values, the best split is
// the one with maximal SSE reduction, ties broken by lowest feature index
// then lowest threshold. A node splits only if both children keep at least
// min_leaf_size samples and the reduction is positive.
RegressionTree fit_tree(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                        int min_leaf_size);
RegressionTree fit_tree(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                        const std::vector<int>& sample_indices,
                        int min_leaf_size);

struct EnsembleModel {
  EnsembleConfig config;
  std::vector<RegressionTree> trees;
  double init_offset = 0.0;  // LSBoost base prediction; 0 for Bag
  double clamp_low = 0.0;
  double clamp_high = 100.0;

  double predict(const Eigen::Ref<const Eigen::RowVectorXd>& x) const;
  Eigen::VectorXd predict_rows(const Eigen::MatrixXd& X) const;
};

// Bag: learn_cycles trees on seeded bootstrap resamples, prediction is the
// tree mean. LSBoost: F0 = mean(y), then each cycle fits the residuals and
// adds learn_rate times the new tree. Predictions clamp to [0,100].
EnsembleModel fit_ensemble(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                           const EnsembleConfig& config);

struct CvReport {
  Eigen::VectorXd fold_rmse;
  double mean_rmse = 0.0;
  std::uint64_t seed = 0;
  int k = 0;
};

// Seeded permutation split into k folds whose sizes differ by at most one;
// the first (n mod k) folds take the extra sample.
std::vector<std::vector<int>> kfold_assignments(int n, int k,
                                                std::uint64_t seed);

CvReport kfold_cv(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                  const EnsembleConfig& config, int k = 5,
                  std::uint64_t seed = 0);

}  // namespace fatigue
