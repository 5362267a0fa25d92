#include "fatigue/ensemble.hpp"

#include <algorithm>
#include <random>
#include <string>

#include "fatigue/errors.hpp"
#include "fatigue/metrics.hpp"
#include "tree_builder.hpp"

namespace fatigue {

std::string_view to_string(EnsembleMethod m) {
  return m == EnsembleMethod::LSBoost ? "LSBoost" : "Bag";
}

EnsembleMethod ensemble_method_from_string(std::string_view s) {
  if (s == "LSBoost") return EnsembleMethod::LSBoost;
  if (s == "Bag") return EnsembleMethod::Bag;
  throw InputError("unknown ensemble method '" + std::string(s) + "'");
}

void validate(const EnsembleConfig& config) {
  if (config.learn_cycles < 1 || config.learn_cycles > 500) {
    throw ConfigError("learn_cycles must lie in [1, 500]");
  }
  if (config.min_leaf_size < 1 || config.min_leaf_size > 500) {
    throw ConfigError("min_leaf_size must lie in [1, 500]");
  }
  if (config.method == EnsembleMethod::LSBoost &&
      !(config.learn_rate > 0.0 && config.learn_rate <= 1.0)) {
    throw ConfigError("learn_rate must lie in (0, 1] for LSBoost");
  }
}

double EnsembleModel::predict(
    const Eigen::Ref<const Eigen::RowVectorXd>& x) const {
  double out = init_offset;
  if (config.method == EnsembleMethod::LSBoost) {
    for (const RegressionTree& t : trees) {
      out += config.learn_rate * t.predict(x);
    }
  } else {
    double sum = 0.0;
    for (const RegressionTree& t : trees) sum += t.predict(x);
    out = sum / static_cast<double>(trees.size());
  }
  return std::clamp(out, clamp_low, clamp_high);
}

Eigen::VectorXd EnsembleModel::predict_rows(const Eigen::MatrixXd& X) const {
  Eigen::VectorXd out(X.rows());
  for (Eigen::Index i = 0; i < X.rows(); ++i) out[i] = predict(X.row(i));
  return out;
}

EnsembleModel fit_ensemble(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                           const EnsembleConfig& config) {
  validate(config);
  const int n = static_cast<int>(X.rows());
  if (n == 0 || y.size() != n) {
    throw InputError("fit_ensemble: X rows and y length must match and be >= 1");
  }
  if ((y.array() < 0.0).any() || (y.array() > 100.0).any()) {
    throw InputError("fit_ensemble: targets must lie in [0, 100]");
  }

  EnsembleModel model;
  model.config = config;
  model.trees.reserve(config.learn_cycles);
  const detail::TreeBuilder builder(X);

  if (config.method == EnsembleMethod::LSBoost) {
    model.init_offset = y.mean();
    Eigen::VectorXd residual = y.array() - model.init_offset;
    for (int m = 0; m < config.learn_cycles; ++m) {
      RegressionTree tree = builder.fit(residual, config.min_leaf_size);
      for (int i = 0; i < n; ++i) {
        residual[i] -= config.learn_rate * tree.predict(X.row(i));
      }
      model.trees.push_back(std::move(tree));
    }
  } else {
    model.init_offset = 0.0;
    std::mt19937_64 rng(config.rng_seed);
    std::vector<int> multiplicity(n);
    for (int m = 0; m < config.learn_cycles; ++m) {
      std::fill(multiplicity.begin(), multiplicity.end(), 0);
      for (int i = 0; i < n; ++i) {
        ++multiplicity[static_cast<int>(rng() % static_cast<std::uint64_t>(n))];
      }
      model.trees.push_back(
          builder.fit_weighted(y, multiplicity, n, config.min_leaf_size));
    }
  }
  return model;
}

std::vector<std::vector<int>> kfold_assignments(int n, int k,
                                                std::uint64_t seed) {
  if (k < 2) throw InputError("k-fold CV requires k >= 2");
  if (n < k) throw InputError("k-fold CV requires n >= k");
  std::vector<int> perm(n);
  for (int i = 0; i < n; ++i) perm[i] = i;
  std::mt19937_64 rng(seed);
  for (int i = n - 1; i > 0; --i) {
    const int j = static_cast<int>(rng() % static_cast<std::uint64_t>(i + 1));
    std::swap(perm[i], perm[j]);
  }
  std::vector<std::vector<int>> folds(k);
  const int base = n / k;
  const int extra = n % k;
  int pos = 0;
  for (int f = 0; f < k; ++f) {
    const int size = base + (f < extra ? 1 : 0);
    folds[f].assign(perm.begin() + pos, perm.begin() + pos + size);
    pos += size;
  }
  return folds;
}

CvReport kfold_cv(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                  const EnsembleConfig& config, int k, std::uint64_t seed) {
  const int n = static_cast<int>(X.rows());
  const auto folds = kfold_assignments(n, k, seed);

  CvReport report;
  report.fold_rmse.resize(k);
  report.seed = seed;
  report.k = k;

  std::vector<char> in_fold(n);
  for (int f = 0; f < k; ++f) {
    std::fill(in_fold.begin(), in_fold.end(), 0);
    for (int idx : folds[f]) in_fold[idx] = 1;

    const int n_test = static_cast<int>(folds[f].size());
    const int n_train = n - n_test;
    Eigen::MatrixXd X_train(n_train, X.cols());
    Eigen::VectorXd y_train(n_train);
    int r = 0;
    for (int i = 0; i < n; ++i) {
      if (!in_fold[i]) {
        X_train.row(r) = X.row(i);
        y_train[r] = y[i];
        ++r;
      }
    }
    const EnsembleModel model = fit_ensemble(X_train, y_train, config);

    Eigen::VectorXd pred(n_test), truth(n_test);
    for (int t = 0; t < n_test; ++t) {
      pred[t] = model.predict(X.row(folds[f][t]));
      truth[t] = y[folds[f][t]];
    }
    report.fold_rmse[f] = rmse(pred, truth);
  }
  report.mean_rmse = report.fold_rmse.mean();
  return report;
}

}  // namespace fatigue
