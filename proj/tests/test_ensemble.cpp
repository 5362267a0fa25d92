#include <doctest.h>

#include <random>

#include "fatigue/ensemble.hpp"
#include "fatigue/errors.hpp"
#include "fatigue/metrics.hpp"

using namespace fatigue;

namespace {

Eigen::MatrixXd column(std::initializer_list<double> values) {
  Eigen::MatrixXd X(static_cast<Eigen::Index>(values.size()), 1);
  Eigen::Index i = 0;
  for (double v : values) X(i++, 0) = v;
  return X;
}

Eigen::VectorXd vec(std::initializer_list<double> values) {
  Eigen::VectorXd y(static_cast<Eigen::Index>(values.size()));
  Eigen::Index i = 0;
  for (double v : values) y[i++] = v;
  return y;
}

// Naive tree evaluation, independent of RegressionTree::predict.
double walk(const RegressionTree& tree, const Eigen::RowVectorXd& x, int node) {
  const auto& nd = tree.nodes[node];
  if (nd.feature < 0) return nd.value;
  return x[nd.feature] <= nd.threshold ? walk(tree, x, nd.left)
                                       : walk(tree, x, nd.right);
}

}  // namespace

TEST_CASE("constant targets collapse to a single leaf") {
  const Eigen::MatrixXd X = column({0, 1, 2, 3, 4});
  const Eigen::VectorXd y = vec({7, 7, 7, 7, 7});
  const RegressionTree tree = fit_tree(X, y, 1);
  REQUIRE(tree.nodes.size() == 1);
  CHECK(tree.nodes[0].feature == -1);
  CHECK(tree.nodes[0].value == doctest::Approx(7.0));
  CHECK(tree.nodes[0].count == 5);
}

TEST_CASE("step dataset splits at 1.5 and fits exactly") {
  // Candidates 0.5 / 1.5 / 2.5; SSE reductions 1/3, 1, 1/3 -> 1.5 wins.
  const Eigen::MatrixXd X = column({0, 1, 2, 3});
  const Eigen::VectorXd y = vec({0, 0, 1, 1});
  const RegressionTree tree = fit_tree(X, y, 1);
  REQUIRE(tree.nodes[0].feature == 0);
  CHECK(tree.nodes[0].threshold == doctest::Approx(1.5));
  const auto& left = tree.nodes[tree.nodes[0].left];
  const auto& right = tree.nodes[tree.nodes[0].right];
  CHECK(left.value == doctest::Approx(0.0));
  CHECK(right.value == doctest::Approx(1.0));

  Eigen::VectorXd pred(4);
  for (int i = 0; i < 4; ++i) pred[i] = tree.predict(X.row(i));
  CHECK(rmse(pred, y) == doctest::Approx(0.0));
}

TEST_CASE("min_leaf_size == n forces the global-mean leaf") {
  const Eigen::MatrixXd X = column({0, 1, 2, 3});
  const Eigen::VectorXd y = vec({0, 0, 1, 1});
  const RegressionTree tree = fit_tree(X, y, 4);
  REQUIRE(tree.nodes.size() == 1);
  CHECK(tree.nodes[0].value == doctest::Approx(0.5));
}

TEST_CASE("every leaf keeps at least min_leaf_size samples") {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  Eigen::MatrixXd X(60, 3);
  Eigen::VectorXd y(60);
  for (int i = 0; i < 60; ++i) {
    for (int d = 0; d < 3; ++d) X(i, d) = unif(rng);
    y[i] = 10.0 * X(i, 0) + unif(rng);
  }
  for (int min_leaf : {1, 5, 17}) {
    const RegressionTree tree = fit_tree(X, y, min_leaf);
    for (const auto& node : tree.nodes) {
      if (node.feature < 0) CHECK(node.count >= min_leaf);
    }
  }
}

TEST_CASE("ties break toward the lowest feature index") {
  // Identical copies of the splitting feature: feature 0 must win.
  Eigen::MatrixXd X(4, 2);
  X << 0, 0, 1, 1, 2, 2, 3, 3;
  const Eigen::VectorXd y = vec({0, 0, 1, 1});
  const RegressionTree tree = fit_tree(X, y, 1);
  CHECK(tree.nodes[0].feature == 0);
}

TEST_CASE("LSBoost one-cycle hand trace") {
  // F0 = 0.5; one unit-rate tree fit to residuals (-.5,-.5,.5,.5) recovers
  // the step exactly.
  const Eigen::MatrixXd X = column({0, 1, 2, 3});
  const Eigen::VectorXd y = vec({0, 0, 1, 1});
  EnsembleConfig config;
  config.method = EnsembleMethod::LSBoost;
  config.learn_cycles = 1;
  config.learn_rate = 1.0;
  config.min_leaf_size = 1;
  const EnsembleModel model = fit_ensemble(X, y, config);
  CHECK(model.init_offset == doctest::Approx(0.5));
  REQUIRE(model.trees.size() == 1);
  Eigen::VectorXd pred(4);
  for (int i = 0; i < 4; ++i) pred[i] = model.predict(X.row(i));
  CHECK(rmse(pred, y) == doctest::Approx(0.0));
}

TEST_CASE("LSBoost training RMSE is non-increasing in learn_cycles") {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  const int n = 40;
  Eigen::MatrixXd X(n, 4);
  Eigen::VectorXd y(n);
  for (int i = 0; i < n; ++i) {
    for (int d = 0; d < 4; ++d) X(i, d) = unif(rng);
    y[i] = 60.0 * X(i, 0) + 25.0 * X(i, 1) * X(i, 1) + 10.0 * unif(rng);
  }

  EnsembleConfig config;
  config.method = EnsembleMethod::LSBoost;
  config.learn_cycles = 200;
  config.learn_rate = 0.2;
  config.min_leaf_size = 4;
  const EnsembleModel model = fit_ensemble(X, y, config);

  // Evaluate the boosting prefix sums directly.
  Eigen::VectorXd f = Eigen::VectorXd::Constant(n, model.init_offset);
  double prev = rmse(f, y);
  for (const RegressionTree& tree : model.trees) {
    for (int i = 0; i < n; ++i) {
      f[i] += config.learn_rate * tree.predict(X.row(i));
    }
    const double current = rmse(f, y);
    CHECK(current <= prev + 1e-9);
    prev = current;
  }
}

TEST_CASE("Bag with a degenerate rng equals the single tree") {
  // All bootstrap draws identical when every row is the same sample.
  const Eigen::MatrixXd X = column({5});
  const Eigen::VectorXd y = vec({42});
  EnsembleConfig config;
  config.method = EnsembleMethod::Bag;
  config.learn_cycles = 7;
  config.min_leaf_size = 1;
  const EnsembleModel model = fit_ensemble(X, y, config);
  CHECK(model.predict(X.row(0)) == doctest::Approx(42.0));
}

TEST_CASE("Bag predictions stay within the leaf value envelope") {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> unif(0.0, 100.0);
  Eigen::MatrixXd X(30, 2);
  Eigen::VectorXd y(30);
  for (int i = 0; i < 30; ++i) {
    X(i, 0) = unif(rng);
    X(i, 1) = unif(rng);
    y[i] = unif(rng);
  }
  EnsembleConfig config;
  config.method = EnsembleMethod::Bag;
  config.learn_cycles = 25;
  config.min_leaf_size = 3;
  config.rng_seed = 123;
  const EnsembleModel model = fit_ensemble(X, y, config);

  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  for (const auto& tree : model.trees) {
    for (const auto& node : tree.nodes) {
      if (node.feature < 0) {
        lo = std::min(lo, node.value);
        hi = std::max(hi, node.value);
      }
    }
  }
  for (int i = 0; i < 30; ++i) {
    const double p = model.predict(X.row(i));
    CHECK(p >= lo - 1e-12);
    CHECK(p <= hi + 1e-12);
  }
}

TEST_CASE("prediction equals naive traversal of every tree") {
  std::mt19937_64 rng(33);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  Eigen::MatrixXd X(25, 3);
  Eigen::VectorXd y(25);
  for (int i = 0; i < 25; ++i) {
    for (int d = 0; d < 3; ++d) X(i, d) = unif(rng);
    y[i] = 100.0 * X(i, 2);
  }

  for (EnsembleMethod method : {EnsembleMethod::LSBoost, EnsembleMethod::Bag}) {
    EnsembleConfig config;
    config.method = method;
    config.learn_cycles = 3;
    config.learn_rate = 0.5;
    config.min_leaf_size = 2;
    config.rng_seed = 7;
    const EnsembleModel model = fit_ensemble(X, y, config);
    REQUIRE(model.trees.size() == 3);

    for (int i = 0; i < 25; ++i) {
      double expected;
      if (method == EnsembleMethod::LSBoost) {
        expected = model.init_offset;
        for (const auto& tree : model.trees) {
          expected += config.learn_rate * walk(tree, X.row(i), 0);
        }
      } else {
        expected = 0.0;
        for (const auto& tree : model.trees) {
          expected += walk(tree, X.row(i), 0);
        }
        expected /= 3.0;
      }
      expected = std::clamp(expected, 0.0, 100.0);
      CHECK(model.predict(X.row(i)) == doctest::Approx(expected).epsilon(1e-12));
    }
  }
}

TEST_CASE("predictions clamp to [0, 100]") {
  // Unit-rate boosting over repeated cycles overshoots before clamping.
  const Eigen::MatrixXd X = column({0, 1});
  const Eigen::VectorXd y = vec({90, 90});
  EnsembleConfig config;
  config.method = EnsembleMethod::LSBoost;
  config.learn_cycles = 5;
  config.learn_rate = 1.0;
  config.min_leaf_size = 2;
  const EnsembleModel model = fit_ensemble(X, y, config);
  const double p = model.predict(X.row(0));
  CHECK(p >= 0.0);
  CHECK(p <= 100.0);
}

TEST_CASE("config validation") {
  EnsembleConfig config;
  config.learn_cycles = 0;
  CHECK_THROWS_AS(validate(config), ConfigError);
  config.learn_cycles = 501;
  CHECK_THROWS_AS(validate(config), ConfigError);
  config.learn_cycles = 10;
  config.min_leaf_size = 0;
  CHECK_THROWS_AS(validate(config), ConfigError);
  config.min_leaf_size = 1;
  config.method = EnsembleMethod::LSBoost;
  config.learn_rate = 0.0;
  CHECK_THROWS_AS(validate(config), ConfigError);
  // Bag ignores learn_rate entirely.
  config.method = EnsembleMethod::Bag;
  CHECK_NOTHROW(validate(config));
}

TEST_CASE("fold sizes differ by at most one: n=13, k=5 gives {3,3,3,2,2}") {
  const auto folds = kfold_assignments(13, 5, 99);
  REQUIRE(folds.size() == 5);
  CHECK(folds[0].size() == 3);
  CHECK(folds[1].size() == 3);
  CHECK(folds[2].size() == 3);
  CHECK(folds[3].size() == 2);
  CHECK(folds[4].size() == 2);

  std::vector<char> seen(13, 0);
  for (const auto& fold : folds) {
    for (int idx : fold) {
      CHECK(!seen[idx]);
      seen[idx] = 1;
    }
  }
}

TEST_CASE("cross-validation basics") {
  std::mt19937_64 rng(14);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  Eigen::MatrixXd X(20, 2);
  for (int i = 0; i < 20; ++i) {
    X(i, 0) = unif(rng);
    X(i, 1) = unif(rng);
  }
  EnsembleConfig config;
  config.method = EnsembleMethod::LSBoost;
  config.learn_cycles = 5;
  config.learn_rate = 0.5;
  config.min_leaf_size = 2;

  SUBCASE("constant targets give zero RMSE in every fold") {
    const Eigen::VectorXd y = Eigen::VectorXd::Constant(20, 60.0);
    const CvReport report = kfold_cv(X, y, config, 5, 1);
    CHECK(report.fold_rmse.cwiseAbs().maxCoeff() == doctest::Approx(0.0));
    CHECK(report.mean_rmse == doctest::Approx(0.0));
  }
  SUBCASE("same seed reproduces the report exactly") {
    Eigen::VectorXd y(20);
    for (int i = 0; i < 20; ++i) y[i] = 100.0 * X(i, 0);
    const CvReport a = kfold_cv(X, y, config, 5, 42);
    const CvReport b = kfold_cv(X, y, config, 5, 42);
    CHECK((a.fold_rmse.array() == b.fold_rmse.array()).all());
    CHECK(a.mean_rmse == b.mean_rmse);
    // And a different seed re-partitions.
    const CvReport c = kfold_cv(X, y, config, 5, 43);
    CHECK(a.mean_rmse != c.mean_rmse);
  }
  SUBCASE("n < k is an input error") {
    CHECK_THROWS_AS(
        kfold_cv(X.topRows(3), Eigen::VectorXd::Zero(3), config, 5, 0),
        InputError);
  }
}

TEST_CASE("bagging beats a single deep tree on noisy data (16 of 20 seeds)") {
  int wins = 0;
  for (int seed = 0; seed < 20; ++seed) {
    std::mt19937_64 rng(1000 + seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::normal_distribution<double> noise(0.0, 8.0);
    const int n_train = 120, n_test = 120;
    Eigen::MatrixXd X(n_train + n_test, 5);
    Eigen::VectorXd y(n_train + n_test);
    for (int i = 0; i < n_train + n_test; ++i) {
      for (int d = 0; d < 5; ++d) X(i, d) = unif(rng);
      const double signal = 50.0 * X(i, 0) + 30.0 * X(i, 1) * X(i, 1) +
                            10.0 * X(i, 2);
      y[i] = std::clamp(signal + noise(rng), 0.0, 100.0);
    }
    const Eigen::MatrixXd X_train = X.topRows(n_train);
    const Eigen::VectorXd y_train = y.head(n_train);
    const Eigen::MatrixXd X_test = X.bottomRows(n_test);
    const Eigen::VectorXd y_test = y.tail(n_test);

    const RegressionTree tree = fit_tree(X_train, y_train, 2);
    EnsembleConfig config;
    config.method = EnsembleMethod::Bag;
    config.learn_cycles = 50;
    config.min_leaf_size = 2;
    config.rng_seed = seed;
    const EnsembleModel bag = fit_ensemble(X_train, y_train, config);

    Eigen::VectorXd tree_pred(n_test), bag_pred(n_test);
    for (int i = 0; i < n_test; ++i) {
      tree_pred[i] = std::clamp(tree.predict(X_test.row(i)), 0.0, 100.0);
      bag_pred[i] = bag.predict(X_test.row(i));
    }
    if (rmse(bag_pred, y_test) < rmse(tree_pred, y_test)) ++wins;
  }
  CHECK(wins >= 16);
}

TEST_CASE("metrics: hand-computed oracle values") {
  CHECK(rmse(vec({1, 2, 3}), vec({1, 2, 3})) == 0.0);
  CHECK(smape(vec({1, 2, 3}), vec({1, 2, 3})) == 0.0);

  // smape([3], [1]) = 2 * |2| / (3 + 1) = 1.0, exactly.
  CHECK(smape(vec({3}), vec({1})) == doctest::Approx(1.0).epsilon(1e-15));

  // rmse([1,1], [0,2]) = sqrt((1 + 1) / 2) = 1.0, exactly.
  CHECK(rmse(vec({1, 1}), vec({0, 2})) == doctest::Approx(1.0).epsilon(1e-15));

  CHECK_THROWS_AS(smape(vec({0, 1}), vec({0, 1})), InputError);
  CHECK_THROWS_AS(rmse(vec({1}), vec({1, 2})), InputError);
  CHECK_THROWS_AS(rmse(Eigen::VectorXd(), Eigen::VectorXd()), InputError);
}

TEST_CASE("ensemble determinism: same data, config, seed") {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  Eigen::MatrixXd X(30, 4);
  Eigen::VectorXd y(30);
  for (int i = 0; i < 30; ++i) {
    for (int d = 0; d < 4; ++d) X(i, d) = unif(rng);
    y[i] = 80.0 * X(i, 1) + 5.0;
  }
  EnsembleConfig config;
  config.method = EnsembleMethod::Bag;
  config.learn_cycles = 20;
  config.min_leaf_size = 2;
  config.rng_seed = 5;
  const EnsembleModel a = fit_ensemble(X, y, config);
  const EnsembleModel b = fit_ensemble(X, y, config);
  REQUIRE(a.trees.size() == b.trees.size());
  for (std::size_t t = 0; t < a.trees.size(); ++t) {
    REQUIRE(a.trees[t].nodes.size() == b.trees[t].nodes.size());
    for (std::size_t n = 0; n < a.trees[t].nodes.size(); ++n) {
      CHECK(a.trees[t].nodes[n].feature == b.trees[t].nodes[n].feature);
      CHECK(a.trees[t].nodes[n].threshold == b.trees[t].nodes[n].threshold);
      CHECK(a.trees[t].nodes[n].value == b.trees[t].nodes[n].value);
    }
  }
}
