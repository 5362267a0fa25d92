#include "fatigue/ensemble.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>
#include <string>

#include "fatigue/errors.hpp"
#include "tree_builder.hpp"

namespace fatigue {

double RegressionTree::predict(
    const Eigen::Ref<const Eigen::RowVectorXd>& x) const {
  int node = 0;
  while (nodes[node].feature >= 0) {
    const Node& nd = nodes[node];
    node = x[nd.feature] <= nd.threshold ? nd.left : nd.right;
  }
  return nodes[node].value;
}

namespace detail {

TreeBuilder::TreeBuilder(const Eigen::MatrixXd& X)
    : X_(X),
      n_(static_cast<int>(X.rows())),
      n_features_(static_cast<int>(X.cols())) {
  base_order_.resize(static_cast<std::size_t>(n_features_) * n_);
  std::vector<int> ranks(n_);
  for (int f = 0; f < n_features_; ++f) {
    const double* col = X_.col(f).data();
    for (int i = 0; i < n_; ++i) ranks[i] = i;
    // (value, index) ordering keeps the permutation fully deterministic.
    std::sort(ranks.begin(), ranks.end(), [col](int a, int b) {
      return col[a] != col[b] ? col[a] < col[b] : a < b;
    });
    std::copy(ranks.begin(), ranks.end(),
              base_order_.begin() + static_cast<std::size_t>(f) * n_);
  }
}

RegressionTree TreeBuilder::fit(const Eigen::VectorXd& y,
                                int min_leaf_size) const {
  std::vector<int> order = base_order_;
  return run(y, order, n_, min_leaf_size);
}

RegressionTree TreeBuilder::fit_weighted(const Eigen::VectorXd& y,
                                         std::span<const int> multiplicity,
                                         int total, int min_leaf_size) const {
  // Expand the presorted base order into the multiset order; this keeps the
  // per-tree cost linear instead of re-sorting every bootstrap sample.
  std::vector<int> order(static_cast<std::size_t>(n_features_) * total);
  for (int f = 0; f < n_features_; ++f) {
    const int* src = base_order_.data() + static_cast<std::size_t>(f) * n_;
    int* dst = order.data() + static_cast<std::size_t>(f) * total;
    int q = 0;
    for (int p = 0; p < n_; ++p) {
      const int idx = src[p];
      for (int c = 0; c < multiplicity[idx]; ++c) dst[q++] = idx;
    }
  }
  return run(y, order, total, min_leaf_size);
}

RegressionTree TreeBuilder::run(const Eigen::VectorXd& y,
                                std::vector<int>& order, int total,
                                int min_leaf_size) const {
  if (total < 1) throw InputError("cannot fit a tree on empty data");

  RegressionTree tree;
  struct Task {
    int node;
    int lo;
    int hi;
    double sum;
  };
  std::vector<Task> stack;
  std::vector<int> scratch(total);

  double root_sum = 0.0;
  {
    const int* ids = order.data();  // feature 0 range covers all samples
    for (int p = 0; p < total; ++p) root_sum += y[ids[p]];
  }
  tree.nodes.push_back({});
  stack.push_back({0, 0, total, root_sum});

  while (!stack.empty()) {
    const Task task = stack.back();
    stack.pop_back();
    const int node_n = task.hi - task.lo;
    RegressionTree::Node& leaf = tree.nodes[task.node];
    leaf.value = task.sum / node_n;
    leaf.count = node_n;

    if (node_n < 2 * min_leaf_size) continue;

    const int* ids0 = order.data() + task.lo;
    double y_min = y[ids0[0]], y_max = y[ids0[0]];
    for (int p = 1; p < node_n; ++p) {
      const double v = y[ids0[p]];
      y_min = std::min(y_min, v);
      y_max = std::max(y_max, v);
    }
    if (y_min == y_max) continue;  // zero variance, no beneficial split

    double best_gain = 0.0;
    int best_feature = -1;
    double best_threshold = 0.0;
    const double parent_term = task.sum * task.sum / node_n;
    for (int f = 0; f < n_features_; ++f) {
      const int* ids = order.data() + static_cast<std::size_t>(f) * total + task.lo;
      const double* col = X_.col(f).data();
      double sum_left = 0.0;
      for (int p = 0; p + 1 < node_n; ++p) {
        const int idx = ids[p];
        sum_left += y[idx];
        const double v = col[idx];
        const double v_next = col[ids[p + 1]];
        if (v == v_next) continue;
        const int n_left = p + 1;
        const int n_right = node_n - n_left;
        if (n_left < min_leaf_size || n_right < min_leaf_size) continue;
        const double sum_right = task.sum - sum_left;
        const double gain = sum_left * sum_left / n_left +
                            sum_right * sum_right / n_right - parent_term;
        if (gain > best_gain) {
          best_gain = gain;
          best_feature = f;
          double t = v + 0.5 * (v_next - v);
          if (!(t > v) || !(t < v_next)) t = v;  // adjacent doubles
          best_threshold = t;
        }
      }
    }
    if (best_feature < 0) continue;

    // Stable partition of every feature's index range by the chosen split.
    const double* best_col = X_.col(best_feature).data();
    int n_left = 0;
    double sum_left = 0.0;
    for (int f = 0; f < n_features_; ++f) {
      int* ids = order.data() + static_cast<std::size_t>(f) * total + task.lo;
      int l = 0, r = 0;
      for (int p = 0; p < node_n; ++p) {
        const int idx = ids[p];
        if (best_col[idx] <= best_threshold) {
          ids[l++] = idx;
        } else {
          scratch[r++] = idx;
        }
      }
      std::copy(scratch.begin(), scratch.begin() + r, ids + l);
      if (f == 0) {
        n_left = l;
        for (int p = 0; p < l; ++p) sum_left += y[ids[p]];
      }
    }

    const int left_id = static_cast<int>(tree.nodes.size());
    tree.nodes.push_back({});
    tree.nodes.push_back({});
    RegressionTree::Node& internal = tree.nodes[task.node];
    internal.feature = best_feature;
    internal.threshold = best_threshold;
    internal.left = left_id;
    internal.right = left_id + 1;
    stack.push_back({left_id, task.lo, task.lo + n_left, sum_left});
    stack.push_back(
        {left_id + 1, task.lo + n_left, task.hi, task.sum - sum_left});
  }
  return tree;
}

}  // namespace detail

RegressionTree fit_tree(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                        int min_leaf_size) {
  if (X.rows() == 0 || X.rows() != y.size()) {
    throw InputError("fit_tree: X rows and y length must match and be >= 1");
  }
  if (min_leaf_size < 1) throw InputError("min_leaf_size must be >= 1");
  return detail::TreeBuilder(X).fit(y, min_leaf_size);
}

RegressionTree fit_tree(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                        const std::vector<int>& sample_indices,
                        int min_leaf_size) {
  if (X.rows() == 0 || X.rows() != y.size()) {
    throw InputError("fit_tree: X rows and y length must match and be >= 1");
  }
  if (sample_indices.empty()) {
    throw InputError("fit_tree: sample index list must be non-empty");
  }
  if (min_leaf_size < 1) throw InputError("min_leaf_size must be >= 1");
  std::vector<int> multiplicity(X.rows(), 0);
  for (int idx : sample_indices) {
    if (idx < 0 || idx >= X.rows()) {
      throw InputError("fit_tree: sample index " + std::to_string(idx) +
                       " out of range");
    }
    ++multiplicity[idx];
  }
  return detail::TreeBuilder(X).fit_weighted(
      y, multiplicity, static_cast<int>(sample_indices.size()), min_leaf_size);
}

}  // namespace fatigue
