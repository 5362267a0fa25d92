#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "fatigue/ensemble.hpp"

namespace fatigue {

// Hyperparameter search space. The surrogate sees a 4-d encoding:
// method -> {0,1}, learn_cycles and min_leaf_size scaled to [0,1],
// learn_rate log10-scaled to [0,1]. Pinned dimensions encode as 0.5.
struct SearchSpace {
  bool allow_lsboost = true;
  bool allow_bag = true;
  int cycles_min = 10;
  int cycles_max = 500;
  double rate_min = 1e-3;
  double rate_max = 1.0;
  int leaf_min = 1;
  int leaf_max = 500;
};

void validate(const SearchSpace& space);
bool contains(const SearchSpace& space, const EnsembleConfig& config);

Eigen::Vector4d encode_config(const EnsembleConfig& config,
                              const SearchSpace& space);
EnsembleConfig decode_point(const Eigen::Vector4d& u, const SearchSpace& space);

// Uniform draw in the encoded space, then decoded.
EnsembleConfig sample_config(const SearchSpace& space, std::mt19937_64& rng);

struct Trial {
  EnsembleConfig config;
  double objective = 0.0;  // +infinity marks a failed evaluation
  int iteration = 0;
  bool failed = false;
};

struct BoOptions {
  int budget = 30;   // total objective evaluations
  int n_init = 10;   // uniform random warm-up draws
  std::uint64_t seed = 0;
  int candidates = 2048;  // random EI candidates per acquisition step
};

struct BoResult {
  Trial best;
  std::vector<Trial> history;
};

using Objective = std::function<double(const EnsembleConfig&)>;

// Warm-up with n_init uniform draws, then maximize expected improvement
// under a Matern 5/2 GP surrogate over seeded random candidate batches.
// A throwing objective records a failed trial and the search continues;
// if every trial fails the search itself fails.
BoResult optimize(const Objective& objective, const SearchSpace& space,
                  const BoOptions& options = BoOptions{});

// One acquisition step, exposed for testing. Falls back to a uniform draw
// when the history cannot support a surrogate (fewer than two distinct
// finite objectives).
EnsembleConfig propose_next(const std::vector<Trial>& history,
                            const SearchSpace& space, std::mt19937_64& rng,
                            int candidates = 2048);

}  // namespace fatigue
