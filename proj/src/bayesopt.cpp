#include "fatigue/bayesopt.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "fatigue/errors.hpp"
#include "fatigue/gp.hpp"

namespace fatigue {

namespace {

constexpr double kGpNoise = 1e-6;

// Portable uniform double in [0, 1).
double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double clamp01(double u) { return std::clamp(u, 0.0, 1.0); }

}  // namespace

void validate(const SearchSpace& space) {
  if (!space.allow_lsboost && !space.allow_bag) {
    throw ConfigError("search space allows no ensemble method");
  }
  if (space.cycles_min < 1 || space.cycles_min > space.cycles_max) {
    throw ConfigError("invalid learn_cycles bounds");
  }
  if (space.leaf_min < 1 || space.leaf_min > space.leaf_max) {
    throw ConfigError("invalid min_leaf_size bounds");
  }
  if (!(space.rate_min > 0.0) || space.rate_min > space.rate_max ||
      space.rate_max > 1.0) {
    throw ConfigError("invalid learn_rate bounds");
  }
}

bool contains(const SearchSpace& space, const EnsembleConfig& c) {
  if (c.method == EnsembleMethod::LSBoost && !space.allow_lsboost) return false;
  if (c.method == EnsembleMethod::Bag && !space.allow_bag) return false;
  if (c.learn_cycles < space.cycles_min || c.learn_cycles > space.cycles_max) {
    return false;
  }
  if (c.min_leaf_size < space.leaf_min || c.min_leaf_size > space.leaf_max) {
    return false;
  }
  if (c.method == EnsembleMethod::LSBoost &&
      (c.learn_rate < space.rate_min || c.learn_rate > space.rate_max)) {
    return false;
  }
  return true;
}

Eigen::Vector4d encode_config(const EnsembleConfig& c,
                              const SearchSpace& space) {
  Eigen::Vector4d u;
  if (space.allow_lsboost && space.allow_bag) {
    u[0] = c.method == EnsembleMethod::LSBoost ? 0.0 : 1.0;
  } else {
    u[0] = 0.5;
  }
  u[1] = space.cycles_max > space.cycles_min
             ? static_cast<double>(c.learn_cycles - space.cycles_min) /
                   (space.cycles_max - space.cycles_min)
             : 0.5;
  if (c.method == EnsembleMethod::Bag || space.rate_max == space.rate_min) {
    u[2] = 0.5;  // inactive dimension imputed at the midpoint
  } else {
    u[2] = (std::log10(c.learn_rate) - std::log10(space.rate_min)) /
           (std::log10(space.rate_max) - std::log10(space.rate_min));
  }
  u[3] = space.leaf_max > space.leaf_min
             ? static_cast<double>(c.min_leaf_size - space.leaf_min) /
                   (space.leaf_max - space.leaf_min)
             : 0.5;
  return u;
}

EnsembleConfig decode_point(const Eigen::Vector4d& u,
                            const SearchSpace& space) {
  EnsembleConfig c;
  if (space.allow_lsboost && space.allow_bag) {
    c.method = u[0] < 0.5 ? EnsembleMethod::LSBoost : EnsembleMethod::Bag;
  } else {
    c.method = space.allow_lsboost ? EnsembleMethod::LSBoost
                                   : EnsembleMethod::Bag;
  }
  c.learn_cycles =
      space.cycles_min +
      static_cast<int>(std::lround(clamp01(u[1]) *
                                   (space.cycles_max - space.cycles_min)));
  const double lr_lo = std::log10(space.rate_min);
  const double lr_hi = std::log10(space.rate_max);
  c.learn_rate = std::pow(10.0, lr_lo + clamp01(u[2]) * (lr_hi - lr_lo));
  c.learn_rate = std::clamp(c.learn_rate, space.rate_min, space.rate_max);
  c.min_leaf_size =
      space.leaf_min +
      static_cast<int>(std::lround(clamp01(u[3]) *
                                   (space.leaf_max - space.leaf_min)));
  return c;
}

EnsembleConfig sample_config(const SearchSpace& space, std::mt19937_64& rng) {
  Eigen::Vector4d u;
  for (int d = 0; d < 4; ++d) u[d] = uniform01(rng);
  return decode_point(u, space);
}

namespace {

struct Surrogate {
  GpModel gp;
  double best_finite;
};

// Failed trials are imputed at a pessimistic-but-finite level so the
// surrogate steers away from them without destroying its scale.
bool build_surrogate(const std::vector<Trial>& history,
                     const SearchSpace& space, Surrogate& out) {
  double worst = -std::numeric_limits<double>::infinity();
  double best = std::numeric_limits<double>::infinity();
  int finite = 0;
  for (const Trial& t : history) {
    if (!t.failed && std::isfinite(t.objective)) {
      worst = std::max(worst, t.objective);
      best = std::min(best, t.objective);
      ++finite;
    }
  }
  if (finite < 2 || !(worst > best)) return false;

  const double imputed = worst + (worst - best);
  Eigen::MatrixXd X(history.size(), 4);
  Eigen::VectorXd y(history.size());
  for (std::size_t i = 0; i < history.size(); ++i) {
    X.row(i) = encode_config(history[i].config, space).transpose();
    y[i] = history[i].failed || !std::isfinite(history[i].objective)
               ? imputed
               : history[i].objective;
  }
  const GpParams params = select_gp_params(X, y, kGpNoise);
  out.gp = fit_gp(X, y, params);
  out.best_finite = best;
  return true;
}

}  // namespace

EnsembleConfig propose_next(const std::vector<Trial>& history,
                            const SearchSpace& space, std::mt19937_64& rng,
                            int candidates) {
  validate(space);
  if (history.empty()) {
    throw InputError("propose_next requires a non-empty history");
  }
  Surrogate surrogate;
  if (!build_surrogate(history, space, surrogate)) {
    return sample_config(space, rng);
  }

  double best_ei = -1.0;
  EnsembleConfig best_config = sample_config(space, rng);
  for (int c = 0; c < candidates; ++c) {
    Eigen::Vector4d u;
    for (int d = 0; d < 4; ++d) u[d] = uniform01(rng);
    const EnsembleConfig config = decode_point(u, space);
    // Score at the decoded point's own encoding so integer rounding is
    // reflected in the surrogate query.
    const Eigen::Vector4d x = encode_config(config, space);
    const double ei = expected_improvement(gp_posterior(surrogate.gp, x),
                                           surrogate.best_finite);
    if (ei > best_ei) {
      best_ei = ei;
      best_config = config;
    }
  }
  return best_config;
}

BoResult optimize(const Objective& objective, const SearchSpace& space,
                  const BoOptions& options) {
  validate(space);
  if (options.budget < options.n_init || options.n_init < 2) {
    throw ConfigError("optimize requires budget >= n_init >= 2");
  }

  std::mt19937_64 rng(options.seed);
  BoResult result;
  result.history.reserve(options.budget);

  for (int it = 0; it < options.budget; ++it) {
    EnsembleConfig config =
        it < options.n_init
            ? sample_config(space, rng)
            : propose_next(result.history, space, rng, options.candidates);
    Trial trial;
    trial.config = config;
    trial.iteration = it;
    try {
      trial.objective = objective(config);
      if (!std::isfinite(trial.objective) || trial.objective < 0.0) {
        trial.failed = true;
        trial.objective = std::numeric_limits<double>::infinity();
      }
    } catch (...) {
      trial.failed = true;
      trial.objective = std::numeric_limits<double>::infinity();
    }
    result.history.push_back(trial);
  }

  const Trial* best = nullptr;
  for (const Trial& t : result.history) {
    if (t.failed) continue;
    if (!best || t.objective < best->objective) best = &t;
  }
  if (!best) {
    throw CalibrationError("hyperparameter search failed on every trial");
  }
  result.best = *best;
  return result;
}

}  // namespace fatigue
