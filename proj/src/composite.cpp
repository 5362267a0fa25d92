#include "fatigue/composite.hpp"

#include <cmath>
#include <string>

#include "fatigue/errors.hpp"
#include "fatigue/metrics.hpp"

namespace fatigue {

std::string_view to_string(CueKind cue) {
  switch (cue) {
    case CueKind::HangingEyelid: return "hanging_eyelid";
    case CueKind::RedEye: return "red_eye";
    case CueKind::DarkCircle: return "dark_circle";
    case CueKind::PaleSkin: return "pale_skin";
    case CueKind::DroopyCornerMouth: return "droopy_corner_mouth";
    case CueKind::SwollenEye: return "swollen_eye";
    case CueKind::GlazedEye: return "glazed_eye";
    case CueKind::Wrinkles: return "wrinkles";
  }
  return "";
}

CueKind cue_from_string(std::string_view s) {
  for (int i = 0; i < kCueCount; ++i) {
    if (to_string(static_cast<CueKind>(i)) == s) return static_cast<CueKind>(i);
  }
  throw InputError("unknown cue '" + std::string(s) + "'");
}

const CueVector& combiner_coefficients() {
  static const CueVector coefficients = [] {
    CueVector c;
    c << 0.037, 0.030, 0.041, 0.014, 0.022, 0.033, 0.027, 0.024;
    return c;
  }();
  return coefficients;
}

double raw_score_min() { return kCombinerIntercept; }

double raw_score_max() {
  return kCombinerIntercept + 100.0 * combiner_coefficients().sum();
}

double combine_cues(const CueVector& cues) {
  return combiner_coefficients().dot(cues) + kCombinerIntercept;
}

double normalize_score(double raw) {
  const double lo = raw_score_min();
  const double hi = raw_score_max();
  if (raw < lo - 1e-9 || raw > hi + 1e-9) {
    throw InputError("raw fatigue rate " + std::to_string(raw) +
                     " outside attainable range [" + std::to_string(lo) +
                     ", " + std::to_string(hi) + "]");
  }
  const double clamped = std::clamp(raw, lo, hi);
  return (clamped - lo) / (hi - lo) * 100.0;
}

CueVector aggregate_ratings(const RaterRatings& ratings) {
  if (ratings.empty()) {
    throw InputError("ratings must contain at least one rater");
  }
  CueVector sum = CueVector::Zero();
  for (const auto& [rater, values] : ratings) {
    for (int c = 0; c < kCueCount; ++c) {
      if (values[c] < 0 || values[c] > 4) {
        throw InputError("rater '" + rater + "' rated cue '" +
                         std::string(to_string(static_cast<CueKind>(c))) +
                         "' outside [0, 4]");
      }
      sum[c] += values[c];
    }
  }
  // Mean over raters, mapped from the 0-4 rating scale to 0-100.
  return sum * (25.0 / static_cast<double>(ratings.size()));
}

CompositeModel make_empty_composite() {
  CompositeModel model;
  model.raw_min = raw_score_min();
  model.raw_max = raw_score_max();
  return model;
}

GroupDescriptors describe_face(const RoiPatches& patches,
                               const SiftParams& params) {
  GroupDescriptors out;
  for (int g = 0; g < kCueGroupCount; ++g) {
    out[g] = describe_group(patches, static_cast<CueGroup>(g), params);
  }
  return out;
}

FatigueScore predict_fatigue(const CompositeModel& model,
                             const GroupDescriptors& descriptors) {
  FatigueScore score;
  for (int c = 0; c < kCueCount; ++c) {
    const CueGroup group = cue_group(static_cast<CueKind>(c));
    const CueModel& cue = model.cues[c];
    const Eigen::VectorXd z =
        apply_standardizer(cue.standardizer, descriptors[static_cast<int>(group)]);
    score.cues[c] = cue.model.predict(z.transpose());
  }
  score.raw = combine_cues(score.cues);
  score.normalized = normalize_score(score.raw);
  return score;
}

FatigueScore predict_fatigue(const CompositeModel& model, const Image& image,
                             const LandmarkSet& landmarks) {
  const RoiPatches patches = extract_all(image, landmarks);
  return predict_fatigue(model, describe_face(patches, model.sift));
}

namespace {

// Gathers one group's descriptors as rows.
Eigen::MatrixXd group_matrix(const std::vector<TrainingSample>& samples,
                             CueGroup group) {
  const int g = static_cast<int>(group);
  const Eigen::Index len = samples.front().descriptors[g].size();
  Eigen::MatrixXd X(samples.size(), len);
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (samples[i].descriptors[g].size() != len) {
      throw InputError("sample '" + samples[i].face_id +
                       "' has a mis-sized group descriptor");
    }
    X.row(i) = samples[i].descriptors[g].transpose();
  }
  return X;
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
  // splitmix64 step; decorrelates per-cue streams from the master seed.
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (salt + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double composite_cv_smape(const std::array<Eigen::MatrixXd, kCueGroupCount>& X_std,
                          const Eigen::MatrixXd& targets,
                          const std::array<EnsembleConfig, kCueCount>& configs,
                          int folds, std::uint64_t fold_seed,
                          std::array<double, kCueCount>* cue_rmse) {
  const int n = static_cast<int>(targets.rows());
  const auto assignments = kfold_assignments(n, folds, fold_seed);

  Eigen::MatrixXd predicted(n, kCueCount);
  std::vector<char> in_fold(n);
  for (const auto& fold : assignments) {
    std::fill(in_fold.begin(), in_fold.end(), 0);
    for (int idx : fold) in_fold[idx] = 1;
    const int n_test = static_cast<int>(fold.size());
    const int n_train = n - n_test;

    for (int c = 0; c < kCueCount; ++c) {
      const auto& X = X_std[static_cast<int>(cue_group(static_cast<CueKind>(c)))];
      Eigen::MatrixXd X_train(n_train, X.cols());
      Eigen::VectorXd y_train(n_train);
      int r = 0;
      for (int i = 0; i < n; ++i) {
        if (!in_fold[i]) {
          X_train.row(r) = X.row(i);
          y_train[r] = targets(i, c);
          ++r;
        }
      }
      const EnsembleModel model = fit_ensemble(X_train, y_train, configs[c]);
      for (int idx : fold) predicted(idx, c) = model.predict(X.row(idx));
    }
  }

  if (cue_rmse) {
    for (int c = 0; c < kCueCount; ++c) {
      (*cue_rmse)[c] = rmse(predicted.col(c), targets.col(c));
    }
  }

  Eigen::VectorXd forecast(n), actual(n);
  for (int i = 0; i < n; ++i) {
    forecast[i] = combine_cues(predicted.row(i).transpose());
    actual[i] = combine_cues(targets.row(i).transpose());
  }
  return smape(forecast, actual);
}

}  // namespace

CompositeModel train_composite(const std::vector<TrainingSample>& samples,
                               const TrainOptions& options,
                               TrainingReport* report) {
  if (static_cast<int>(samples.size()) < 5 * options.folds) {
    throw InputError("training requires at least " +
                     std::to_string(5 * options.folds) + " faces, got " +
                     std::to_string(samples.size()));
  }

  CompositeModel model = make_empty_composite();
  model.sift = options.sift;

  Eigen::MatrixXd targets(samples.size(), kCueCount);
  for (std::size_t i = 0; i < samples.size(); ++i) {
    targets.row(i) = samples[i].targets.transpose();
  }

  std::array<Eigen::MatrixXd, kCueGroupCount> X_std;
  std::array<Standardizer, kCueGroupCount> standardizers;
  for (int g = 0; g < kCueGroupCount; ++g) {
    const Eigen::MatrixXd raw = group_matrix(samples, static_cast<CueGroup>(g));
    standardizers[g] = fit_standardizer(raw);
    X_std[g] = standardize_rows(standardizers[g], raw);
  }

  // One fold partition shared by every trial and the composite metric keeps
  // each objective deterministic per config.
  const std::uint64_t fold_seed = mix_seed(options.seed, 0xf01d);

  TrainingReport local_report;
  TrainingReport& rep = report ? *report : local_report;
  rep.folds = options.folds;
  rep.seed = options.seed;
  rep.bo_budget = options.bo_budget;
  rep.bo_init = options.bo_init;
  rep.n_train = static_cast<int>(samples.size());

  std::array<EnsembleConfig, kCueCount> best_configs;
  for (int c = 0; c < kCueCount; ++c) {
    const CueKind cue = static_cast<CueKind>(c);
    const auto& X = X_std[static_cast<int>(cue_group(cue))];
    const Eigen::VectorXd y = targets.col(c);

    const auto objective = [&](const EnsembleConfig& config) {
      EnsembleConfig seeded = config;
      seeded.rng_seed = fold_seed;
      return kfold_cv(X, y, seeded, options.folds, fold_seed).mean_rmse;
    };

    BoOptions bo;
    bo.budget = options.bo_budget;
    bo.n_init = options.bo_init;
    bo.seed = mix_seed(options.seed, static_cast<std::uint64_t>(c));
    const BoResult result = optimize(objective, SearchSpace{}, bo);

    EnsembleConfig best = result.best.config;
    best.rng_seed = fold_seed;
    best_configs[c] = best;

    model.cues[c].standardizer = standardizers[static_cast<int>(cue_group(cue))];
    model.cues[c].model = fit_ensemble(X, y, best);

    rep.cues[c].cue = cue;
    rep.cues[c].best = best;
    rep.cues[c].cv_rmse = result.best.objective;
  }

  rep.composite_smape = composite_cv_smape(X_std, targets, best_configs,
                                           options.folds, fold_seed, nullptr);
  return model;
}

EvaluationReport evaluate_composite(
    const std::vector<TrainingSample>& samples,
    const std::array<EnsembleConfig, kCueCount>& configs, int folds,
    std::uint64_t seed) {
  if (static_cast<int>(samples.size()) < folds) {
    throw InputError("evaluation requires at least as many faces as folds");
  }

  Eigen::MatrixXd targets(samples.size(), kCueCount);
  for (std::size_t i = 0; i < samples.size(); ++i) {
    targets.row(i) = samples[i].targets.transpose();
  }
  std::array<Eigen::MatrixXd, kCueGroupCount> X_std;
  for (int g = 0; g < kCueGroupCount; ++g) {
    const Eigen::MatrixXd raw = group_matrix(samples, static_cast<CueGroup>(g));
    X_std[g] = standardize_rows(fit_standardizer(raw), raw);
  }

  EvaluationReport out;
  out.folds = folds;
  out.seed = seed;
  const std::uint64_t fold_seed = mix_seed(seed, 0xf01d);
  std::array<EnsembleConfig, kCueCount> seeded = configs;
  for (auto& c : seeded) c.rng_seed = fold_seed;
  out.composite_smape = composite_cv_smape(X_std, targets, seeded, folds,
                                           fold_seed, &out.cue_rmse);
  return out;
}

}  // namespace fatigue
