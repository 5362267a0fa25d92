#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "fatigue/bayesopt.hpp"
#include "fatigue/cues.hpp"
#include "fatigue/ensemble.hpp"
#include "fatigue/image.hpp"
#include "fatigue/roi.hpp"

namespace fatigue {

// Coefficients of the published affine combiner mapping the eight cue
// rates to the overall fatigue rate, in CueKind order, plus its intercept.
const CueVector& combiner_coefficients();
inline constexpr double kCombinerIntercept = 44.41;

// Attainable range of the combiner over cue vectors in [0,100]^8; the
// normalized score maps this interval onto [0,100].
double raw_score_min();
double raw_score_max();

double combine_cues(const CueVector& cues);

// Inputs may overshoot the analytic range by at most 1e-9 (clamped);
// anything farther out is an invariant violation.
double normalize_score(double raw);

// Per-rater integer ratings in [0,4] for all eight cues -> mean over
// raters, mapped onto the canonical 0-100 scale (x25).
using RaterRatings = std::map<std::string, std::array<int, kCueCount>>;
CueVector aggregate_ratings(const RaterRatings& ratings);

struct CueModel {
  EnsembleModel model;
  Standardizer standardizer;
};

struct CompositeModel {
  static constexpr int kFormatVersion = 1;

  SiftParams sift;
  std::array<CueModel, kCueCount> cues;
  CueVector coefficients = combiner_coefficients();
  double intercept = kCombinerIntercept;
  double raw_min = 0.0;  // filled from the analytic range on construction
  double raw_max = 0.0;
};

CompositeModel make_empty_composite();

struct FatigueScore {
  CueVector cues;
  double raw = 0.0;
  double normalized = 0.0;
};

// Group descriptors of one face, indexed by CueGroup.
using GroupDescriptors = std::array<Eigen::VectorXd, kCueGroupCount>;
GroupDescriptors describe_face(const RoiPatches& patches,
                               const SiftParams& params);

FatigueScore predict_fatigue(const CompositeModel& model,
                             const GroupDescriptors& descriptors);
FatigueScore predict_fatigue(const CompositeModel& model, const Image& image,
                             const LandmarkSet& landmarks);

// --- training -------------------------------------------------------------

struct TrainingSample {
  std::string face_id;
  GroupDescriptors descriptors;
  CueVector targets;
};

struct TrainOptions {
  int folds = 5;
  int bo_budget = 30;
  int bo_init = 10;
  std::uint64_t seed = 0;
  SiftParams sift;
};

struct CueTrainReport {
  CueKind cue = CueKind::HangingEyelid;
  EnsembleConfig best;
  double cv_rmse = 0.0;
};

struct TrainingReport {
  std::array<CueTrainReport, kCueCount> cues;
  double composite_smape = 0.0;
  int folds = 5;
  std::uint64_t seed = 0;
  int bo_budget = 30;
  int bo_init = 10;
  int n_train = 0;
};

// For every cue: standardize its group descriptors, search EnsembleConfig
// by Bayesian optimization against the k-fold CV RMSE, refit the winner on
// all data. Also reports a k-fold composite SMAPE: held-out cue predictions
// combined through the affine combiner against the combiner applied to the
// ground-truth cues.
CompositeModel train_composite(const std::vector<TrainingSample>& samples,
                               const TrainOptions& options,
                               TrainingReport* report = nullptr);

// CV metrics for fixed per-cue configs (no hyperparameter search).
struct EvaluationReport {
  std::array<double, kCueCount> cue_rmse{};
  double composite_smape = 0.0;
  int folds = 5;
  std::uint64_t seed = 0;
};
EvaluationReport evaluate_composite(const std::vector<TrainingSample>& samples,
                                    const std::array<EnsembleConfig, kCueCount>& configs,
                                    int folds, std::uint64_t seed);

// --- persistence ----------------------------------------------------------

nlohmann::json to_json(const CompositeModel& model);
CompositeModel composite_from_json(const nlohmann::json& j);
void save_model(const std::string& path, const CompositeModel& model);
CompositeModel load_model(const std::string& path);

}  // namespace fatigue
