#pragma once

#include <string_view>

#include <Eigen/Dense>

#include "fatigue/roi.hpp"
#include "fatigue/sift.hpp"

namespace fatigue {

// Feature groups feeding the cue regressors. Eye and eye-bottom groups
// concatenate the left and right patch descriptors (left half first).
enum class CueGroup : int { Eyes = 0, EyeBottoms, Cheek, Mouth };

inline constexpr int kCueGroupCount = 4;
std::string_view to_string(CueGroup group);
CueGroup cue_group_from_string(std::string_view s);

constexpr int group_descriptor_length(CueGroup group,
                                      const SiftParams& p = SiftParams{}) {
  constexpr PatchSize eye = patch_size(RegionKind::LeftEye);
  constexpr PatchSize eye_bottom = patch_size(RegionKind::LeftEyeBottom);
  constexpr PatchSize cheek = patch_size(RegionKind::Cheek);
  constexpr PatchSize mouth = patch_size(RegionKind::Mouth);
  switch (group) {
    case CueGroup::Eyes:
      return 2 * descriptor_length(eye.width, eye.height, p);
    case CueGroup::EyeBottoms:
      return 2 * descriptor_length(eye_bottom.width, eye_bottom.height, p);
    case CueGroup::Cheek:
      return descriptor_length(cheek.width, cheek.height, p);
    case CueGroup::Mouth:
      return descriptor_length(mouth.width, mouth.height, p);
  }
  return 0;
}

// Frozen contract: the grid rule applied to the fixed patch sizes must keep
// yielding these lengths. Model files store them and loading re-checks.
static_assert(group_descriptor_length(CueGroup::Eyes) == 5376);
static_assert(group_descriptor_length(CueGroup::EyeBottoms) == 3584);
static_assert(group_descriptor_length(CueGroup::Cheek) == 6272);
static_assert(group_descriptor_length(CueGroup::Mouth) == 4608);

Eigen::VectorXd describe_group(const RoiPatches& patches, CueGroup group,
                               const SiftParams& params = SiftParams{});

// Per-dimension z-scoring learned on training descriptors. Uses the
// population (divide-by-n) standard deviation, floored at 1e-8.
struct Standardizer {
  Eigen::VectorXd mean;
  Eigen::VectorXd std;

  static constexpr double kStdFloor = 1e-8;
};

// Rows of X are descriptors.
Standardizer fit_standardizer(const Eigen::MatrixXd& X);
Eigen::VectorXd apply_standardizer(const Standardizer& s,
                                   const Eigen::VectorXd& v);
Eigen::MatrixXd standardize_rows(const Standardizer& s,
                                 const Eigen::MatrixXd& X);

}  // namespace fatigue
