#pragma once

#include <array>
#include <string_view>

#include <Eigen/Dense>

#include "fatigue/geometry.hpp"
#include "fatigue/image.hpp"
#include "fatigue/landmarks.hpp"

namespace fatigue {

// The six areas of interest. Each face yields exactly one patch per kind.
enum class RegionKind : int {
  LeftEye = 0,
  RightEye,
  LeftEyeBottom,
  RightEyeBottom,
  Cheek,
  Mouth,
};

inline constexpr int kRegionCount = 6;
std::string_view to_string(RegionKind kind);

struct PatchSize {
  int width;
  int height;
};

// Fixed patch sizes chosen so the descriptor grid rule lands on whole
// keypoint counts.
constexpr PatchSize patch_size(RegionKind kind) {
  switch (kind) {
    case RegionKind::LeftEye:
    case RegionKind::RightEye: return {64, 32};
    case RegionKind::LeftEyeBottom:
    case RegionKind::RightEyeBottom: return {64, 24};
    case RegionKind::Cheek: return {64, 64};
    case RegionKind::Mouth: return {80, 40};
  }
  return {0, 0};
}

struct RoiPatch {
  RegionKind kind = RegionKind::LeftEye;
  Eigen::MatrixXd pixels;  // rows = y, cols = x, intensities in [0,1]
  Box source_box;          // pre-clip, pre-resize
};

using RegionBoxes = std::array<Box, kRegionCount>;
using RoiPatches = std::array<RoiPatch, kRegionCount>;

// Box geometry in IOD units:
//   eye:        centered on the eye center, 0.70 x 0.45 IOD
//   eye bottom: centered 0.35 IOD below the eye center, 0.70 x 0.30 IOD
//   cheek:      centered midway between left eye center and left mouth
//               corner, 0.60 x 0.60 IOD
//   mouth:      bounding box of the four mouth landmarks grown 25% per side
// Boxes are not clipped here; clipping happens at crop time.
RegionBoxes region_boxes(const LandmarkSet& lm);

// Grayscale crop, clipped to image bounds, bilinearly resized to the kind's
// fixed patch size. No padding: out-of-frame area is discarded before the
// resize.
RoiPatch crop_and_resize(const Eigen::MatrixXd& gray, const Box& box,
                         RegionKind kind);
RoiPatch crop_and_resize(const Image& img, const Box& box, RegionKind kind);

// All six regions, or a Geometry/Crop error tagged with the failing kind.
RoiPatches extract_all(const Image& img, const LandmarkSet& lm);
RoiPatches extract_all(const Eigen::MatrixXd& gray, const LandmarkSet& lm);

}  // namespace fatigue
