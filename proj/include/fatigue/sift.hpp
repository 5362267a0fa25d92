#pragma once

#include <Eigen/Dense>

namespace fatigue {

// Upright single-scale dense SIFT. Keypoints sit on a fixed grid; each
// contributes a 4x4x8 gradient-orientation histogram (128 values).
struct SiftParams {
  int grid_step = 8;
  int support = 16;          // square support, support = cells * cell_px
  int spatial_cells = 4;     // per axis
  int orientation_bins = 8;
  double sigma_ratio = 0.5;  // Gaussian window sigma = sigma_ratio * support
  double clamp = 0.2;        // per-entry clamp after unit normalization

  constexpr int values_per_keypoint() const {
    return spatial_cells * spatial_cells * orientation_bins;
  }
};

// Keypoints anchor at top-left offsets {0, step, 2*step, ...} and are kept
// only while the whole support fits inside the patch.
constexpr int keypoints_along(int extent, int support, int step) {
  return extent >= support ? (extent - support) / step + 1 : 0;
}

constexpr int descriptor_length(int width, int height,
                                const SiftParams& p = SiftParams{}) {
  return keypoints_along(width, p.support, p.grid_step) *
         keypoints_along(height, p.support, p.grid_step) *
         p.values_per_keypoint();
}

// Descriptor blocks are concatenated in raster order (left-to-right,
// top-to-bottom over the keypoint grid). Zero-gradient keypoints yield the
// zero block; every other block has unit Euclidean norm.
Eigen::VectorXd dense_sift(const Eigen::MatrixXd& patch,
                           const SiftParams& params = SiftParams{});

}  // namespace fatigue
