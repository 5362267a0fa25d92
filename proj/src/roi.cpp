#include "fatigue/roi.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fatigue/errors.hpp"

namespace fatigue {

std::string_view to_string(RegionKind kind) {
  switch (kind) {
    case RegionKind::LeftEye: return "left_eye";
    case RegionKind::RightEye: return "right_eye";
    case RegionKind::LeftEyeBottom: return "left_eye_bottom";
    case RegionKind::RightEyeBottom: return "right_eye_bottom";
    case RegionKind::Cheek: return "cheek";
    case RegionKind::Mouth: return "mouth";
  }
  return "";
}

RegionBoxes region_boxes(const LandmarkSet& lm) {
  const Point le = lm.at(LandmarkName::LeftEyeCenter);
  const Point re = lm.at(LandmarkName::RightEyeCenter);
  const double d = iod(lm);
  if (!(d > 0.0)) {
    throw GeometryError("degenerate landmarks: inter-ocular distance is zero");
  }

  RegionBoxes boxes;
  boxes[static_cast<int>(RegionKind::LeftEye)] =
      Box::centered(le, 0.70 * d, 0.45 * d);
  boxes[static_cast<int>(RegionKind::RightEye)] =
      Box::centered(re, 0.70 * d, 0.45 * d);
  boxes[static_cast<int>(RegionKind::LeftEyeBottom)] =
      Box::centered({le.x, le.y + 0.35 * d}, 0.70 * d, 0.30 * d);
  boxes[static_cast<int>(RegionKind::RightEyeBottom)] =
      Box::centered({re.x, re.y + 0.35 * d}, 0.70 * d, 0.30 * d);
  boxes[static_cast<int>(RegionKind::Cheek)] = Box::centered(
      midpoint(le, lm.at(LandmarkName::MouthLeftCorner)), 0.60 * d, 0.60 * d);

  const Point mouth[4] = {
      lm.at(LandmarkName::MouthLeftCorner), lm.at(LandmarkName::MouthRightCorner),
      lm.at(LandmarkName::MouthTop), lm.at(LandmarkName::MouthBottom)};
  double x0 = mouth[0].x, x1 = mouth[0].x, y0 = mouth[0].y, y1 = mouth[0].y;
  for (const Point& p : mouth) {
    x0 = std::min(x0, p.x);
    x1 = std::max(x1, p.x);
    y0 = std::min(y0, p.y);
    y1 = std::max(y1, p.y);
  }
  double w = x1 - x0, h = y1 - y0;
  boxes[static_cast<int>(RegionKind::Mouth)] = {x0 - 0.25 * w, y0 - 0.25 * h,
                                                1.5 * w, 1.5 * h};
  return boxes;
}

namespace {

double sample_bilinear(const Eigen::MatrixXd& gray, double ax, double ay) {
  const int w = static_cast<int>(gray.cols());
  const int h = static_cast<int>(gray.rows());
  ax = std::clamp(ax, 0.0, static_cast<double>(w - 1));
  ay = std::clamp(ay, 0.0, static_cast<double>(h - 1));
  int x0 = static_cast<int>(ax);
  int y0 = static_cast<int>(ay);
  int x1 = std::min(x0 + 1, w - 1);
  int y1 = std::min(y0 + 1, h - 1);
  double fx = ax - x0;
  double fy = ay - y0;
  return (1.0 - fy) * ((1.0 - fx) * gray(y0, x0) + fx * gray(y0, x1)) +
         fy * ((1.0 - fx) * gray(y1, x0) + fx * gray(y1, x1));
}

}  // namespace

RoiPatch crop_and_resize(const Eigen::MatrixXd& gray, const Box& box,
                         RegionKind kind) {
  const double img_w = static_cast<double>(gray.cols());
  const double img_h = static_cast<double>(gray.rows());
  const Box clipped = intersect(box, img_w, img_h);
  if (!(clipped.w > 0.0) || !(clipped.h > 0.0)) {
    throw CropError(std::string(to_string(kind)) +
                    ": crop box lies outside the image");
  }

  const PatchSize size = patch_size(kind);
  RoiPatch patch;
  patch.kind = kind;
  patch.source_box = box;
  patch.pixels.resize(size.height, size.width);
  const double sx = clipped.w / size.width;
  const double sy = clipped.h / size.height;
  for (int j = 0; j < size.height; ++j) {
    // Destination pixel centers mapped into source edge space, then shifted
    // half a pixel to index pixel centers.
    const double ay = clipped.y + (j + 0.5) * sy - 0.5;
    for (int i = 0; i < size.width; ++i) {
      const double ax = clipped.x + (i + 0.5) * sx - 0.5;
      patch.pixels(j, i) = sample_bilinear(gray, ax, ay);
    }
  }
  return patch;
}

RoiPatch crop_and_resize(const Image& img, const Box& box, RegionKind kind) {
  return crop_and_resize(to_gray(img), box, kind);
}

RoiPatches extract_all(const Eigen::MatrixXd& gray, const LandmarkSet& lm) {
  const RegionBoxes boxes = region_boxes(lm);
  RoiPatches patches;
  for (int k = 0; k < kRegionCount; ++k) {
    patches[k] = crop_and_resize(gray, boxes[k], static_cast<RegionKind>(k));
  }
  return patches;
}

RoiPatches extract_all(const Image& img, const LandmarkSet& lm) {
  return extract_all(to_gray(img), lm);
}

}  // namespace fatigue
