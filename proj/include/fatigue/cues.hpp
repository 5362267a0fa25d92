#pragma once

#include <string_view>

#include <Eigen/Dense>

#include "fatigue/descriptor.hpp"

namespace fatigue {

// The eight facial cues, in combiner-coefficient order.
enum class CueKind : int {
  HangingEyelid = 0,
  RedEye,
  DarkCircle,
  PaleSkin,
  DroopyCornerMouth,
  SwollenEye,
  GlazedEye,
  Wrinkles,
};

inline constexpr int kCueCount = 8;

std::string_view to_string(CueKind cue);
CueKind cue_from_string(std::string_view s);

// Which descriptor group feeds each cue regressor: the eye group covers
// hanging eyelids, red eyes, swollen eyes, glazed eyes and wrinkles; dark
// circles read from the eye bottoms, pale skin from the cheek, droopy
// corner mouth from the mouth.
constexpr CueGroup cue_group(CueKind cue) {
  switch (cue) {
    case CueKind::HangingEyelid:
    case CueKind::RedEye:
    case CueKind::SwollenEye:
    case CueKind::GlazedEye:
    case CueKind::Wrinkles: return CueGroup::Eyes;
    case CueKind::DarkCircle: return CueGroup::EyeBottoms;
    case CueKind::PaleSkin: return CueGroup::Cheek;
    case CueKind::DroopyCornerMouth: return CueGroup::Mouth;
  }
  return CueGroup::Eyes;
}

// Cue rates on the canonical 0-100 scale, indexed by CueKind.
using CueVector = Eigen::Matrix<double, kCueCount, 1>;

}  // namespace fatigue
