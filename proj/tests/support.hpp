#pragma once

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <string>

#include <json.hpp>

#include "fatigue/image.hpp"
#include "fatigue/landmarks.hpp"

namespace testsupport {

// Canonical fixture face: eyes at (120,100) and (220,100), IOD 100, mouth
// well below so the six region boxes stay inside a 340x330 image.
inline fatigue::LandmarkSet standard_landmarks() {
  using fatigue::LandmarkName;
  fatigue::LandmarkSet lm;
  lm.at(LandmarkName::LeftEyeCenter) = {120, 100};
  lm.at(LandmarkName::RightEyeCenter) = {220, 100};
  lm.at(LandmarkName::LeftEyeInner) = {145, 100};
  lm.at(LandmarkName::LeftEyeOuter) = {95, 100};
  lm.at(LandmarkName::LeftEyeTop) = {120, 90};
  lm.at(LandmarkName::LeftEyeBottom) = {120, 110};
  lm.at(LandmarkName::RightEyeInner) = {195, 100};
  lm.at(LandmarkName::RightEyeOuter) = {245, 100};
  lm.at(LandmarkName::RightEyeTop) = {220, 90};
  lm.at(LandmarkName::RightEyeBottom) = {220, 110};
  lm.at(LandmarkName::NoseTip) = {170, 150};
  lm.at(LandmarkName::MouthLeftCorner) = {140, 260};
  lm.at(LandmarkName::MouthRightCorner) = {200, 260};
  lm.at(LandmarkName::MouthTop) = {170, 250};
  lm.at(LandmarkName::MouthBottom) = {170, 270};
  return lm;
}

inline constexpr int kFixtureImageWidth = 340;
inline constexpr int kFixtureImageHeight = 330;

inline fatigue::FaceRecord standard_record(const std::string& face_id = "face-0",
                                           const std::string& image = "face-0.png") {
  fatigue::FaceRecord rec;
  rec.face_id = face_id;
  rec.image_ref = image;
  rec.rect = {70, 50, 200, 250};
  rec.landmarks = standard_landmarks();
  rec.provider = "canonical";
  return rec;
}

inline nlohmann::json standard_record_json() {
  return fatigue::to_json(standard_record());
}

inline fatigue::Image constant_image(int width, int height, std::uint8_t value) {
  fatigue::Image img;
  img.width = width;
  img.height = height;
  img.rgb.assign(static_cast<std::size_t>(width) * height * 3, value);
  return img;
}

// Diagonal stripes of wavelength `wavelength` at angle theta (radians),
// painted as grayscale. Orientation carries the signal SIFT can see.
inline double stripe_intensity(double x, double y, double theta,
                               double wavelength = 8.0) {
  const double phase =
      2.0 * std::numbers::pi * (x * std::cos(theta) + y * std::sin(theta)) /
      wavelength;
  return 0.5 + 0.35 * std::sin(phase);
}

// Maps a 0-100 cue score onto a stripe angle, 5..85 degrees.
inline double score_to_angle(double score) {
  return (5.0 + 0.8 * score) * std::numbers::pi / 180.0;
}

// Fixture face image with independently paintable horizontal bands, one per
// descriptor group. Band boundaries sit between the region boxes of
// standard_landmarks(): eyes above y=121.25, eye bottoms to y=150, cheek to
// y=227, mouth below.
inline fatigue::Image banded_face_image(double eyes_score,
                                        double eye_bottom_score,
                                        double cheek_score,
                                        double mouth_score) {
  fatigue::Image img = constant_image(kFixtureImageWidth, kFixtureImageHeight, 128);
  for (int y = 0; y < img.height; ++y) {
    double score;
    if (y < 121.25) {
      score = eyes_score;
    } else if (y < 150) {
      score = eye_bottom_score;
    } else if (y < 227) {
      score = cheek_score;
    } else {
      score = mouth_score;
    }
    const double theta = score_to_angle(score);
    for (int x = 0; x < img.width; ++x) {
      const double v = stripe_intensity(x, y, theta);
      const auto byte = static_cast<std::uint8_t>(std::lround(v * 255.0));
      std::uint8_t* px = img.pixel(x, y);
      px[0] = px[1] = px[2] = byte;
    }
  }
  return img;
}

// Unique scratch directory under the build tree.
inline std::filesystem::path scratch_dir(const std::string& name) {
  const std::filesystem::path dir =
      std::filesystem::temp_directory_path() / ("fatigue_test_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

inline void write_file(const std::filesystem::path& path,
                       const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  out << contents;
}

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace testsupport
