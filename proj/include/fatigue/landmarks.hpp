#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "fatigue/geometry.hpp"

namespace fatigue {

// The 15 canonical landmark points. "left" is the viewer's left, so
// left_eye_center.x < right_eye_center.x in a valid set.
enum class LandmarkName : int {
  LeftEyeCenter = 0,
  RightEyeCenter,
  LeftEyeInner,
  LeftEyeOuter,
  LeftEyeTop,
  LeftEyeBottom,
  RightEyeInner,
  RightEyeOuter,
  RightEyeTop,
  RightEyeBottom,
  NoseTip,
  MouthLeftCorner,
  MouthRightCorner,
  MouthTop,
  MouthBottom,
};

inline constexpr int kLandmarkCount = 15;

const std::array<std::string_view, kLandmarkCount>& landmark_names();
std::string_view to_string(LandmarkName name);

struct LandmarkSet {
  std::array<Point, kLandmarkCount> points{};

  Point& at(LandmarkName n) { return points[static_cast<int>(n)]; }
  const Point& at(LandmarkName n) const { return points[static_cast<int>(n)]; }
};

// Inter-ocular distance, the scale unit for all region geometry.
double iod(const LandmarkSet& lm);

// Throws SchemaError/GeometryError when an invariant fails.
void validate(const LandmarkSet& lm);

enum class Gender { Female, Male };
enum class Race { Asian, AfricanAmerican, Caucasian };

std::string_view to_string(Gender g);
std::string_view to_string(Race r);
Gender gender_from_string(std::string_view s);
Race race_from_string(std::string_view s);

struct Demographics {
  int age_years = 0;
  Gender gender = Gender::Female;
  double gender_confidence = 0.0;  // percent
  Race race = Race::Asian;
  double race_confidence = 0.0;  // percent

  // 10-year interval index, clamped to the last bin.
  int age_bin() const { return std::min(age_years / 10, 6); }
};

inline constexpr int kAgeBinCount = 7;
std::string age_bin_label(int bin);

struct FaceRecord {
  std::string face_id;
  std::string image_ref;
  Rect rect;
  LandmarkSet landmarks;
  std::optional<Demographics> demographics;
  std::string provider;
};

void validate(const FaceRecord& rec);

// Canonical JSON-Lines schema.
FaceRecord face_record_from_json(const nlohmann::json& j);
nlohmann::json to_json(const FaceRecord& rec);
std::string serialize_landmark_line(const FaceRecord& rec);

// Parses a whole JSON-Lines document; blank lines are skipped. Errors carry
// the 1-based line number.
std::vector<FaceRecord> parse_landmark_file(std::string_view text);
std::string serialize_landmark_file(const std::vector<FaceRecord>& records);

std::vector<FaceRecord> load_landmark_file(const std::string& path);

}  // namespace fatigue
