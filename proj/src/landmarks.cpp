#include "fatigue/landmarks.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "fatigue/errors.hpp"

namespace fatigue {

const std::array<std::string_view, kLandmarkCount>& landmark_names() {
  static const std::array<std::string_view, kLandmarkCount> names = {
      "left_eye_center",  "right_eye_center", "left_eye_inner",
      "left_eye_outer",   "left_eye_top",     "left_eye_bottom",
      "right_eye_inner",  "right_eye_outer",  "right_eye_top",
      "right_eye_bottom", "nose_tip",         "mouth_left_corner",
      "mouth_right_corner", "mouth_top",      "mouth_bottom",
  };
  return names;
}

std::string_view to_string(LandmarkName name) {
  return landmark_names()[static_cast<int>(name)];
}

double iod(const LandmarkSet& lm) {
  return distance(lm.at(LandmarkName::LeftEyeCenter),
                  lm.at(LandmarkName::RightEyeCenter));
}

void validate(const LandmarkSet& lm) {
  for (int i = 0; i < kLandmarkCount; ++i) {
    const Point& p = lm.points[i];
    if (!std::isfinite(p.x) || !std::isfinite(p.y) || p.x < 0.0 || p.y < 0.0) {
      throw SchemaError("landmark '" + std::string(landmark_names()[i]) +
                        "' has non-finite or negative coordinates");
    }
  }
  const Point& le = lm.at(LandmarkName::LeftEyeCenter);
  const Point& re = lm.at(LandmarkName::RightEyeCenter);
  if (!(le.x < re.x)) {
    throw SchemaError("left_eye_center.x must be < right_eye_center.x");
  }
  if (!(iod(lm) > 0.0)) {
    throw GeometryError("inter-ocular distance must be positive");
  }
}

std::string_view to_string(Gender g) {
  return g == Gender::Female ? "Female" : "Male";
}

std::string_view to_string(Race r) {
  switch (r) {
    case Race::Asian: return "Asian";
    case Race::AfricanAmerican: return "AfricanAmerican";
    case Race::Caucasian: return "Caucasian";
  }
  return "";
}

Gender gender_from_string(std::string_view s) {
  if (s == "Female") return Gender::Female;
  if (s == "Male") return Gender::Male;
  throw SchemaError("gender '" + std::string(s) +
                    "' is not one of {Female, Male}");
}

Race race_from_string(std::string_view s) {
  if (s == "Asian") return Race::Asian;
  if (s == "AfricanAmerican") return Race::AfricanAmerican;
  if (s == "Caucasian") return Race::Caucasian;
  throw SchemaError("race '" + std::string(s) +
                    "' is not one of {Asian, AfricanAmerican, Caucasian}");
}

std::string age_bin_label(int bin) {
  if (bin >= 6) return "60+";
  return std::to_string(bin * 10) + "-" + std::to_string(bin * 10 + 10);
}

void validate(const FaceRecord& rec) {
  if (rec.face_id.empty()) throw SchemaError("face_id must be non-empty");
  if (rec.rect.w <= 0 || rec.rect.h <= 0) {
    throw SchemaError("face '" + rec.face_id + "': rect must have w > 0, h > 0");
  }
  if (rec.demographics) {
    const Demographics& d = *rec.demographics;
    if (d.age_years < 0) throw SchemaError("age must be non-negative");
    if (d.gender_confidence < 0.0 || d.gender_confidence > 100.0 ||
        d.race_confidence < 0.0 || d.race_confidence > 100.0) {
      throw SchemaError("attribute confidences must lie in [0,100]");
    }
  }
  validate(rec.landmarks);
}

namespace {

double require_number(const nlohmann::json& j, const std::string& context) {
  if (!j.is_number()) throw SchemaError(context + " must be a number");
  return j.get<double>();
}

Demographics demographics_from_json(const nlohmann::json& j) {
  Demographics d;
  if (!j.contains("age") || !j.at("age").contains("value")) {
    throw SchemaError("attributes.age.value missing");
  }
  d.age_years = j.at("age").at("value").get<int>();
  const auto& g = j.at("gender");
  d.gender = gender_from_string(g.at("value").get<std::string>());
  d.gender_confidence = require_number(g.at("confidence"), "gender.confidence");
  const auto& r = j.at("race");
  d.race = race_from_string(r.at("value").get<std::string>());
  d.race_confidence = require_number(r.at("confidence"), "race.confidence");
  return d;
}

nlohmann::json to_json(const Demographics& d) {
  return {
      {"age", {{"value", d.age_years}}},
      {"gender", {{"value", to_string(d.gender)}, {"confidence", d.gender_confidence}}},
      {"race", {{"value", to_string(d.race)}, {"confidence", d.race_confidence}}},
  };
}

}  // namespace

FaceRecord face_record_from_json(const nlohmann::json& j) {
  FaceRecord rec;
  try {
    rec.face_id = j.at("face_id").get<std::string>();
    rec.image_ref = j.at("image").get<std::string>();
    const auto& r = j.at("rect");
    rec.rect = {r.at("x").get<int>(), r.at("y").get<int>(),
                r.at("w").get<int>(), r.at("h").get<int>()};
    const auto& lms = j.at("landmarks");
    for (int i = 0; i < kLandmarkCount; ++i) {
      std::string name(landmark_names()[i]);
      if (!lms.contains(name)) {
        throw SchemaError("missing required landmark '" + name + "'");
      }
      const auto& pt = lms.at(name);
      if (!pt.is_array() || pt.size() != 2) {
        throw SchemaError("landmark '" + name + "' must be a [x, y] pair");
      }
      rec.landmarks.points[i] = {require_number(pt[0], name + ".x"),
                                 require_number(pt[1], name + ".y")};
    }
    if (j.contains("attributes") && !j.at("attributes").is_null()) {
      rec.demographics = demographics_from_json(j.at("attributes"));
    }
    rec.provider = j.value("provider", "");
  } catch (const nlohmann::json::exception& e) {
    throw SchemaError(std::string("malformed face record: ") + e.what());
  }
  validate(rec);
  return rec;
}

nlohmann::json to_json(const FaceRecord& rec) {
  nlohmann::json lms = nlohmann::json::object();
  for (int i = 0; i < kLandmarkCount; ++i) {
    const Point& p = rec.landmarks.points[i];
    lms[std::string(landmark_names()[i])] = {p.x, p.y};
  }
  nlohmann::json j = {
      {"face_id", rec.face_id},
      {"image", rec.image_ref},
      {"rect", {{"x", rec.rect.x}, {"y", rec.rect.y}, {"w", rec.rect.w}, {"h", rec.rect.h}}},
      {"landmarks", std::move(lms)},
      {"provider", rec.provider},
  };
  if (rec.demographics) j["attributes"] = to_json(*rec.demographics);
  return j;
}

std::string serialize_landmark_line(const FaceRecord& rec) {
  return to_json(rec).dump();
}

std::vector<FaceRecord> parse_landmark_file(std::string_view text) {
  std::vector<FaceRecord> records;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    std::string_view line = text.substr(
        pos, eol == std::string_view::npos ? text.size() - pos : eol - pos);
    ++line_no;
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    if (line.find_first_not_of(" \t\r") == std::string_view::npos) continue;
    nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
    if (j.is_discarded()) {
      throw ParseError(line_no, "malformed JSON");
    }
    try {
      records.push_back(face_record_from_json(j));
    } catch (const Error& e) {
      throw ParseError(line_no, e.what());
    }
  }
  return records;
}

std::string serialize_landmark_file(const std::vector<FaceRecord>& records) {
  std::string out;
  for (const FaceRecord& rec : records) {
    out += serialize_landmark_line(rec);
    out += '\n';
  }
  return out;
}

std::vector<FaceRecord> load_landmark_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open landmark file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_landmark_file(ss.str());
}

}  // namespace fatigue
