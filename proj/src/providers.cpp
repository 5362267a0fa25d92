#include "fatigue/providers.hpp"

#include <utility>

#include "fatigue/errors.hpp"

namespace fatigue {

namespace {

// Face++-style landmark vocabulary -> canonical names. "left" in the
// provider payload is image-left, same convention as ours.
const std::vector<std::pair<std::string_view, LandmarkName>>& facepp_point_map() {
  static const std::vector<std::pair<std::string_view, LandmarkName>> map = {
      {"left_eye_center", LandmarkName::LeftEyeCenter},
      {"right_eye_center", LandmarkName::RightEyeCenter},
      {"left_eye_right_corner", LandmarkName::LeftEyeInner},
      {"left_eye_left_corner", LandmarkName::LeftEyeOuter},
      {"left_eye_top", LandmarkName::LeftEyeTop},
      {"left_eye_bottom", LandmarkName::LeftEyeBottom},
      {"right_eye_left_corner", LandmarkName::RightEyeInner},
      {"right_eye_right_corner", LandmarkName::RightEyeOuter},
      {"right_eye_top", LandmarkName::RightEyeTop},
      {"right_eye_bottom", LandmarkName::RightEyeBottom},
      {"nose_tip", LandmarkName::NoseTip},
      {"mouth_left_corner", LandmarkName::MouthLeftCorner},
      {"mouth_right_corner", LandmarkName::MouthRightCorner},
      {"mouth_upper_lip_top", LandmarkName::MouthTop},
      {"mouth_lower_lip_bottom", LandmarkName::MouthBottom},
  };
  return map;
}

Race ethnicity_from_provider(const std::string& label) {
  if (label == "Asian" || label == "ASIAN") return Race::Asian;
  if (label == "Black" || label == "BLACK" || label == "AfricanAmerican") {
    return Race::AfricanAmerican;
  }
  if (label == "White" || label == "WHITE" || label == "Caucasian") {
    return Race::Caucasian;
  }
  throw SchemaError("ethnicity '" + label +
                    "' not mappable; allowed: Asian, Black/AfricanAmerican, "
                    "White/Caucasian");
}

FaceRecord from_facepp(const nlohmann::json& j, const std::string& image_ref) {
  FaceRecord rec;
  rec.provider = "facepp";
  rec.image_ref = image_ref;
  try {
    rec.face_id = j.value("face_token", "");
    const auto& fr = j.at("face_rectangle");
    rec.rect = {fr.at("left").get<int>(), fr.at("top").get<int>(),
                fr.at("width").get<int>(), fr.at("height").get<int>()};
    const auto& lm = j.at("landmark");
    for (const auto& [provider_name, canonical] : facepp_point_map()) {
      std::string key(provider_name);
      if (!lm.contains(key)) {
        throw SchemaError("provider payload missing point '" + key +
                          "' (maps to '" +
                          std::string(to_string(canonical)) + "')");
      }
      const auto& pt = lm.at(key);
      rec.landmarks.at(canonical) = {pt.at("x").get<double>(),
                                     pt.at("y").get<double>()};
    }
    if (j.contains("attributes") && !j.at("attributes").is_null()) {
      const auto& attrs = j.at("attributes");
      Demographics d;
      d.age_years = attrs.at("age").at("value").get<int>();
      const auto& g = attrs.at("gender");
      d.gender = gender_from_string(g.at("value").get<std::string>());
      d.gender_confidence = g.value("confidence", 0.0);
      const auto& e = attrs.at("ethnicity");
      d.race = ethnicity_from_provider(e.at("value").get<std::string>());
      d.race_confidence = e.value("confidence", 0.0);
      rec.demographics = d;
    }
  } catch (const nlohmann::json::exception& e) {
    throw SchemaError(std::string("malformed facepp payload: ") + e.what());
  }
  return rec;
}

FaceRecord from_rectpercent(const nlohmann::json& j) {
  // Canonical shape, but landmark coordinates are percent of the face rect.
  nlohmann::json abs = j;
  try {
    const auto& r = j.at("rect");
    double rx = r.at("x").get<double>();
    double ry = r.at("y").get<double>();
    double rw = r.at("w").get<double>();
    double rh = r.at("h").get<double>();
    for (auto& [name, pt] : abs.at("landmarks").items()) {
      (void)name;
      if (!pt.is_array() || pt.size() != 2) continue;  // caught downstream
      pt[0] = rx + pt[0].get<double>() / 100.0 * rw;
      pt[1] = ry + pt[1].get<double>() / 100.0 * rh;
    }
  } catch (const nlohmann::json::exception& e) {
    throw SchemaError(std::string("malformed rectpercent payload: ") + e.what());
  }
  FaceRecord rec = face_record_from_json(abs);
  rec.provider = "rectpercent";
  return rec;
}

}  // namespace

bool provider_known(const std::string& provider) {
  return provider == "canonical" || provider == "facepp" ||
         provider == "rectpercent";
}

FaceRecord normalize_provider_payload(const nlohmann::json& payload,
                                      const std::string& provider,
                                      const std::string& image_ref) {
  if (provider == "canonical") {
    FaceRecord rec = face_record_from_json(payload);
    if (!image_ref.empty()) rec.image_ref = image_ref;
    return rec;
  }
  if (provider == "facepp") {
    FaceRecord rec = from_facepp(payload, image_ref);
    validate(rec);
    return rec;
  }
  if (provider == "rectpercent") {
    FaceRecord rec = from_rectpercent(payload);
    if (!image_ref.empty()) rec.image_ref = image_ref;
    return rec;
  }
  throw ConfigError("unknown provider '" + provider +
                    "'; known: canonical, facepp, rectpercent");
}

std::vector<nlohmann::json> provider_face_payloads(const nlohmann::json& response,
                                                   const std::string& provider) {
  if (!provider_known(provider)) {
    throw ConfigError("unknown provider '" + provider + "'");
  }
  std::vector<nlohmann::json> out;
  if (!response.contains("faces")) return out;
  const auto& faces = response.at("faces");
  if (!faces.is_array()) throw SchemaError("response 'faces' must be an array");
  for (const auto& f : faces) out.push_back(f);
  return out;
}

}  // namespace fatigue
