#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "fatigue/landmarks.hpp"

namespace fatigue {

// Maps one provider face payload onto the canonical schema. Unknown extra
// fields are ignored; a missing mappable point is a schema error.
//
// Supported providers:
//   canonical   - payload already in the canonical FaceRecord schema
//   facepp      - Face++-v3 style: {face_token, face_rectangle{top,left,
//                 width,height}, landmark{<name>:{x,y}}, attributes{age,
//                 gender, ethnicity}} with absolute pixel coordinates
//   rectpercent - canonical names but landmark coordinates given as percent
//                 of the face rectangle
FaceRecord normalize_provider_payload(const nlohmann::json& payload,
                                      const std::string& provider,
                                      const std::string& image_ref = "");

// Splits a provider detect-response envelope into per-face payloads, in
// provider order. Zero faces is an empty list, not an error.
std::vector<nlohmann::json> provider_face_payloads(const nlohmann::json& response,
                                                   const std::string& provider);

bool provider_known(const std::string& provider);

}  // namespace fatigue
