#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "fatigue/landmarks.hpp"

namespace fatigue {

// Face-analysis HTTP service settings. Credentials travel in the
// X-Api-Key / X-Api-Secret headers; images POST to <endpoint>/detect as
// application/octet-stream.
struct ServiceConfig {
  std::string endpoint;  // e.g. http://127.0.0.1:8085
  std::string api_key;
  std::string api_secret;
  std::string provider = "facepp";
  int max_retries = 3;       // transport-class failures only
  int retry_base_ms = 100;   // exponential backoff: base, 2x, 4x, ...
  int max_inflight = 4;
};

// One image -> all detected faces, mapped onto the canonical schema.
// Transport-class failures (connect errors, 5xx, 429) retry with exponential
// backoff; auth failures (401/403) and other 4xx never retry.
std::vector<FaceRecord> detect_faces(std::span<const std::uint8_t> image_bytes,
                                     const ServiceConfig& config,
                                     const std::string& image_ref = "");

struct BatchDetectItem {
  std::string image_ref;
  std::vector<FaceRecord> faces;
  std::string error;  // non-empty when this image failed
};

// Fans out over images with at most max_inflight concurrent requests.
// Output order equals input order regardless of completion order.
std::vector<BatchDetectItem> detect_faces_batch(
    const std::vector<std::string>& image_paths, const ServiceConfig& config);

}  // namespace fatigue
