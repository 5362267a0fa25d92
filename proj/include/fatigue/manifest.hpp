#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "fatigue/composite.hpp"

namespace fatigue {

// One line of the training manifest: a face, its image, and per-rater
// integer ratings (0-4) for all eight cues.
struct RatingManifestEntry {
  std::string face_id;
  std::string image;
  RaterRatings ratings;
};

std::vector<RatingManifestEntry> parse_training_manifest(std::string_view text);
std::vector<RatingManifestEntry> load_training_manifest(const std::string& path);

struct RejectEntry {
  std::string face_id;
  std::string reason;
};

std::string serialize_rejects(const std::vector<RejectEntry>& rejects);

}  // namespace fatigue
