#include "fatigue/manifest.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "fatigue/errors.hpp"

namespace fatigue {

std::vector<RatingManifestEntry> parse_training_manifest(std::string_view text) {
  std::vector<RatingManifestEntry> entries;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t eol = text.find('\n', pos);
    std::string_view line = text.substr(
        pos, eol == std::string_view::npos ? text.size() - pos : eol - pos);
    ++line_no;
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    if (line.find_first_not_of(" \t\r") == std::string_view::npos) continue;

    nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
    if (j.is_discarded()) throw ParseError(line_no, "malformed JSON");
    try {
      RatingManifestEntry entry;
      entry.face_id = j.at("face_id").get<std::string>();
      entry.image = j.at("image").get<std::string>();
      const auto& ratings = j.at("ratings");
      if (!ratings.is_object() || ratings.empty()) {
        throw SchemaError("'ratings' must hold at least one rater");
      }
      for (const auto& [rater, values] : ratings.items()) {
        std::array<int, kCueCount> row{};
        for (int c = 0; c < kCueCount; ++c) {
          const std::string cue(to_string(static_cast<CueKind>(c)));
          if (!values.contains(cue)) {
            throw SchemaError("rater '" + rater + "' is missing cue '" + cue + "'");
          }
          const int v = values.at(cue).get<int>();
          if (v < 0 || v > 4) {
            throw SchemaError("rater '" + rater + "' rated '" + cue +
                              "' outside [0, 4]");
          }
          row[c] = v;
        }
        entry.ratings[rater] = row;
      }
      entries.push_back(std::move(entry));
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(line_no, std::string("malformed manifest entry: ") + e.what());
    } catch (const Error& e) {
      throw ParseError(line_no, e.what());
    }
  }
  return entries;
}

std::vector<RatingManifestEntry> load_training_manifest(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open manifest '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_training_manifest(ss.str());
}

std::string serialize_rejects(const std::vector<RejectEntry>& rejects) {
  std::string out;
  for (const RejectEntry& r : rejects) {
    out += nlohmann::json{{"face_id", r.face_id}, {"reason", r.reason}}.dump();
    out += '\n';
  }
  return out;
}

}  // namespace fatigue
