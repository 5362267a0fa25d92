#include <doctest.h>

#include <random>

#include "fatigue/errors.hpp"
#include "fatigue/landmarks.hpp"
#include "fatigue/providers.hpp"
#include "support.hpp"

using namespace fatigue;

TEST_CASE("parse_landmark_file round-trips a well-formed line") {
  const nlohmann::json j = testsupport::standard_record_json();
  const auto records = parse_landmark_file(j.dump() + "\n");
  REQUIRE(records.size() == 1);
  CHECK(records[0].face_id == "face-0");
  CHECK(records[0].rect.w == 200);
  CHECK(records[0].landmarks.at(LandmarkName::NoseTip).x == doctest::Approx(170));

  // serialize(parse(x)) == canonical form of x
  CHECK(serialize_landmark_line(records[0]) == j.dump());
}

TEST_CASE("parse_landmark_file accepts an empty document") {
  CHECK(parse_landmark_file("").empty());
  CHECK(parse_landmark_file("\n\n").empty());
}

TEST_CASE("missing landmark is a schema error naming the point") {
  nlohmann::json j = testsupport::standard_record_json();
  j["landmarks"].erase("nose_tip");
  try {
    parse_landmark_file(j.dump());
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("nose_tip") != std::string::npos);
    CHECK(e.line == 1);
  }
}

TEST_CASE("malformed JSON reports the line number") {
  const std::string text = testsupport::standard_record_json().dump() +
                           "\n{not json}\n";
  try {
    parse_landmark_file(text);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line == 2);
  }
}

TEST_CASE("landmark invariants reject bad geometry") {
  FaceRecord rec = testsupport::standard_record();

  SUBCASE("swapped eyes") {
    std::swap(rec.landmarks.at(LandmarkName::LeftEyeCenter),
              rec.landmarks.at(LandmarkName::RightEyeCenter));
    CHECK_THROWS_AS(validate(rec), SchemaError);
  }
  SUBCASE("negative coordinate") {
    rec.landmarks.at(LandmarkName::MouthTop).y = -1.0;
    CHECK_THROWS_AS(validate(rec), SchemaError);
  }
  SUBCASE("non-finite coordinate") {
    rec.landmarks.at(LandmarkName::MouthTop).x =
        std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(validate(rec), SchemaError);
  }
  SUBCASE("empty rect") {
    rec.rect.w = 0;
    CHECK_THROWS_AS(validate(rec), SchemaError);
  }
}

TEST_CASE("age bin follows the 10-year intervals, clamped") {
  Demographics d;
  d.age_years = 0;
  CHECK(d.age_bin() == 0);
  d.age_years = 19;
  CHECK(d.age_bin() == 1);
  d.age_years = 65;
  CHECK(d.age_bin() == 6);
  d.age_years = 93;
  CHECK(d.age_bin() == 6);
}

TEST_CASE("demographics parse and enum validation") {
  nlohmann::json j = testsupport::standard_record_json();
  j["attributes"] = {
      {"age", {{"value", 27}}},
      {"gender", {{"value", "Female"}, {"confidence", 95.2}}},
      {"race", {{"value", "Caucasian"}, {"confidence", 90.5}}},
  };
  const FaceRecord rec = face_record_from_json(j);
  REQUIRE(rec.demographics.has_value());
  CHECK(rec.demographics->gender_confidence == doctest::Approx(95.2));
  CHECK(rec.demographics->race == Race::Caucasian);

  j["attributes"]["race"]["value"] = "Martian";
  try {
    face_record_from_json(j);
    FAIL("expected a schema error");
  } catch (const SchemaError& e) {
    CHECK(std::string(e.what()).find("AfricanAmerican") != std::string::npos);
  }
}

TEST_CASE("provider mapping: identity for canonical payloads") {
  const nlohmann::json j = testsupport::standard_record_json();
  const FaceRecord rec = normalize_provider_payload(j, "canonical");
  CHECK(to_json(rec) == j);
}

TEST_CASE("provider mapping: facepp names and attributes") {
  const FaceRecord want = testsupport::standard_record();
  nlohmann::json lm;
  auto pt = [&](LandmarkName n) {
    const Point& p = want.landmarks.at(n);
    return nlohmann::json{{"x", p.x}, {"y", p.y}};
  };
  lm["left_eye_center"] = pt(LandmarkName::LeftEyeCenter);
  lm["right_eye_center"] = pt(LandmarkName::RightEyeCenter);
  lm["left_eye_right_corner"] = pt(LandmarkName::LeftEyeInner);
  lm["left_eye_left_corner"] = pt(LandmarkName::LeftEyeOuter);
  lm["left_eye_top"] = pt(LandmarkName::LeftEyeTop);
  lm["left_eye_bottom"] = pt(LandmarkName::LeftEyeBottom);
  lm["right_eye_left_corner"] = pt(LandmarkName::RightEyeInner);
  lm["right_eye_right_corner"] = pt(LandmarkName::RightEyeOuter);
  lm["right_eye_top"] = pt(LandmarkName::RightEyeTop);
  lm["right_eye_bottom"] = pt(LandmarkName::RightEyeBottom);
  lm["nose_tip"] = pt(LandmarkName::NoseTip);
  lm["mouth_left_corner"] = pt(LandmarkName::MouthLeftCorner);
  lm["mouth_right_corner"] = pt(LandmarkName::MouthRightCorner);
  lm["mouth_upper_lip_top"] = pt(LandmarkName::MouthTop);
  lm["mouth_lower_lip_bottom"] = pt(LandmarkName::MouthBottom);

  const nlohmann::json payload = {
      {"face_token", "tok-1"},
      {"face_rectangle",
       {{"left", 70}, {"top", 50}, {"width", 200}, {"height", 250}}},
      {"landmark", lm},
      {"attributes",
       {{"age", {{"value", 30}}},
        {"gender", {{"value", "Male"}, {"confidence", 95.2}}},
        {"ethnicity", {{"value", "White"}, {"confidence", 90.5}}}}},
      {"request_id", "ignored-extra-field"},
  };

  const FaceRecord rec = normalize_provider_payload(payload, "facepp", "img.png");
  CHECK(rec.face_id == "tok-1");
  CHECK(rec.landmarks.at(LandmarkName::LeftEyeOuter).x == doctest::Approx(95));
  CHECK(rec.landmarks.at(LandmarkName::MouthBottom).y == doctest::Approx(270));
  REQUIRE(rec.demographics.has_value());
  CHECK(rec.demographics->gender_confidence == doctest::Approx(95.2));
  CHECK(rec.demographics->race == Race::Caucasian);

  SUBCASE("missing mappable point") {
    nlohmann::json broken = payload;
    broken["landmark"].erase("left_eye_top");
    CHECK_THROWS_AS(normalize_provider_payload(broken, "facepp", "img.png"),
                    SchemaError);
  }
  SUBCASE("unknown ethnicity label") {
    nlohmann::json broken = payload;
    broken["attributes"]["ethnicity"]["value"] = "Elf";
    CHECK_THROWS_AS(normalize_provider_payload(broken, "facepp", "img.png"),
                    SchemaError);
  }
}

TEST_CASE("provider mapping: percent-of-rect coordinates convert to pixels") {
  nlohmann::json j = testsupport::standard_record_json();
  // Hand-converted: x = 70 + pct/100*200, y = 50 + pct/100*250. The point
  // (120, 100) is therefore (25%, 20%).
  nlohmann::json pct = j;
  for (auto& [name, point] : pct["landmarks"].items()) {
    (void)name;
    const double px = (point[0].get<double>() - 70.0) / 200.0 * 100.0;
    const double py = (point[1].get<double>() - 50.0) / 250.0 * 100.0;
    point[0] = px;
    point[1] = py;
  }
  const FaceRecord rec = normalize_provider_payload(pct, "rectpercent");
  CHECK(rec.landmarks.at(LandmarkName::LeftEyeCenter).x == doctest::Approx(120.0));
  CHECK(rec.landmarks.at(LandmarkName::LeftEyeCenter).y == doctest::Approx(100.0));
  CHECK(rec.landmarks.at(LandmarkName::MouthBottom).y == doctest::Approx(270.0));
}

TEST_CASE("unknown provider tag is a configuration error") {
  CHECK_THROWS_AS(
      normalize_provider_payload(testsupport::standard_record_json(), "nope"),
      ConfigError);
}

TEST_CASE("mapping determinism and invariant fuzzing over fixtures") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> jitter(-8.0, 8.0);
  for (int trial = 0; trial < 200; ++trial) {
    nlohmann::json j = testsupport::standard_record_json();
    for (auto& [name, point] : j["landmarks"].items()) {
      (void)name;
      point[0] = point[0].get<double>() + jitter(rng);
      point[1] = point[1].get<double>() + jitter(rng);
    }
    std::vector<FaceRecord> parsed;
    try {
      parsed = parse_landmark_file(j.dump());
    } catch (const ParseError&) {
      continue;  // fuzz may break an invariant; rejection is the contract
    }
    REQUIRE(parsed.size() == 1);
    // Every record that comes out passes the invariants...
    CHECK_NOTHROW(validate(parsed[0]));
    // ...and identical payload bytes map to identical records.
    const auto again = parse_landmark_file(j.dump());
    CHECK(to_json(parsed[0]) == to_json(again[0]));
  }
}
