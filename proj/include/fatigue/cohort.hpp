#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "fatigue/gmm.hpp"
#include "fatigue/landmarks.hpp"

namespace fatigue {

struct ScoreRecord {
  std::string face_id;
  double score = 0.0;  // normalized fatigue score in [0,100]
  std::optional<Demographics> demographics;
};

struct Classification {
  std::vector<bool> fatigued;  // parallel to the input scores
  std::int64_t fatigued_count = 0;
  double fraction = 0.0;
};

// Fatigue iff score > threshold (strict).
Classification classify(const Eigen::VectorXd& scores, double threshold);

struct GroupCount {
  std::string label;
  std::int64_t fatigued = 0;
  std::int64_t total = 0;

  double proportion() const {
    return static_cast<double>(fatigued) / static_cast<double>(total);
  }
};

struct PairComparison {
  std::string label_i;
  std::string label_j;
  double p_i = 0.0;
  double p_j = 0.0;
  std::int64_t n_i = 0;
  std::int64_t n_j = 0;
  double critical_value = 0.0;  // |p_i - p_j|
  double critical_range = 0.0;
  double ci_low = 0.0;  // 95%-style Wald CI for p_i - p_j
  double ci_high = 0.0;
  bool significant = false;  // critical value exceeds the critical range
};

// Simultaneous pairwise comparison of k proportions: the critical range for
// a pair is sqrt(chi2_{1-alpha, k-1}) * sqrt(p_i(1-p_i)/n_i + p_j(1-p_j)/n_j).
std::vector<PairComparison> marascuilo(const std::vector<GroupCount>& groups,
                                       double alpha = 0.05);

struct AxisReport {
  std::string axis;
  std::vector<GroupCount> groups;
  std::vector<PairComparison> pairs;
  std::string note;  // set when the tests were skipped
};

struct CohortReport {
  double threshold = 0.0;
  double alpha = 0.05;
  std::int64_t total = 0;
  std::int64_t fatigued = 0;
  double fraction = 0.0;
  std::vector<AxisReport> axes;
};

// Per-axis fatigue proportions plus the pairwise significance tables.
// Records without demographics are skipped on demographic axes; an axis
// with fewer than two nonempty groups reports a note instead of tests.
CohortReport demographic_report(const std::vector<ScoreRecord>& records,
                                double threshold,
                                const std::vector<std::string>& axes,
                                double alpha = 0.05);

// Fixed 100-bin histogram with edges 0,1,...,100; the top edge is inclusive.
Eigen::VectorXi score_histogram(const Eigen::VectorXd& scores);
std::string histogram_csv(const Eigen::VectorXi& histogram);

// JSON/JSONL forms used by the CLI.
nlohmann::json to_json(const Calibration& calib);
Calibration calibration_from_json(const nlohmann::json& j);
nlohmann::json to_json(const CohortReport& report);

std::vector<ScoreRecord> parse_scores_file(std::string_view text);
std::vector<ScoreRecord> load_scores_file(const std::string& path);

}  // namespace fatigue
