#include "fatigue/cohort.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "fatigue/errors.hpp"
#include "fatigue/stats.hpp"

namespace fatigue {

Classification classify(const Eigen::VectorXd& scores, double threshold) {
  if (scores.size() == 0) throw InputError("cannot classify an empty cohort");
  if (!(threshold > 0.0 && threshold < 100.0)) {
    throw InputError("threshold must lie in (0, 100)");
  }
  Classification out;
  out.fatigued.resize(scores.size());
  for (Eigen::Index i = 0; i < scores.size(); ++i) {
    const bool f = scores[i] > threshold;
    out.fatigued[i] = f;
    out.fatigued_count += f ? 1 : 0;
  }
  out.fraction =
      static_cast<double>(out.fatigued_count) / static_cast<double>(scores.size());
  return out;
}

std::vector<PairComparison> marascuilo(const std::vector<GroupCount>& groups,
                                       double alpha) {
  if (groups.size() < 2) {
    throw InputError("proportion test requires at least 2 groups");
  }
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw ConfigError("alpha must lie in (0, 1)");
  }
  for (const GroupCount& g : groups) {
    if (g.total <= 0) {
      throw InputError("group '" + g.label + "' has no observations");
    }
    if (g.fatigued < 0 || g.fatigued > g.total) {
      throw InputError("group '" + g.label + "' has an invalid fatigued count");
    }
  }

  const int k = static_cast<int>(groups.size());
  const double chi = std::sqrt(chi2_quantile(1.0 - alpha, k - 1));
  const double z = normal_two_sided_quantile(alpha);

  std::vector<PairComparison> pairs;
  pairs.reserve(static_cast<std::size_t>(k) * (k - 1) / 2);
  for (int i = 0; i < k; ++i) {
    for (int j = i + 1; j < k; ++j) {
      PairComparison pc;
      pc.label_i = groups[i].label;
      pc.label_j = groups[j].label;
      pc.p_i = groups[i].proportion();
      pc.p_j = groups[j].proportion();
      pc.n_i = groups[i].total;
      pc.n_j = groups[j].total;
      const double se =
          std::sqrt(pc.p_i * (1.0 - pc.p_i) / static_cast<double>(pc.n_i) +
                    pc.p_j * (1.0 - pc.p_j) / static_cast<double>(pc.n_j));
      pc.critical_value = std::abs(pc.p_i - pc.p_j);
      pc.critical_range = chi * se;
      pc.significant = pc.critical_value > pc.critical_range;
      pc.ci_low = (pc.p_i - pc.p_j) - z * se;
      pc.ci_high = (pc.p_i - pc.p_j) + z * se;
      pairs.push_back(pc);
    }
  }
  return pairs;
}

namespace {

struct AxisSpec {
  std::string name;
  int group_count;
  // Returns the group index for a record, or -1 when not attributable.
  int (*index_of)(const Demographics&);
  std::string (*label_of)(int);
};

int age_index(const Demographics& d) { return d.age_bin(); }
std::string age_label(int i) { return age_bin_label(i); }
int gender_index(const Demographics& d) { return static_cast<int>(d.gender); }
std::string gender_label(int i) {
  return std::string(to_string(static_cast<Gender>(i)));
}
int race_index(const Demographics& d) { return static_cast<int>(d.race); }
std::string race_label(int i) {
  return std::string(to_string(static_cast<Race>(i)));
}

const AxisSpec* axis_spec(const std::string& axis) {
  static const AxisSpec specs[] = {
      {"age", kAgeBinCount, age_index, age_label},
      {"gender", 2, gender_index, gender_label},
      {"race", 3, race_index, race_label},
  };
  for (const AxisSpec& s : specs) {
    if (s.name == axis) return &s;
  }
  return nullptr;
}

}  // namespace

CohortReport demographic_report(const std::vector<ScoreRecord>& records,
                                double threshold,
                                const std::vector<std::string>& axes,
                                double alpha) {
  if (records.empty()) throw InputError("cannot analyze an empty cohort");
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw ConfigError("alpha must lie in (0, 1)");
  }

  CohortReport report;
  report.threshold = threshold;
  report.alpha = alpha;
  report.total = static_cast<std::int64_t>(records.size());
  for (const ScoreRecord& r : records) {
    if (r.score > threshold) ++report.fatigued;
  }
  report.fraction =
      static_cast<double>(report.fatigued) / static_cast<double>(report.total);

  for (const std::string& axis : axes) {
    const AxisSpec* spec = axis_spec(axis);
    if (!spec) throw ConfigError("unknown analysis axis '" + axis + "'");

    std::vector<GroupCount> counts(spec->group_count);
    for (int g = 0; g < spec->group_count; ++g) {
      counts[g].label = spec->label_of(g);
    }
    for (const ScoreRecord& r : records) {
      if (!r.demographics) continue;
      const int g = spec->index_of(*r.demographics);
      if (g < 0) continue;
      ++counts[g].total;
      if (r.score > threshold) ++counts[g].fatigued;
    }

    AxisReport axis_report;
    axis_report.axis = axis;
    for (GroupCount& g : counts) {
      if (g.total > 0) axis_report.groups.push_back(std::move(g));
    }
    if (axis_report.groups.size() < 2) {
      axis_report.note =
          "tests skipped: fewer than two nonempty groups on this axis";
    } else {
      axis_report.pairs = marascuilo(axis_report.groups, alpha);
    }
    report.axes.push_back(std::move(axis_report));
  }
  return report;
}

Eigen::VectorXi score_histogram(const Eigen::VectorXd& scores) {
  Eigen::VectorXi bins = Eigen::VectorXi::Zero(100);
  for (Eigen::Index i = 0; i < scores.size(); ++i) {
    const double s = scores[i];
    if (!(s >= 0.0 && s <= 100.0)) {
      throw InputError("score " + std::to_string(s) + " outside [0, 100]");
    }
    bins[std::min(static_cast<int>(s), 99)] += 1;
  }
  return bins;
}

std::string histogram_csv(const Eigen::VectorXi& histogram) {
  std::ostringstream out;
  out << "bin_low,bin_high,count\n";
  for (int i = 0; i < histogram.size(); ++i) {
    out << i << ',' << i + 1 << ',' << histogram[i] << '\n';
  }
  return out.str();
}

nlohmann::json to_json(const Calibration& calib) {
  nlohmann::json components = nlohmann::json::array();
  for (const GaussComponent& c : calib.components) {
    components.push_back(
        {{"weight", c.weight}, {"mean", c.mean}, {"std", c.std}});
  }
  return {
      {"components", std::move(components)},
      {"threshold", calib.threshold},
      {"log_likelihood", calib.log_likelihood},
      {"iterations", calib.iterations},
      {"converged", calib.converged},
  };
}

Calibration calibration_from_json(const nlohmann::json& j) {
  Calibration calib;
  try {
    const auto& components = j.at("components");
    if (!components.is_array() || components.size() != 2) {
      throw SchemaError("calibration must carry exactly 2 components");
    }
    for (int i = 0; i < 2; ++i) {
      calib.components[i].weight = components[i].at("weight").get<double>();
      calib.components[i].mean = components[i].at("mean").get<double>();
      calib.components[i].std = components[i].at("std").get<double>();
    }
    calib.threshold = j.at("threshold").get<double>();
    calib.log_likelihood = j.value("log_likelihood", 0.0);
    calib.iterations = j.value("iterations", 0);
    calib.converged = j.value("converged", true);
  } catch (const nlohmann::json::exception& e) {
    throw SchemaError(std::string("malformed calibration: ") + e.what());
  }
  return calib;
}

nlohmann::json to_json(const CohortReport& report) {
  nlohmann::json axes = nlohmann::json::array();
  for (const AxisReport& axis : report.axes) {
    nlohmann::json groups = nlohmann::json::array();
    for (const GroupCount& g : axis.groups) {
      groups.push_back({{"label", g.label},
                        {"n", g.total},
                        {"fatigued", g.fatigued},
                        {"proportion", g.proportion()}});
    }
    nlohmann::json pairs = nlohmann::json::array();
    for (const PairComparison& p : axis.pairs) {
      pairs.push_back({{"group_i", p.label_i},
                       {"group_j", p.label_j},
                       {"p_i", p.p_i},
                       {"p_j", p.p_j},
                       {"n_i", p.n_i},
                       {"n_j", p.n_j},
                       {"critical_value", p.critical_value},
                       {"critical_range", p.critical_range},
                       {"ci_low", p.ci_low},
                       {"ci_high", p.ci_high},
                       {"significant", p.significant}});
    }
    nlohmann::json ja = {{"axis", axis.axis},
                         {"groups", std::move(groups)},
                         {"pairs", std::move(pairs)}};
    if (!axis.note.empty()) ja["note"] = axis.note;
    axes.push_back(std::move(ja));
  }
  return {
      {"threshold", report.threshold},
      {"alpha", report.alpha},
      {"total", report.total},
      {"fatigued", report.fatigued},
      {"fatigue_fraction", report.fraction},
      {"axes", std::move(axes)},
  };
}

std::vector<ScoreRecord> parse_scores_file(std::string_view text) {
  std::vector<ScoreRecord> records;
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
      ScoreRecord rec;
      rec.face_id = j.at("face_id").get<std::string>();
      rec.score = j.at("score").get<double>();
      if (!std::isfinite(rec.score) || rec.score < 0.0 || rec.score > 100.0) {
        throw SchemaError("score must be finite and in [0, 100]");
      }
      if (j.contains("attributes") && !j.at("attributes").is_null()) {
        Demographics d;
        const auto& a = j.at("attributes");
        d.age_years = a.at("age").at("value").get<int>();
        d.gender = gender_from_string(a.at("gender").at("value").get<std::string>());
        d.gender_confidence = a.at("gender").value("confidence", 0.0);
        d.race = race_from_string(a.at("race").at("value").get<std::string>());
        d.race_confidence = a.at("race").value("confidence", 0.0);
        rec.demographics = d;
      }
      records.push_back(std::move(rec));
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(line_no, std::string("malformed score record: ") + e.what());
    } catch (const Error& e) {
      throw ParseError(line_no, e.what());
    }
  }
  return records;
}

std::vector<ScoreRecord> load_scores_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open scores file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_scores_file(ss.str());
}

}  // namespace fatigue
