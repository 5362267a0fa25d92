#include <fstream>
#include <sstream>

#include "fatigue/composite.hpp"
#include "fatigue/errors.hpp"

namespace fatigue {

namespace {

nlohmann::json node_to_json(const RegressionTree& tree, int index) {
  const RegressionTree::Node& node = tree.nodes[index];
  if (node.feature < 0) {
    return {{"v", node.value}, {"n", node.count}};
  }
  return {{"f", node.feature},
          {"t", node.threshold},
          {"l", node_to_json(tree, node.left)},
          {"r", node_to_json(tree, node.right)}};
}

int node_from_json(const nlohmann::json& j, RegressionTree& tree) {
  const int index = static_cast<int>(tree.nodes.size());
  tree.nodes.push_back({});
  if (j.contains("f")) {
    tree.nodes[index].feature = j.at("f").get<int>();
    tree.nodes[index].threshold = j.at("t").get<double>();
    const int left = node_from_json(j.at("l"), tree);
    const int right = node_from_json(j.at("r"), tree);
    tree.nodes[index].left = left;
    tree.nodes[index].right = right;
  } else {
    tree.nodes[index].value = j.at("v").get<double>();
    tree.nodes[index].count = j.at("n").get<int>();
  }
  return index;
}

nlohmann::json to_json(const EnsembleConfig& config) {
  nlohmann::json j = {{"method", std::string(to_string(config.method))},
                      {"learn_cycles", config.learn_cycles},
                      {"min_leaf_size", config.min_leaf_size},
                      {"rng_seed", config.rng_seed}};
  if (config.method == EnsembleMethod::LSBoost) {
    j["learn_rate"] = config.learn_rate;
  }
  return j;
}

EnsembleConfig config_from_json(const nlohmann::json& j) {
  EnsembleConfig config;
  config.method = ensemble_method_from_string(j.at("method").get<std::string>());
  config.learn_cycles = j.at("learn_cycles").get<int>();
  config.min_leaf_size = j.at("min_leaf_size").get<int>();
  config.rng_seed = j.value("rng_seed", std::uint64_t{0});
  config.learn_rate = j.value("learn_rate", 0.1);
  return config;
}

std::vector<double> to_std(const Eigen::VectorXd& v) {
  return {v.data(), v.data() + v.size()};
}

Eigen::VectorXd from_std(const std::vector<double>& v) {
  return Eigen::Map<const Eigen::VectorXd>(v.data(), v.size());
}

}  // namespace

nlohmann::json to_json(const CompositeModel& model) {
  nlohmann::json cues = nlohmann::json::array();
  for (int c = 0; c < kCueCount; ++c) {
    const CueKind kind = static_cast<CueKind>(c);
    const CueModel& cue = model.cues[c];
    nlohmann::json trees = nlohmann::json::array();
    for (const RegressionTree& t : cue.model.trees) {
      trees.push_back(node_to_json(t, 0));
    }
    cues.push_back({
        {"cue", std::string(to_string(kind))},
        {"group", std::string(to_string(cue_group(kind)))},
        {"config", to_json(cue.model.config)},
        {"init_offset", cue.model.init_offset},
        {"clamp", {cue.model.clamp_low, cue.model.clamp_high}},
        {"trees", std::move(trees)},
        {"standardizer",
         {{"mean", to_std(cue.standardizer.mean)},
          {"std", to_std(cue.standardizer.std)}}},
    });
  }

  nlohmann::json lengths = nlohmann::json::object();
  for (int g = 0; g < kCueGroupCount; ++g) {
    const CueGroup group = static_cast<CueGroup>(g);
    lengths[std::string(to_string(group))] =
        group_descriptor_length(group, model.sift);
  }

  return {
      {"format_version", CompositeModel::kFormatVersion},
      {"kind", "fatigue-composite-model"},
      {"sift",
       {{"grid_step", model.sift.grid_step},
        {"support", model.sift.support},
        {"spatial_cells", model.sift.spatial_cells},
        {"orientation_bins", model.sift.orientation_bins},
        {"sigma_ratio", model.sift.sigma_ratio},
        {"clamp", model.sift.clamp}}},
      {"descriptor_lengths", std::move(lengths)},
      {"combiner",
       {{"coefficients", to_std(model.coefficients)},
        {"intercept", model.intercept},
        {"raw_min", model.raw_min},
        {"raw_max", model.raw_max}}},
      {"cues", std::move(cues)},
  };
}

CompositeModel composite_from_json(const nlohmann::json& j) {
  CompositeModel model = make_empty_composite();
  const int version = j.value("format_version", -1);
  if (version != CompositeModel::kFormatVersion) {
    throw ModelError("unsupported model format version " +
                     std::to_string(version) + " (expected " +
                     std::to_string(CompositeModel::kFormatVersion) + ")");
  }
  try {
    const auto& sift = j.at("sift");
    model.sift.grid_step = sift.at("grid_step").get<int>();
    model.sift.support = sift.at("support").get<int>();
    model.sift.spatial_cells = sift.at("spatial_cells").get<int>();
    model.sift.orientation_bins = sift.at("orientation_bins").get<int>();
    model.sift.sigma_ratio = sift.at("sigma_ratio").get<double>();
    model.sift.clamp = sift.at("clamp").get<double>();

    for (int g = 0; g < kCueGroupCount; ++g) {
      const CueGroup group = static_cast<CueGroup>(g);
      const int stored =
          j.at("descriptor_lengths").at(std::string(to_string(group))).get<int>();
      const int expected = group_descriptor_length(group, model.sift);
      if (stored != expected) {
        throw ModelError("descriptor length mismatch for group '" +
                         std::string(to_string(group)) + "': file claims " +
                         std::to_string(stored) + ", grid rule yields " +
                         std::to_string(expected));
      }
    }

    const auto& combiner = j.at("combiner");
    const auto coefficients = combiner.at("coefficients").get<std::vector<double>>();
    if (coefficients.size() != kCueCount) {
      throw ModelError("combiner must carry exactly 8 coefficients");
    }
    model.coefficients = Eigen::Map<const CueVector>(coefficients.data());
    model.intercept = combiner.at("intercept").get<double>();
    model.raw_min = combiner.at("raw_min").get<double>();
    model.raw_max = combiner.at("raw_max").get<double>();

    const auto& cues = j.at("cues");
    if (!cues.is_array() || cues.size() != kCueCount) {
      throw ModelError("model must carry exactly 8 cue entries");
    }
    for (const auto& jc : cues) {
      const CueKind kind = cue_from_string(jc.at("cue").get<std::string>());
      CueModel& cue = model.cues[static_cast<int>(kind)];
      cue.model.config = config_from_json(jc.at("config"));
      cue.model.init_offset = jc.at("init_offset").get<double>();
      cue.model.clamp_low = jc.at("clamp").at(0).get<double>();
      cue.model.clamp_high = jc.at("clamp").at(1).get<double>();
      cue.model.trees.clear();
      for (const auto& jt : jc.at("trees")) {
        RegressionTree tree;
        node_from_json(jt, tree);
        cue.model.trees.push_back(std::move(tree));
      }
      if (static_cast<int>(cue.model.trees.size()) !=
          cue.model.config.learn_cycles) {
        throw ModelError("cue '" + std::string(to_string(kind)) +
                         "': tree count does not match learn_cycles");
      }
      cue.standardizer.mean =
          from_std(jc.at("standardizer").at("mean").get<std::vector<double>>());
      cue.standardizer.std =
          from_std(jc.at("standardizer").at("std").get<std::vector<double>>());
      const int expected =
          group_descriptor_length(cue_group(kind), model.sift);
      if (cue.standardizer.mean.size() != expected ||
          cue.standardizer.std.size() != expected) {
        throw ModelError("cue '" + std::string(to_string(kind)) +
                         "': standardizer length does not match its group");
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw ModelError(std::string("malformed model file: ") + e.what());
  }
  return model;
}

void save_model(const std::string& path, const CompositeModel& model) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write model file '" + path + "'");
  out << to_json(model).dump(2) << '\n';
}

CompositeModel load_model(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open model file '" + path + "'");
  nlohmann::json j = nlohmann::json::parse(in, nullptr, false);
  if (j.is_discarded()) throw ModelError("model file is not valid JSON");
  return composite_from_json(j);
}

}  // namespace fatigue
