#include "newsaudit/models/tree.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>

#include <nlohmann/json.hpp>

#include "newsaudit/errors.hpp"

namespace newsaudit::models {

namespace {

using nlohmann::json;

constexpr int kModelFormatVersion = 1;

void validate_train_data(const TrainData& data) {
  if (data.rows.size() != data.labels.size())
    throw ValidationError("row/label count mismatch: " +
                          std::to_string(data.rows.size()) + " vs " +
                          std::to_string(data.labels.size()));
  if (data.rows.size() < 2)
    throw ValidationError("training requires at least 2 rows");
  bool has0 = false, has1 = false;
  for (int y : data.labels) {
    if (y == 0) has0 = true;
    else if (y == 1) has1 = true;
    else throw ValidationError("labels must be 0 or 1");
  }
  if (!has0 || !has1)
    throw ValidationError("training requires both classes present");
  for (const auto& row : data.rows) {
    if (row.size() != data.feature_names.size())
      throw ValidationError("row width does not match feature names");
    for (double v : row)
      if (!std::isfinite(v))
        throw ValidationError("non-finite value in training data");
  }
}

double gini(std::size_t n0, std::size_t n1) {
  const double n = static_cast<double>(n0 + n1);
  if (n == 0) return 0.0;
  const double p0 = static_cast<double>(n0) / n;
  const double p1 = static_cast<double>(n1) / n;
  return 1.0 - p0 * p0 - p1 * p1;
}

struct SplitChoice {
  bool found = false;
  std::size_t feature = 0;
  double threshold = 0.0;
  double gain = -1.0;
};

}  // namespace

int TreeModel::depth() const {
  if (nodes.empty()) return 0;
  std::function<int(int)> walk = [&](int idx) -> int {
    const TreeNode& node = nodes[static_cast<std::size_t>(idx)];
    if (node.feature < 0) return 0;
    return 1 + std::max(walk(node.left), walk(node.right));
  };
  return walk(0);
}

TreeModel fit_tree(const TrainData& data, const FitConfig& cfg) {
  validate_train_data(data);
  if (cfg.max_depth < 0) throw ValidationError("max_depth must be >= 0");
  if (cfg.min_leaf <= 0) throw ValidationError("min_leaf must be > 0");

  TreeModel model;
  model.feature_subset = data.feature_names;
  model.config = cfg;

  const std::size_t min_leaf = static_cast<std::size_t>(cfg.min_leaf);
  const std::size_t m = data.feature_names.size();

  // Recursive builder over index subsets. Children are appended after their
  // parent so node 0 stays the root.
  std::function<int(std::vector<std::size_t>, int)> build =
      [&](std::vector<std::size_t> idx, int depth) -> int {
    std::size_t n1 = 0;
    for (std::size_t i : idx) n1 += static_cast<std::size_t>(data.labels[i]);
    const std::size_t n0 = idx.size() - n1;

    const int node_index = static_cast<int>(model.nodes.size());
    model.nodes.emplace_back();
    {
      TreeNode& node = model.nodes.back();
      node.p0 = static_cast<double>(n0) / static_cast<double>(idx.size());
      node.p1 = static_cast<double>(n1) / static_cast<double>(idx.size());
    }

    const bool pure = n0 == 0 || n1 == 0;
    if (pure || depth >= cfg.max_depth || idx.size() < 2 * min_leaf)
      return node_index;

    // best split: maximal Gini gain, ties to lowest feature then threshold.
    // Zero-gain splits are allowed on impure nodes (XOR-style data needs a
    // non-informative first cut).
    SplitChoice best;
    std::vector<std::pair<double, int>> column(idx.size());
    for (std::size_t f = 0; f < m; ++f) {
      for (std::size_t i = 0; i < idx.size(); ++i)
        column[i] = {data.rows[idx[i]][f], data.labels[idx[i]]};
      std::sort(column.begin(), column.end());

      // walk candidate boundaries between consecutive distinct values
      std::size_t left0 = 0, left1 = 0;
      for (std::size_t i = 0; i + 1 < column.size(); ++i) {
        left1 += static_cast<std::size_t>(column[i].second);
        left0 += static_cast<std::size_t>(1 - column[i].second);
        if (column[i].first == column[i + 1].first) continue;
        const std::size_t nl = i + 1, nr = column.size() - nl;
        if (nl < min_leaf || nr < min_leaf) continue;
        const double threshold = column[i].first +
                                 0.5 * (column[i + 1].first - column[i].first);
        const double parent = gini(n0, n1);
        const double child =
            (static_cast<double>(nl) * gini(left0, left1) +
             static_cast<double>(nr) * gini(n0 - left0, n1 - left1)) /
            static_cast<double>(idx.size());
        const double gain = parent - child;
        if (gain > best.gain) best = {true, f, threshold, gain};
      }
    }
    if (!best.found) return node_index;

    std::vector<std::size_t> left_idx, right_idx;
    for (std::size_t i : idx)
      (data.rows[i][best.feature] < best.threshold ? left_idx : right_idx)
          .push_back(i);
    idx.clear();
    idx.shrink_to_fit();

    const int left = build(std::move(left_idx), depth + 1);
    const int right = build(std::move(right_idx), depth + 1);
    TreeNode& node = model.nodes[static_cast<std::size_t>(node_index)];
    node.feature = static_cast<int>(best.feature);
    node.threshold = best.threshold;
    node.left = left;
    node.right = right;
    return node_index;
  };

  std::vector<std::size_t> all(data.rows.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  build(std::move(all), 0);
  return model;
}

double predict_tree(const TreeModel& model,
                    const std::vector<std::string>& feature_names,
                    const std::vector<double>& values) {
  if (feature_names.size() != values.size())
    throw ValidationError("feature name/value count mismatch");
  // resolve subset columns once
  std::vector<std::size_t> lookup(model.feature_subset.size());
  for (std::size_t j = 0; j < model.feature_subset.size(); ++j) {
    auto it = std::find(feature_names.begin(), feature_names.end(),
                        model.feature_subset[j]);
    if (it == feature_names.end())
      throw ValidationError("missing feature: " + model.feature_subset[j]);
    lookup[j] = static_cast<std::size_t>(it - feature_names.begin());
  }
  const TreeNode* node = &model.nodes.at(0);
  while (node->feature >= 0) {
    const double x = values[lookup[static_cast<std::size_t>(node->feature)]];
    node = &model.nodes.at(
        static_cast<std::size_t>(x < node->threshold ? node->left : node->right));
  }
  return node->p1;
}

double predict_tree(const TreeModel& model, const textfeat::FeatureVector& x) {
  return predict_tree(model, textfeat::FeatureSchema::instance().names(), x.values);
}

std::string tree_to_json(const TreeModel& model) {
  json nodes = json::array();
  for (const auto& node : model.nodes) {
    nodes.push_back(json{{"feature", node.feature},
                         {"threshold", node.threshold},
                         {"left", node.left},
                         {"right", node.right},
                         {"p", json::array({node.p0, node.p1})}});
  }
  json j;
  j["format_version"] = kModelFormatVersion;
  j["type"] = "tree";
  j["feature_subset"] = model.feature_subset;
  j["nodes"] = nodes;
  j["config"] = json{{"learning_rate", model.config.learning_rate},
                     {"epochs", model.config.epochs},
                     {"l2", model.config.l2},
                     {"max_depth", model.config.max_depth},
                     {"min_leaf", model.config.min_leaf},
                     {"seed", model.config.seed}};
  j["seed"] = model.config.seed;
  return j.dump(2) + "\n";
}

TreeModel tree_from_json(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("model JSON: ") + e.what(), 0);
  }
  try {
    if (j.at("type").get<std::string>() != "tree")
      throw ValidationError("model type is not tree");
    if (j.at("format_version").get<int>() != kModelFormatVersion)
      throw ValidationError("unsupported model format_version");
    TreeModel model;
    j.at("feature_subset").get_to(model.feature_subset);
    for (const auto& jn : j.at("nodes")) {
      TreeNode node;
      node.feature = jn.at("feature").get<int>();
      node.threshold = jn.at("threshold").get<double>();
      node.left = jn.at("left").get<int>();
      node.right = jn.at("right").get<int>();
      node.p0 = jn.at("p").at(0).get<double>();
      node.p1 = jn.at("p").at(1).get<double>();
      model.nodes.push_back(node);
    }
    if (model.nodes.empty()) throw ValidationError("tree model has no nodes");
    const auto& jc = j.at("config");
    model.config.learning_rate = jc.at("learning_rate").get<double>();
    model.config.epochs = jc.at("epochs").get<int>();
    model.config.l2 = jc.at("l2").get<double>();
    model.config.max_depth = jc.at("max_depth").get<int>();
    model.config.min_leaf = jc.at("min_leaf").get<int>();
    model.config.seed = jc.at("seed").get<std::uint64_t>();
    return model;
  } catch (const json::exception& e) {
    throw ValidationError(std::string("model JSON: ") + e.what());
  }
}

void save_tree(const std::filesystem::path& file, const TreeModel& model) {
  std::ofstream out(file);
  if (!out) throw IoError("cannot write model: " + file.string());
  out << tree_to_json(model);
  if (!out) throw IoError("failed writing model: " + file.string());
}

std::string model_type_of(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw IoError("cannot open model: " + file.string());
  json j;
  try {
    in >> j;
    return j.at("type").get<std::string>();
  } catch (const json::exception& e) {
    throw ParseError("model JSON (" + file.string() + "): " + e.what(), 0);
  }
}

}  // namespace newsaudit::models
