#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "newsaudit/models/logreg.hpp"  // FitConfig, TrainData

namespace newsaudit::models {

// One node of the CART tree. Internal nodes route on feature/threshold;
// leaves carry the class-probability pair (p0 + p1 = 1).
struct TreeNode {
  int feature = -1;  // column into feature_subset; -1 marks a leaf
  double threshold = 0.0;
  int left = -1;   // child indices into TreeModel::nodes
  int right = -1;
  double p0 = 0.0;
  double p1 = 0.0;
};

struct TreeModel {
  std::vector<std::string> feature_subset;
  std::vector<TreeNode> nodes;  // nodes[0] is the root
  FitConfig config;

  int depth() const;  // longest root-to-leaf edge count
};

// CART with Gini impurity: greedy splits over midpoints of consecutive
// sorted distinct values. An impure node splits whenever a candidate
// satisfies min_leaf on both sides (zero-gain splits allowed, so
// XOR-shaped data separates); ties break to the lowest feature index, then
// the lowest threshold. Recursion stops at purity, max_depth, min_leaf, or
// when no candidate exists. Deterministic; the seed is provenance only.
// Throws ValidationError under the same conditions as fit_logreg.
TreeModel fit_tree(const TrainData& data, const FitConfig& cfg);

// Probability of the fake class at the leaf reached by threshold descent
// (x[feature] < threshold goes left). Missing features throw
// ValidationError naming them.
double predict_tree(const TreeModel& model,
                    const std::vector<std::string>& feature_names,
                    const std::vector<double>& values);
double predict_tree(const TreeModel& model, const textfeat::FeatureVector& x);

// Versioned JSON serialization (type tag "tree").
std::string tree_to_json(const TreeModel& model);
TreeModel tree_from_json(const std::string& json_text);
void save_tree(const std::filesystem::path& file, const TreeModel& model);

// Reads the type tag of a serialized model file ("logreg" or "tree").
std::string model_type_of(const std::filesystem::path& file);

}  // namespace newsaudit::models
