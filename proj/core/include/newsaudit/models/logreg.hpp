#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "newsaudit/textfeat/features.hpp"

namespace newsaudit::models {

// Shared fit hyperparameters. The defaults favor stable convergence on
// standardized 50-dimensional inputs; everything is configurable per run.
struct FitConfig {
  double learning_rate = 0.1;
  int epochs = 500;
  double l2 = 1e-4;
  int max_depth = 8;
  int min_leaf = 5;
  std::uint64_t seed = 0;
};

// Training table: labeled rows over named feature columns.
struct TrainData {
  std::vector<std::string> feature_names;
  std::vector<std::vector<double>> rows;
  std::vector<int> labels;  // 0 = real, 1 = fake
};

// Builds a training table from a feature matrix, restricted to `subset`
// columns (schema order). Labels derive from each row's subgroup: HF/MF are
// fake (1), HR/MR real (0).
TrainData make_train_data(const textfeat::FeatureMatrix& matrix,
                          const std::vector<std::string>& subset);

// Binary logistic regression fit by full-batch gradient descent.
struct LogRegModel {
  std::vector<std::string> feature_subset;  // retained features, in input order
  std::vector<double> weights;              // aligned to feature_subset
  double bias = 0.0;
  std::vector<double> means;  // training-set standardization statistics
  std::vector<double> stds;   // all > 0 (constant features are dropped)
  FitConfig config;
  std::vector<double> loss_history;           // loss at each epoch start + final
  std::vector<std::string> dropped_features;  // constant columns removed pre-fit
};

// Minimizes mean BCE + (l2/2)*||w||^2 over standardized features with
// zero-initialized weights and full-batch gradient descent, so the fit is
// deterministic for fixed inputs (the seed is provenance only).
// loss_history holds the objective at the start of every epoch plus the
// final value. Constant feature columns are dropped and recorded in
// dropped_features. Throws ValidationError on size mismatch, fewer than 2
// rows, single-class labels, non-finite values, or all-constant features.
LogRegModel fit_logreg(const TrainData& data, const FitConfig& cfg);

// Probability of the fake class: sigmoid(w . standardize(x) + b). Features
// are looked up by name; a feature_subset name absent from `feature_names`
// throws ValidationError naming it.
double predict_logreg(const LogRegModel& model,
                      const std::vector<std::string>& feature_names,
                      const std::vector<double>& values);
// Lookup against the canonical schema.
double predict_logreg(const LogRegModel& model, const textfeat::FeatureVector& x);

// Analytic gradient of the objective at (weights, bias) over standardized
// rows; exposed for the finite-difference correctness check. Returns
// d/dw_0..d/dw_{m-1}, then d/db in the last slot.
std::vector<double> logreg_gradient(const std::vector<std::vector<double>>& x,
                                    const std::vector<int>& y,
                                    const std::vector<double>& weights, double bias,
                                    double l2);
// The matching objective value: mean BCE + (l2/2)*||w||^2.
double logreg_loss(const std::vector<std::vector<double>>& x,
                   const std::vector<int>& y, const std::vector<double>& weights,
                   double bias, double l2);

// Versioned JSON serialization (type tag "logreg").
std::string logreg_to_json(const LogRegModel& model);
LogRegModel logreg_from_json(const std::string& json_text);
void save_logreg(const std::filesystem::path& file, const LogRegModel& model);

}  // namespace newsaudit::models
