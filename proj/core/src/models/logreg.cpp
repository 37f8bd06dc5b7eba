#include "newsaudit/models/logreg.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include <nlohmann/json.hpp>

#include "newsaudit/errors.hpp"

namespace newsaudit::models {

namespace {

using nlohmann::json;

constexpr int kModelFormatVersion = 1;

double sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }

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

json config_to_json(const FitConfig& cfg) {
  return json{{"learning_rate", cfg.learning_rate}, {"epochs", cfg.epochs},
              {"l2", cfg.l2},                       {"max_depth", cfg.max_depth},
              {"min_leaf", cfg.min_leaf},           {"seed", cfg.seed}};
}

FitConfig config_from_json(const json& j) {
  FitConfig cfg;
  cfg.learning_rate = j.at("learning_rate").get<double>();
  cfg.epochs = j.at("epochs").get<int>();
  cfg.l2 = j.at("l2").get<double>();
  cfg.max_depth = j.at("max_depth").get<int>();
  cfg.min_leaf = j.at("min_leaf").get<int>();
  cfg.seed = j.at("seed").get<std::uint64_t>();
  return cfg;
}

}  // namespace

TrainData make_train_data(const textfeat::FeatureMatrix& matrix,
                          const std::vector<std::string>& subset) {
  const auto& schema = textfeat::FeatureSchema::instance();
  TrainData data;
  data.feature_names = subset;
  std::vector<std::size_t> columns;
  columns.reserve(subset.size());
  for (const auto& name : subset) columns.push_back(schema.index(name));

  data.rows.reserve(matrix.rows.size());
  data.labels.reserve(matrix.rows.size());
  for (std::size_t r = 0; r < matrix.rows.size(); ++r) {
    std::vector<double> row;
    row.reserve(columns.size());
    for (std::size_t c : columns) row.push_back(matrix.rows[r][c]);
    data.rows.push_back(std::move(row));
    const Subgroup g = matrix.subgroups[r];
    data.labels.push_back(g == Subgroup::HF || g == Subgroup::MF ? 1 : 0);
  }
  return data;
}

double logreg_loss(const std::vector<std::vector<double>>& x,
                   const std::vector<int>& y, const std::vector<double>& weights,
                   double bias, double l2) {
  constexpr double kEps = 1e-12;
  const double n = static_cast<double>(x.size());
  double loss = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    double z = bias;
    for (std::size_t j = 0; j < weights.size(); ++j) z += weights[j] * x[i][j];
    const double p = std::clamp(sigmoid(z), kEps, 1.0 - kEps);
    loss += y[i] == 1 ? -std::log(p) : -std::log(1.0 - p);
  }
  loss /= n;
  double reg = 0.0;
  for (double w : weights) reg += w * w;
  return loss + 0.5 * l2 * reg;
}

std::vector<double> logreg_gradient(const std::vector<std::vector<double>>& x,
                                    const std::vector<int>& y,
                                    const std::vector<double>& weights, double bias,
                                    double l2) {
  const double n = static_cast<double>(x.size());
  std::vector<double> grad(weights.size() + 1, 0.0);
  for (std::size_t i = 0; i < x.size(); ++i) {
    double z = bias;
    for (std::size_t j = 0; j < weights.size(); ++j) z += weights[j] * x[i][j];
    const double err = sigmoid(z) - static_cast<double>(y[i]);
    for (std::size_t j = 0; j < weights.size(); ++j) grad[j] += err * x[i][j];
    grad.back() += err;
  }
  for (std::size_t j = 0; j < weights.size(); ++j)
    grad[j] = grad[j] / n + l2 * weights[j];
  grad.back() /= n;
  return grad;
}

LogRegModel fit_logreg(const TrainData& data, const FitConfig& cfg) {
  validate_train_data(data);
  if (cfg.learning_rate <= 0) throw ValidationError("learning_rate must be > 0");
  if (cfg.epochs <= 0) throw ValidationError("epochs must be > 0");
  if (cfg.l2 < 0) throw ValidationError("l2 must be >= 0");

  const std::size_t n = data.rows.size();
  const std::size_t m_all = data.feature_names.size();

  // standardization statistics; constant columns get dropped
  std::vector<double> mean(m_all, 0.0), sd(m_all, 0.0);
  for (const auto& row : data.rows)
    for (std::size_t j = 0; j < m_all; ++j) mean[j] += row[j];
  for (std::size_t j = 0; j < m_all; ++j) mean[j] /= static_cast<double>(n);
  for (const auto& row : data.rows)
    for (std::size_t j = 0; j < m_all; ++j)
      sd[j] += (row[j] - mean[j]) * (row[j] - mean[j]);
  for (std::size_t j = 0; j < m_all; ++j)
    sd[j] = std::sqrt(sd[j] / static_cast<double>(n));

  LogRegModel model;
  model.config = cfg;
  std::vector<std::size_t> kept;
  for (std::size_t j = 0; j < m_all; ++j) {
    if (sd[j] > 0.0) {
      kept.push_back(j);
      model.feature_subset.push_back(data.feature_names[j]);
      model.means.push_back(mean[j]);
      model.stds.push_back(sd[j]);
    } else {
      model.dropped_features.push_back(data.feature_names[j]);
    }
  }
  if (kept.empty())
    throw ValidationError("all features are constant; nothing to fit");

  std::vector<std::vector<double>> z(n, std::vector<double>(kept.size()));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < kept.size(); ++j)
      z[i][j] = (data.rows[i][kept[j]] - model.means[j]) / model.stds[j];

  model.weights.assign(kept.size(), 0.0);
  model.bias = 0.0;
  model.loss_history.reserve(static_cast<std::size_t>(cfg.epochs) + 1);
  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    model.loss_history.push_back(
        logreg_loss(z, data.labels, model.weights, model.bias, cfg.l2));
    const auto grad = logreg_gradient(z, data.labels, model.weights, model.bias, cfg.l2);
    for (std::size_t j = 0; j < model.weights.size(); ++j)
      model.weights[j] -= cfg.learning_rate * grad[j];
    model.bias -= cfg.learning_rate * grad.back();
  }
  model.loss_history.push_back(
      logreg_loss(z, data.labels, model.weights, model.bias, cfg.l2));
  return model;
}

double predict_logreg(const LogRegModel& model,
                      const std::vector<std::string>& feature_names,
                      const std::vector<double>& values) {
  if (feature_names.size() != values.size())
    throw ValidationError("feature name/value count mismatch");
  double zv = model.bias;
  for (std::size_t j = 0; j < model.feature_subset.size(); ++j) {
    auto it = std::find(feature_names.begin(), feature_names.end(),
                        model.feature_subset[j]);
    if (it == feature_names.end())
      throw ValidationError("missing feature: " + model.feature_subset[j]);
    const double x = values[static_cast<std::size_t>(it - feature_names.begin())];
    zv += model.weights[j] * (x - model.means[j]) / model.stds[j];
  }
  return sigmoid(zv);
}

double predict_logreg(const LogRegModel& model, const textfeat::FeatureVector& x) {
  return predict_logreg(model, textfeat::FeatureSchema::instance().names(), x.values);
}

std::string logreg_to_json(const LogRegModel& model) {
  json j;
  j["format_version"] = kModelFormatVersion;
  j["type"] = "logreg";
  j["feature_subset"] = model.feature_subset;
  j["weights"] = model.weights;
  j["bias"] = model.bias;
  j["standardization"] = json{{"means", model.means}, {"stds", model.stds}};
  j["config"] = config_to_json(model.config);
  j["seed"] = model.config.seed;
  j["dropped_features"] = model.dropped_features;
  j["loss_history"] = model.loss_history;
  return j.dump(2) + "\n";
}

LogRegModel logreg_from_json(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("model JSON: ") + e.what(), 0);
  }
  try {
    if (j.at("type").get<std::string>() != "logreg")
      throw ValidationError("model type is not logreg");
    if (j.at("format_version").get<int>() != kModelFormatVersion)
      throw ValidationError("unsupported model format_version");
    LogRegModel model;
    j.at("feature_subset").get_to(model.feature_subset);
    j.at("weights").get_to(model.weights);
    model.bias = j.at("bias").get<double>();
    j.at("standardization").at("means").get_to(model.means);
    j.at("standardization").at("stds").get_to(model.stds);
    model.config = config_from_json(j.at("config"));
    j.at("dropped_features").get_to(model.dropped_features);
    j.at("loss_history").get_to(model.loss_history);
    if (model.weights.size() != model.feature_subset.size() ||
        model.means.size() != model.feature_subset.size() ||
        model.stds.size() != model.feature_subset.size())
      throw ValidationError("model arrays are inconsistent");
    for (double s : model.stds)
      if (!(s > 0)) throw ValidationError("model stddev entries must be > 0");
    return model;
  } catch (const json::exception& e) {
    throw ValidationError(std::string("model JSON: ") + e.what());
  }
}

void save_logreg(const std::filesystem::path& file, const LogRegModel& model) {
  std::ofstream out(file);
  if (!out) throw IoError("cannot write model: " + file.string());
  out << logreg_to_json(model);
  if (!out) throw IoError("failed writing model: " + file.string());
}

}  // namespace newsaudit::models
