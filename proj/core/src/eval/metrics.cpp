#include "newsaudit/eval/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>

#include "newsaudit/detail/format.hpp"
#include "newsaudit/errors.hpp"

#include <nlohmann/json.hpp>

namespace newsaudit::eval {

namespace {

using nlohmann::json;

void validate_prediction(const Prediction& p) {
  if (p.article_id.empty()) throw ValidationError("prediction with empty article id");
  if (!std::isfinite(p.score) || p.score < 0.0 || p.score > 1.0)
    throw ValidationError("prediction score out of [0,1] for id '" + p.article_id + "'");
  if (p.pred && *p.pred != 0 && *p.pred != 1)
    throw ValidationError("prediction pred must be 0 or 1 for id '" + p.article_id + "'");
}

std::string join_ids(const std::vector<std::string>& ids, std::size_t cap = 10) {
  std::string out;
  for (std::size_t i = 0; i < ids.size() && i < cap; ++i) {
    if (i) out += ", ";
    out += ids[i];
  }
  if (ids.size() > cap) out += ", ... (" + std::to_string(ids.size()) + " total)";
  return out;
}

// Percent with two decimals, e.g. 0.7709 -> "77.09".
std::string pct(double v) {
  std::ostringstream os;
  os.setf(std::ios::fixed);
  os.precision(2);
  os << v * 100.0;
  return os.str();
}

std::string pct_signed(double v) {
  std::string s = pct(std::fabs(v));
  return (v < 0 ? "-" : "+") + s;
}

std::string pad_left(const std::string& s, std::size_t width) {
  if (s.size() >= width) return s;
  return std::string(width - s.size(), ' ') + s;
}

std::string pad_right(const std::string& s, std::size_t width) {
  if (s.size() >= width) return s;
  return s + std::string(width - s.size(), ' ');
}

const std::vector<Subgroup>& subgroup_order() {
  static const std::vector<Subgroup> order = {Subgroup::HR, Subgroup::HF,
                                              Subgroup::MF, Subgroup::MR};
  return order;
}

json cell_to_json(const DiffCell& c) {
  return json{{"before", c.before}, {"after", c.after}, {"difference", c.difference}};
}

DiffCell cell_from_json(const json& j) {
  DiffCell c;
  c.before = j.at("before").get<double>();
  c.after = j.at("after").get<double>();
  c.difference = j.at("difference").get<double>();
  return c;
}

}  // namespace

EvalReport evaluate(const std::vector<Prediction>& preds, const Corpus& corpus,
                    double threshold) {
  if (!std::isfinite(threshold) || threshold < 0.0 || threshold > 1.0)
    throw ValidationError("threshold must lie in [0,1]");

  std::set<std::string> corpus_ids;
  for (const Article& a : corpus.articles) corpus_ids.insert(a.id);

  std::set<std::string> seen;
  std::vector<std::string> extra;
  for (const Prediction& p : preds) {
    validate_prediction(p);
    if (!seen.insert(p.article_id).second)
      throw ValidationError("duplicate prediction for id '" + p.article_id + "'");
    if (!corpus_ids.count(p.article_id)) extra.push_back(p.article_id);
  }
  std::vector<std::string> missing;
  for (const std::string& id : corpus_ids)
    if (!seen.count(id)) missing.push_back(id);
  if (!missing.empty() || !extra.empty()) {
    std::string msg = "prediction/corpus id mismatch";
    if (!missing.empty()) msg += "; unpredicted corpus ids: " + join_ids(missing);
    if (!extra.empty()) msg += "; predictions without corpus article: " + join_ids(extra);
    throw ValidationError(msg);
  }

  std::map<std::string, const Article*> by_id;
  for (const Article& a : corpus.articles) by_id[a.id] = &a;

  std::map<Subgroup, std::size_t> counts;
  std::map<Subgroup, std::size_t> correct;
  std::size_t tp = 0, fp = 0, fn = 0;
  std::vector<double> scores;
  std::vector<int> labels;
  scores.reserve(preds.size());
  labels.reserve(preds.size());

  for (const Prediction& p : preds) {
    const Article& a = *by_id.at(p.article_id);
    int truth = static_cast<int>(a.label);
    int pred = p.pred ? *p.pred : (p.score >= threshold ? 1 : 0);
    Subgroup g = a.subgroup();
    counts[g] += 1;
    if (pred == truth) correct[g] += 1;
    if (pred == 1 && truth == 1) ++tp;
    if (pred == 1 && truth == 0) ++fp;
    if (pred == 0 && truth == 1) ++fn;
    scores.push_back(p.score);
    labels.push_back(truth);
  }

  EvalReport r;
  r.threshold = threshold;
  std::size_t total = 0, total_correct = 0;
  for (const auto& [g, n] : counts) {
    r.per_subgroup_counts[g] = n;
    r.per_subgroup_accuracy[g] = static_cast<double>(correct[g]) / static_cast<double>(n);
    total += n;
    total_correct += correct[g];
  }
  if (total == 0) throw ValidationError("cannot evaluate an empty corpus");
  r.overall_accuracy = static_cast<double>(total_correct) / static_cast<double>(total);
  r.precision = (tp + fp) ? static_cast<double>(tp) / static_cast<double>(tp + fp) : 0.0;
  r.recall = (tp + fn) ? static_cast<double>(tp) / static_cast<double>(tp + fn) : 0.0;
  r.f1 = (r.precision + r.recall > 0.0)
             ? 2.0 * r.precision * r.recall / (r.precision + r.recall)
             : 0.0;
  r.auroc = auroc(scores, labels);
  return r;
}

double auroc(const std::vector<double>& scores, const std::vector<int>& labels) {
  if (scores.empty()) throw ValidationError("auroc: empty input");
  if (scores.size() != labels.size())
    throw ValidationError("auroc: scores and labels differ in length");
  std::uint64_t n_pos = 0, n_neg = 0;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] == 1)
      ++n_pos;
    else if (labels[i] == 0)
      ++n_neg;
    else
      throw ValidationError("auroc: labels must be 0 or 1");
    if (!std::isfinite(scores[i])) throw ValidationError("auroc: non-finite score");
  }
  if (n_pos == 0 || n_neg == 0)
    throw ValidationError("auroc: both classes must be present");

  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });

  // Twice the rank sum of positives, with 1-based average ranks. Within a tie
  // block covering sorted positions [i, j) the average rank is
  // ((i+1) + j) / 2, so its double is the integer (i+1) + j.
  std::uint64_t rank2_pos = 0;
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i;
    while (j < order.size() && scores[order[j]] == scores[order[i]]) ++j;
    std::uint64_t rank2 = static_cast<std::uint64_t>(i + 1) + static_cast<std::uint64_t>(j);
    for (std::size_t k = i; k < j; ++k)
      if (labels[order[k]] == 1) rank2_pos += rank2;
    i = j;
  }
  // U = R_pos - n_pos(n_pos+1)/2; AUROC = U / (n_pos * n_neg).
  std::uint64_t numerator2 = rank2_pos - n_pos * (n_pos + 1);
  return static_cast<double>(numerator2) /
         (2.0 * static_cast<double>(n_pos) * static_cast<double>(n_neg));
}

DiffReport diff_reports(const EvalReport& before, const EvalReport& after) {
  if (before.per_subgroup_counts != after.per_subgroup_counts)
    throw ValidationError(
        "diff_reports: reports describe different corpora (subgroup counts differ)");
  auto cell = [](double b, double a) {
    DiffCell c;
    c.before = b;
    c.after = a;
    c.difference = a - b;
    return c;
  };
  DiffReport d;
  for (const auto& [g, b] : before.per_subgroup_accuracy)
    d.per_subgroup_accuracy[g] = cell(b, after.per_subgroup_accuracy.at(g));
  d.overall_accuracy = cell(before.overall_accuracy, after.overall_accuracy);
  d.precision = cell(before.precision, after.precision);
  d.recall = cell(before.recall, after.recall);
  d.f1 = cell(before.f1, after.f1);
  d.auroc = cell(before.auroc, after.auroc);
  return d;
}

std::vector<Prediction> parse_predictions(std::istream& in) {
  std::vector<Prediction> preds;
  std::string line;
  long line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::exception& e) {
      throw ParseError(std::string("bad prediction JSON: ") + e.what(), line_no);
    }
    if (!j.is_object()) throw ParseError("prediction line is not a JSON object", line_no);
    Prediction p;
    try {
      p.article_id = j.at("id").get<std::string>();
      p.score = j.at("score").get<double>();
      if (j.contains("pred")) p.pred = j.at("pred").get<int>();
    } catch (const json::exception& e) {
      throw ParseError(std::string("bad prediction fields: ") + e.what(), line_no);
    }
    try {
      validate_prediction(p);
    } catch (const ValidationError& e) {
      throw ParseError(e.what(), line_no);
    }
    preds.push_back(std::move(p));
  }
  return preds;
}

std::vector<Prediction> load_predictions(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw IoError("cannot open predictions file: " + file.string());
  return parse_predictions(in);
}

std::string predictions_to_jsonl(const std::vector<Prediction>& preds) {
  std::string out;
  for (const Prediction& p : preds) {
    validate_prediction(p);
    json j;
    j["id"] = p.article_id;
    j["score"] = p.score;
    if (p.pred) j["pred"] = *p.pred;
    out += j.dump();
    out += '\n';
  }
  return out;
}

void save_predictions(const std::filesystem::path& file,
                      const std::vector<Prediction>& preds) {
  std::ofstream out(file, std::ios::binary);
  if (!out) throw IoError("cannot write predictions file: " + file.string());
  out << predictions_to_jsonl(preds);
  if (!out) throw IoError("failed writing predictions file: " + file.string());
}

std::string report_to_json(const EvalReport& report) {
  json j;
  json acc = json::object();
  json counts = json::object();
  for (const auto& [g, v] : report.per_subgroup_accuracy) acc[to_string(g)] = v;
  for (const auto& [g, n] : report.per_subgroup_counts) counts[to_string(g)] = n;
  j["per_subgroup_accuracy"] = acc;
  j["per_subgroup_counts"] = counts;
  j["overall_accuracy"] = report.overall_accuracy;
  j["precision"] = report.precision;
  j["recall"] = report.recall;
  j["f1"] = report.f1;
  j["auroc"] = report.auroc;
  j["threshold"] = report.threshold;
  j["seed"] = report.seed;
  j["split"] = report.split;
  return j.dump(2) + "\n";
}

EvalReport report_from_json(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("bad report JSON: ") + e.what());
  }
  EvalReport r;
  try {
    for (const auto& [k, v] : j.at("per_subgroup_accuracy").items())
      r.per_subgroup_accuracy[subgroup_from_string(k)] = v.get<double>();
    for (const auto& [k, v] : j.at("per_subgroup_counts").items())
      r.per_subgroup_counts[subgroup_from_string(k)] = v.get<std::size_t>();
    r.overall_accuracy = j.at("overall_accuracy").get<double>();
    r.precision = j.at("precision").get<double>();
    r.recall = j.at("recall").get<double>();
    r.f1 = j.at("f1").get<double>();
    r.auroc = j.at("auroc").get<double>();
    r.threshold = j.at("threshold").get<double>();
    r.seed = j.value("seed", std::uint64_t{0});
    r.split = j.value("split", std::string{});
  } catch (const json::exception& e) {
    throw ParseError(std::string("bad report fields: ") + e.what());
  }
  return r;
}

std::string render_report(const EvalReport& report) {
  constexpr std::size_t kCell = 10;
  std::vector<std::string> headers;
  std::vector<std::string> values;
  std::vector<std::string> counts;
  for (Subgroup g : subgroup_order()) {
    if (!report.has_subgroup(g)) continue;
    headers.push_back(to_string(g));
    values.push_back(pct(report.per_subgroup_accuracy.at(g)));
    counts.push_back("n=" + std::to_string(report.per_subgroup_counts.at(g)));
  }
  headers.insert(headers.end(), {"Overall", "F1", "Recall", "Precision", "Auroc"});
  values.insert(values.end(),
                {pct(report.overall_accuracy), pct(report.f1), pct(report.recall),
                 pct(report.precision), pct(report.auroc)});
  std::size_t n_total = 0;
  for (const auto& [g, n] : report.per_subgroup_counts) n_total += n;
  counts.push_back("n=" + std::to_string(n_total));
  while (counts.size() < headers.size()) counts.emplace_back("");

  std::string out;
  auto emit_row = [&](const std::vector<std::string>& cells) {
    for (const std::string& c : cells) out += pad_left(c, kCell);
    out += '\n';
  };
  emit_row(headers);
  emit_row(values);
  emit_row(counts);
  out += "accuracy per subgroup; overall is count-weighted; threshold=" +
         detail::format_double(report.threshold) + "\n";
  return out;
}

std::string diff_to_json(const DiffReport& diff) {
  json j;
  json acc = json::object();
  for (const auto& [g, c] : diff.per_subgroup_accuracy) acc[to_string(g)] = cell_to_json(c);
  j["per_subgroup_accuracy"] = acc;
  j["overall_accuracy"] = cell_to_json(diff.overall_accuracy);
  j["precision"] = cell_to_json(diff.precision);
  j["recall"] = cell_to_json(diff.recall);
  j["f1"] = cell_to_json(diff.f1);
  j["auroc"] = cell_to_json(diff.auroc);
  return j.dump(2) + "\n";
}

DiffReport diff_from_json(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("bad diff JSON: ") + e.what());
  }
  DiffReport d;
  try {
    for (const auto& [k, v] : j.at("per_subgroup_accuracy").items())
      d.per_subgroup_accuracy[subgroup_from_string(k)] = cell_from_json(v);
    d.overall_accuracy = cell_from_json(j.at("overall_accuracy"));
    d.precision = cell_from_json(j.at("precision"));
    d.recall = cell_from_json(j.at("recall"));
    d.f1 = cell_from_json(j.at("f1"));
    d.auroc = cell_from_json(j.at("auroc"));
  } catch (const json::exception& e) {
    throw ParseError(std::string("bad diff fields: ") + e.what());
  }
  return d;
}

std::string render_diff(const DiffReport& diff) {
  constexpr std::size_t kName = 18, kCell = 10;
  std::string out;
  out += pad_right("metric", kName) + pad_left("before", kCell) +
         pad_left("after", kCell) + pad_left("difference", 12) + "\n";
  auto emit = [&](const std::string& name, const DiffCell& c) {
    std::string note;
    if (c.difference > 0)
      note = "  improvement";
    else if (c.difference < 0)
      note = "  regression";
    out += pad_right(name, kName) + pad_left(pct(c.before), kCell) +
           pad_left(pct(c.after), kCell) + pad_left(pct_signed(c.difference), 12) +
           note + "\n";
  };
  for (Subgroup g : subgroup_order()) {
    auto it = diff.per_subgroup_accuracy.find(g);
    if (it == diff.per_subgroup_accuracy.end()) continue;
    emit("accuracy[" + to_string(g) + "]", it->second);
  }
  emit("overall_accuracy", diff.overall_accuracy);
  emit("f1", diff.f1);
  emit("recall", diff.recall);
  emit("precision", diff.precision);
  emit("auroc", diff.auroc);
  return out;
}

}  // namespace newsaudit::eval
