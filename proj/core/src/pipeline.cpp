#include "newsaudit/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include <nlohmann/json.hpp>

#include "newsaudit/detail/format.hpp"
#include "newsaudit/errors.hpp"
#include "newsaudit/eval/agreement.hpp"
#include "newsaudit/eval/metrics.hpp"
#include "newsaudit/llmgen/assemble.hpp"
#include "newsaudit/llmgen/prompts.hpp"
#include "newsaudit/models/tree.hpp"
#include "newsaudit/textfeat/features.hpp"
#include "newsaudit/textfeat/lexicon.hpp"
#include "newsaudit/version.hpp"

namespace newsaudit::pipeline {

namespace fs = std::filesystem;
using nlohmann::json;

std::string fnv1a64_hex(std::string_view data) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : data) {
    h ^= static_cast<std::uint64_t>(c);
    h *= 0x100000001b3ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return std::string(buf);
}

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names = {
      "ingest", "extract", "audit",    "train", "eval",
      "compare", "augment", "generate", "mauve", "kappa"};
  return names;
}

namespace {

// ---------------------------------------------------------------------------
// Config parsing
// ---------------------------------------------------------------------------

void check_keys(const json& obj, const std::set<std::string>& allowed,
                const std::string& where) {
  for (const auto& item : obj.items()) {
    if (!allowed.count(item.key()))
      throw ValidationError("unknown config key '" +
                            (where.empty() ? item.key() : where + "." + item.key()) +
                            "'");
  }
}

const json& need_object(const json& j, const std::string& where) {
  if (!j.is_object())
    throw ValidationError("config key '" + where + "' must be an object");
  return j;
}

std::string get_string(const json& j, const std::string& where) {
  if (!j.is_string())
    throw ValidationError("config key '" + where + "' must be a string");
  return j.get<std::string>();
}

double get_double(const json& j, const std::string& where) {
  if (!j.is_number())
    throw ValidationError("config key '" + where + "' must be a number");
  return j.get<double>();
}

int get_int(const json& j, const std::string& where) {
  if (!j.is_number_integer())
    throw ValidationError("config key '" + where + "' must be an integer");
  return j.get<int>();
}

std::uint64_t get_u64(const json& j, const std::string& where) {
  if (j.is_number_unsigned()) return j.get<std::uint64_t>();
  if (j.is_number_integer() && j.get<long long>() >= 0)
    return j.get<std::uint64_t>();
  throw ValidationError("config key '" + where + "' must be a non-negative integer");
}

bool get_bool(const json& j, const std::string& where) {
  if (!j.is_boolean())
    throw ValidationError("config key '" + where + "' must be a boolean");
  return j.get<bool>();
}

// Canonical JSON view of the effective configuration; its dump feeds the
// config hash, so key order (alphabetical via nlohmann) and value formatting
// must stay stable across runs.
json effective_config_json(const RunConfig& cfg) {
  json e;
  e["corpus"]["main"] = cfg.corpus_main;
  e["corpus"]["mr_augment"] = cfg.corpus_mr;
  e["lexicon_dir"] = cfg.lexicon_dir;
  e["template_dir"] = cfg.template_dir;
  e["split"]["train_fraction"] = cfg.split.train_fraction;
  e["split"]["stratify"] = cfg.split.stratify_by_subgroup;
  e["model"]["kind"] = cfg.model_kind;
  e["model"]["learning_rate"] = cfg.model.learning_rate;
  e["model"]["epochs"] = cfg.model.epochs;
  e["model"]["l2"] = cfg.model.l2;
  e["model"]["max_depth"] = cfg.model.max_depth;
  e["model"]["min_leaf"] = cfg.model.min_leaf;
  e["debias"]["rule"] = stats::to_string(cfg.debias_rule);
  e["eval"]["threshold"] = cfg.eval_threshold;
  e["mauve"]["num_clusters"] = cfg.mauve_cfg.num_clusters;
  e["mauve"]["scaling_constant"] = cfg.mauve_cfg.scaling_constant;
  e["mauve"]["grid_size"] = cfg.mauve_cfg.grid_size;
  e["mauve"]["epsilon"] = cfg.mauve_cfg.epsilon;
  e["mauve"]["embeddings_p"] = cfg.embeddings_p;
  e["mauve"]["embeddings_q"] = cfg.embeddings_q;
  e["llm"]["base_url"] = cfg.llm.base_url;
  e["llm"]["api_key_env_var"] = cfg.llm.api_key_env_var;
  e["llm"]["model"] = cfg.llm.model;
  e["llm"]["temperature"] = cfg.llm.temperature;
  e["llm"]["max_tokens"] = cfg.llm.max_tokens;
  e["llm"]["timeout_seconds"] = cfg.llm.timeout_seconds;
  e["llm"]["max_retries"] = cfg.llm.max_retries;
  e["llm"]["requests_per_minute"] = cfg.llm.requests_per_minute;
  e["llm"]["backoff_base_seconds"] = cfg.llm.backoff_base_seconds;
  e["llm"]["target_label"] = cfg.llm_target_label;
  e["llm"]["min_body_words"] = cfg.llm_min_body_words;
  e["llm"]["max_articles"] = cfg.llm_max_articles;
  e["kappa"]["annotations_a"] = cfg.annotations_a;
  e["kappa"]["annotations_b"] = cfg.annotations_b;
  e["out_dir"] = cfg.out_dir.generic_string();
  e["seed"] = cfg.seed;
  return e;
}

// Keeps the one global seed authoritative everywhere a module wants one.
void propagate_seed(RunConfig& cfg) {
  cfg.split.seed = cfg.seed;
  cfg.model.seed = cfg.seed;
  cfg.mauve_cfg.seed = cfg.seed;
}

// ---------------------------------------------------------------------------
// Artifact provenance: every file embeds (tool version, config hash, seed)
// ---------------------------------------------------------------------------

std::vector<std::string> meta_lines(const RunConfig& cfg) {
  return {"tool_version: " + std::string(kToolVersion),
          "config_hash: " + cfg.config_hash, "seed: " + std::to_string(cfg.seed)};
}

json meta_json(const RunConfig& cfg) {
  json m;
  m["tool_version"] = std::string(kToolVersion);
  m["config_hash"] = cfg.config_hash;
  m["seed"] = cfg.seed;
  return m;
}

std::string jsonl_meta_line(const RunConfig& cfg) {
  json wrapper;
  wrapper["meta"] = meta_json(cfg);
  return wrapper.dump();
}

std::string text_meta_footer(const RunConfig& cfg) {
  std::string out;
  for (const std::string& line : meta_lines(cfg)) out += "# " + line + "\n";
  return out;
}

// ---------------------------------------------------------------------------
// File helpers
// ---------------------------------------------------------------------------

void write_file(const fs::path& file, const std::string& content) {
  std::ofstream out(file, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write '" + file.string() + "'");
  out << content;
  if (!out) throw IoError("write failed for '" + file.string() + "'");
}

std::string slurp(const fs::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw IoError("cannot open '" + file.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// Input named in the config: must exist before the stage does any work.
void require_input(const std::string& path, const std::string& config_key) {
  if (path.empty())
    throw ValidationError("config key '" + config_key + "' is required for this command");
  if (!fs::exists(path))
    throw ValidationError("config key '" + config_key + "' points to missing path '" +
                          path + "'");
}

// Artifact produced by an upstream stage.
void require_artifact(const fs::path& file, const std::string& producer) {
  if (!fs::exists(file))
    throw ValidationError("missing artifact '" + file.string() + "'; run the '" +
                          producer + "' command first");
}

// Splits off a leading {"meta": {...}} line if present; returns the payload.
std::string strip_meta_line(const std::string& text) {
  if (text.empty() || text[0] != '{') return text;
  std::size_t eol = text.find('\n');
  std::string first = text.substr(0, eol == std::string::npos ? text.size() : eol);
  json j = json::parse(first, nullptr, /*allow_exceptions=*/false);
  if (j.is_object() && j.size() == 1 && j.contains("meta"))
    return eol == std::string::npos ? std::string() : text.substr(eol + 1);
  return text;
}

void write_corpus_artifact(const fs::path& file, const Corpus& corpus,
                           const RunConfig& cfg) {
  write_file(file, jsonl_meta_line(cfg) + "\n" + corpus_to_jsonl(corpus));
}

Corpus read_corpus_artifact(const fs::path& file, const std::string& name) {
  std::istringstream in(strip_meta_line(slurp(file)));
  try {
    return parse_corpus(in, name);
  } catch (const ParseError& e) {
    throw ParseError("corpus artifact " + file.string() + ": " + e.what(), 0);
  }
}

void write_json_artifact(const fs::path& file, json payload, const RunConfig& cfg) {
  payload["meta"] = meta_json(cfg);
  write_file(file, payload.dump(2) + "\n");
}

json read_json_artifact(const fs::path& file) {
  try {
    return json::parse(slurp(file));
  } catch (const json::parse_error& e) {
    throw ParseError("JSON artifact " + file.string() + ": " + e.what(), 0);
  }
}

// ---------------------------------------------------------------------------
// Rule files: one selected feature name per line, '#' comments for meta.
// ---------------------------------------------------------------------------

void write_rule_file(const fs::path& file, const RunConfig& cfg,
                     stats::DebiasRule rule, const std::vector<std::string>& names,
                     const std::string& empty_reason) {
  std::string out = text_meta_footer(cfg);
  out += "# debias_rule: " + stats::to_string(rule) + "\n";
  out += "# features: " + std::to_string(names.size()) + "\n";
  if (names.empty()) out += "# empty: " + empty_reason + "\n";
  for (const std::string& n : names) out += n + "\n";
  write_file(file, out);
}

std::vector<std::string> read_rule_file(const fs::path& file) {
  std::istringstream in(slurp(file));
  std::vector<std::string> names;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    names.push_back(line);
  }
  if (names.empty())
    throw ValidationError("rule file '" + file.string() +
                          "' lists no features (the audit selected none; "
                          "consider debias rule B)");
  return names;
}

// ---------------------------------------------------------------------------
// Shared lookups
// ---------------------------------------------------------------------------

const textfeat::LexiconSet& lexicons_for(const RunConfig& cfg,
                                         textfeat::LexiconSet& storage) {
  if (cfg.lexicon_dir.empty()) return textfeat::builtin_lexicons();
  require_input(cfg.lexicon_dir, "lexicon_dir");
  storage = textfeat::load_lexicon_dir(cfg.lexicon_dir);
  return storage;
}

llmgen::TemplateSet templates_for(const RunConfig& cfg) {
  if (cfg.template_dir.empty()) return llmgen::TemplateSet::builtin();
  require_input(cfg.template_dir, "template_dir");
  return llmgen::TemplateSet::load_dir(cfg.template_dir);
}

// Feature rows for a given article-id sequence, preserving that order.
textfeat::FeatureMatrix matrix_subset(const textfeat::FeatureMatrix& matrix,
                                      const std::vector<std::string>& ids) {
  std::unordered_map<std::string, std::size_t> row_of;
  row_of.reserve(matrix.article_ids.size());
  for (std::size_t i = 0; i < matrix.article_ids.size(); ++i)
    row_of[matrix.article_ids[i]] = i;
  textfeat::FeatureMatrix sub;
  for (const std::string& id : ids) {
    auto it = row_of.find(id);
    if (it == row_of.end())
      throw ValidationError("no feature row for article '" + id +
                            "'; rerun the 'extract' command");
    sub.article_ids.push_back(matrix.article_ids[it->second]);
    sub.subgroups.push_back(matrix.subgroups[it->second]);
    sub.rows.push_back(matrix.rows[it->second]);
  }
  return sub;
}

std::vector<std::string> ids_of(const Corpus& c) {
  std::vector<std::string> ids;
  ids.reserve(c.articles.size());
  for (const Article& a : c.articles) ids.push_back(a.id);
  return ids;
}

// Articles of `all` that are not in `base`, keeping `all` order. The
// augmented corpus artifact is base + extras, so this recovers the extras.
Corpus extras_beyond(const Corpus& all, const Corpus& base, const std::string& name) {
  std::unordered_set<std::string> base_ids;
  for (const Article& a : base.articles) base_ids.insert(a.id);
  Corpus extra;
  extra.name = name;
  for (const Article& a : all.articles)
    if (!base_ids.count(a.id)) extra.articles.push_back(a);
  return extra;
}

// ---------------------------------------------------------------------------
// Annotation CSVs for kappa: header "id,rating", '#' comments allowed.
// ---------------------------------------------------------------------------

std::map<std::string, int> load_annotations(const fs::path& file) {
  std::istringstream in(slurp(file));
  std::map<std::string, int> ratings;
  std::string line;
  long line_no = 0;
  bool saw_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> fields = detail::split_csv_line(line);
    if (!saw_header) {
      saw_header = true;
      if (fields.size() >= 2 && fields[0] == "id" && fields[1] == "rating") continue;
      throw ParseError("annotation CSV " + file.string() +
                           " must start with header 'id,rating'",
                       line_no);
    }
    if (fields.size() < 2)
      throw ParseError("annotation row needs id and rating (" + file.string() + ")",
                       line_no);
    int rating = 0;
    std::size_t consumed = 0;
    try {
      rating = std::stoi(fields[1], &consumed);
    } catch (const std::exception&) {
      consumed = std::string::npos;
    }
    if (consumed != fields[1].size())
      throw ParseError("annotation rating must be an integer, got '" + fields[1] +
                           "' (" + file.string() + ")",
                       line_no);
    if (!ratings.emplace(fields[0], rating).second)
      throw ParseError("duplicate annotation id '" + fields[0] + "' (" +
                           file.string() + ")",
                       line_no);
  }
  if (ratings.empty())
    throw ValidationError("annotation CSV '" + file.string() + "' has no rows");
  return ratings;
}

// ---------------------------------------------------------------------------
// Commands. Each reads its inputs from config/out_dir, writes its artifacts,
// and returns the paths written.
// ---------------------------------------------------------------------------

using Written = std::vector<fs::path>;

Written cmd_ingest(const RunConfig& cfg) {
  require_input(cfg.corpus_main, "corpus.main");
  Corpus main_corpus = load_corpus(cfg.corpus_main, "main");
  Written wrote;
  write_corpus_artifact(cfg.out_dir / "corpus.jsonl", main_corpus, cfg);
  wrote.push_back(cfg.out_dir / "corpus.jsonl");
  if (!cfg.corpus_mr.empty()) {
    require_input(cfg.corpus_mr, "corpus.mr_augment");
    Corpus mr = load_corpus(cfg.corpus_mr, "mr");
    for (const Article& a : mr.articles)
      if (a.source != Source::machine)
        throw ValidationError("mr_augment corpus contains human-sourced article '" +
                              a.id + "'");
    write_corpus_artifact(cfg.out_dir / "corpus_mr.jsonl", mr, cfg);
    wrote.push_back(cfg.out_dir / "corpus_mr.jsonl");
  }
  return wrote;
}

Written cmd_extract(const RunConfig& cfg) {
  fs::path corpus_file = cfg.out_dir / "corpus.jsonl";
  require_artifact(corpus_file, "ingest");
  Corpus corpus = read_corpus_artifact(corpus_file, "main");
  fs::path mr_file = cfg.out_dir / "corpus_mr.jsonl";
  if (fs::exists(mr_file))
    corpus = augment(corpus, read_corpus_artifact(mr_file, "mr"));
  textfeat::LexiconSet storage;
  const textfeat::LexiconSet& lex = lexicons_for(cfg, storage);
  textfeat::FeatureMatrix matrix = textfeat::extract_matrix(corpus, lex);
  textfeat::save_feature_matrix(cfg.out_dir / "features.csv", matrix, meta_lines(cfg));
  return {cfg.out_dir / "features.csv"};
}

Written cmd_audit(const RunConfig& cfg) {
  fs::path features_file = cfg.out_dir / "features.csv";
  require_artifact(features_file, "extract");
  textfeat::FeatureMatrix matrix = textfeat::load_feature_matrix(features_file);
  stats::SignificanceTable table = stats::significance_table(matrix);
  Written wrote;
  stats::save_significance_csv(cfg.out_dir / "significance.csv", table,
                               meta_lines(cfg));
  wrote.push_back(cfg.out_dir / "significance.csv");
  write_file(cfg.out_dir / "significance.txt",
             stats::render_significance_table(table) + text_meta_footer(cfg));
  wrote.push_back(cfg.out_dir / "significance.txt");
  for (stats::DebiasRule rule : {stats::DebiasRule::A, stats::DebiasRule::B}) {
    std::vector<std::string> names;
    std::string empty_reason;
    try {
      names = stats::select_debiased_features(table, rule);
    } catch (const ValidationError& e) {
      empty_reason = e.what();
    }
    fs::path file = cfg.out_dir / (rule == stats::DebiasRule::A
                                       ? "features_rule_a.txt"
                                       : "features_rule_b.txt");
    write_rule_file(file, cfg, rule, names, empty_reason);
    wrote.push_back(file);
  }
  return wrote;
}

Written cmd_augment(const RunConfig& cfg) {
  fs::path corpus_file = cfg.out_dir / "corpus.jsonl";
  fs::path mr_file = cfg.out_dir / "corpus_mr.jsonl";
  require_artifact(corpus_file, "ingest");
  if (!fs::exists(mr_file))
    throw ValidationError("missing artifact '" + mr_file.string() +
                          "'; configure corpus.mr_augment and run 'ingest' first");
  Corpus merged = augment(read_corpus_artifact(corpus_file, "main"),
                          read_corpus_artifact(mr_file, "mr"));
  merged.name = "augmented";
  write_corpus_artifact(cfg.out_dir / "corpus_augmented.jsonl", merged, cfg);
  return {cfg.out_dir / "corpus_augmented.jsonl"};
}

Written cmd_train(const RunConfig& cfg) {
  fs::path corpus_file = cfg.out_dir / "corpus.jsonl";
  fs::path features_file = cfg.out_dir / "features.csv";
  require_artifact(corpus_file, "ingest");
  require_artifact(features_file, "extract");
  fs::path rule_file = cfg.out_dir / (cfg.debias_rule == stats::DebiasRule::A
                                          ? "features_rule_a.txt"
                                          : "features_rule_b.txt");
  require_artifact(rule_file, "audit");

  Corpus base = read_corpus_artifact(corpus_file, "main");
  textfeat::FeatureMatrix matrix = textfeat::load_feature_matrix(features_file);
  std::vector<std::string> rule_features = read_rule_file(rule_file);

  auto [train_c, test_c] = split(base, cfg.split);

  Corpus extra_train, extra_test;
  fs::path augmented_file = cfg.out_dir / "corpus_augmented.jsonl";
  bool has_extra = fs::exists(augmented_file);
  if (has_extra) {
    Corpus merged = read_corpus_artifact(augmented_file, "augmented");
    Corpus extra = extras_beyond(merged, base, "extra");
    if (extra.empty()) {
      has_extra = false;
    } else {
      std::tie(extra_train, extra_test) = split(extra, cfg.split);
    }
  }

  json split_doc;
  split_doc["train"] = ids_of(train_c);
  split_doc["test"] = ids_of(test_c);
  split_doc["extra_train"] = ids_of(extra_train);
  split_doc["extra_test"] = ids_of(extra_test);
  Written wrote;
  write_json_artifact(cfg.out_dir / "split.json", split_doc, cfg);
  wrote.push_back(cfg.out_dir / "split.json");

  const std::vector<std::string>& full =
      textfeat::FeatureSchema::instance().names();

  auto fit_and_save = [&](const std::string& name,
                          const std::vector<std::string>& subset,
                          const std::vector<std::string>& row_ids) {
    models::TrainData data =
        models::make_train_data(matrix_subset(matrix, row_ids), subset);
    fs::path file = cfg.out_dir / ("model_" + name + ".json");
    std::string model_json;
    if (cfg.model_kind == "logreg")
      model_json = models::logreg_to_json(models::fit_logreg(data, cfg.model));
    else
      model_json = models::tree_to_json(models::fit_tree(data, cfg.model));
    write_json_artifact(file, json::parse(model_json), cfg);
    wrote.push_back(file);
  };

  std::vector<std::string> train_ids = ids_of(train_c);
  fit_and_save("baseline", full, train_ids);
  fit_and_save("debiased", rule_features, train_ids);
  if (has_extra) {
    std::vector<std::string> combined = train_ids;
    for (const Article& a : extra_train.articles) combined.push_back(a.id);
    fit_and_save("augmented", full, combined);
  }
  return wrote;
}

Written cmd_eval(const RunConfig& cfg) {
  fs::path split_file = cfg.out_dir / "split.json";
  fs::path corpus_file = cfg.out_dir / "corpus.jsonl";
  fs::path features_file = cfg.out_dir / "features.csv";
  require_artifact(split_file, "train");
  require_artifact(corpus_file, "ingest");
  require_artifact(features_file, "extract");

  json split_doc = read_json_artifact(split_file);
  std::vector<std::string> eval_ids;
  for (const char* key : {"test", "extra_test"}) {
    if (!split_doc.contains(key) || !split_doc[key].is_array())
      throw ValidationError("split.json is missing the '" + std::string(key) +
                            "' id list; rerun the 'train' command");
    for (const json& id : split_doc[key]) eval_ids.push_back(id.get<std::string>());
  }

  Corpus base = read_corpus_artifact(corpus_file, "main");
  std::unordered_map<std::string, const Article*> article_of;
  for (const Article& a : base.articles) article_of[a.id] = &a;
  fs::path augmented_file = cfg.out_dir / "corpus_augmented.jsonl";
  Corpus merged;  // keeps extra articles alive while we borrow pointers
  if (fs::exists(augmented_file)) {
    merged = read_corpus_artifact(augmented_file, "augmented");
    for (const Article& a : merged.articles) article_of.emplace(a.id, &a);
  }
  Corpus eval_corpus;
  eval_corpus.name = "eval";
  for (const std::string& id : eval_ids) {
    auto it = article_of.find(id);
    if (it == article_of.end())
      throw ValidationError("split.json references unknown article '" + id + "'");
    eval_corpus.articles.push_back(*it->second);
  }
  if (eval_corpus.empty())
    throw ValidationError("the held-out split is empty; nothing to evaluate");

  textfeat::FeatureMatrix rows =
      matrix_subset(textfeat::load_feature_matrix(features_file), eval_ids);
  const std::vector<std::string>& full =
      textfeat::FeatureSchema::instance().names();

  Written wrote;
  bool any_model = false;
  for (const char* name : {"baseline", "debiased", "augmented"}) {
    fs::path model_file = cfg.out_dir / ("model_" + std::string(name) + ".json");
    if (!fs::exists(model_file)) continue;
    any_model = true;
    std::string kind = models::model_type_of(model_file);
    std::vector<eval::Prediction> preds;
    preds.reserve(eval_ids.size());
    if (kind == "logreg") {
      models::LogRegModel model = models::logreg_from_json(slurp(model_file));
      for (std::size_t i = 0; i < rows.size(); ++i)
        preds.push_back({rows.article_ids[i],
                         models::predict_logreg(model, full, rows.rows[i]),
                         std::nullopt});
    } else if (kind == "tree") {
      models::TreeModel model = models::tree_from_json(slurp(model_file));
      for (std::size_t i = 0; i < rows.size(); ++i)
        preds.push_back({rows.article_ids[i],
                         models::predict_tree(model, full, rows.rows[i]),
                         std::nullopt});
    } else {
      throw ValidationError("model '" + model_file.string() +
                            "' has unsupported type '" + kind + "'");
    }
    for (eval::Prediction& p : preds)
      p.pred = p.score >= cfg.eval_threshold ? 1 : 0;

    fs::path pred_file = cfg.out_dir / ("predictions_" + std::string(name) + ".jsonl");
    write_file(pred_file,
               jsonl_meta_line(cfg) + "\n" + eval::predictions_to_jsonl(preds));
    wrote.push_back(pred_file);

    eval::EvalReport report = eval::evaluate(preds, eval_corpus, cfg.eval_threshold);
    report.seed = cfg.seed;
    report.split = "test";
    fs::path report_json = cfg.out_dir / ("report_" + std::string(name) + ".json");
    write_json_artifact(report_json, json::parse(eval::report_to_json(report)), cfg);
    wrote.push_back(report_json);
    fs::path report_txt = cfg.out_dir / ("report_" + std::string(name) + ".txt");
    write_file(report_txt, eval::render_report(report) + text_meta_footer(cfg));
    wrote.push_back(report_txt);
  }
  if (!any_model)
    throw ValidationError("no model artifacts in '" + cfg.out_dir.string() +
                          "'; run the 'train' command first");
  return wrote;
}

eval::EvalReport load_report_artifact(const fs::path& file) {
  return eval::report_from_json(slurp(file));
}

Written cmd_compare(const RunConfig& cfg) {
  fs::path baseline_file = cfg.out_dir / "report_baseline.json";
  fs::path debiased_file = cfg.out_dir / "report_debiased.json";
  require_artifact(baseline_file, "eval");
  require_artifact(debiased_file, "eval");
  eval::EvalReport baseline = load_report_artifact(baseline_file);

  Written wrote;
  auto emit = [&](const eval::EvalReport& after, const std::string& tag) {
    eval::DiffReport diff = eval::diff_reports(baseline, after);
    fs::path diff_json = cfg.out_dir / ("diff_" + tag + ".json");
    write_json_artifact(diff_json, json::parse(eval::diff_to_json(diff)), cfg);
    wrote.push_back(diff_json);
    fs::path diff_txt = cfg.out_dir / ("diff_" + tag + ".txt");
    write_file(diff_txt, eval::render_diff(diff) + text_meta_footer(cfg));
    wrote.push_back(diff_txt);
  };
  emit(load_report_artifact(debiased_file), "debias");
  fs::path augmented_file = cfg.out_dir / "report_augmented.json";
  if (fs::exists(augmented_file))
    emit(load_report_artifact(augmented_file), "augment");
  return wrote;
}

Written cmd_generate(const RunConfig& cfg) {
  fs::path corpus_file = cfg.out_dir / "corpus.jsonl";
  require_artifact(corpus_file, "ingest");
  Corpus base = read_corpus_artifact(corpus_file, "main");

  Label target;
  if (cfg.llm_target_label == "fake")
    target = Label::fake;
  else if (cfg.llm_target_label == "real")
    target = Label::real;
  else
    throw ValidationError("config key 'llm.target_label' must be \"fake\" or \"real\"");

  llmgen::TemplateSet templates = templates_for(cfg);
  std::vector<std::string> violations = llmgen::lint_templates(templates);
  if (!violations.empty()) {
    std::string msg = "prompt templates failed lint:";
    for (const std::string& v : violations) msg += "\n  - " + v;
    throw ValidationError(msg);
  }

  std::vector<const Article*> seeds;
  for (const Article& a : base.articles)
    if (a.source == Source::human && a.label == target) seeds.push_back(&a);
  std::sort(seeds.begin(), seeds.end(),
            [](const Article* a, const Article* b) { return a->id < b->id; });
  if (seeds.empty())
    throw ValidationError("corpus has no human-written seed articles with label '" +
                          cfg.llm_target_label + "'");
  if (cfg.llm_max_articles > 0 &&
      seeds.size() > static_cast<std::size_t>(cfg.llm_max_articles))
    seeds.resize(static_cast<std::size_t>(cfg.llm_max_articles));

  std::unique_ptr<llmgen::HttpTransport> transport =
      llmgen::make_http_transport(cfg.llm.base_url);
  std::unique_ptr<llmgen::Clock> clock = llmgen::make_system_clock();
  llmgen::GenerationClient client(cfg.llm, *transport, *clock, cfg.seed);

  std::vector<llmgen::GenerationRecord> records;
  records.reserve(seeds.size());
  for (const Article* seed : seeds) {
    llmgen::SmpPrompt prompt = target == Label::fake
                                   ? llmgen::build_smp_prompt(*seed, templates)
                                   : llmgen::build_paraphrase_prompt(*seed, templates);
    records.push_back(client.generate(prompt, seed->id));
  }

  llmgen::AssemblyOptions opts;
  opts.min_body_words = cfg.llm_min_body_words;
  llmgen::AssemblyResult assembled =
      llmgen::assemble_machine_corpus(records, target, &base, opts);

  Written wrote;
  write_corpus_artifact(cfg.out_dir / "corpus_generated.jsonl", assembled.corpus, cfg);
  wrote.push_back(cfg.out_dir / "corpus_generated.jsonl");

  json records_doc;
  records_doc["records"] = json::array();
  for (const llmgen::GenerationRecord& r : records) {
    json rec;
    rec["origin_id"] = r.origin_id;
    rec["accepted"] = r.accepted;
    if (r.rejection_reason)
      rec["rejection_reason"] = *r.rejection_reason;
    else
      rec["rejection_reason"] = nullptr;
    rec["template_version"] = r.template_version;
    rec["title"] = r.title;
    rec["body"] = r.body;
    rec["raw_title"] = r.raw_title;
    rec["raw_body"] = r.raw_body;
    rec["attempt_log"] = r.attempt_log;
    rec["prompt"]["title_instruction"] = r.prompt.title_instruction;
    rec["prompt"]["body_instruction"] = r.prompt.body_instruction;
    rec["prompt"]["seed_title"] = r.prompt.seed_title;
    rec["prompt"]["seed_summary"] = r.prompt.seed_summary;
    records_doc["records"].push_back(rec);
  }
  records_doc["excluded"] = json::array();
  for (const auto& [origin_id, reason] : assembled.excluded) {
    json ex;
    ex["origin_id"] = origin_id;
    ex["reason"] = reason;
    records_doc["excluded"].push_back(ex);
  }
  write_json_artifact(cfg.out_dir / "generation_records.json", records_doc, cfg);
  wrote.push_back(cfg.out_dir / "generation_records.json");

  std::string review;
  for (const std::string& line : meta_lines(cfg)) review += "# " + line + "\n";
  review += llmgen::review_to_csv(records);
  write_file(cfg.out_dir / "generation_review.csv", review);
  wrote.push_back(cfg.out_dir / "generation_review.csv");
  return wrote;
}

Written cmd_mauve(const RunConfig& cfg) {
  require_input(cfg.embeddings_p, "mauve.embeddings_p");
  require_input(cfg.embeddings_q, "mauve.embeddings_q");
  mauve::EmbeddingSet p = mauve::load_embeddings(cfg.embeddings_p);
  mauve::EmbeddingSet q = mauve::load_embeddings(cfg.embeddings_q);
  mauve::MauveResult result = mauve::mauve_score(p, q, cfg.mauve_cfg);

  json doc;
  doc["score"] = result.score;
  doc["num_clusters"] = result.num_clusters;
  doc["n_p"] = p.size();
  doc["n_q"] = q.size();
  Written wrote;
  write_json_artifact(cfg.out_dir / "mauve.json", doc, cfg);
  wrote.push_back(cfg.out_dir / "mauve.json");
  write_file(cfg.out_dir / "frontier.csv",
             mauve::frontier_to_csv(result, meta_lines(cfg)));
  wrote.push_back(cfg.out_dir / "frontier.csv");
  return wrote;
}

Written cmd_kappa(const RunConfig& cfg) {
  require_input(cfg.annotations_a, "kappa.annotations_a");
  require_input(cfg.annotations_b, "kappa.annotations_b");
  std::map<std::string, int> a = load_annotations(cfg.annotations_a);
  std::map<std::string, int> b = load_annotations(cfg.annotations_b);

  std::vector<std::string> only_a, only_b;
  for (const auto& [id, _] : a)
    if (!b.count(id)) only_a.push_back(id);
  for (const auto& [id, _] : b)
    if (!a.count(id)) only_b.push_back(id);
  if (!only_a.empty() || !only_b.empty()) {
    std::string msg = "annotation files rate different ids;";
    if (!only_a.empty()) {
      msg += " only in A:";
      for (const std::string& id : only_a) msg += " " + id;
    }
    if (!only_b.empty()) {
      msg += " only in B:";
      for (const std::string& id : only_b) msg += " " + id;
    }
    throw ValidationError(msg);
  }

  std::vector<int> ratings_a, ratings_b;
  ratings_a.reserve(a.size());
  ratings_b.reserve(a.size());
  for (const auto& [id, rating] : a) {
    ratings_a.push_back(rating);
    ratings_b.push_back(b.at(id));
  }
  double kappa = eval::cohens_kappa(ratings_a, ratings_b);

  json doc;
  doc["kappa"] = kappa;
  doc["interpretation"] = eval::kappa_interpretation(kappa);
  doc["n"] = a.size();
  write_json_artifact(cfg.out_dir / "kappa.json", doc, cfg);
  return {cfg.out_dir / "kappa.json"};
}

// ---------------------------------------------------------------------------
// run.log sidecar: the only artifact carrying timestamps.
// ---------------------------------------------------------------------------

void append_run_log(const RunConfig& cfg, const std::string& command,
                    const Written& wrote) {
  std::time_t now = std::chrono::system_clock::to_time_t(
      std::chrono::system_clock::now());
  std::tm tm_utc{};
#if defined(_WIN32)
  gmtime_s(&tm_utc, &now);
#else
  gmtime_r(&now, &tm_utc);
#endif
  char stamp[32];
  std::strftime(stamp, sizeof(stamp), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);

  std::string files;
  for (const fs::path& p : wrote) {
    if (!files.empty()) files += ",";
    files += p.filename().string();
  }
  std::ofstream log(cfg.out_dir / "run.log", std::ios::app);
  if (!log) throw IoError("cannot append to '" + (cfg.out_dir / "run.log").string() + "'");
  log << stamp << " command=" << command << " config_hash=" << cfg.config_hash
      << " seed=" << cfg.seed << " wrote=" << files << "\n";
}

}  // namespace

RunConfig parse_run_config(const std::string& json_text, const std::string& source) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ParseError("config " + source + ": " + e.what(), -1);
  }
  if (!j.is_object())
    throw ValidationError("config " + source + ": top level must be a JSON object");
  check_keys(j,
             {"corpus", "lexicon_dir", "template_dir", "split", "model", "debias",
              "eval", "mauve", "llm", "kappa", "out_dir", "seed"},
             "");

  RunConfig cfg;
  cfg.source_path = source;

  if (j.contains("corpus")) {
    const json& c = need_object(j["corpus"], "corpus");
    check_keys(c, {"main", "mr_augment"}, "corpus");
    if (c.contains("main")) cfg.corpus_main = get_string(c["main"], "corpus.main");
    if (c.contains("mr_augment"))
      cfg.corpus_mr = get_string(c["mr_augment"], "corpus.mr_augment");
  }
  if (j.contains("lexicon_dir"))
    cfg.lexicon_dir = get_string(j["lexicon_dir"], "lexicon_dir");
  if (j.contains("template_dir"))
    cfg.template_dir = get_string(j["template_dir"], "template_dir");

  if (j.contains("split")) {
    const json& s = need_object(j["split"], "split");
    check_keys(s, {"train_fraction", "stratify"}, "split");
    if (s.contains("train_fraction"))
      cfg.split.train_fraction = get_double(s["train_fraction"], "split.train_fraction");
    if (s.contains("stratify"))
      cfg.split.stratify_by_subgroup = get_bool(s["stratify"], "split.stratify");
  }

  if (j.contains("model")) {
    const json& m = need_object(j["model"], "model");
    check_keys(m, {"kind", "learning_rate", "epochs", "l2", "max_depth", "min_leaf"},
               "model");
    if (m.contains("kind")) {
      cfg.model_kind = get_string(m["kind"], "model.kind");
      if (cfg.model_kind != "logreg" && cfg.model_kind != "tree")
        throw ValidationError("config key 'model.kind' must be \"logreg\" or \"tree\"");
    }
    if (m.contains("learning_rate"))
      cfg.model.learning_rate = get_double(m["learning_rate"], "model.learning_rate");
    if (m.contains("epochs")) cfg.model.epochs = get_int(m["epochs"], "model.epochs");
    if (m.contains("l2")) cfg.model.l2 = get_double(m["l2"], "model.l2");
    if (m.contains("max_depth"))
      cfg.model.max_depth = get_int(m["max_depth"], "model.max_depth");
    if (m.contains("min_leaf"))
      cfg.model.min_leaf = get_int(m["min_leaf"], "model.min_leaf");
  }

  if (j.contains("debias")) {
    const json& d = need_object(j["debias"], "debias");
    check_keys(d, {"rule"}, "debias");
    if (d.contains("rule"))
      cfg.debias_rule =
          stats::debias_rule_from_string(get_string(d["rule"], "debias.rule"));
  }

  if (j.contains("eval")) {
    const json& e = need_object(j["eval"], "eval");
    check_keys(e, {"threshold"}, "eval");
    if (e.contains("threshold")) {
      cfg.eval_threshold = get_double(e["threshold"], "eval.threshold");
      if (cfg.eval_threshold < 0.0 || cfg.eval_threshold > 1.0)
        throw ValidationError("config key 'eval.threshold' must lie in [0, 1]");
    }
  }

  if (j.contains("mauve")) {
    const json& m = need_object(j["mauve"], "mauve");
    check_keys(m,
               {"num_clusters", "scaling_constant", "grid_size", "epsilon",
                "embeddings_p", "embeddings_q"},
               "mauve");
    if (m.contains("num_clusters"))
      cfg.mauve_cfg.num_clusters =
          static_cast<std::size_t>(get_u64(m["num_clusters"], "mauve.num_clusters"));
    if (m.contains("scaling_constant"))
      cfg.mauve_cfg.scaling_constant =
          get_double(m["scaling_constant"], "mauve.scaling_constant");
    if (m.contains("grid_size"))
      cfg.mauve_cfg.grid_size =
          static_cast<std::size_t>(get_u64(m["grid_size"], "mauve.grid_size"));
    if (m.contains("epsilon"))
      cfg.mauve_cfg.epsilon = get_double(m["epsilon"], "mauve.epsilon");
    if (m.contains("embeddings_p"))
      cfg.embeddings_p = get_string(m["embeddings_p"], "mauve.embeddings_p");
    if (m.contains("embeddings_q"))
      cfg.embeddings_q = get_string(m["embeddings_q"], "mauve.embeddings_q");
  }

  if (j.contains("llm")) {
    const json& l = need_object(j["llm"], "llm");
    check_keys(l,
               {"base_url", "api_key_env_var", "model", "temperature", "max_tokens",
                "timeout_seconds", "max_retries", "requests_per_minute",
                "backoff_base_seconds", "target_label", "min_body_words",
                "max_articles"},
               "llm");
    if (l.contains("base_url"))
      cfg.llm.base_url = get_string(l["base_url"], "llm.base_url");
    if (l.contains("api_key_env_var"))
      cfg.llm.api_key_env_var = get_string(l["api_key_env_var"], "llm.api_key_env_var");
    if (l.contains("model")) cfg.llm.model = get_string(l["model"], "llm.model");
    if (l.contains("temperature"))
      cfg.llm.temperature = get_double(l["temperature"], "llm.temperature");
    if (l.contains("max_tokens"))
      cfg.llm.max_tokens = get_int(l["max_tokens"], "llm.max_tokens");
    if (l.contains("timeout_seconds"))
      cfg.llm.timeout_seconds = get_double(l["timeout_seconds"], "llm.timeout_seconds");
    if (l.contains("max_retries"))
      cfg.llm.max_retries = get_int(l["max_retries"], "llm.max_retries");
    if (l.contains("requests_per_minute"))
      cfg.llm.requests_per_minute =
          get_double(l["requests_per_minute"], "llm.requests_per_minute");
    if (l.contains("backoff_base_seconds"))
      cfg.llm.backoff_base_seconds =
          get_double(l["backoff_base_seconds"], "llm.backoff_base_seconds");
    if (l.contains("target_label")) {
      cfg.llm_target_label = get_string(l["target_label"], "llm.target_label");
      if (cfg.llm_target_label != "fake" && cfg.llm_target_label != "real")
        throw ValidationError(
            "config key 'llm.target_label' must be \"fake\" or \"real\"");
    }
    if (l.contains("min_body_words")) {
      cfg.llm_min_body_words = get_int(l["min_body_words"], "llm.min_body_words");
      if (cfg.llm_min_body_words < 0)
        throw ValidationError("config key 'llm.min_body_words' must be >= 0");
    }
    if (l.contains("max_articles")) {
      cfg.llm_max_articles = get_int(l["max_articles"], "llm.max_articles");
      if (cfg.llm_max_articles < 0)
        throw ValidationError("config key 'llm.max_articles' must be >= 0");
    }
  }

  if (j.contains("kappa")) {
    const json& k = need_object(j["kappa"], "kappa");
    check_keys(k, {"annotations_a", "annotations_b"}, "kappa");
    if (k.contains("annotations_a"))
      cfg.annotations_a = get_string(k["annotations_a"], "kappa.annotations_a");
    if (k.contains("annotations_b"))
      cfg.annotations_b = get_string(k["annotations_b"], "kappa.annotations_b");
  }

  if (j.contains("out_dir")) cfg.out_dir = get_string(j["out_dir"], "out_dir");
  if (j.contains("seed")) cfg.seed = get_u64(j["seed"], "seed");

  if (cfg.split.train_fraction <= 0.0 || cfg.split.train_fraction >= 1.0)
    throw ValidationError("config key 'split.train_fraction' must lie in (0, 1)");

  propagate_seed(cfg);
  cfg.config_hash = fnv1a64_hex(effective_config_json(cfg).dump());
  return cfg;
}

RunConfig load_run_config(const std::filesystem::path& file,
                          const std::optional<std::string>& out_override,
                          const std::optional<std::uint64_t>& seed_override) {
  if (!fs::exists(file))
    throw ValidationError("config file '" + file.string() + "' does not exist");
  RunConfig cfg = parse_run_config(slurp(file), file.string());
  if (out_override) cfg.out_dir = *out_override;
  if (seed_override) cfg.seed = *seed_override;
  propagate_seed(cfg);
  cfg.config_hash = fnv1a64_hex(effective_config_json(cfg).dump());
  return cfg;
}

std::vector<std::filesystem::path> run_command(const std::string& command,
                                               const RunConfig& cfg) {
  using Handler = Written (*)(const RunConfig&);
  static const std::map<std::string, Handler> dispatch = {
      {"ingest", cmd_ingest},   {"extract", cmd_extract},
      {"audit", cmd_audit},     {"train", cmd_train},
      {"eval", cmd_eval},       {"compare", cmd_compare},
      {"augment", cmd_augment}, {"generate", cmd_generate},
      {"mauve", cmd_mauve},     {"kappa", cmd_kappa}};
  auto it = dispatch.find(command);
  if (it == dispatch.end()) {
    std::string names;
    for (const std::string& n : command_names())
      names += (names.empty() ? "" : ", ") + n;
    throw ValidationError("unknown command '" + command + "' (expected one of: " +
                          names + ")");
  }
  std::error_code ec;
  fs::create_directories(cfg.out_dir, ec);
  if (ec)
    throw IoError("cannot create output directory '" + cfg.out_dir.string() +
                  "': " + ec.message());
  Written wrote = it->second(cfg);
  append_run_log(cfg, command, wrote);
  return wrote;
}

}  // namespace newsaudit::pipeline
