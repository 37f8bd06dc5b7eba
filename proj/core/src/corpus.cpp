#include "newsaudit/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <random>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include <nlohmann/json.hpp>

#include "newsaudit/errors.hpp"

namespace newsaudit {

using nlohmann::json;

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::string join_ids(const std::vector<std::string>& ids, std::size_t cap = 10) {
  std::string out;
  for (std::size_t i = 0; i < ids.size() && i < cap; ++i) {
    if (i) out += ", ";
    out += ids[i];
  }
  if (ids.size() > cap) out += ", and " + std::to_string(ids.size() - cap) + " more";
  return out;
}

}  // namespace

Subgroup subgroup_of(Label label, Source source) {
  if (source == Source::human) return label == Label::real ? Subgroup::HR : Subgroup::HF;
  return label == Label::real ? Subgroup::MR : Subgroup::MF;
}

std::string to_string(Subgroup g) {
  switch (g) {
    case Subgroup::HR: return "HR";
    case Subgroup::HF: return "HF";
    case Subgroup::MF: return "MF";
    case Subgroup::MR: return "MR";
  }
  return "??";
}

std::string to_string(Label l) { return l == Label::real ? "real" : "fake"; }
std::string to_string(Source s) { return s == Source::human ? "human" : "machine"; }

Label label_from_string(const std::string& s) {
  if (s == "real") return Label::real;
  if (s == "fake") return Label::fake;
  throw ValidationError("unknown label '" + s + "' (expected \"real\" or \"fake\")");
}

Source source_from_string(const std::string& s) {
  if (s == "human") return Source::human;
  if (s == "machine") return Source::machine;
  throw ValidationError("unknown source '" + s + "' (expected \"human\" or \"machine\")");
}

Subgroup subgroup_from_string(const std::string& s) {
  if (s == "HR") return Subgroup::HR;
  if (s == "HF") return Subgroup::HF;
  if (s == "MF") return Subgroup::MF;
  if (s == "MR") return Subgroup::MR;
  throw ValidationError("unknown subgroup '" + s + "'");
}

const Article* Corpus::find(const std::string& id) const {
  for (const auto& a : articles)
    if (a.id == id) return &a;
  return nullptr;
}

void validate_corpus(const Corpus& corpus) {
  std::unordered_map<std::string, const Article*> by_id;
  std::vector<std::string> dup_ids, empty_ids, bad_origin;
  for (const auto& a : corpus.articles) {
    if (a.id.empty()) throw ValidationError("corpus '" + corpus.name + "': article with empty id");
    if (!by_id.emplace(a.id, &a).second) dup_ids.push_back(a.id);
    if (trim(a.title).empty() || trim(a.text).empty()) empty_ids.push_back(a.id);
  }
  // origin_id may point outside this corpus (the seed corpus is usually a
  // separate file); when the target is present here, it must be human-written.
  for (const auto& a : corpus.articles) {
    if (!a.origin_id) continue;
    auto it = by_id.find(*a.origin_id);
    if (it != by_id.end() && it->second->source != Source::human) bad_origin.push_back(a.id);
  }
  if (!dup_ids.empty())
    throw ValidationError("corpus '" + corpus.name + "': duplicate ids: " + join_ids(dup_ids));
  if (!empty_ids.empty())
    throw ValidationError("corpus '" + corpus.name +
                          "': empty title or text for ids: " + join_ids(empty_ids));
  if (!bad_origin.empty())
    throw ValidationError("corpus '" + corpus.name +
                          "': origin_id must reference a human-written article, violated by: " +
                          join_ids(bad_origin));
}

Corpus parse_corpus(std::istream& in, const std::string& name) {
  Corpus corpus;
  corpus.name = name;
  std::string line;
  long lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::parse_error& e) {
      throw ParseError(std::string("invalid JSON: ") + e.what(), lineno);
    }
    if (!j.is_object()) throw ParseError("expected a JSON object", lineno);
    for (const char* key : {"id", "title", "text", "label", "source"}) {
      if (!j.contains(key)) throw ParseError(std::string("missing key \"") + key + "\"", lineno);
    }
    Article a;
    try {
      a.id = j.at("id").get<std::string>();
      a.title = j.at("title").get<std::string>();
      a.text = j.at("text").get<std::string>();
      a.label = label_from_string(j.at("label").get<std::string>());
      a.source = source_from_string(j.at("source").get<std::string>());
      if (j.contains("origin_id") && !j.at("origin_id").is_null())
        a.origin_id = j.at("origin_id").get<std::string>();
    } catch (const ValidationError& e) {
      throw ParseError(e.what(), lineno);
    } catch (const json::exception& e) {
      throw ParseError(std::string("bad field type: ") + e.what(), lineno);
    }
    corpus.articles.push_back(std::move(a));
  }
  validate_corpus(corpus);
  return corpus;
}

Corpus load_corpus(const std::string& path, const std::string& name) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open corpus file: " + path);
  try {
    return parse_corpus(in, name);
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what(), -1);
  }
}

std::string corpus_to_jsonl(const Corpus& corpus) {
  std::ostringstream out;
  for (const auto& a : corpus.articles) {
    json j;
    j["id"] = a.id;
    j["title"] = a.title;
    j["text"] = a.text;
    j["label"] = to_string(a.label);
    j["source"] = to_string(a.source);
    if (a.origin_id) j["origin_id"] = *a.origin_id;
    out << j.dump() << "\n";
  }
  return out.str();
}

void save_corpus(const Corpus& corpus, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write corpus file: " + path);
  out << corpus_to_jsonl(corpus);
}

namespace {

// Explicit uniform index draw so partitions do not depend on the standard
// library's distribution implementations.
std::size_t draw_index(std::mt19937_64& rng, std::size_t n) {
  return static_cast<std::size_t>(rng() % n);
}

void shuffle_indices(std::vector<std::size_t>& idx, std::mt19937_64& rng) {
  for (std::size_t i = idx.size(); i > 1; --i) std::swap(idx[i - 1], idx[draw_index(rng, i)]);
}

}  // namespace

std::pair<Corpus, Corpus> split(const Corpus& corpus, const SplitSpec& spec) {
  if (corpus.empty()) throw ValidationError("split: corpus is empty");
  if (!(spec.train_fraction > 0.0 && spec.train_fraction < 1.0))
    throw ValidationError("split: train_fraction must lie in (0,1)");

  std::vector<std::vector<std::size_t>> buckets;
  if (spec.stratify_by_subgroup) {
    buckets.assign(4, {});
    for (std::size_t i = 0; i < corpus.articles.size(); ++i)
      buckets[static_cast<int>(corpus.articles[i].subgroup())].push_back(i);
    buckets.erase(std::remove_if(buckets.begin(), buckets.end(),
                                 [](const auto& b) { return b.empty(); }),
                  buckets.end());
    for (const auto& b : buckets) {
      if (b.size() < 2)
        throw ValidationError("split: subgroup " +
                              to_string(corpus.articles[b.front()].subgroup()) +
                              " has fewer than 2 articles, cannot stratify");
    }
  } else {
    buckets.emplace_back();
    for (std::size_t i = 0; i < corpus.articles.size(); ++i) buckets[0].push_back(i);
  }

  std::mt19937_64 rng(spec.seed);
  std::vector<bool> in_train(corpus.articles.size(), false);
  for (auto& bucket : buckets) {
    shuffle_indices(bucket, rng);
    // round-half-up keeps the train share within one article of the fraction
    auto take = static_cast<std::size_t>(spec.train_fraction * bucket.size() + 0.5);
    take = std::min(std::max<std::size_t>(take, 1), bucket.size() - 1);
    for (std::size_t i = 0; i < take; ++i) in_train[bucket[i]] = true;
  }

  Corpus train, test;
  train.name = corpus.name + ".train";
  test.name = corpus.name + ".test";
  for (std::size_t i = 0; i < corpus.articles.size(); ++i)
    (in_train[i] ? train : test).articles.push_back(corpus.articles[i]);
  return {std::move(train), std::move(test)};
}

Corpus augment(const Corpus& base, const Corpus& extra) {
  std::unordered_set<std::string> ids;
  for (const auto& a : base.articles) ids.insert(a.id);
  std::vector<std::string> collisions;
  for (const auto& a : extra.articles)
    if (ids.count(a.id)) collisions.push_back(a.id);
  if (!collisions.empty())
    throw ValidationError("augment: id collision between corpora: " + join_ids(collisions));
  Corpus out;
  out.name = base.name + "+" + extra.name;
  out.articles = base.articles;
  out.articles.insert(out.articles.end(), extra.articles.begin(), extra.articles.end());
  return out;
}

std::map<Subgroup, std::size_t> subgroup_counts(const Corpus& corpus) {
  std::map<Subgroup, std::size_t> counts{{Subgroup::HR, 0}, {Subgroup::HF, 0},
                                         {Subgroup::MF, 0}, {Subgroup::MR, 0}};
  for (const auto& a : corpus.articles) ++counts[a.subgroup()];
  return counts;
}

}  // namespace newsaudit
