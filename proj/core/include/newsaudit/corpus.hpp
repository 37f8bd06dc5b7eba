#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace newsaudit {

enum class Label : int { real = 0, fake = 1 };
enum class Source : int { human = 0, machine = 1 };

// The four authorship/veracity subgroups. HR = human real, HF = human fake,
// MF = machine fake, MR = machine real.
enum class Subgroup : int { HR = 0, HF = 1, MF = 2, MR = 3 };

Subgroup subgroup_of(Label label, Source source);
std::string to_string(Subgroup g);
std::string to_string(Label l);
std::string to_string(Source s);
Label label_from_string(const std::string& s);
Source source_from_string(const std::string& s);
Subgroup subgroup_from_string(const std::string& s);

struct Article {
  std::string id;
  std::string title;
  std::string text;
  Label label = Label::real;
  Source source = Source::human;
  // Seed article a machine-generated item was derived from.
  std::optional<std::string> origin_id;

  Subgroup subgroup() const { return subgroup_of(label, source); }
};

// Immutable after load; safe to share read-only across workers.
struct Corpus {
  std::string name;
  std::vector<Article> articles;

  std::size_t size() const { return articles.size(); }
  bool empty() const { return articles.empty(); }
  const Article* find(const std::string& id) const;
};

struct SplitSpec {
  double train_fraction = 0.8;  // must lie in (0,1)
  std::uint64_t seed = 0;
  bool stratify_by_subgroup = true;
};

// Validates every Article and Corpus invariant; throws ValidationError with
// the offending ids on failure.
void validate_corpus(const Corpus& corpus);

// Reads a UTF-8 JSON Lines corpus file: one object per line with required
// keys id, title, text, label ("real"|"fake"), source ("human"|"machine"),
// optional origin_id. Throws ParseError (with line number) or ValidationError.
Corpus load_corpus(const std::string& path, const std::string& name);
Corpus parse_corpus(std::istream& in, const std::string& name);

// Writes the corpus back as JSON Lines, one article per line, in order.
void save_corpus(const Corpus& corpus, const std::string& path);
std::string corpus_to_jsonl(const Corpus& corpus);

// Deterministic train/test partition. When stratifying, each subgroup's
// train share is within one article of train_fraction. Article order within
// each part follows the input corpus order.
std::pair<Corpus, Corpus> split(const Corpus& corpus, const SplitSpec& spec);

// Set union of two corpora with disjoint id sets; base order then extra order.
Corpus augment(const Corpus& base, const Corpus& extra);

std::map<Subgroup, std::size_t> subgroup_counts(const Corpus& corpus);

}  // namespace newsaudit
