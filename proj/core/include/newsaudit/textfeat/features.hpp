#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <unordered_map>
#include <vector>

#include "newsaudit/corpus.hpp"
#include "newsaudit/textfeat/lexicon.hpp"

namespace newsaudit::textfeat {

enum class FeatureGroup { style, complexity, bias, affect, moral, event };

std::string to_string(FeatureGroup g);

// The canonical feature schema: 50 named features in fixed order
// (25 style, 5 complexity, 7 bias, 8 affect, 4 moral, 1 event).
// The order never changes; every feature matrix row aligns to it.
class FeatureSchema {
 public:
  static const FeatureSchema& instance();

  const std::vector<std::string>& names() const { return names_; }
  std::size_t size() const { return names_.size(); }
  // Throws ValidationError for unknown feature names.
  std::size_t index(const std::string& name) const;
  FeatureGroup group(const std::string& name) const;
  bool has(const std::string& name) const { return index_.count(name) > 0; }

 private:
  FeatureSchema();
  std::vector<std::string> names_;
  std::vector<FeatureGroup> groups_;
  std::unordered_map<std::string, std::size_t> index_;
};

// One article's feature values, aligned to FeatureSchema::names().
struct FeatureVector {
  std::string article_id;
  std::vector<double> values;
};

// Feature rows for a whole corpus, aligned to FeatureSchema. Rows keep the
// corpus article order.
struct FeatureMatrix {
  std::vector<std::string> article_ids;
  std::vector<Subgroup> subgroups;
  std::vector<std::vector<double>> rows;

  std::size_t size() const { return rows.size(); }
};

// Computes the 50-feature vector for one article over the concatenation of
// title and body text.
//
// Normalizations: punctuation, POS, and lexicon counts divide by total token
// count; allcaps divides by word count; ttr = distinct lowercased words /
// words; avg_wordlen = letters / words; word_count is raw;
// smog_index = 1.0430 * sqrt(polysyllables * 30 / sentences) + 3.1291;
// coleman_liau_index = 0.0588*L - 0.296*S - 15.8 with L = letters per 100
// words, S = sentences per 100 words; vadneg/vadneu/vadpos come from
// sentiment_scores; num_dates = date-expression matches / tokens. Documents
// with zero word tokens define every word-denominated feature as 0.
//
// Pure function of (article, lexicons); throws ValidationError via tokenize
// when the article has no text.
FeatureVector extract_features(const Article& article, const LexiconSet& lexicons);

// extract_features over every article in corpus order.
FeatureMatrix extract_matrix(const Corpus& corpus, const LexiconSet& lexicons);

// Counts date expressions in the text: month-name dates ("january 5, 2020",
// "5 january", "march 2021"), numeric dates (12/31/2020, 31-12-99),
// standalone years 1900-2099, weekday names, and the relative expressions
// yesterday / today / tomorrow / tonight. Matching is case-insensitive and
// non-overlapping, longest-alternative-first.
std::size_t count_date_expressions(const std::string& text);

// CSV round-trip for feature matrices. The header row is
// `article_id,subgroup,<schema names...>`; any `meta` strings are written
// first as `# <line>` comments. load skips comment lines and validates the
// header against the schema.
void save_feature_matrix(std::ostream& out, const FeatureMatrix& matrix,
                         const std::vector<std::string>& meta = {});
void save_feature_matrix(const std::filesystem::path& file, const FeatureMatrix& matrix,
                         const std::vector<std::string>& meta = {});
FeatureMatrix parse_feature_matrix(std::istream& in);
FeatureMatrix load_feature_matrix(const std::filesystem::path& file);

}  // namespace newsaudit::textfeat
