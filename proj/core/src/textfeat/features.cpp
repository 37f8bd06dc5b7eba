#include "newsaudit/textfeat/features.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <map>
#include <regex>
#include <sstream>

#include "newsaudit/detail/format.hpp"
#include "newsaudit/errors.hpp"
#include "newsaudit/textfeat/pos_tagger.hpp"
#include "newsaudit/textfeat/sentiment.hpp"
#include "newsaudit/textfeat/syllables.hpp"
#include "newsaudit/textfeat/tokenize.hpp"

namespace newsaudit::textfeat {

namespace {

std::string lower(const std::string& s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

// Walks the token sequence matching lexicon entries greedily (longest phrase
// first, no overlap) and hands each matched entry to `fn`.
template <typename Fn>
void for_each_hit(const std::vector<std::string>& lower_tokens, const Lexicon& lexicon,
                  Fn&& fn) {
  const std::size_t n = lower_tokens.size();
  for (std::size_t i = 0; i < n;) {
    std::size_t matched_len = 0;
    const LexiconEntry* matched = nullptr;
    std::size_t longest = std::min(lexicon.max_phrase_tokens, n - i);
    for (std::size_t len = longest; len >= 1; --len) {
      std::string candidate = lower_tokens[i];
      for (std::size_t j = 1; j < len; ++j) {
        candidate += ' ';
        candidate += lower_tokens[i + j];
      }
      if (const LexiconEntry* e = lexicon.find(candidate)) {
        matched = e;
        matched_len = len;
        break;
      }
    }
    if (matched) {
      fn(*matched);
      i += matched_len;
    } else {
      ++i;
    }
  }
}

bool is_all_caps_word(const std::string& token) {
  bool has_letter = false;
  for (unsigned char c : token) {
    if (std::isalpha(c)) {
      has_letter = true;
      if (std::islower(c)) return false;
    }
  }
  return has_letter;
}

const std::vector<std::pair<const char*, FeatureGroup>>& schema_spec() {
  using G = FeatureGroup;
  static const std::vector<std::pair<const char*, FeatureGroup>> spec = {
      // style: punctuation, capitalization, stopwords, POS frequencies
      {"quotes", G::style},   {"exclaim", G::style}, {"allpunc", G::style},
      {"allcaps", G::style},  {"stops", G::style},   {"CC", G::style},
      {"CD", G::style},       {"DT", G::style},      {"IN", G::style},
      {"JJ", G::style},       {"MD", G::style},      {"NNS", G::style},
      {"NNP", G::style},      {"PRP", G::style},     {"PRP$", G::style},
      {"RB", G::style},       {"TO", G::style},      {"WP$", G::style},
      {"WRB", G::style},      {"VB", G::style},      {"VBD", G::style},
      {"VBG", G::style},      {"VBN", G::style},     {"VBZ", G::style},
      {"WDT", G::style},
      // complexity
      {"ttr", G::complexity},          {"avg_wordlen", G::complexity},
      {"word_count", G::complexity},   {"smog_index", G::complexity},
      {"coleman_liau_index", G::complexity},
      // bias
      {"bias_words", G::bias},   {"assertatives", G::bias},
      {"hedges", G::bias},       {"implicatives", G::bias},
      {"report_verbs", G::bias}, {"positive_opinion_words", G::bias},
      {"negative_opinion_words", G::bias},
      // affect
      {"vadneg", G::affect}, {"vadneu", G::affect}, {"vadpos", G::affect},
      {"wneg", G::affect},   {"wpos", G::affect},   {"wneu", G::affect},
      {"sneg", G::affect},   {"spos", G::affect},
      // moral
      {"IngroupVirtue", G::moral}, {"IngroupVice", G::moral},
      {"AuthorityVice", G::moral}, {"PurityVirtue", G::moral},
      // event
      {"num_dates", G::event},
  };
  return spec;
}

}  // namespace

std::string to_string(FeatureGroup g) {
  switch (g) {
    case FeatureGroup::style: return "style";
    case FeatureGroup::complexity: return "complexity";
    case FeatureGroup::bias: return "bias";
    case FeatureGroup::affect: return "affect";
    case FeatureGroup::moral: return "moral";
    case FeatureGroup::event: return "event";
  }
  return "style";
}

FeatureSchema::FeatureSchema() {
  for (const auto& [name, group] : schema_spec()) {
    index_.emplace(name, names_.size());
    names_.emplace_back(name);
    groups_.push_back(group);
  }
}

const FeatureSchema& FeatureSchema::instance() {
  static const FeatureSchema schema;
  return schema;
}

std::size_t FeatureSchema::index(const std::string& name) const {
  auto it = index_.find(name);
  if (it == index_.end()) throw ValidationError("unknown feature: " + name);
  return it->second;
}

FeatureGroup FeatureSchema::group(const std::string& name) const {
  return groups_[index(name)];
}

std::size_t count_date_expressions(const std::string& text) {
  // Lowercase copy; date expressions are ASCII.
  std::string low = lower(text);

  // Alternatives ordered longest-first so "january 5, 2020" wins over the
  // bare-year alternative.
  static const std::regex grammar(
      "\\b(january|february|march|april|may|june|july|august|september|october|"
      "november|december|jan|feb|mar|apr|jun|jul|aug|sep|sept|oct|nov|dec)\\.?\\s+"
      "\\d{1,2}(st|nd|rd|th)?(,?\\s+\\d{4})?\\b"  // month day [, year]
      "|\\b\\d{1,2}(st|nd|rd|th)?\\s+(january|february|march|april|may|june|july|"
      "august|september|october|november|december)(\\s+\\d{4})?\\b"  // day month [year]
      "|\\b(january|february|march|april|june|july|august|september|october|"
      "november|december)\\s+\\d{4}\\b"       // month year ("may 2020" excluded: modal)
      "|\\b\\d{1,2}[/-]\\d{1,2}[/-]\\d{2,4}\\b"  // 12/31/2020, 31-12-99
      "|\\b(19|20)\\d{2}\\b"                      // standalone year 1900-2099
      "|\\b(monday|tuesday|wednesday|thursday|friday|saturday|sunday)\\b"
      "|\\b(yesterday|today|tomorrow|tonight)\\b",
      std::regex::ECMAScript | std::regex::optimize);

  auto begin = std::sregex_iterator(low.begin(), low.end(), grammar);
  return static_cast<std::size_t>(std::distance(begin, std::sregex_iterator()));
}

FeatureVector extract_features(const Article& article, const LexiconSet& lexicons) {
  std::string content = article.title;
  if (!content.empty() && !article.text.empty()) content += "\n";
  content += article.text;

  TokenizedDoc doc = tokenize(content);
  std::vector<std::string> tags = pos_tag(doc);

  const double n_tokens = static_cast<double>(doc.tokens.size());
  const double n_words = static_cast<double>(doc.words);
  const double n_sents = static_cast<double>(doc.sentences_count);

  // token-level tallies
  std::size_t quotes = 0, exclaims = 0, allpunc = 0, allcaps = 0;
  std::size_t polysyllables = 0;
  std::vector<std::string> lower_words;
  lower_words.reserve(doc.words);
  std::map<std::string, std::size_t> distinct_words;
  for (std::size_t i = 0; i < doc.tokens.size(); ++i) {
    const std::string& tok = doc.tokens[i];
    if (doc.token_is_word(i)) {
      if (is_all_caps_word(tok)) ++allcaps;
      std::string low = lower(tok);
      ++distinct_words[low];
      // syllables counted over the alphabetic characters of the token
      std::string alpha;
      for (unsigned char c : low)
        if (std::isalpha(c)) alpha.push_back(static_cast<char>(c));
      if (!alpha.empty() && count_syllables(alpha) >= 3) ++polysyllables;
      lower_words.push_back(std::move(low));
    } else {
      ++allpunc;
      if (tok == "\"") ++quotes;
      else if (tok == "!") ++exclaims;
    }
  }

  // POS tag tallies for the schema's tag subset
  std::map<std::string, std::size_t> tag_counts;
  for (const auto& t : tags) ++tag_counts[t];

  // lexicon tallies
  const std::size_t stops = count_lexicon_hits(lower_words, lexicons.stopwords);
  const std::size_t bias = count_lexicon_hits(lower_words, lexicons.bias_words);
  const std::size_t assertives = count_lexicon_hits(lower_words, lexicons.assertives);
  const std::size_t hedges = count_lexicon_hits(lower_words, lexicons.hedges);
  const std::size_t implicatives =
      count_lexicon_hits(lower_words, lexicons.implicatives);
  const std::size_t report_verbs =
      count_lexicon_hits(lower_words, lexicons.report_verbs);
  const std::size_t opinion_pos =
      count_lexicon_hits(lower_words, lexicons.opinion_positive);
  const std::size_t opinion_neg =
      count_lexicon_hits(lower_words, lexicons.opinion_negative);

  // subjectivity hits bucketed by strength x polarity
  std::size_t wneg = 0, wpos = 0, wneu = 0, sneg = 0, spos = 0, sneu = 0;
  for_each_hit(lower_words, lexicons.subjectivity, [&](const LexiconEntry& e) {
    const bool weak = e.strength == Strength::weak;
    switch (*e.polarity) {
      case Polarity::negative: ++(weak ? wneg : sneg); break;
      case Polarity::positive: ++(weak ? wpos : spos); break;
      case Polarity::neutral: ++(weak ? wneu : sneu); break;
    }
  });
  (void)sneu;  // computed for symmetry; not part of the schema

  // all ten moral categories; four surface in the schema
  std::map<std::string, std::size_t> moral_counts;
  for (const auto& cat : moral_categories()) moral_counts[cat] = 0;
  for_each_hit(lower_words, lexicons.moral,
               [&](const LexiconEntry& e) { ++moral_counts[*e.moral]; });

  const SentimentScores senti = sentiment_scores(doc, lexicons.sentiment);
  const std::size_t dates = count_date_expressions(content);

  // assemble in schema order
  const auto per_token = [&](std::size_t c) {
    return n_tokens > 0 ? static_cast<double>(c) / n_tokens : 0.0;
  };
  const auto per_word = [&](std::size_t c) {
    return n_words > 0 ? static_cast<double>(c) / n_words : 0.0;
  };
  const auto tag_share = [&](const char* tag) {
    auto it = tag_counts.find(tag);
    return per_token(it == tag_counts.end() ? 0 : it->second);
  };

  FeatureVector fv;
  fv.article_id = article.id;
  fv.values.reserve(FeatureSchema::instance().size());
  auto push = [&](double v) { fv.values.push_back(v); };

  push(per_token(quotes));
  push(per_token(exclaims));
  push(per_token(allpunc));
  push(per_word(allcaps));
  push(per_token(stops));
  for (const char* tag : {"CC", "CD", "DT", "IN", "JJ", "MD", "NNS", "NNP", "PRP",
                          "PRP$", "RB", "TO", "WP$", "WRB", "VB", "VBD", "VBG", "VBN",
                          "VBZ", "WDT"})
    push(tag_share(tag));

  push(n_words > 0 ? static_cast<double>(distinct_words.size()) / n_words : 0.0);
  push(n_words > 0 ? static_cast<double>(doc.letters) / n_words : 0.0);
  push(n_words);
  // SMOG applied regardless of the canonical 30-sentence minimum
  push(n_words > 0 && n_sents > 0
           ? 1.0430 * std::sqrt(static_cast<double>(polysyllables) * 30.0 / n_sents) +
                 3.1291
           : 0.0);
  if (n_words > 0) {
    const double letters_per_100 = 100.0 * static_cast<double>(doc.letters) / n_words;
    const double sents_per_100 = 100.0 * n_sents / n_words;
    push(0.0588 * letters_per_100 - 0.296 * sents_per_100 - 15.8);
  } else {
    push(0.0);
  }

  push(per_token(bias));
  push(per_token(assertives));
  push(per_token(hedges));
  push(per_token(implicatives));
  push(per_token(report_verbs));
  push(per_token(opinion_pos));
  push(per_token(opinion_neg));

  push(senti.neg);
  push(senti.neu);
  push(senti.pos);
  push(per_token(wneg));
  push(per_token(wpos));
  push(per_token(wneu));
  push(per_token(sneg));
  push(per_token(spos));

  push(per_token(moral_counts["IngroupVirtue"]));
  push(per_token(moral_counts["IngroupVice"]));
  push(per_token(moral_counts["AuthorityVice"]));
  push(per_token(moral_counts["PurityVirtue"]));

  push(per_token(dates));
  return fv;
}

FeatureMatrix extract_matrix(const Corpus& corpus, const LexiconSet& lexicons) {
  FeatureMatrix matrix;
  matrix.article_ids.reserve(corpus.articles.size());
  matrix.subgroups.reserve(corpus.articles.size());
  matrix.rows.reserve(corpus.articles.size());
  for (const Article& article : corpus.articles) {
    FeatureVector fv = extract_features(article, lexicons);
    matrix.article_ids.push_back(fv.article_id);
    matrix.subgroups.push_back(article.subgroup());
    matrix.rows.push_back(std::move(fv.values));
  }
  return matrix;
}

void save_feature_matrix(std::ostream& out, const FeatureMatrix& matrix,
                         const std::vector<std::string>& meta) {
  for (const auto& line : meta) out << "# " << line << "\n";
  out << "article_id,subgroup";
  for (const auto& name : FeatureSchema::instance().names())
    out << ',' << detail::csv_field(name);
  out << "\n";
  for (std::size_t r = 0; r < matrix.rows.size(); ++r) {
    out << detail::csv_field(matrix.article_ids[r]) << ','
        << to_string(matrix.subgroups[r]);
    for (double v : matrix.rows[r]) out << ',' << detail::format_double(v);
    out << "\n";
  }
}

void save_feature_matrix(const std::filesystem::path& file, const FeatureMatrix& matrix,
                         const std::vector<std::string>& meta) {
  std::ofstream out(file);
  if (!out) throw IoError("cannot write feature matrix: " + file.string());
  save_feature_matrix(out, matrix, meta);
  if (!out) throw IoError("failed writing feature matrix: " + file.string());
}

FeatureMatrix parse_feature_matrix(std::istream& in) {
  const auto& schema = FeatureSchema::instance();
  FeatureMatrix matrix;
  std::string line;
  std::size_t line_no = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    auto fields = detail::split_csv_line(line);
    if (!header_seen) {
      if (fields.size() != schema.size() + 2 || fields[0] != "article_id" ||
          fields[1] != "subgroup")
        throw ParseError("feature matrix header mismatch", line_no);
      for (std::size_t i = 0; i < schema.size(); ++i)
        if (fields[i + 2] != schema.names()[i])
          throw ParseError("feature matrix header mismatch at column " +
                               std::to_string(i + 2) + ": expected '" +
                               schema.names()[i] + "', got '" + fields[i + 2] + "'",
                           line_no);
      header_seen = true;
      continue;
    }
    if (fields.size() != schema.size() + 2)
      throw ParseError("expected " + std::to_string(schema.size() + 2) +
                           " fields, got " + std::to_string(fields.size()),
                       line_no);
    matrix.article_ids.push_back(fields[0]);
    matrix.subgroups.push_back(subgroup_from_string(fields[1]));
    std::vector<double> row;
    row.reserve(schema.size());
    for (std::size_t i = 0; i < schema.size(); ++i) {
      try {
        std::size_t used = 0;
        double v = std::stod(fields[i + 2], &used);
        if (used != fields[i + 2].size()) throw std::invalid_argument("trailing");
        row.push_back(v);
      } catch (const std::exception&) {
        throw ParseError("bad numeric value '" + fields[i + 2] + "'", line_no);
      }
    }
    matrix.rows.push_back(std::move(row));
  }
  if (!header_seen) throw ParseError("feature matrix has no header", 1);
  return matrix;
}

FeatureMatrix load_feature_matrix(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw IoError("cannot open feature matrix: " + file.string());
  try {
    return parse_feature_matrix(in);
  } catch (const ParseError& e) {
    throw ParseError(file.string() + ": " + e.what(), 0);
  }
}

}  // namespace newsaudit::textfeat
