#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace newsaudit::textfeat {

// Attribute vocabulary for lexicon entries.
enum class Polarity { positive, negative, neutral };
enum class Strength { weak, strong };

std::string to_string(Polarity p);
std::string to_string(Strength s);

// The ten moral-foundation categories accepted by `moral=` attributes,
// in canonical order (five foundations x virtue/vice).
const std::vector<std::string>& moral_categories();

// Per-entry attributes. All optional; which ones are required depends on the
// lexicon (see validate_lexicon_set).
struct LexiconEntry {
  std::optional<double> valence;        // sentiment strength in [-4, 4]
  std::optional<Polarity> polarity;     // subjectivity polarity
  std::optional<Strength> strength;     // weak/strong subjectivity
  std::optional<std::string> moral;     // one of moral_categories()
};

// A word/phrase list with optional per-entry attributes. Entries are stored
// lowercased; multi-word phrases are token-joined with single spaces.
struct Lexicon {
  std::string name;
  std::unordered_map<std::string, LexiconEntry> entries;
  std::size_t max_phrase_tokens = 1;

  bool contains(const std::string& term) const {
    return entries.find(term) != entries.end();
  }
  // Returns nullptr when the term is absent.
  const LexiconEntry* find(const std::string& term) const;
  std::size_t size() const { return entries.size(); }
};

// Every lexicon the feature extractor depends on. load_lexicon_dir and
// builtin_lexicons always return a fully-populated, validated set.
struct LexiconSet {
  Lexicon stopwords;          // function words excluded from content metrics
  Lexicon bias_words;         // framing / partiality markers
  Lexicon assertives;         // verbs asserting the truth of a complement
  Lexicon hedges;             // uncertainty and vagueness markers
  Lexicon implicatives;       // verbs implying truth/falsity of a complement
  Lexicon report_verbs;       // attribution verbs
  Lexicon opinion_positive;   // positive opinion words
  Lexicon opinion_negative;   // negative opinion words
  Lexicon subjectivity;       // entries carry polarity= and strength=
  Lexicon moral;              // entries carry moral=<Category>
  Lexicon sentiment;          // entries carry valence=<float>

  // Canonical lexicon names, which double as the data file stems
  // (<name>.txt) inside a lexicon directory.
  static const std::vector<std::string>& required_names();
};

// Parses one lexicon from a stream.
//
// File format (UTF-8): one entry per line; `#` starts a comment; blank lines
// ignored. The first tab-separated field is the word or phrase (lowercased on
// load; internal runs of whitespace collapse to single spaces). Remaining
// tab-separated fields are `key=value` attributes drawn from:
//   valence=<float>            sentiment valence, must lie in [-4, 4]
//   polarity=pos|neg|neu       subjectivity polarity
//   strength=weak|strong       subjectivity strength
//   moral=<Category>           one of the ten moral-foundation categories
//
// Throws ParseError (with 1-based line number) on malformed lines, unknown
// attribute keys, out-of-range valence, duplicate entries, or an empty
// lexicon.
Lexicon parse_lexicon(std::istream& in, const std::string& name);

// Loads one lexicon data file. Throws IoError when the file cannot be read;
// parse failures are rethrown with the file path prepended to the message.
Lexicon load_lexicon(const std::filesystem::path& file, const std::string& name);

// Loads all required lexicons from `<dir>/<name>.txt`. Throws
// ValidationError naming the first missing lexicon, and propagates per-file
// load errors. The returned set passes validate_lexicon_set.
LexiconSet load_lexicon_dir(const std::filesystem::path& dir);

// The lexicon set compiled into the library from the bundled data files.
const LexiconSet& builtin_lexicons();

// Checks cross-entry requirements: every lexicon nonempty; sentiment entries
// all carry valence; subjectivity entries all carry polarity and strength;
// moral entries all carry a moral category. Throws ValidationError naming
// the offending lexicon.
void validate_lexicon_set(const LexiconSet& set);

// Counts lexicon hits over lowercased word tokens, matching multi-word
// phrases greedily (longest match first) without overlap; returns the number
// of matches. Used for all count-based lexicon features.
std::size_t count_lexicon_hits(const std::vector<std::string>& lower_tokens,
                               const Lexicon& lexicon);

}  // namespace newsaudit::textfeat
