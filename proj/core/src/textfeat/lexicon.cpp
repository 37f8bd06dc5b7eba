#include "newsaudit/textfeat/lexicon.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <functional>
#include <sstream>

#include "newsaudit/detail/builtin_data.hpp"
#include "newsaudit/errors.hpp"

namespace newsaudit::textfeat {

namespace {

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

// Lowercases and collapses internal whitespace runs to single spaces.
std::string canonical_term(const std::string& raw) {
  std::string out;
  out.reserve(raw.size());
  bool in_space = true;  // also strips leading whitespace
  for (unsigned char c : raw) {
    if (std::isspace(c)) {
      if (!in_space) out.push_back(' ');
      in_space = true;
    } else {
      out.push_back(static_cast<char>(std::tolower(c)));
      in_space = false;
    }
  }
  while (!out.empty() && out.back() == ' ') out.pop_back();
  return out;
}

std::size_t token_count(const std::string& term) {
  return static_cast<std::size_t>(std::count(term.begin(), term.end(), ' ')) + 1;
}

Polarity parse_polarity(const std::string& value, std::size_t line) {
  if (value == "pos") return Polarity::positive;
  if (value == "neg") return Polarity::negative;
  if (value == "neu") return Polarity::neutral;
  throw ParseError("invalid polarity '" + value + "' (expected pos|neg|neu)", line);
}

Strength parse_strength(const std::string& value, std::size_t line) {
  if (value == "weak") return Strength::weak;
  if (value == "strong") return Strength::strong;
  throw ParseError("invalid strength '" + value + "' (expected weak|strong)", line);
}

double parse_valence(const std::string& value, std::size_t line) {
  double v = 0.0;
  std::size_t used = 0;
  try {
    v = std::stod(value, &used);
  } catch (const std::exception&) {
    throw ParseError("invalid valence '" + value + "'", line);
  }
  if (used != value.size()) throw ParseError("invalid valence '" + value + "'", line);
  if (v < -4.0 || v > 4.0)
    throw ParseError("valence " + value + " outside [-4, 4]", line);
  return v;
}

std::string parse_moral(const std::string& value, std::size_t line) {
  const auto& cats = moral_categories();
  if (std::find(cats.begin(), cats.end(), value) == cats.end())
    throw ParseError("unknown moral category '" + value + "'", line);
  return value;
}

}  // namespace

std::string to_string(Polarity p) {
  switch (p) {
    case Polarity::positive: return "pos";
    case Polarity::negative: return "neg";
    case Polarity::neutral: return "neu";
  }
  return "neu";
}

std::string to_string(Strength s) {
  return s == Strength::weak ? "weak" : "strong";
}

const std::vector<std::string>& moral_categories() {
  static const std::vector<std::string> cats = {
      "HarmVirtue",      "HarmVice",     "FairnessVirtue", "FairnessVice",
      "IngroupVirtue",   "IngroupVice",  "AuthorityVirtue", "AuthorityVice",
      "PurityVirtue",    "PurityVice",
  };
  return cats;
}

const LexiconEntry* Lexicon::find(const std::string& term) const {
  auto it = entries.find(term);
  return it == entries.end() ? nullptr : &it->second;
}

const std::vector<std::string>& LexiconSet::required_names() {
  static const std::vector<std::string> names = {
      "stopwords",      "bias_words", "assertives",       "hedges",
      "implicatives",   "report_verbs", "opinion_positive", "opinion_negative",
      "subjectivity",   "moral",      "sentiment",
  };
  return names;
}

Lexicon parse_lexicon(std::istream& in, const std::string& name) {
  Lexicon lex;
  lex.name = name;

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);

    // split on tabs: term, then key=value attributes
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (start <= line.size()) {
      std::size_t tab = line.find('\t', start);
      if (tab == std::string::npos) {
        fields.push_back(line.substr(start));
        break;
      }
      fields.push_back(line.substr(start, tab - start));
      start = tab + 1;
    }

    std::string term = canonical_term(fields[0]);
    if (term.empty()) {
      // blank or comment-only line; attributes without a term are malformed
      for (std::size_t i = 1; i < fields.size(); ++i)
        if (!canonical_term(fields[i]).empty())
          throw ParseError("attributes without an entry term", line_no);
      continue;
    }

    LexiconEntry entry;
    for (std::size_t i = 1; i < fields.size(); ++i) {
      std::string field = canonical_term(fields[i]);
      if (field.empty()) continue;
      std::size_t eq = fields[i].find('=');
      if (eq == std::string::npos)
        throw ParseError("malformed attribute '" + fields[i] + "' (expected key=value)",
                         line_no);
      std::string key = lower(fields[i].substr(0, eq));
      std::string value = fields[i].substr(eq + 1);
      if (key == "valence") {
        entry.valence = parse_valence(value, line_no);
      } else if (key == "polarity") {
        entry.polarity = parse_polarity(lower(value), line_no);
      } else if (key == "strength") {
        entry.strength = parse_strength(lower(value), line_no);
      } else if (key == "moral") {
        entry.moral = parse_moral(value, line_no);
      } else {
        throw ParseError("unknown attribute key '" + key + "'", line_no);
      }
    }

    if (!lex.entries.emplace(term, entry).second)
      throw ParseError("duplicate entry '" + term + "'", line_no);
    lex.max_phrase_tokens = std::max(lex.max_phrase_tokens, token_count(term));
  }

  if (lex.entries.empty())
    throw ParseError("lexicon '" + name + "' has no entries", line_no == 0 ? 1 : line_no);
  return lex;
}

Lexicon load_lexicon(const std::filesystem::path& file, const std::string& name) {
  std::ifstream in(file);
  if (!in) throw IoError("cannot open lexicon file: " + file.string());
  try {
    return parse_lexicon(in, name);
  } catch (const ParseError& e) {
    throw ParseError(file.string() + ": " + e.what(), 0);
  }
}

namespace {

LexiconSet load_set(const std::function<Lexicon(const std::string&)>& loader) {
  LexiconSet set;
  Lexicon* members[] = {
      &set.stopwords,      &set.bias_words,      &set.assertives,
      &set.hedges,         &set.implicatives,    &set.report_verbs,
      &set.opinion_positive, &set.opinion_negative, &set.subjectivity,
      &set.moral,          &set.sentiment,
  };
  const auto& names = LexiconSet::required_names();
  for (std::size_t i = 0; i < names.size(); ++i) *members[i] = loader(names[i]);
  validate_lexicon_set(set);
  return set;
}

}  // namespace

LexiconSet load_lexicon_dir(const std::filesystem::path& dir) {
  return load_set([&dir](const std::string& name) {
    std::filesystem::path file = dir / (name + ".txt");
    if (!std::filesystem::exists(file))
      throw ValidationError("missing lexicon: " + name + " (expected " + file.string() +
                            ")");
    return load_lexicon(file, name);
  });
}

const LexiconSet& builtin_lexicons() {
  static const LexiconSet set = load_set([](const std::string& name) {
    auto data = detail::builtin_file("lexicons/" + name + ".txt");
    if (!data)
      throw ValidationError("missing lexicon: " + name + " (no built-in data)");
    std::istringstream in{std::string(*data)};
    return parse_lexicon(in, name);
  });
  return set;
}

void validate_lexicon_set(const LexiconSet& set) {
  auto require_nonempty = [](const Lexicon& lex) {
    if (lex.entries.empty())
      throw ValidationError("lexicon '" + lex.name + "' is empty");
  };
  for (const Lexicon* lex :
       {&set.stopwords, &set.bias_words, &set.assertives, &set.hedges,
        &set.implicatives, &set.report_verbs, &set.opinion_positive,
        &set.opinion_negative, &set.subjectivity, &set.moral, &set.sentiment})
    require_nonempty(*lex);

  for (const auto& [term, entry] : set.sentiment.entries)
    if (!entry.valence)
      throw ValidationError("lexicon 'sentiment': entry '" + term +
                            "' is missing valence=");
  for (const auto& [term, entry] : set.subjectivity.entries)
    if (!entry.polarity || !entry.strength)
      throw ValidationError("lexicon 'subjectivity': entry '" + term +
                            "' is missing polarity= or strength=");
  for (const auto& [term, entry] : set.moral.entries)
    if (!entry.moral)
      throw ValidationError("lexicon 'moral': entry '" + term + "' is missing moral=");
}

std::size_t count_lexicon_hits(const std::vector<std::string>& lower_tokens,
                               const Lexicon& lexicon) {
  std::size_t hits = 0;
  const std::size_t n = lower_tokens.size();
  for (std::size_t i = 0; i < n;) {
    std::size_t matched_len = 0;
    std::size_t longest = std::min(lexicon.max_phrase_tokens, n - i);
    for (std::size_t len = longest; len >= 1; --len) {
      std::string candidate = lower_tokens[i];
      for (std::size_t j = 1; j < len; ++j) {
        candidate += ' ';
        candidate += lower_tokens[i + j];
      }
      if (lexicon.contains(candidate)) {
        matched_len = len;
        break;
      }
    }
    if (matched_len > 0) {
      ++hits;
      i += matched_len;
    } else {
      ++i;
    }
  }
  return hits;
}

}  // namespace newsaudit::textfeat
