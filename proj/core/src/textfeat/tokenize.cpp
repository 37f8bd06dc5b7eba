#include "newsaudit/textfeat/tokenize.hpp"

#include <algorithm>
#include <cctype>
#include <unordered_set>

#include "newsaudit/errors.hpp"

namespace newsaudit::textfeat {

namespace {

bool is_alpha(char c) { return std::isalpha(static_cast<unsigned char>(c)) != 0; }
bool is_alnum(char c) { return std::isalnum(static_cast<unsigned char>(c)) != 0; }
bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }
bool is_upper(char c) { return std::isupper(static_cast<unsigned char>(c)) != 0; }
bool is_digit(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

// UTF-8 typography normalization; everything else passes through byte-wise.
std::string normalize(const std::string& text) {
  std::string out;
  out.reserve(text.size());
  for (std::size_t i = 0; i < text.size();) {
    unsigned char c = text[i];
    if (c == 0xE2 && i + 2 < text.size()) {
      unsigned char b = text[i + 1], d = text[i + 2];
      if (b == 0x80) {
        switch (d) {
          case 0x98: case 0x99: out += '\''; i += 3; continue;  // curly single quotes
          case 0x9C: case 0x9D: out += '"'; i += 3; continue;   // curly double quotes
          case 0x93: case 0x94: out += '-'; i += 3; continue;   // en/em dash
          case 0xA6: out += "..."; i += 3; continue;            // ellipsis
        }
      }
    }
    if (c >= 0x80) {
      // other non-ASCII bytes collapse to a space; features are ASCII-English
      out += ' ';
      ++i;
      continue;
    }
    out += static_cast<char>(c);
    ++i;
  }
  return out;
}

const std::unordered_set<std::string>& abbrev_set() {
  static const std::unordered_set<std::string> set(sentence_abbreviations().begin(),
                                                   sentence_abbreviations().end());
  return set;
}

bool closes_quote(char c) { return c == '"' || c == '\'' || c == ')' || c == ']'; }

}  // namespace

const std::vector<std::string>& sentence_abbreviations() {
  static const std::vector<std::string> list = {
      // honorifics and titles
      "mr", "mrs", "ms", "dr", "prof", "rev", "hon", "pres", "gen", "sen", "rep",
      "gov", "capt", "col", "lt", "maj", "sgt", "det", "supt", "st",
      // name suffixes
      "jr", "sr",
      // corporate
      "inc", "ltd", "co", "corp", "llc", "plc",
      // latin / citation
      "etc", "e.g", "i.e", "cf", "vs", "al", "viz",
      // months and weekdays
      "jan", "feb", "mar", "apr", "jun", "jul", "aug", "sep", "sept", "oct",
      "nov", "dec", "mon", "tue", "tues", "wed", "thu", "thurs", "fri", "sat", "sun",
      // acronyms written with internal periods (checked against the joined form)
      "u.s", "u.k", "u.n", "d.c", "a.m", "p.m", "ph.d", "m.d", "b.a", "m.a", "a.d", "b.c",
      // misc
      "no", "fig", "vol", "pp", "ch", "sec", "dept", "est", "approx", "ave", "blvd", "rd", "mt"};
  return list;
}

bool is_word_token(const std::string& token) {
  return std::any_of(token.begin(), token.end(), is_alpha);
}

bool is_punct_token(const std::string& token) {
  return !token.empty() && std::none_of(token.begin(), token.end(), is_alnum);
}

bool TokenizedDoc::token_is_word(std::size_t i) const { return is_word_token(tokens[i]); }

TokenizedDoc tokenize(const std::string& raw) {
  const std::string text = normalize(raw);
  bool any = std::any_of(text.begin(), text.end(), [](char c) { return !is_space(c); });
  if (!any) throw ValidationError("tokenize: text is empty");

  TokenizedDoc doc;
  std::vector<std::string> sentence;
  std::string prev_word;  // last word token seen, for abbreviation checks

  auto flush_sentence = [&]() {
    if (!sentence.empty()) {
      doc.sentences.push_back(sentence);
      sentence.clear();
    }
  };
  auto emit = [&](std::string tok) {
    for (char c : tok)
      if (is_alpha(c)) ++doc.letters;
    if (is_word_token(tok)) ++doc.words;
    sentence.push_back(tok);
    doc.tokens.push_back(std::move(tok));
  };

  std::size_t i = 0;
  const std::size_t n = text.size();
  while (i < n) {
    char c = text[i];
    if (is_space(c)) {
      ++i;
      continue;
    }
    if (is_alnum(c)) {
      std::size_t j = i;
      while (j < n && (is_alnum(text[j]) ||
                       (text[j] == '\'' && j + 1 < n && is_alnum(text[j + 1]) && j > i)))
        ++j;
      std::string tok = text.substr(i, j - i);
      prev_word = tok;
      emit(std::move(tok));
      i = j;
      continue;
    }
    // punctuation: single character token
    std::string tok(1, c);
    ++i;
    bool terminator = (c == '.' || c == '!' || c == '?');
    bool suppressed = false;
    if (c == '.' && !prev_word.empty()) {
      std::string low = lower(prev_word);
      // "u.s." style: the abbreviation check also applies to the token joined
      // with the periods already consumed, e.g. prev_word "s" inside "u.s."
      if (abbrev_set().count(low)) suppressed = true;
      if (!suppressed && low.size() == 1 && is_alpha(low[0])) suppressed = true;  // initials
      if (!suppressed && doc.tokens.size() >= 3) {
        // reconstruct a dotted acronym such as "u.s" from the token stream
        const auto& t = doc.tokens;
        std::size_t k = t.size();
        if (k >= 3 && t[k - 2] == "." && t[k - 1].size() == 1 && t[k - 3].size() == 1) {
          std::string joined = lower(t[k - 3]) + "." + lower(t[k - 1]);
          if (abbrev_set().count(joined)) suppressed = true;
        }
      }
    }
    emit(std::move(tok));
    if (terminator && !suppressed) {
      // allow closing quotes or brackets between the terminator and the gap
      std::size_t j = i;
      while (j < n && closes_quote(text[j])) ++j;
      std::size_t k = j;
      while (k < n && is_space(text[k])) ++k;
      bool at_end = (k >= n);
      bool next_caps = !at_end && (is_upper(text[k]) || is_digit(text[k]) || text[k] == '"');
      bool had_gap = (k > j) || at_end;
      if (had_gap && (at_end || next_caps)) {
        // attach trailing closers to the current sentence before breaking
        while (i < j) {
          emit(std::string(1, text[i]));
          ++i;
        }
        flush_sentence();
        prev_word.clear();
      }
    }
  }
  flush_sentence();
  doc.sentences_count = doc.sentences.size();
  return doc;
}

}  // namespace newsaudit::textfeat
