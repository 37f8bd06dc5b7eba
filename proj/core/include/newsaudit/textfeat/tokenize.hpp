#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace newsaudit::textfeat {

struct TokenizedDoc {
  std::vector<std::vector<std::string>> sentences;  // tokens grouped by sentence
  std::vector<std::string> tokens;                  // flat token stream
  std::size_t letters = 0;                          // alphabetic characters inside tokens
  std::size_t words = 0;                            // tokens containing at least one letter
  std::size_t sentences_count = 0;

  bool token_is_word(std::size_t i) const;
};

// True for tokens that contain at least one ASCII letter.
bool is_word_token(const std::string& token);
// True for single-character (or normalized multi-byte) punctuation tokens.
bool is_punct_token(const std::string& token);

// Deterministic tokenizer.
//
// Word tokens are maximal runs of [A-Za-z0-9'] (apostrophes stay inside words,
// so "don't" is one token); every other character becomes a single-character
// punctuation token. Common UTF-8 typography is normalized first: curly
// quotes to ' and ", en/em dashes to -, ellipsis to "...".
//
// Sentence boundaries are placed at . ! ? when followed (after any closing
// quotes/brackets) by whitespace and an uppercase letter or a digit, or by end
// of text. A period does NOT end a sentence when the preceding word:
//   - joined with the period, lowercased, is in the abbreviation list
//     (titles such as "dr.", "mr."; corporate "inc."; latin "etc.", "e.g.";
//     month/weekday abbreviations; "u.s."-style acronyms), or
//   - is a single letter (an initial).
// Trailing text without a terminator counts as a final sentence, so
// sentences_count >= 1 for any text containing a token.
//
// Throws ValidationError for text that is empty after trimming.
TokenizedDoc tokenize(const std::string& text);

// The abbreviation list used for boundary suppression (lowercase, with the
// trailing period stripped). Exposed for documentation and tests.
const std::vector<std::string>& sentence_abbreviations();

}  // namespace newsaudit::textfeat
