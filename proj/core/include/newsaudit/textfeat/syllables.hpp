#pragma once

#include <string>

namespace newsaudit::textfeat {

// Heuristic syllable count for an alphabetic English word. Rules, applied to
// the lowercased word, in order:
//   1. Count maximal vowel groups (aeiouy; y counts as a vowel only when it
//      does not open the word or follow another vowel).
//   2. Silent final e: subtract one for a trailing "e" that is not "le" after
//      a consonant and not the only vowel group ("make" -> 1, "table" -> 2,
//      "the" -> 1).
//   3. Subtract one for "-es"/"-ed" endings whose e is silent: a consonant
//      other than t/d/l before "ed" ("walked" -> 1, "added" -> 2), and a
//      consonant other than the sibilants s/x/z/c/g before "es"
//      ("makes" -> 1, "boxes" -> 2).
//   4. Add one for "-le" after a consonant ("little" -> 2) — handled by rule 2
//      exempting "le".
//   5. Floor at 1.
// Throws ValidationError when the word contains non-alphabetic characters.
int count_syllables(const std::string& word);

}  // namespace newsaudit::textfeat
