#include "newsaudit/textfeat/syllables.hpp"

#include <algorithm>
#include <cctype>

#include "newsaudit/errors.hpp"

namespace newsaudit::textfeat {

namespace {

bool is_vowel_char(char c) {
  return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u';
}

}  // namespace

int count_syllables(const std::string& word) {
  if (word.empty()) throw ValidationError("count_syllables: empty word");
  std::string w;
  w.reserve(word.size());
  for (char c : word) {
    if (!std::isalpha(static_cast<unsigned char>(c)))
      throw ValidationError("count_syllables: non-alphabetic word '" + word + "'");
    w += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }

  auto vowel_at = [&](std::size_t i) {
    if (is_vowel_char(w[i])) return true;
    if (w[i] != 'y') return false;
    // y is vocalic except word-initially or straight after a vowel
    if (i == 0) return false;
    return !is_vowel_char(w[i - 1]) && w[i - 1] != 'y';
  };

  int groups = 0;
  bool in_group = false;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (vowel_at(i)) {
      if (!in_group) ++groups;
      in_group = true;
    } else {
      in_group = false;
    }
  }

  const std::size_t n = w.size();
  // silent final e ("make"), but keep consonant+le ("table", "little")
  if (n >= 2 && w[n - 1] == 'e' && groups > 1) {
    bool cons_le = n >= 3 && w[n - 1] == 'e' && w[n - 2] == 'l' && !vowel_at(n - 3) &&
                   w[n - 3] != 'l';
    if (!cons_le && !vowel_at(n - 2)) --groups;
  }
  // silent -ed: "walked" (1) vs "created", "added" (vowel survives after t/d)
  if (n >= 3 && w[n - 2] == 'e' && w[n - 1] == 'd' && groups > 1) {
    char before = w[n - 3];
    if (!vowel_at(n - 3) && before != 't' && before != 'd' && before != 'l') --groups;
  }
  // silent -es: "makes" (1) vs "boxes", "watches" (vowel survives after sibilants)
  if (n >= 3 && w[n - 2] == 'e' && w[n - 1] == 's' && groups > 1) {
    char before = w[n - 3];
    bool sibilant = before == 's' || before == 'x' || before == 'z' || before == 'c' ||
                    before == 'g' || before == 'h';
    if (!vowel_at(n - 3) && !sibilant) --groups;
  }

  return std::max(groups, 1);
}

}  // namespace newsaudit::textfeat
