#include "newsaudit/textfeat/sentiment.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <unordered_map>
#include <unordered_set>

#include "newsaudit/errors.hpp"

namespace newsaudit::textfeat {

namespace {

// Rule constants (see sentiment.hpp for the rule descriptions).
constexpr double kNegationScalar = -0.74;  // negation flip multiplier
constexpr double kBoostStep = 0.293;       // degree-modifier magnitude step
constexpr double kCapsEmphasis = 0.733;    // all-caps emphasis shift
constexpr double kExclaimStep = 0.292;     // per-"!" amplification
constexpr int kExclaimCap = 4;             // at most four "!" count
constexpr double kNormalizeAlpha = 15.0;   // compound normalization constant

std::string lower(const std::string& s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

// Degree modifiers: positive entries intensify, negative entries dampen.
const std::unordered_map<std::string, double>& booster_table() {
  static const std::unordered_map<std::string, double> table = {
      {"absolutely", kBoostStep},   {"amazingly", kBoostStep},
      {"completely", kBoostStep},   {"considerably", kBoostStep},
      {"decidedly", kBoostStep},    {"deeply", kBoostStep},
      {"enormously", kBoostStep},   {"entirely", kBoostStep},
      {"especially", kBoostStep},   {"exceptionally", kBoostStep},
      {"extremely", kBoostStep},    {"greatly", kBoostStep},
      {"highly", kBoostStep},       {"hugely", kBoostStep},
      {"incredibly", kBoostStep},   {"intensely", kBoostStep},
      {"majorly", kBoostStep},      {"more", kBoostStep},
      {"most", kBoostStep},         {"particularly", kBoostStep},
      {"purely", kBoostStep},       {"quite", kBoostStep},
      {"really", kBoostStep},       {"remarkably", kBoostStep},
      {"so", kBoostStep},           {"substantially", kBoostStep},
      {"thoroughly", kBoostStep},   {"totally", kBoostStep},
      {"tremendously", kBoostStep}, {"unbelievably", kBoostStep},
      {"unusually", kBoostStep},    {"utterly", kBoostStep},
      {"very", kBoostStep},
      {"almost", -kBoostStep},      {"barely", -kBoostStep},
      {"hardly", -kBoostStep},      {"kinda", -kBoostStep},
      {"less", -kBoostStep},        {"little", -kBoostStep},
      {"marginally", -kBoostStep},  {"occasionally", -kBoostStep},
      {"partly", -kBoostStep},      {"scarcely", -kBoostStep},
      {"slightly", -kBoostStep},    {"somewhat", -kBoostStep},
      {"sorta", -kBoostStep},
  };
  return table;
}

const std::unordered_set<std::string>& negation_words() {
  static const std::unordered_set<std::string> words = {
      "aint",  "cannot",  "despite", "neither", "never",  "no",
      "none",  "nope",    "nor",     "not",     "nothing", "nowhere",
      "rarely", "seldom", "without",
  };
  return words;
}

bool is_negation(const std::string& low) {
  if (negation_words().count(low)) return true;
  return low.size() > 3 && low.compare(low.size() - 3, 3, "n't") == 0;
}

bool is_all_caps(const std::string& token) {
  bool has_letter = false;
  for (unsigned char c : token) {
    if (std::isalpha(c)) {
      has_letter = true;
      if (std::islower(c)) return false;
    }
  }
  return has_letter;
}

}  // namespace

SentimentScores sentiment_scores(const TokenizedDoc& doc,
                                 const Lexicon& sentiment_lexicon) {
  // word tokens with original case, plus the exclamation count
  std::vector<const std::string*> words;
  int exclaim_count = 0;
  for (std::size_t i = 0; i < doc.tokens.size(); ++i) {
    if (doc.token_is_word(i))
      words.push_back(&doc.tokens[i]);
    else if (doc.tokens[i] == "!")
      ++exclaim_count;
  }
  if (words.empty()) return SentimentScores{};

  // caps emphasis only fires when the document mixes case
  std::size_t caps = 0;
  for (const auto* w : words) caps += is_all_caps(*w) ? 1 : 0;
  const bool cap_diff = caps > 0 && caps < words.size();

  std::vector<double> valences(words.size(), 0.0);
  for (std::size_t i = 0; i < words.size(); ++i) {
    std::string low = lower(*words[i]);
    // degree modifiers carry no valence of their own
    if (booster_table().count(low)) continue;
    const LexiconEntry* entry = sentiment_lexicon.find(low);
    if (!entry) continue;
    if (!entry->valence)
      throw ValidationError("sentiment lexicon entry '" + low + "' has no valence");
    double v = *entry->valence;

    // rule 3: all-caps emphasis
    if (cap_diff && is_all_caps(*words[i]))
      v += v > 0 ? kCapsEmphasis : (v < 0 ? -kCapsEmphasis : 0.0);

    // rule 2: degree modifiers within the three preceding word tokens,
    // damped with distance (x1.0, x0.95, x0.9)
    static constexpr double kDistanceDamping[3] = {1.0, 0.95, 0.9};
    bool negated = false;
    for (std::size_t d = 1; d <= 3 && d <= i; ++d) {
      const std::string prev_low = lower(*words[i - d]);
      if (auto it = booster_table().find(prev_low); it != booster_table().end()) {
        double scalar = it->second * kDistanceDamping[d - 1];
        if (v < 0) scalar = -scalar;
        if (cap_diff && is_all_caps(*words[i - d]))
          scalar += v > 0 ? kCapsEmphasis : -kCapsEmphasis;
        v += scalar;
      }
      if (is_negation(prev_low)) negated = true;
    }

    // rule 1: negation flip (applied once per scored word)
    if (negated) v *= kNegationScalar;

    valences[i] = v;
  }

  double sum = 0.0;
  double pos_sum = 0.0, neg_sum = 0.0, neu_count = 0.0;
  for (double v : valences) {
    sum += v;
    if (v > 0) pos_sum += v + 1.0;
    else if (v < 0) neg_sum += v - 1.0;
    else neu_count += 1.0;
  }

  // rule 4: exclamation amplification joins the dominant side
  const double ep = kExclaimStep * std::min(exclaim_count, kExclaimCap);
  if (sum > 0) sum += ep;
  else if (sum < 0) sum -= ep;
  if (pos_sum > std::fabs(neg_sum)) pos_sum += ep;
  else if (pos_sum < std::fabs(neg_sum)) neg_sum -= ep;

  SentimentScores out;
  const double total = pos_sum + std::fabs(neg_sum) + neu_count;
  if (total > 0) {
    out.pos = std::fabs(pos_sum / total);
    out.neg = std::fabs(neg_sum / total);
    out.neu = std::fabs(neu_count / total);
  }
  double compound = sum / std::sqrt(sum * sum + kNormalizeAlpha);
  out.compound = std::clamp(compound, -1.0, 1.0);
  return out;
}

}  // namespace newsaudit::textfeat
