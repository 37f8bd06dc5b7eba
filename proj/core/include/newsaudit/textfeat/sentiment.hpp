#pragma once

#include "newsaudit/textfeat/lexicon.hpp"
#include "newsaudit/textfeat/tokenize.hpp"

namespace newsaudit::textfeat {

// Output of the rule-based sentiment scorer. neg/neu/pos are proportions in
// [0, 1] summing to 1; compound is an overall score in [-1, 1].
struct SentimentScores {
  double neg = 0.0;
  double neu = 1.0;
  double pos = 0.0;
  double compound = 0.0;
};

// Rule-based valence aggregation over a tokenized document.
//
// Every word token contributes a valence: lexicon words their `valence=`
// value (required to lie in [-4, 4]), all other words 0. Four documented
// rules adjust lexicon-word valences:
//
//   1. Negation flip: if any of the three preceding word tokens is a
//      negation word (or ends in "n't"), the valence is multiplied by
//      NEGATION_SCALAR = -0.74.
//   2. Degree-modifier boost: each booster/dampener among the three
//      preceding word tokens shifts the magnitude by +-BOOST_STEP = 0.293
//      in the direction of the valence sign, scaled by distance
//      (x1.0 / x0.95 / x0.9 at distances 1 / 2 / 3). An all-caps modifier
//      adds a further +-CAPS_EMPHASIS when the document mixes case.
//   3. All-caps emphasis: an all-caps lexicon word in a mixed-case document
//      shifts its valence by +-CAPS_EMPHASIS = 0.733 toward its sign.
//   4. Exclamation amplification: EXCLAIM_STEP = 0.292 per "!" token, capped
//      at four, added to the aggregate toward its sign.
//
// Aggregation: compound = S / sqrt(S^2 + 15) where S is the amplified
// valence sum, clamped to [-1, 1]. The neg/neu/pos proportions weight each
// positive token by (v + 1), each negative token by (|v| + 1), and each
// zero-valence token by 1, then normalize; the exclamation amplifier joins
// the dominant side. A document with no word tokens or no lexicon hits
// scores (neg=0, neu=1, pos=0, compound=0).
//
// Pure function of its inputs; booster and negation word tables are fixed
// and documented in the implementation.
SentimentScores sentiment_scores(const TokenizedDoc& doc, const Lexicon& sentiment_lexicon);

}  // namespace newsaudit::textfeat
