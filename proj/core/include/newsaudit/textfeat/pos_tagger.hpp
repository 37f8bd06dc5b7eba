#pragma once

#include <string>
#include <vector>

#include "newsaudit/textfeat/tokenize.hpp"

namespace newsaudit::textfeat {

// Rule-based Penn Treebank tagger: closed-class lexicon, a compact
// open-class lexicon of frequent words, suffix rules for unknowns
// (-ly -> RB, -ing -> VBG, -ed -> VBD/VBN, nominal/adjectival suffixes),
// capitalization -> NNP, then a contextual repair pass (base verbs after
// MD/TO, nouns after determiners, participles after be/have).
// Deterministic; unknown words fall back to NN.
//
// Returns one tag per token, aligned with doc.tokens.
std::vector<std::string> pos_tag(const TokenizedDoc& doc);

// The full Penn Treebank tagset (word classes plus punctuation tags) that
// pos_tag may emit.
const std::vector<std::string>& penn_tagset();

}  // namespace newsaudit::textfeat
