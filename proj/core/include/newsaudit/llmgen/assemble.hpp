#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "newsaudit/corpus.hpp"
#include "newsaudit/llmgen/client.hpp"

namespace newsaudit::llmgen {

struct AssemblyOptions {
  int min_body_words = 50;  // articles with shorter sanitized bodies are excluded
};

struct AssemblyResult {
  Corpus corpus;  // source = machine, label = target, origin_id set
  // (origin_id, reason) for accepted records that failed an assembly filter.
  std::vector<std::pair<std::string, std::string>> excluded;
};

// Builds the machine-generated corpus from accepted records, ordered by
// origin_id. Article ids are "mf-<origin_id>" for fake targets and
// "mr-<origin_id>" for real targets. Filters: nonempty sanitized title and
// a sanitized body of at least min_body_words words. When `seed_corpus` is
// given, every origin_id must resolve in it. Throws ValidationError when no
// record is accepted or none survives the filters.
AssemblyResult assemble_machine_corpus(const std::vector<GenerationRecord>& records,
                                       Label target_label,
                                       const Corpus* seed_corpus = nullptr,
                                       const AssemblyOptions& opts = {});

// Manual-review round trip, CSV "id,accepted,reason": export the current
// accept/reject state, let a human edit it, and import the decisions back
// (matching records by origin_id; unknown ids throw ValidationError).
std::string review_to_csv(const std::vector<GenerationRecord>& records);
void apply_review_csv(std::vector<GenerationRecord>& records, std::istream& csv);

}  // namespace newsaudit::llmgen
