#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "newsaudit/corpus.hpp"

namespace newsaudit::llmgen {

// One prompt template: UTF-8 text whose first line is "# version: <v>",
// with {{title}} / {{summary}} placeholders in the body.
struct PromptTemplate {
  std::string version;
  std::string text;
};

// The four generation templates. Shipped as editable data files embedded at
// build time; a directory of files with the same names overrides them.
struct TemplateSet {
  PromptTemplate smp_title;         // headline mimicry ({{title}})
  PromptTemplate smp_body;          // narrative continuation ({{summary}})
  PromptTemplate paraphrase_title;  // meaning-preserving headline rewrite
  PromptTemplate paraphrase_body;   // meaning-preserving body rewrite

  // Combined version tag, e.g. "1" when all four agree, else "t1/b1/pt1/pb2".
  std::string version_tag() const;

  static TemplateSet builtin();
  // Loads smp_title.txt, smp_body.txt, paraphrase_title.txt,
  // paraphrase_body.txt from `dir`; missing file -> ValidationError.
  static TemplateSet load_dir(const std::filesystem::path& dir);
};

PromptTemplate parse_template(const std::string& file_text, const std::string& name);

// A two-request generation job: the title and the body are produced by
// separate chat completions so the output carries no combined structure.
struct SmpPrompt {
  std::string title_instruction;
  std::string body_instruction;
  std::string seed_title;
  std::string seed_summary;
  std::string template_version;
};

// First `max_words` whitespace-delimited words of `text`, joined by single
// spaces; used to keep body prompts within context limits.
std::string seed_summary(const std::string& text, std::size_t max_words = 120);

// Fake-news generation prompt from a human-written fake seed. Preconditions:
// seed.source = human, seed.label = fake, nonempty title and text; violations
// throw ValidationError naming the seed id.
SmpPrompt build_smp_prompt(const Article& seed,
                           const TemplateSet& templates = TemplateSet::builtin());

// Paraphrase prompt from a human-written real seed (entity/date/claim
// preserving rewrite). Preconditions: source = human, label = real,
// nonempty title and text.
SmpPrompt build_paraphrase_prompt(const Article& seed,
                                  const TemplateSet& templates = TemplateSet::builtin());

// Template regression checks: rendered prompts must not contain the phrase
// "fake news", label prefixes an output might echo ("Title:", "Headline:",
// "Body:"), markdown headers, or text matching the bundled disclaimer
// patterns; every template needs its placeholder and a version. Returns one
// message per violation; empty means clean.
std::vector<std::string> lint_templates(const TemplateSet& templates);

}  // namespace newsaudit::llmgen
