#include "newsaudit/llmgen/prompts.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <regex>
#include <sstream>

#include "newsaudit/detail/builtin_data.hpp"
#include "newsaudit/errors.hpp"
#include "newsaudit/llmgen/sanitize.hpp"

namespace newsaudit::llmgen {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::string replace_all(std::string text, const std::string& needle,
                        const std::string& value) {
  std::size_t pos = 0;
  while ((pos = text.find(needle, pos)) != std::string::npos) {
    text.replace(pos, needle.size(), value);
    pos += value.size();
  }
  return text;
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

PromptTemplate load_one(const std::filesystem::path& dir, const std::string& name) {
  std::filesystem::path file = dir / (name + ".txt");
  std::ifstream in(file);
  if (!in) throw ValidationError("missing template: " + name + " (expected " +
                                 file.string() + ")");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_template(buf.str(), name);
}

PromptTemplate builtin_one(const std::string& name) {
  auto data = detail::builtin_file("templates/" + name + ".txt");
  if (!data) throw ValidationError("builtin template missing: " + name);
  return parse_template(std::string(*data), name);
}

void require_human_seed(const Article& seed, Label wanted, const char* purpose) {
  if (seed.source != Source::human)
    throw ValidationError(std::string(purpose) + " seed must be human-written: '" +
                          seed.id + "'");
  if (seed.label != wanted)
    throw ValidationError(std::string(purpose) + " seed must be " + to_string(wanted) +
                          " news: '" + seed.id + "'");
  if (trim(seed.title).empty())
    throw ValidationError(std::string(purpose) + " seed has empty title: '" + seed.id +
                          "'");
  if (trim(seed.text).empty())
    throw ValidationError(std::string(purpose) + " seed has empty text: '" + seed.id +
                          "'");
}

}  // namespace

PromptTemplate parse_template(const std::string& file_text, const std::string& name) {
  std::istringstream in(file_text);
  std::string first;
  if (!std::getline(in, first))
    throw ParseError("template '" + name + "' is empty", 1);
  if (!first.empty() && first.back() == '\r') first.pop_back();
  static const std::regex version_line(R"(^#\s*version:\s*(\S+)\s*$)");
  std::smatch m;
  if (!std::regex_match(first, m, version_line))
    throw ParseError("template '" + name + "' must start with '# version: <v>'", 1);
  PromptTemplate t;
  t.version = m[1].str();
  std::ostringstream rest;
  rest << in.rdbuf();
  t.text = trim(rest.str());
  if (t.text.empty())
    throw ParseError("template '" + name + "' has no content after the version line", 2);
  return t;
}

std::string TemplateSet::version_tag() const {
  if (smp_title.version == smp_body.version &&
      smp_body.version == paraphrase_title.version &&
      paraphrase_title.version == paraphrase_body.version)
    return smp_title.version;
  return "t" + smp_title.version + "/b" + smp_body.version + "/pt" +
         paraphrase_title.version + "/pb" + paraphrase_body.version;
}

TemplateSet TemplateSet::builtin() {
  TemplateSet set;
  set.smp_title = builtin_one("smp_title");
  set.smp_body = builtin_one("smp_body");
  set.paraphrase_title = builtin_one("paraphrase_title");
  set.paraphrase_body = builtin_one("paraphrase_body");
  return set;
}

TemplateSet TemplateSet::load_dir(const std::filesystem::path& dir) {
  TemplateSet set;
  set.smp_title = load_one(dir, "smp_title");
  set.smp_body = load_one(dir, "smp_body");
  set.paraphrase_title = load_one(dir, "paraphrase_title");
  set.paraphrase_body = load_one(dir, "paraphrase_body");
  return set;
}

std::string seed_summary(const std::string& text, std::size_t max_words) {
  std::istringstream in(text);
  std::string word, out;
  std::size_t n = 0;
  while (n < max_words && in >> word) {
    if (n) out += ' ';
    out += word;
    ++n;
  }
  return out;
}

SmpPrompt build_smp_prompt(const Article& seed, const TemplateSet& templates) {
  require_human_seed(seed, Label::fake, "SMP");
  SmpPrompt p;
  p.seed_title = trim(seed.title);
  p.seed_summary = seed_summary(seed.text);
  p.title_instruction = replace_all(templates.smp_title.text, "{{title}}", p.seed_title);
  p.body_instruction =
      replace_all(templates.smp_body.text, "{{summary}}", p.seed_summary);
  p.template_version = templates.version_tag();
  return p;
}

SmpPrompt build_paraphrase_prompt(const Article& seed, const TemplateSet& templates) {
  require_human_seed(seed, Label::real, "paraphrase");
  SmpPrompt p;
  p.seed_title = trim(seed.title);
  p.seed_summary = seed_summary(seed.text);
  p.title_instruction =
      replace_all(templates.paraphrase_title.text, "{{title}}", p.seed_title);
  p.body_instruction =
      replace_all(templates.paraphrase_body.text, "{{summary}}", p.seed_summary);
  p.template_version = templates.version_tag();
  return p;
}

std::vector<std::string> lint_templates(const TemplateSet& templates) {
  std::vector<std::string> violations;
  struct Item {
    const char* name;
    const PromptTemplate* tmpl;
    const char* placeholder;
  };
  const Item items[] = {
      {"smp_title", &templates.smp_title, "{{title}}"},
      {"smp_body", &templates.smp_body, "{{summary}}"},
      {"paraphrase_title", &templates.paraphrase_title, "{{title}}"},
      {"paraphrase_body", &templates.paraphrase_body, "{{summary}}"},
  };
  // Label prefixes and markdown headers an output could echo verbatim.
  static const std::regex echo_headers(R"((^|\n)\s*(title|headline|body)\s*:)",
                                       std::regex_constants::icase);
  static const std::regex markdown(R"((^|\n)\s*#)");
  for (const Item& item : items) {
    if (item.tmpl->version.empty())
      violations.push_back(std::string(item.name) + ": missing version");
    if (item.tmpl->text.find(item.placeholder) == std::string::npos)
      violations.push_back(std::string(item.name) + ": missing placeholder " +
                           item.placeholder);
    // Render with a neutral seed so placeholder content cannot mask issues.
    std::string rendered = replace_all(item.tmpl->text, item.placeholder,
                                       "City council approves budget");
    if (lower(rendered).find("fake news") != std::string::npos)
      violations.push_back(std::string(item.name) + ": contains the phrase 'fake news'");
    if (std::regex_search(rendered, echo_headers))
      violations.push_back(std::string(item.name) +
                           ": contains an echoable label prefix (Title:/Headline:/Body:)");
    if (std::regex_search(rendered, markdown))
      violations.push_back(std::string(item.name) + ": contains a markdown header mark");
    for (const std::string& pat : disclaimer_patterns()) {
      std::regex re(pat, std::regex_constants::icase);
      if (std::regex_search(rendered, re)) {
        violations.push_back(std::string(item.name) +
                             ": matches disclaimer pattern '" + pat + "'");
      }
    }
  }
  return violations;
}

}  // namespace newsaudit::llmgen
