#include "newsaudit/llmgen/assemble.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "newsaudit/detail/format.hpp"
#include "newsaudit/errors.hpp"

namespace newsaudit::llmgen {

namespace {

std::size_t word_count(const std::string& text) {
  std::istringstream in(text);
  std::string w;
  std::size_t n = 0;
  while (in >> w) ++n;
  return n;
}

}  // namespace

AssemblyResult assemble_machine_corpus(const std::vector<GenerationRecord>& records,
                                       Label target_label, const Corpus* seed_corpus,
                                       const AssemblyOptions& opts) {
  std::vector<const GenerationRecord*> accepted;
  for (const GenerationRecord& r : records)
    if (r.accepted) accepted.push_back(&r);
  if (accepted.empty())
    throw ValidationError("assemble_machine_corpus: no accepted generation records");

  // Deterministic output order regardless of generation completion order.
  std::sort(accepted.begin(), accepted.end(),
            [](const GenerationRecord* a, const GenerationRecord* b) {
              return a->origin_id < b->origin_id;
            });

  const std::string prefix = target_label == Label::fake ? "mf-" : "mr-";
  AssemblyResult result;
  result.corpus.name = target_label == Label::fake ? "machine-fake" : "machine-real";
  std::map<std::string, std::size_t> seen;
  for (const GenerationRecord* r : accepted) {
    if (++seen[r->origin_id] > 1) {
      result.excluded.emplace_back(r->origin_id, "duplicate origin_id");
      continue;
    }
    if (seed_corpus != nullptr && seed_corpus->find(r->origin_id) == nullptr)
      throw ValidationError("assemble_machine_corpus: origin_id '" + r->origin_id +
                            "' does not resolve in the seed corpus");
    if (r->title.empty()) {
      result.excluded.emplace_back(r->origin_id, "empty title");
      continue;
    }
    const std::size_t words = word_count(r->body);
    if (words < static_cast<std::size_t>(opts.min_body_words)) {
      result.excluded.emplace_back(
          r->origin_id, "body too short (" + std::to_string(words) + " words < " +
                            std::to_string(opts.min_body_words) + ")");
      continue;
    }
    Article a;
    a.id = prefix + r->origin_id;
    a.title = r->title;
    a.text = r->body;
    a.label = target_label;
    a.source = Source::machine;
    a.origin_id = r->origin_id;
    result.corpus.articles.push_back(std::move(a));
  }
  if (result.corpus.empty())
    throw ValidationError(
        "assemble_machine_corpus: no accepted record survived the filters");
  return result;
}

std::string review_to_csv(const std::vector<GenerationRecord>& records) {
  std::string out = "id,accepted,reason\n";
  for (const GenerationRecord& r : records) {
    out += detail::csv_field(r.origin_id);
    out += ',';
    out += r.accepted ? "1" : "0";
    out += ',';
    out += detail::csv_field(r.rejection_reason.value_or(""));
    out += '\n';
  }
  return out;
}

void apply_review_csv(std::vector<GenerationRecord>& records, std::istream& csv) {
  std::map<std::string, GenerationRecord*> by_id;
  for (GenerationRecord& r : records) by_id[r.origin_id] = &r;

  std::string line;
  long line_no = 0;
  bool saw_header = false;
  while (std::getline(csv, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> fields = detail::split_csv_line(line);
    if (!saw_header) {
      saw_header = true;
      if (fields.size() >= 2 && fields[0] == "id" && fields[1] == "accepted") continue;
      throw ParseError("review CSV must start with header 'id,accepted,reason'",
                       line_no);
    }
    if (fields.size() < 2) throw ParseError("review row needs id and accepted", line_no);
    auto it = by_id.find(fields[0]);
    if (it == by_id.end())
      throw ParseError("review row for unknown origin_id '" + fields[0] + "'", line_no);
    const std::string& flag = fields[1];
    bool accepted;
    if (flag == "1" || flag == "true" || flag == "yes")
      accepted = true;
    else if (flag == "0" || flag == "false" || flag == "no")
      accepted = false;
    else
      throw ParseError("review 'accepted' must be 0/1/true/false/yes/no, got '" + flag +
                           "'",
                       line_no);
    it->second->accepted = accepted;
    std::string reason = fields.size() >= 3 ? fields[2] : "";
    if (accepted)
      it->second->rejection_reason.reset();
    else
      it->second->rejection_reason = reason.empty() ? "rejected by review" : reason;
  }
  if (!saw_header) throw ParseError("review CSV is empty", 1);
}

}  // namespace newsaudit::llmgen
