#include "support/synthetic.hpp"

#include <algorithm>
#include <cctype>
#include <random>
#include <vector>

namespace testsupport {

namespace {

using newsaudit::Article;
using newsaudit::Corpus;
using newsaudit::Label;
using newsaudit::Source;

const std::vector<std::string>& subjects() {
  static const std::vector<std::string> v = {
      "the city council",    "the school board",   "the research team",
      "the planning committee", "the finance office", "the transit agency",
      "the housing bureau",  "the local museum",   "the parks division",
      "the audit panel"};
  return v;
}

const std::vector<std::string>& verbs() {
  static const std::vector<std::string> v = {
      "reviewed", "approved", "discussed", "examined",  "presented",
      "outlined", "prepared", "drafted",   "revised",   "scheduled"};
  return v;
}

// Objects split as determiner + modifier + head so a marker can upper-case
// the head and the fake signal can slot an adjective after the determiner.
struct ObjectPhrase {
  const char* det;
  const char* modifier;
  const char* head;
};

const std::vector<ObjectPhrase>& objects() {
  static const std::vector<ObjectPhrase> v = {
      {"the", "annual", "budget"},      {"a", "new", "proposal"},
      {"the", "quarterly", "summary"},  {"a", "community", "project"},
      {"the", "updated", "timetable"},  {"a", "maintenance", "plan"},
      {"the", "funding", "request"},    {"a", "zoning", "change"},
      {"the", "staffing", "roster"},    {"a", "procurement", "contract"}};
  return v;
}

// Tails are all four tokens long so swapping the human pool for the machine
// pool never changes an article's token count.
const std::vector<std::string>& human_tails() {
  static const std::vector<std::string> v = {
      "during the evening session", "after a brief recess",
      "before the final vote",      "with minimal public attendance",
      "in the main chamber"};
  return v;
}

const std::vector<std::string>& machine_tails() {
  static const std::vector<std::string> v = {
      "on monday this week",      "on friday last month",
      "early on tuesday morning", "late on thursday evening",
      "on wednesday for review"};
  return v;
}

const std::vector<std::string>& negative_words() {
  // All present in the bundled opinion_negative lexicon; most also carry
  // sentiment valences and subjectivity entries, so the shared fake signal
  // reaches negative_opinion_words, vadneg, wneg, and sneg together.
  static const std::vector<std::string> v = {
      "terrible", "awful",    "corrupt", "scandal",
      "dishonest", "disaster", "harmful", "misleading"};
  return v;
}

const std::vector<std::string>& title_heads() {
  static const std::vector<std::string> v = {"briefing", "overview", "agenda",
                                             "recap", "digest"};
  return v;
}

std::string capitalized(std::string s) {
  if (!s.empty()) s[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(s[0])));
  return s;
}

std::string upper(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
  return s;
}

template <typename T>
const T& pick(std::mt19937_64& rng, const std::vector<T>& pool) {
  std::uniform_int_distribution<std::size_t> d(0, pool.size() - 1);
  return pool[d(rng)];
}

struct GroupPlan {
  newsaudit::Subgroup subgroup;
  std::size_t count;
  double neg_rate_mean;
  bool markers;
};

Article make_article(std::mt19937_64& rng, const GroupPlan& plan,
                     const SynthSpec& spec, std::size_t index) {
  std::normal_distribution<double> jitter(plan.neg_rate_mean, spec.rate_jitter);
  double neg_rate = std::clamp(jitter(rng), 0.0, 0.95);
  std::uniform_int_distribution<int> sentence_count(8, 14);
  std::bernoulli_distribution exclaim(0.55);
  std::bernoulli_distribution caps(0.5);

  int n_sentences = sentence_count(rng);
  std::string body;
  for (int s = 0; s < n_sentences; ++s) {
    const std::string& subject = pick(rng, subjects());
    const std::string& verb = pick(rng, verbs());
    const ObjectPhrase& object = pick(rng, objects());
    bool negative = std::bernoulli_distribution(neg_rate)(rng);
    const std::string& tail =
        plan.markers ? pick(rng, machine_tails()) : pick(rng, human_tails());

    std::string head = object.head;
    if (plan.markers && caps(rng)) head = upper(head);

    std::string sentence = capitalized(subject) + " " + verb + " " + object.det;
    if (negative) sentence += " " + pick(rng, negative_words());
    sentence += std::string(" ") + object.modifier + " " + head + " " + tail;
    sentence += (plan.markers && exclaim(rng)) ? "!" : ".";

    if (!body.empty()) body += " ";
    body += sentence;
  }

  Article a;
  a.label = (plan.subgroup == newsaudit::Subgroup::HF ||
             plan.subgroup == newsaudit::Subgroup::MF)
                ? Label::fake
                : Label::real;
  a.source = (plan.subgroup == newsaudit::Subgroup::MF ||
              plan.subgroup == newsaudit::Subgroup::MR)
                 ? Source::machine
                 : Source::human;
  std::string tag = newsaudit::to_string(plan.subgroup);
  std::transform(tag.begin(), tag.end(), tag.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  char num[8];
  std::snprintf(num, sizeof(num), "%04zu", index);
  a.id = spec.id_prefix + "-" + tag + "-" + num;
  a.title = capitalized(pick(rng, subjects()).substr(4)) + " session " +
            pick(rng, title_heads());
  a.text = body;
  return a;
}

}  // namespace

Corpus make_synthetic_corpus(const SynthSpec& spec) {
  std::mt19937_64 rng(spec.seed);
  const GroupPlan plans[] = {
      {newsaudit::Subgroup::HR, spec.hr, spec.real_neg_rate, false},
      {newsaudit::Subgroup::HF, spec.hf, spec.fake_neg_rate, false},
      {newsaudit::Subgroup::MF, spec.mf, spec.fake_neg_rate, spec.machine_markers},
      {newsaudit::Subgroup::MR, spec.mr, spec.real_neg_rate, spec.machine_markers},
  };
  Corpus corpus;
  corpus.name = spec.name;
  for (const GroupPlan& plan : plans)
    for (std::size_t i = 0; i < plan.count; ++i)
      corpus.articles.push_back(make_article(rng, plan, spec, i));
  newsaudit::validate_corpus(corpus);
  return corpus;
}

Corpus make_biased_corpus(std::size_t hr, std::size_t hf, std::size_t mf,
                          std::uint64_t seed) {
  SynthSpec spec;
  spec.hr = hr;
  spec.hf = hf;
  spec.mf = mf;
  spec.seed = seed;
  spec.name = "synthetic-biased";
  return make_synthetic_corpus(spec);
}

Corpus make_unbiased_corpus(std::size_t per_group, std::uint64_t seed) {
  SynthSpec spec;
  spec.hr = per_group;
  spec.hf = per_group;
  spec.mf = per_group;
  spec.fake_neg_rate = spec.real_neg_rate;  // one shared distribution
  spec.machine_markers = false;
  spec.seed = seed;
  spec.name = "synthetic-unbiased";
  return make_synthetic_corpus(spec);
}

Corpus make_mr_corpus(std::size_t n, std::uint64_t seed) {
  SynthSpec spec;
  spec.mr = n;
  spec.seed = seed;
  spec.id_prefix = "synmr";
  spec.name = "synthetic-mr";
  return make_synthetic_corpus(spec);
}

}  // namespace testsupport
