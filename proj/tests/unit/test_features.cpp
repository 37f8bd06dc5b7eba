#include <cmath>
#include <numeric>
#include <sstream>

#include "doctest.h"
#include "newsaudit/errors.hpp"
#include "newsaudit/textfeat/features.hpp"
#include "newsaudit/textfeat/sentiment.hpp"
#include "newsaudit/textfeat/tokenize.hpp"
#include "support/synthetic.hpp"
#include "support/tmpdir.hpp"

using namespace newsaudit;
using namespace newsaudit::textfeat;

namespace {

Article bare(const std::string& text) {
  Article a;
  a.id = "t1";
  a.title = "";  // keep the fixture text exact: extract runs on title+text
  a.text = text;
  a.label = Label::real;
  a.source = Source::human;
  return a;
}

double feat(const FeatureVector& fv, const std::string& name) {
  return fv.values.at(FeatureSchema::instance().index(name));
}

}  // namespace

TEST_CASE("schema lists the 50 features in canonical order") {
  const FeatureSchema& s = FeatureSchema::instance();
  REQUIRE(s.size() == 50);
  const std::vector<std::string> want = {
      // style (25)
      "quotes", "exclaim", "allpunc", "allcaps", "stops", "CC", "CD", "DT", "IN", "JJ",
      "MD", "NNS", "NNP", "PRP", "PRP$", "RB", "TO", "WP$", "WRB", "VB", "VBD", "VBG",
      "VBN", "VBZ", "WDT",
      // complexity (5)
      "ttr", "avg_wordlen", "word_count", "smog_index", "coleman_liau_index",
      // bias (7)
      "bias_words", "assertatives", "hedges", "implicatives", "report_verbs",
      "positive_opinion_words", "negative_opinion_words",
      // affect (8)
      "vadneg", "vadneu", "vadpos", "wneg", "wpos", "wneu", "sneg", "spos",
      // moral (4)
      "IngroupVirtue", "IngroupVice", "AuthorityVice", "PurityVirtue",
      // event (1)
      "num_dates"};
  REQUIRE(s.names() == want);
  CHECK(s.index("quotes") == 0);
  CHECK(s.index("num_dates") == 49);
  CHECK(s.group("quotes") == FeatureGroup::style);
  CHECK(s.group("smog_index") == FeatureGroup::complexity);
  CHECK(s.group("hedges") == FeatureGroup::bias);
  CHECK(s.group("vadneg") == FeatureGroup::affect);
  CHECK(s.group("PurityVirtue") == FeatureGroup::moral);
  CHECK(s.group("num_dates") == FeatureGroup::event);
  CHECK_THROWS_AS((void)s.index("not_a_feature"), ValidationError);
}

TEST_CASE("coleman-liau on the two-sentence fixture") {
  // 6 words, 18 letters, 2 sentences:
  // L = 300 letters per 100 words, S = 33.33 sentences per 100 words
  // CLI = 0.0588*300 - 0.296*100/3 - 15.8 = -8.0267
  FeatureVector fv = extract_features(bare("The cat sat. The dog ran."), builtin_lexicons());
  CHECK(feat(fv, "coleman_liau_index") ==
        doctest::Approx(0.0588 * 300.0 - 0.296 * (100.0 / 3.0) - 15.8).epsilon(1e-12));
  CHECK(feat(fv, "coleman_liau_index") == doctest::Approx(-8.0267).epsilon(1e-4));
  CHECK(feat(fv, "word_count") == doctest::Approx(6.0));
  CHECK(feat(fv, "avg_wordlen") == doctest::Approx(3.0));
  CHECK(feat(fv, "ttr") == doctest::Approx(5.0 / 6.0));  // the,cat,sat,dog,ran
}

TEST_CASE("smog on a 30-sentence, 15-polysyllable fixture") {
  std::string text;
  for (int i = 0; i < 15; ++i) text += "It was dangerous. ";
  for (int i = 0; i < 15; ++i) text += "It was fine. ";
  FeatureVector fv = extract_features(bare(text), builtin_lexicons());
  // smog = 1.0430 * sqrt(15 * 30 / 30) + 3.1291
  CHECK(feat(fv, "smog_index") ==
        doctest::Approx(1.0430 * std::sqrt(15.0) + 3.1291).epsilon(1e-12));
  CHECK(feat(fv, "smog_index") == doctest::Approx(7.1686).epsilon(1e-4));
}

TEST_CASE("punctuation and caps densities") {
  // tokens: He said " NO WAY ! " loudly . Done .  -> 11 tokens, 6 words
  FeatureVector fv =
      extract_features(bare("He said \"NO WAY!\" loudly. Done."), builtin_lexicons());
  CHECK(feat(fv, "quotes") == doctest::Approx(2.0 / 11.0));
  CHECK(feat(fv, "exclaim") == doctest::Approx(1.0 / 11.0));
  CHECK(feat(fv, "allpunc") == doctest::Approx(5.0 / 11.0));
  CHECK(feat(fv, "allcaps") == doctest::Approx(2.0 / 6.0));  // NO WAY over words
}

TEST_CASE("stopword density counts per token") {
  // tokens: The cat and the dog of the town . -> 9 tokens, stopword hits 5
  const LexiconSet& lex = builtin_lexicons();
  REQUIRE(lex.stopwords.contains("the"));
  REQUIRE(lex.stopwords.contains("and"));
  REQUIRE(lex.stopwords.contains("of"));
  FeatureVector fv = extract_features(bare("The cat and the dog of the town."), lex);
  CHECK(feat(fv, "stops") == doctest::Approx(5.0 / 9.0));
}

TEST_CASE("pos tag shares divide by token count and sum below one") {
  // tokens: The cat sat . -> DT NN VBD .
  FeatureVector fv = extract_features(bare("The cat sat."), builtin_lexicons());
  CHECK(feat(fv, "DT") == doctest::Approx(0.25));
  CHECK(feat(fv, "VBD") == doctest::Approx(0.25));
  CHECK(feat(fv, "NNS") == doctest::Approx(0.0));

  // The 20 tracked tags cover at most every token.
  const std::vector<std::string> pos_feats = {
      "CC", "CD", "DT", "IN", "JJ", "MD", "NNS", "NNP", "PRP", "PRP$",
      "RB", "TO", "WP$", "WRB", "VB", "VBD", "VBG", "VBN", "VBZ", "WDT"};
  Corpus c = testsupport::make_unbiased_corpus(3, 9);
  FeatureMatrix m = extract_matrix(c, builtin_lexicons());
  for (const auto& row : m.rows) {
    double mass = 0.0;
    for (const auto& name : pos_feats) mass += row[FeatureSchema::instance().index(name)];
    CHECK(mass >= 0.0);
    CHECK(mass <= 1.0 + 1e-12);
  }
}

TEST_CASE("opinion word densities from hand-counted text") {
  const LexiconSet& lex = builtin_lexicons();
  REQUIRE(lex.opinion_negative.contains("terrible"));
  REQUIRE(lex.opinion_negative.contains("awful"));
  // tokens: The terrible plan had awful flaws . -> 7 tokens, 2 negative hits
  FeatureVector fv = extract_features(bare("The terrible plan had awful flaws."), lex);
  CHECK(feat(fv, "negative_opinion_words") == doctest::Approx(2.0 / 7.0));
  CHECK(feat(fv, "positive_opinion_words") >= 0.0);
}

TEST_CASE("affect features mirror the sentiment scorer") {
  const LexiconSet& lex = builtin_lexicons();
  Article a = bare("The results were great but the schedule was awful.");
  FeatureVector fv = extract_features(a, lex);
  SentimentScores s = sentiment_scores(tokenize(a.text), lex.sentiment);
  CHECK(feat(fv, "vadneg") == doctest::Approx(s.neg));
  CHECK(feat(fv, "vadneu") == doctest::Approx(s.neu));
  CHECK(feat(fv, "vadpos") == doctest::Approx(s.pos));
}

TEST_CASE("subjectivity buckets split by strength and polarity") {
  const LexiconSet& lex = builtin_lexicons();
  // Find one strong-negative and one weak-negative subjectivity word.
  std::string strong_neg, weak_neg;
  for (const auto& [term, e] : lex.subjectivity.entries) {
    if (term.find(' ') != std::string::npos) continue;
    if (!e.polarity || !e.strength) continue;
    // avoid terms also acting as multiword phrase prefixes
    if (*e.polarity == Polarity::negative && *e.strength == Strength::strong &&
        strong_neg.empty())
      strong_neg = term;
    if (*e.polarity == Polarity::negative && *e.strength == Strength::weak && weak_neg.empty())
      weak_neg = term;
  }
  REQUIRE_FALSE(strong_neg.empty());
  REQUIRE_FALSE(weak_neg.empty());
  // tokens: Committees mentioned <w> . -> 4 tokens
  FeatureVector fs =
      extract_features(bare("Committees mentioned " + strong_neg + "."), lex);
  CHECK(feat(fs, "sneg") >= doctest::Approx(1.0 / 4.0));
  FeatureVector fw = extract_features(bare("Committees mentioned " + weak_neg + "."), lex);
  CHECK(feat(fw, "wneg") >= doctest::Approx(1.0 / 4.0));
}

TEST_CASE("moral foundation features count only their category") {
  const LexiconSet& lex = builtin_lexicons();
  std::string virtue;
  for (const auto& [term, e] : lex.moral.entries)
    if (*e.moral == "IngroupVirtue" && term.find(' ') == std::string::npos) {
      virtue = term;
      break;
    }
  REQUIRE_FALSE(virtue.empty());
  FeatureVector fv = extract_features(bare("They mentioned " + virtue + " yesterday."), lex);
  CHECK(feat(fv, "IngroupVirtue") > 0.0);
}

TEST_CASE("date expression counting") {
  CHECK(count_date_expressions("the meeting is on january 5, 2020") == 1);
  CHECK(count_date_expressions("5 january was quiet") == 1);
  CHECK(count_date_expressions("march 2021 report") == 1);
  CHECK(count_date_expressions("due 12/31/2020 or 31-12-99") == 2);
  CHECK(count_date_expressions("back in 1999 it rained") == 1);
  CHECK(count_date_expressions("on monday and tuesday") == 2);
  CHECK(count_date_expressions("yesterday, today, tomorrow, tonight") == 4);
  CHECK(count_date_expressions("MONDAY shouting") == 1);  // case-insensitive
  CHECK(count_date_expressions("no dates in this text") == 0);
  // 2100 is outside the standalone-year range
  CHECK(count_date_expressions("the year 2100 plan") == 0);

  // As a feature: tokens = The meeting is on January 5 , 2020 and tomorrow . -> 11
  FeatureVector fv = extract_features(
      bare("The meeting is on January 5, 2020 and tomorrow."), builtin_lexicons());
  CHECK(feat(fv, "num_dates") == doctest::Approx(2.0 / 11.0));
}

TEST_CASE("titles join the body for extraction") {
  Article with_title = bare("Body text here stays fixed.");
  with_title.title = "Exciting TITLE words";
  FeatureVector fv = extract_features(with_title, builtin_lexicons());
  // 3 title words + 5 body words
  CHECK(feat(fv, "word_count") == doctest::Approx(8.0));
  CHECK(feat(fv, "allcaps") == doctest::Approx(1.0 / 8.0));
}

TEST_CASE("documents with no word tokens zero the word-denominated features") {
  FeatureVector fv = extract_features(bare("... !!"), builtin_lexicons());
  CHECK(feat(fv, "word_count") == doctest::Approx(0.0));
  CHECK(feat(fv, "ttr") == doctest::Approx(0.0));
  CHECK(feat(fv, "avg_wordlen") == doctest::Approx(0.0));
  CHECK(feat(fv, "smog_index") == doctest::Approx(0.0));
  CHECK(feat(fv, "coleman_liau_index") == doctest::Approx(0.0));
  CHECK(feat(fv, "allcaps") == doctest::Approx(0.0));
  // token-denominated densities stay defined
  CHECK(feat(fv, "allpunc") == doctest::Approx(1.0));
}

TEST_CASE("every feature value is finite and densities stay in range") {
  Corpus c = testsupport::make_biased_corpus(6, 6, 6, /*seed=*/21);
  FeatureMatrix m = extract_matrix(c, builtin_lexicons());
  REQUIRE(m.size() == c.size());
  const FeatureSchema& s = FeatureSchema::instance();
  for (const auto& row : m.rows) {
    REQUIRE(row.size() == s.size());
    for (std::size_t j = 0; j < row.size(); ++j) {
      CHECK(std::isfinite(row[j]));
      const std::string& name = s.names()[j];
      if (name != "word_count" && name != "smog_index" && name != "coleman_liau_index" &&
          name != "avg_wordlen") {
        CHECK(row[j] >= 0.0);
        CHECK(row[j] <= 1.0 + 1e-12);
      }
    }
  }
}

TEST_CASE("matrix csv round trip is exact") {
  Corpus c = testsupport::make_biased_corpus(4, 4, 4, 13);
  FeatureMatrix m = extract_matrix(c, builtin_lexicons());
  testsupport::TempDir tmp("featcsv");
  save_feature_matrix(tmp / "m.csv", m, {"tool_version: 0.0.test", "seed: 1"});
  FeatureMatrix back = load_feature_matrix(tmp / "m.csv");
  REQUIRE(back.size() == m.size());
  CHECK(back.article_ids == m.article_ids);
  for (std::size_t i = 0; i < m.size(); ++i) {
    CHECK(back.subgroups[i] == m.subgroups[i]);
    REQUIRE(back.rows[i].size() == m.rows[i].size());
    for (std::size_t j = 0; j < m.rows[i].size(); ++j)
      CHECK(back.rows[i][j] == m.rows[i][j]);  // bitwise: shortest round-trip formatting
  }
}

TEST_CASE("matrix csv parser rejects malformed input") {
  SUBCASE("wrong header") {
    std::istringstream in("article_id,subgroup,bogus\nx,HR,1\n");
    CHECK_THROWS_AS((void)parse_feature_matrix(in), ValidationError);
  }
  SUBCASE("short row") {
    std::ostringstream head;
    head << "article_id,subgroup";
    for (const auto& n : FeatureSchema::instance().names()) head << "," << n;
    std::istringstream in(head.str() + "\nx,HR,1,2\n");
    CHECK_THROWS_AS((void)parse_feature_matrix(in), ParseError);
  }
}

TEST_CASE("extraction is deterministic") {
  Corpus c = testsupport::make_biased_corpus(3, 3, 3, 77);
  FeatureMatrix a = extract_matrix(c, builtin_lexicons());
  FeatureMatrix b = extract_matrix(c, builtin_lexicons());
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(a.rows[i] == b.rows[i]);
}
