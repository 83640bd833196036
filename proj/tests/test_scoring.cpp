#include <doctest.h>

#include "helpers.hpp"
#include "moralnet/error.hpp"
#include "moralnet/scoring.hpp"

using namespace moralnet;

namespace {

MoralTerm term(std::string s, bool stem, Foundation f) { return {std::move(s), stem, {{f, Polarity::Virtue}}}; }

TweetRecord rec(std::string id, std::string text, Language lang = Language::English) {
  TweetRecord r;
  r.id = std::move(id);
  r.user_id = "u";
  r.text = std::move(text);
  r.lang = lang;
  return r;
}

CleanText tokens(std::vector<std::string> toks) {
  CleanText c;
  c.lang = Language::English;
  c.tokens = std::move(toks);
  return c;
}

const MoralLexicon& lexicon() {
  static const MoralLexicon lex(
      {term("care", true, Foundation::Care), term("harm", true, Foundation::Care), term("law", false, Foundation::Authority),
       term("order", false, Foundation::Authority), term("pure", true, Foundation::Purity),
       {"moral", true, {{Foundation::GeneralMorality, Polarity::Virtue}}},
       {"cruel", true, {{Foundation::Care, Polarity::Vice}, {Foundation::Purity, Polarity::Vice}}}},
      MatchMode::TokenPrefix, "en");
  return lex;
}

}  // namespace

TEST_CASE("loading arithmetic") {
  const auto v = moral_loading(tokens({"careful", "law", "harmful", "order"}), lexicon());
  CHECK(v.matched == 4);
  CHECK(v.values() == std::array<double, 5>{0.5, 0, 0, 0.5, 0});
  CHECK(label_tweet(v)->to_string() == "Care|Authority");

  const auto p = moral_loading(tokens({"pure", "purest", "purely"}), lexicon());
  CHECK(p.matched == 3);
  CHECK(p.values() == std::array<double, 5>{0, 0, 0, 0, 1});
  CHECK(label_tweet(p)->to_string() == "Purity");

  const auto none = moral_loading(tokens({"nothing", "here"}), lexicon());
  CHECK(none.matched == 0);
  CHECK_FALSE(label_tweet(none));
}

TEST_CASE("general morality is outside the five dimensions") {
  const auto v = moral_loading(tokens({"moral", "morality", "law"}), lexicon());
  CHECK(v.matched == 1);
  CHECK(v.counts[3] == 1);
  CHECK_FALSE(label_tweet(moral_loading(tokens({"moral"}), lexicon())));
}

TEST_CASE("a multi-category term counts once per foundation") {
  const auto v = moral_loading(tokens({"cruelty"}), lexicon());
  CHECK(v.matched == 1);
  CHECK(v.counts == std::array<std::uint32_t, 5>{1, 0, 0, 0, 1});
  CHECK(label_tweet(v)->size() == 2);
}

TEST_CASE("set counting ignores repeats") {
  const auto multi = moral_loading(tokens({"law", "law", "care"}), lexicon(), CountingMode::Multiset);
  const auto set = moral_loading(tokens({"law", "law", "care"}), lexicon(), CountingMode::Set);
  CHECK(multi.counts[3] == 2);
  CHECK(set.counts[3] == 1);
  CHECK(set.matched == 2);
}

TEST_CASE("corpus bookkeeping") {
  const std::vector<TweetRecord> recs{rec("1", "careful people"), rec("2", "nothing"), rec("3", "law and order")};
  const LanguageLexicons lex{&lexicon(), nullptr};
  const auto out = score_corpus(recs, lex, {});
  CHECK(out.tweets.size() == 2);
  CHECK(out.stats.english.in == 3);
  CHECK(out.stats.english.kept == 2);

  const auto empty = score_corpus({}, lex, {});
  CHECK(empty.tweets.empty());
  CHECK(empty.stats == FilterStats{});

  const std::vector<TweetRecord> ja{rec("4", "道徳", Language::Japanese)};
  CHECK(score_corpus(ja, lex, {}).stats.skipped == 1);
}

TEST_CASE("property: parallel scoring equals the serial reference") {
  std::vector<TweetRecord> recs;
  const std::vector<std::string> words{"care", "harm", "law", "order", "pure", "moral", "cruel", "x", "y", "z"};
  std::uint64_t s = 1;
  for (int i = 0; i < 3000; ++i) {
    std::string text;
    for (int k = 0; k < 6; ++k) {
      s = s * 6364136223846793005ULL + 1442695040888963407ULL;
      text += words[(s >> 33) % words.size()] + " ";
    }
    recs.push_back(rec(std::to_string(i), text));
  }
  const LanguageLexicons lex{&lexicon(), nullptr};
  const auto serial = score_corpus_serial(recs, lex, {});
  for (int threads : {1, 2, 4, 8}) {
    const auto par = score_corpus(recs, lex, {}, {CountingMode::Multiset, threads});
    REQUIRE(par.tweets.size() == serial.tweets.size());
    CHECK(par.stats == serial.stats);
    for (std::size_t i = 0; i < par.tweets.size(); ++i) {
      CHECK(par.tweets[i].tweet.id == serial.tweets[i].tweet.id);
      CHECK(par.tweets[i].loading == serial.tweets[i].loading);
      CHECK(par.tweets[i].labels == serial.tweets[i].labels);
    }
  }
}

TEST_CASE("property: labels are scale invariant and single-category loadings sum to one") {
  for (std::uint32_t a = 0; a < 4; ++a)
    for (std::uint32_t b = 0; b < 4; ++b)
      for (std::uint32_t c = 1; c < 4; ++c) {
        MoralLoadingVector v;
        v.counts = {a, b, c, 0, a};
        v.matched = 2 * a + b + c;
        MoralLoadingVector scaled = v;
        for (auto& x : scaled.counts) x *= 7;
        scaled.matched *= 7;
        CHECK(label_tweet(v) == label_tweet(scaled));
        double sum = 0;
        for (double x : v.values()) sum += x;
        CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
      }
}

TEST_CASE("scored jsonl round-trip and validation") {
  const std::vector<TweetRecord> recs{rec("1", "caring law law")};
  const auto out = score_corpus(recs, {&lexicon(), nullptr}, {});
  const auto text = scored_to_jsonl(out.tweets);
  const auto back = parse_scored_jsonl(text, "t", "s");
  REQUIRE(back.size() == 1);
  CHECK(back[0].loading == out.tweets[0].loading);
  CHECK(back[0].labels == out.tweets[0].labels);
  CHECK(scored_to_jsonl(back) == text);

  auto bad = nlohmann::json::parse(text);
  bad["labels"] = {"Care"};
  CHECK_THROWS_AS(parse_scored_jsonl(bad.dump() + "\n", "t", "s"), DataError);
}
