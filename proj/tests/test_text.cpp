#include <doctest.h>

#include <random>

#include "moralnet/error.hpp"
#include "moralnet/io.hpp"
#include "moralnet/text.hpp"
#include "moralnet/unicode.hpp"

using namespace moralnet;

namespace {

TweetRecord rec(std::string text, Language lang) {
  TweetRecord r;
  r.id = "1";
  r.user_id = "u";
  r.text = std::move(text);
  r.lang = lang;
  return r;
}

std::string join(const std::vector<std::string>& toks) {
  std::string out;
  for (const auto& t : toks) out += (out.empty() ? "" : " ") + t;
  return out;
}

}  // namespace

TEST_CASE("english preprocessing") {
  const StopwordSet none;
  CHECK(preprocess(rec("Morality matters! https://t.co/x @bob #ethics", Language::English), none).tokens ==
        std::vector<std::string>{"morality", "matters", "ethics"});
  const StopwordSet standard{"the", "a", "of"};
  CHECK(preprocess(rec("the a of", Language::English), standard).tokens.empty());
  CHECK(tokenize_en("Don't   STOP\u2014now…", none) == std::vector<std::string>{"dont", "stop", "now"});
  CHECK(tokenize_en("ＦＵＬＬwidth", none) == std::vector<std::string>{"fullwidth"});
  CHECK(tokenize_en("price $5 + tax = 6€", none) == std::vector<std::string>{"price", "5", "tax", "6"});
  CHECK(tokenize_en("see http://x.org/a?b=c,d end", none) == std::vector<std::string>{"see", "end"});
}

TEST_CASE("japanese preprocessing") {
  CHECK(preprocess(rec("道徳 http://a.jp @taro", Language::Japanese), {}).normalized_text == "道徳");
  CHECK(normalize_ja("ｶﾀｶﾅ！と　全角") == "カタカナ と 全角");
  CHECK(normalize_ja("#選挙 の話") == "選挙 の話");
  CHECK(valence_text_ja("良い。悪い！") == "良い。悪い!");
  CHECK(preprocess(rec("whatever", Language::Unknown), {}).empty());
}

TEST_CASE("keyword filter") {
  const std::vector<std::string> moral{"moral"};
  CHECK(keyword_filter(rec("this is immoral", Language::English), moral));
  CHECK(keyword_filter(rec("MORALITY", Language::English), moral));
  CHECK_FALSE(keyword_filter(rec("ethics", Language::English), moral));
  const std::vector<std::string> ja{"不道徳"};
  CHECK(keyword_filter(rec("不道徳な話", Language::Japanese), ja));
  CHECK_THROWS_AS(keyword_filter(rec("x", Language::English), std::vector<std::string>{}), std::invalid_argument);
}

TEST_CASE("corpus records") {
  const auto r = record_from_json(nlohmann::json::parse(
      R"({"id":"1","user_id":"a","text":"hi","lang":"en","timestamp":5,"retweet_of_user_id":"b","retweet_of_tweet_id":"0"})"));
  CHECK(r.is_retweet());
  CHECK(record_from_json(to_json(r)).retweet_of_tweet_id == "0");
  CHECK_THROWS(record_from_json(nlohmann::json::parse(R"({"id":"","user_id":"a","text":"","lang":"en","timestamp":1})")));
  CHECK_THROWS(record_from_json(nlohmann::json::parse(
      R"({"id":"1","user_id":"a","text":"","lang":"en","timestamp":1,"retweet_of_user_id":"b"})")));

  try {
    parse_corpus("{\"id\":\"1\",\"user_id\":\"a\",\"text\":\"x\",\"lang\":\"en\",\"timestamp\":1}\n\nnot json\n", "score",
                 "c.jsonl");
    FAIL("expected a DataError");
  } catch (const DataError& e) {
    CHECK(e.line() == 3);
    CHECK(std::string(e.what()).find("[score] c.jsonl:3") == 0);
  }
}

TEST_CASE("property: preprocessing is idempotent and strips classes") {
  std::mt19937_64 rng(3);
  const std::vector<std::string> parts{"Hello", "WORLD", "#tag", "@user", "https://t.co/abc", "it's", "\u2014", "!", "?",
                                       "ｆｕｌｌ", "café", "naïve", "😀", "100%", "(x)", "a.b", "\t", "moral"};
  const StopwordSet stop{"the", "hello"};
  for (int round = 0; round < 300; ++round) {
    std::string text;
    for (int i = 0, n = 1 + static_cast<int>(rng() % 10); i < n; ++i) text += parts[rng() % parts.size()] + " ";
    const auto once = tokenize_en(text, stop);
    CHECK(tokenize_en(join(once), stop) == once);
    for (const auto& tok : once) {
      for (std::size_t pos = 0; pos < tok.size();) {
        const auto cls = unicode::classify(unicode::next_code_point(tok, pos));
        CHECK(cls == unicode::CharClass::Other);
      }
      CHECK(tok.find('#') == std::string::npos);
    }
    const auto ja = normalize_ja(text);
    CHECK(normalize_ja(ja) == ja);
  }
}
