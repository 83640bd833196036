#include <doctest.h>

#include <cmath>
#include <random>

#include "moralnet/error.hpp"
#include "moralnet/valence.hpp"

using namespace moralnet;

namespace {

const ValenceLexicon& en_lex() {
  static const ValenceLexicon lex(
      {{"good", 1.9, false, 0}, {"bad", -2.5, false, 0}, {"very", 0, true, 0.293}, {"barely", 0, true, -0.293}},
      Language::English);
  return lex;
}

const ValenceLexicon& ja_lex() {
  static const ValenceLexicon lex({{"良い", 1, false, 0}, {"嬉しい", 1, false, 0}, {"悪い", -1, false, 0}},
                                  Language::Japanese);
  return lex;
}

ValenceResult en(std::vector<std::string> toks) { return valence_en(toks, en_lex()); }

}  // namespace

TEST_CASE("english rule arithmetic") {
  const auto good = en({"good"});
  CHECK(good.score == doctest::Approx(1.9 / std::sqrt(1.9 * 1.9 + 15)).epsilon(1e-12));
  CHECK(good.score == doctest::Approx(0.4404).epsilon(1e-4));
  CHECK(good.label == ValenceLabel::Positive);

  const double s = -1.9 * 0.74;
  const auto not_good = en({"not", "good"});
  CHECK(not_good.score == doctest::Approx(s / std::sqrt(s * s + 15)).epsilon(1e-12));
  CHECK(not_good.score == doctest::Approx(-0.3412).epsilon(1e-3));
  CHECK(not_good.label == ValenceLabel::Negative);

  const auto nothing = en({"table", "chair"});
  CHECK(nothing.score == 0.0);
  CHECK(nothing.label == ValenceLabel::Neutral);
}

TEST_CASE("negation window and boosters") {
  CHECK(en({"not", "a", "b", "good"}).score < 0);
  CHECK(en({"not", "a", "b", "c", "good"}).score > 0);
  const double boosted = 1.9 + 0.293;
  CHECK(en({"very", "good"}).score == doctest::Approx(boosted / std::sqrt(boosted * boosted + 15)));
  const double damped = -2.5 - 0.293;
  CHECK(en({"very", "bad"}).score == doctest::Approx(damped / std::sqrt(damped * damped + 15)));
  CHECK(en({"barely", "good"}).score < en({"good"}).score);
}

TEST_CASE("japanese sentence ratios") {
  CHECK(valence_ja("良い嬉しい。", ja_lex()).score == 1.0);
  CHECK(valence_ja("良い悪い。", ja_lex()).label == ValenceLabel::Neutral);
  const auto two = valence_ja("良い。悪い。", ja_lex());
  CHECK(two.score == 0.0);
  CHECK(two.label == ValenceLabel::Neutral);
  CHECK(valence_ja("良くない。", ja_lex()).score == 0.0);
  CHECK(valence_ja("良いない。", ja_lex()).score == -1.0);
  CHECK(valence_ja("", ja_lex()).label == ValenceLabel::Neutral);
}

TEST_CASE("lexicon parsing") {
  const auto lex = ValenceLexicon::parse("# c\nGood\t1.9\nvery\tBOOST\t0.293\n", Language::English, "v");
  REQUIRE(lex.find("good"));
  CHECK(lex.find("very")->is_booster);
  CHECK_THROWS_AS(ValenceLexicon::parse("good\tx\n", Language::English, "v"), DataError);
  CHECK_THROWS_AS(ValenceLexicon::parse("good\t1\ngood\t2\n", Language::English, "v"), DataError);
}

TEST_CASE("property: bounds, sign symmetry, label partition") {
  std::mt19937_64 rng(9);
  std::vector<ValenceLexiconEntry> pos, neg;
  for (int i = 0; i < 20; ++i) {
    const double p = 0.1 + static_cast<double>(rng() % 390) / 100.0;
    pos.push_back({"w" + std::to_string(i), p, false, 0});
    neg.push_back({"w" + std::to_string(i), -p, false, 0});
  }
  const ValenceLexicon a(pos, Language::English), b(neg, Language::English);
  const std::vector<std::string> extra{"not", "never", "x", "y"};
  for (int round = 0; round < 500; ++round) {
    std::vector<std::string> toks;
    for (int i = 0, n = static_cast<int>(rng() % 25); i < n; ++i)
      toks.push_back(rng() % 3 ? "w" + std::to_string(rng() % 20) : extra[rng() % extra.size()]);
    const auto ra = valence_en(toks, a);
    const auto rb = valence_en(toks, b);
    CHECK(std::fabs(ra.score) < 1.0);
    CHECK(rb.score == -ra.score);
    CHECK(ra.label == label_for(ra.score));
  }
  CHECK(label_for(0.0) == ValenceLabel::Neutral);
  CHECK(label_for(1e-300) == ValenceLabel::Positive);
  CHECK(label_for(-1e-300) == ValenceLabel::Negative);
}
