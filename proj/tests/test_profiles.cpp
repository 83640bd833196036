#include <doctest.h>

#include <algorithm>
#include <random>

#include "moralnet/profiles.hpp"

using namespace moralnet;

namespace {

MoralScoredTweet tweet(std::string user, std::initializer_list<Foundation> labels, int id = 0) {
  MoralScoredTweet t;
  t.tweet.id = std::to_string(id);
  t.tweet.user_id = std::move(user);
  t.tweet.lang = Language::English;
  for (auto f : labels) {
    t.labels.insert(f);
    ++t.loading.counts[index_of(f)];
    ++t.loading.matched;
  }
  return t;
}

using F = Foundation;

}  // namespace

TEST_CASE("profile proportions") {
  const std::vector<MoralScoredTweet> ts{tweet("a", {F::Care}), tweet("a", {F::Care}), tweet("a", {F::Fairness}),
                                         tweet("a", {F::Purity})};
  const auto p = build_profiles(ts).at("a");
  CHECK(p.proportions() == std::array<double, 5>{0.5, 0.25, 0, 0, 0.25});
  CHECK(p.label == F::Care);

  const std::vector<MoralScoredTweet> multi{tweet("b", {F::Care, F::Authority}), tweet("b", {F::Care})};
  const auto q = build_profiles(multi).at("b");
  CHECK(q.proportions() == std::array<double, 5>{1.0, 0, 0, 0.5, 0});
  const auto dropped = build_profiles(multi, MultilabelMode::Drop).at("b");
  CHECK(dropped.tweet_count == 1);
  CHECK_FALSE(dropped.label);
}

TEST_CASE("label exclusion rules") {
  const std::vector<MoralScoredTweet> tie{tweet("t", {F::Care}), tweet("t", {F::Fairness})};
  CHECK_FALSE(build_profiles(tie).at("t").label);
  const std::vector<MoralScoredTweet> single{tweet("s", {F::Care})};
  const auto profiles = build_profiles(single);
  CHECK(profiles.at("s").tweet_count == 1);
  CHECK_FALSE(profiles.at("s").label);
  CHECK(assign_labels(profiles).empty());
}

TEST_CASE("profiles csv round-trip") {
  const std::vector<MoralScoredTweet> ts{tweet("a", {F::Care}), tweet("a", {F::Care, F::Purity}),
                                         tweet("a", {F::Fairness}), tweet("b", {F::Ingroup})};
  const auto profiles = build_profiles(ts);
  const auto text = profiles_csv(profiles);
  const auto back = parse_profiles_csv(text, "t", "s");
  CHECK(profiles_csv(back) == text);
  CHECK(back.at("a").label_counts == profiles.at("a").label_counts);
}

TEST_CASE("property: filtering rules and order independence") {
  std::mt19937_64 rng(21);
  for (int round = 0; round < 200; ++round) {
    std::vector<MoralScoredTweet> ts;
    for (int i = 0, n = static_cast<int>(rng() % 60); i < n; ++i) {
      MoralScoredTweet t = tweet("u" + std::to_string(rng() % 8), {}, i);
      const int k = 1 + static_cast<int>(rng() % 2);
      for (int j = 0; j < k; ++j) t.labels.insert(kBasicFoundations[rng() % 5]);
      ts.push_back(t);
    }
    const auto profiles = build_profiles(ts);
    auto shuffled = ts;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    CHECK(profiles_csv(build_profiles(shuffled)) == profiles_csv(profiles));

    const auto kept = assign_labels(profiles);
    for (const auto& [id, p] : profiles) {
      std::uint32_t sum = 0, best = 0, at_best = 0;
      for (auto c : p.label_counts) sum += c;
      for (auto c : p.label_counts) best = std::max(best, c);
      for (auto c : p.label_counts) at_best += c == best;
      CHECK(sum >= p.tweet_count);
      const bool retained = std::any_of(kept.begin(), kept.end(), [&](const auto& k) { return k.user_id == id; });
      CHECK(retained == (p.tweet_count >= 2 && at_best == 1));
      if (retained) CHECK(p.label_counts[index_of(*p.label)] == best);
    }
  }
}
