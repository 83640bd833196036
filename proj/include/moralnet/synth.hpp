#pragma once

#include "moralnet/foundation.hpp"
#include "moralnet/lexicon.hpp"
#include "moralnet/text.hpp"

#include <nlohmann/json.hpp>

#include <array>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace moralnet {

/// Platform-independent draws on top of mt19937_64 (the std distributions are
/// implementation-defined).
class SplitRng {
 public:
  explicit SplitRng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t below(std::uint64_t n);  // uniform in [0, n)
  double unit();                         // uniform in [0, 1)

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[below(i)]);
  }

 private:
  std::mt19937_64 engine_;
};

struct SyntheticSpec {
  std::size_t n_users = 1000;
  Language lang = Language::English;
  std::size_t min_tweets_per_user = 2;  // uniform between min and max
  std::size_t max_tweets_per_user = 4;
  std::array<double, kNumBasic> label_weights{1, 1, 1, 1, 1};
  std::array<std::vector<std::string>, kNumBasic> term_pools;  // surfaces matching exactly one foundation
  std::vector<std::string> filler_words;                       // must not match the lexicon
  std::size_t max_terms_per_tweet = 3;
  double off_label_tweet_rate = 0.25;  // chance that a non-decisive tweet carries another label
  double planted_fraction = 0.7;       // same-label share of every node's retweet weight
  std::size_t retweet_cycles = 10;     // every node ends up with 2 * cycles retweet weight
  std::int64_t start_timestamp = 1456790400;
};

struct SyntheticUser {
  std::string user_id;
  Foundation label;
  double h;  // exact same-label weight fraction
};

struct SyntheticTweet {
  std::string id;
  std::string user_id;
  std::array<std::uint32_t, kNumBasic> counts{};
  std::uint32_t matched = 0;
};

struct SyntheticCorpus {
  std::vector<TweetRecord> records;  // moral tweets, then retweets
  std::vector<SyntheticUser> users;
  std::vector<SyntheticTweet> tweets;
  double realized_fraction = 0.0;

  nlohmann::json truth_json() const;
};

/// Exact single-foundation terms of the lexicon that survive preprocessing as
/// themselves and match back to the same entry.
std::array<std::vector<std::string>, kNumBasic> term_pools_from_lexicon(const MoralLexicon& lex,
                                                                        const StopwordSet& stopwords);

std::vector<std::string> default_filler_words(Language lang);

/// Drops filler words that the lexicon would match.
std::vector<std::string> usable_filler_words(const std::vector<std::string>& words, const MoralLexicon& lex,
                                             const StopwordSet& stopwords);

/// Generates tweets that give each user a strict-argmax label and retweet
/// cycles that fix every node's same-label weight share at the realized
/// fraction. Throws std::invalid_argument for an invalid or infeasible spec.
SyntheticCorpus generate_synthetic(const SyntheticSpec& spec, std::uint64_t seed);

}  // namespace moralnet
