#include "moralnet/synth.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace moralnet {

std::uint64_t SplitRng::below(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("below(0)");
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % n;
  std::uint64_t x;
  do {
    x = engine_();
  } while (x >= limit);
  return x % n;
}

double SplitRng::unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

std::array<std::vector<std::string>, kNumBasic> term_pools_from_lexicon(const MoralLexicon& lex,
                                                                        const StopwordSet& stopwords) {
  std::array<std::vector<std::string>, kNumBasic> pools;
  for (const auto& term : lex.terms()) {
    const auto fs = term.basic_foundations();
    if (fs.size() != 1) continue;
    if (lex.match_mode() == MatchMode::TokenPrefix) {
      const auto toks = tokenize_en(term.surface, stopwords);
      if (toks.size() != 1 || toks[0] != term.surface || lex.match_token(term.surface) != &term) continue;
    } else {
      if (normalize_ja(term.surface) != term.surface) continue;
      const auto m = lex.match_substring(term.surface);
      if (m.size() != 1 || m[0].term != &term) continue;
    }
    pools[index_of(fs.members().front())].push_back(term.surface);
  }
  return pools;
}

std::vector<std::string> default_filler_words(Language lang) {
  if (lang == Language::Japanese)
    return {"今日", "天気", "電車", "時間", "会社", "ニュース", "週末", "映画", "写真", "料理",
            "音楽", "学校", "雨", "朝", "夜", "本", "駅", "話題", "旅行", "季節"};
  return {"today", "weather", "train", "people", "news", "weekend", "movie", "coffee", "city",
          "music", "school", "morning", "evening", "book", "station", "topic", "travel", "season",
          "debate", "discussion", "question", "article", "story", "video"};
}

std::vector<std::string> usable_filler_words(const std::vector<std::string>& words, const MoralLexicon& lex,
                                             const StopwordSet& stopwords) {
  std::vector<std::string> out;
  for (const auto& w : words) {
    if (lex.match_mode() == MatchMode::TokenPrefix) {
      const auto toks = tokenize_en(w, stopwords);
      if (toks.size() != 1 || lex.match_token(toks[0])) continue;
    } else {
      if (!lex.match_substring(normalize_ja(w)).empty()) continue;
    }
    out.push_back(w);
  }
  return out;
}

namespace {

std::vector<std::size_t> apportion(const std::array<double, kNumBasic>& weights, std::size_t n) {
  const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
  std::vector<std::size_t> counts(kNumBasic, 0);
  std::vector<std::pair<double, std::size_t>> remainders;
  std::size_t assigned = 0;
  for (std::size_t j = 0; j < kNumBasic; ++j) {
    const double exact = weights[j] / total * static_cast<double>(n);
    counts[j] = static_cast<std::size_t>(std::floor(exact));
    assigned += counts[j];
    remainders.emplace_back(-(exact - std::floor(exact)), j);
  }
  std::stable_sort(remainders.begin(), remainders.end());
  for (std::size_t k = 0; assigned < n; ++k, ++assigned) ++counts[remainders[k % kNumBasic].second];
  return counts;
}

void validate(const SyntheticSpec& spec) {
  if (spec.n_users < 2) throw std::invalid_argument("n_users must be >= 2");
  if (spec.lang == Language::Unknown) throw std::invalid_argument("synthetic corpus needs lang en or ja");
  if (spec.min_tweets_per_user < 2 || spec.max_tweets_per_user < spec.min_tweets_per_user)
    throw std::invalid_argument("tweets per user must satisfy 2 <= min <= max");
  if (!(spec.planted_fraction >= 0.0 && spec.planted_fraction <= 1.0))
    throw std::invalid_argument("planted_fraction must lie in [0, 1]");
  if (spec.retweet_cycles == 0) throw std::invalid_argument("retweet_cycles must be >= 1");
  if (spec.max_terms_per_tweet == 0) throw std::invalid_argument("max_terms_per_tweet must be >= 1");
  double total = 0.0;
  for (std::size_t j = 0; j < kNumBasic; ++j) {
    if (!(spec.label_weights[j] >= 0.0)) throw std::invalid_argument("label weights must be non-negative");
    if (spec.label_weights[j] > 0.0 && spec.term_pools[j].empty())
      throw std::invalid_argument(fmt::format("no terms available for {}", to_string(kBasicFoundations[j])));
    total += spec.label_weights[j];
  }
  if (total <= 0.0) throw std::invalid_argument("label weights sum to zero");
  if (spec.filler_words.empty()) throw std::invalid_argument("no usable filler words");
}

std::size_t same_label_cycles(double p, std::size_t cycles) {
  const auto c = static_cast<std::size_t>(std::llround(p * static_cast<double>(cycles)));
  if (std::fabs(static_cast<double>(c) / static_cast<double>(cycles) - p) <= 0.005) return c;
  std::size_t suggestion = 0;
  for (std::size_t d = 1; d <= 1000 && suggestion == 0; ++d)
    if (std::fabs(std::round(p * static_cast<double>(d)) / static_cast<double>(d) - p) <= 0.005) suggestion = d;
  throw std::invalid_argument(fmt::format(
      "planted_fraction {} is not representable with {} retweet cycles per node; use a multiple of {} "
      "cycles (minimum degree {})",
      p, cycles, suggestion, 2 * suggestion));
}

struct TweetPlan {
  Foundation label;
};

}  // namespace

nlohmann::json SyntheticCorpus::truth_json() const {
  nlohmann::json users_j = nlohmann::json::array();
  for (const auto& u : users)
    users_j.push_back({{"user_id", u.user_id}, {"label", std::string(to_string(u.label))}, {"h", u.h}});
  nlohmann::json tweets_j = nlohmann::json::array();
  for (const auto& t : tweets)
    tweets_j.push_back({{"id", t.id}, {"user_id", t.user_id}, {"counts", t.counts}, {"matched", t.matched}});
  return {{"realized_fraction", realized_fraction}, {"users", users_j}, {"tweets", tweets_j}};
}

SyntheticCorpus generate_synthetic(const SyntheticSpec& spec, std::uint64_t seed) {
  validate(spec);
  SplitRng rng(seed);
  SyntheticCorpus out;

  const std::size_t n = spec.n_users;
  const std::size_t same_cycles = same_label_cycles(spec.planted_fraction, spec.retweet_cycles);
  const std::size_t cross_cycles = spec.retweet_cycles - same_cycles;
  out.realized_fraction = static_cast<double>(same_cycles) / static_cast<double>(spec.retweet_cycles);

  // Labels by largest-remainder apportionment, then shuffled over users.
  const auto group_sizes = apportion(spec.label_weights, n);
  std::vector<Foundation> labels;
  for (std::size_t j = 0; j < kNumBasic; ++j) labels.insert(labels.end(), group_sizes[j], kBasicFoundations[j]);
  rng.shuffle(labels);

  std::size_t populated = 0;
  std::size_t largest = 0;
  for (auto g : group_sizes) {
    if (g == 1 && same_cycles > 0)
      throw std::invalid_argument("a label group of size 1 cannot carry same-label retweets; raise n_users");
    populated += g > 0;
    largest = std::max(largest, g);
  }
  if (cross_cycles > 0 && (populated < 2 || largest + 1 > (n + 1) / 2))
    throw std::invalid_argument("cross-label retweets need every label group below half of the users");

  const int id_width = static_cast<int>(std::to_string(n).size());
  std::vector<std::string> user_ids(n);
  for (std::size_t i = 0; i < n; ++i) user_ids[i] = fmt::format("u{:0{}}", i + 1, id_width);

  std::vector<std::size_t> available;  // foundations with terms
  for (std::size_t j = 0; j < kNumBasic; ++j)
    if (!spec.term_pools[j].empty()) available.push_back(j);

  const bool ja = spec.lang == Language::Japanese;
  std::int64_t clock = spec.start_timestamp;
  std::vector<std::vector<std::string>> tweets_of(n);
  std::size_t tweet_counter = 0;

  auto pick = [&](const std::vector<std::string>& v) -> const std::string& { return v[rng.below(v.size())]; };

  for (std::size_t u = 0; u < n; ++u) {
    const Foundation home = labels[u];
    out.users.push_back({user_ids[u], home, out.realized_fraction});

    const std::size_t count = spec.min_tweets_per_user +
                              rng.below(spec.max_tweets_per_user - spec.min_tweets_per_user + 1);
    std::array<std::size_t, kNumBasic> per_label{};
    std::vector<Foundation> plan;
    for (std::size_t k = 0; k < count; ++k) {
      Foundation f = home;
      if (k >= 2 && available.size() > 1 && rng.unit() < spec.off_label_tweet_rate) {
        std::size_t g;
        do g = available[rng.below(available.size())];
        while (g == index_of(home));
        if (per_label[g] + 1 < per_label[index_of(home)]) f = kBasicFoundations[g];
      }
      ++per_label[index_of(f)];
      plan.push_back(f);
    }
    rng.shuffle(plan);

    for (Foundation f : plan) {
      SyntheticTweet truth;
      truth.id = fmt::format("t{:08}", ++tweet_counter);
      truth.user_id = user_ids[u];
      std::vector<std::string> words;
      const std::size_t main_terms = 1 + rng.below(spec.max_terms_per_tweet);
      for (std::size_t k = 0; k < main_terms; ++k) words.push_back(pick(spec.term_pools[index_of(f)]));
      truth.counts[index_of(f)] += static_cast<std::uint32_t>(main_terms);
      truth.matched += static_cast<std::uint32_t>(main_terms);
      if (main_terms >= 2 && available.size() > 1 && rng.unit() < 0.5) {
        std::size_t g;
        do g = available[rng.below(available.size())];
        while (g == index_of(f));
        words.push_back(pick(spec.term_pools[g]));
        ++truth.counts[g];
        ++truth.matched;
      }
      const std::size_t fillers = 1 + rng.below(4);
      for (std::size_t k = 0; k < fillers; ++k) words.push_back(pick(spec.filler_words));
      rng.shuffle(words);

      std::string text;
      for (std::size_t k = 0; k < words.size(); ++k) {
        if (k) text += ja ? "、" : " ";
        if (!ja && rng.unit() < 0.05) text += '#';
        text += words[k];
      }
      text += ja ? "。" : (rng.unit() < 0.3 ? "!" : ".");
      if (rng.unit() < 0.1) text += fmt::format(" https://t.co/{}", rng.below(1000000));

      clock += 1 + static_cast<std::int64_t>(rng.below(600));
      TweetRecord rec;
      rec.id = truth.id;
      rec.user_id = truth.user_id;
      rec.text = std::move(text);
      rec.lang = spec.lang;
      rec.timestamp = clock;
      tweets_of[u].push_back(rec.id);
      out.records.push_back(std::move(rec));
      out.tweets.push_back(std::move(truth));
    }
  }

  // Retweet wiring: every cycle adds weight 2 to each node it covers.
  std::vector<std::vector<std::size_t>> groups(kNumBasic);
  for (std::size_t u = 0; u < n; ++u) groups[index_of(labels[u])].push_back(u);

  std::vector<std::pair<std::size_t, std::size_t>> edges;
  auto close_cycle = [&](const std::vector<std::size_t>& order) {
    for (std::size_t i = 0; i < order.size(); ++i) edges.emplace_back(order[i], order[(i + 1) % order.size()]);
  };
  for (std::size_t c = 0; c < same_cycles; ++c)
    for (auto& g : groups)
      if (g.size() >= 2) {
        rng.shuffle(g);
        close_cycle(g);
      }
  for (std::size_t c = 0; c < cross_cycles; ++c) {
    // Group-contiguous list interleaved with its second half: neighbours are at
    // least ceil(n/2) - 1 apart, which exceeds every group size.
    std::vector<std::size_t> group_order{0, 1, 2, 3, 4};
    rng.shuffle(group_order);
    std::vector<std::size_t> flat;
    for (auto gi : group_order) {
      rng.shuffle(groups[gi]);
      flat.insert(flat.end(), groups[gi].begin(), groups[gi].end());
    }
    const std::size_t half = (n + 1) / 2;
    std::vector<std::size_t> order;
    for (std::size_t i = 0; i < half; ++i) {
      order.push_back(flat[i]);
      if (half + i < n) order.push_back(flat[half + i]);
    }
    close_cycle(order);
  }

  std::size_t rt_counter = 0;
  const int rt_width = static_cast<int>(std::to_string(edges.size()).size());
  for (const auto& [a, b] : edges) {
    const bool flip = rng.below(2) == 1;
    const std::size_t retweeter = flip ? b : a;
    const std::size_t author = flip ? a : b;
    TweetRecord rec;
    rec.id = fmt::format("r{:0{}}", ++rt_counter, rt_width);
    rec.user_id = user_ids[retweeter];
    rec.lang = spec.lang;
    rec.text = ja ? fmt::format("RT {}。", pick(spec.filler_words))
                  : fmt::format("RT {} {}", pick(spec.filler_words), pick(spec.filler_words));
    clock += 1 + static_cast<std::int64_t>(rng.below(60));
    rec.timestamp = clock;
    rec.retweet_of_user_id = user_ids[author];
    rec.retweet_of_tweet_id = pick(tweets_of[author]);
    out.records.push_back(std::move(rec));
  }
  return out;
}

}  // namespace moralnet
