#include "moralnet/scoring.hpp"

#include "moralnet/error.hpp"
#include "moralnet/io.hpp"
#include "moralnet/parallel.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <set>

namespace moralnet {

std::string_view to_string(CountingMode m) { return m == CountingMode::Multiset ? "multiset" : "set"; }

std::optional<CountingMode> parse_counting_mode(std::string_view s) {
  if (s == "multiset") return CountingMode::Multiset;
  if (s == "set") return CountingMode::Set;
  return std::nullopt;
}

std::array<double, kNumBasic> MoralLoadingVector::values() const {
  std::array<double, kNumBasic> out{};
  for (std::size_t j = 0; j < kNumBasic; ++j) out[j] = value(j);
  return out;
}

void accumulate(MoralLoadingVector& v, const MoralTerm& term) {
  const FoundationSet fs = term.basic_foundations();
  if (fs.empty()) return;
  ++v.matched;
  for (Foundation f : kBasicFoundations)
    if (fs.contains(f)) ++v.counts[index_of(f)];
}

MoralLoadingVector moral_loading(const CleanText& clean, const MoralLexicon& lex, CountingMode mode) {
  MoralLoadingVector v;
  // In set mode each distinct matched word of the tweet counts once.
  std::set<std::string_view> seen;
  auto add = [&](std::string_view word, const MoralTerm& term) {
    if (mode == CountingMode::Set && !seen.insert(word).second) return;
    accumulate(v, term);
  };
  if (lex.match_mode() == MatchMode::TokenPrefix) {
    for (const auto& m : lex.match_tokens(clean.tokens)) add(clean.tokens[m.token_index], *m.term);
  } else {
    for (const auto& m : lex.match_substring(clean.normalized_text))
      add(std::string_view(clean.normalized_text).substr(m.byte_offset, m.term->surface.size()), *m.term);
  }
  return v;
}

std::optional<FoundationSet> label_tweet(const MoralLoadingVector& loading) {
  if (loading.matched == 0) return std::nullopt;
  const auto best = *std::max_element(loading.counts.begin(), loading.counts.end());
  FoundationSet s;
  for (Foundation f : kBasicFoundations)
    if (loading.counts[index_of(f)] == best) s.insert(f);
  return s;
}

std::optional<MoralScoredTweet> score_record(const TweetRecord& rec, const LanguageLexicons& lexicons,
                                             const StopwordSet& stopwords, CountingMode mode) {
  const MoralLexicon* lex = lexicons.for_language(rec.lang);
  if (!lex) return std::nullopt;
  const CleanText clean = preprocess(rec, stopwords);
  const MoralLoadingVector loading = moral_loading(clean, *lex, mode);
  const auto labels = label_tweet(loading);
  if (!labels) return std::nullopt;
  return MoralScoredTweet{rec, loading, *labels};
}

namespace {

FilterStats tally(std::span<const TweetRecord> records, const LanguageLexicons& lexicons,
                  std::span<const std::optional<MoralScoredTweet>> slots) {
  FilterStats stats;
  for (std::size_t i = 0; i < records.size(); ++i) {
    if (!lexicons.for_language(records[i].lang)) {
      ++stats.skipped;
      continue;
    }
    auto& c = stats.for_language(records[i].lang);
    ++c.in;
    if (slots[i]) ++c.kept;
  }
  return stats;
}

ScoredCorpus compact(std::span<const TweetRecord> records, const LanguageLexicons& lexicons,
                     std::vector<std::optional<MoralScoredTweet>> slots) {
  ScoredCorpus out;
  out.stats = tally(records, lexicons, slots);
  out.tweets.reserve(out.stats.total_kept());
  for (auto& s : slots)
    if (s) out.tweets.push_back(std::move(*s));
  return out;
}

}  // namespace

ScoredCorpus score_corpus(std::span<const TweetRecord> records, const LanguageLexicons& lexicons,
                          const StopwordSet& stopwords, const ScoringOptions& opts) {
  std::vector<std::optional<MoralScoredTweet>> slots(records.size());
  const auto n = static_cast<std::ptrdiff_t>(records.size());
  const int threads = resolve_threads(opts.threads);
#pragma omp parallel for schedule(dynamic, 256) num_threads(threads)
  for (std::ptrdiff_t i = 0; i < n; ++i)
    slots[static_cast<std::size_t>(i)] =
        score_record(records[static_cast<std::size_t>(i)], lexicons, stopwords, opts.counting);
  return compact(records, lexicons, std::move(slots));
}

ScoredCorpus score_corpus_serial(std::span<const TweetRecord> records,
                                 const LanguageLexicons& lexicons, const StopwordSet& stopwords,
                                 CountingMode mode) {
  std::vector<std::optional<MoralScoredTweet>> slots;
  slots.reserve(records.size());
  for (const auto& r : records) slots.push_back(score_record(r, lexicons, stopwords, mode));
  return compact(records, lexicons, std::move(slots));
}

nlohmann::json to_json(const MoralScoredTweet& t) {
  nlohmann::json labels = nlohmann::json::array();
  for (Foundation f : t.labels.members()) labels.push_back(std::string(to_string(f)));
  nlohmann::json loading = nlohmann::json::array();
  for (double v : t.loading.values()) loading.push_back(v);
  return {{"id", t.tweet.id},
          {"user_id", t.tweet.user_id},
          {"lang", std::string(to_string(t.tweet.lang))},
          {"timestamp", t.tweet.timestamp},
          {"matched", t.loading.matched},
          {"counts", t.loading.counts},
          {"loading", loading},
          {"labels", labels}};
}

MoralScoredTweet scored_from_json(const nlohmann::json& j) {
  MoralScoredTweet t;
  t.tweet.id = j.at("id").get<std::string>();
  t.tweet.user_id = j.at("user_id").get<std::string>();
  t.tweet.lang = parse_language(j.at("lang").get<std::string>());
  t.tweet.timestamp = j.at("timestamp").get<std::int64_t>();
  t.loading.matched = j.at("matched").get<std::uint32_t>();
  t.loading.counts = j.at("counts").get<std::array<std::uint32_t, kNumBasic>>();
  for (const auto& l : j.at("labels")) {
    const auto f = parse_foundation(l.get<std::string>());
    if (!f || !is_basic(*f)) throw std::invalid_argument("bad label " + l.dump());
    t.labels.insert(*f);
  }
  const auto expected = label_tweet(t.loading);
  if (!expected || *expected != t.labels)
    throw std::invalid_argument("labels are not the argmax of counts");
  return t;
}

std::string scored_to_jsonl(std::span<const MoralScoredTweet> tweets) {
  std::string out;
  for (const auto& t : tweets) {
    out += to_json(t).dump();
    out += '\n';
  }
  return out;
}

std::vector<MoralScoredTweet> parse_scored_jsonl(std::string_view text, const std::string& stage,
                                                 const std::string& source) {
  std::vector<MoralScoredTweet> out;
  const auto lines = io::split_lines(text);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (io::trim(lines[i]).empty()) continue;
    try {
      out.push_back(scored_from_json(nlohmann::json::parse(lines[i])));
    } catch (const std::exception& e) {
      throw DataError(stage, source, i + 1, e.what());
    }
  }
  return out;
}

std::string filter_stats_csv(const FilterStats& stats) {
  io::CsvWriter w({"lang", "in", "kept", "dropped"});
  for (Language lang : {Language::English, Language::Japanese}) {
    const auto& c = stats.for_language(lang);
    w.add_row({std::string(to_string(lang)), std::to_string(c.in), std::to_string(c.kept),
               std::to_string(c.in - c.kept)});
  }
  w.add_row({"skipped", std::to_string(stats.skipped), "0", std::to_string(stats.skipped)});
  return w.str();
}

std::string foundation_shares_csv(std::span<const MoralScoredTweet> tweets) {
  io::CsvWriter w({"lang", "foundation", "n_tweets", "share"});
  for (Language lang : {Language::English, Language::Japanese}) {
    std::array<std::uint64_t, kNumBasic> n{};
    std::uint64_t total = 0;
    for (const auto& t : tweets) {
      if (t.tweet.lang != lang) continue;
      ++total;
      for (Foundation f : t.labels.members()) ++n[index_of(f)];
    }
    if (total == 0) continue;
    for (Foundation f : kBasicFoundations)
      w.add_row({std::string(to_string(lang)), std::string(to_string(f)), std::to_string(n[index_of(f)]),
                 io::format_double(static_cast<double>(n[index_of(f)]) / static_cast<double>(total))});
  }
  return w.str();
}

}  // namespace moralnet
