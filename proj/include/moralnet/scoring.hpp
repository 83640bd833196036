#pragma once

#include "moralnet/foundation.hpp"
#include "moralnet/lexicon.hpp"
#include "moralnet/text.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace moralnet {

/// How repeated dictionary words inside one tweet are counted.
enum class CountingMode { Multiset, Set };

std::string_view to_string(CountingMode m);
std::optional<CountingMode> parse_counting_mode(std::string_view s);

/// Loadings kept as integer counts so comparisons are exact; the real-valued
/// share is derived on demand.
struct MoralLoadingVector {
  std::array<std::uint32_t, kNumBasic> counts{};  // matched terms per foundation
  std::uint32_t matched = 0;                      // matched terms with any basic foundation

  double value(std::size_t j) const {
    return matched == 0 ? 0.0 : static_cast<double>(counts[j]) / static_cast<double>(matched);
  }
  std::array<double, kNumBasic> values() const;

  bool operator==(const MoralLoadingVector&) const = default;
};

/// Adds one matched term. Terms with only GeneralMorality categories are ignored.
void accumulate(MoralLoadingVector& v, const MoralTerm& term);

MoralLoadingVector moral_loading(const CleanText& clean, const MoralLexicon& lex,
                                 CountingMode mode = CountingMode::Multiset);

/// Argmax set of the loading vector; nullopt when nothing matched.
std::optional<FoundationSet> label_tweet(const MoralLoadingVector& loading);

struct MoralScoredTweet {
  TweetRecord tweet;
  MoralLoadingVector loading;
  FoundationSet labels;
};

struct LanguageLexicons {
  const MoralLexicon* english = nullptr;
  const MoralLexicon* japanese = nullptr;

  const MoralLexicon* for_language(Language lang) const {
    switch (lang) {
      case Language::English: return english;
      case Language::Japanese: return japanese;
      case Language::Unknown: break;
    }
    return nullptr;
  }
};

struct FilterStats {
  struct Counts {
    std::uint64_t in = 0;
    std::uint64_t kept = 0;
    bool operator==(const Counts&) const = default;
  };
  Counts english;
  Counts japanese;
  std::uint64_t skipped = 0;  // unknown language or no lexicon for it

  Counts& for_language(Language lang) { return lang == Language::English ? english : japanese; }
  const Counts& for_language(Language lang) const {
    return lang == Language::English ? english : japanese;
  }
  std::uint64_t total_in() const { return english.in + japanese.in + skipped; }
  std::uint64_t total_kept() const { return english.kept + japanese.kept; }

  bool operator==(const FilterStats&) const = default;
};

struct ScoringOptions {
  CountingMode counting = CountingMode::Multiset;
  int threads = 0;  // 0: OpenMP default
};

struct ScoredCorpus {
  std::vector<MoralScoredTweet> tweets;  // input order, matched records only
  FilterStats stats;
};

/// Scores one record; nullopt when it is skipped or has no basic-foundation match.
std::optional<MoralScoredTweet> score_record(const TweetRecord& rec, const LanguageLexicons& lexicons,
                                             const StopwordSet& stopwords, CountingMode mode);

/// Record-parallel scoring (OpenMP). Output order and stats do not depend on the
/// thread count.
ScoredCorpus score_corpus(std::span<const TweetRecord> records, const LanguageLexicons& lexicons,
                          const StopwordSet& stopwords, const ScoringOptions& opts = {});

/// Single-threaded reference kept for testing and benchmarking.
ScoredCorpus score_corpus_serial(std::span<const TweetRecord> records,
                                 const LanguageLexicons& lexicons, const StopwordSet& stopwords,
                                 CountingMode mode = CountingMode::Multiset);

// File formats ---------------------------------------------------------------

nlohmann::json to_json(const MoralScoredTweet& t);

/// Inverse of to_json; the tweet text is not stored and comes back empty.
MoralScoredTweet scored_from_json(const nlohmann::json& j);

std::string scored_to_jsonl(std::span<const MoralScoredTweet> tweets);
std::vector<MoralScoredTweet> parse_scored_jsonl(std::string_view text, const std::string& stage,
                                                 const std::string& source);

/// lang,in,kept,dropped rows plus a final skipped row.
std::string filter_stats_csv(const FilterStats& stats);

/// lang,foundation,n_tweets,share: tweets labelled with each foundation over kept
/// tweets of that language. Multi-label tweets count toward each of their labels.
std::string foundation_shares_csv(std::span<const MoralScoredTweet> tweets);

}  // namespace moralnet
