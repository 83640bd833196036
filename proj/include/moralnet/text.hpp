#pragma once

#include <nlohmann/json.hpp>

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace moralnet {

enum class Language : std::uint8_t { English, Japanese, Unknown };

/// "en", "ja"; Unknown renders as "und".
std::string_view to_string(Language lang);
Language parse_language(std::string_view tag);

struct TweetRecord {
  std::string id;
  std::string user_id;
  std::string text;
  Language lang = Language::Unknown;
  std::int64_t timestamp = 0;
  std::optional<std::string> retweet_of_user_id;
  std::optional<std::string> retweet_of_tweet_id;

  bool is_retweet() const { return retweet_of_user_id.has_value(); }
};

/// Validates required fields and the both-or-neither retweet rule; throws
/// std::invalid_argument describing the first violation.
TweetRecord record_from_json(const nlohmann::json& j);
nlohmann::json to_json(const TweetRecord& rec);

/// One record per line; blank lines are skipped. Errors become DataError with
/// the line number.
std::vector<TweetRecord> parse_corpus(std::string_view jsonl, const std::string& stage,
                                      const std::string& source);
std::vector<TweetRecord> load_corpus(const std::string& path, const std::string& stage);
std::string to_jsonl(std::span<const TweetRecord> records);

using StopwordSet = std::unordered_set<std::string>;

/// One stopword per line, casefolded. Blank lines and '#' comments ignored.
StopwordSet parse_stopwords(std::string_view text);
StopwordSet load_stopwords(const std::string& path);

/// English records carry tokens; Japanese records carry normalized_text.
struct CleanText {
  std::string original_id;
  Language lang = Language::Unknown;
  std::vector<std::string> tokens;
  std::string normalized_text;

  bool empty() const { return tokens.empty() && normalized_text.empty(); }
};

/// Replaces scheme URLs and @mentions with a single space.
std::string strip_urls_and_mentions(std::string_view text);

/// NFKC + casefold, drop URLs, mentions, '#' and punctuation/symbols, split on
/// whitespace, drop stopwords. Apostrophes are deleted so "don't" -> "dont".
std::vector<std::string> tokenize_en(std::string_view text, const StopwordSet& stopwords);

/// NFKC, drop URLs, mentions, '#', ASCII punctuation; whitespace collapsed.
std::string normalize_ja(std::string_view text);

/// Like normalize_ja but sentence punctuation is kept for valence scoring.
std::string valence_text_ja(std::string_view text);

/// Unknown-language records yield an empty CleanText.
CleanText preprocess(const TweetRecord& rec, const StopwordSet& stopwords);

/// Case-insensitive (casefolded) substring test for English, NFKC substring
/// test otherwise. Throws std::invalid_argument when keywords is empty.
bool keyword_filter(const TweetRecord& rec, std::span<const std::string> keywords);

}  // namespace moralnet
