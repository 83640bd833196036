#include "moralnet/text.hpp"

#include "moralnet/error.hpp"
#include "moralnet/io.hpp"
#include "moralnet/unicode.hpp"

#include <fmt/format.h>

#include <stdexcept>

namespace moralnet {

std::string_view to_string(Language lang) {
  switch (lang) {
    case Language::English: return "en";
    case Language::Japanese: return "ja";
    case Language::Unknown: break;
  }
  return "und";
}

Language parse_language(std::string_view tag) {
  if (tag == "en") return Language::English;
  if (tag == "ja") return Language::Japanese;
  return Language::Unknown;
}

namespace {

std::optional<std::string> optional_string(const nlohmann::json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end() || it->is_null()) return std::nullopt;
  return it->get<std::string>();
}

bool is_ascii_alpha(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); }
bool is_ascii_digit(char c) { return c >= '0' && c <= '9'; }
bool is_ascii_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v'; }
bool is_mention_char(char c) { return is_ascii_alpha(c) || is_ascii_digit(c) || c == '_'; }
bool is_ascii_punct(char32_t c) {
  return (c >= 0x21 && c <= 0x2F) || (c >= 0x3A && c <= 0x40) || (c >= 0x5B && c <= 0x60) ||
         (c >= 0x7B && c <= 0x7E);
}

// Length of a `scheme://rest` URL starting at i, or 0.
std::size_t url_length(std::string_view s, std::size_t i) {
  if (!is_ascii_alpha(s[i])) return 0;
  std::size_t j = i + 1;
  while (j < s.size() && (is_ascii_alpha(s[j]) || is_ascii_digit(s[j]) || s[j] == '+' ||
                          s[j] == '-' || s[j] == '.'))
    ++j;
  if (s.substr(j, 3) != "://") return 0;
  j += 3;
  // URLs end at whitespace or at the first non-ASCII byte.
  while (j < s.size() && !is_ascii_space(s[j]) && static_cast<unsigned char>(s[j]) < 0x80) ++j;
  return j - i;
}

std::string collapse_whitespace(std::string_view s) {
  std::string out;
  bool pending = false;
  for (char c : s) {
    if (c == ' ') {
      pending = !out.empty();
      continue;
    }
    if (pending) out += ' ';
    pending = false;
    out += c;
  }
  return out;
}

}  // namespace

TweetRecord record_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw std::invalid_argument("record is not a JSON object");
  TweetRecord r;
  r.id = j.at("id").get<std::string>();
  r.user_id = j.at("user_id").get<std::string>();
  r.text = j.at("text").get<std::string>();
  r.lang = parse_language(j.at("lang").get<std::string>());
  r.timestamp = j.at("timestamp").get<std::int64_t>();
  r.retweet_of_user_id = optional_string(j, "retweet_of_user_id");
  r.retweet_of_tweet_id = optional_string(j, "retweet_of_tweet_id");
  if (r.id.empty()) throw std::invalid_argument("empty id");
  if (r.user_id.empty()) throw std::invalid_argument("empty user_id");
  if (r.retweet_of_user_id.has_value() != r.retweet_of_tweet_id.has_value())
    throw std::invalid_argument("retweet_of_user_id and retweet_of_tweet_id must be both present or both absent");
  if (!unicode::is_valid_utf8(r.text)) throw std::invalid_argument("text is not valid UTF-8");
  return r;
}

nlohmann::json to_json(const TweetRecord& rec) {
  nlohmann::json j = {{"id", rec.id},
                      {"user_id", rec.user_id},
                      {"text", rec.text},
                      {"lang", std::string(to_string(rec.lang))},
                      {"timestamp", rec.timestamp}};
  j["retweet_of_user_id"] = rec.retweet_of_user_id ? nlohmann::json(*rec.retweet_of_user_id) : nlohmann::json();
  j["retweet_of_tweet_id"] = rec.retweet_of_tweet_id ? nlohmann::json(*rec.retweet_of_tweet_id) : nlohmann::json();
  return j;
}

std::vector<TweetRecord> parse_corpus(std::string_view jsonl, const std::string& stage,
                                      const std::string& source) {
  std::vector<TweetRecord> out;
  const auto lines = io::split_lines(jsonl);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (io::trim(lines[i]).empty()) continue;
    try {
      out.push_back(record_from_json(nlohmann::json::parse(lines[i])));
    } catch (const std::exception& e) {
      throw DataError(stage, source, i + 1, e.what());
    }
  }
  return out;
}

std::vector<TweetRecord> load_corpus(const std::string& path, const std::string& stage) {
  return parse_corpus(io::read_file(path), stage, path);
}

std::string to_jsonl(std::span<const TweetRecord> records) {
  std::string out;
  for (const auto& r : records) {
    out += to_json(r).dump();
    out += '\n';
  }
  return out;
}

StopwordSet parse_stopwords(std::string_view text) {
  StopwordSet out;
  for (auto line : io::split_lines(text)) {
    line = io::trim(line);
    if (line.empty() || line.front() == '#') continue;
    out.insert(unicode::nfkc_casefold(line));
  }
  return out;
}

StopwordSet load_stopwords(const std::string& path) { return parse_stopwords(io::read_file(path)); }

std::string strip_urls_and_mentions(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  std::size_t i = 0;
  while (i < text.size()) {
    if (const auto n = url_length(text, i); n > 0) {
      out += ' ';
      i += n;
      continue;
    }
    if (text[i] == '@' && i + 1 < text.size() && is_mention_char(text[i + 1])) {
      ++i;
      while (i < text.size() && is_mention_char(text[i])) ++i;
      out += ' ';
      continue;
    }
    out += text[i++];
  }
  return out;
}

std::vector<std::string> tokenize_en(std::string_view text, const StopwordSet& stopwords) {
  const std::string folded = unicode::nfkc_casefold(text);
  const std::string stripped = strip_urls_and_mentions(folded);

  std::string cleaned;
  cleaned.reserve(stripped.size());
  for (std::size_t pos = 0; pos < stripped.size();) {
    const char32_t cp = unicode::next_code_point(stripped, pos);
    if (cp == U'#' || cp == U'\'' || cp == U'’') continue;
    switch (unicode::classify(cp)) {
      case unicode::CharClass::Whitespace:
      case unicode::CharClass::Control:
      case unicode::CharClass::Punctuation:
      case unicode::CharClass::Symbol:
        cleaned += ' ';
        break;
      case unicode::CharClass::Other:
        unicode::append_utf8(cleaned, cp);
        break;
    }
  }

  std::vector<std::string> tokens;
  std::size_t i = 0;
  while (i < cleaned.size()) {
    while (i < cleaned.size() && cleaned[i] == ' ') ++i;
    const auto start = i;
    while (i < cleaned.size() && cleaned[i] != ' ') ++i;
    if (i > start) {
      std::string tok = cleaned.substr(start, i - start);
      if (!stopwords.contains(tok)) tokens.push_back(std::move(tok));
    }
  }
  return tokens;
}

namespace {

std::string clean_ja(std::string_view text, bool keep_punctuation) {
  const std::string stripped = strip_urls_and_mentions(unicode::nfkc(text));
  std::string out;
  out.reserve(stripped.size());
  for (std::size_t pos = 0; pos < stripped.size();) {
    const char32_t cp = unicode::next_code_point(stripped, pos);
    if (cp == U'#') continue;
    const auto cls = unicode::classify(cp);
    if (cls == unicode::CharClass::Whitespace || cls == unicode::CharClass::Control ||
        (!keep_punctuation && is_ascii_punct(cp))) {
      out += ' ';
      continue;
    }
    unicode::append_utf8(out, cp);
  }
  return collapse_whitespace(out);
}

}  // namespace

std::string normalize_ja(std::string_view text) { return clean_ja(text, false); }

std::string valence_text_ja(std::string_view text) { return clean_ja(text, true); }

CleanText preprocess(const TweetRecord& rec, const StopwordSet& stopwords) {
  CleanText out;
  out.original_id = rec.id;
  out.lang = rec.lang;
  switch (rec.lang) {
    case Language::English:
      out.tokens = tokenize_en(rec.text, stopwords);
      break;
    case Language::Japanese:
      out.normalized_text = normalize_ja(rec.text);
      break;
    case Language::Unknown:
      break;
  }
  return out;
}

bool keyword_filter(const TweetRecord& rec, std::span<const std::string> keywords) {
  if (keywords.empty()) throw std::invalid_argument("keyword_filter needs at least one keyword");
  const bool fold = rec.lang == Language::English;
  const std::string hay = fold ? unicode::nfkc_casefold(rec.text) : unicode::nfkc(rec.text);
  for (const auto& k : keywords) {
    const std::string needle = fold ? unicode::nfkc_casefold(k) : unicode::nfkc(k);
    if (!needle.empty() && hay.find(needle) != std::string::npos) return true;
  }
  return false;
}

}  // namespace moralnet
