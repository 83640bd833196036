#pragma once

#include <string>
#include <string_view>

namespace moralnet::unicode {

/// NFKC normalization of UTF-8 text. Invalid sequences become U+FFFD.
std::string nfkc(std::string_view utf8);

/// NFKC followed by full case folding (ICU "nfkc_cf"). Idempotent.
std::string nfkc_casefold(std::string_view utf8);

bool is_valid_utf8(std::string_view bytes);

enum class CharClass {
  Whitespace,
  Control,
  Punctuation,  // Unicode P* categories
  Symbol,       // Unicode S* categories
  Other,
};

CharClass classify(char32_t cp);

/// Decodes one code point starting at `pos`, advancing it. Returns U+FFFD on
/// malformed input.
char32_t next_code_point(std::string_view s, std::size_t& pos);

void append_utf8(std::string& out, char32_t cp);

}  // namespace moralnet::unicode
