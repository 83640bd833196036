#pragma once

#include "moralnet/foundation.hpp"
#include "moralnet/trie.hpp"

#include <nlohmann/json.hpp>

#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace moralnet {

enum class MatchMode { TokenPrefix, SubstringLongestMatch };
enum class DictionaryFormat { Liwc, TwoColumn };

std::string_view to_string(MatchMode m);
std::optional<MatchMode> parse_match_mode(std::string_view s);
std::optional<DictionaryFormat> parse_dictionary_format(std::string_view s);

struct MoralTerm {
  std::string surface;  // without the trailing '*' of stems
  bool is_stem = false;
  std::vector<Category> categories;  // sorted, unique, non-empty

  /// Basic foundations among the categories; virtue and vice collapse.
  FoundationSet basic_foundations() const;

  /// The match predicate for a single whitespace token.
  bool matches_token(std::string_view token) const {
    return is_stem ? token.starts_with(surface) : token == surface;
  }

  bool operator==(const MoralTerm&) const = default;
};

/// Maps dictionary header names (e.g. "HarmVirtue") to categories. Lookup is
/// ASCII case-insensitive.
class CategoryNameTable {
 public:
  static const CategoryNameTable& builtin();

  /// One mapping per line: `Name<TAB>Foundation<TAB>virtue|vice`.
  static CategoryNameTable parse(std::string_view text, const std::string& source);

  void add(std::string_view name, Category c);
  std::optional<Category> find(std::string_view name) const;

  /// Canonical header name written by serialize_dictionary.
  static std::string canonical_name(Category c);

 private:
  std::map<std::string, Category> names_;
};

struct TokenMatch {
  std::size_t token_index;
  const MoralTerm* term;
};

struct SubstringMatch {
  std::size_t byte_offset;
  const MoralTerm* term;
};

/// Compiled dictionary. Immutable after construction; matching is const and
/// safe to call from many threads.
class MoralLexicon {
 public:
  /// Throws std::invalid_argument on an empty surface, empty category set, or
  /// a duplicate (surface, is_stem) pair.
  MoralLexicon(std::vector<MoralTerm> terms, MatchMode mode, std::string language_tag);

  MoralLexicon(const MoralLexicon&) = delete;
  MoralLexicon& operator=(const MoralLexicon&) = delete;
  MoralLexicon(MoralLexicon&&) noexcept = default;
  MoralLexicon& operator=(MoralLexicon&&) noexcept = default;

  const std::vector<MoralTerm>& terms() const { return terms_; }
  MatchMode match_mode() const { return mode_; }
  const std::string& language_tag() const { return language_; }
  bool empty() const { return terms_.empty(); }

  /// At most one term per token: the longest matching surface, with an exact
  /// term preferred over a stem of the same surface. Requires TokenPrefix mode.
  std::vector<TokenMatch> match_tokens(std::span<const std::string> tokens) const;

  /// Greedy left-to-right longest-match scan with non-overlapping results.
  /// Requires SubstringLongestMatch mode.
  std::vector<SubstringMatch> match_substring(std::string_view text) const;

  const MoralTerm* match_token(std::string_view token) const;

 private:
  std::vector<MoralTerm> terms_;  // sorted by (surface, is_stem)
  MatchMode mode_;
  std::string language_;
  ByteTrie trie_;
};

struct DictionaryOptions {
  DictionaryFormat format = DictionaryFormat::Liwc;
  MatchMode mode = MatchMode::TokenPrefix;
  std::string language_tag = "en";
  const CategoryNameTable* names = nullptr;  // builtin when null
  std::string source = "<dictionary>";       // used in error messages
};

/// Parses a LIWC-style `.dic` file or a two-column TSV. Errors throw DataError
/// carrying the offending line number.
MoralLexicon parse_dictionary(std::string_view bytes, const DictionaryOptions& opts);

MoralLexicon load_dictionary(const std::string& path, DictionaryOptions opts);

/// LIWC-format text that parse_dictionary maps back to the same term set.
std::string serialize_dictionary(const MoralLexicon& lex);

nlohmann::json to_json(const MoralLexicon& lex);
MoralLexicon lexicon_from_json(const nlohmann::json& j);

}  // namespace moralnet
