#pragma once

#include "moralnet/scoring.hpp"
#include "moralnet/text.hpp"
#include "moralnet/trie.hpp"

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace moralnet {

struct ValenceLexiconEntry {
  std::string surface;
  double polarity = 0.0;  // signed intensity; unused for boosters
  bool is_booster = false;
  double booster_delta = 0.0;
};

/// Polarity lexicon. TSV lines are `surface<TAB>polarity` or
/// `surface<TAB>BOOST<TAB>delta`. English surfaces are casefolded, others NFKC.
class ValenceLexicon {
 public:
  ValenceLexicon(std::vector<ValenceLexiconEntry> entries, Language lang);

  static ValenceLexicon parse(std::string_view tsv, Language lang, const std::string& source);
  static ValenceLexicon load(const std::string& path, Language lang);

  const ValenceLexiconEntry* find(std::string_view surface) const;

  /// Longest polar (non-booster) entry starting at byte `pos`, with its length.
  std::pair<const ValenceLexiconEntry*, std::size_t> longest_polar_at(std::string_view text,
                                                                       std::size_t pos) const;

  const std::vector<ValenceLexiconEntry>& entries() const { return entries_; }

 private:
  std::vector<ValenceLexiconEntry> entries_;
  ByteTrie trie_;
};

enum class ValenceLabel { Positive, Negative, Neutral };

std::string_view to_string(ValenceLabel l);
std::optional<ValenceLabel> parse_valence_label(std::string_view s);

/// Strict sign rule: exactly zero is neutral.
constexpr ValenceLabel label_for(double score) {
  return score > 0 ? ValenceLabel::Positive : score < 0 ? ValenceLabel::Negative : ValenceLabel::Neutral;
}

struct ValenceResult {
  double score = 0.0;  // in [-1, 1]
  ValenceLabel label = ValenceLabel::Neutral;
};

struct ValenceRules {
  double negation_scalar = -0.74;
  std::size_t window = 3;
  double alpha = 15.0;
  std::vector<std::string> negators = {
      "aint",   "arent",  "cannot",  "cant",    "couldnt", "darent",  "didnt",   "doesnt",
      "dont",   "hadnt",  "hasnt",   "havent",  "isnt",    "mightnt", "mustnt",  "neither",
      "never",  "none",   "nope",    "nor",     "not",     "nothing", "nowhere", "oughtnt",
      "shant",  "shouldnt", "uhuh",  "wasnt",   "werent",  "without", "wont",    "wouldnt",
      "rarely", "seldom", "despite"};
  std::vector<std::string> ja_negation_suffixes = {"ない", "ぬ"};
  std::vector<std::string> ja_sentence_terminators = {"。", "！", "？", "!", "?"};
};

/// Summed token polarities with negation and booster rules inside a window of
/// preceding tokens, normalized as s / sqrt(s^2 + alpha).
ValenceResult valence_en(std::span<const std::string> tokens, const ValenceLexicon& lex,
                         const ValenceRules& rules = {});

/// Mean over sentences of (pos - neg) / (pos + neg), with a trailing negation
/// suffix flipping the polarity of the term it follows.
ValenceResult valence_ja(std::string_view text, const ValenceLexicon& lex, const ValenceRules& rules = {});

struct ValencedTweet {
  std::string id;
  Language lang = Language::Unknown;
  ValenceResult valence;
};

std::string valence_to_jsonl(std::span<const ValencedTweet> rows);
std::vector<ValencedTweet> parse_valence_jsonl(std::string_view text, const std::string& stage,
                                               const std::string& source);

/// Per language and foundation: share of labelled tweets that are positive,
/// negative and neutral. `valence` is parallel to `tweets`.
std::string valence_shares_csv(std::span<const MoralScoredTweet> tweets,
                               std::span<const ValenceResult> valence);

}  // namespace moralnet
