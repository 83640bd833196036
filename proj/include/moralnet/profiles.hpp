#pragma once

#include "moralnet/scoring.hpp"

#include <array>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace moralnet {

/// How a tweet labelled with several foundations enters the per-user subsets.
enum class MultilabelMode {
  Each,  // member of every labelled foundation's subset
  Drop,  // ignored entirely
};

std::string_view to_string(MultilabelMode m);
std::optional<MultilabelMode> parse_multilabel_mode(std::string_view s);

struct UserMoralProfile {
  std::string user_id;
  std::uint32_t tweet_count = 0;                        // morally labelled tweets of the user
  std::array<std::uint32_t, kNumBasic> label_counts{};  // tweets whose label set names foundation j
  std::optional<Foundation> label;  // set iff tweet_count >= 2 and the argmax is unique

  double proportion(std::size_t j) const {
    return tweet_count == 0 ? 0.0
                            : static_cast<double>(label_counts[j]) / static_cast<double>(tweet_count);
  }
  std::array<double, kNumBasic> proportions() const;
};

using ProfileMap = std::map<std::string, UserMoralProfile>;

/// Foundation with the strictly largest count, if unique.
std::optional<Foundation> strict_argmax(const std::array<std::uint32_t, kNumBasic>& counts);

/// Aggregates tweets per user. Callers separate languages beforehand; every
/// user appears, including those assign_labels will exclude.
ProfileMap build_profiles(std::span<const MoralScoredTweet> scored,
                          MultilabelMode mode = MultilabelMode::Each);

/// Users with at least two labelled tweets and a unique maximum, by user_id.
std::vector<UserMoralProfile> assign_labels(const ProfileMap& profiles);

/// user_id,n_tweets,mp_care..mp_purity,label (label empty when excluded).
std::string profiles_csv(const ProfileMap& profiles);

/// Reads profiles_csv output. Counts are recovered from n_tweets and the
/// proportions; the label column is trusted as written.
ProfileMap parse_profiles_csv(std::string_view text, const std::string& stage, const std::string& source);

}  // namespace moralnet
