#include "moralnet/profiles.hpp"

#include "moralnet/error.hpp"
#include "moralnet/io.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace moralnet {

std::string_view to_string(MultilabelMode m) { return m == MultilabelMode::Each ? "each" : "drop"; }

std::optional<MultilabelMode> parse_multilabel_mode(std::string_view s) {
  if (s == "each") return MultilabelMode::Each;
  if (s == "drop") return MultilabelMode::Drop;
  return std::nullopt;
}

std::array<double, kNumBasic> UserMoralProfile::proportions() const {
  std::array<double, kNumBasic> out{};
  for (std::size_t j = 0; j < kNumBasic; ++j) out[j] = proportion(j);
  return out;
}

std::optional<Foundation> strict_argmax(const std::array<std::uint32_t, kNumBasic>& counts) {
  const auto it = std::max_element(counts.begin(), counts.end());
  if (std::count(counts.begin(), counts.end(), *it) != 1) return std::nullopt;
  return kBasicFoundations[static_cast<std::size_t>(it - counts.begin())];
}

ProfileMap build_profiles(std::span<const MoralScoredTweet> scored, MultilabelMode mode) {
  ProfileMap profiles;
  for (const auto& t : scored) {
    auto& p = profiles[t.tweet.user_id];
    p.user_id = t.tweet.user_id;
    if (mode == MultilabelMode::Drop && t.labels.size() > 1) continue;
    ++p.tweet_count;
    for (Foundation f : t.labels.members()) ++p.label_counts[index_of(f)];
  }
  for (auto& [_, p] : profiles)
    p.label = p.tweet_count >= 2 ? strict_argmax(p.label_counts) : std::nullopt;
  return profiles;
}

std::vector<UserMoralProfile> assign_labels(const ProfileMap& profiles) {
  std::vector<UserMoralProfile> out;
  for (const auto& [_, p] : profiles)
    if (p.label) out.push_back(p);
  return out;
}

std::string profiles_csv(const ProfileMap& profiles) {
  io::CsvWriter w({"user_id", "n_tweets", "mp_care", "mp_fairness", "mp_ingroup", "mp_authority",
                   "mp_purity", "label"});
  for (const auto& [id, p] : profiles) {
    io::CsvRow row{id, std::to_string(p.tweet_count)};
    for (double v : p.proportions()) row.push_back(io::format_double(v));
    row.emplace_back(p.label ? std::string(to_string(*p.label)) : std::string());
    w.add_row(std::move(row));
  }
  return w.str();
}

ProfileMap parse_profiles_csv(std::string_view text, const std::string& stage, const std::string& source) {
  const auto table = io::parse_csv(text, stage, source);
  ProfileMap out;
  try {
    const std::size_t c_user = table.column("user_id");
    const std::size_t c_n = table.column("n_tweets");
    const std::size_t c_label = table.column("label");
    const std::array<std::size_t, kNumBasic> c_mp = {
        table.column("mp_care"), table.column("mp_fairness"), table.column("mp_ingroup"),
        table.column("mp_authority"), table.column("mp_purity")};
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
      const auto& row = table.rows[r];
      try {
        UserMoralProfile p;
        p.user_id = row[c_user];
        p.tweet_count = static_cast<std::uint32_t>(std::stoul(row[c_n]));
        for (std::size_t j = 0; j < kNumBasic; ++j)
          p.label_counts[j] = static_cast<std::uint32_t>(std::llround(std::stod(row[c_mp[j]]) * p.tweet_count));
        if (!row[c_label].empty()) {
          const auto f = parse_foundation(row[c_label]);
          if (!f || !is_basic(*f)) throw std::invalid_argument("bad label '" + row[c_label] + "'");
          p.label = f;
        }
        if (!out.emplace(p.user_id, p).second) throw std::invalid_argument("duplicate user_id");
      } catch (const std::logic_error& e) {
        throw DataError(stage, source, table.line_numbers[r], e.what());
      }
    }
  } catch (const std::out_of_range& e) {
    throw DataError(stage, source, 1, e.what());
  }
  return out;
}

}  // namespace moralnet
