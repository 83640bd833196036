#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace moralnet {

// The five basic foundations come first and in loading-vector order.
enum class Foundation : std::uint8_t {
  Care,
  Fairness,
  Ingroup,
  Authority,
  Purity,
  GeneralMorality,
};

enum class Polarity : std::uint8_t { Virtue, Vice };

inline constexpr std::size_t kNumBasic = 5;

inline constexpr std::array<Foundation, kNumBasic> kBasicFoundations = {
    Foundation::Care, Foundation::Fairness, Foundation::Ingroup,
    Foundation::Authority, Foundation::Purity};

constexpr bool is_basic(Foundation f) { return f != Foundation::GeneralMorality; }

constexpr std::size_t index_of(Foundation f) { return static_cast<std::size_t>(f); }

std::string_view to_string(Foundation f);
std::string_view to_string(Polarity p);
std::optional<Foundation> parse_foundation(std::string_view name);
std::optional<Polarity> parse_polarity(std::string_view name);

struct Category {
  Foundation foundation = Foundation::Care;
  Polarity polarity = Polarity::Virtue;

  auto operator<=>(const Category&) const = default;
};

/// "Care/virtue" style rendering used by the JSON lexicon format.
std::string to_string(Category c);
std::optional<Category> parse_category(std::string_view text);

/// Subset of the five basic foundations, stored as a bit mask.
class FoundationSet {
 public:
  constexpr FoundationSet() = default;

  static constexpr FoundationSet single(Foundation f) {
    FoundationSet s;
    s.insert(f);
    return s;
  }

  constexpr void insert(Foundation f) {
    if (is_basic(f)) bits_ |= static_cast<std::uint8_t>(1u << index_of(f));
  }
  constexpr bool contains(Foundation f) const {
    return is_basic(f) && (bits_ >> index_of(f)) & 1u;
  }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr std::size_t size() const { return static_cast<std::size_t>(__builtin_popcount(bits_)); }
  constexpr std::uint8_t bits() const { return bits_; }

  std::vector<Foundation> members() const {
    std::vector<Foundation> out;
    for (Foundation f : kBasicFoundations)
      if (contains(f)) out.push_back(f);
    return out;
  }

  /// Names joined with '|', foundation order.
  std::string to_string() const;
  static std::optional<FoundationSet> parse(std::string_view text);

  constexpr bool operator==(const FoundationSet&) const = default;

 private:
  std::uint8_t bits_ = 0;
};

}  // namespace moralnet
