#include "moralnet/foundation.hpp"

#include "moralnet/error.hpp"

#include <fmt/format.h>

namespace moralnet {

std::string_view to_string(Foundation f) {
  switch (f) {
    case Foundation::Care: return "Care";
    case Foundation::Fairness: return "Fairness";
    case Foundation::Ingroup: return "Ingroup";
    case Foundation::Authority: return "Authority";
    case Foundation::Purity: return "Purity";
    case Foundation::GeneralMorality: return "GeneralMorality";
  }
  return "?";
}

std::string_view to_string(Polarity p) { return p == Polarity::Virtue ? "virtue" : "vice"; }

std::optional<Foundation> parse_foundation(std::string_view name) {
  for (auto f : {Foundation::Care, Foundation::Fairness, Foundation::Ingroup, Foundation::Authority,
                 Foundation::Purity, Foundation::GeneralMorality})
    if (name == to_string(f)) return f;
  return std::nullopt;
}

std::optional<Polarity> parse_polarity(std::string_view name) {
  if (name == "virtue") return Polarity::Virtue;
  if (name == "vice") return Polarity::Vice;
  return std::nullopt;
}

std::string to_string(Category c) {
  return fmt::format("{}/{}", to_string(c.foundation), to_string(c.polarity));
}

std::optional<Category> parse_category(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return std::nullopt;
  auto f = parse_foundation(text.substr(0, slash));
  auto p = parse_polarity(text.substr(slash + 1));
  if (!f || !p) return std::nullopt;
  return Category{*f, *p};
}

std::string FoundationSet::to_string() const {
  std::string out;
  for (Foundation f : members()) {
    if (!out.empty()) out += '|';
    out += moralnet::to_string(f);
  }
  return out;
}

std::optional<FoundationSet> FoundationSet::parse(std::string_view text) {
  FoundationSet s;
  while (!text.empty()) {
    const auto bar = text.find('|');
    auto f = parse_foundation(text.substr(0, bar));
    if (!f || !is_basic(*f)) return std::nullopt;
    s.insert(*f);
    if (bar == std::string_view::npos) break;
    text.remove_prefix(bar + 1);
  }
  return s;
}

DataError::DataError(std::string stage, std::string source, std::size_t line,
                     const std::string& what)
    : std::runtime_error(line > 0 ? fmt::format("[{}] {}:{}: {}", stage, source, line, what)
                                  : fmt::format("[{}] {}: {}", stage, source, what)),
      stage_(std::move(stage)),
      source_(std::move(source)),
      line_(line) {}

}  // namespace moralnet
