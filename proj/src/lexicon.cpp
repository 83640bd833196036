#include "moralnet/lexicon.hpp"

#include "moralnet/error.hpp"
#include "moralnet/io.hpp"
#include "moralnet/unicode.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cctype>
#include <charconv>
#include <set>
#include <stdexcept>

namespace moralnet {

namespace {

std::string ascii_lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::vector<std::string_view> split_fields(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    const auto start = i;
    while (i < s.size() && s[i] != ' ' && s[i] != '\t') ++i;
    if (i > start) out.push_back(s.substr(start, i - start));
  }
  return out;
}

std::string normalize_surface(std::string_view raw, MatchMode mode) {
  return mode == MatchMode::TokenPrefix ? unicode::nfkc_casefold(raw) : unicode::nfkc(raw);
}

}  // namespace

std::string_view to_string(MatchMode m) {
  return m == MatchMode::TokenPrefix ? "token_prefix" : "substring_longest_match";
}

std::optional<MatchMode> parse_match_mode(std::string_view s) {
  if (s == "token_prefix") return MatchMode::TokenPrefix;
  if (s == "substring_longest_match") return MatchMode::SubstringLongestMatch;
  return std::nullopt;
}

std::optional<DictionaryFormat> parse_dictionary_format(std::string_view s) {
  if (s == "liwc") return DictionaryFormat::Liwc;
  if (s == "two_column" || s == "tsv") return DictionaryFormat::TwoColumn;
  return std::nullopt;
}

FoundationSet MoralTerm::basic_foundations() const {
  FoundationSet s;
  for (const auto& c : categories) s.insert(c.foundation);
  return s;
}

// ---------------------------------------------------------------------------
// Category names

const CategoryNameTable& CategoryNameTable::builtin() {
  static const CategoryNameTable table = [] {
    CategoryNameTable t;
    const std::pair<std::string_view, Foundation> stems[] = {
        {"Harm", Foundation::Care},           {"Care", Foundation::Care},
        {"Fairness", Foundation::Fairness},   {"Ingroup", Foundation::Ingroup},
        {"Loyalty", Foundation::Ingroup},     {"Authority", Foundation::Authority},
        {"Purity", Foundation::Purity},       {"Sanctity", Foundation::Purity},
    };
    for (auto [stem, f] : stems) {
      t.add(fmt::format("{}Virtue", stem), {f, Polarity::Virtue});
      t.add(fmt::format("{}Vice", stem), {f, Polarity::Vice});
      t.add(fmt::format("{}.virtue", stem), {f, Polarity::Virtue});
      t.add(fmt::format("{}.vice", stem), {f, Polarity::Vice});
    }
    t.add("MoralityGeneral", {Foundation::GeneralMorality, Polarity::Virtue});
    t.add("GeneralMorality", {Foundation::GeneralMorality, Polarity::Virtue});
    return t;
  }();
  return table;
}

CategoryNameTable CategoryNameTable::parse(std::string_view text, const std::string& source) {
  CategoryNameTable t;
  const auto lines = io::split_lines(text);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const auto line = io::trim(lines[i]);
    if (line.empty() || line.front() == '#') continue;
    const auto f = split_fields(line);
    std::optional<Foundation> foundation;
    std::optional<Polarity> polarity;
    if (f.size() == 3) {
      foundation = parse_foundation(f[1]);
      polarity = parse_polarity(f[2]);
    }
    if (!foundation || !polarity)
      throw DataError("lexicon", source, i + 1,
                      "expected `Name<TAB>Foundation<TAB>virtue|vice`");
    t.add(f[0], {*foundation, *polarity});
  }
  return t;
}

void CategoryNameTable::add(std::string_view name, Category c) { names_[ascii_lower(name)] = c; }

std::optional<Category> CategoryNameTable::find(std::string_view name) const {
  auto it = names_.find(ascii_lower(name));
  if (it == names_.end()) return std::nullopt;
  return it->second;
}

std::string CategoryNameTable::canonical_name(Category c) {
  if (c.foundation == Foundation::GeneralMorality) return "MoralityGeneral";
  const std::string_view stem = c.foundation == Foundation::Care ? "Harm" : to_string(c.foundation);
  return fmt::format("{}{}", stem, c.polarity == Polarity::Virtue ? "Virtue" : "Vice");
}

// ---------------------------------------------------------------------------
// MoralLexicon

MoralLexicon::MoralLexicon(std::vector<MoralTerm> terms, MatchMode mode, std::string language_tag)
    : terms_(std::move(terms)), mode_(mode), language_(std::move(language_tag)) {
  for (auto& t : terms_) {
    if (t.surface.empty()) throw std::invalid_argument("moral term with empty surface");
    std::sort(t.categories.begin(), t.categories.end());
    t.categories.erase(std::unique(t.categories.begin(), t.categories.end()), t.categories.end());
    if (t.categories.empty())
      throw std::invalid_argument(fmt::format("moral term '{}' has no categories", t.surface));
  }
  std::sort(terms_.begin(), terms_.end(), [](const MoralTerm& a, const MoralTerm& b) {
    return std::tie(a.surface, a.is_stem) < std::tie(b.surface, b.is_stem);
  });
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    if (!trie_.insert(terms_[i].surface, static_cast<std::int32_t>(i), terms_[i].is_stem))
      throw std::invalid_argument(fmt::format("duplicate moral term '{}{}'", terms_[i].surface,
                                              terms_[i].is_stem ? "*" : ""));
  }
}

const MoralTerm* MoralLexicon::match_token(std::string_view token) const {
  ByteTrie::NodeId node = ByteTrie::root();
  std::int32_t best = ByteTrie::kNone;
  for (std::size_t i = 0; i < token.size(); ++i) {
    auto next = trie_.child(node, static_cast<unsigned char>(token[i]));
    if (!next) return best == ByteTrie::kNone ? nullptr : &terms_[static_cast<std::size_t>(best)];
    node = *next;
    const auto& n = trie_.node(node);
    if (n.stem != ByteTrie::kNone) best = n.stem;
  }
  const auto& last = trie_.node(node);
  if (last.exact != ByteTrie::kNone) best = last.exact;
  return best == ByteTrie::kNone ? nullptr : &terms_[static_cast<std::size_t>(best)];
}

std::vector<TokenMatch> MoralLexicon::match_tokens(std::span<const std::string> tokens) const {
  if (mode_ != MatchMode::TokenPrefix)
    throw std::logic_error("match_tokens requires a token_prefix lexicon");
  std::vector<TokenMatch> out;
  for (std::size_t i = 0; i < tokens.size(); ++i)
    if (const auto* t = match_token(tokens[i])) out.push_back({i, t});
  return out;
}

std::vector<SubstringMatch> MoralLexicon::match_substring(std::string_view text) const {
  if (mode_ != MatchMode::SubstringLongestMatch)
    throw std::logic_error("match_substring requires a substring_longest_match lexicon");
  std::vector<SubstringMatch> out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    ByteTrie::NodeId node = ByteTrie::root();
    std::int32_t best = ByteTrie::kNone;
    std::size_t best_len = 0;
    for (std::size_t i = pos; i < text.size(); ++i) {
      auto next = trie_.child(node, static_cast<unsigned char>(text[i]));
      if (!next) break;
      node = *next;
      const auto& n = trie_.node(node);
      // Any term is a substring hit here; exact wins over a stem of the same surface.
      const auto hit = n.exact != ByteTrie::kNone ? n.exact : n.stem;
      if (hit != ByteTrie::kNone) {
        best = hit;
        best_len = i + 1 - pos;
      }
    }
    if (best != ByteTrie::kNone) {
      out.push_back({pos, &terms_[static_cast<std::size_t>(best)]});
      pos += best_len;
    } else {
      unicode::next_code_point(text, pos);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

struct PendingTerm {
  MoralTerm term;
  std::size_t line;
};

MoralTerm make_term(std::string_view raw_word, std::vector<Category> cats, MatchMode mode,
                    const std::string& source, std::size_t line) {
  MoralTerm t;
  std::string_view word = io::trim(raw_word);
  if (!word.empty() && word.back() == '*') {
    t.is_stem = true;
    word.remove_suffix(1);
  }
  t.surface = normalize_surface(word, mode);
  if (t.surface.empty()) throw DataError("lexicon", source, line, "empty dictionary term");
  t.categories = std::move(cats);
  return t;
}

MoralLexicon finish(std::vector<PendingTerm> pending, const DictionaryOptions& opts) {
  if (pending.empty()) throw DataError("lexicon", opts.source, 0, "empty dictionary");
  std::set<std::pair<std::string, bool>> seen;
  std::vector<MoralTerm> terms;
  terms.reserve(pending.size());
  for (auto& p : pending) {
    if (!seen.emplace(p.term.surface, p.term.is_stem).second)
      throw DataError("lexicon", opts.source, p.line,
                      fmt::format("duplicate entry '{}{}'", p.term.surface, p.term.is_stem ? "*" : ""));
    terms.push_back(std::move(p.term));
  }
  return MoralLexicon(std::move(terms), opts.mode, opts.language_tag);
}

MoralLexicon parse_liwc(std::string_view bytes, const DictionaryOptions& opts,
                        const CategoryNameTable& names) {
  const auto lines = io::split_lines(bytes);
  std::size_t i = 0;
  while (i < lines.size() && io::trim(lines[i]).empty()) ++i;
  if (i == lines.size() || io::trim(lines[i]) != "%")
    throw DataError("lexicon", opts.source, i < lines.size() ? i + 1 : 0,
                    "malformed header: expected opening '%' fence");
  ++i;

  std::map<long, Category> ids;
  bool closed = false;
  for (; i < lines.size(); ++i) {
    const auto line = io::trim(lines[i]);
    if (line.empty()) continue;
    if (line == "%") {
      closed = true;
      ++i;
      break;
    }
    const auto f = split_fields(line);
    long id = 0;
    if (f.size() != 2 ||
        std::from_chars(f[0].data(), f[0].data() + f[0].size(), id).ptr != f[0].data() + f[0].size())
      throw DataError("lexicon", opts.source, i + 1, "malformed header line, expected `id<TAB>name`");
    const auto cat = names.find(f[1]);
    if (!cat)
      throw DataError("lexicon", opts.source, i + 1, fmt::format("unknown category name '{}'", f[1]));
    if (!ids.emplace(id, *cat).second)
      throw DataError("lexicon", opts.source, i + 1, fmt::format("duplicate category id {}", id));
  }
  if (!closed) throw DataError("lexicon", opts.source, 0, "malformed header: missing closing '%' fence");

  std::vector<PendingTerm> pending;
  for (; i < lines.size(); ++i) {
    const auto line = lines[i];
    if (io::trim(line).empty()) continue;
    std::string_view word;
    std::vector<std::string_view> refs;
    if (const auto tab = line.find('\t'); tab != std::string_view::npos) {
      word = line.substr(0, tab);
      refs = split_fields(line.substr(tab + 1));
    } else {
      auto f = split_fields(line);
      word = f.front();
      refs.assign(f.begin() + 1, f.end());
    }
    if (refs.empty()) throw DataError("lexicon", opts.source, i + 1, "entry without category ids");
    std::vector<Category> cats;
    for (auto ref : refs) {
      long id = 0;
      const auto* end = ref.data() + ref.size();
      const auto it = std::from_chars(ref.data(), end, id).ptr == end ? ids.find(id) : ids.end();
      if (it == ids.end())
        throw DataError("lexicon", opts.source, i + 1, fmt::format("unrecognized category id '{}'", ref));
      cats.push_back(it->second);
    }
    pending.push_back({make_term(word, std::move(cats), opts.mode, opts.source, i + 1), i + 1});
  }
  return finish(std::move(pending), opts);
}

MoralLexicon parse_two_column(std::string_view bytes, const DictionaryOptions& opts,
                              const CategoryNameTable& names) {
  const auto lines = io::split_lines(bytes);
  std::vector<PendingTerm> pending;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const auto line = lines[i];
    if (io::trim(line).empty()) continue;
    const auto tab = line.find('\t');
    if (tab == std::string_view::npos)
      throw DataError("lexicon", opts.source, i + 1, "expected `word<TAB>categoryName`");
    const auto refs = split_fields(line.substr(tab + 1));
    if (refs.empty()) throw DataError("lexicon", opts.source, i + 1, "entry without category name");
    std::vector<Category> cats;
    for (auto ref : refs) {
      const auto cat = names.find(ref);
      if (!cat)
        throw DataError("lexicon", opts.source, i + 1, fmt::format("unknown category name '{}'", ref));
      cats.push_back(*cat);
    }
    pending.push_back({make_term(line.substr(0, tab), std::move(cats), opts.mode, opts.source, i + 1), i + 1});
  }
  return finish(std::move(pending), opts);
}

}  // namespace

MoralLexicon parse_dictionary(std::string_view bytes, const DictionaryOptions& opts) {
  if (bytes.starts_with("\xEF\xBB\xBF")) bytes.remove_prefix(3);
  if (!unicode::is_valid_utf8(bytes))
    throw DataError("lexicon", opts.source, 0, "dictionary is not valid UTF-8");
  const auto& names = opts.names ? *opts.names : CategoryNameTable::builtin();
  return opts.format == DictionaryFormat::Liwc ? parse_liwc(bytes, opts, names)
                                               : parse_two_column(bytes, opts, names);
}

MoralLexicon load_dictionary(const std::string& path, DictionaryOptions opts) {
  opts.source = path;
  return parse_dictionary(io::read_file(path), opts);
}

std::string serialize_dictionary(const MoralLexicon& lex) {
  std::set<Category> used;
  for (const auto& t : lex.terms()) used.insert(t.categories.begin(), t.categories.end());
  std::map<Category, int> ids;
  std::string out = "%\n";
  int next = 1;
  for (const auto& c : used) {
    ids[c] = next;
    out += fmt::format("{:02}\t{}\n", next++, CategoryNameTable::canonical_name(c));
  }
  out += "%\n";
  for (const auto& t : lex.terms()) {
    out += t.surface;
    if (t.is_stem) out += '*';
    for (std::size_t i = 0; i < t.categories.size(); ++i)
      out += fmt::format("{}{:02}", i == 0 ? '\t' : ' ', ids.at(t.categories[i]));
    out += '\n';
  }
  return out;
}

nlohmann::json to_json(const MoralLexicon& lex) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& t : lex.terms()) {
    nlohmann::json cats = nlohmann::json::array();
    for (const auto& c : t.categories) cats.push_back(to_string(c));
    terms.push_back({{"surface", t.surface}, {"stem", t.is_stem}, {"categories", cats}});
  }
  return {{"language", lex.language_tag()},
          {"match_mode", std::string(to_string(lex.match_mode()))},
          {"terms", terms}};
}

MoralLexicon lexicon_from_json(const nlohmann::json& j) {
  const auto mode = parse_match_mode(j.at("match_mode").get<std::string>());
  if (!mode) throw std::invalid_argument("unknown match_mode");
  std::vector<MoralTerm> terms;
  for (const auto& jt : j.at("terms")) {
    MoralTerm t;
    t.surface = jt.at("surface").get<std::string>();
    t.is_stem = jt.at("stem").get<bool>();
    for (const auto& jc : jt.at("categories")) {
      auto c = parse_category(jc.get<std::string>());
      if (!c) throw std::invalid_argument("unknown category " + jc.get<std::string>());
      t.categories.push_back(*c);
    }
    terms.push_back(std::move(t));
  }
  return MoralLexicon(std::move(terms), *mode, j.at("language").get<std::string>());
}

}  // namespace moralnet
