#include "moralnet/valence.hpp"

#include "moralnet/error.hpp"
#include "moralnet/io.hpp"
#include "moralnet/unicode.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <stdexcept>

namespace moralnet {

namespace {

double parse_number(std::string_view s) {
  double v = 0;
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || ptr != end || !std::isfinite(v))
    throw std::invalid_argument(fmt::format("not a number: '{}'", s));
  return v;
}

std::vector<std::string_view> split_tabs(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto tab = line.find('\t', start);
    out.push_back(io::trim(line.substr(start, tab - start)));
    if (tab == std::string_view::npos) break;
    start = tab + 1;
  }
  return out;
}

ValenceResult make_result(double score) { return {score, label_for(score)}; }

}  // namespace

ValenceLexicon::ValenceLexicon(std::vector<ValenceLexiconEntry> entries, Language lang)
    : entries_(std::move(entries)) {
  for (auto& e : entries_) {
    e.surface = lang == Language::English ? unicode::nfkc_casefold(e.surface) : unicode::nfkc(e.surface);
    if (e.surface.empty()) throw std::invalid_argument("valence entry with empty surface");
  }
  std::sort(entries_.begin(), entries_.end(),
            [](const auto& a, const auto& b) { return a.surface < b.surface; });
  for (std::size_t i = 0; i < entries_.size(); ++i)
    if (!trie_.insert(entries_[i].surface, static_cast<std::int32_t>(i), false))
      throw std::invalid_argument(fmt::format("duplicate valence entry '{}'", entries_[i].surface));
}

ValenceLexicon ValenceLexicon::parse(std::string_view tsv, Language lang, const std::string& source) {
  if (tsv.starts_with("\xEF\xBB\xBF")) tsv.remove_prefix(3);
  std::vector<ValenceLexiconEntry> entries;
  std::vector<std::size_t> line_of;
  const auto lines = io::split_lines(tsv);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (io::trim(lines[i]).empty() || io::trim(lines[i]).front() == '#') continue;
    const auto f = split_tabs(lines[i]);
    try {
      ValenceLexiconEntry e;
      e.surface = std::string(f[0]);
      if (f.size() == 2) {
        e.polarity = parse_number(f[1]);
      } else if (f.size() == 3 && f[1] == "BOOST") {
        e.is_booster = true;
        e.booster_delta = parse_number(f[2]);
      } else {
        throw std::invalid_argument("expected `surface<TAB>polarity` or `surface<TAB>BOOST<TAB>delta`");
      }
      entries.push_back(std::move(e));
      line_of.push_back(i + 1);
    } catch (const std::invalid_argument& e) {
      throw DataError("valence", source, i + 1, e.what());
    }
  }
  try {
    return ValenceLexicon(std::move(entries), lang);
  } catch (const std::invalid_argument& e) {
    throw DataError("valence", source, 0, e.what());
  }
}

ValenceLexicon ValenceLexicon::load(const std::string& path, Language lang) {
  return parse(io::read_file(path), lang, path);
}

const ValenceLexiconEntry* ValenceLexicon::find(std::string_view surface) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), surface,
                             [](const auto& e, std::string_view s) { return e.surface < s; });
  return it != entries_.end() && it->surface == surface ? &*it : nullptr;
}

std::pair<const ValenceLexiconEntry*, std::size_t> ValenceLexicon::longest_polar_at(
    std::string_view text, std::size_t pos) const {
  ByteTrie::NodeId node = ByteTrie::root();
  const ValenceLexiconEntry* best = nullptr;
  std::size_t best_len = 0;
  for (std::size_t i = pos; i < text.size(); ++i) {
    auto next = trie_.child(node, static_cast<unsigned char>(text[i]));
    if (!next) break;
    node = *next;
    const auto id = trie_.node(node).exact;
    if (id != ByteTrie::kNone && !entries_[static_cast<std::size_t>(id)].is_booster) {
      best = &entries_[static_cast<std::size_t>(id)];
      best_len = i + 1 - pos;
    }
  }
  return {best, best_len};
}

std::string_view to_string(ValenceLabel l) {
  switch (l) {
    case ValenceLabel::Positive: return "positive";
    case ValenceLabel::Negative: return "negative";
    case ValenceLabel::Neutral: break;
  }
  return "neutral";
}

std::optional<ValenceLabel> parse_valence_label(std::string_view s) {
  for (auto l : {ValenceLabel::Positive, ValenceLabel::Negative, ValenceLabel::Neutral})
    if (s == to_string(l)) return l;
  return std::nullopt;
}

ValenceResult valence_en(std::span<const std::string> tokens, const ValenceLexicon& lex,
                         const ValenceRules& rules) {
  auto is_negator = [&](const std::string& t) {
    return std::find(rules.negators.begin(), rules.negators.end(), t) != rules.negators.end();
  };
  double sum = 0.0;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    const auto* e = lex.find(tokens[i]);
    if (!e || e->is_booster || e->polarity == 0.0) continue;
    const double sign = e->polarity > 0 ? 1.0 : -1.0;
    double v = e->polarity;
    std::size_t negations = 0;
    for (std::size_t k = 1; k <= rules.window && k <= i; ++k) {
      const auto& prev = tokens[i - k];
      if (const auto* b = lex.find(prev); b && b->is_booster) v += sign * b->booster_delta;
      if (is_negator(prev)) ++negations;
    }
    for (std::size_t n = 0; n < negations; ++n) v *= rules.negation_scalar;
    sum += v;
  }
  if (sum == 0.0) return make_result(0.0);
  return make_result(sum / std::sqrt(sum * sum + rules.alpha));
}

namespace {

std::vector<std::string_view> split_sentences(std::string_view text, const ValenceRules& rules) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t term_len = 0;
    for (const auto& t : rules.ja_sentence_terminators)
      if (!t.empty() && text.substr(pos).starts_with(t)) {
        term_len = t.size();
        break;
      }
    if (term_len > 0) {
      if (auto s = io::trim(text.substr(start, pos - start)); !s.empty()) out.push_back(s);
      pos += term_len;
      start = pos;
    } else {
      unicode::next_code_point(text, pos);
    }
  }
  if (auto s = io::trim(text.substr(start)); !s.empty()) out.push_back(s);
  return out;
}

}  // namespace

ValenceResult valence_ja(std::string_view text, const ValenceLexicon& lex, const ValenceRules& rules) {
  const auto sentences = split_sentences(text, rules);
  if (sentences.empty()) return make_result(0.0);
  double total = 0.0;
  for (auto sentence : sentences) {
    int pos_hits = 0;
    int neg_hits = 0;
    std::size_t pos = 0;
    while (pos < sentence.size()) {
      auto [entry, len] = lex.longest_polar_at(sentence, pos);
      if (!entry || entry->polarity == 0.0) {
        unicode::next_code_point(sentence, pos);
        continue;
      }
      pos += len;
      bool positive = entry->polarity > 0;
      const auto rest = sentence.substr(pos);
      for (const auto& suffix : rules.ja_negation_suffixes)
        if (!suffix.empty() && rest.starts_with(suffix)) {
          positive = !positive;
          break;
        }
      ++(positive ? pos_hits : neg_hits);
    }
    if (pos_hits + neg_hits > 0)
      total += static_cast<double>(pos_hits - neg_hits) / static_cast<double>(pos_hits + neg_hits);
  }
  return make_result(total / static_cast<double>(sentences.size()));
}

std::string valence_to_jsonl(std::span<const ValencedTweet> rows) {
  std::string out;
  for (const auto& r : rows) {
    nlohmann::json j = {{"id", r.id},
                        {"lang", std::string(to_string(r.lang))},
                        {"score", r.valence.score},
                        {"label", std::string(to_string(r.valence.label))}};
    out += j.dump();
    out += '\n';
  }
  return out;
}

std::vector<ValencedTweet> parse_valence_jsonl(std::string_view text, const std::string& stage,
                                               const std::string& source) {
  std::vector<ValencedTweet> out;
  const auto lines = io::split_lines(text);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (io::trim(lines[i]).empty()) continue;
    try {
      const auto j = nlohmann::json::parse(lines[i]);
      ValencedTweet r;
      r.id = j.at("id").get<std::string>();
      r.lang = parse_language(j.at("lang").get<std::string>());
      r.valence.score = j.at("score").get<double>();
      r.valence.label = label_for(r.valence.score);
      out.push_back(std::move(r));
    } catch (const std::exception& e) {
      throw DataError(stage, source, i + 1, e.what());
    }
  }
  return out;
}

std::string valence_shares_csv(std::span<const MoralScoredTweet> tweets,
                               std::span<const ValenceResult> valence) {
  if (tweets.size() != valence.size()) throw std::invalid_argument("valence/tweet size mismatch");
  io::CsvWriter w({"lang", "foundation", "n_tweets", "positive", "negative", "neutral",
                   "share_positive", "share_negative", "share_neutral"});
  for (Language lang : {Language::English, Language::Japanese}) {
    std::array<std::array<std::uint64_t, 3>, kNumBasic> n{};
    bool any = false;
    for (std::size_t i = 0; i < tweets.size(); ++i) {
      if (tweets[i].tweet.lang != lang) continue;
      any = true;
      for (Foundation f : tweets[i].labels.members())
        ++n[index_of(f)][static_cast<std::size_t>(valence[i].label)];
    }
    if (!any) continue;
    for (Foundation f : kBasicFoundations) {
      const auto& c = n[index_of(f)];
      const auto total = c[0] + c[1] + c[2];
      auto share = [&](std::uint64_t k) {
        return total == 0 ? std::string("NA")
                          : io::format_double(static_cast<double>(k) / static_cast<double>(total));
      };
      w.add_row({std::string(to_string(lang)), std::string(to_string(f)), std::to_string(total),
                 std::to_string(c[0]), std::to_string(c[1]), std::to_string(c[2]), share(c[0]),
                 share(c[1]), share(c[2])});
    }
  }
  return w.str();
}

}  // namespace moralnet
