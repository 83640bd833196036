#include "moralnet/pipeline.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <set>
#include <stdexcept>
#include <unordered_map>

#include "moralnet/error.hpp"
#include "moralnet/graph.hpp"
#include "moralnet/hash.hpp"
#include "moralnet/io.hpp"
#include "moralnet/svg.hpp"
#include "moralnet/valence.hpp"

namespace fs = std::filesystem;

namespace moralnet {

std::string_view to_string(PcaInput p) { return p == PcaInput::Tweet ? "tweet" : "user"; }

std::optional<PcaInput> parse_pca_input(std::string_view s) {
  if (s == "tweet") return PcaInput::Tweet;
  if (s == "user") return PcaInput::User;
  return std::nullopt;
}

std::string_view to_string(Stage s) {
  switch (s) {
    case Stage::Score: return "score";
    case Stage::Valence: return "valence";
    case Stage::Profiles: return "profiles";
    case Stage::Network: return "network";
    case Stage::Homophily: return "homophily";
    case Stage::Stats: return "stats";
    case Stage::Pca: return "pca";
  }
  return "?";
}

namespace {

constexpr std::pair<const char*, Language> kLanguages[] = {{"en", Language::English}, {"ja", Language::Japanese}};

constexpr std::pair<std::size_t, std::size_t> kBiplotAxes[] = {{1, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 4}, {3, 4}};

void require_file(const std::string& path, const char* key) {
  if (path.empty()) throw ConfigError(fmt::format("`{}` is not set", key));
  if (!fs::is_regular_file(path)) throw ConfigError(fmt::format("{} file not found: {}", key, path));
}

void optional_file(const std::string& path, const char* key) {
  if (!path.empty()) require_file(path, key);
}

// Output names each stage owns; stale files matching these are removed when
// the stage's results are committed.
std::vector<std::string> owned_prefixes(Stage s) {
  switch (s) {
    case Stage::Score: return {"scored.jsonl", "filter_stats.csv", "foundation_shares."};
    case Stage::Valence: return {"valence.jsonl", "valence_shares."};
    case Stage::Profiles: return {"profiles_"};
    case Stage::Network: return {"edges_", "network_", "core"};
    case Stage::Homophily: return {"homophily.", "node_homophily_"};
    case Stage::Stats: return {"kruskal_wallis.csv"};
    case Stage::Pca: return {"pca_"};
  }
  return {};
}

std::vector<std::string> content_lines(const std::string& path) {
  std::vector<std::string> out;
  for (auto line : io::split_lines(io::read_file(path))) {
    line = io::trim(line);
    if (!line.empty() && line.front() != '#') out.emplace_back(line);
  }
  return out;
}

MoralLexicon load_lexicon(const PipelineConfig& cfg, Language lang, const CategoryNameTable* names) {
  DictionaryOptions opts;
  opts.names = names;
  if (lang == Language::English) {
    opts.format = cfg.dict_en_format;
    opts.mode = MatchMode::TokenPrefix;
    opts.language_tag = "en";
    return load_dictionary(cfg.dict_en, opts);
  }
  opts.format = cfg.dict_ja_format;
  opts.mode = MatchMode::SubstringLongestMatch;
  opts.language_tag = "ja";
  return load_dictionary(cfg.dict_ja, opts);
}

std::optional<CategoryNameTable> load_names(const PipelineConfig& cfg) {
  if (cfg.category_table.empty()) return std::nullopt;
  return CategoryNameTable::parse(io::read_file(cfg.category_table), cfg.category_table);
}

StopwordSet load_stopword_file(const PipelineConfig& cfg) {
  return cfg.stopwords.empty() ? StopwordSet{} : load_stopwords(cfg.stopwords);
}

std::vector<stats::Sample> samples_of(const std::vector<MoralScoredTweet>& tweets, Language lang,
                                      std::vector<std::string>& names) {
  std::vector<stats::Sample> out;
  for (const auto& t : tweets) {
    if (t.tweet.lang != lang) continue;
    out.push_back(t.loading.values());
    names.push_back(t.tweet.id);
  }
  return out;
}

}  // namespace

void validate(const PipelineConfig& cfg, Stage stage) {
  auto corpus = [&] {
    if (cfg.corpus.empty()) throw ConfigError("no corpus file given");
    for (const auto& c : cfg.corpus) require_file(c, "corpus");
    optional_file(cfg.keywords, "keywords");
  };
  switch (stage) {
    case Stage::Score:
      corpus();
      if (cfg.dict_en.empty() && cfg.dict_ja.empty()) throw ConfigError("need dict_en and/or dict_ja");
      optional_file(cfg.dict_en, "dict_en");
      optional_file(cfg.dict_ja, "dict_ja");
      optional_file(cfg.category_table, "category_table");
      optional_file(cfg.stopwords, "stopwords");
      break;
    case Stage::Valence:
      corpus();
      if (cfg.valence_en.empty() && cfg.valence_ja.empty()) throw ConfigError("need valence_en and/or valence_ja");
      optional_file(cfg.valence_en, "valence_en");
      optional_file(cfg.valence_ja, "valence_ja");
      break;
    case Stage::Network:
      corpus();
      if (cfg.kcore == 0) throw ConfigError("kcore must be >= 1");
      break;
    case Stage::Homophily: optional_file(cfg.edges, "edges"); break;
    case Stage::Profiles:
    case Stage::Stats:
    case Stage::Pca: break;
  }
  if (cfg.out_dir.empty()) throw ConfigError("out directory is not set");
}

std::string config_hash(const PipelineConfig& cfg) {
  Sha256 h;
  auto file = [&](const char* role, const std::string& path) {
    h.field(role);
    h.field(path.empty() ? std::string("-") : sha256_hex(io::read_file(path)));
  };
  for (const auto& c : cfg.corpus) file("corpus", c);
  file("dict_en", cfg.dict_en);
  file("dict_ja", cfg.dict_ja);
  file("category_table", cfg.category_table);
  file("valence_en", cfg.valence_en);
  file("valence_ja", cfg.valence_ja);
  file("stopwords", cfg.stopwords);
  file("keywords", cfg.keywords);
  file("edges", cfg.edges);
  h.field(cfg.dict_en_format == DictionaryFormat::Liwc ? "liwc" : "two_column");
  h.field(cfg.dict_ja_format == DictionaryFormat::Liwc ? "liwc" : "two_column");
  h.field(to_string(cfg.multilabel));
  h.field(to_string(cfg.counting));
  h.field(to_string(cfg.pca_mode));
  h.field(to_string(cfg.pca_input));
  h.field(std::to_string(cfg.kcore));
  h.field(cfg.svg ? "svg" : "no-svg");
  return h.hex_digest();
}

Pipeline::Pipeline(PipelineConfig cfg, bool read_upstream) : cfg_(std::move(cfg)), read_upstream_(read_upstream) {}

void Pipeline::put(std::string name, std::string contents) { files_[std::move(name)] = std::move(contents); }

const std::string& Pipeline::upstream(const std::string& name, Stage producer) {
  if (auto it = files_.find(name); it != files_.end()) return it->second;
  if (auto it = loaded_.find(name); it != loaded_.end()) return it->second;
  const fs::path path = fs::path(cfg_.out_dir) / name;
  if (!read_upstream_ || !fs::is_regular_file(path))
    throw ConfigError(fmt::format("missing {} in {}; run `moralnet {}` first", name, cfg_.out_dir,
                                  to_string(producer)));
  return loaded_[name] = io::read_file(path);
}

const std::vector<TweetRecord>& Pipeline::records(Stage stage) {
  if (records_) return *records_;
  const std::string stage_name(to_string(stage));
  std::vector<std::string> keywords;
  if (!cfg_.keywords.empty()) {
    keywords = content_lines(cfg_.keywords);
    if (keywords.empty()) throw ConfigError("keywords file is empty: " + cfg_.keywords);
  }

  struct Origin {
    const std::string* source;
    std::size_t line;
  };
  std::vector<TweetRecord> all;
  std::vector<Origin> origins;
  for (const auto& path : cfg_.corpus) {
    const std::string text = io::read_file(path);
    auto recs = parse_corpus(text, stage_name, path);
    const auto lines = io::split_lines(text);
    std::size_t k = 0;
    for (std::size_t i = 0; i < lines.size() && k < recs.size(); ++i) {
      if (io::trim(lines[i]).empty()) continue;
      origins.push_back({&path, i + 1});
      all.push_back(std::move(recs[k++]));
    }
  }

  std::vector<std::size_t> order(all.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return all[a].id < all[b].id; });
  for (std::size_t i = 1; i < order.size(); ++i)
    if (all[order[i]].id == all[order[i - 1]].id) {
      const auto& o = origins[std::max(order[i], order[i - 1])];
      throw DataError(stage_name, *o.source, o.line, "duplicate tweet id " + all[order[i]].id);
    }

  std::vector<TweetRecord> sorted;
  sorted.reserve(all.size());
  for (auto i : order)
    if (keywords.empty() || keyword_filter(all[i], keywords)) sorted.push_back(std::move(all[i]));
  records_ = std::move(sorted);
  return *records_;
}

void Pipeline::run(Stage stage) {
  try {
    switch (stage) {
      case Stage::Score: score(); break;
      case Stage::Valence: valence(); break;
      case Stage::Profiles: profiles(); break;
      case Stage::Network: network(); break;
      case Stage::Homophily: homophily(); break;
      case Stage::Stats: statistics(); break;
      case Stage::Pca: pca(); break;
    }
  } catch (const ConfigError&) {
    throw;
  } catch (const DataError&) {
    throw;
  } catch (const std::exception& e) {
    throw DataError(std::string(to_string(stage)), "", 0, e.what());
  }
  ran_.push_back(stage);
}

void Pipeline::score() {
  validate(cfg_, Stage::Score);
  const auto names = load_names(cfg_);
  const CategoryNameTable* table = names ? &*names : nullptr;
  std::optional<MoralLexicon> en, ja;
  if (!cfg_.dict_en.empty()) en = load_lexicon(cfg_, Language::English, table);
  if (!cfg_.dict_ja.empty()) ja = load_lexicon(cfg_, Language::Japanese, table);
  const LanguageLexicons lexicons{en ? &*en : nullptr, ja ? &*ja : nullptr};
  const auto stopwords = load_stopword_file(cfg_);

  const auto& recs = records(Stage::Score);
  const auto scored = score_corpus(recs, lexicons, stopwords, {cfg_.counting, cfg_.threads});

  put("scored.jsonl", scored_to_jsonl(scored.tweets));
  put("filter_stats.csv", filter_stats_csv(scored.stats));
  put("foundation_shares.csv", foundation_shares_csv(scored.tweets));

  if (cfg_.svg) {
    std::vector<std::string> cats;
    for (auto f : kBasicFoundations) cats.emplace_back(to_string(f));
    std::vector<svg::BarSeries> series;
    for (const auto& [tag, lang] : kLanguages) {
      svg::BarSeries s{tag, std::vector<double>(kNumBasic, 0.0)};
      std::size_t n = 0;
      for (const auto& t : scored.tweets) {
        if (t.tweet.lang != lang) continue;
        ++n;
        for (auto f : t.labels.members()) s.values[index_of(f)] += 1.0;
      }
      for (auto& v : s.values) v = n ? v / static_cast<double>(n) : 0.0;
      series.push_back(std::move(s));
    }
    put("foundation_shares.svg", svg::bar_chart("Tweets per moral foundation", cats, series, "share of tweets"));
  }
}

void Pipeline::valence() {
  validate(cfg_, Stage::Valence);
  const auto scored = parse_scored_jsonl(upstream("scored.jsonl", Stage::Score), "valence", "scored.jsonl");
  std::optional<ValenceLexicon> en, ja;
  if (!cfg_.valence_en.empty()) en = ValenceLexicon::load(cfg_.valence_en, Language::English);
  if (!cfg_.valence_ja.empty()) ja = ValenceLexicon::load(cfg_.valence_ja, Language::Japanese);

  std::unordered_map<std::string_view, const TweetRecord*> by_id;
  for (const auto& r : records(Stage::Valence)) by_id.emplace(r.id, &r);

  const StopwordSet no_stopwords;
  std::vector<MoralScoredTweet> kept;
  std::vector<ValencedTweet> rows;
  std::vector<ValenceResult> results;
  for (const auto& t : scored) {
    const auto it = by_id.find(t.tweet.id);
    if (it == by_id.end())
      throw DataError("valence", "scored.jsonl", 0, "tweet " + t.tweet.id + " is not in the corpus");
    const TweetRecord& rec = *it->second;
    ValenceResult v;
    if (rec.lang == Language::English && en) {
      // Negators such as "not" are stopwords, so valence tokens keep them.
      const auto tokens = tokenize_en(rec.text, no_stopwords);
      v = valence_en(tokens, *en);
    } else if (rec.lang == Language::Japanese && ja) {
      v = valence_ja(valence_text_ja(rec.text), *ja);
    } else {
      continue;
    }
    rows.push_back({rec.id, rec.lang, v});
    results.push_back(v);
    kept.push_back(t);
  }
  put("valence.jsonl", valence_to_jsonl(rows));
  put("valence_shares.csv", valence_shares_csv(kept, results));

  if (cfg_.svg) {
    std::vector<std::string> cats;
    for (auto f : kBasicFoundations) cats.emplace_back(to_string(f));
    std::vector<svg::BarSeries> series;
    for (const auto& [tag, lang] : kLanguages)
      for (auto label : {ValenceLabel::Positive, ValenceLabel::Negative}) {
        svg::BarSeries s{fmt::format("{} {}", tag, to_string(label)), std::vector<double>(kNumBasic, 0.0)};
        std::array<double, kNumBasic> total{};
        for (std::size_t i = 0; i < kept.size(); ++i) {
          if (kept[i].tweet.lang != lang) continue;
          for (auto f : kept[i].labels.members()) {
            total[index_of(f)] += 1.0;
            if (results[i].label == label) s.values[index_of(f)] += 1.0;
          }
        }
        for (std::size_t j = 0; j < kNumBasic; ++j) s.values[j] = total[j] > 0 ? s.values[j] / total[j] : 0.0;
        series.push_back(std::move(s));
      }
    put("valence_shares.svg", svg::bar_chart("Valence by moral foundation", cats, series, "share of tweets"));
  }
}

void Pipeline::profiles() {
  const auto scored = parse_scored_jsonl(upstream("scored.jsonl", Stage::Score), "profiles", "scored.jsonl");
  for (const auto& [tag, lang] : kLanguages) {
    std::vector<MoralScoredTweet> subset;
    for (const auto& t : scored)
      if (t.tweet.lang == lang) subset.push_back(t);
    put(fmt::format("profiles_{}.csv", tag), profiles_csv(build_profiles(subset, cfg_.multilabel)));
  }
}

void Pipeline::network() {
  validate(cfg_, Stage::Network);
  io::CsvWriter summary({"lang", "retweets", "self_retweets", "unlabelled_endpoint", "accepted", "nodes",
                         "edges", "k", "core_nodes", "core_edges"});
  const auto& recs = records(Stage::Network);
  for (const auto& [tag, lang] : kLanguages) {
    const std::string name = fmt::format("profiles_{}.csv", tag);
    const auto profiles = parse_profiles_csv(upstream(name, Stage::Profiles), "network", name);
    std::map<std::string, Foundation> labels;
    for (const auto& [id, p] : profiles)
      if (p.label) labels.emplace(id, *p.label);

    std::vector<TweetRecord> subset;
    for (const auto& r : recs)
      if (r.lang == lang && r.is_retweet()) subset.push_back(r);
    NetworkBuildStats st;
    const auto net = build_network(subset, labels, &st);
    const auto core = k_core(net, cfg_.kcore);

    put(fmt::format("edges_{}.csv", tag), edge_list_csv(net));
    put(fmt::format("network_{}.gexf", tag), to_gexf(net));
    put(fmt::format("core{}_{}.gexf", cfg_.kcore, tag), to_gexf(core));
    summary.add_row({tag, std::to_string(st.retweets), std::to_string(st.self_retweets),
                     std::to_string(st.unlabelled_endpoint), std::to_string(st.accepted),
                     std::to_string(net.node_count()), std::to_string(net.edge_count()), std::to_string(cfg_.kcore),
                     std::to_string(core.node_count()), std::to_string(core.edge_count())});
  }
  put("network_stats.csv", summary.str());
}

void Pipeline::homophily() {
  validate(cfg_, Stage::Homophily);
  std::vector<std::pair<std::string, RetweetNetwork>> nets;
  if (!cfg_.edges.empty()) {
    nets.emplace_back("input", parse_edge_list_csv(io::read_file(cfg_.edges), "homophily", cfg_.edges));
  } else {
    for (const auto& [tag, lang] : kLanguages) {
      const std::string name = fmt::format("edges_{}.csv", tag);
      nets.emplace_back(tag, parse_edge_list_csv(upstream(name, Stage::Network), "homophily", name));
    }
  }
  std::map<std::string, HomophilyReport> reports;
  for (const auto& [tag, net] : nets) {
    auto report = network_homophily(net, cfg_.threads);
    put(fmt::format("node_homophily_{}.csv", tag), node_homophily_csv(net, report));
    reports.emplace(tag, std::move(report));
  }
  put("homophily.csv", homophily_csv(reports));

  if (cfg_.svg) {
    std::vector<std::string> cats;
    for (auto f : kBasicFoundations) cats.emplace_back(to_string(f));
    std::vector<svg::BarSeries> series;
    for (const auto& [tag, report] : reports) {
      svg::BarSeries s{tag, {}};
      for (const auto& fh : report.by_foundation) s.values.push_back(fh.score.value_or(0.0));
      series.push_back(std::move(s));
    }
    put("homophily.svg", svg::bar_chart("Homophily by moral foundation", cats, series, "H"));
  }
}

void Pipeline::statistics() {
  const auto scored = parse_scored_jsonl(upstream("scored.jsonl", Stage::Score), "stats", "scored.jsonl");
  const auto valenced = parse_valence_jsonl(upstream("valence.jsonl", Stage::Valence), "stats", "valence.jsonl");
  std::unordered_map<std::string_view, double> valence_of;
  for (const auto& v : valenced) valence_of.emplace(v.id, v.valence.score);

  io::CsvWriter out({"measure", "foundation", "n_en", "n_ja", "H", "df", "p", "status"});
  auto emit = [&](const char* measure, Foundation f, const std::vector<double>& en, const std::vector<double>& ja) {
    io::CsvRow row{measure, std::string(to_string(f)), std::to_string(en.size()), std::to_string(ja.size())};
    if (en.empty() || ja.empty() || en.size() + ja.size() < 3) {
      row.insert(row.end(), {"NA", "NA", "NA", "no_data"});
    } else {
      const std::vector<std::vector<double>> groups{en, ja};
      const auto r = stats::kruskal_wallis(groups);
      row.insert(row.end(), {io::format_double(r.statistic), std::to_string(r.degrees_of_freedom),
                             io::format_double(r.p_value), "ok"});
    }
    out.add_row(std::move(row));
  };

  for (std::size_t j = 0; j < kNumBasic; ++j) {
    std::vector<double> en, ja;
    for (const auto& t : scored)
      (t.tweet.lang == Language::English ? en : ja).push_back(t.loading.value(j));
    emit("loading", kBasicFoundations[j], en, ja);
  }
  for (std::size_t j = 0; j < kNumBasic; ++j) {
    std::vector<double> en, ja;
    for (const auto& t : scored) {
      if (!t.labels.contains(kBasicFoundations[j])) continue;
      const auto it = valence_of.find(t.tweet.id);
      if (it == valence_of.end()) continue;
      (t.tweet.lang == Language::English ? en : ja).push_back(it->second);
    }
    emit("valence", kBasicFoundations[j], en, ja);
  }
  put("kruskal_wallis.csv", out.str());
}

void Pipeline::pca() {
  std::vector<MoralScoredTweet> scored;
  if (cfg_.pca_input == PcaInput::Tweet)
    scored = parse_scored_jsonl(upstream("scored.jsonl", Stage::Score), "pca", "scored.jsonl");

  io::CsvWriter status({"lang", "input", "mode", "n_samples", "status", "detail"});
  for (const auto& [tag, lang] : kLanguages) {
    std::vector<std::string> names;
    std::vector<stats::Sample> samples;
    if (cfg_.pca_input == PcaInput::Tweet) {
      samples = samples_of(scored, lang, names);
    } else {
      const std::string name = fmt::format("profiles_{}.csv", tag);
      for (const auto& [id, p] : parse_profiles_csv(upstream(name, Stage::Profiles), "pca", name)) {
        if (!p.label) continue;
        samples.push_back(p.proportions());
        names.push_back(id);
      }
    }
    io::CsvRow row{tag, std::string(to_string(cfg_.pca_input)), std::string(to_string(cfg_.pca_mode)),
                   std::to_string(samples.size())};

    stats::PcaResult r;
    try {
      r = stats::pca(samples, cfg_.pca_mode);
    } catch (const std::invalid_argument& e) {
      row.insert(row.end(), {"no_data", e.what()});
      status.add_row(std::move(row));
      continue;
    } catch (const std::domain_error& e) {
      row.insert(row.end(), {"no_data", e.what()});
      status.add_row(std::move(row));
      continue;
    }
    row.insert(row.end(), {"ok", ""});
    status.add_row(std::move(row));

    put(fmt::format("pca_scree_{}.csv", tag), stats::scree_csv(r));
    put(fmt::format("pca_heatmap_{}.csv", tag), stats::heatmap_csv(r));

    io::CsvRow header{"component", "eigenvalue"};
    for (auto f : kBasicFoundations) header.emplace_back(to_string(f));
    io::CsvWriter comps(header);
    for (std::size_t k = 0; k < kNumBasic; ++k) {
      io::CsvRow c{fmt::format("PC{}", k + 1), io::format_double(r.eigenvalues[k])};
      for (double v : r.components[k]) c.push_back(io::format_double(v));
      comps.add_row(std::move(c));
    }
    put(fmt::format("pca_components_{}.csv", tag), comps.str());

    for (const auto& axes : kBiplotAxes)
      put(fmt::format("pca_biplot_{}_pc{}_pc{}.csv", tag, axes.first, axes.second),
          stats::emit_biplot_data(r, axes, names));

    if (cfg_.svg) {
      std::vector<std::string> cats;
      svg::BarSeries s{"explained variance", {}};
      for (std::size_t k = 0; k < kNumBasic; ++k) {
        cats.push_back(fmt::format("PC{}", k + 1));
        s.values.push_back(r.explained_variance_ratios[k]);
      }
      put(fmt::format("pca_scree_{}.svg", tag),
          svg::bar_chart(fmt::format("Scree ({})", tag), cats, {s}, "explained variance ratio"));
      std::vector<std::pair<double, double>> points;
      for (const auto& sc : r.scores) points.emplace_back(sc[0], sc[1]);
      std::vector<svg::Arrow> arrows;
      for (std::size_t j = 0; j < kNumBasic; ++j)
        arrows.push_back({std::string(to_string(kBasicFoundations[j])), r.components[0][j], r.components[1][j]});
      put(fmt::format("pca_biplot_{}_pc1_pc2.svg", tag),
          svg::scatter(fmt::format("Biplot ({})", tag), "PC1", "PC2", points, arrows));
    }
  }
  put("pca_status.csv", status.str());
}

nlohmann::json Pipeline::manifest() const {
  nlohmann::json inputs = nlohmann::json::array();
  auto input = [&](const char* role, const std::string& path) {
    if (path.empty()) return;
    inputs.push_back({{"role", role},
                      {"file", fs::path(path).filename().string()},
                      {"sha256", sha256_hex(io::read_file(path))}});
  };
  for (const auto& c : cfg_.corpus) input("corpus", c);
  input("dict_en", cfg_.dict_en);
  input("dict_ja", cfg_.dict_ja);
  input("category_table", cfg_.category_table);
  input("valence_en", cfg_.valence_en);
  input("valence_ja", cfg_.valence_ja);
  input("stopwords", cfg_.stopwords);
  input("keywords", cfg_.keywords);
  input("edges", cfg_.edges);

  nlohmann::json outputs = nlohmann::json::array();
  for (const auto& [name, contents] : files_) outputs.push_back({{"file", name}, {"sha256", sha256_hex(contents)}});

  nlohmann::json stages = nlohmann::json::array();
  for (auto s : ran_) stages.push_back(std::string(to_string(s)));

  return {{"config_hash", config_hash(cfg_)},
          {"config",
           {{"counting", std::string(to_string(cfg_.counting))},
            {"multilabel", std::string(to_string(cfg_.multilabel))},
            {"pca_mode", std::string(to_string(cfg_.pca_mode))},
            {"pca_input", std::string(to_string(cfg_.pca_input))},
            {"kcore", cfg_.kcore},
            {"dict_en_format", cfg_.dict_en_format == DictionaryFormat::Liwc ? "liwc" : "two_column"},
            {"dict_ja_format", cfg_.dict_ja_format == DictionaryFormat::Liwc ? "liwc" : "two_column"},
            {"svg", cfg_.svg}}},
          {"inputs", inputs},
          {"stages", stages},
          {"outputs", outputs}};
}

void Pipeline::commit(bool with_manifest) {
  std::map<std::string, std::string> all = files_;
  if (with_manifest) all["manifest.json"] = manifest().dump(2) + "\n";

  const fs::path out(cfg_.out_dir);
  fs::create_directories(out);
  const fs::path staging = out / ".staging";
  fs::remove_all(staging);
  try {
    fs::create_directories(staging);
    for (const auto& [name, contents] : all) io::write_file(staging / name, contents);
  } catch (...) {
    fs::remove_all(staging);
    throw;
  }

  std::vector<std::string> prefixes;
  for (auto s : ran_) {
    auto p = owned_prefixes(s);
    prefixes.insert(prefixes.end(), p.begin(), p.end());
  }
  if (with_manifest) prefixes.emplace_back("manifest.json");
  for (const auto& entry : fs::directory_iterator(out)) {
    if (!entry.is_regular_file()) continue;
    const std::string name = entry.path().filename().string();
    if (all.contains(name)) continue;
    if (std::any_of(prefixes.begin(), prefixes.end(), [&](const auto& p) { return name.starts_with(p); }))
      fs::remove(entry.path());
  }
  for (const auto& [name, contents] : all) fs::rename(staging / name, out / name);
  fs::remove_all(staging);
}

void run_report(const PipelineConfig& cfg) {
  for (auto s : kAllStages) validate(cfg, s);
  Pipeline p(cfg, false);
  for (auto s : kAllStages) p.run(s);
  p.commit(true);
}

void run_stage(const PipelineConfig& cfg, Stage stage) {
  validate(cfg, stage);
  Pipeline p(cfg, true);
  p.run(stage);
  p.commit(false);
}

void fill_synthetic_vocabulary(const PipelineConfig& cfg, SyntheticSpec& spec) {
  const auto names = load_names(cfg);
  const bool ja = spec.lang == Language::Japanese;
  const std::string& dict = ja ? cfg.dict_ja : cfg.dict_en;
  require_file(dict, ja ? "dict_ja" : "dict_en");
  optional_file(cfg.stopwords, "stopwords");
  const auto lex = load_lexicon(cfg, spec.lang, names ? &*names : nullptr);
  const auto stopwords = load_stopword_file(cfg);
  spec.term_pools = term_pools_from_lexicon(lex, stopwords);
  spec.filler_words = usable_filler_words(default_filler_words(spec.lang), lex, stopwords);
}

SyntheticCorpus run_synth(const PipelineConfig& cfg, SynthRequest req) {
  fill_synthetic_vocabulary(cfg, req.spec);
  SyntheticCorpus corpus;
  try {
    corpus = generate_synthetic(req.spec, cfg.seed);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  for (const auto* path : {&req.corpus_out, &req.truth_out}) {
    const auto parent = fs::path(*path).parent_path();
    if (!parent.empty()) fs::create_directories(parent);
  }
  io::write_file(req.corpus_out, to_jsonl(corpus.records));
  io::write_file(req.truth_out, corpus.truth_json().dump(1) + "\n");
  return corpus;
}

}  // namespace moralnet
