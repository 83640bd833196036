// moralnet: command-line front end for the moral-foundation analysis pipeline.

#include <CLI11.hpp>
#include <fmt/format.h>

#include <array>
#include <iostream>
#include <map>

#include "moralnet/error.hpp"
#include "moralnet/pipeline.hpp"

namespace {

using namespace moralnet;

template <typename T, typename Parse>
T parse_or_throw(const std::string& value, const char* key, Parse parse) {
  if (auto v = parse(value)) return *v;
  throw ConfigError(fmt::format("invalid {}: '{}'", key, value));
}

struct RawOptions {
  std::string dict_en_format = "liwc";
  std::string dict_ja_format = "liwc";
  std::string multilabel = "each";
  std::string counting = "multiset";
  std::string pca_mode = "covariance";
  std::string pca_input = "tweet";
};

void finish_config(PipelineConfig& cfg, const RawOptions& raw) {
  cfg.dict_en_format = parse_or_throw<DictionaryFormat>(raw.dict_en_format, "dict_en_format", parse_dictionary_format);
  cfg.dict_ja_format = parse_or_throw<DictionaryFormat>(raw.dict_ja_format, "dict_ja_format", parse_dictionary_format);
  cfg.multilabel = parse_or_throw<MultilabelMode>(raw.multilabel, "multilabel", parse_multilabel_mode);
  cfg.counting = parse_or_throw<CountingMode>(raw.counting, "counting", parse_counting_mode);
  cfg.pca_mode = parse_or_throw<stats::PcaMode>(raw.pca_mode, "pca_mode", stats::parse_pca_mode);
  cfg.pca_input = parse_or_throw<PcaInput>(raw.pca_input, "pca_input", parse_pca_input);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Moral-foundation scoring, retweet homophily and statistics for tweet corpora"};
  app.set_config("--config", "", "key = value configuration file");
  app.fallthrough();
  app.require_subcommand(1);

  PipelineConfig cfg;
  RawOptions raw;
  app.add_option("--corpus", cfg.corpus, "Tweet corpus JSONL (repeatable)");
  app.add_option("--dict-en,--dict_en", cfg.dict_en, "English moral dictionary");
  app.add_option("--dict-ja,--dict_ja", cfg.dict_ja, "Japanese moral dictionary");
  app.add_option("--dict-en-format,--dict_en_format", raw.dict_en_format, "liwc | two_column")
      ->capture_default_str();
  app.add_option("--dict-ja-format,--dict_ja_format", raw.dict_ja_format, "liwc | two_column")
      ->capture_default_str();
  app.add_option("--category-table,--category_table", cfg.category_table,
                 "Dictionary header name to foundation/polarity mapping");
  app.add_option("--valence-en,--valence_en", cfg.valence_en, "English valence lexicon TSV");
  app.add_option("--valence-ja,--valence_ja", cfg.valence_ja, "Japanese polarity lexicon TSV");
  app.add_option("--stopwords", cfg.stopwords, "English stopword list");
  app.add_option("--keywords", cfg.keywords, "Keep only records containing one of these keywords");
  app.add_option("--edges", cfg.edges, "Edge list CSV for `homophily` instead of the network stage output");
  app.add_option("--multilabel", raw.multilabel, "each | drop")->capture_default_str();
  app.add_option("--counting", raw.counting, "multiset | set")->capture_default_str();
  app.add_option("--pca-mode,--pca_mode", raw.pca_mode, "covariance | correlation")->capture_default_str();
  app.add_option("--pca-input,--pca_input", raw.pca_input, "tweet | user")->capture_default_str();
  app.add_option("--kcore", cfg.kcore, "k for the exported k-core")->capture_default_str();
  app.add_option("--out", cfg.out_dir, "Output directory")->capture_default_str();
  app.add_option("--seed", cfg.seed, "Random seed (synthesis only)")->capture_default_str();
  app.add_option("--threads", cfg.threads, "Worker threads, 0 for all cores")->capture_default_str();
  app.add_flag("--svg", cfg.svg, "Also render SVG charts");

  const std::map<std::string, Stage> stage_commands = {
      {"score", Stage::Score},         {"valence", Stage::Valence}, {"profiles", Stage::Profiles},
      {"network", Stage::Network},     {"homophily", Stage::Homophily}, {"stats", Stage::Stats},
      {"pca", Stage::Pca}};
  const std::map<std::string, std::string> descriptions = {
      {"score", "Moral loadings and labels per tweet"},
      {"valence", "Valence of moral tweets"},
      {"profiles", "Per-user moral profiles and labels"},
      {"network", "Retweet networks, edge lists and GEXF"},
      {"homophily", "Per-foundation homophily scores"},
      {"stats", "Kruskal-Wallis tests between languages"},
      {"pca", "PCA of moral loadings"}};
  std::map<std::string, CLI::App*> subs;
  for (const auto& [name, stage] : stage_commands) subs[name] = app.add_subcommand(name, descriptions.at(name));
  auto* report = app.add_subcommand("report", "Run every stage and write a manifest");

  auto* synth = app.add_subcommand("synth", "Generate a synthetic corpus with planted homophily");
  SyntheticSpec spec;
  std::string synth_lang = "en";
  std::vector<double> weights(spec.label_weights.begin(), spec.label_weights.end());
  std::string corpus_out, truth_out;
  synth->add_option("--users", spec.n_users, "Number of users")->capture_default_str();
  synth->add_option("--lang", synth_lang, "en | ja")->capture_default_str();
  synth->add_option("--min-tweets", spec.min_tweets_per_user)->capture_default_str();
  synth->add_option("--max-tweets", spec.max_tweets_per_user)->capture_default_str();
  synth->add_option("--label-weights", weights, "Five weights, Care..Purity")->expected(5);
  synth->add_option("--max-terms", spec.max_terms_per_tweet)->capture_default_str();
  synth->add_option("--off-label-rate", spec.off_label_tweet_rate)->capture_default_str();
  synth->add_option("--planted-fraction", spec.planted_fraction, "Same-label share of retweet weight")
      ->capture_default_str();
  synth->add_option("--cycles", spec.retweet_cycles, "Retweet cycles per user")->capture_default_str();
  synth->add_option("--corpus-out", corpus_out, "Corpus JSONL path (default <out>/synthetic_<lang>.jsonl)");
  synth->add_option("--truth-out", truth_out, "Truth JSON path (default <out>/synthetic_<lang>_truth.json)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n\n" << app.help();
    return 2;
  }

  try {
    finish_config(cfg, raw);
    if (report->parsed()) {
      run_report(cfg);
    } else if (synth->parsed()) {
      spec.lang = parse_language(synth_lang);
      if (spec.lang == Language::Unknown) throw ConfigError("invalid lang: " + synth_lang);
      std::copy(weights.begin(), weights.end(), spec.label_weights.begin());
      SynthRequest req{spec, corpus_out, truth_out};
      if (req.corpus_out.empty()) req.corpus_out = fmt::format("{}/synthetic_{}.jsonl", cfg.out_dir, synth_lang);
      if (req.truth_out.empty()) req.truth_out = fmt::format("{}/synthetic_{}_truth.json", cfg.out_dir, synth_lang);
      const auto corpus = run_synth(cfg, std::move(req));
      std::cerr << fmt::format("wrote {} records for {} users (same-label fraction {})\n", corpus.records.size(),
                               corpus.users.size(), corpus.realized_fraction);
    } else {
      for (const auto& [name, stage] : stage_commands)
        if (subs[name]->parsed()) run_stage(cfg, stage);
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const DataError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
