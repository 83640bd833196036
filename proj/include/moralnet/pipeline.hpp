#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "moralnet/lexicon.hpp"
#include "moralnet/profiles.hpp"
#include "moralnet/scoring.hpp"
#include "moralnet/stats.hpp"
#include "moralnet/synth.hpp"
#include "moralnet/text.hpp"

namespace moralnet {

enum class PcaInput { Tweet, User };
std::string_view to_string(PcaInput p);
std::optional<PcaInput> parse_pca_input(std::string_view s);

struct PipelineConfig {
  std::vector<std::string> corpus;  // JSONL files, any language mix
  std::string dict_en;
  std::string dict_ja;
  DictionaryFormat dict_en_format = DictionaryFormat::Liwc;
  DictionaryFormat dict_ja_format = DictionaryFormat::Liwc;
  std::string category_table;  // optional header-name mapping
  std::string valence_en;
  std::string valence_ja;
  std::string stopwords;
  std::string keywords;  // optional, one per line; records without one are dropped
  std::string edges;     // optional edge list for the homophily stage
  MultilabelMode multilabel = MultilabelMode::Each;
  CountingMode counting = CountingMode::Multiset;
  stats::PcaMode pca_mode = stats::PcaMode::Covariance;
  PcaInput pca_input = PcaInput::Tweet;
  std::size_t kcore = 2;
  std::string out_dir = "moralnet_out";
  std::uint64_t seed = 0;  // only synthesis draws random numbers
  int threads = 0;         // 0: all cores
  bool svg = false;
};

enum class Stage { Score, Valence, Profiles, Network, Homophily, Stats, Pca };
inline constexpr Stage kAllStages[] = {Stage::Score,     Stage::Valence, Stage::Profiles, Stage::Network,
                                       Stage::Homophily, Stage::Stats,   Stage::Pca};
std::string_view to_string(Stage s);

/// Throws ConfigError when an input the stage needs is unset or missing.
void validate(const PipelineConfig& cfg, Stage stage);

/// Semantic config plus the contents of every input file. Seed, thread count
/// and output directory do not enter the hash.
std::string config_hash(const PipelineConfig& cfg);

/// Runs stages against an in-memory bundle and writes it out in one step.
class Pipeline {
 public:
  /// With `read_upstream`, artifacts not produced in this run are read from
  /// the output directory.
  Pipeline(PipelineConfig cfg, bool read_upstream);

  /// Errors other than ConfigError and DataError are rethrown as DataError
  /// tagged with the stage name.
  void run(Stage stage);

  /// Replaces earlier outputs of the stages that ran. Files are written to a
  /// staging directory first, so a failure leaves the old bundle in place.
  void commit(bool with_manifest);

  const std::map<std::string, std::string>& files() const { return files_; }
  nlohmann::json manifest() const;

 private:
  const std::string& upstream(const std::string& name, Stage producer);
  void put(std::string name, std::string contents);
  const std::vector<TweetRecord>& records(Stage stage);

  void score();
  void valence();
  void profiles();
  void network();
  void homophily();
  void statistics();
  void pca();

  PipelineConfig cfg_;
  bool read_upstream_;
  std::vector<Stage> ran_;
  std::map<std::string, std::string> files_;
  std::map<std::string, std::string> loaded_;
  std::optional<std::vector<TweetRecord>> records_;
};

/// The whole analysis: every stage, then commit with a manifest.
void run_report(const PipelineConfig& cfg);

/// A single stage reading earlier outputs from cfg.out_dir.
void run_stage(const PipelineConfig& cfg, Stage stage);

struct SynthRequest {
  SyntheticSpec spec;  // term pools and filler words are filled from the dictionary
  std::string corpus_out;
  std::string truth_out;
};

/// Builds term pools from the configured dictionary for spec.lang, generates a
/// corpus with cfg.seed and writes the JSONL corpus and truth sidecar.
SyntheticCorpus run_synth(const PipelineConfig& cfg, SynthRequest req);

/// Pools and filler words for a synthetic spec, from the configured dictionary.
void fill_synthetic_vocabulary(const PipelineConfig& cfg, SyntheticSpec& spec);

}  // namespace moralnet
