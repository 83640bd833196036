// Serial reference vs OpenMP kernels on a synthetic corpus.
//   bench_kernels --benchmark_filter=Score

#include <benchmark/benchmark.h>

#include <map>
#include <string>

#include "moralnet/graph.hpp"
#include "moralnet/lexicon.hpp"
#include "moralnet/profiles.hpp"
#include "moralnet/scoring.hpp"
#include "moralnet/synth.hpp"

using namespace moralnet;

namespace {

std::string source_path(const std::string& rel) { return std::string(MORALNET_SOURCE_DIR) + "/" + rel; }

struct Fixture {
  MoralLexicon en = load_dictionary(source_path("data/mfd_en_sample.dic"), {});
  StopwordSet stopwords = load_stopwords(source_path("data/stopwords_en.txt"));
  SyntheticCorpus corpus;
  RetweetNetwork net;

  Fixture() {
    SyntheticSpec spec;
    spec.n_users = 20000;
    spec.planted_fraction = 0.6;
    spec.term_pools = term_pools_from_lexicon(en, stopwords);
    spec.filler_words = usable_filler_words(default_filler_words(Language::English), en, stopwords);
    corpus = generate_synthetic(spec, 1);
    const auto scored = score_corpus_serial(corpus.records, {&en, nullptr}, stopwords);
    std::map<std::string, Foundation> labels;
    for (const auto& p : assign_labels(build_profiles(scored.tweets))) labels.emplace(p.user_id, *p.label);
    net = build_network(corpus.records, labels);
  }
};

const Fixture& fixture() {
  static const Fixture f;
  return f;
}

void BM_ScoreSerial(benchmark::State& state) {
  const auto& f = fixture();
  for (auto _ : state) benchmark::DoNotOptimize(score_corpus_serial(f.corpus.records, {&f.en, nullptr}, f.stopwords));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(f.corpus.records.size()));
}

void BM_ScoreParallel(benchmark::State& state) {
  const auto& f = fixture();
  ScoringOptions opts;
  opts.threads = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(score_corpus(f.corpus.records, {&f.en, nullptr}, f.stopwords, opts));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(f.corpus.records.size()));
}

void BM_HomophilySerial(benchmark::State& state) {
  const auto& f = fixture();
  for (auto _ : state) benchmark::DoNotOptimize(network_homophily_serial(f.net));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(f.net.node_count()));
}

void BM_HomophilyParallel(benchmark::State& state) {
  const auto& f = fixture();
  for (auto _ : state) benchmark::DoNotOptimize(network_homophily(f.net, static_cast<int>(state.range(0))));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(f.net.node_count()));
}

}  // namespace

BENCHMARK(BM_ScoreSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ScoreParallel)->Arg(1)->Arg(2)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_HomophilySerial)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_HomophilyParallel)->Arg(1)->Arg(2)->Arg(4)->Arg(8)->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
