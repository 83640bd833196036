// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// nonzero when any criterion fails.

#include <fmt/format.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "helpers.hpp"
#include "moralnet/graph.hpp"
#include "moralnet/io.hpp"
#include "moralnet/lexicon.hpp"
#include "moralnet/pipeline.hpp"
#include "moralnet/profiles.hpp"
#include "moralnet/scoring.hpp"
#include "moralnet/stats.hpp"
#include "moralnet/synth.hpp"

using namespace moralnet;
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
  bool pass;
  std::string detail;
};

// 1. Trie-based loading vs a brute-force scan over every term.
Outcome loading_oracle() {
  const auto t0 = Clock::now();
  std::mt19937_64 rng(101);
  const std::string alphabet = "abcdef";
  auto word = [&](std::size_t lo, std::size_t hi) {
    std::string w;
    for (std::size_t i = 0, n = lo + rng() % (hi - lo + 1); i < n; ++i) w += alphabet[rng() % alphabet.size()];
    return w;
  };
  std::vector<MoralTerm> terms;
  std::set<std::pair<std::string, bool>> seen;
  while (terms.size() < 200) {
    MoralTerm t{word(1, 5), rng() % 3 == 0, {}};
    std::set<Category> cats;
    for (std::size_t i = 0, n = 1 + rng() % 3; i < n; ++i)
      cats.insert({static_cast<Foundation>(rng() % 6), rng() % 2 ? Polarity::Virtue : Polarity::Vice});
    t.categories.assign(cats.begin(), cats.end());
    if (seen.emplace(t.surface, t.is_stem).second) terms.push_back(std::move(t));
  }
  const MoralLexicon lex(terms, MatchMode::TokenPrefix, "en");

  std::size_t mismatches = 0, nonzero = 0;
  for (int s = 0; s < 1000; ++s) {
    CleanText clean;
    clean.lang = Language::English;
    for (std::size_t i = 0, n = rng() % 30; i < n; ++i) clean.tokens.push_back(word(1, 7));
    const auto got = moral_loading(clean, lex);

    std::array<std::uint32_t, kNumBasic> counts{};
    std::uint32_t matched = 0;
    for (const auto& tok : clean.tokens) {
      const MoralTerm* best = nullptr;
      for (const auto& t : terms) {
        const bool hit = t.is_stem ? tok.starts_with(t.surface) : tok == t.surface;
        if (!hit) continue;
        if (!best || t.surface.size() > best->surface.size() ||
            (t.surface.size() == best->surface.size() && best->is_stem && !t.is_stem))
          best = &t;
      }
      if (!best) continue;
      std::set<Foundation> fs;
      for (const auto& c : best->categories)
        if (c.foundation != Foundation::GeneralMorality) fs.insert(c.foundation);
      if (fs.empty()) continue;
      ++matched;
      for (auto f : fs) ++counts[static_cast<std::size_t>(f)];
    }
    if (matched) ++nonzero;
    if (got.counts != counts || got.matched != matched) ++mismatches;
  }
  const double secs = seconds_since(t0);
  return {mismatches == 0 && nonzero > 100 && secs < 5.0,
          fmt::format("{} mismatches, {} sequences with matches, {:.2f}s", mismatches, nonzero, secs)};
}

// 2. Homophily vs naive enumeration over the edge list.
Outcome homophily_oracle() {
  std::mt19937_64 rng(202);
  double worst = 0.0;
  std::size_t failures = 0;
  for (int g = 0; g < 500; ++g) {
    const std::size_t n = 2 + rng() % 19;
    std::vector<std::optional<Foundation>> labels(n);
    for (auto& l : labels)
      if (rng() % 6) l = kBasicFoundations[rng() % kNumBasic];
    std::map<std::pair<std::size_t, std::size_t>, std::uint64_t> w;
    RetweetNetwork::Builder b;
    auto name = [](std::size_t i) { return fmt::format("n{:02}", i); };
    for (std::size_t i = 0; i < n; ++i) b.add_node(name(i), labels[i]);
    for (std::size_t e = 0, m = rng() % (2 * n); e < m; ++e) {
      std::size_t u = rng() % n, v = rng() % n;
      if (u == v) continue;
      const std::uint64_t x = 1 + rng() % 5;
      b.add_interaction(name(u), name(v), x);
      w[{std::min(u, v), std::max(u, v)}] += x;
    }
    const auto net = b.build();
    const auto report = network_homophily(net);

    std::array<double, kNumBasic> sum{};
    std::array<std::size_t, kNumBasic> cnt{};
    for (std::size_t i = 0; i < n; ++i) {
      double same = 0, total = 0;
      for (const auto& [e, x] : w) {
        if (e.first != i && e.second != i) continue;
        const auto other = e.first == i ? e.second : e.first;
        total += x;
        if (labels[i] && labels[other] == labels[i]) same += x;
      }
      const auto idx = net.find(name(i));
      const auto h = node_homophily(net, *idx);
      if (!labels[i] || total == 0) {
        if (h) ++failures;
        continue;
      }
      if (!h) {
        ++failures;
        continue;
      }
      worst = std::max(worst, std::abs(*h - same / total));
      sum[static_cast<std::size_t>(*labels[i])] += same / total;
      ++cnt[static_cast<std::size_t>(*labels[i])];
    }
    for (std::size_t j = 0; j < kNumBasic; ++j) {
      const auto& fh = report.by_foundation[j];
      if (fh.n_nodes != cnt[j] || fh.score.has_value() != (cnt[j] > 0)) {
        ++failures;
        continue;
      }
      if (cnt[j]) worst = std::max(worst, std::abs(*fh.score - sum[j] / cnt[j]));
    }
  }
  return {failures == 0 && worst <= 1e-12, fmt::format("{} structural mismatches, max error {:.3g}", failures, worst)};
}

PipelineConfig base_config(const fs::path& out) {
  PipelineConfig cfg;
  cfg.dict_en = testing::source_path("data/mfd_en_sample.dic");
  cfg.dict_ja = testing::source_path("data/mfd_ja_sample.dic");
  cfg.valence_en = testing::source_path("data/valence_en.tsv");
  cfg.valence_ja = testing::source_path("data/polar_ja.tsv");
  cfg.stopwords = testing::source_path("data/stopwords_en.txt");
  cfg.out_dir = out.string();
  return cfg;
}

// lang,foundation,n_nodes,H,status
std::map<std::string, std::pair<std::size_t, std::optional<double>>> homophily_rows(const std::string& csv,
                                                                                   const std::string& lang) {
  std::map<std::string, std::pair<std::size_t, std::optional<double>>> out;
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  while (std::getline(in, line)) {
    std::vector<std::string> f;
    std::stringstream ss(line);
    for (std::string x; std::getline(ss, x, ',');) f.push_back(x);
    if (f.size() != 5 || f[0] != lang) continue;
    out[f[1]] = {std::stoul(f[2]), f[3] == "NA" ? std::nullopt : std::optional<double>(std::stod(f[3]))};
  }
  return out;
}

// 3. Planted fractions recovered through score, profiles, network and homophily.
Outcome planted_recovery() {
  testing::TempDir tmp("accept_planted");
  std::vector<std::string> parts;
  bool ok = true;
  double total_secs = 0;
  for (double p : {0.0, 0.3, 0.7, 1.0}) {
    auto cfg = base_config(tmp.path() / "out");
    cfg.seed = 7;
    SynthRequest req;
    req.spec.n_users = 10000;
    req.spec.planted_fraction = p;
    req.corpus_out = tmp.file(fmt::format("planted_{}.jsonl", p));
    req.truth_out = tmp.file(fmt::format("planted_{}.json", p));
    run_synth(cfg, req);

    const auto t0 = Clock::now();
    cfg.corpus = {req.corpus_out};
    Pipeline pipe(cfg, false);
    for (auto s : {Stage::Score, Stage::Profiles, Stage::Network, Stage::Homophily}) pipe.run(s);
    total_secs += seconds_since(t0);

    const auto rows = homophily_rows(pipe.files().at("homophily.csv"), "en");
    std::size_t nodes = 0;
    double worst = 0;
    for (const auto& [name, row] : rows) {
      if (!row.second) continue;
      nodes += row.first;
      const double err = std::abs(*row.second - p);
      worst = std::max(worst, err);
      if ((p == 0.0 || p == 1.0) ? *row.second != p : err > 0.02) ok = false;
    }
    if (nodes != 10000) ok = false;
    parts.push_back(fmt::format("p={} nodes={} max|H-p|={:.3g}", p, nodes, worst));
  }
  ok = ok && total_secs < 30.0;
  return {ok, fmt::format("{}; {:.2f}s", fmt::join(parts, ", "), total_secs)};
}

// 4. Kruskal-Wallis against the textbook case and a frozen reference.
Outcome kruskal_wallis_check() {
  const std::vector<std::vector<double>> g{{1, 2, 3}, {4, 5, 6}};
  const double h = stats::kruskal_wallis(g).statistic;
  bool ok = std::abs(h - 3.857) <= 1e-3;

  const auto ref = nlohmann::json::parse(io::read_file(testing::source_path("tests/data/kw_reference.json")));
  double worst_h = 0, worst_p = 0;
  std::size_t cases = 0;
  for (const auto& c : ref.at("cases")) {
    const auto groups = c.at("groups").get<std::vector<std::vector<double>>>();
    const auto r = stats::kruskal_wallis(groups);
    worst_h = std::max(worst_h, std::abs(r.statistic - c.at("H").get<double>()));
    worst_p = std::max(worst_p, std::abs(r.p_value - c.at("p").get<double>()));
    ++cases;
  }
  ok = ok && cases == 200 && worst_h <= 1e-9 && worst_p <= 1e-9;

  bool monotone = true;
  double prev = 1.0;
  for (double x = 0.0; x <= 60.0; x += 0.05) {
    const double p = stats::chi_square_sf(x, 1.0);
    if (p > prev) monotone = false;
    prev = p;
  }
  for (std::size_t i = 0; i + 1 < std::size(ref.at("cases")); ++i) {
    // Same degrees of freedom: larger H must not give a larger p.
    const auto& a = ref.at("cases")[i];
    for (std::size_t k = i + 1; k < ref.at("cases").size(); ++k) {
      const auto& b = ref.at("cases")[k];
      if (a.at("groups").size() != b.at("groups").size()) continue;
      const auto ra = stats::kruskal_wallis(a.at("groups").get<std::vector<std::vector<double>>>());
      const auto rb = stats::kruskal_wallis(b.at("groups").get<std::vector<std::vector<double>>>());
      if (ra.statistic < rb.statistic && ra.p_value < rb.p_value) monotone = false;
    }
  }
  ok = ok && monotone;
  return {ok, fmt::format("H={:.6f}, {} reference cases, max |dH|={:.3g}, max |dp|={:.3g}, monotone={}", h, cases,
                          worst_h, worst_p, monotone)};
}

// 5. PCA invariants.
Outcome pca_check() {
  std::mt19937_64 rng(505);
  std::normal_distribution<double> normal;
  std::gamma_distribution<double> gamma(1.0);
  double worst_sum = 0, worst_rec = 0, worst_simplex = 0;
  for (int round = 0; round < 50; ++round) {
    for (auto mode : {stats::PcaMode::Covariance, stats::PcaMode::Correlation}) {
      std::vector<stats::Sample> xs(20 + rng() % 200);
      for (auto& x : xs)
        for (std::size_t j = 0; j < kNumBasic; ++j) x[j] = normal(rng) * (1.0 + j) + (j == 2 ? x[0] : 0.0);
      const auto r = stats::pca(xs, mode);
      double s = 0;
      for (double v : r.explained_variance_ratios) s += v;
      worst_sum = std::max(worst_sum, std::abs(s - 1.0));
      for (std::size_t i = 0; i < xs.size(); ++i)
        for (std::size_t j = 0; j < kNumBasic; ++j) {
          double back = 0;
          for (std::size_t k = 0; k < kNumBasic; ++k) back += r.scores[i][k] * r.components[k][j];
          back = r.means[j] + r.scales[j] * back;
          worst_rec = std::max(worst_rec, std::abs(back - xs[i][j]));
        }
    }
    std::vector<stats::Sample> simplex(20 + rng() % 200);
    for (auto& x : simplex) {
      double t = 0;
      for (auto& v : x) t += v = gamma(rng);
      for (auto& v : x) v /= t;
    }
    const auto r = stats::pca(simplex);
    worst_simplex = std::max(worst_simplex, std::abs(r.eigenvalues[kNumBasic - 1]));
  }
  return {worst_sum <= 1e-9 && worst_rec <= 1e-9 && worst_simplex <= 1e-9,
          fmt::format("max |sum-1|={:.3g}, max reconstruction error={:.3g}, max smallest eigenvalue={:.3g}",
                      worst_sum, worst_rec, worst_simplex)};
}

// 6. User filtering over random multi-label tweet streams.
Outcome filtering_property() {
  std::mt19937_64 rng(606);
  std::size_t retained = 0, excluded = 0, violations = 0;
  for (int round = 0; round < 200; ++round) {
    std::vector<MoralScoredTweet> tweets;
    std::map<std::string, std::pair<std::size_t, std::array<std::size_t, kNumBasic>>> naive;
    const std::size_t users = 1 + rng() % 15;
    for (std::size_t i = 0, n = rng() % 60; i < n; ++i) {
      MoralScoredTweet t;
      t.tweet.id = fmt::format("t{:04}", i);
      t.tweet.user_id = fmt::format("u{}", rng() % users);
      t.tweet.lang = Language::English;
      for (std::size_t m = 0, k = 1 + rng() % 4; m < k; ++m) accumulate(t.loading, MoralTerm{"x", false, {{kBasicFoundations[rng() % kNumBasic], Polarity::Virtue}}});
      t.labels = *label_tweet(t.loading);
      auto& [count, per] = naive[t.tweet.user_id];
      ++count;
      for (std::size_t j = 0; j < kNumBasic; ++j)
        if (t.labels.contains(kBasicFoundations[j])) ++per[j];
      tweets.push_back(std::move(t));
    }
    const auto profiles = build_profiles(tweets);
    std::set<std::string> kept;
    for (const auto& p : assign_labels(profiles)) {
      kept.insert(p.user_id);
      const auto& [count, per] = naive.at(p.user_id);
      const auto top = std::max_element(per.begin(), per.end());
      const bool unique = std::count(per.begin(), per.end(), *top) == 1;
      if (count < 2 || !unique || !p.label || static_cast<std::size_t>(*p.label) != std::size_t(top - per.begin()))
        ++violations;
      ++retained;
    }
    for (const auto& [user, np] : naive) {
      if (kept.count(user)) continue;
      ++excluded;
      const auto& per = np.second;
      const auto top = *std::max_element(per.begin(), per.end());
      const bool unique = std::count(per.begin(), per.end(), top) == 1;
      if (np.first >= 2 && unique) ++violations;
    }
  }
  return {violations == 0 && retained > 0 && excluded > 0,
          fmt::format("{} retained, {} excluded, {} violations", retained, excluded, violations)};
}

std::map<std::string, std::string> read_dir(const fs::path& dir) {
  std::map<std::string, std::string> out;
  for (const auto& e : fs::directory_iterator(dir))
    if (e.is_regular_file()) out[e.path().filename().string()] = io::read_file(e.path());
  return out;
}

// 7. Byte-identical report bundles.
Outcome determinism() {
  testing::TempDir tmp("accept_determinism");
  std::vector<std::map<std::string, std::string>> bundles;
  int run = 0;
  for (int threads : {1, 1, 1, 4, 8}) {
    auto cfg = base_config(tmp.path() / fmt::format("run{}", run++));
    cfg.corpus = {testing::source_path("tests/data/fixture_corpus.jsonl")};
    cfg.threads = threads;
    cfg.svg = true;
    run_report(cfg);
    bundles.push_back(read_dir(cfg.out_dir));
  }
  const bool same = std::all_of(bundles.begin(), bundles.end(), [&](const auto& b) { return b == bundles[0]; });
  return {same && bundles[0].size() > 20,
          fmt::format("{} files per bundle, 3 runs at 1 thread plus 4 and 8 threads", bundles[0].size())};
}

// 8. Full report over 100k synthetic tweets.
Outcome throughput() {
  testing::TempDir tmp("accept_throughput");
  auto cfg = base_config(tmp.path() / "out");
  cfg.seed = 8;
  SynthRequest req;
  req.spec.n_users = 34000;
  req.spec.planted_fraction = 0.6;
  req.corpus_out = tmp.file("big.jsonl");
  req.truth_out = tmp.file("big_truth.json");
  const auto corpus = run_synth(cfg, req);
  std::size_t originals = 0;
  for (const auto& r : corpus.records) originals += !r.retweet_of_user_id;
  cfg.corpus = {req.corpus_out};
  const auto t0 = Clock::now();
  run_report(cfg);
  const double secs = seconds_since(t0);
  return {originals >= 100000 && secs < 60.0,
          fmt::format("{} tweets plus {} retweets in {:.2f}s", originals, corpus.records.size() - originals, secs)};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"1 loading matches brute-force scan", loading_oracle},
      {"2 homophily matches naive enumeration", homophily_oracle},
      {"3 planted homophily recovered at 10k nodes", planted_recovery},
      {"4 Kruskal-Wallis statistic and p-values", kruskal_wallis_check},
      {"5 PCA ratios, reconstruction, simplex rank", pca_check},
      {"6 user filtering rules", filtering_property},
      {"7 deterministic report bundle", determinism},
      {"8 100k-tweet report under 60s", throughput},
  };
  int failed = 0;
  for (const auto& [name, check] : criteria) {
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    fmt::print("{} [{}] {}\n", o.pass ? "PASS" : "FAIL", name, o.detail);
    std::fflush(stdout);
    failed += !o.pass;
  }
  return failed == 0 ? 0 : 1;
}
