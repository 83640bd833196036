#include "moralnet/stats.hpp"

#include "moralnet/io.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace moralnet::stats {

std::vector<double> mid_ranks(std::span<const double> values) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return values[a] < values[b]; });
  std::vector<double> ranks(values.size());
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i;
    while (j + 1 < order.size() && values[order[j + 1]] == values[order[i]]) ++j;
    const double r = (static_cast<double>(i + 1) + static_cast<double>(j + 1)) / 2.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = r;
    i = j + 1;
  }
  return ranks;
}

KruskalWallisResult kruskal_wallis(std::span<const std::vector<double>> groups) {
  if (groups.size() < 2) throw std::invalid_argument("kruskal_wallis needs at least two groups");
  KruskalWallisResult res;
  std::vector<double> pooled;
  for (const auto& g : groups) {
    if (g.empty()) throw std::invalid_argument("kruskal_wallis group is empty");
    res.group_sizes.push_back(g.size());
    pooled.insert(pooled.end(), g.begin(), g.end());
  }
  const auto n = static_cast<double>(pooled.size());
  if (pooled.size() < 3) throw std::invalid_argument("kruskal_wallis needs N >= 3");
  res.degrees_of_freedom = groups.size() - 1;

  const auto ranks = mid_ranks(pooled);
  double h = 0.0;
  std::size_t offset = 0;
  for (const auto& g : groups) {
    double sum = 0.0;
    for (std::size_t k = 0; k < g.size(); ++k) sum += ranks[offset + k];
    offset += g.size();
    const double mean = sum / static_cast<double>(g.size());
    const double d = mean - (n + 1.0) / 2.0;
    h += static_cast<double>(g.size()) * d * d;
  }
  h *= 12.0 / (n * (n + 1.0));

  std::vector<double> sorted = pooled;
  std::sort(sorted.begin(), sorted.end());
  double ties = 0.0;
  for (std::size_t i = 0; i < sorted.size();) {
    std::size_t j = i;
    while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
    const auto t = static_cast<double>(j - i);
    ties += t * t * t - t;
    i = j;
  }
  const double correction = 1.0 - ties / (n * n * n - n);
  if (correction <= 0.0) {
    res.statistic = 0.0;
    res.p_value = 1.0;
    return res;
  }
  res.statistic = h / correction;
  res.p_value = chi_square_sf(res.statistic, static_cast<double>(res.degrees_of_freedom));
  return res;
}

double gamma_q(double a, double x) {
  if (!(a > 0.0)) throw std::invalid_argument("gamma_q requires a > 0");
  if (x <= 0.0) return 1.0;
  constexpr int kMaxIter = 100000;
  constexpr double kEps = 1e-16;
  const double log_prefactor = -x + a * std::log(x) - std::lgamma(a);
  if (x < a + 1.0) {
    // P(a, x) by its power series; Q = 1 - P.
    double ap = a;
    double term = 1.0 / a;
    double sum = term;
    for (int n = 0; n < kMaxIter; ++n) {
      ap += 1.0;
      term *= x / ap;
      sum += term;
      if (std::fabs(term) < std::fabs(sum) * kEps) break;
    }
    return std::clamp(1.0 - sum * std::exp(log_prefactor), 0.0, 1.0);
  }
  // Q(a, x) by modified Lentz continued fraction.
  constexpr double kTiny = std::numeric_limits<double>::min() / kEps;
  double b = x + 1.0 - a;
  double c = 1.0 / kTiny;
  double d = 1.0 / b;
  double frac = d;
  for (int i = 1; i <= kMaxIter; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = b + an / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double delta = d * c;
    frac *= delta;
    if (std::fabs(delta - 1.0) < kEps) break;
  }
  return std::clamp(std::exp(log_prefactor) * frac, 0.0, 1.0);
}

// ---------------------------------------------------------------------------
// PCA

std::string_view to_string(PcaMode m) { return m == PcaMode::Covariance ? "covariance" : "correlation"; }

std::optional<PcaMode> parse_pca_mode(std::string_view s) {
  if (s == "covariance") return PcaMode::Covariance;
  if (s == "correlation") return PcaMode::Correlation;
  return std::nullopt;
}

SymmetricEigen jacobi_eigen(const Matrix5& symmetric) {
  constexpr std::size_t n = kNumBasic;
  Matrix5 a = symmetric;
  Matrix5 v{};
  for (std::size_t i = 0; i < n; ++i) v[i][i] = 1.0;

  double frob = 0.0;
  for (const auto& row : a)
    for (double x : row) frob += x * x;

  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off += 2.0 * a[p][q] * a[p][q];
    if (off <= 1e-24 * frob || off == 0.0) break;

    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        if (a[p][q] == 0.0) continue;
        const double theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a[k][p];
          const double akq = a[k][q];
          a[k][p] = c * akp - s * akq;
          a[k][q] = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a[p][k];
          const double aqk = a[q][k];
          a[p][k] = c * apk - s * aqk;
          a[q][k] = s * apk + c * aqk;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double vkp = v[k][p];
          const double vkq = v[k][q];
          v[k][p] = c * vkp - s * vkq;
          v[k][q] = s * vkp + c * vkq;
        }
      }
    }
  }

  std::array<std::size_t, n> order{};
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](auto x, auto y) { return a[x][x] > a[y][y]; });
  SymmetricEigen out{};
  for (std::size_t k = 0; k < n; ++k) {
    out.values[k] = a[order[k]][order[k]];
    for (std::size_t j = 0; j < n; ++j) out.vectors[k][j] = v[j][order[k]];
  }
  return out;
}

PcaResult pca(std::span<const Sample> samples, PcaMode mode) {
  constexpr std::size_t d = kNumBasic;
  if (samples.size() < 2) throw std::invalid_argument("pca needs at least two samples");
  const auto n = static_cast<double>(samples.size());

  PcaResult r;
  r.mode = mode;
  for (const auto& s : samples)
    for (std::size_t j = 0; j < d; ++j) r.means[j] += s[j];
  for (auto& m : r.means) m /= n;

  std::vector<Sample> x(samples.begin(), samples.end());
  for (auto& s : x)
    for (std::size_t j = 0; j < d; ++j) s[j] -= r.means[j];

  r.scales.fill(1.0);
  if (mode == PcaMode::Correlation) {
    for (std::size_t j = 0; j < d; ++j) {
      double ss = 0.0;
      for (const auto& s : x) ss += s[j] * s[j];
      const double sd = std::sqrt(ss / (n - 1.0));
      if (sd == 0.0)
        throw std::domain_error(fmt::format("zero variance in dimension {}", to_string(kBasicFoundations[j])));
      r.scales[j] = sd;
    }
    for (auto& s : x)
      for (std::size_t j = 0; j < d; ++j) s[j] /= r.scales[j];
  }

  Matrix5 cov{};
  for (const auto& s : x)
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = i; j < d; ++j) cov[i][j] += s[i] * s[j];
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i; j < d; ++j) cov[j][i] = cov[i][j] = cov[i][j] / (n - 1.0);

  double trace = 0.0;
  for (std::size_t i = 0; i < d; ++i) trace += cov[i][i];
  if (trace <= 0.0) throw std::domain_error("zero total variance");

  const auto eig = jacobi_eigen(cov);
  r.eigenvalues = eig.values;
  r.components = eig.vectors;
  for (auto& comp : r.components) {
    std::size_t big = 0;
    for (std::size_t j = 1; j < d; ++j)
      if (std::fabs(comp[j]) > std::fabs(comp[big])) big = j;
    if (comp[big] < 0)
      for (auto& c : comp) c = -c;
  }
  for (std::size_t k = 0; k < d; ++k) r.explained_variance_ratios[k] = r.eigenvalues[k] / trace;

  r.scores.resize(x.size());
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t k = 0; k < d; ++k) {
      double dot = 0.0;
      for (std::size_t j = 0; j < d; ++j) dot += x[i][j] * r.components[k][j];
      r.scores[i][k] = dot;
    }
  return r;
}

std::string scree_csv(const PcaResult& r) {
  io::CsvWriter w({"component", "eigenvalue", "ratio", "cumulative"});
  double cumulative = 0.0;
  for (std::size_t k = 0; k < kNumBasic; ++k) {
    cumulative += r.explained_variance_ratios[k];
    w.add_row({fmt::format("PC{}", k + 1), io::format_double(r.eigenvalues[k]),
               io::format_double(r.explained_variance_ratios[k]), io::format_double(cumulative)});
  }
  return w.str();
}

std::string heatmap_csv(const PcaResult& r) {
  io::CsvWriter w({"foundation", "PC1", "PC2", "PC3", "PC4", "PC5"});
  for (std::size_t j = 0; j < kNumBasic; ++j) {
    io::CsvRow row{std::string(to_string(kBasicFoundations[j]))};
    for (std::size_t k = 0; k < kNumBasic; ++k) row.push_back(io::format_double(std::fabs(r.components[k][j])));
    w.add_row(std::move(row));
  }
  return w.str();
}

std::string emit_biplot_data(const PcaResult& r, std::pair<std::size_t, std::size_t> axes,
                             std::span<const std::string> sample_names) {
  const auto [a, b] = axes;
  if (a < 1 || a > kNumBasic || b < 1 || b > kNumBasic)
    throw std::invalid_argument(fmt::format("biplot axis out of range: ({}, {})", a, b));
  if (a == b) throw std::invalid_argument("biplot axes must differ");
  if (!sample_names.empty() && sample_names.size() != r.scores.size())
    throw std::invalid_argument("sample_names must match the number of scores");
  io::CsvWriter w({"kind", "name", fmt::format("PC{}", a), fmt::format("PC{}", b)});
  for (std::size_t i = 0; i < r.scores.size(); ++i)
    w.add_row({"score", sample_names.empty() ? std::to_string(i) : sample_names[i],
               io::format_double(r.scores[i][a - 1]), io::format_double(r.scores[i][b - 1])});
  for (std::size_t j = 0; j < kNumBasic; ++j)
    w.add_row({"loading", std::string(to_string(kBasicFoundations[j])),
               io::format_double(r.components[a - 1][j]), io::format_double(r.components[b - 1][j])});
  return w.str();
}

}  // namespace moralnet::stats
