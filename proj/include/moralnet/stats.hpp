#pragma once

#include "moralnet/foundation.hpp"

#include <array>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace moralnet::stats {

// Kruskal-Wallis ---------------------------------------------------------------

struct KruskalWallisResult {
  double statistic = 0.0;  // tie-corrected H
  std::size_t degrees_of_freedom = 0;
  double p_value = 1.0;
  std::vector<std::size_t> group_sizes;
};

/// Average ranks (1-based) with ties sharing their mean rank.
std::vector<double> mid_ranks(std::span<const double> values);

/// Rank-based H with tie correction and a chi-square tail p-value. When every
/// pooled value is identical the result is H = 0, p = 1. Throws
/// std::invalid_argument for fewer than two groups, an empty group, or N < 3.
KruskalWallisResult kruskal_wallis(std::span<const std::vector<double>> groups);

/// Regularized upper incomplete gamma Q(a, x) by series or continued fraction.
double gamma_q(double a, double x);

/// Upper tail of the chi-square distribution.
inline double chi_square_sf(double x, double df) { return x <= 0 ? 1.0 : gamma_q(df / 2.0, x / 2.0); }

// PCA --------------------------------------------------------------------------

using Sample = std::array<double, kNumBasic>;
using Matrix5 = std::array<std::array<double, kNumBasic>, kNumBasic>;

enum class PcaMode { Covariance, Correlation };

std::string_view to_string(PcaMode m);
std::optional<PcaMode> parse_pca_mode(std::string_view s);

struct SymmetricEigen {
  Sample values;    // descending
  Matrix5 vectors;  // vectors[k] is the unit eigenvector for values[k]
};

/// Cyclic Jacobi rotations; stops once the off-diagonal mass drops below
/// 1e-12 of the Frobenius norm.
SymmetricEigen jacobi_eigen(const Matrix5& symmetric);

struct PcaResult {
  PcaMode mode = PcaMode::Covariance;
  Matrix5 components{};  // components[k][j]: loading of foundation j on PC k+1
  Sample eigenvalues{};
  Sample explained_variance_ratios{};
  Sample means{};
  Sample scales{};             // column standard deviations in correlation mode, else 1
  std::vector<Sample> scores;  // per input sample, on every component
};

/// Centers (and in correlation mode standardizes) the columns, eigendecomposes
/// the 5x5 covariance/correlation matrix and projects the samples. Each
/// component's largest-magnitude coordinate is made positive. Throws
/// std::invalid_argument for fewer than two samples and std::domain_error for
/// a zero-variance column (correlation mode) or zero total variance.
PcaResult pca(std::span<const Sample> samples, PcaMode mode = PcaMode::Covariance);

/// component,eigenvalue,ratio,cumulative
std::string scree_csv(const PcaResult& r);

/// foundation,PC1..PC5 with absolute loadings.
std::string heatmap_csv(const PcaResult& r);

/// Sample scores on the two 1-based component axes followed by the five
/// loading arrows. Columns: kind,name,PCa,PCb. Throws std::invalid_argument for
/// equal or out-of-range axes.
std::string emit_biplot_data(const PcaResult& r, std::pair<std::size_t, std::size_t> axes,
                             std::span<const std::string> sample_names = {});

}  // namespace moralnet::stats
