#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "cstack/common.hpp"

namespace cstack {

/// Outcome of one hypothesis test.
struct TestOutcome {
    double statistic = 0.0;
    double p_value = 1.0;
    std::string method;
    std::size_t k = 0;  // treatments compared
    std::size_t n = 0;  // blocks (datasets) or non-zero pairs
};

/// Ranks within one score row: best score gets rank 1, ties get the mean of
/// the ranks they span.
std::vector<double> fractional_ranks(std::span<const double> scores, bool lower_is_better = true);

struct RankTable {
    Matrix ranks;  // datasets x classifiers
    std::vector<double> mean_ranks;
};

RankTable average_ranks(const Matrix& scores, bool lower_is_better = true);

/// Friedman omnibus test on a rank matrix (datasets x classifiers):
///   chi2 = 12n/(k(k+1)) * (sum_j R_j^2 - k(k+1)^2/4)
/// with R_j the column mean rank; p from chi-squared with k-1 df.
TestOutcome friedman(const Matrix& ranks);

/// Iman-Davenport F correction of the Friedman statistic; p from
/// F(k-1, (k-1)(n-1)). Infinite when the rankings agree perfectly.
TestOutcome iman_davenport(const Matrix& ranks);

/// Nemenyi critical difference q_alpha * sqrt(k(k+1)/(6n)) for
/// alpha in {0.05, 0.10} and 2 <= k <= 20.
double nemenyi_cd(std::size_t k, std::size_t n, double alpha);

/// significant[a][b] = |mean_rank_a - mean_rank_b| > cd. Symmetric with a
/// false diagonal.
std::vector<std::vector<bool>> pairwise_significant(std::span<const double> mean_ranks, double cd);

/// Two-sided Wilcoxon signed-rank test on paired scores. Zero differences
/// are dropped; at least 3 non-zero differences required. Exact enumeration
/// p-value for up to 12 non-zero differences, normal approximation with tie
/// correction (no continuity correction) beyond that. statistic = min(W+, W-).
TestOutcome wilcoxon_signed_rank(std::span<const double> a, std::span<const double> b);

/// Data behind a critical-difference diagram: classifiers ordered by mean
/// rank, and the maximal groups whose rank span does not exceed the CD.
struct CdDiagram {
    std::vector<std::string> classifiers;  // ascending mean rank
    std::vector<double> mean_ranks;        // same order
    double cd = 0.0;
    std::vector<std::vector<std::size_t>> cliques;  // index lists into `classifiers`
};

CdDiagram cd_diagram_data(std::span<const std::string> names, std::span<const double> mean_ranks,
                          double cd);

}  // namespace cstack
