#include "cstack/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/distributions/fisher_f.hpp>
#include <boost/math/distributions/normal.hpp>

namespace cstack {

std::vector<double> fractional_ranks(std::span<const double> scores, bool lower_is_better) {
    const std::size_t k = scores.size();
    for (double s : scores) {
        if (!std::isfinite(s)) throw Error("ranks: scores must be finite");
    }
    std::vector<std::size_t> order(k);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return lower_is_better ? scores[a] < scores[b] : scores[a] > scores[b];
    });

    std::vector<double> ranks(k, 0.0);
    std::size_t at = 0;
    while (at < k) {
        std::size_t end = at + 1;
        while (end < k && scores[order[end]] == scores[order[at]]) ++end;
        const double mean_rank = 0.5 * static_cast<double>(at + 1 + end);  // mean of at+1 .. end
        for (std::size_t i = at; i < end; ++i) ranks[order[i]] = mean_rank;
        at = end;
    }
    return ranks;
}

RankTable average_ranks(const Matrix& scores, bool lower_is_better) {
    if (scores.cols() < 2 || scores.rows() < 1) {
        throw Error("ranks: need at least 2 classifiers and 1 dataset");
    }
    RankTable table;
    table.ranks = Matrix(scores.rows(), scores.cols());
    table.mean_ranks.assign(scores.cols(), 0.0);
    for (std::size_t i = 0; i < scores.rows(); ++i) {
        const std::vector<double> row = fractional_ranks(scores.row(i), lower_is_better);
        for (std::size_t j = 0; j < scores.cols(); ++j) {
            table.ranks(i, j) = row[j];
            table.mean_ranks[j] += row[j];
        }
    }
    for (double& r : table.mean_ranks) r /= static_cast<double>(scores.rows());
    return table;
}

namespace {

double friedman_statistic(const Matrix& ranks) {
    const auto n = static_cast<double>(ranks.rows());
    const auto k = static_cast<double>(ranks.cols());
    double sum_sq = 0.0;
    for (std::size_t j = 0; j < ranks.cols(); ++j) {
        double mean = 0.0;
        for (std::size_t i = 0; i < ranks.rows(); ++i) mean += ranks(i, j);
        mean /= n;
        sum_sq += mean * mean;
    }
    return 12.0 * n / (k * (k + 1.0)) * (sum_sq - k * (k + 1.0) * (k + 1.0) / 4.0);
}

void check_rank_shape(const Matrix& ranks) {
    if (ranks.rows() < 2 || ranks.cols() < 2) {
        throw Error("friedman: need at least 2 datasets and 2 classifiers");
    }
}

}  // namespace

TestOutcome friedman(const Matrix& ranks) {
    check_rank_shape(ranks);
    TestOutcome out;
    out.method = "friedman";
    out.k = ranks.cols();
    out.n = ranks.rows();
    out.statistic = std::max(0.0, friedman_statistic(ranks));
    const boost::math::chi_squared dist(static_cast<double>(out.k - 1));
    out.p_value = boost::math::cdf(boost::math::complement(dist, out.statistic));
    return out;
}

TestOutcome iman_davenport(const Matrix& ranks) {
    check_rank_shape(ranks);
    TestOutcome out;
    out.method = "iman-davenport";
    out.k = ranks.cols();
    out.n = ranks.rows();
    const auto n = static_cast<double>(out.n);
    const auto k = static_cast<double>(out.k);
    const double chi2 = std::max(0.0, friedman_statistic(ranks));
    const double denom = n * (k - 1.0) - chi2;
    if (denom <= 0.0) {
        out.statistic = std::numeric_limits<double>::infinity();
        out.p_value = 0.0;
        return out;
    }
    out.statistic = (n - 1.0) * chi2 / denom;
    const boost::math::fisher_f dist(k - 1.0, (k - 1.0) * (n - 1.0));
    out.p_value = boost::math::cdf(boost::math::complement(dist, out.statistic));
    return out;
}

namespace {

// Studentized-range quantiles divided by sqrt(2), k = 2..20, infinite df.
constexpr double kNemenyiQ05[] = {
    1.959964, 2.343701, 2.569032, 2.727774, 2.849705,
    2.948320, 3.030878, 3.101730, 3.163684, 3.218654,
    3.268004, 3.312739, 3.353618, 3.391230, 3.426041,
    3.458425, 3.488685, 3.517073, 3.543799,
};
constexpr double kNemenyiQ10[] = {
    1.644854, 2.052293, 2.291341, 2.459516, 2.588521,
    2.692732, 2.779884, 2.854606, 2.919889, 2.977768,
    3.029694, 3.076733, 3.119693, 3.159199, 3.195743,
    3.229723, 3.261461, 3.291224, 3.319233,
};

}  // namespace

double nemenyi_cd(std::size_t k, std::size_t n, double alpha) {
    if (k < 2 || k > 20) {
        throw Error("nemenyi: k must be between 2 and 20, got " + std::to_string(k));
    }
    if (n < 1) throw Error("nemenyi: need at least one dataset");
    const double* table = nullptr;
    if (alpha == 0.05) table = kNemenyiQ05;
    else if (alpha == 0.10) table = kNemenyiQ10;
    else throw Error("nemenyi: alpha must be 0.05 or 0.10");
    const double q = table[k - 2];
    return q * std::sqrt(static_cast<double>(k) * (static_cast<double>(k) + 1.0) /
                         (6.0 * static_cast<double>(n)));
}

std::vector<std::vector<bool>> pairwise_significant(std::span<const double> mean_ranks,
                                                    double cd) {
    const std::size_t k = mean_ranks.size();
    std::vector<std::vector<bool>> sig(k, std::vector<bool>(k, false));
    for (std::size_t a = 0; a < k; ++a) {
        for (std::size_t b = a + 1; b < k; ++b) {
            const bool s = std::abs(mean_ranks[a] - mean_ranks[b]) > cd;
            sig[a][b] = s;
            sig[b][a] = s;
        }
    }
    return sig;
}

TestOutcome wilcoxon_signed_rank(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) throw Error("wilcoxon: paired inputs differ in length");

    std::vector<double> diffs;
    diffs.reserve(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        if (!std::isfinite(d)) throw Error("wilcoxon: non-finite difference");
        if (d != 0.0) diffs.push_back(d);
    }
    if (diffs.empty()) throw Error("wilcoxon: all differences are zero, no signal");
    if (diffs.size() < 3) {
        throw Error("wilcoxon: need at least 3 non-zero differences, got " +
                    std::to_string(diffs.size()));
    }

    const std::size_t m = diffs.size();
    std::vector<double> magnitudes(m);
    for (std::size_t i = 0; i < m; ++i) magnitudes[i] = std::abs(diffs[i]);
    const std::vector<double> ranks = fractional_ranks(magnitudes, true);

    double w_pos = 0.0, w_neg = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        (diffs[i] > 0.0 ? w_pos : w_neg) += ranks[i];
    }
    const double w = std::min(w_pos, w_neg);

    TestOutcome out;
    out.statistic = w;
    out.k = 2;
    out.n = m;

    if (m <= 12) {
        out.method = "wilcoxon-exact";
        // Fractional ranks become integers at twice the scale; count sign
        // assignments whose positive-rank sum is <= the observed minimum.
        std::vector<std::size_t> scaled(m);
        std::size_t total = 0;
        for (std::size_t i = 0; i < m; ++i) {
            scaled[i] = static_cast<std::size_t>(std::llround(2.0 * ranks[i]));
            total += scaled[i];
        }
        std::vector<double> count(total + 1, 0.0);
        count[0] = 1.0;
        for (std::size_t i = 0; i < m; ++i) {
            for (std::size_t s = total + 1; s-- > scaled[i];) {
                count[s] += count[s - scaled[i]];
            }
        }
        const auto cutoff = static_cast<std::size_t>(std::llround(2.0 * w));
        double at_or_below = 0.0;
        for (std::size_t s = 0; s <= cutoff && s <= total; ++s) at_or_below += count[s];
        out.p_value = std::min(1.0, 2.0 * at_or_below / std::pow(2.0, static_cast<double>(m)));
    } else {
        out.method = "wilcoxon-normal";
        const auto md = static_cast<double>(m);
        double tie_term = 0.0;
        std::size_t at = 0;
        std::vector<double> sorted_mag = magnitudes;
        std::sort(sorted_mag.begin(), sorted_mag.end());
        while (at < m) {
            std::size_t end = at + 1;
            while (end < m && sorted_mag[end] == sorted_mag[at]) ++end;
            const auto t = static_cast<double>(end - at);
            tie_term += t * t * t - t;
            at = end;
        }
        const double mean = md * (md + 1.0) / 4.0;
        const double var = md * (md + 1.0) * (2.0 * md + 1.0) / 24.0 - tie_term / 48.0;
        if (var <= 0.0) throw Error("wilcoxon: zero variance after tie correction");
        const double z = (w - mean) / std::sqrt(var);
        const boost::math::normal norm;
        out.p_value = std::min(1.0, 2.0 * boost::math::cdf(norm, z));
    }
    return out;
}

CdDiagram cd_diagram_data(std::span<const std::string> names, std::span<const double> mean_ranks,
                          double cd) {
    if (names.size() != mean_ranks.size()) throw Error("cd diagram: names/ranks length mismatch");
    for (double r : mean_ranks) {
        if (!std::isfinite(r)) throw Error("cd diagram: ranks must be finite");
    }
    const std::size_t k = names.size();
    std::vector<std::size_t> order(k);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return mean_ranks[x] < mean_ranks[y]; });

    CdDiagram diagram;
    diagram.cd = cd;
    diagram.classifiers.reserve(k);
    diagram.mean_ranks.reserve(k);
    for (std::size_t i : order) {
        diagram.classifiers.push_back(names[i]);
        diagram.mean_ranks.push_back(mean_ranks[i]);
    }

    // Maximal intervals of the sorted ranks whose span stays within cd.
    std::size_t prev_end = 0;  // one past the end of the last emitted clique
    for (std::size_t start = 0; start < k; ++start) {
        std::size_t end = start + 1;
        while (end < k && diagram.mean_ranks[end] - diagram.mean_ranks[start] <= cd) ++end;
        if (end > prev_end) {
            std::vector<std::size_t> clique(end - start);
            std::iota(clique.begin(), clique.end(), start);
            diagram.cliques.push_back(std::move(clique));
            prev_end = end;
        }
    }
    return diagram;
}

}  // namespace cstack
