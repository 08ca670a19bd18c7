#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <limits>
#include <vector>

#include "cstack/isotonic.hpp"

using namespace cstack;

namespace {

double sse_of_fit(const IsotonicFit& fit, std::span<const double> raw,
                  std::span<const double> targets, std::span<const double> weights) {
    double sse = 0.0;
    for (std::size_t i = 0; i < raw.size(); ++i) {
        const double w = weights.empty() ? 1.0 : weights[i];
        const double d = fit.apply(raw[i]) - targets[i];
        sse += w * d * d;
    }
    return sse;
}

/// Exact optimum: the isotonic solution is piecewise constant at weighted
/// block means over contiguous blocks, so minimizing over every contiguous
/// partition with non-decreasing block means is exhaustive.
double brute_force_sse(std::span<const double> targets, std::span<const double> weights) {
    const std::size_t n = targets.size();
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t mask = 0; mask < (1u << (n - 1)); ++mask) {
        std::vector<double> means;
        double sse = 0.0;
        std::size_t start = 0;
        bool monotone = true;
        for (std::size_t stop = 1; stop <= n; ++stop) {
            if (stop < n && !(mask & (1u << (stop - 1)))) continue;
            double w_sum = 0.0, wy_sum = 0.0;
            for (std::size_t i = start; i < stop; ++i) {
                w_sum += weights[i];
                wy_sum += weights[i] * targets[i];
            }
            const double mean = wy_sum / w_sum;
            if (!means.empty() && mean < means.back()) {
                monotone = false;
                break;
            }
            means.push_back(mean);
            for (std::size_t i = start; i < stop; ++i) {
                sse += weights[i] * (targets[i] - mean) * (targets[i] - mean);
            }
            start = stop;
        }
        if (monotone) best = std::min(best, sse);
    }
    return best;
}

}  // namespace

TEST_CASE("a single violating pair pools to its mean") {
    const std::vector<double> raw{1.0, 2.0};
    const std::vector<double> targets{1.0, 0.0};
    const IsotonicFit fit = pava(raw, targets);
    CHECK(fit.apply(1.0) == 0.5);
    CHECK(fit.apply(2.0) == 0.5);
    CHECK(fit.apply(-10.0) == 0.5);
    CHECK(fit.apply(10.0) == 0.5);
}

TEST_CASE("partial pooling keeps the tail step") {
    const std::vector<double> raw{1.0, 2.0, 3.0};
    const std::vector<double> targets{1.0, 0.0, 1.0};
    const IsotonicFit fit = pava(raw, targets);
    CHECK(fit.apply(1.0) == 0.5);
    CHECK(fit.apply(2.0) == 0.5);
    CHECK(fit.apply(3.0) == 1.0);
    CHECK(fit.apply(2.5) == 0.5);  // greatest breakpoint <= s wins
    CHECK(fit.apply(100.0) == 1.0);
}

TEST_CASE("already monotone targets are untouched") {
    const std::vector<double> raw{0.1, 0.4, 0.9};
    const std::vector<double> targets{0.0, 0.5, 1.0};
    const IsotonicFit fit = pava(raw, targets);
    CHECK(fit.apply(0.1) == 0.0);
    CHECK(fit.apply(0.4) == 0.5);
    CHECK(fit.apply(0.9) == 1.0);
}

TEST_CASE("fitted SSE is optimal for every short binary target vector") {
    const std::vector<std::vector<double>> weight_patterns{
        {1, 1, 1, 1, 1, 1}, {2, 1, 2, 1, 2, 1}, {0.25, 4, 0.25, 4, 0.25, 4}};
    const std::vector<double> raw{1, 2, 3, 4, 5, 6};
    for (std::size_t bits = 0; bits < 64; ++bits) {
        std::vector<double> targets(6);
        for (std::size_t i = 0; i < 6; ++i) targets[i] = (bits >> i) & 1 ? 1.0 : 0.0;
        for (const auto& weights : weight_patterns) {
            const IsotonicFit fit = pava(raw, targets, weights);
            const double fitted = sse_of_fit(fit, raw, targets, weights);
            const double best = brute_force_sse(targets, weights);
            CHECK(fitted <= best + 1e-9);
        }
    }
}

TEST_CASE("the fitted function is non-decreasing") {
    Rng rng(19);
    std::vector<double> raw, targets;
    for (int i = 0; i < 200; ++i) {
        raw.push_back(rng.uniform());
        targets.push_back(rng.below(2) ? 1.0 : 0.0);
    }
    const IsotonicFit fit = pava(raw, targets);
    for (int i = 0; i < 1000; ++i) {
        double a = rng.uniform(-0.2, 1.2);
        double b = rng.uniform(-0.2, 1.2);
        if (a > b) std::swap(a, b);
        CHECK(fit.apply(a) <= fit.apply(b));
    }
}

TEST_CASE("equal raw scores are grouped before pooling") {
    const std::vector<double> raw{1.0, 1.0, 2.0};
    const std::vector<double> targets{0.0, 1.0, 0.0};
    const IsotonicFit fit = pava(raw, targets);
    // Tie group mean 0.5 then violation with 0 -> all pooled at 1/3.
    CHECK(fit.apply(1.0) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
    CHECK(fit.apply(2.0) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
}

TEST_CASE("a duplicated pair equals the same pair at weight two") {
    const std::vector<double> raw_dup{0.2, 0.2, 0.7, 0.9};
    const std::vector<double> targets_dup{1.0, 1.0, 0.0, 1.0};
    const std::vector<double> raw_w{0.2, 0.7, 0.9};
    const std::vector<double> targets_w{1.0, 0.0, 1.0};
    const std::vector<double> weights_w{2.0, 1.0, 1.0};
    const IsotonicFit a = pava(raw_dup, targets_dup);
    const IsotonicFit b = pava(raw_w, targets_w, weights_w);
    for (double s : {0.0, 0.2, 0.5, 0.7, 0.8, 0.9, 1.0}) {
        CHECK(a.apply(s) == b.apply(s));
    }
}

TEST_CASE("zero-weight pairs are ignored") {
    const std::vector<double> raw{0.1, 0.5, 0.9};
    const std::vector<double> targets{0.0, 1.0, 1.0};
    const std::vector<double> weights{1.0, 0.0, 1.0};
    const IsotonicFit fit = pava(raw, targets, weights);
    const IsotonicFit without = pava(std::vector<double>{0.1, 0.9},
                                     std::vector<double>{0.0, 1.0});
    for (double s : {0.0, 0.1, 0.5, 0.9, 1.0}) {
        CHECK(fit.apply(s) == without.apply(s));
    }
}

TEST_CASE("input validation") {
    CHECK_THROWS_AS(pava(std::vector<double>{}, std::vector<double>{}), Error);
    CHECK_THROWS_AS(pava(std::vector<double>{1.0}, std::vector<double>{1.0, 0.0}), Error);
    CHECK_THROWS_AS(pava(std::vector<double>{1.0, 2.0}, std::vector<double>{1.0, 0.0},
                         std::vector<double>{0.0, 0.0}),
                    Error);
    const double nan = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(pava(std::vector<double>{nan, 2.0}, std::vector<double>{1.0, 0.0}), Error);
    CHECK_THROWS_AS(pava(std::vector<double>{1.0, 2.0}, std::vector<double>{nan, 0.0}), Error);

    IsotonicFit empty;
    CHECK_THROWS_AS(empty.apply(0.5), Error);
}

TEST_CASE("unsorted input is handled by sorting on raw score") {
    const std::vector<double> raw{3.0, 1.0, 2.0};
    const std::vector<double> targets{1.0, 1.0, 0.0};
    const IsotonicFit fit = pava(raw, targets);
    // Sorted: raw 1,2,3 with targets 1,0,1 -> pooled head then 1.
    CHECK(fit.apply(1.0) == 0.5);
    CHECK(fit.apply(2.0) == 0.5);
    CHECK(fit.apply(3.0) == 1.0);
}
