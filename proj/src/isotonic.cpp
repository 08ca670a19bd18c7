#include "cstack/isotonic.hpp"

#include <algorithm>
#include <cmath>

namespace cstack {

double IsotonicFit::apply(double s) const {
    if (values.empty()) throw Error("isotonic fit is empty");
    // First block whose breakpoint is > s; the block before it covers s.
    const auto it = std::upper_bound(breakpoints.begin(), breakpoints.end(), s);
    if (it == breakpoints.begin()) return values.front();
    return values[static_cast<std::size_t>(it - breakpoints.begin()) - 1];
}

IsotonicFit pava(std::span<const double> raw_scores, std::span<const double> targets,
                 std::span<const double> weights) {
    const std::size_t n = raw_scores.size();
    if (n == 0) throw Error("pava: empty input");
    if (targets.size() != n || (!weights.empty() && weights.size() != n)) {
        throw Error("pava: input length mismatch");
    }

    std::vector<std::size_t> order;
    order.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double w = weights.empty() ? 1.0 : weights[i];
        if (w < 0.0 || !std::isfinite(w)) throw Error("pava: weights must be finite and >= 0");
        if (!std::isfinite(raw_scores[i])) throw Error("pava: raw scores must be finite");
        if (!std::isfinite(targets[i])) throw Error("pava: targets must be finite");
        if (w > 0.0) order.push_back(i);
    }
    if (order.empty()) throw Error("pava: all weights are zero");
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return raw_scores[a] < raw_scores[b];
    });

    struct Block {
        double first_raw;
        double w;
        double wy;
    };
    std::vector<Block> blocks;
    std::size_t at = 0;
    while (at < order.size()) {
        const double raw = raw_scores[order[at]];
        Block b{raw, 0.0, 0.0};
        for (; at < order.size() && raw_scores[order[at]] == raw; ++at) {
            const std::size_t i = order[at];
            const double w = weights.empty() ? 1.0 : weights[i];
            b.w += w;
            b.wy += w * targets[i];
        }
        while (!blocks.empty() && blocks.back().wy * b.w > b.wy * blocks.back().w) {
            b.w += blocks.back().w;
            b.wy += blocks.back().wy;
            b.first_raw = blocks.back().first_raw;
            blocks.pop_back();
        }
        blocks.push_back(b);
    }

    IsotonicFit fit;
    fit.breakpoints.reserve(blocks.size());
    fit.values.reserve(blocks.size());
    for (const Block& b : blocks) {
        fit.breakpoints.push_back(b.first_raw);
        fit.values.push_back(b.wy / b.w);
    }
    return fit;
}

}  // namespace cstack
