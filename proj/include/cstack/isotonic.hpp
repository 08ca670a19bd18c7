#pragma once

#include <span>
#include <vector>

#include "cstack/common.hpp"

namespace cstack {

/// Non-decreasing step function fitted by pool-adjacent-violators.
/// `breakpoints` are ascending raw scores (the smallest raw score of each
/// pooled block); `values` are the fitted block means. Evaluation returns the
/// value of the greatest breakpoint <= s, and the first value for s below
/// every breakpoint.
struct IsotonicFit {
    std::vector<double> breakpoints;
    std::vector<double> values;

    double apply(double s) const;
};

/// Weighted isotonic regression of `targets` on `raw_scores`. Ties in raw
/// score are grouped before pooling; zero-weight pairs are ignored. The
/// result minimizes weighted squared error among all non-decreasing fits.
/// Pass an empty `weights` span for unit weights.
IsotonicFit pava(std::span<const double> raw_scores, std::span<const double> targets,
                 std::span<const double> weights = {});

}  // namespace cstack
