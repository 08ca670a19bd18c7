#pragma once

#include <span>
#include <vector>

#include "cstack/dataset.hpp"

namespace cstack {

/// Credit-scoring cost model. For instance i:
///   c_fn = lgd * credit_line_i                      (loss given default)
///   c_fp = rate_i * credit_line_i                   (lost interest profit)
///          + sum over positives of lgd * line_j / n (average expected loss)
///          + sum over negatives of profit_j / n     (average expected profit)
///   c_tp = c_tn = 0
/// rate_i is drawn uniformly from [rate_min, rate_max] with the seeded
/// generator; the averages are taken over the supplied sample.
struct CreditCostParams {
    double lgd = 0.75;
    double rate_min = 0.06;
    double rate_max = 0.10;
    std::uint64_t seed = 0;
};

std::vector<InstanceCosts> credit_costs(std::span<const double> credit_lines,
                                        std::span<const int> sample_labels,
                                        const CreditCostParams& params);

/// Utilities variant: the credit line is 90 days of usage, lost in full on
/// default, and the profit side is the customer's annual margin.
///   c_fn = usage_90d_i
///   c_fp = annual_margin_i + avg expected loss + avg expected profit
std::vector<InstanceCosts> bankruptcy_costs(std::span<const double> usage_90d,
                                            std::span<const double> annual_margin,
                                            std::span<const int> sample_labels);

/// c_fp, c_fn ~ Uniform[low, high] independently per instance; correct
/// classifications cost zero.
std::vector<InstanceCosts> synthetic_uniform_costs(std::size_t n, double low, double high,
                                                   std::uint64_t seed);

}  // namespace cstack
