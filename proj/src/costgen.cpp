#include "cstack/costgen.hpp"

namespace cstack {

std::vector<InstanceCosts> credit_costs(std::span<const double> credit_lines,
                                        std::span<const int> sample_labels,
                                        const CreditCostParams& params) {
    const std::size_t n = credit_lines.size();
    if (n == 0) throw Error("credit_costs: empty sample");
    if (sample_labels.size() != n) throw Error("credit_costs: labels/lines length mismatch");
    if (!(params.lgd > 0.0 && params.lgd <= 1.0)) throw Error("credit_costs: lgd must be in (0,1]");
    if (!(params.rate_min > 0.0 && params.rate_max < 1.0 && params.rate_min <= params.rate_max)) {
        throw Error("credit_costs: interest rate range must satisfy 0 < min <= max < 1");
    }

    std::size_t pos = 0, neg = 0;
    for (int y : sample_labels) (y == 1 ? pos : neg)++;
    if (pos == 0 || neg == 0) {
        throw Error("credit_costs: sample must contain both classes for the expected-cost averages");
    }

    Rng rng(params.seed);
    std::vector<double> profit(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (!(credit_lines[i] > 0.0)) {
            throw Error("credit_costs: credit line must be positive at row " + std::to_string(i));
        }
        profit[i] = rng.uniform(params.rate_min, params.rate_max) * credit_lines[i];
    }

    double avg_expected_loss = 0.0;    // sum over positives of lgd * line, over n
    double avg_expected_profit = 0.0;  // sum over negatives of profit, over n
    for (std::size_t i = 0; i < n; ++i) {
        if (sample_labels[i] == 1) avg_expected_loss += params.lgd * credit_lines[i];
        else avg_expected_profit += profit[i];
    }
    avg_expected_loss /= static_cast<double>(n);
    avg_expected_profit /= static_cast<double>(n);

    std::vector<InstanceCosts> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        out[i].fn = params.lgd * credit_lines[i];
        out[i].fp = profit[i] + avg_expected_loss + avg_expected_profit;
        out[i].tp = 0.0;
        out[i].tn = 0.0;
        if (!out[i].reasonable()) {
            throw Error("credit_costs: generated costs violate reasonableness at row " +
                        std::to_string(i));
        }
    }
    return out;
}

std::vector<InstanceCosts> bankruptcy_costs(std::span<const double> usage_90d,
                                            std::span<const double> annual_margin,
                                            std::span<const int> sample_labels) {
    const std::size_t n = usage_90d.size();
    if (n == 0) throw Error("bankruptcy_costs: empty sample");
    if (annual_margin.size() != n || sample_labels.size() != n) {
        throw Error("bankruptcy_costs: input length mismatch");
    }
    std::size_t pos = 0, neg = 0;
    for (int y : sample_labels) (y == 1 ? pos : neg)++;
    if (pos == 0 || neg == 0) {
        throw Error("bankruptcy_costs: sample must contain both classes for the expected-cost averages");
    }

    double avg_expected_loss = 0.0;
    double avg_expected_profit = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        if (sample_labels[i] == 1) avg_expected_loss += usage_90d[i];
        else avg_expected_profit += annual_margin[i];
    }
    avg_expected_loss /= static_cast<double>(n);
    avg_expected_profit /= static_cast<double>(n);

    std::vector<InstanceCosts> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        out[i].fn = usage_90d[i];
        out[i].fp = annual_margin[i] + avg_expected_loss + avg_expected_profit;
        out[i].tp = 0.0;
        out[i].tn = 0.0;
        if (!out[i].reasonable()) {
            throw Error("bankruptcy_costs: generated costs violate reasonableness at row " +
                        std::to_string(i));
        }
    }
    return out;
}

std::vector<InstanceCosts> synthetic_uniform_costs(std::size_t n, double low, double high,
                                                   std::uint64_t seed) {
    if (!(low > 0.0 && low < high)) throw Error("synthetic_uniform_costs: need 0 < low < high");
    Rng rng(seed);
    std::vector<InstanceCosts> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        out[i].fp = rng.uniform(low, high);
        out[i].fn = rng.uniform(low, high);
        out[i].tp = 0.0;
        out[i].tn = 0.0;
    }
    return out;
}

}  // namespace cstack
