#include "cstack/metrics.hpp"

#include <algorithm>

namespace cstack {

namespace {
double cost_entry(const InstanceCosts& c, int truth, int decision) {
    if (truth == 1) return decision == 1 ? c.tp : c.fn;
    return decision == 1 ? c.fp : c.tn;
}
}  // namespace

double total_cost(std::span<const int> truths, std::span<const int> decisions,
                  std::span<const InstanceCosts> costs) {
    if (truths.size() != decisions.size() || truths.size() != costs.size()) {
        throw Error("total_cost: input length mismatch");
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < truths.size(); ++i) {
        sum += cost_entry(costs[i], truths[i], decisions[i]);
    }
    return sum;
}

double baseline_cost(std::span<const int> truths, std::span<const InstanceCosts> costs) {
    if (truths.empty()) throw Error("baseline_cost: empty input");
    if (truths.size() != costs.size()) throw Error("baseline_cost: input length mismatch");
    double all_neg = 0.0, all_pos = 0.0;
    for (std::size_t i = 0; i < truths.size(); ++i) {
        all_neg += cost_entry(costs[i], truths[i], 0);
        all_pos += cost_entry(costs[i], truths[i], 1);
    }
    const double base = std::min(all_neg, all_pos);
    if (base <= 0.0) throw Error("degenerate baseline: best naive policy has zero cost");
    return base;
}

double savings(std::span<const int> truths, std::span<const int> decisions,
               std::span<const InstanceCosts> costs) {
    const double base = baseline_cost(truths, costs);
    return (base - total_cost(truths, decisions, costs)) / base;
}

}  // namespace cstack
