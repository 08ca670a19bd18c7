#include "cstack/cost_decision.hpp"

#include <cmath>

namespace cstack {

std::string weight_kind_name(WeightKind kind) {
    switch (kind) {
        case WeightKind::unit: return "unit";
        case WeightKind::acc: return "acc";
        case WeightKind::exp: return "exp";
        case WeightKind::ln: return "ln";
        case WeightKind::sq: return "sq";
    }
    throw Error("unknown weight kind");
}

WeightKind weight_kind_from_name(const std::string& name) {
    if (name == "unit") return WeightKind::unit;
    if (name == "acc") return WeightKind::acc;
    if (name == "exp") return WeightKind::exp;
    if (name == "ln") return WeightKind::ln;
    if (name == "sq") return WeightKind::sq;
    throw Error("unknown weight transform '" + name + "' (expected unit, acc, exp, ln or sq)");
}

double dmecc_threshold(const InstanceCosts& c) {
    if (!c.reasonable()) {
        throw Error("cost reasonableness violated: need c_fp > c_tn and c_fn > c_tp");
    }
    return (c.fp - c.tn) / (c.fp - c.tn + c.fn - c.tp);
}

int decide(double p, const InstanceCosts& costs) {
    return p > dmecc_threshold(costs) ? 1 : 0;
}

double expected_cost(double p, int label, const InstanceCosts& c) {
    return label == 1 ? p * c.tp + (1.0 - p) * c.fp
                      : p * c.fn + (1.0 - p) * c.tn;
}

double mec_epsilon(std::span<const int> decisions, std::span<const int> truths,
                   std::span<const InstanceCosts> costs) {
    if (decisions.size() != truths.size() || decisions.size() != costs.size()) {
        throw Error("mec_epsilon: input length mismatch");
    }
    if (decisions.empty()) throw Error("mec_epsilon: empty input");
    double err = 0.0;
    double worst = 0.0;  // cost of misclassifying every instance
    for (std::size_t i = 0; i < decisions.size(); ++i) {
        const InstanceCosts& c = costs[i];
        if (truths[i] == 1) {
            worst += c.fn;
            if (decisions[i] == 0) err += c.fn;
        } else {
            worst += c.fp;
            if (decisions[i] == 1) err += c.fp;
        }
    }
    if (worst <= 0.0) throw Error("mec_epsilon: total worst-case cost is zero");
    return clamp_epsilon(err / worst);
}

double transform_weight(double epsilon, WeightKind kind) {
    const double e = clamp_epsilon(epsilon);
    const double odds = (1.0 - e) / e;
    switch (kind) {
        case WeightKind::unit: return 1.0;
        case WeightKind::acc: return 1.0 - e;
        case WeightKind::exp:
            // exp(odds) overflows past odds ~ 709 even though epsilon is
            // clamped; continue linearly above exp(700) so weights stay
            // finite and strictly ordered.
            if (odds <= 700.0) return std::exp(odds);
            return std::exp(700.0) + (odds - 700.0) * 1e297;
        case WeightKind::ln: return std::log(odds);
        case WeightKind::sq: return odds * odds;
    }
    throw Error("unknown weight kind");
}

}  // namespace cstack
