#pragma once

#include <span>
#include <string>
#include <vector>

#include "cstack/dataset.hpp"

namespace cstack {

// Epsilon values are clamped into [kEpsilonFloor, 1 - kEpsilonFloor] before any
// weight transform is evaluated, so every transform stays finite.
inline constexpr double kEpsilonFloor = 1e-6;

/// Transforms applied to a classifier's normalized cost-error to obtain its
/// meta-input weight:
///   unit: 1, acc: 1-e, exp: exp((1-e)/e), ln: ln((1-e)/e), sq: ((1-e)/e)^2.
enum class WeightKind { unit, acc, exp, ln, sq };

std::string weight_kind_name(WeightKind kind);
WeightKind weight_kind_from_name(const std::string& name);

/// Per-instance cost-sensitive decision threshold:
///   T = (c_fp - c_tn) / (c_fp - c_tn + c_fn - c_tp).
/// Requires the reasonableness condition (c_fp > c_tn, c_fn > c_tp); the
/// result is then strictly inside (0, 1).
double dmecc_threshold(const InstanceCosts& costs);

/// Classify positive iff p strictly exceeds the instance threshold.
/// A tie (p == T) resolves to 0.
int decide(double p, const InstanceCosts& costs);

/// Expected cost of committing to `label` when P(y=1) = p.
double expected_cost(double p, int label, const InstanceCosts& costs);

/// Normalized misclassification-error cost on a validation set: the cost of
/// the errors actually made, divided by the cost of misclassifying every
/// instance. Clamped into [kEpsilonFloor, 1 - kEpsilonFloor].
double mec_epsilon(std::span<const int> decisions, std::span<const int> truths,
                   std::span<const InstanceCosts> costs);

double transform_weight(double epsilon, WeightKind kind);

inline double clamp_epsilon(double e) {
    if (e < kEpsilonFloor) return kEpsilonFloor;
    if (e > 1.0 - kEpsilonFloor) return 1.0 - kEpsilonFloor;
    return e;
}

}  // namespace cstack
