#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "cstack/cost_decision.hpp"
#include "cstack/learners.hpp"

namespace cstack {

/// One stacked-generalization configuration.
///   setup_type 1: cost-sensitive level-0 decisions, cost-insensitive level-1
///   setup_type 2: level-0 probabilities, cost-sensitive level-1
///   setup_type 3: cost-sensitive at both levels
struct StackingSpec {
    int setup_type = 3;
    WeightKind transform = WeightKind::unit;
    std::vector<LearnerSpec> level0;  // empty = default roster
    LearnerSpec level1;
    std::size_t inner_folds = 4;
};

/// The default level-0 roster: DT, KNN, SVM, LR.
std::vector<LearnerSpec> default_level0();

/// "type-2_sq" style alias for a (setup_type, transform) pair; the unit
/// transform has no suffix.
std::string setup_alias(int setup_type, WeightKind transform);
std::pair<int, WeightKind> setup_from_alias(const std::string& alias);

/// The full grid of 15 setups: types 1..3, transforms unit, exp, ln, sq, acc
/// within each type, in that order.
std::vector<StackingSpec> enumerate_setups();

struct StackedModel {
    int setup_type = 3;
    WeightKind transform = WeightKind::unit;
    std::vector<CalibratedScorer> level0;
    std::vector<double> epsilons;  // per level-0 learner, from out-of-fold decisions
    std::vector<double> weights;   // transform(epsilon)
    TrainedScorer level1;
    IsotonicFit level1_calibration;  // fitted for setup types 2 and 3
    bool all_converged = true;

    std::size_t dim() const { return level0.empty() ? 0 : level0.front().inner.dim; }
    int predict(std::span<const double> x, const InstanceCosts& costs) const;
    std::vector<int> predict_rows(const Matrix& x, std::span<const InstanceCosts> costs) const;
};

/// Level-0 outputs for a block of rows: per-instance cost-threshold decisions
/// when `level0_cost_sensitive`, calibrated probabilities otherwise. Column j
/// belongs to models[j].
Matrix build_meta_features(const std::vector<CalibratedScorer>& models, const Matrix& rows,
                           std::span<const InstanceCosts> costs, bool level0_cost_sensitive);

/// Trains the full stack on one training split: inner out-of-fold scores,
/// per-learner isotonic calibration, meta features, error-cost weights,
/// level-1 fit, and a deployment refit of every level-0 learner.
StackedModel train_stacking(const StackingSpec& spec, const Matrix& features,
                            std::span<const int> labels, std::span<const InstanceCosts> costs,
                            std::uint64_t seed);

}  // namespace cstack
