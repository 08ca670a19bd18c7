#include "cstack/stacking.hpp"

#include <algorithm>

#include "cstack/folds.hpp"

namespace cstack {

std::vector<LearnerSpec> default_level0() {
    std::vector<LearnerSpec> roster(4);
    roster[0].algorithm = Algo::DT;
    roster[1].algorithm = Algo::KNN;
    roster[2].algorithm = Algo::SVM;
    roster[3].algorithm = Algo::LR;
    return roster;
}

std::string setup_alias(int setup_type, WeightKind transform) {
    if (setup_type < 1 || setup_type > 3) {
        throw Error("setup type must be 1, 2 or 3, got " + std::to_string(setup_type));
    }
    std::string alias = "type-" + std::to_string(setup_type);
    if (transform != WeightKind::unit) alias += "_" + weight_kind_name(transform);
    return alias;
}

std::pair<int, WeightKind> setup_from_alias(const std::string& alias) {
    const std::string prefix = "type-";
    if (alias.rfind(prefix, 0) != 0 || alias.size() < prefix.size() + 1) {
        throw Error("bad setup alias '" + alias + "' (expected e.g. type-1 or type-3_sq)");
    }
    const char type_char = alias[prefix.size()];
    if (type_char < '1' || type_char > '3') {
        throw Error("bad setup alias '" + alias + "': type must be 1, 2 or 3");
    }
    const int setup_type = type_char - '0';
    std::string rest = alias.substr(prefix.size() + 1);
    if (rest.empty()) return {setup_type, WeightKind::unit};
    if (rest[0] != '_') throw Error("bad setup alias '" + alias + "'");
    return {setup_type, weight_kind_from_name(rest.substr(1))};
}

std::vector<StackingSpec> enumerate_setups() {
    const WeightKind order[] = {WeightKind::unit, WeightKind::exp, WeightKind::ln, WeightKind::sq,
                                WeightKind::acc};
    std::vector<StackingSpec> setups;
    setups.reserve(15);
    for (int type = 1; type <= 3; ++type) {
        for (WeightKind t : order) {
            StackingSpec s;
            s.setup_type = type;
            s.transform = t;
            setups.push_back(std::move(s));
        }
    }
    return setups;
}

Matrix build_meta_features(const std::vector<CalibratedScorer>& models, const Matrix& rows,
                           std::span<const InstanceCosts> costs, bool level0_cost_sensitive) {
    if (level0_cost_sensitive && costs.size() != rows.rows()) {
        throw Error("meta features: costs required for cost-sensitive level-0");
    }
    Matrix meta(rows.rows(), models.size());
    for (std::size_t i = 0; i < rows.rows(); ++i) {
        for (std::size_t j = 0; j < models.size(); ++j) {
            const double p = models[j].score(rows.row(i));
            meta(i, j) = level0_cost_sensitive ? static_cast<double>(decide(p, costs[i])) : p;
        }
    }
    return meta;
}

namespace {

TrainedScorer train_with_context(const LearnerSpec& spec, const Matrix& x,
                                 std::span<const int> y, const std::string& context) {
    try {
        return train(spec, x, y);
    } catch (const Error& e) {
        throw Error(context + ": " + e.what());
    }
}

}  // namespace

StackedModel train_stacking(const StackingSpec& spec, const Matrix& features,
                            std::span<const int> labels, std::span<const InstanceCosts> costs,
                            std::uint64_t seed) {
    if (spec.setup_type < 1 || spec.setup_type > 3) {
        throw Error("setup type must be 1, 2 or 3, got " + std::to_string(spec.setup_type));
    }
    if (spec.inner_folds < 2) throw Error("stacking: inner_folds must be >= 2");
    const std::size_t n = features.rows();
    if (labels.size() != n || costs.size() != n) {
        throw Error("stacking: features/labels/costs length mismatch");
    }

    const std::vector<LearnerSpec> roster = spec.level0.empty() ? default_level0() : spec.level0;
    const std::size_t count = roster.size();

    // (a) inner out-of-fold raw scores, one column of n per level-0 learner
    StackedModel model;
    model.setup_type = spec.setup_type;
    model.transform = spec.transform;

    std::vector<std::vector<double>> oof_raw(count, std::vector<double>(n, 0.0));
    const FoldPlan inner = stratified_kfold(labels, spec.inner_folds, seed);
    for (std::size_t f = 0; f < inner.pairs.size(); ++f) {
        const FoldPair& pair = inner.pairs[f];
        const Matrix x_tr = features.take_rows(pair.train);
        std::vector<int> y_tr;
        y_tr.reserve(pair.train.size());
        for (std::size_t i : pair.train) y_tr.push_back(labels[i]);

        for (std::size_t j = 0; j < count; ++j) {
            LearnerSpec ls = roster[j];
            ls.seed = mix_seed(mix_seed(seed, j + 1), f);
            const TrainedScorer fitted =
                train_with_context(ls, x_tr, y_tr,
                                   "level-0 learner " + algo_name(ls.algorithm) + ", inner fold " +
                                       std::to_string(f));
            model.all_converged = model.all_converged && fitted.converged;
            for (std::size_t i : pair.test) oof_raw[j][i] = fitted.score(features.row(i));
        }
    }

    // (b) per-learner isotonic calibration from the out-of-fold pairs
    std::vector<double> targets(labels.begin(), labels.end());
    std::vector<IsotonicFit> calibrations(count);
    for (std::size_t j = 0; j < count; ++j) calibrations[j] = pava(oof_raw[j], targets);

    // (c) meta features from calibrated out-of-fold scores
    // (d) error-cost epsilon per learner, always from its cost-threshold
    //     decisions, regardless of what the meta features carry
    const bool level0_cs = spec.setup_type != 2;
    Matrix meta(n, count);
    std::vector<int> decisions(n);
    model.epsilons.resize(count);
    model.weights.resize(count);
    for (std::size_t j = 0; j < count; ++j) {
        for (std::size_t i = 0; i < n; ++i) {
            const double p = calibrations[j].apply(oof_raw[j][i]);
            decisions[i] = decide(p, costs[i]);
            meta(i, j) = level0_cs ? static_cast<double>(decisions[i]) : p;
        }
        model.epsilons[j] = mec_epsilon(decisions, labels, costs);
        model.weights[j] = transform_weight(model.epsilons[j], spec.transform);
    }

    // (e) weight the meta columns
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < count; ++j) meta(i, j) *= model.weights[j];
    }

    // (f) level-1 fit on the weighted meta dataset
    LearnerSpec l1 = spec.level1;
    l1.seed = mix_seed(seed, 0x11CAFE);
    model.level1 = train_with_context(l1, meta, labels,
                                      "level-1 learner " + algo_name(l1.algorithm));
    model.all_converged = model.all_converged && model.level1.converged;

    // (g) deployment refit of every level-0 learner on the full split,
    //     paired with the calibration fitted out-of-fold
    model.level0.reserve(count);
    for (std::size_t j = 0; j < count; ++j) {
        LearnerSpec ls = roster[j];
        ls.seed = mix_seed(mix_seed(seed, j + 1), 0xF17);
        TrainedScorer refit =
            train_with_context(ls, features, labels,
                               "level-0 learner " + algo_name(ls.algorithm) + ", deployment refit");
        model.all_converged = model.all_converged && refit.converged;
        CalibratedScorer cs;
        cs.inner = std::move(refit);
        cs.calibration = calibrations[j];
        model.level0.push_back(std::move(cs));
    }

    // (h) level-1 calibration for the cost-sensitive level-1 setups
    if (spec.setup_type != 1) {
        std::vector<double> l1_raw(n);
        for (std::size_t i = 0; i < n; ++i) l1_raw[i] = model.level1.score(meta.row(i));
        model.level1_calibration = pava(l1_raw, targets);
    }
    return model;
}

int StackedModel::predict(std::span<const double> x, const InstanceCosts& costs) const {
    if (!costs.reasonable()) throw Error("predict: instance costs violate reasonableness");
    const bool level0_cs = setup_type != 2;
    std::vector<double> meta(level0.size());
    for (std::size_t j = 0; j < level0.size(); ++j) {
        const double p = level0[j].score(x);
        meta[j] = (level0_cs ? static_cast<double>(decide(p, costs)) : p) * weights[j];
    }
    const double raw = level1.score(meta);
    if (setup_type == 1) return raw > 0.5 ? 1 : 0;
    return decide(level1_calibration.apply(raw), costs);
}

std::vector<int> StackedModel::predict_rows(const Matrix& x,
                                            std::span<const InstanceCosts> costs) const {
    if (x.rows() != costs.size()) throw Error("predict: rows/costs length mismatch");
    std::vector<int> out(x.rows());
    for (std::size_t i = 0; i < x.rows(); ++i) out[i] = predict(x.row(i), costs[i]);
    return out;
}

}  // namespace cstack
