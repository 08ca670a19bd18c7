#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "cstack/dataset.hpp"
#include "cstack/isotonic.hpp"

namespace cstack {

enum class Algo { DT, KNN, LR, SVM, Ada, RF };

std::string algo_name(Algo a);
Algo algo_from_name(const std::string& name);

/// Which learner to train plus its settings. The defaults are the fixed
/// experiment-wide configuration; no per-dataset tuning happens anywhere.
struct LearnerSpec {
    Algo algorithm = Algo::DT;
    std::uint64_t seed = 0;

    std::size_t dt_max_depth = 8;
    double dt_min_leaf_weight = 5.0;
    std::size_t knn_k = 11;
    double l2_lambda = 1e-4;
    std::size_t gd_iters = 500;
    double gd_step = 0.1;
    std::size_t ada_rounds = 50;
    std::size_t rf_trees = 100;
    std::size_t rf_max_depth = 8;
};

struct TreeNode {
    std::int32_t feature = -1;  // -1 marks a leaf
    double threshold = 0.0;
    double score = 0.0;  // weighted positive fraction at the leaf
    std::int32_t left = -1;
    std::int32_t right = -1;
};

struct TreeModel {
    std::vector<TreeNode> nodes;
    double score(std::span<const double> x) const;
};

struct KnnModel {
    std::size_t k = 11;
    Matrix points;
    std::vector<int> labels;
    std::vector<double> weights;
    double score(std::span<const double> x) const;
};

/// Shared by LR and SVM: score = sigmoid(w.x + bias).
struct LinearModel {
    std::vector<double> w;
    double bias = 0.0;
    bool converged = true;
    double score(std::span<const double> x) const;
};

struct AdaModel {
    std::vector<TreeModel> stumps;
    std::vector<double> alphas;
    double score(std::span<const double> x) const;  // sigmoid of signed vote margin
};

struct ForestModel {
    std::vector<TreeModel> trees;
    double score(std::span<const double> x) const;  // mean of member scores
};

/// A fitted classifier scoring feature vectors into [0,1].
struct TrainedScorer {
    Algo algorithm = Algo::DT;
    std::size_t dim = 0;
    bool converged = true;  // iteration cap reached without meeting tolerance -> false
    std::variant<TreeModel, KnnModel, LinearModel, AdaModel, ForestModel> model;

    double score(std::span<const double> x) const;
    std::vector<double> score_rows(const Matrix& x) const;
};

/// Trains one learner. Weights are optional (empty span = unit weights);
/// zero-weight rows are dropped. All learners except KNN require both
/// classes present.
TrainedScorer train(const LearnerSpec& spec, const Matrix& features, std::span<const int> labels,
                    std::span<const double> sample_weights = {});

/// A raw scorer plus an isotonic correction of its output.
struct CalibratedScorer {
    TrainedScorer inner;
    IsotonicFit calibration;

    double score(std::span<const double> x) const { return calibration.apply(inner.score(x)); }
    std::vector<double> score_rows(const Matrix& x) const;
};

/// Fits the isotonic step function on (raw score, label) pairs from the given
/// rows. The rows must be disjoint from whatever the calibrated model is
/// later evaluated on; callers arrange that.
CalibratedScorer calibrate_isotonic(TrainedScorer model, const Matrix& features,
                                    std::span<const int> labels);

/// Calibration from precomputed raw scores (out-of-fold pairs).
CalibratedScorer calibrate_from_scores(TrainedScorer model, std::span<const double> raw_scores,
                                       std::span<const int> labels);

double sigmoid(double z);

}  // namespace cstack
