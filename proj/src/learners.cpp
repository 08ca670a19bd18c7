#include "cstack/learners.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace cstack {

double sigmoid(double z) {
    if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
    const double e = std::exp(z);
    return e / (1.0 + e);
}

std::string algo_name(Algo a) {
    switch (a) {
        case Algo::DT: return "DT";
        case Algo::KNN: return "KNN";
        case Algo::LR: return "LR";
        case Algo::SVM: return "SVM";
        case Algo::Ada: return "Ada";
        case Algo::RF: return "RF";
    }
    throw Error("unknown algorithm tag");
}

Algo algo_from_name(const std::string& name) {
    if (name == "DT") return Algo::DT;
    if (name == "KNN") return Algo::KNN;
    if (name == "LR") return Algo::LR;
    if (name == "SVM") return Algo::SVM;
    if (name == "Ada") return Algo::Ada;
    if (name == "RF") return Algo::RF;
    throw Error("unknown algorithm name '" + name + "' (expected DT, KNN, LR, SVM, Ada or RF)");
}

// ---------------------------------------------------------------------------
// Decision tree (CART, Gini impurity, weighted samples)

namespace {

struct TreeParams {
    std::size_t max_depth = 8;
    double min_leaf_weight = 5.0;
    std::size_t mtry = 0;  // 0 = consider every feature
};

class TreeBuilder {
public:
    TreeBuilder(const Matrix& x, std::span<const int> y, std::span<const double> w,
                const TreeParams& params, Rng* rng)
        : x_(x), y_(y), w_(w), params_(params), rng_(rng) {}

    TreeModel build(std::vector<std::size_t> rows) {
        TreeModel model;
        grow(model, std::move(rows), 0);
        return model;
    }

private:
    struct Split {
        bool found = false;
        std::size_t feature = 0;
        double threshold = 0.0;
        double impurity = std::numeric_limits<double>::infinity();
    };

    std::int32_t grow(TreeModel& model, std::vector<std::size_t> rows, std::size_t depth) {
        double total_w = 0.0, pos_w = 0.0;
        for (std::size_t r : rows) {
            total_w += w_[r];
            pos_w += w_[r] * y_[r];
        }

        const auto id = static_cast<std::int32_t>(model.nodes.size());
        model.nodes.push_back(TreeNode{});
        model.nodes[id].score = pos_w / total_w;

        const bool pure = pos_w == 0.0 || pos_w == total_w;
        if (depth >= params_.max_depth || pure || total_w < 2.0 * params_.min_leaf_weight) {
            return id;
        }
        const Split split = best_split(rows, total_w, pos_w);
        if (!split.found) return id;

        std::vector<std::size_t> left, right;
        for (std::size_t r : rows) {
            (x_(r, split.feature) < split.threshold ? left : right).push_back(r);
        }
        rows.clear();
        rows.shrink_to_fit();

        model.nodes[id].feature = static_cast<std::int32_t>(split.feature);
        model.nodes[id].threshold = split.threshold;
        const std::int32_t l = grow(model, std::move(left), depth + 1);
        const std::int32_t r = grow(model, std::move(right), depth + 1);
        model.nodes[id].left = l;
        model.nodes[id].right = r;
        return id;
    }

    std::vector<std::size_t> candidate_features() const {
        const std::size_t d = x_.cols();
        std::vector<std::size_t> feats(d);
        std::iota(feats.begin(), feats.end(), 0);
        if (params_.mtry == 0 || params_.mtry >= d || rng_ == nullptr) return feats;
        for (std::size_t i = 0; i < params_.mtry; ++i) {
            const std::size_t j = i + static_cast<std::size_t>(rng_->below(d - i));
            std::swap(feats[i], feats[j]);
        }
        feats.resize(params_.mtry);
        std::sort(feats.begin(), feats.end());
        return feats;
    }

    Split best_split(const std::vector<std::size_t>& rows, double total_w, double pos_w) {
        Split best;
        std::vector<std::pair<double, std::size_t>> vals(rows.size());
        for (const std::size_t f : candidate_features()) {
            for (std::size_t i = 0; i < rows.size(); ++i) vals[i] = {x_(rows[i], f), rows[i]};
            std::sort(vals.begin(), vals.end());

            double wl = 0.0, pl = 0.0;
            for (std::size_t i = 0; i + 1 < vals.size(); ++i) {
                const std::size_t r = vals[i].second;
                wl += w_[r];
                pl += w_[r] * y_[r];
                if (vals[i].first == vals[i + 1].first) continue;
                const double wr = total_w - wl;
                if (wl < params_.min_leaf_weight || wr < params_.min_leaf_weight) continue;
                const double pr = pos_w - pl;
                const double gini = 2.0 * pl * (wl - pl) / wl + 2.0 * pr * (wr - pr) / wr;
                if (gini < best.impurity) {
                    double t = 0.5 * (vals[i].first + vals[i + 1].first);
                    if (t <= vals[i].first) t = vals[i + 1].first;
                    best = Split{true, f, t, gini};
                }
            }
        }
        return best;
    }

    const Matrix& x_;
    std::span<const int> y_;
    std::span<const double> w_;
    TreeParams params_;
    Rng* rng_;
};

}  // namespace

double TreeModel::score(std::span<const double> x) const {
    std::size_t at = 0;
    while (nodes[at].feature >= 0) {
        const TreeNode& n = nodes[at];
        at = static_cast<std::size_t>(x[static_cast<std::size_t>(n.feature)] < n.threshold
                                          ? n.left
                                          : n.right);
    }
    return nodes[at].score;
}

// ---------------------------------------------------------------------------
// K-nearest neighbours

double KnnModel::score(std::span<const double> x) const {
    const std::size_t n = points.rows();
    std::vector<std::pair<double, std::size_t>> dist(n);
    for (std::size_t i = 0; i < n; ++i) {
        double d2 = 0.0;
        const auto row = points.row(i);
        for (std::size_t j = 0; j < row.size(); ++j) {
            const double diff = row[j] - x[j];
            d2 += diff * diff;
        }
        dist[i] = {d2, i};
    }
    const std::size_t take = std::min(k, n);
    std::partial_sort(dist.begin(), dist.begin() + static_cast<std::ptrdiff_t>(take), dist.end());

    double w_sum = 0.0, w_pos = 0.0;
    for (std::size_t i = 0; i < take; ++i) {
        const std::size_t r = dist[i].second;
        w_sum += weights[r];
        w_pos += weights[r] * labels[r];
    }
    return w_pos / w_sum;
}

// ---------------------------------------------------------------------------
// Gradient-descent linear models (LR and smoothed-hinge SVM)

double LinearModel::score(std::span<const double> x) const {
    double z = bias;
    for (std::size_t j = 0; j < w.size(); ++j) z += w[j] * x[j];
    return sigmoid(z);
}

namespace {

enum class LinearLoss { logistic, smoothed_hinge };

// Per-instance loss and d(loss)/d(raw margin z). For the logistic loss the
// label enters as y in {0,1}; for the hinge as y+- in {-1,+1}.
double loss_and_slope(LinearLoss kind, double z, int y, double& slope) {
    if (kind == LinearLoss::logistic) {
        // log(1 + e^z) - y z, computed stably on both tails
        slope = sigmoid(z) - y;
        return (z > 0.0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z))) - y * z;
    }
    const double ypm = y == 1 ? 1.0 : -1.0;
    const double m = ypm * z;
    if (m >= 1.0) {
        slope = 0.0;
        return 0.0;
    }
    if (m <= 0.0) {
        slope = -ypm;
        return 0.5 - m;
    }
    slope = -(1.0 - m) * ypm;
    return 0.5 * (1.0 - m) * (1.0 - m);
}

LinearModel train_linear(LinearLoss kind, const Matrix& x, std::span<const int> y,
                         std::span<const double> w, const LearnerSpec& spec) {
    const std::size_t n = x.rows(), d = x.cols();
    const double w_total = std::accumulate(w.begin(), w.end(), 0.0);

    LinearModel model;
    model.w.assign(d, 0.0);
    model.bias = 0.0;
    model.converged = false;

    std::vector<double> grad(d + 1);  // grad[d] is the bias slot
    auto evaluate = [&](const std::vector<double>& beta, double bias, std::vector<double>* g) {
        if (g) std::fill(g->begin(), g->end(), 0.0);
        double loss = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            double z = bias;
            const auto row = x.row(i);
            for (std::size_t j = 0; j < d; ++j) z += beta[j] * row[j];
            double slope = 0.0;
            loss += w[i] * loss_and_slope(kind, z, y[i], slope);
            if (g) {
                const double c = w[i] * slope / w_total;
                for (std::size_t j = 0; j < d; ++j) (*g)[j] += c * row[j];
                (*g)[d] += c;
            }
        }
        loss /= w_total;
        for (std::size_t j = 0; j < d; ++j) {
            loss += 0.5 * spec.l2_lambda * beta[j] * beta[j];
            if (g) (*g)[j] += spec.l2_lambda * beta[j];
        }
        return loss;
    };

    double loss = evaluate(model.w, model.bias, &grad);
    std::vector<double> trial(d);
    for (std::size_t iter = 0; iter < spec.gd_iters; ++iter) {
        double g2 = 0.0;
        for (double g : grad) g2 += g * g;
        if (g2 < 1e-14) {
            model.converged = true;
            break;
        }
        double step = spec.gd_step;
        bool accepted = false;
        for (int halving = 0; halving < 40; ++halving) {
            for (std::size_t j = 0; j < d; ++j) trial[j] = model.w[j] - step * grad[j];
            const double trial_bias = model.bias - step * grad[d];
            const double trial_loss = evaluate(trial, trial_bias, nullptr);
            if (trial_loss <= loss - 1e-4 * step * g2) {
                model.w = trial;
                model.bias = trial_bias;
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if (!accepted) {
            model.converged = true;  // no descent direction left at float precision
            break;
        }
        loss = evaluate(model.w, model.bias, &grad);
    }
    return model;
}

}  // namespace

// ---------------------------------------------------------------------------
// AdaBoost with decision stumps

double AdaModel::score(std::span<const double> x) const {
    double margin = 0.0;
    for (std::size_t t = 0; t < stumps.size(); ++t) {
        margin += alphas[t] * (stumps[t].score(x) > 0.5 ? 1.0 : -1.0);
    }
    return sigmoid(margin);
}

namespace {

AdaModel train_ada(const Matrix& x, std::span<const int> y, std::span<const double> w,
                   const LearnerSpec& spec) {
    const std::size_t n = x.rows();
    // Boosting weights start from the sample weights, kept at total n so the
    // stump's minimum-leaf-weight rule sees the usual scale.
    std::vector<double> d(w.begin(), w.end());
    auto renormalize = [&] {
        const double total = std::accumulate(d.begin(), d.end(), 0.0);
        for (double& v : d) v *= static_cast<double>(n) / total;
    };
    renormalize();

    std::vector<std::size_t> rows(n);
    std::iota(rows.begin(), rows.end(), 0);
    TreeParams stump_params;
    stump_params.max_depth = 1;
    stump_params.min_leaf_weight = 1.0;

    AdaModel model;
    for (std::size_t round = 0; round < spec.ada_rounds; ++round) {
        TreeBuilder builder(x, y, d, stump_params, nullptr);
        TreeModel stump = builder.build(rows);

        double err = 0.0, total = 0.0;
        std::vector<char> wrong(n);
        for (std::size_t i = 0; i < n; ++i) {
            const int pred = stump.score(x.row(i)) > 0.5 ? 1 : 0;
            wrong[i] = pred != y[i];
            if (wrong[i]) err += d[i];
            total += d[i];
        }
        err /= total;

        if (err < 1e-12) {
            model.stumps.push_back(std::move(stump));
            model.alphas.push_back(10.0);
            break;
        }
        if (err >= 0.5) break;

        const double alpha = std::log((1.0 - err) / err);
        model.stumps.push_back(std::move(stump));
        model.alphas.push_back(alpha);
        for (std::size_t i = 0; i < n; ++i) {
            if (wrong[i]) d[i] *= std::exp(alpha);
        }
        renormalize();
    }
    return model;
}

}  // namespace

// ---------------------------------------------------------------------------
// Random forest

double ForestModel::score(std::span<const double> x) const {
    double sum = 0.0;
    for (const TreeModel& t : trees) sum += t.score(x);
    return sum / static_cast<double>(trees.size());
}

namespace {

ForestModel train_forest(const Matrix& x, std::span<const int> y, std::span<const double> w,
                         const LearnerSpec& spec) {
    const std::size_t n = x.rows();
    TreeParams params;
    params.max_depth = spec.rf_max_depth;
    params.min_leaf_weight = spec.dt_min_leaf_weight;
    params.mtry = static_cast<std::size_t>(
        std::ceil(std::sqrt(static_cast<double>(x.cols()))));

    Rng rng(spec.seed);
    ForestModel model;
    model.trees.reserve(spec.rf_trees);
    for (std::size_t t = 0; t < spec.rf_trees; ++t) {
        std::vector<std::size_t> sample(n);
        for (std::size_t i = 0; i < n; ++i) sample[i] = static_cast<std::size_t>(rng.below(n));
        std::sort(sample.begin(), sample.end());
        TreeBuilder builder(x, y, w, params, &rng);
        model.trees.push_back(builder.build(std::move(sample)));
    }
    return model;
}

}  // namespace

// ---------------------------------------------------------------------------

double TrainedScorer::score(std::span<const double> x) const {
    if (x.size() != dim) {
        throw Error("score: feature vector has " + std::to_string(x.size()) +
                    " entries, model expects " + std::to_string(dim));
    }
    return std::visit([&](const auto& m) { return m.score(x); }, model);
}

std::vector<double> TrainedScorer::score_rows(const Matrix& x) const {
    std::vector<double> out(x.rows());
    for (std::size_t i = 0; i < x.rows(); ++i) out[i] = score(x.row(i));
    return out;
}

std::vector<double> CalibratedScorer::score_rows(const Matrix& x) const {
    std::vector<double> out(x.rows());
    for (std::size_t i = 0; i < x.rows(); ++i) out[i] = score(x.row(i));
    return out;
}

TrainedScorer train(const LearnerSpec& spec, const Matrix& features, std::span<const int> labels,
                    std::span<const double> sample_weights) {
    const std::size_t n = features.rows();
    if (n == 0) throw Error("train: empty data");
    if (labels.size() != n) throw Error("train: labels/features length mismatch");
    if (!sample_weights.empty() && sample_weights.size() != n) {
        throw Error("train: weights/features length mismatch");
    }

    // Materialize weights and drop zero-weight rows: they contribute nothing
    // to any weighted statistic and would distort KNN neighbourhoods.
    std::vector<std::size_t> keep;
    keep.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double w = sample_weights.empty() ? 1.0 : sample_weights[i];
        if (w < 0.0 || !std::isfinite(w)) throw Error("train: weights must be finite and >= 0");
        if (w > 0.0) keep.push_back(i);
    }
    if (keep.empty()) throw Error("train: weights must not be all zero");

    Matrix x = features.take_rows(keep);
    std::vector<int> y;
    std::vector<double> w;
    y.reserve(keep.size());
    w.reserve(keep.size());
    for (std::size_t i : keep) {
        if (labels[i] != 0 && labels[i] != 1) throw Error("train: labels must be 0 or 1");
        y.push_back(labels[i]);
        w.push_back(sample_weights.empty() ? 1.0 : sample_weights[i]);
    }
    for (std::size_t i = 0; i < x.rows(); ++i) {
        for (std::size_t j = 0; j < x.cols(); ++j) {
            if (!std::isfinite(x(i, j))) {
                throw Error("train: non-finite feature value at row " + std::to_string(keep[i]) +
                            ", column " + std::to_string(j));
            }
        }
    }

    const std::size_t pos = static_cast<std::size_t>(std::accumulate(y.begin(), y.end(), 0));
    if (spec.algorithm != Algo::KNN) {
        if (x.rows() < 2) throw Error("train: need at least 2 instances");
        if (pos == 0 || pos == y.size()) {
            throw Error("train: training data contains a single class");
        }
    }

    TrainedScorer scorer;
    scorer.algorithm = spec.algorithm;
    scorer.dim = x.cols();

    switch (spec.algorithm) {
        case Algo::DT: {
            std::vector<std::size_t> rows(x.rows());
            std::iota(rows.begin(), rows.end(), 0);
            TreeParams params;
            params.max_depth = spec.dt_max_depth;
            params.min_leaf_weight = spec.dt_min_leaf_weight;
            TreeBuilder builder(x, y, w, params, nullptr);
            scorer.model = builder.build(std::move(rows));
            break;
        }
        case Algo::KNN: {
            KnnModel m;
            m.k = spec.knn_k;
            m.points = std::move(x);
            m.labels = std::move(y);
            m.weights = std::move(w);
            scorer.model = std::move(m);
            break;
        }
        case Algo::LR: {
            LinearModel m = train_linear(LinearLoss::logistic, x, y, w, spec);
            scorer.converged = m.converged;
            scorer.model = std::move(m);
            break;
        }
        case Algo::SVM: {
            LinearModel m = train_linear(LinearLoss::smoothed_hinge, x, y, w, spec);
            scorer.converged = m.converged;
            scorer.model = std::move(m);
            break;
        }
        case Algo::Ada: scorer.model = train_ada(x, y, w, spec); break;
        case Algo::RF: scorer.model = train_forest(x, y, w, spec); break;
    }
    return scorer;
}

CalibratedScorer calibrate_from_scores(TrainedScorer model, std::span<const double> raw_scores,
                                       std::span<const int> labels) {
    if (raw_scores.size() != labels.size()) {
        throw Error("calibrate: scores/labels length mismatch");
    }
    std::vector<double> targets(labels.begin(), labels.end());
    CalibratedScorer out;
    out.calibration = pava(raw_scores, targets);
    out.inner = std::move(model);
    return out;
}

CalibratedScorer calibrate_isotonic(TrainedScorer model, const Matrix& features,
                                    std::span<const int> labels) {
    const std::vector<double> raw = model.score_rows(features);
    return calibrate_from_scores(std::move(model), raw, labels);
}

}  // namespace cstack
