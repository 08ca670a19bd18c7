#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <limits>
#include <vector>

#include "cstack/learners.hpp"

using namespace cstack;

namespace {

Matrix make_matrix(const std::vector<std::vector<double>>& rows) {
    Matrix m(rows.size(), rows.empty() ? 0 : rows[0].size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        for (std::size_t j = 0; j < rows[i].size(); ++j) m(i, j) = rows[i][j];
    }
    return m;
}

/// Linearly separable 1-D data with `per_side` rows per class.
void separable(std::size_t per_side, Matrix& x, std::vector<int>& y) {
    x = Matrix(2 * per_side, 1);
    y.assign(2 * per_side, 0);
    for (std::size_t i = 0; i < per_side; ++i) {
        x(i, 0) = -2.0 - static_cast<double>(i) * 0.1;
        x(per_side + i, 0) = 2.0 + static_cast<double>(i) * 0.1;
        y[per_side + i] = 1;
    }
}

Matrix random_matrix(std::size_t n, std::size_t d, Rng& rng) {
    Matrix x(n, d);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < d; ++j) x(i, j) = rng.normal();
    }
    return x;
}

}  // namespace

TEST_CASE("nearest neighbour with k=1 echoes the closest label") {
    const Matrix x = make_matrix({{0.0}, {1.0}, {10.0}});
    const std::vector<int> y{0, 1, 1};
    LearnerSpec spec;
    spec.algorithm = Algo::KNN;
    spec.knn_k = 1;
    const TrainedScorer knn = train(spec, x, y);
    CHECK(knn.score(std::vector<double>{0.1}) == 0.0);
    CHECK(knn.score(std::vector<double>{0.9}) == 1.0);
    CHECK(knn.score(std::vector<double>{25.0}) == 1.0);
}

TEST_CASE("nearest neighbour caps k at the sample size and averages") {
    const Matrix x = make_matrix({{0.0}, {1.0}, {2.0}});
    const std::vector<int> y{0, 1, 1};
    LearnerSpec spec;
    spec.algorithm = Algo::KNN;  // default k = 11 > n
    const TrainedScorer knn = train(spec, x, y);
    CHECK(knn.score(std::vector<double>{1.0}) == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("nearest neighbour tolerates a single-class sample") {
    const Matrix x = make_matrix({{0.0}, {1.0}});
    const std::vector<int> y{1, 1};
    LearnerSpec spec;
    spec.algorithm = Algo::KNN;
    const TrainedScorer knn = train(spec, x, y);
    CHECK(knn.score(std::vector<double>{0.5}) == 1.0);
}

TEST_CASE("weighted neighbours vote by weight") {
    const Matrix x = make_matrix({{0.0}, {0.2}});
    const std::vector<int> y{0, 1};
    const std::vector<double> w{3.0, 1.0};
    LearnerSpec spec;
    spec.algorithm = Algo::KNN;
    spec.knn_k = 2;
    const TrainedScorer knn = train(spec, x, y, w);
    CHECK(knn.score(std::vector<double>{0.1}) == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("a depth-1 tree finds a perfect axis split") {
    Matrix x;
    std::vector<int> y;
    separable(6, x, y);
    LearnerSpec spec;
    spec.algorithm = Algo::DT;
    spec.dt_max_depth = 1;
    const TrainedScorer dt = train(spec, x, y);
    CHECK(dt.score(std::vector<double>{-3.0}) == 0.0);
    CHECK(dt.score(std::vector<double>{3.0}) == 1.0);
    // The split threshold is the midpoint between the two sides.
    const auto& tree = std::get<TreeModel>(dt.model);
    REQUIRE(tree.nodes.size() == 3);
    CHECK(tree.nodes[0].feature == 0);
    CHECK(tree.nodes[0].threshold > -2.0);
    CHECK(tree.nodes[0].threshold < 2.0);
}

TEST_CASE("tree leaves respect the minimum summed weight") {
    // 4 rows per side with min leaf weight 5 cannot split at all.
    Matrix x;
    std::vector<int> y;
    separable(4, x, y);
    LearnerSpec spec;
    spec.algorithm = Algo::DT;
    const TrainedScorer dt = train(spec, x, y);
    const auto& tree = std::get<TreeModel>(dt.model);
    REQUIRE(tree.nodes.size() == 1);
    CHECK(tree.nodes[0].feature == -1);
    CHECK(dt.score(std::vector<double>{-3.0}) == 0.5);
}

TEST_CASE("duplicating a row equals doubling its weight for trees") {
    const Matrix x_dup = make_matrix({{0.0}, {0.0}, {1.0}, {2.0}, {3.0}, {4.0}, {5.0}, {6.0},
                                      {7.0}, {8.0}, {9.0}});
    const std::vector<int> y_dup{0, 0, 0, 0, 0, 1, 1, 1, 1, 1, 1};
    const Matrix x_w = make_matrix({{0.0}, {1.0}, {2.0}, {3.0}, {4.0}, {5.0}, {6.0}, {7.0},
                                    {8.0}, {9.0}});
    const std::vector<int> y_w{0, 0, 0, 0, 1, 1, 1, 1, 1, 1};
    const std::vector<double> w{2.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0};

    LearnerSpec spec;
    spec.algorithm = Algo::DT;
    const TrainedScorer a = train(spec, x_dup, y_dup);
    const TrainedScorer b = train(spec, x_w, y_w, w);
    for (double v = -1.0; v <= 10.0; v += 0.25) {
        CHECK(a.score(std::vector<double>{v}) == b.score(std::vector<double>{v}));
    }
}

TEST_CASE("logistic regression separates and orders scores") {
    Matrix x;
    std::vector<int> y;
    separable(10, x, y);
    LearnerSpec spec;
    spec.algorithm = Algo::LR;
    const TrainedScorer lr = train(spec, x, y);
    CHECK(lr.score(std::vector<double>{-2.5}) < 0.5);
    CHECK(lr.score(std::vector<double>{2.5}) > 0.5);
    CHECK(lr.score(std::vector<double>{3.0}) > lr.score(std::vector<double>{1.0}));
    CHECK(lr.score(std::vector<double>{-3.0}) < lr.score(std::vector<double>{-1.0}));
}

TEST_CASE("duplicating a row equals doubling its weight for logistic regression") {
    Matrix x_dup = make_matrix(
        {{-2.0}, {-2.0}, {-1.5}, {-0.5}, {0.5}, {1.5}, {2.0}, {2.5}});
    const std::vector<int> y_dup{0, 0, 0, 0, 1, 1, 1, 1};
    Matrix x_w = make_matrix({{-2.0}, {-1.5}, {-0.5}, {0.5}, {1.5}, {2.0}, {2.5}});
    const std::vector<int> y_w{0, 0, 0, 1, 1, 1, 1};
    const std::vector<double> w{2.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0};

    LearnerSpec spec;
    spec.algorithm = Algo::LR;
    const TrainedScorer a = train(spec, x_dup, y_dup);
    const TrainedScorer b = train(spec, x_w, y_w, w);
    for (double v = -3.0; v <= 3.0; v += 0.5) {
        CHECK(a.score(std::vector<double>{v}) ==
              doctest::Approx(b.score(std::vector<double>{v})).epsilon(1e-6));
    }
}

TEST_CASE("the margin learner separates like the logistic one") {
    Matrix x;
    std::vector<int> y;
    separable(10, x, y);
    LearnerSpec spec;
    spec.algorithm = Algo::SVM;
    const TrainedScorer svm = train(spec, x, y);
    CHECK(svm.score(std::vector<double>{-2.5}) < 0.5);
    CHECK(svm.score(std::vector<double>{2.5}) > 0.5);
}

TEST_CASE("gradient descent reports non-convergence under a tiny iteration cap") {
    Rng rng(3);
    Matrix x = random_matrix(60, 4, rng);
    std::vector<int> y;
    for (std::size_t i = 0; i < 60; ++i) y.push_back(rng.below(2) ? 1 : 0);
    LearnerSpec spec;
    spec.algorithm = Algo::LR;
    spec.gd_iters = 1;
    const TrainedScorer lr = train(spec, x, y);
    CHECK_FALSE(lr.converged);
    spec.gd_iters = 500;
}

TEST_CASE("boosting drives a separable sample to one decisive stump") {
    Matrix x;
    std::vector<int> y;
    separable(6, x, y);
    LearnerSpec spec;
    spec.algorithm = Algo::Ada;
    const TrainedScorer ada = train(spec, x, y);
    const auto& model = std::get<AdaModel>(ada.model);
    CHECK(model.stumps.size() == 1);  // zero-error stump short-circuits
    CHECK(ada.score(std::vector<double>{-3.0}) < 0.5);
    CHECK(ada.score(std::vector<double>{3.0}) > 0.5);
}

TEST_CASE("boosting improves on noisy two-cluster data") {
    Rng rng(9);
    Matrix x(100, 2);
    std::vector<int> y(100);
    for (std::size_t i = 0; i < 100; ++i) {
        y[i] = i % 2 != 0;
        x(i, 0) = (y[i] ? 1.0 : -1.0) + rng.normal() * 0.6;
        x(i, 1) = rng.normal();
    }
    LearnerSpec spec;
    spec.algorithm = Algo::Ada;
    const TrainedScorer ada = train(spec, x, y);
    std::size_t correct = 0;
    for (std::size_t i = 0; i < 100; ++i) {
        correct += (ada.score(x.row(i)) > 0.5) == (y[i] == 1);
    }
    CHECK(correct >= 80);
}

TEST_CASE("the forest averages its member trees") {
    Rng rng(21);
    Matrix x = random_matrix(80, 3, rng);
    std::vector<int> y;
    for (std::size_t i = 0; i < 80; ++i) y.push_back(x(i, 0) + 0.3 * rng.normal() > 0 ? 1 : 0);
    LearnerSpec spec;
    spec.algorithm = Algo::RF;
    spec.rf_trees = 25;
    const TrainedScorer rf = train(spec, x, y);
    const auto& forest = std::get<ForestModel>(rf.model);
    REQUIRE(forest.trees.size() == 25);
    const std::vector<double> probe{0.4, -0.2, 0.1};
    double mean = 0.0;
    for (const TreeModel& tree : forest.trees) mean += tree.score(probe);
    mean /= 25.0;
    CHECK(rf.score(probe) == doctest::Approx(mean).epsilon(1e-12));
}

TEST_CASE("every learner is deterministic for a fixed seed and scores within [0,1]") {
    Rng rng(33);
    Matrix x = random_matrix(60, 4, rng);
    std::vector<int> y;
    for (std::size_t i = 0; i < 60; ++i) {
        y.push_back(x(i, 0) - x(i, 2) + 0.5 * rng.normal() > 0 ? 1 : 0);
    }
    Matrix probes = random_matrix(25, 4, rng);

    for (Algo algo : {Algo::DT, Algo::KNN, Algo::LR, Algo::SVM, Algo::Ada, Algo::RF}) {
        LearnerSpec spec;
        spec.algorithm = algo;
        spec.seed = 1234;
        const TrainedScorer first = train(spec, x, y);
        const TrainedScorer second = train(spec, x, y);
        const std::vector<double> s1 = first.score_rows(probes);
        const std::vector<double> s2 = second.score_rows(probes);
        CHECK(s1 == s2);
        for (double s : s1) {
            CHECK(s >= 0.0);
            CHECK(s <= 1.0);
        }
    }
}

TEST_CASE("zero-weight rows are dropped before training") {
    Matrix x;
    std::vector<int> y;
    separable(6, x, y);
    // Append two poisoned rows with weight zero.
    Matrix x_plus(x.rows() + 2, 1);
    std::vector<int> y_plus = y;
    std::vector<double> w(x.rows() + 2, 1.0);
    for (std::size_t i = 0; i < x.rows(); ++i) x_plus(i, 0) = x(i, 0);
    x_plus(x.rows(), 0) = -2.0;
    x_plus(x.rows() + 1, 0) = 2.0;
    y_plus.push_back(1);  // contradicts its side
    y_plus.push_back(0);
    w[x.rows()] = 0.0;
    w[x.rows() + 1] = 0.0;

    for (Algo algo : {Algo::DT, Algo::LR, Algo::SVM, Algo::Ada, Algo::RF, Algo::KNN}) {
        LearnerSpec spec;
        spec.algorithm = algo;
        spec.seed = 5;
        const TrainedScorer base = train(spec, x, y);
        const TrainedScorer padded = train(spec, x_plus, y_plus, w);
        for (double v : {-2.5, -1.0, 1.0, 2.5}) {
            CHECK(base.score(std::vector<double>{v}) == padded.score(std::vector<double>{v}));
        }
    }
}

TEST_CASE("training rejects degenerate input") {
    const Matrix x = make_matrix({{0.0}, {1.0}});
    LearnerSpec spec;
    spec.algorithm = Algo::DT;
    CHECK_THROWS_AS(train(spec, x, std::vector<int>{1, 1}), Error);  // one class
    CHECK_THROWS_AS(train(spec, make_matrix({{0.0}}), std::vector<int>{1}), Error);  // < 2 rows

    Matrix bad = make_matrix({{0.0}, {1.0}});
    bad(1, 0) = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(train(spec, bad, std::vector<int>{0, 1}), Error);

    CHECK_THROWS_AS(train(spec, x, std::vector<int>{0}), Error);  // length mismatch
    CHECK_THROWS_AS(train(spec, x, std::vector<int>{0, 1}, std::vector<double>{1.0}), Error);
}

TEST_CASE("scoring rejects dimension mismatches") {
    Matrix x;
    std::vector<int> y;
    separable(6, x, y);
    LearnerSpec spec;
    spec.algorithm = Algo::DT;
    const TrainedScorer dt = train(spec, x, y);
    CHECK_THROWS_AS(dt.score(std::vector<double>{1.0, 2.0}), Error);
}

TEST_CASE("calibration composes the isotonic fit with the raw score") {
    Matrix x;
    std::vector<int> y;
    separable(10, x, y);
    LearnerSpec spec;
    spec.algorithm = Algo::LR;
    TrainedScorer lr = train(spec, x, y);

    std::vector<double> raw;
    for (std::size_t i = 0; i < x.rows(); ++i) raw.push_back(lr.score(x.row(i)));
    const CalibratedScorer calibrated = calibrate_from_scores(std::move(lr), raw, y);
    for (std::size_t i = 0; i < x.rows(); ++i) {
        const double inner = calibrated.inner.score(x.row(i));
        CHECK(calibrated.score(x.row(i)) == calibrated.calibration.apply(inner));
    }
    // Separable data with monotone raw scores calibrates to hard 0/1 steps.
    CHECK(calibrated.score(std::vector<double>{-5.0}) == 0.0);
    CHECK(calibrated.score(std::vector<double>{5.0}) == 1.0);
}
