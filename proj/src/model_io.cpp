#include "cstack/model_io.hpp"

#include <fstream>

namespace cstack {

namespace {

constexpr int kFormatVersion = 1;

nlohmann::json matrix_to_json(const Matrix& m) {
    std::vector<double> data;
    data.reserve(m.rows() * m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) data.push_back(m(i, j));
    }
    return {{"rows", m.rows()}, {"cols", m.cols()}, {"data", data}};
}

Matrix matrix_from_json(const nlohmann::json& j) {
    Matrix m(j.at("rows").get<std::size_t>(), j.at("cols").get<std::size_t>());
    const auto data = j.at("data").get<std::vector<double>>();
    if (data.size() != m.rows() * m.cols()) throw Error("model document: matrix size mismatch");
    std::size_t at = 0;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t k = 0; k < m.cols(); ++k) m(i, k) = data[at++];
    }
    return m;
}

nlohmann::json tree_to_json(const TreeModel& t) {
    nlohmann::json nodes = nlohmann::json::array();
    for (const TreeNode& n : t.nodes) {
        nodes.push_back({n.feature, n.threshold, n.score, n.left, n.right});
    }
    return {{"nodes", nodes}};
}

TreeModel tree_from_json(const nlohmann::json& j) {
    TreeModel t;
    for (const auto& row : j.at("nodes")) {
        TreeNode n;
        n.feature = row.at(0).get<std::int32_t>();
        n.threshold = row.at(1).get<double>();
        n.score = row.at(2).get<double>();
        n.left = row.at(3).get<std::int32_t>();
        n.right = row.at(4).get<std::int32_t>();
        t.nodes.push_back(n);
    }
    if (t.nodes.empty()) throw Error("model document: tree has no nodes");
    return t;
}

nlohmann::json isotonic_to_json(const IsotonicFit& f) {
    return {{"breakpoints", f.breakpoints}, {"values", f.values}};
}

IsotonicFit isotonic_from_json(const nlohmann::json& j) {
    IsotonicFit f;
    f.breakpoints = j.at("breakpoints").get<std::vector<double>>();
    f.values = j.at("values").get<std::vector<double>>();
    if (f.breakpoints.size() != f.values.size()) {
        throw Error("model document: isotonic arrays differ in length");
    }
    return f;
}

}  // namespace

nlohmann::json scorer_to_json(const TrainedScorer& scorer) {
    nlohmann::json doc{{"format", "stacked-cost-model"},
                       {"version", kFormatVersion},
                       {"algorithm", algo_name(scorer.algorithm)},
                       {"dim", scorer.dim},
                       {"converged", scorer.converged}};
    switch (scorer.algorithm) {
        case Algo::DT: doc["tree"] = tree_to_json(std::get<TreeModel>(scorer.model)); break;
        case Algo::KNN: {
            const auto& m = std::get<KnnModel>(scorer.model);
            doc["knn"] = {{"k", m.k},
                          {"points", matrix_to_json(m.points)},
                          {"labels", m.labels},
                          {"weights", m.weights}};
            break;
        }
        case Algo::LR:
        case Algo::SVM: {
            const auto& m = std::get<LinearModel>(scorer.model);
            doc["linear"] = {{"w", m.w}, {"bias", m.bias}, {"converged", m.converged}};
            break;
        }
        case Algo::Ada: {
            const auto& m = std::get<AdaModel>(scorer.model);
            nlohmann::json stumps = nlohmann::json::array();
            for (const TreeModel& t : m.stumps) stumps.push_back(tree_to_json(t));
            doc["ada"] = {{"stumps", stumps}, {"alphas", m.alphas}};
            break;
        }
        case Algo::RF: {
            const auto& m = std::get<ForestModel>(scorer.model);
            nlohmann::json trees = nlohmann::json::array();
            for (const TreeModel& t : m.trees) trees.push_back(tree_to_json(t));
            doc["forest"] = {{"trees", trees}};
            break;
        }
    }
    return doc;
}

TrainedScorer scorer_from_json(const nlohmann::json& doc) {
    if (doc.value("format", "") != "stacked-cost-model") {
        throw Error("model document: unknown format tag");
    }
    if (doc.value("version", 0) != kFormatVersion) {
        throw Error("model document: unsupported version " +
                    std::to_string(doc.value("version", 0)));
    }
    TrainedScorer scorer;
    scorer.algorithm = algo_from_name(doc.at("algorithm").get<std::string>());
    scorer.dim = doc.at("dim").get<std::size_t>();
    scorer.converged = doc.at("converged").get<bool>();
    switch (scorer.algorithm) {
        case Algo::DT: scorer.model = tree_from_json(doc.at("tree")); break;
        case Algo::KNN: {
            const auto& j = doc.at("knn");
            KnnModel m;
            m.k = j.at("k").get<std::size_t>();
            m.points = matrix_from_json(j.at("points"));
            m.labels = j.at("labels").get<std::vector<int>>();
            m.weights = j.at("weights").get<std::vector<double>>();
            if (m.labels.size() != m.points.rows() || m.weights.size() != m.points.rows()) {
                throw Error("model document: KNN store length mismatch");
            }
            scorer.model = std::move(m);
            break;
        }
        case Algo::LR:
        case Algo::SVM: {
            const auto& j = doc.at("linear");
            LinearModel m;
            m.w = j.at("w").get<std::vector<double>>();
            m.bias = j.at("bias").get<double>();
            m.converged = j.at("converged").get<bool>();
            scorer.model = std::move(m);
            break;
        }
        case Algo::Ada: {
            const auto& j = doc.at("ada");
            AdaModel m;
            for (const auto& t : j.at("stumps")) m.stumps.push_back(tree_from_json(t));
            m.alphas = j.at("alphas").get<std::vector<double>>();
            if (m.alphas.size() != m.stumps.size()) {
                throw Error("model document: ada stump/alpha mismatch");
            }
            scorer.model = std::move(m);
            break;
        }
        case Algo::RF: {
            ForestModel m;
            for (const auto& t : doc.at("forest").at("trees")) {
                m.trees.push_back(tree_from_json(t));
            }
            if (m.trees.empty()) throw Error("model document: empty forest");
            scorer.model = std::move(m);
            break;
        }
    }
    return scorer;
}

nlohmann::json calibrated_to_json(const CalibratedScorer& scorer) {
    return {{"scorer", scorer_to_json(scorer.inner)},
            {"calibration", isotonic_to_json(scorer.calibration)}};
}

CalibratedScorer calibrated_from_json(const nlohmann::json& doc) {
    CalibratedScorer out;
    out.inner = scorer_from_json(doc.at("scorer"));
    out.calibration = isotonic_from_json(doc.at("calibration"));
    return out;
}

nlohmann::json stacked_to_json(const StackedModel& model) {
    nlohmann::json level0 = nlohmann::json::array();
    for (const CalibratedScorer& s : model.level0) level0.push_back(calibrated_to_json(s));
    nlohmann::json doc{{"format", "stacked-cost-model"},
                       {"version", kFormatVersion},
                       {"setup", setup_alias(model.setup_type, model.transform)},
                       {"level0", level0},
                       {"epsilons", model.epsilons},
                       {"weights", model.weights},
                       {"level1", scorer_to_json(model.level1)},
                       {"all_converged", model.all_converged}};
    if (model.setup_type != 1) {
        doc["level1_calibration"] = isotonic_to_json(model.level1_calibration);
    }
    return doc;
}

StackedModel stacked_from_json(const nlohmann::json& doc) {
    if (doc.value("format", "") != "stacked-cost-model" ||
        doc.value("version", 0) != kFormatVersion) {
        throw Error("model document: unknown format or version");
    }
    StackedModel model;
    const auto [type, transform] = setup_from_alias(doc.at("setup").get<std::string>());
    model.setup_type = type;
    model.transform = transform;
    for (const auto& s : doc.at("level0")) model.level0.push_back(calibrated_from_json(s));
    model.epsilons = doc.at("epsilons").get<std::vector<double>>();
    model.weights = doc.at("weights").get<std::vector<double>>();
    model.level1 = scorer_from_json(doc.at("level1"));
    model.all_converged = doc.at("all_converged").get<bool>();
    if (model.setup_type != 1) {
        model.level1_calibration = isotonic_from_json(doc.at("level1_calibration"));
    }
    if (model.level0.empty() || model.weights.size() != model.level0.size() ||
        model.epsilons.size() != model.level0.size()) {
        throw Error("model document: level-0 arrays inconsistent");
    }
    return model;
}

void save_model_json(const nlohmann::json& doc, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write file: " + path);
    out << doc.dump(2) << '\n';
}

nlohmann::json load_model_json(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open file: " + path);
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const std::exception& e) {
        throw Error("model document '" + path + "' is not valid JSON: " + e.what());
    }
    return doc;
}

}  // namespace cstack
