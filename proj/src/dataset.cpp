#include "cstack/dataset.hpp"

namespace cstack {

void Dataset::validate() const {
    const std::size_t rows = labels.size();
    if (features.rows() != rows) throw Error(name + ": feature row count does not match labels");
    if (costs.size() != rows) throw Error(name + ": costs length does not match instance count");
    if (features.cols() != columns.size()) {
        throw Error(name + ": column metadata does not match feature width");
    }
    for (std::size_t i = 0; i < rows; ++i) {
        if (labels[i] != 0 && labels[i] != 1) {
            throw Error(name + ": label not in {0,1} at row " + std::to_string(i));
        }
        if (!costs[i].reasonable()) {
            throw Error(name + ": cost reasonableness violated at row " + std::to_string(i));
        }
    }
    for (std::size_t j = 0; j < columns.size(); ++j) {
        if (columns[j].kind != ColumnKind::categorical) continue;
        for (std::size_t i = 0; i < rows; ++i) {
            const double v = features(i, j);
            if (std::isnan(v) || v < 0.0 || v >= static_cast<double>(columns[j].categories.size()) ||
                v != std::floor(v)) {
                throw Error(name + ": column '" + columns[j].name +
                            "' holds an invalid category index at row " + std::to_string(i));
            }
        }
    }
}

Dataset Dataset::subset(std::span<const std::size_t> idx) const {
    Dataset out;
    out.name = name;
    out.columns = columns;
    out.features = features.take_rows(idx);
    out.labels.reserve(idx.size());
    out.costs.reserve(idx.size());
    for (std::size_t i : idx) {
        out.labels.push_back(labels[i]);
        out.costs.push_back(costs[i]);
    }
    return out;
}

}  // namespace cstack
