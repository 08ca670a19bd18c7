#include "cstack/transforms.hpp"

#include <algorithm>
#include <cmath>

namespace cstack {

namespace {

std::vector<double> sorted_present(std::span<const double> values, const std::string& name) {
    std::vector<double> v;
    v.reserve(values.size());
    for (double x : values) {
        if (!std::isnan(x)) v.push_back(x);
    }
    if (v.empty()) {
        throw Error(name.empty() ? std::string("all values missing")
                                 : "column '" + name + "': all values missing");
    }
    std::sort(v.begin(), v.end());
    return v;
}

// Nearest-rank quantile: the value at 1-based index ceil(p * m).
double nearest_rank(const std::vector<double>& sorted, double p) {
    const std::size_t m = sorted.size();
    std::size_t rank = static_cast<std::size_t>(std::ceil(p * static_cast<double>(m)));
    if (rank < 1) rank = 1;
    if (rank > m) rank = m;
    return sorted[rank - 1];
}

}  // namespace

QuantileScaler QuantileScaler::fit(std::span<const double> values, const std::string& name) {
    const std::vector<double> v = sorted_present(values, name);
    QuantileScaler s;
    s.q25 = nearest_rank(v, 0.25);
    s.median = nearest_rank(v, 0.50);
    s.q75 = nearest_rank(v, 0.75);
    return s;
}

MedianImputer MedianImputer::fit(std::span<const double> values, const std::string& name) {
    const std::vector<double> v = sorted_present(values, name);
    MedianImputer m;
    const std::size_t mid = v.size() / 2;
    m.median = (v.size() % 2 == 1) ? v[mid] : 0.5 * (v[mid - 1] + v[mid]);
    return m;
}

double MedianImputer::apply(double x) const { return std::isnan(x) ? median : x; }

WoeEncoder WoeEncoder::fit(std::span<const double> codes, std::span<const int> labels,
                           std::size_t n_categories, double smoothing, const std::string& name) {
    if (codes.size() != labels.size()) throw Error("WoE fit: codes/labels length mismatch");
    if (smoothing < 0.0) throw Error("WoE fit: smoothing must be >= 0");

    std::vector<double> pos(n_categories, 0.0), neg(n_categories, 0.0);
    double total_pos = 0.0, total_neg = 0.0;
    for (std::size_t i = 0; i < codes.size(); ++i) {
        const auto c = static_cast<std::size_t>(codes[i]);
        if (std::isnan(codes[i]) || c >= n_categories) {
            throw Error("WoE fit: category index out of range at row " + std::to_string(i));
        }
        if (labels[i] == 1) {
            pos[c] += 1.0;
            total_pos += 1.0;
        } else {
            neg[c] += 1.0;
            total_neg += 1.0;
        }
    }
    if (total_pos == 0.0 || total_neg == 0.0) {
        throw Error((name.empty() ? std::string("WoE fit") : "column '" + name + "'") +
                    ": training fold has a single class, WoE undefined");
    }

    WoeEncoder enc;
    enc.table.resize(n_categories, 0.0);
    const double s = smoothing;
    for (std::size_t c = 0; c < n_categories; ++c) {
        if (pos[c] + neg[c] == 0.0) continue;  // unseen in training -> 0
        const double rate_pos = (pos[c] + s) / (total_pos + 2.0 * s);
        const double rate_neg = (neg[c] + s) / (total_neg + 2.0 * s);
        enc.table[c] = std::log(rate_pos / rate_neg);
    }
    return enc;
}

double WoeEncoder::apply(double code) const {
    if (std::isnan(code) || code < 0.0) return 0.0;
    const auto c = static_cast<std::size_t>(code);
    return c < table.size() ? table[c] : 0.0;
}

Preprocessor Preprocessor::fit(const Dataset& ds, std::span<const std::size_t> train_idx,
                               double woe_smoothing) {
    Preprocessor pre;
    pre.columns.resize(ds.dim());

    std::vector<int> train_labels;
    train_labels.reserve(train_idx.size());
    for (std::size_t i : train_idx) train_labels.push_back(ds.labels[i]);

    std::vector<double> col(train_idx.size());
    for (std::size_t j = 0; j < ds.dim(); ++j) {
        for (std::size_t r = 0; r < train_idx.size(); ++r) col[r] = ds.features(train_idx[r], j);
        Column& out = pre.columns[j];
        out.kind = ds.columns[j].kind;
        if (out.kind == ColumnKind::numeric) {
            out.imputer = MedianImputer::fit(col, ds.columns[j].name);
            out.scaler = QuantileScaler::fit(col, ds.columns[j].name);
        } else {
            out.woe = WoeEncoder::fit(col, train_labels, ds.columns[j].categories.size(),
                                      woe_smoothing, ds.columns[j].name);
        }
    }
    return pre;
}

Matrix Preprocessor::transform(const Matrix& x) const {
    if (x.cols() != columns.size()) throw Error("preprocessor: column count mismatch");
    Matrix out(x.rows(), x.cols());
    for (std::size_t i = 0; i < x.rows(); ++i) {
        for (std::size_t j = 0; j < x.cols(); ++j) {
            const Column& c = columns[j];
            out(i, j) = c.kind == ColumnKind::numeric ? c.scaler.apply(c.imputer.apply(x(i, j)))
                                                      : c.woe.apply(x(i, j));
        }
    }
    return out;
}

}  // namespace cstack
