#pragma once

#include <span>
#include <string>
#include <vector>

#include "cstack/dataset.hpp"

namespace cstack {

/// Robust rescaling by nearest-rank quartiles of the non-missing training
/// values: (x - median) / (q75 - q25). A degenerate IQR (q75 == q25) uses
/// divisor 1 so constant columns map to 0.
struct QuantileScaler {
    double median = 0.0;
    double q25 = 0.0;
    double q75 = 0.0;

    static QuantileScaler fit(std::span<const double> values, const std::string& name = "");
    double divisor() const { return q75 > q25 ? q75 - q25 : 1.0; }
    double apply(double x) const { return (x - median) / divisor(); }
};

/// Fills missing (NaN) entries with the training median; even-length samples
/// use the mean of the middle pair.
struct MedianImputer {
    double median = 0.0;

    static MedianImputer fit(std::span<const double> values, const std::string& name = "");
    double apply(double x) const;
};

/// Weight-of-evidence coding for categorical columns stored as category
/// indices. With pseudo-count s:
///   WoE(c) = ln( ((pos_c + s) / (POS + 2s)) / ((neg_c + s) / (NEG + 2s)) )
/// Categories absent from the training rows (including indices outside the
/// fitted vocabulary) map to 0 at apply time.
struct WoeEncoder {
    std::vector<double> table;

    static WoeEncoder fit(std::span<const double> codes, std::span<const int> labels,
                          std::size_t n_categories, double smoothing = 0.5,
                          const std::string& name = "");
    double apply(double code) const;
};

/// Per-column preprocessing fitted on the training rows only: numeric columns
/// are median-imputed then quantile-scaled, categorical columns are
/// WoE-encoded. The output matrix is fully numeric with no missing entries.
struct Preprocessor {
    struct Column {
        ColumnKind kind = ColumnKind::numeric;
        MedianImputer imputer;
        QuantileScaler scaler;
        WoeEncoder woe;
    };
    std::vector<Column> columns;

    static Preprocessor fit(const Dataset& ds, std::span<const std::size_t> train_idx,
                            double woe_smoothing = 0.5);
    Matrix transform(const Matrix& x) const;
};

}  // namespace cstack
