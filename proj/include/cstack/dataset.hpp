#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "cstack/common.hpp"

namespace cstack {

/// The four cost entries of one instance's 2x2 cost matrix.
struct InstanceCosts {
    double tp = 0.0;
    double fp = 0.0;
    double fn = 0.0;
    double tn = 0.0;

    /// c_fp > c_tn and c_fn > c_tp; without this the cost-sensitive
    /// threshold is undefined.
    bool reasonable() const {
        return std::isfinite(tp) && std::isfinite(fp) && std::isfinite(fn) && std::isfinite(tn) &&
               tp >= 0.0 && fp >= 0.0 && fn >= 0.0 && tn >= 0.0 && fp > tn && fn > tp;
    }
};

enum class ColumnKind { numeric, categorical };

struct ColumnInfo {
    std::string name;
    ColumnKind kind = ColumnKind::numeric;
    /// Category vocabulary for categorical columns; the cell value in the
    /// feature matrix is an index into this list. Missing categorical cells
    /// are mapped to the reserved "<missing>" category at load time.
    std::vector<std::string> categories;
};

struct Dataset {
    std::string name;
    Matrix features;  // n x d; numeric value or category index; NaN = missing numeric
    std::vector<int> labels;
    std::vector<InstanceCosts> costs;
    std::vector<ColumnInfo> columns;

    std::size_t n() const { return labels.size(); }
    std::size_t dim() const { return columns.size(); }

    std::size_t positives() const {
        std::size_t p = 0;
        for (int y : labels) p += static_cast<std::size_t>(y);
        return p;
    }
    double prevalence() const { return n() == 0 ? 0.0 : static_cast<double>(positives()) / n(); }

    /// Throws Error if any structural invariant fails.
    void validate() const;

    Dataset subset(std::span<const std::size_t> idx) const;
};

}  // namespace cstack
