#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "cstack/dataset.hpp"

namespace cstack {

/// Instructions for generating per-instance cost matrices when the CSV does
/// not carry cost columns.
struct CostgenDirective {
    enum class Kind { credit, bankruptcy, synthetic_uniform };
    Kind kind = Kind::synthetic_uniform;

    // credit
    std::string credit_line_col;
    double lgd = 0.75;
    double rate_min = 0.06;
    double rate_max = 0.10;

    // bankruptcy
    std::string usage_col;
    std::string margin_col;

    // synthetic_uniform
    double low = 1.0;
    double high = 10.0;

    std::uint64_t seed = 0;

    static CostgenDirective from_json(const nlohmann::json& j);
    nlohmann::json to_json() const;
};

/// Column roles for one CSV file. Every header column must be assigned one of
/// {feature_numeric, feature_categorical, label, c_tp, c_fp, c_fn, c_tn,
/// ignore}. Missing cells are encoded as an empty field or the literal "NA".
struct Schema {
    std::map<std::string, std::string> roles;
    std::map<std::string, int> label_map;  // optional raw-value -> 0/1 mapping
    std::optional<CostgenDirective> costgen;

    static Schema from_json(const nlohmann::json& j);
    static Schema from_file(const std::string& path);
};

/// Minimal RFC-4180-style table: comma separation, optional double-quoting,
/// one header row.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    static CsvTable read_file(const std::string& path);
    std::size_t column_index(const std::string& name) const;
};

Dataset load_csv(const std::string& path, const Schema& schema, const std::string& dataset_name = "");

/// Write a dataset back out with its cost columns (audit trail for generated
/// costs).
void write_csv(const Dataset& ds, const std::string& path);

}  // namespace cstack
