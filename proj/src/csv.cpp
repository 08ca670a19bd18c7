#include "cstack/csv.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "cstack/costgen.hpp"

namespace cstack {

namespace {

const std::set<std::string> kRoles = {"feature_numeric", "feature_categorical", "label",
                                      "c_tp", "c_fp", "c_fn", "c_tn", "ignore"};

bool is_missing(const std::string& field) { return field.empty() || field == "NA"; }

double parse_number(const std::string& field, const std::string& what, std::size_t row) {
    try {
        std::size_t consumed = 0;
        const double v = std::stod(field, &consumed);
        if (consumed != field.size()) throw std::invalid_argument(field);
        return v;
    } catch (const std::exception&) {
        throw Error("cannot parse " + what + " value '" + field + "' at row " + std::to_string(row));
    }
}

}  // namespace

CostgenDirective CostgenDirective::from_json(const nlohmann::json& j) {
    CostgenDirective d;
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "credit") {
        d.kind = Kind::credit;
        d.credit_line_col = j.at("credit_line").get<std::string>();
        d.lgd = j.value("lgd", 0.75);
        d.rate_min = j.value("rate_min", 0.06);
        d.rate_max = j.value("rate_max", 0.10);
    } else if (kind == "bankruptcy") {
        d.kind = Kind::bankruptcy;
        d.usage_col = j.at("usage_90d").get<std::string>();
        d.margin_col = j.at("annual_margin").get<std::string>();
    } else if (kind == "synthetic_uniform") {
        d.kind = Kind::synthetic_uniform;
        d.low = j.value("low", 1.0);
        d.high = j.value("high", 10.0);
    } else {
        throw Error("unknown costgen kind '" + kind +
                    "' (expected credit, bankruptcy or synthetic_uniform)");
    }
    d.seed = j.value("seed", std::uint64_t{0});
    return d;
}

nlohmann::json CostgenDirective::to_json() const {
    nlohmann::json j;
    switch (kind) {
        case Kind::credit:
            j["kind"] = "credit";
            j["credit_line"] = credit_line_col;
            j["lgd"] = lgd;
            j["rate_min"] = rate_min;
            j["rate_max"] = rate_max;
            break;
        case Kind::bankruptcy:
            j["kind"] = "bankruptcy";
            j["usage_90d"] = usage_col;
            j["annual_margin"] = margin_col;
            break;
        case Kind::synthetic_uniform:
            j["kind"] = "synthetic_uniform";
            j["low"] = low;
            j["high"] = high;
            break;
    }
    j["seed"] = seed;
    return j;
}

Schema Schema::from_json(const nlohmann::json& j) {
    Schema s;
    if (!j.contains("columns") || !j.at("columns").is_object()) {
        throw Error("schema: missing 'columns' object");
    }
    for (const auto& [name, role] : j.at("columns").items()) {
        const std::string r = role.get<std::string>();
        if (!kRoles.count(r)) {
            throw Error("schema: unknown role '" + r + "' for column '" + name + "'");
        }
        s.roles[name] = r;
    }
    if (j.contains("label_map")) {
        for (const auto& [raw, v] : j.at("label_map").items()) {
            const int y = v.is_string() ? std::stoi(v.get<std::string>()) : v.get<int>();
            if (y != 0 && y != 1) throw Error("schema: label_map values must be 0 or 1");
            s.label_map[raw] = y;
        }
    }
    if (j.contains("costgen")) s.costgen = CostgenDirective::from_json(j.at("costgen"));
    return s;
}

Schema Schema::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open schema file: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw Error("schema '" + path + "' is not valid JSON: " + e.what());
    }
    return from_json(j);
}

CsvTable CsvTable::read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    const std::string text = buf.str();

    CsvTable table;
    std::vector<std::string> record;
    std::string field;
    bool quoted = false;
    bool rec_has_content = false;

    auto end_field = [&] {
        record.push_back(field);
        field.clear();
    };
    auto end_record = [&] {
        end_field();
        if (table.header.empty()) {
            table.header = std::move(record);
        } else {
            table.rows.push_back(std::move(record));
        }
        record = {};
        rec_has_content = false;
    };

    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < text.size() && text[i + 1] == '"') {
                    field += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                field += c;
            }
            continue;
        }
        switch (c) {
            case '"': quoted = true; rec_has_content = true; break;
            case ',': end_field(); rec_has_content = true; break;
            case '\r': break;
            case '\n':
                if (rec_has_content || !field.empty() || !record.empty()) end_record();
                break;
            default: field += c; rec_has_content = true; break;
        }
    }
    if (rec_has_content || !field.empty() || !record.empty()) end_record();

    if (table.header.empty()) throw Error(path + ": missing header row");
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        if (table.rows[r].size() != table.header.size()) {
            throw Error(path + ": row " + std::to_string(r) + " has " +
                        std::to_string(table.rows[r].size()) + " fields, header has " +
                        std::to_string(table.header.size()));
        }
    }
    return table;
}

std::size_t CsvTable::column_index(const std::string& name) const {
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (header[i] == name) return i;
    }
    throw Error("column '" + name + "' not found in CSV header");
}

namespace {

std::vector<double> numeric_column(const CsvTable& table, const std::string& name) {
    const std::size_t c = table.column_index(name);
    std::vector<double> out;
    out.reserve(table.rows.size());
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        out.push_back(parse_number(table.rows[r][c], "column '" + name + "'", r));
    }
    return out;
}

std::vector<InstanceCosts> run_costgen(const CostgenDirective& d, const CsvTable& table,
                                       const std::vector<int>& labels) {
    switch (d.kind) {
        case CostgenDirective::Kind::credit: {
            CreditCostParams p;
            p.lgd = d.lgd;
            p.rate_min = d.rate_min;
            p.rate_max = d.rate_max;
            p.seed = d.seed;
            return credit_costs(numeric_column(table, d.credit_line_col), labels, p);
        }
        case CostgenDirective::Kind::bankruptcy:
            return bankruptcy_costs(numeric_column(table, d.usage_col),
                                    numeric_column(table, d.margin_col), labels);
        case CostgenDirective::Kind::synthetic_uniform:
            return synthetic_uniform_costs(labels.size(), d.low, d.high, d.seed);
    }
    throw Error("unknown costgen kind");
}

}  // namespace

Dataset load_csv(const std::string& path, const Schema& schema, const std::string& dataset_name) {
    const CsvTable table = CsvTable::read_file(path);
    const std::size_t n = table.rows.size();
    if (n == 0) throw Error(path + ": no data rows");

    for (const auto& col : table.header) {
        if (!schema.roles.count(col)) {
            throw Error(path + ": column '" + col + "' has no role in the schema");
        }
    }
    for (const auto& [col, role] : schema.roles) {
        (void)role;
        table.column_index(col);  // throws when the schema names a missing column
    }

    std::size_t label_col = table.header.size();
    std::vector<std::size_t> feature_cols;
    std::map<std::string, std::size_t> cost_cols;
    for (std::size_t c = 0; c < table.header.size(); ++c) {
        const std::string& role = schema.roles.at(table.header[c]);
        if (role == "label") {
            if (label_col != table.header.size()) throw Error(path + ": multiple label columns");
            label_col = c;
        } else if (role == "feature_numeric" || role == "feature_categorical") {
            feature_cols.push_back(c);
        } else if (role != "ignore") {
            if (cost_cols.count(role)) throw Error(path + ": duplicate role " + role);
            cost_cols[role] = c;
        }
    }
    if (label_col == table.header.size()) throw Error(path + ": schema names no label column");
    if (!cost_cols.empty() && cost_cols.size() != 4) {
        throw Error(path + ": need all four cost columns (c_tp, c_fp, c_fn, c_tn) or none");
    }
    if (cost_cols.empty() && !schema.costgen) {
        throw Error(path + ": cost columns missing and no costgen directive given");
    }

    Dataset ds;
    ds.name = dataset_name.empty() ? path : dataset_name;

    // Labels first: cost generation needs them.
    ds.labels.reserve(n);
    for (std::size_t r = 0; r < n; ++r) {
        const std::string& raw = table.rows[r][label_col];
        int y = -1;
        if (!schema.label_map.empty()) {
            auto it = schema.label_map.find(raw);
            if (it == schema.label_map.end()) {
                throw Error(path + ": label value '" + raw + "' at row " + std::to_string(r) +
                            " not covered by label_map");
            }
            y = it->second;
        } else {
            if (raw == "0") y = 0;
            else if (raw == "1") y = 1;
            else {
                throw Error(path + ": label not in {0,1} at row " + std::to_string(r) + " ('" +
                            raw + "')");
            }
        }
        ds.labels.push_back(y);
    }

    // Features.
    ds.features = Matrix(n, feature_cols.size());
    ds.columns.resize(feature_cols.size());
    for (std::size_t j = 0; j < feature_cols.size(); ++j) {
        const std::size_t c = feature_cols[j];
        ColumnInfo& info = ds.columns[j];
        info.name = table.header[c];
        if (schema.roles.at(info.name) == "feature_numeric") {
            info.kind = ColumnKind::numeric;
            for (std::size_t r = 0; r < n; ++r) {
                const std::string& f = table.rows[r][c];
                ds.features(r, j) =
                    is_missing(f) ? std::nan("") : parse_number(f, "column '" + info.name + "'", r);
            }
        } else {
            info.kind = ColumnKind::categorical;
            std::map<std::string, std::size_t> vocab;
            for (std::size_t r = 0; r < n; ++r) {
                const std::string& f = table.rows[r][c];
                const std::string key = is_missing(f) ? "<missing>" : f;
                auto [it, inserted] = vocab.emplace(key, info.categories.size());
                if (inserted) info.categories.push_back(key);
                ds.features(r, j) = static_cast<double>(it->second);
            }
        }
    }

    // Costs: from columns or generated.
    if (!cost_cols.empty()) {
        const std::size_t ctp = cost_cols.at("c_tp"), cfp = cost_cols.at("c_fp");
        const std::size_t cfn = cost_cols.at("c_fn"), ctn = cost_cols.at("c_tn");
        ds.costs.resize(n);
        for (std::size_t r = 0; r < n; ++r) {
            ds.costs[r].tp = parse_number(table.rows[r][ctp], "c_tp", r);
            ds.costs[r].fp = parse_number(table.rows[r][cfp], "c_fp", r);
            ds.costs[r].fn = parse_number(table.rows[r][cfn], "c_fn", r);
            ds.costs[r].tn = parse_number(table.rows[r][ctn], "c_tn", r);
            if (!ds.costs[r].reasonable()) {
                throw Error(path + ": cost reasonableness violated at row " + std::to_string(r));
            }
        }
    } else {
        ds.costs = run_costgen(*schema.costgen, table, ds.labels);
    }

    ds.validate();
    return ds;
}

void write_csv(const Dataset& ds, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write file: " + path);
    for (const auto& col : ds.columns) out << col.name << ',';
    out << "label,c_tp,c_fp,c_fn,c_tn\n";
    for (std::size_t i = 0; i < ds.n(); ++i) {
        for (std::size_t j = 0; j < ds.columns.size(); ++j) {
            const double v = ds.features(i, j);
            if (ds.columns[j].kind == ColumnKind::categorical) {
                out << ds.columns[j].categories[static_cast<std::size_t>(v)];
            } else if (std::isnan(v)) {
                out << "NA";
            } else {
                out << format_double(v);
            }
            out << ',';
        }
        out << ds.labels[i] << ',' << format_double(ds.costs[i].tp) << ','
            << format_double(ds.costs[i].fp) << ',' << format_double(ds.costs[i].fn) << ','
            << format_double(ds.costs[i].tn) << '\n';
    }
}

}  // namespace cstack
