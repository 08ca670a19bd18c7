#include "cstack/synth.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>

#include <boost/math/distributions/normal.hpp>

namespace cstack {

namespace {

const boost::math::normal kStdNormal;

double clamp_round(double v, double lo, double hi) {
    return std::round(std::min(hi, std::max(lo, v)));
}

struct CatSpec {
    std::string name;
    double loading;  // correlation of the attribute's latent view with risk
    std::vector<std::string> categories;  // ordered riskiest first
    std::vector<double> probs;            // marginal shares, same order
};

// A noisy view of the risk factor with the given correlation.
double view(double z, double loading, Rng& rng) {
    return loading * z + std::sqrt(1.0 - loading * loading) * rng.normal();
}

// Bins a view into categories ordered riskiest-first with the given
// marginal probabilities: high views land in the early categories.
std::size_t bin_category(double v, const std::vector<double>& probs) {
    const double u = boost::math::cdf(kStdNormal, -v);
    double cum = 0.0;
    for (std::size_t k = 0; k + 1 < probs.size(); ++k) {
        cum += probs[k];
        if (u < cum) return k;
    }
    return probs.size() - 1;
}

}  // namespace

Dataset german_like(const GermanLikeParams& params) {
    if (params.positives == 0 || params.positives >= params.n) {
        throw Error("german_like: positives must be strictly between 0 and n");
    }
    const double s = params.signal;

    const std::vector<CatSpec> cats = {
        {"checking_status", 0.45 * s,
         {"overdrawn", "low_balance", "healthy", "none"},
         {0.27, 0.27, 0.06, 0.40}},
        {"credit_history", 0.35 * s,
         {"delinquent", "delayed", "existing_paid", "all_paid", "none_taken"},
         {0.08, 0.10, 0.50, 0.08, 0.24}},
        {"purpose", 0.15 * s,
         {"new_car", "business", "furniture", "radio_tv", "used_car", "education", "repairs",
          "appliances", "retraining", "other"},
         {0.23, 0.10, 0.18, 0.28, 0.10, 0.05, 0.02, 0.01, 0.01, 0.02}},
        {"savings_status", 0.30 * s,
         {"lt_100", "100_500", "500_1000", "ge_1000", "unknown"},
         {0.60, 0.10, 0.06, 0.05, 0.19}},
        {"employment_since", 0.25 * s,
         {"unemployed", "lt_1y", "1_4y", "4_7y", "ge_7y"},
         {0.06, 0.17, 0.34, 0.17, 0.26}},
        {"personal_status", 0.10 * s,
         {"male_divorced", "female_div_married", "male_single", "male_married"},
         {0.05, 0.31, 0.55, 0.09}},
        {"other_debtors", 0.10 * s, {"co_applicant", "guarantor", "none"}, {0.04, 0.05, 0.91}},
        {"property", 0.20 * s,
         {"unknown", "car_other", "savings_insurance", "real_estate"},
         {0.15, 0.33, 0.23, 0.28}},
        {"other_plans", 0.15 * s, {"bank", "stores", "none"}, {0.14, 0.05, 0.81}},
        {"housing", 0.15 * s, {"free", "rent", "own"}, {0.11, 0.18, 0.71}},
        {"job", 0.10 * s,
         {"unemployed_unskilled", "unskilled_resident", "skilled", "management"},
         {0.02, 0.20, 0.63, 0.15}},
        {"telephone", 0.05 * s, {"none", "yes"}, {0.60, 0.40}},
        {"foreign_worker", 0.05 * s, {"yes", "no"}, {0.96, 0.04}},
    };

    // Statlog attribute order, mixing the numeric columns in between.
    const std::vector<std::string> column_order = {
        "checking_status", "duration_months", "credit_history", "purpose", "credit_amount",
        "savings_status",  "employment_since", "installment_rate", "personal_status",
        "other_debtors",   "residence_since",  "property",         "age_years",
        "other_plans",     "housing",          "existing_credits", "job",
        "num_dependents",  "telephone",        "foreign_worker"};

    Dataset ds;
    ds.name = "german_like";
    ds.columns.resize(column_order.size());
    ds.features = Matrix(params.n, column_order.size());
    ds.labels.assign(params.n, 0);

    std::map<std::string, std::size_t> col_at;
    for (std::size_t j = 0; j < column_order.size(); ++j) {
        col_at[column_order[j]] = j;
        ds.columns[j].name = column_order[j];
        ds.columns[j].kind = ColumnKind::numeric;
    }
    for (const CatSpec& c : cats) {
        ColumnInfo& info = ds.columns[col_at.at(c.name)];
        info.kind = ColumnKind::categorical;
        info.categories = c.categories;
    }

    Rng rng(params.seed);
    std::vector<std::pair<double, std::size_t>> risk(params.n);
    for (std::size_t i = 0; i < params.n; ++i) {
        const double z = rng.normal();
        risk[i] = {z + 0.55 * rng.normal(), i};

        ds.features(i, col_at.at("duration_months")) =
            clamp_round(21.0 + 11.0 * view(z, 0.45 * s, rng), 4.0, 72.0);
        ds.features(i, col_at.at("credit_amount")) =
            clamp_round(std::exp(7.7 + 0.75 * view(z, 0.50 * s, rng)), 250.0, 20000.0);
        ds.features(i, col_at.at("installment_rate")) = 1.0 + std::floor(
            3.999 * boost::math::cdf(kStdNormal, view(z, 0.15 * s, rng)));
        ds.features(i, col_at.at("residence_since")) = 1.0 + std::floor(
            3.999 * boost::math::cdf(kStdNormal, view(z, 0.05 * s, rng)));
        ds.features(i, col_at.at("age_years")) =
            clamp_round(35.5 + 11.0 * view(z, -0.30 * s, rng), 19.0, 75.0);
        ds.features(i, col_at.at("existing_credits")) = 1.0 + std::floor(
            3.999 * boost::math::cdf(kStdNormal, view(z, 0.10 * s, rng)));
        ds.features(i, col_at.at("num_dependents")) =
            boost::math::cdf(kStdNormal, view(z, 0.0, rng)) > 0.85 ? 2.0 : 1.0;

        for (const CatSpec& c : cats) {
            ds.features(i, col_at.at(c.name)) =
                static_cast<double>(bin_category(view(z, c.loading, rng), c.probs));
        }
    }

    // The riskiest `positives` applicants default.
    std::sort(risk.begin(), risk.end(), [](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first > b.first;
        return a.second < b.second;
    });
    for (std::size_t r = 0; r < params.positives; ++r) ds.labels[risk[r].second] = 1;
    return ds;
}

nlohmann::json german_like_schema(std::uint64_t costgen_seed) {
    nlohmann::json columns;
    const char* categorical[] = {"checking_status", "credit_history", "purpose",
                                 "savings_status",  "employment_since", "personal_status",
                                 "other_debtors",   "property",         "other_plans",
                                 "housing",         "job",              "telephone",
                                 "foreign_worker"};
    const char* numeric[] = {"duration_months", "credit_amount",    "installment_rate",
                             "residence_since", "age_years",        "existing_credits",
                             "num_dependents"};
    for (const char* c : categorical) columns[c] = "feature_categorical";
    for (const char* c : numeric) columns[c] = "feature_numeric";
    columns["label"] = "label";
    return nlohmann::json{
        {"columns", columns},
        {"costgen",
         {{"kind", "credit"}, {"credit_line", "credit_amount"}, {"seed", costgen_seed}}},
    };
}

Dataset gaussian_blobs(const GaussianParams& params) {
    if (params.n < 4 || params.dims == 0) throw Error("gaussian_blobs: degenerate shape");
    if (!(params.prevalence > 0.0 && params.prevalence < 1.0)) {
        throw Error("gaussian_blobs: prevalence must be strictly between 0 and 1");
    }
    Rng rng(params.seed);

    std::vector<double> sep(params.dims);
    for (double& v : sep) v = params.separation * rng.uniform(0.2, 1.0);

    const auto n_pos = static_cast<std::size_t>(
        std::llround(params.prevalence * static_cast<double>(params.n)));
    std::vector<int> labels(params.n, 0);
    for (std::size_t i = 0; i < n_pos; ++i) labels[i] = 1;
    rng.shuffle(labels);

    Dataset ds;
    ds.name = "gaussian";
    ds.labels = std::move(labels);
    ds.features = Matrix(params.n, params.dims);
    ds.columns.resize(params.dims);
    for (std::size_t j = 0; j < params.dims; ++j) {
        ds.columns[j].name = "f" + std::to_string(j);
        ds.columns[j].kind = ColumnKind::numeric;
    }
    for (std::size_t i = 0; i < params.n; ++i) {
        for (std::size_t j = 0; j < params.dims; ++j) {
            ds.features(i, j) = rng.normal() + (ds.labels[i] == 1 ? sep[j] : 0.0);
        }
    }
    return ds;
}

nlohmann::json gaussian_schema(std::size_t dims, double low, double high,
                               std::uint64_t costgen_seed) {
    nlohmann::json columns;
    columns["label"] = "label";
    for (std::size_t j = 0; j < dims; ++j) columns["f" + std::to_string(j)] = "feature_numeric";
    return nlohmann::json{
        {"columns", columns},
        {"costgen",
         {{"kind", "synthetic_uniform"}, {"low", low}, {"high", high}, {"seed", costgen_seed}}},
    };
}

void write_feature_csv(const Dataset& ds, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write file: " + path);
    for (const auto& col : ds.columns) out << col.name << ',';
    out << "label\n";
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
        out << ds.labels[i] << '\n';
    }
}

}  // namespace cstack
