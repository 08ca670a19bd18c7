#pragma once

#include <cstdint>
#include <string>

#include "json.hpp"

#include "cstack/dataset.hpp"

namespace cstack {

/// Seeded generator for a credit-scoring dataset with the shape of the
/// classic German credit file: 1000 rows, 20 mixed-type attributes, 30%
/// positives (bad credit). A latent risk factor drives both the label and
/// noisy views of every attribute, so the learning problem is realistic but
/// fully reproducible. Costs are not attached; pair the written CSV with a
/// schema whose costgen directive prices the credit_amount column.
struct GermanLikeParams {
    std::size_t n = 1000;
    std::size_t positives = 300;
    std::uint64_t seed = 7;
    double signal = 1.0;  // scales every attribute's loading on the risk factor
};

Dataset german_like(const GermanLikeParams& params = {});

/// Column-role schema for german_like CSVs, with a credit costgen directive
/// priced on credit_amount.
nlohmann::json german_like_schema(std::uint64_t costgen_seed);

/// Two-class Gaussian dataset: numeric features are unit-variance normals
/// whose means shift by a per-feature separation for positive rows.
struct GaussianParams {
    std::size_t n = 2000;
    std::size_t dims = 6;
    double prevalence = 0.35;
    double separation = 1.0;
    std::uint64_t seed = 1;
};

Dataset gaussian_blobs(const GaussianParams& params = {});

/// Column-role schema for gaussian_blobs CSVs with a uniform random cost
/// directive.
nlohmann::json gaussian_schema(std::size_t dims, double low, double high,
                               std::uint64_t costgen_seed);

/// Writes features and label only (no cost columns), for datasets whose
/// costs are generated at load time.
void write_feature_csv(const Dataset& ds, const std::string& path);

}  // namespace cstack
