#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "cstack/csv.hpp"
#include "cstack/stacking.hpp"

namespace cstack {

struct DatasetEntry {
    std::string name;
    std::string path;
    std::string schema_path;
    std::string test_path;  // optional paired test file, evaluated on its own halves
};

struct SingleEntry {
    Algo algorithm = Algo::DT;
    bool cost_sensitive = true;
};

struct StackEntry {
    int setup_type = 3;
    WeightKind transform = WeightKind::unit;
    Algo level1 = Algo::LR;
    std::vector<Algo> level0;  // empty = default roster
};

/// Stable identifiers used in the results CSV: "single_cs:DT",
/// "single_cis:KNN", "stack:type-3_sq:LR".
std::string classifier_id(const SingleEntry& e);
std::string classifier_id(const StackEntry& e);

struct Protocol {
    std::size_t k = 2;  // the 5x2 protocol is the only supported shape
    std::size_t repeats = 5;
    std::vector<std::uint64_t> seeds;  // one per repeat
    std::size_t large_threshold = 100000;
    std::size_t parts = 5;
    std::size_t inner_folds = 4;
};

struct ExperimentConfig {
    std::vector<DatasetEntry> datasets;
    std::vector<SingleEntry> singles;
    std::vector<StackEntry> stackings;
    Protocol protocol;
    double alpha = 0.05;
    std::string output_dir;  // empty = timestamped directory under the cwd

    nlohmann::json to_json() const;
};

/// Parses and validates a config document. Every violation is collected (with
/// its JSON path) rather than stopping at the first.
ExperimentConfig config_from_json(const nlohmann::json& doc, std::vector<std::string>& errors);
ExperimentConfig load_config(const std::string& path, std::vector<std::string>& errors);

struct EvalRecord {
    std::string dataset;
    std::string unit;  // dataset or dataset#partN for subsampled large sets
    std::string classifier;
    std::size_t repeat = 0;
    std::size_t fold = 0;
    std::size_t n_test = 0;
    double total_cost = 0.0;
    double savings_value = 0.0;
    bool converged = true;
};

struct FailureRecord {
    std::string dataset;
    std::string unit;
    std::string classifier;  // "<load>" for dataset-level failures
    std::size_t repeat = 0;
    std::size_t fold = 0;
    std::string message;
};

struct RunOptions {
    std::size_t workers = 0;  // 0 = CSTACK_WORKERS env var, else hardware threads
    bool resume = false;
};

struct RunSummary {
    std::size_t records = 0;
    std::size_t failures = 0;
    std::size_t skipped = 0;  // resume hits
    std::string output_dir;
};

/// Runs the full grid: datasets x classifiers x (5x2 folds), writing
/// results.csv, failures.csv and run_meta.json under the output directory.
/// Training failures are isolated per (classifier, fold) cell; dataset load
/// failures abort only that dataset. Output rows are written in a fixed
/// deterministic order regardless of worker count.
RunSummary run_experiment(const ExperimentConfig& config, const RunOptions& options = {});

/// The singles pipeline shared with stacking level-0 treatment: inner-CV
/// out-of-fold scores fit the isotonic step, the deployed model is refit on
/// the whole split. `all_converged` reports every fit involved.
struct SingleFit {
    CalibratedScorer scorer;
    bool all_converged = true;
};
SingleFit train_calibrated_single(const LearnerSpec& spec, const Matrix& features,
                                  std::span<const int> labels, std::size_t inner_folds,
                                  std::uint64_t seed);

std::vector<EvalRecord> read_results_csv(const std::string& path);

}  // namespace cstack
