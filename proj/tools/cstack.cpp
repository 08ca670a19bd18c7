#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"

#include "cstack/experiment.hpp"
#include "cstack/report.hpp"
#include "cstack/synth.hpp"

namespace fs = std::filesystem;
using namespace cstack;

namespace {

int cmd_validate(const std::string& config_path) {
    std::vector<std::string> errors;
    load_config(config_path, errors);
    if (!errors.empty()) {
        for (const std::string& e : errors) std::cerr << "error: " << e << '\n';
        return 1;
    }
    std::cout << "configuration valid\n";
    return 0;
}

int cmd_run(const std::string& config_path, std::size_t workers, bool resume) {
    std::vector<std::string> errors;
    ExperimentConfig config = load_config(config_path, errors);
    if (!errors.empty()) {
        for (const std::string& e : errors) std::cerr << "error: " << e << '\n';
        return 1;
    }
    RunOptions options;
    options.workers = workers;
    options.resume = resume;
    const RunSummary summary = run_experiment(config, options);
    std::cout << "results: " << summary.output_dir << "/results.csv\n"
              << "records written: " << summary.records << '\n'
              << "failures: " << summary.failures << '\n'
              << "skipped (resume): " << summary.skipped << '\n';
    return summary.failures > 0 ? 2 : 0;
}

int cmd_report(const std::string& results_dir, double alpha) {
    if (alpha != 0.05 && alpha != 0.10) {
        std::cerr << "error: --alpha must be 0.05 or 0.10\n";
        return 1;
    }
    const std::string results_path = results_dir + "/results.csv";
    if (!fs::exists(results_path)) {
        std::cerr << "error: " << results_path << " not found\n";
        return 1;
    }
    const std::vector<EvalRecord> records = read_results_csv(results_path);
    const ReportBundle bundle = build_report(records, alpha);
    const std::string report_dir = results_dir + "/report";
    write_report(bundle, report_dir);
    std::cout << "report written to " << report_dir << '\n';
    if (!bundle.excluded.empty()) {
        std::cout << "excluded (incomplete results):";
        for (const std::string& c : bundle.excluded) std::cout << ' ' << c;
        std::cout << '\n';
    }
    return 0;
}

int cmd_costgen(const std::string& schema_path, const std::string& csv_path,
                const std::string& out_path) {
    const Schema schema = Schema::from_file(schema_path);
    if (!schema.costgen) {
        std::cerr << "error: schema has no costgen directive\n";
        return 1;
    }
    const Dataset ds = load_csv(csv_path, schema);
    write_csv(ds, out_path);
    std::cout << "wrote " << ds.n() << " costed rows to " << out_path << '\n';
    return 0;
}

int cmd_synth(const std::string& kind, const std::string& out_dir, std::size_t n,
              std::uint64_t seed, std::size_t dims, double separation, std::uint64_t costgen_seed) {
    fs::create_directories(out_dir);
    Dataset ds;
    nlohmann::json schema;
    std::string stem;
    if (kind == "german") {
        GermanLikeParams params;
        if (n > 0) params.n = n;
        params.positives = params.n * 3 / 10;
        params.seed = seed;
        ds = german_like(params);
        schema = german_like_schema(costgen_seed);
        stem = "german_like";
    } else if (kind == "gaussian") {
        GaussianParams params;
        if (n > 0) params.n = n;
        params.dims = dims;
        params.separation = separation;
        params.seed = seed;
        ds = gaussian_blobs(params);
        schema = gaussian_schema(dims, 1.0, 10.0, costgen_seed);
        stem = "gaussian";
    } else {
        std::cerr << "error: unknown generator '" << kind << "' (use german or gaussian)\n";
        return 1;
    }
    const std::string csv_path = out_dir + "/" + stem + ".csv";
    const std::string schema_path = out_dir + "/" + stem + ".schema.json";
    write_feature_csv(ds, csv_path);
    std::ofstream schema_out(schema_path, std::ios::binary);
    schema_out << schema.dump(2) << '\n';
    std::cout << "wrote " << csv_path << " (" << ds.n() << " rows) and " << schema_path << '\n';
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Cost-sensitive stacking benchmark toolkit"};
    app.require_subcommand(1);

    std::string config_path;
    auto* validate = app.add_subcommand("validate", "Check an experiment configuration");
    validate->add_option("config", config_path, "config JSON path")->required();

    std::string run_config;
    std::size_t workers = 0;
    bool resume = false;
    auto* run = app.add_subcommand("run", "Run the full benchmark grid");
    run->add_option("config", run_config, "config JSON path")->required();
    run->add_option("--workers", workers, "worker threads (default: CSTACK_WORKERS or hardware)");
    run->add_flag("--resume", resume, "skip cells already present in results.csv");

    std::string results_dir;
    double alpha = 0.05;
    auto* report = app.add_subcommand("report", "Aggregate a results directory");
    report->add_option("results_dir", results_dir, "directory holding results.csv")->required();
    report->add_option("--alpha", alpha, "significance level (0.05 or 0.10)");

    std::string schema_path, csv_path, out_path;
    auto* costgen = app.add_subcommand("costgen", "Attach generated costs to a CSV");
    costgen->add_option("schema", schema_path, "schema JSON with a costgen directive")->required();
    costgen->add_option("csv", csv_path, "input CSV")->required();
    costgen->add_option("-o,--output", out_path, "output CSV with cost columns")->required();

    std::string synth_kind, synth_dir;
    std::size_t synth_n = 0, synth_dims = 6;
    std::uint64_t synth_seed = 7, synth_costgen_seed = 99;
    double synth_separation = 1.0;
    auto* synth = app.add_subcommand("synth", "Write a bundled synthetic dataset");
    synth->add_option("kind", synth_kind, "german or gaussian")->required();
    synth->add_option("-o,--output", synth_dir, "output directory")->required();
    synth->add_option("--n", synth_n, "row count (0 = generator default)");
    synth->add_option("--seed", synth_seed, "generator seed");
    synth->add_option("--dims", synth_dims, "gaussian feature count");
    synth->add_option("--separation", synth_separation, "gaussian class separation");
    synth->add_option("--costgen-seed", synth_costgen_seed, "seed stored in the schema directive");

    CLI11_PARSE(app, argc, argv);

    try {
        if (validate->parsed()) return cmd_validate(config_path);
        if (run->parsed()) return cmd_run(run_config, workers, resume);
        if (report->parsed()) return cmd_report(results_dir, alpha);
        if (costgen->parsed()) return cmd_costgen(schema_path, csv_path, out_path);
        if (synth->parsed()) {
            return cmd_synth(synth_kind, synth_dir, synth_n, synth_seed, synth_dims,
                             synth_separation, synth_costgen_seed);
        }
    } catch (const std::exception& e) {
        std::cerr << "fatal: " << e.what() << '\n';
        return 3;
    }
    return 0;
}
