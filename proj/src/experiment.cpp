#include "cstack/experiment.hpp"

#include <atomic>
#include <chrono>
#include <condition_variable>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include "cstack/folds.hpp"
#include "cstack/metrics.hpp"
#include "cstack/transforms.hpp"

namespace fs = std::filesystem;

namespace cstack {

std::string classifier_id(const SingleEntry& e) {
    return std::string(e.cost_sensitive ? "single_cs:" : "single_cis:") + algo_name(e.algorithm);
}

std::string classifier_id(const StackEntry& e) {
    return "stack:" + setup_alias(e.setup_type, e.transform) + ":" + algo_name(e.level1);
}

// ---------------------------------------------------------------------------
// Configuration

namespace {

const char* kResultsHeader = "dataset,unit,classifier,repeat,fold,n_test,total_cost,savings,converged";
const char* kFailuresHeader = "dataset,unit,classifier,repeat,fold,message";

std::string csv_quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    out += '"';
    return out;
}

template <class T>
T json_get(const nlohmann::json& j, const std::string& path, const std::string& key, T fallback,
           std::vector<std::string>& errors) {
    if (!j.contains(key)) return fallback;
    try {
        return j.at(key).get<T>();
    } catch (const std::exception&) {
        errors.push_back(path + "." + key + ": wrong type");
        return fallback;
    }
}

}  // namespace

ExperimentConfig config_from_json(const nlohmann::json& doc, std::vector<std::string>& errors) {
    ExperimentConfig config;
    if (!doc.is_object()) {
        errors.push_back("config: not a JSON object");
        return config;
    }

    // datasets
    if (!doc.contains("datasets") || !doc.at("datasets").is_array() ||
        doc.at("datasets").empty()) {
        errors.push_back("datasets: required non-empty array");
    } else {
        std::set<std::string> names;
        std::size_t i = 0;
        for (const auto& d : doc.at("datasets")) {
            const std::string path = "datasets[" + std::to_string(i) + "]";
            DatasetEntry entry;
            entry.path = json_get<std::string>(d, path, "path", "", errors);
            entry.schema_path = json_get<std::string>(d, path, "schema", "", errors);
            entry.test_path = json_get<std::string>(d, path, "test_path", "", errors);
            entry.name = json_get<std::string>(d, path, "name", "", errors);
            if (entry.name.empty() && !entry.path.empty()) {
                entry.name = fs::path(entry.path).stem().string();
            }
            if (entry.path.empty()) errors.push_back(path + ".path: required");
            else if (!fs::exists(entry.path)) {
                errors.push_back(path + ".path: file not found '" + entry.path + "'");
            }
            if (entry.schema_path.empty()) errors.push_back(path + ".schema: required");
            else if (!fs::exists(entry.schema_path)) {
                errors.push_back(path + ".schema: file not found '" + entry.schema_path + "'");
            }
            if (!entry.test_path.empty() && !fs::exists(entry.test_path)) {
                errors.push_back(path + ".test_path: file not found '" + entry.test_path + "'");
            }
            if (!names.insert(entry.name).second) {
                errors.push_back(path + ".name: duplicate dataset name '" + entry.name + "'");
            }
            config.datasets.push_back(std::move(entry));
            ++i;
        }
    }

    // classifiers
    const nlohmann::json cls = doc.value("classifiers", nlohmann::json::object());
    std::set<std::string> ids;
    if (cls.contains("singles")) {
        std::size_t i = 0;
        for (const auto& s : cls.at("singles")) {
            const std::string path = "classifiers.singles[" + std::to_string(i) + "]";
            SingleEntry entry;
            try {
                entry.algorithm =
                    algo_from_name(json_get<std::string>(s, path, "algorithm", "", errors));
            } catch (const Error& e) {
                errors.push_back(path + ".algorithm: " + e.what());
            }
            entry.cost_sensitive = json_get<bool>(s, path, "cost_sensitive", true, errors);
            if (!ids.insert(classifier_id(entry)).second) {
                errors.push_back(path + ": duplicate classifier " + classifier_id(entry));
            }
            config.singles.push_back(entry);
            ++i;
        }
    }
    if (cls.contains("stackings")) {
        std::size_t i = 0;
        for (const auto& s : cls.at("stackings")) {
            const std::string path = "classifiers.stackings[" + std::to_string(i) + "]";
            StackEntry entry;
            try {
                const auto [type, transform] =
                    setup_from_alias(json_get<std::string>(s, path, "setup", "", errors));
                entry.setup_type = type;
                entry.transform = transform;
            } catch (const Error& e) {
                errors.push_back(path + ".setup: " + std::string(e.what()) +
                                 " (valid: type-1..type-3 with optional _exp/_ln/_sq/_acc)");
            }
            try {
                entry.level1 = algo_from_name(json_get<std::string>(s, path, "level1", "LR", errors));
            } catch (const Error& e) {
                errors.push_back(path + ".level1: " + e.what());
            }
            if (s.contains("level0")) {
                try {
                    for (const auto& a : s.at("level0")) {
                        entry.level0.push_back(algo_from_name(a.get<std::string>()));
                    }
                    if (entry.level0.empty()) {
                        errors.push_back(path + ".level0: must not be an empty list");
                    }
                } catch (const std::exception& e) {
                    errors.push_back(path + ".level0: " + e.what());
                }
            }
            if (!ids.insert(classifier_id(entry)).second) {
                errors.push_back(path + ": duplicate classifier " + classifier_id(entry));
            }
            config.stackings.push_back(std::move(entry));
            ++i;
        }
    }
    if (config.singles.empty() && config.stackings.empty()) {
        errors.push_back("classifiers: roster must not be empty");
    }

    // protocol
    const nlohmann::json proto = doc.value("protocol", nlohmann::json::object());
    config.protocol.k = json_get<std::size_t>(proto, "protocol", "k", 2, errors);
    if (config.protocol.k != 2) {
        errors.push_back("protocol.k: only the 2-fold (5x2) protocol is supported");
    }
    config.protocol.repeats = json_get<std::size_t>(proto, "protocol", "repeats", 5, errors);
    if (proto.contains("seeds")) {
        try {
            config.protocol.seeds = proto.at("seeds").get<std::vector<std::uint64_t>>();
        } catch (const std::exception&) {
            errors.push_back("protocol.seeds: must be an array of unsigned integers");
        }
    } else {
        for (std::size_t r = 0; r < config.protocol.repeats; ++r) {
            config.protocol.seeds.push_back(r + 1);
        }
    }
    if (config.protocol.seeds.size() != config.protocol.repeats) {
        errors.push_back("protocol.seeds: length " + std::to_string(config.protocol.seeds.size()) +
                         " does not match repeats " + std::to_string(config.protocol.repeats));
    }
    if (config.protocol.repeats < 5) {
        errors.push_back("protocol.repeats: the protocol needs at least 5 repeats");
    }
    config.protocol.large_threshold =
        json_get<std::size_t>(proto, "protocol", "large_threshold", 100000, errors);
    config.protocol.parts = json_get<std::size_t>(proto, "protocol", "parts", 5, errors);
    if (config.protocol.parts < 2) errors.push_back("protocol.parts: must be >= 2");
    config.protocol.inner_folds = json_get<std::size_t>(proto, "protocol", "inner_folds", 4, errors);
    if (config.protocol.inner_folds < 2) errors.push_back("protocol.inner_folds: must be >= 2");

    config.alpha = json_get<double>(doc, "config", "alpha", 0.05, errors);
    if (config.alpha != 0.05 && config.alpha != 0.10) {
        errors.push_back("alpha: must be 0.05 or 0.10");
    }
    config.output_dir = json_get<std::string>(doc, "config", "output_dir", "", errors);
    return config;
}

ExperimentConfig load_config(const std::string& path, std::vector<std::string>& errors) {
    std::ifstream in(path);
    if (!in) {
        errors.push_back("config: cannot open '" + path + "'");
        return {};
    }
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const std::exception& e) {
        errors.push_back("config: invalid JSON: " + std::string(e.what()));
        return {};
    }
    return config_from_json(doc, errors);
}

nlohmann::json ExperimentConfig::to_json() const {
    nlohmann::json datasets_json = nlohmann::json::array();
    for (const auto& d : datasets) {
        nlohmann::json e{{"name", d.name}, {"path", d.path}, {"schema", d.schema_path}};
        if (!d.test_path.empty()) e["test_path"] = d.test_path;
        datasets_json.push_back(std::move(e));
    }
    nlohmann::json singles_json = nlohmann::json::array();
    for (const auto& s : singles) {
        singles_json.push_back(
            {{"algorithm", algo_name(s.algorithm)}, {"cost_sensitive", s.cost_sensitive}});
    }
    nlohmann::json stackings_json = nlohmann::json::array();
    for (const auto& s : stackings) {
        nlohmann::json e{{"setup", setup_alias(s.setup_type, s.transform)},
                         {"level1", algo_name(s.level1)}};
        if (!s.level0.empty()) {
            nlohmann::json roster = nlohmann::json::array();
            for (Algo a : s.level0) roster.push_back(algo_name(a));
            e["level0"] = std::move(roster);
        }
        stackings_json.push_back(std::move(e));
    }
    return nlohmann::json{
        {"datasets", datasets_json},
        {"classifiers", {{"singles", singles_json}, {"stackings", stackings_json}}},
        {"protocol",
         {{"k", protocol.k},
          {"repeats", protocol.repeats},
          {"seeds", protocol.seeds},
          {"large_threshold", protocol.large_threshold},
          {"parts", protocol.parts},
          {"inner_folds", protocol.inner_folds}}},
        {"alpha", alpha},
        {"output_dir", output_dir}};
}

// ---------------------------------------------------------------------------
// Singles pipeline

SingleFit train_calibrated_single(const LearnerSpec& spec, const Matrix& features,
                                  std::span<const int> labels, std::size_t inner_folds,
                                  std::uint64_t seed) {
    if (inner_folds < 2) throw Error("single pipeline: inner_folds must be >= 2");
    SingleFit fit;

    std::vector<double> oof(features.rows(), 0.0);
    const FoldPlan plan = stratified_kfold(labels, inner_folds, seed);
    for (std::size_t f = 0; f < plan.pairs.size(); ++f) {
        const FoldPair& pair = plan.pairs[f];
        const Matrix x_tr = features.take_rows(pair.train);
        std::vector<int> y_tr;
        y_tr.reserve(pair.train.size());
        for (std::size_t i : pair.train) y_tr.push_back(labels[i]);

        LearnerSpec inner_spec = spec;
        inner_spec.seed = mix_seed(seed, f + 1);
        const TrainedScorer inner = train(inner_spec, x_tr, y_tr);
        fit.all_converged = fit.all_converged && inner.converged;
        for (std::size_t i : pair.test) oof[i] = inner.score(features.row(i));
    }

    LearnerSpec refit_spec = spec;
    refit_spec.seed = mix_seed(seed, 0xF17);
    TrainedScorer refit = train(refit_spec, features, labels);
    fit.all_converged = fit.all_converged && refit.converged;
    fit.scorer = calibrate_from_scores(std::move(refit), oof, labels);
    return fit;
}

// ---------------------------------------------------------------------------
// Runner

namespace {

struct UnitTask {
    std::string dataset;
    std::string unit;
    Dataset train;
    std::optional<Dataset> test;  // paired-file mode
    FoldPlan plan_train;
    FoldPlan plan_test;  // used only in paired mode
};

struct Classifier {
    std::string id;
    bool is_stack = false;
    SingleEntry single;
    StackEntry stack;
};

struct JobOut {
    std::vector<EvalRecord> records;
    std::vector<FailureRecord> failures;
    std::size_t skipped = 0;
};

std::string record_key(const std::string& unit, const std::string& classifier, std::size_t repeat,
                       std::size_t fold) {
    return unit + '\x1f' + classifier + '\x1f' + std::to_string(repeat) + '\x1f' +
           std::to_string(fold);
}

std::string timestamp_utc() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&t, &tm);
    std::ostringstream out;
    out << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
    return out.str();
}

std::string timestamp_compact() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&t, &tm);
    std::ostringstream out;
    out << std::put_time(&tm, "%Y%m%d-%H%M%S");
    return out.str();
}

std::size_t resolve_workers(std::size_t requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("CSTACK_WORKERS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v > 0) return static_cast<std::size_t>(v);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? hw : 1;
}

void append_record(std::ofstream& out, const EvalRecord& r) {
    out << r.dataset << ',' << r.unit << ',' << r.classifier << ',' << r.repeat << ',' << r.fold
        << ',' << r.n_test << ',' << format_double(r.total_cost) << ','
        << format_double(r.savings_value) << ',' << (r.converged ? 1 : 0) << '\n';
}

void append_failure(std::ofstream& out, const FailureRecord& f) {
    out << f.dataset << ',' << f.unit << ',' << f.classifier << ',' << f.repeat << ',' << f.fold
        << ',' << csv_quote(f.message) << '\n';
}

}  // namespace

std::vector<EvalRecord> read_results_csv(const std::string& path) {
    const CsvTable table = CsvTable::read_file(path);
    const std::size_t c_dataset = table.column_index("dataset");
    const std::size_t c_unit = table.column_index("unit");
    const std::size_t c_classifier = table.column_index("classifier");
    const std::size_t c_repeat = table.column_index("repeat");
    const std::size_t c_fold = table.column_index("fold");
    const std::size_t c_ntest = table.column_index("n_test");
    const std::size_t c_cost = table.column_index("total_cost");
    const std::size_t c_savings = table.column_index("savings");
    const std::size_t c_conv = table.column_index("converged");

    std::vector<EvalRecord> records;
    records.reserve(table.rows.size());
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        const auto& row = table.rows[r];
        try {
            EvalRecord rec;
            rec.dataset = row[c_dataset];
            rec.unit = row[c_unit];
            rec.classifier = row[c_classifier];
            rec.repeat = std::stoul(row[c_repeat]);
            rec.fold = std::stoul(row[c_fold]);
            rec.n_test = std::stoul(row[c_ntest]);
            rec.total_cost = std::stod(row[c_cost]);
            rec.savings_value = std::stod(row[c_savings]);
            rec.converged = row[c_conv] != "0";
            records.push_back(std::move(rec));
        } catch (const std::exception&) {
            throw Error(path + ": malformed results row " + std::to_string(r));
        }
    }
    return records;
}

RunSummary run_experiment(const ExperimentConfig& config, const RunOptions& options) {
    RunSummary summary;
    const std::string out_dir =
        config.output_dir.empty() ? "cstack-run-" + timestamp_compact() : config.output_dir;
    fs::create_directories(out_dir);
    const std::string results_path = out_dir + "/results.csv";
    const std::string failures_path = out_dir + "/failures.csv";
    summary.output_dir = out_dir;

    // Resume bookkeeping: previously completed (unit, classifier, repeat, fold).
    std::set<std::string> done;
    if (options.resume && fs::exists(results_path)) {
        for (const EvalRecord& r : read_results_csv(results_path)) {
            done.insert(record_key(r.unit, r.classifier, r.repeat, r.fold));
        }
    }

    const bool fresh_results = !(options.resume && fs::exists(results_path));
    std::ofstream results_out(results_path,
                              fresh_results ? std::ios::binary : std::ios::binary | std::ios::app);
    if (!results_out) throw Error("cannot write " + results_path);
    if (fresh_results) results_out << kResultsHeader << '\n';

    const bool fresh_failures = !(options.resume && fs::exists(failures_path));
    std::ofstream failures_out(
        failures_path, fresh_failures ? std::ios::binary : std::ios::binary | std::ios::app);
    if (!failures_out) throw Error("cannot write " + failures_path);
    if (fresh_failures) failures_out << kFailuresHeader << '\n';

    const std::string started_at = timestamp_utc();

    // Load every dataset; a failing dataset is recorded and skipped.
    std::vector<UnitTask> units;
    std::vector<FailureRecord> load_failures;
    for (const DatasetEntry& entry : config.datasets) {
        try {
            const Schema schema = Schema::from_file(entry.schema_path);
            Dataset ds = load_csv(entry.path, schema, entry.name);

            std::vector<UnitTask> dataset_units;
            if (!entry.test_path.empty()) {
                UnitTask task;
                task.dataset = entry.name;
                task.unit = entry.name;
                task.test = load_csv(entry.test_path, schema, entry.name + ":test");
                if (task.test->dim() != ds.dim()) {
                    throw Error("paired test file has a different column set");
                }
                task.train = std::move(ds);
                dataset_units.push_back(std::move(task));
            } else if (ds.n() > config.protocol.large_threshold) {
                const std::uint64_t split_seed =
                    mix_seed(config.protocol.seeds.front(), fnv1a64(entry.name));
                std::vector<Dataset> parts =
                    subsample_partition(ds, config.protocol.parts, split_seed);
                for (Dataset& part : parts) {
                    UnitTask task;
                    task.dataset = entry.name;
                    task.unit = part.name;
                    task.train = std::move(part);
                    dataset_units.push_back(std::move(task));
                }
            } else {
                UnitTask task;
                task.dataset = entry.name;
                task.unit = entry.name;
                task.train = std::move(ds);
                dataset_units.push_back(std::move(task));
            }

            for (UnitTask& task : dataset_units) {
                task.plan_train = five_by_two_plan(task.train.labels, config.protocol.seeds);
                if (task.test) {
                    task.plan_test = five_by_two_plan(task.test->labels, config.protocol.seeds);
                }
            }
            for (UnitTask& task : dataset_units) units.push_back(std::move(task));
        } catch (const std::exception& e) {
            load_failures.push_back({entry.name, entry.name, "<load>", 0, 0, e.what()});
        }
    }
    for (const FailureRecord& f : load_failures) append_failure(failures_out, f);
    failures_out.flush();
    summary.failures += load_failures.size();

    // Classifier roster in config order: singles first, then stackings.
    std::vector<Classifier> roster;
    for (const SingleEntry& s : config.singles) {
        Classifier c;
        c.id = classifier_id(s);
        c.single = s;
        roster.push_back(std::move(c));
    }
    for (const StackEntry& s : config.stackings) {
        Classifier c;
        c.id = classifier_id(s);
        c.is_stack = true;
        c.stack = s;
        roster.push_back(std::move(c));
    }

    // One job per (unit, fold pair); each job evaluates the whole roster.
    std::vector<std::pair<std::size_t, std::size_t>> jobs;
    for (std::size_t u = 0; u < units.size(); ++u) {
        for (std::size_t p = 0; p < units[u].plan_train.pairs.size(); ++p) jobs.emplace_back(u, p);
    }

    std::vector<JobOut> outputs(jobs.size());
    std::vector<char> ready(jobs.size(), 0);
    std::atomic<std::size_t> next_job{0};
    std::mutex flush_mutex;
    std::size_t flush_cursor = 0;

    auto run_job = [&](std::size_t j) {
        const auto [u, p] = jobs[j];
        const UnitTask& unit = units[u];
        const std::size_t repeat = p / 2;
        const std::size_t fold = p % 2;
        JobOut out;

        bool all_done = true;
        for (const Classifier& c : roster) {
            if (!done.count(record_key(unit.unit, c.id, repeat, fold))) {
                all_done = false;
                break;
            }
        }
        if (all_done) {
            out.skipped = roster.size();
            return out;
        }

        const std::vector<std::size_t>& train_idx = unit.plan_train.pairs[p].train;
        const Dataset& test_ds = unit.test ? *unit.test : unit.train;
        const std::vector<std::size_t>& test_idx =
            unit.test ? unit.plan_test.pairs[p].test : unit.plan_train.pairs[p].test;

        Preprocessor pre;
        Matrix x_tr, x_te;
        std::vector<int> y_tr, y_te;
        std::vector<InstanceCosts> c_tr, c_te;
        try {
            pre = Preprocessor::fit(unit.train, train_idx);
            x_tr = pre.transform(unit.train.features.take_rows(train_idx));
            x_te = pre.transform(test_ds.features.take_rows(test_idx));
            for (std::size_t i : train_idx) {
                y_tr.push_back(unit.train.labels[i]);
                c_tr.push_back(unit.train.costs[i]);
            }
            for (std::size_t i : test_idx) {
                y_te.push_back(test_ds.labels[i]);
                c_te.push_back(test_ds.costs[i]);
            }
        } catch (const std::exception& e) {
            for (const Classifier& c : roster) {
                out.failures.push_back({unit.dataset, unit.unit, c.id, repeat, fold,
                                        std::string("preprocessing: ") + e.what()});
            }
            return out;
        }

        const std::uint64_t pair_seed =
            mix_seed(mix_seed(fnv1a64(unit.unit), config.protocol.seeds[repeat]), fold);

        for (const Classifier& c : roster) {
            if (done.count(record_key(unit.unit, c.id, repeat, fold))) {
                ++out.skipped;
                continue;
            }
            const std::uint64_t cls_seed = mix_seed(pair_seed, fnv1a64(c.id));
            try {
                std::vector<int> decisions(y_te.size());
                bool converged = true;
                if (!c.is_stack) {
                    LearnerSpec spec;
                    spec.algorithm = c.single.algorithm;
                    const SingleFit fit = train_calibrated_single(
                        spec, x_tr, y_tr, config.protocol.inner_folds, cls_seed);
                    converged = fit.all_converged;
                    for (std::size_t i = 0; i < y_te.size(); ++i) {
                        const double score = fit.scorer.score(x_te.row(i));
                        decisions[i] =
                            c.single.cost_sensitive ? decide(score, c_te[i]) : score > 0.5;
                    }
                } else {
                    StackingSpec spec;
                    spec.setup_type = c.stack.setup_type;
                    spec.transform = c.stack.transform;
                    spec.inner_folds = config.protocol.inner_folds;
                    spec.level1.algorithm = c.stack.level1;
                    for (Algo a : c.stack.level0) {
                        LearnerSpec ls;
                        ls.algorithm = a;
                        spec.level0.push_back(ls);
                    }
                    const StackedModel model =
                        train_stacking(spec, x_tr, y_tr, c_tr, cls_seed);
                    converged = model.all_converged;
                    decisions = model.predict_rows(x_te, c_te);
                }
                EvalRecord rec;
                rec.dataset = unit.dataset;
                rec.unit = unit.unit;
                rec.classifier = c.id;
                rec.repeat = repeat;
                rec.fold = fold;
                rec.n_test = y_te.size();
                rec.total_cost = total_cost(y_te, decisions, c_te);
                rec.savings_value = savings(y_te, decisions, c_te);
                rec.converged = converged;
                out.records.push_back(std::move(rec));
            } catch (const std::exception& e) {
                out.failures.push_back({unit.dataset, unit.unit, c.id, repeat, fold, e.what()});
            }
        }
        return out;
    };

    auto flush_ready = [&] {
        while (flush_cursor < jobs.size() && ready[flush_cursor]) {
            const JobOut& out = outputs[flush_cursor];
            for (const EvalRecord& r : out.records) append_record(results_out, r);
            for (const FailureRecord& f : out.failures) append_failure(failures_out, f);
            summary.records += out.records.size();
            summary.failures += out.failures.size();
            summary.skipped += out.skipped;
            ++flush_cursor;
        }
        results_out.flush();
        failures_out.flush();
    };

    const std::size_t workers = std::min(resolve_workers(options.workers),
                                         std::max<std::size_t>(1, jobs.size()));
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            while (true) {
                const std::size_t j = next_job.fetch_add(1);
                if (j >= jobs.size()) break;
                JobOut out = run_job(j);
                std::lock_guard<std::mutex> lock(flush_mutex);
                outputs[j] = std::move(out);
                ready[j] = 1;
                flush_ready();
            }
        });
    }
    for (std::thread& t : pool) t.join();
    {
        std::lock_guard<std::mutex> lock(flush_mutex);
        flush_ready();
    }

    const nlohmann::json config_doc = config.to_json();
    const std::string config_dump = config_doc.dump();
    nlohmann::json meta{{"config_hash",
                         [&] {
                             std::ostringstream hex;
                             hex << std::hex << std::setw(16) << std::setfill('0')
                                 << fnv1a64(config_dump);
                             return hex.str();
                         }()},
                        {"config", config_doc},
                        {"version", 1},
                        {"workers", workers},
                        {"resume", options.resume},
                        {"records_written", summary.records},
                        {"failures", summary.failures},
                        {"skipped", summary.skipped},
                        {"started_at", started_at},
                        {"finished_at", timestamp_utc()}};
    std::ofstream meta_out(out_dir + "/run_meta.json", std::ios::binary);
    if (!meta_out) throw Error("cannot write run_meta.json");
    meta_out << meta.dump(2) << '\n';
    return summary;
}

}  // namespace cstack
