// Acceptance gate: one pass/fail line per criterion, exit 0 only when all
// eleven hold. Tolerances are pinned here, not configurable.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "cstack/cost_decision.hpp"
#include "cstack/csv.hpp"
#include "cstack/experiment.hpp"
#include "cstack/isotonic.hpp"
#include "cstack/metrics.hpp"
#include "cstack/stacking.hpp"
#include "cstack/stats.hpp"
#include "cstack/synth.hpp"

using namespace cstack;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

namespace {

constexpr std::uint64_t kGermanSeed = 41;
constexpr std::uint64_t kGermanCostSeed = 907;
constexpr double kGermanSignal = 1.0;
// Class overlap is deliberate: per-instance thresholds only separate the
// setup types when calibrated probabilities stay mid-range.
constexpr double kGaussSeparation = 0.5;

struct CriterionResult {
    bool pass = false;
    std::string detail;
};

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* spec, double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), spec, v);
    return buf;
}

InstanceCosts random_reasonable(Rng& rng) {
    InstanceCosts c;
    c.tp = rng.uniform() * 2.0;
    c.tn = rng.uniform() * 2.0;
    c.fp = c.tn + 0.01 + rng.uniform() * 8.0;
    c.fn = c.tp + 0.01 + rng.uniform() * 8.0;
    return c;
}

// --- criterion 1: per-instance decision equals the expected-cost argmin ----

CriterionResult criterion1() {
    const auto t0 = Clock::now();
    Rng rng(20260801);
    std::size_t agree = 0;
    const std::size_t trials = 10000;
    for (std::size_t i = 0; i < trials; ++i) {
        const double p = rng.uniform();
        const InstanceCosts c = random_reasonable(rng);
        // Independent arithmetic for the oracle, ties resolved to 0.
        const double cost_pos = p * c.tp + (1.0 - p) * c.fp;
        const double cost_neg = p * c.fn + (1.0 - p) * c.tn;
        const int oracle = cost_pos < cost_neg ? 1 : 0;
        agree += static_cast<std::size_t>(decide(p, c) == oracle);
    }
    const double elapsed = seconds_since(t0);
    const bool pass = agree == trials && elapsed < 1.0;
    return {pass, std::to_string(agree) + "/10000 argmin agreements in " +
                      fmt("%.3f", elapsed) + " s (budget 1 s)"};
}

// --- criterion 2: threshold pin and exact scale invariance -----------------

CriterionResult criterion2() {
    const InstanceCosts base{0, 2, 8, 0};
    if (dmecc_threshold(base) != 0.2) {
        return {false, "threshold of (0,2,8,0) is " + fmt("%.17g", dmecc_threshold(base)) +
                           ", expected exactly 0.2"};
    }
    const InstanceCosts other{1, 4, 10, 2};  // threshold 2/11
    for (const double lambda : {0.5, 3.0, 1e6}) {
        for (const InstanceCosts& c : {base, other}) {
            const InstanceCosts scaled{lambda * c.tp, lambda * c.fp, lambda * c.fn,
                                       lambda * c.tn};
            if (dmecc_threshold(scaled) != dmecc_threshold(c)) {
                return {false, "threshold changed under scaling by " + fmt("%g", lambda)};
            }
        }
    }
    return {true, "threshold((0,2,8,0)) = 0.2 exactly; scale-invariant for lambda in {0.5, 3, 1e6}"};
}

// --- criterion 3: PAVA reaches the exact monotone optimum ------------------

/// Exact optimum by enumerating every contiguous partition whose weighted
/// block means are non-decreasing.
double brute_force_monotone_sse(std::span<const double> targets, std::span<const double> weights) {
    const std::size_t n = targets.size();
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t mask = 0; mask < (1u << (n - 1)); ++mask) {
        std::vector<std::pair<std::size_t, std::size_t>> blocks;  // [begin, end)
        std::size_t begin = 0;
        for (std::size_t i = 0; i + 1 < n; ++i) {
            if (mask & (1u << i)) {
                blocks.push_back({begin, i + 1});
                begin = i + 1;
            }
        }
        blocks.push_back({begin, n});

        double prev_mean = -std::numeric_limits<double>::infinity();
        double sse = 0.0;
        bool feasible = true;
        for (const auto& [b, e] : blocks) {
            double w_sum = 0.0, wy_sum = 0.0;
            for (std::size_t i = b; i < e; ++i) {
                w_sum += weights[i];
                wy_sum += weights[i] * targets[i];
            }
            const double mean = wy_sum / w_sum;
            if (mean < prev_mean) {
                feasible = false;
                break;
            }
            prev_mean = mean;
            for (std::size_t i = b; i < e; ++i) {
                sse += weights[i] * (targets[i] - mean) * (targets[i] - mean);
            }
        }
        if (feasible) best = std::min(best, sse);
    }
    return best;
}

CriterionResult criterion3() {
    const auto t0 = Clock::now();
    const std::vector<double> raw{0, 1, 2, 3, 4, 5};
    const std::vector<std::vector<double>> weight_patterns{
        {1, 1, 1, 1, 1, 1}, {2, 1, 2, 1, 2, 1}, {0.25, 4, 0.25, 4, 0.25, 4}};
    std::size_t cases = 0;
    double worst_gap = 0.0;
    for (std::size_t bits = 0; bits < 64; ++bits) {
        std::vector<double> targets(6);
        for (std::size_t i = 0; i < 6; ++i) targets[i] = (bits >> i) & 1 ? 1.0 : 0.0;
        for (const auto& weights : weight_patterns) {
            const IsotonicFit fit = pava(raw, targets, weights);
            double sse = 0.0;
            for (std::size_t i = 0; i < 6; ++i) {
                const double r = targets[i] - fit.apply(raw[i]);
                sse += weights[i] * r * r;
            }
            const double oracle = brute_force_monotone_sse(targets, weights);
            worst_gap = std::max(worst_gap, sse - oracle);
            ++cases;
            if (sse > oracle + 1e-9) {
                return {false, "PAVA SSE " + fmt("%.12f", sse) + " exceeds exact optimum " +
                                   fmt("%.12f", oracle) + " on pattern " + std::to_string(bits)};
            }
        }
    }
    const double elapsed = seconds_since(t0);
    const bool pass = elapsed < 10.0;
    return {pass, std::to_string(cases) + " cases optimal (worst gap " +
                      fmt("%.2e", worst_gap) + ") in " + fmt("%.3f", elapsed) + " s (budget 10 s)"};
}

// --- criterion 4: Friedman closed forms ------------------------------------

CriterionResult criterion4() {
    Matrix identical(12, 3);
    for (std::size_t i = 0; i < 12; ++i) {
        for (std::size_t j = 0; j < 3; ++j) identical(i, j) = static_cast<double>(j + 1);
    }
    const double stat = friedman(identical).statistic;
    if (std::abs(stat - 24.0) > 1e-9) {
        return {false, "identical rankings (k=3, n=12) gave " + fmt("%.12f", stat) +
                           ", expected 24 within 1e-9"};
    }
    Matrix tied(12, 3, 2.0);
    const double tied_stat = friedman(tied).statistic;
    if (tied_stat != 0.0) {
        return {false, "all-tied table gave " + fmt("%.12g", tied_stat) + ", expected 0"};
    }
    return {true, "identical rankings -> 24 within 1e-9; all-tied -> 0"};
}

// --- criterion 5: exact Wilcoxon p equals the 2^m enumeration --------------

double enumeration_p(std::span<const double> diffs) {
    const std::size_t m = diffs.size();
    std::vector<double> magnitudes(m);
    for (std::size_t i = 0; i < m; ++i) magnitudes[i] = std::abs(diffs[i]);
    const std::vector<double> ranks = fractional_ranks(magnitudes, true);
    std::vector<std::size_t> scaled(m);
    for (std::size_t i = 0; i < m; ++i) {
        scaled[i] = static_cast<std::size_t>(std::llround(2.0 * ranks[i]));
    }
    double w_pos = 0.0, w_neg = 0.0;
    for (std::size_t i = 0; i < m; ++i) (diffs[i] > 0.0 ? w_pos : w_neg) += ranks[i];
    const auto cutoff = static_cast<std::size_t>(std::llround(2.0 * std::min(w_pos, w_neg)));
    std::size_t at_or_below = 0;
    for (std::size_t mask = 0; mask < (1u << m); ++mask) {
        std::size_t sum = 0;
        for (std::size_t i = 0; i < m; ++i) {
            if (mask & (1u << i)) sum += scaled[i];
        }
        if (sum <= cutoff) ++at_or_below;
    }
    return std::min(1.0, 2.0 * static_cast<double>(at_or_below) /
                             std::pow(2.0, static_cast<double>(m)));
}

CriterionResult criterion5() {
    const std::vector<double> zeros5(5, 0.0);
    const TestOutcome pin = wilcoxon_signed_rank(std::vector<double>{1, 2, 3, 4, 5}, zeros5);
    if (pin.p_value != 0.0625) {
        return {false, "all-positive length-5 case gave p " + fmt("%.17g", pin.p_value) +
                           ", expected exactly 0.0625"};
    }
    Rng rng(5150);
    for (int sample = 0; sample < 200; ++sample) {
        const std::size_t m = 3 + rng.below(8);
        std::vector<double> diffs;
        for (std::size_t i = 0; i < m; ++i) {
            double d = static_cast<double>(1 + rng.below(4));
            if (rng.below(2)) d = -d;
            diffs.push_back(d);
        }
        const std::vector<double> zeros(m, 0.0);
        const TestOutcome out = wilcoxon_signed_rank(diffs, zeros);
        const double oracle = enumeration_p(diffs);
        if (out.p_value != oracle) {
            return {false, "sample " + std::to_string(sample) + " (m=" + std::to_string(m) +
                               "): exact p " + fmt("%.17g", out.p_value) +
                               " != enumeration " + fmt("%.17g", oracle)};
        }
    }
    return {true, "200 seeded samples bit-identical to the 2^m enumeration; length-5 pin 0.0625"};
}

// --- criterion 6: savings anchors and scale invariance ----------------------

CriterionResult criterion6() {
    const std::vector<int> truths{1, 0, 1, 0, 0};
    const std::vector<InstanceCosts> costs(truths.size(), InstanceCosts{0, 3, 9, 0});
    if (savings(truths, truths, costs) != 1.0) {
        return {false, "perfect classifier with zero correct-costs did not give savings 1.0"};
    }
    // The cheaper naive policy here is all-negative (2 * 9 < 3 * 3 is false:
    // all-neg costs 18, all-pos costs 9), so all-positive is the baseline.
    const std::vector<int> all_pos(truths.size(), 1);
    if (savings(truths, all_pos, costs) != 0.0) {
        return {false, "best naive policy did not give savings 0.0 exactly"};
    }

    Rng rng(606);
    double worst_rel = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 5 + rng.below(20);
        std::vector<int> t, d;
        std::vector<InstanceCosts> c;
        bool pos = false, neg = false;
        for (std::size_t i = 0; i < n; ++i) {
            t.push_back(static_cast<int>(rng.below(2)));
            d.push_back(static_cast<int>(rng.below(2)));
            c.push_back(random_reasonable(rng));
            pos = pos || t.back() == 1;
            neg = neg || t.back() == 0;
        }
        if (!pos || !neg) continue;
        const double s = savings(t, d, c);
        for (const double lambda : {0.5, 3.0, 1e6}) {
            std::vector<InstanceCosts> scaled;
            for (const InstanceCosts& x : c) {
                scaled.push_back({lambda * x.tp, lambda * x.fp, lambda * x.fn, lambda * x.tn});
            }
            const double s2 = savings(t, d, scaled);
            const double rel = std::abs(s2 - s) / std::max(1.0, std::abs(s));
            worst_rel = std::max(worst_rel, rel);
            if (rel > 1e-12) {
                return {false, "savings moved by relative " + fmt("%.3e", rel) +
                                   " under scaling by " + fmt("%g", lambda)};
            }
        }
    }
    return {true, "anchors 1.0 / 0.0 exact; scale drift <= " + fmt("%.2e", worst_rel) +
                      " relative (budget 1e-12)"};
}

// --- criterion 7: the 15-setup grid ------------------------------------------

CriterionResult criterion7() {
    const std::vector<StackingSpec> setups = enumerate_setups();
    if (setups.size() != 15) {
        return {false, "enumerate_setups() returned " + std::to_string(setups.size()) + " rows"};
    }
    const std::vector<std::string> expected{
        "type-1", "type-1_exp", "type-1_ln", "type-1_sq", "type-1_acc",
        "type-2", "type-2_exp", "type-2_ln", "type-2_sq", "type-2_acc",
        "type-3", "type-3_exp", "type-3_ln", "type-3_sq", "type-3_acc"};
    std::vector<std::size_t> unit_rows;
    for (std::size_t i = 0; i < 15; ++i) {
        const std::string alias = setup_alias(setups[i].setup_type, setups[i].transform);
        if (alias != expected[i]) {
            return {false, "row " + std::to_string(i + 1) + " is " + alias + ", expected " +
                               expected[i]};
        }
        if (setups[i].transform == WeightKind::unit) unit_rows.push_back(i + 1);
    }
    if (unit_rows != std::vector<std::size_t>{1, 6, 11}) {
        return {false, "unit-transform rows are not {1, 6, 11}"};
    }
    return {true, "15 rows in grid order, unit transforms at rows {1, 6, 11}"};
}

// --- criterion 8: weight transform pins and strict monotonicity -------------

CriterionResult criterion8() {
    const double e_const = std::exp(1.0);
    const struct {
        WeightKind kind;
        double at_half;
    } pins[]{{WeightKind::acc, 0.5},
             {WeightKind::exp, e_const},
             {WeightKind::ln, 0.0},
             {WeightKind::sq, 1.0}};
    for (const auto& pin : pins) {
        const double got = transform_weight(0.5, pin.kind);
        if (std::abs(got - pin.at_half) > 1e-12) {
            return {false, weight_kind_name(pin.kind) + "(0.5) = " + fmt("%.17g", got) +
                               ", expected " + fmt("%.17g", pin.at_half)};
        }
    }
    if (std::abs(transform_weight(0.2, WeightKind::sq) - 16.0) > 1e-12) {
        return {false, "sq(0.2) missed 16 beyond 1e-12"};
    }
    for (const WeightKind kind :
         {WeightKind::acc, WeightKind::exp, WeightKind::ln, WeightKind::sq}) {
        double prev = std::numeric_limits<double>::infinity();
        for (int i = 1; i <= 1000; ++i) {
            const double eps = static_cast<double>(i) / 1001.0;
            const double w = transform_weight(eps, kind);
            if (!(w < prev)) {
                return {false, weight_kind_name(kind) + " not strictly decreasing at eps " +
                                   fmt("%.6f", eps)};
            }
            prev = w;
        }
    }
    return {true, "pins at eps 0.5 and 0.2 within 1e-12; all four transforms strictly "
                  "decreasing on the 1000-point grid"};
}

// --- criteria 9 + 11: end-to-end benchmark and determinism ------------------

struct EndToEndContext {
    fs::path dir;
    nlohmann::json config_doc;
    std::string first_results;  // bytes of the first run's results.csv
    bool ready = false;
};

CriterionResult criterion9(EndToEndContext& ctx) {
    const auto t0 = Clock::now();
    ctx.dir = fs::temp_directory_path() / "cstack_acceptance";
    fs::remove_all(ctx.dir);
    fs::create_directories(ctx.dir);

    GermanLikeParams params;
    params.seed = kGermanSeed;
    params.signal = kGermanSignal;
    const Dataset german = german_like(params);
    const std::string csv = (ctx.dir / "credit.csv").string();
    const std::string schema = (ctx.dir / "credit.schema.json").string();
    write_feature_csv(german, csv);
    {
        std::ofstream out(schema, std::ios::binary);
        out << german_like_schema(kGermanCostSeed).dump(2);
    }

    ctx.config_doc = nlohmann::json{
        {"datasets", {{{"path", csv}, {"schema", schema}, {"name", "credit"}}}},
        {"classifiers",
         {{"singles",
           {{{"algorithm", "LR"}, {"cost_sensitive", true}},
            {{"algorithm", "DT"}, {"cost_sensitive", true}}}},
          {"stackings",
           {{{"setup", "type-1"}, {"level1", "LR"}},
            {{"setup", "type-2"}, {"level1", "LR"}},
            {{"setup", "type-3"}, {"level1", "LR"}}}}}},
        {"protocol", {{"repeats", 5}, {"seeds", {1, 2, 3, 4, 5}}}},
        {"output_dir", (ctx.dir / "run1").string()}};

    std::vector<std::string> errors;
    const ExperimentConfig config = config_from_json(ctx.config_doc, errors);
    if (!errors.empty()) return {false, "config rejected: " + errors.front()};

    const RunSummary summary = run_experiment(config);
    const double elapsed = seconds_since(t0);
    if (summary.failures != 0 || summary.records != 50) {
        return {false, std::to_string(summary.records) + " records and " +
                           std::to_string(summary.failures) +
                           " failures; expected 50 records, 0 failures"};
    }

    const std::vector<EvalRecord> records =
        read_results_csv((ctx.dir / "run1" / "results.csv").string());
    double mean_savings = 0.0;
    std::size_t cells = 0;
    for (const EvalRecord& r : records) {
        if (r.classifier == "stack:type-3:LR") {
            mean_savings += r.savings_value;
            ++cells;
        }
    }
    if (cells != 10) return {false, "type-3 stacking covered " + std::to_string(cells) + "/10 cells"};
    mean_savings /= static_cast<double>(cells);

    {
        std::ifstream in(ctx.dir / "run1" / "results.csv", std::ios::binary);
        std::ostringstream buf;
        buf << in.rdbuf();
        ctx.first_results = buf.str();
    }
    ctx.ready = true;

    const bool in_window = mean_savings > 0.0 && std::abs(mean_savings - 0.39) <= 0.20;
    const bool in_time = elapsed < 600.0;
    return {in_window && in_time,
            "1000-row credit benchmark, 5 classifiers x 5x2: type-3 mean savings " +
                fmt("%.4f", mean_savings) + " (window 0.19..0.59, must be positive), " +
                fmt("%.1f", elapsed) + " s (budget 600 s)"};
}

CriterionResult criterion11(EndToEndContext& ctx) {
    if (!ctx.ready) return {false, "skipped: the end-to-end run never completed"};
    nlohmann::json doc = ctx.config_doc;
    doc["output_dir"] = (ctx.dir / "run2").string();
    std::vector<std::string> errors;
    const ExperimentConfig config = config_from_json(doc, errors);
    if (!errors.empty()) return {false, "config rejected: " + errors.front()};
    run_experiment(config);

    std::ifstream in(ctx.dir / "run2" / "results.csv", std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    if (buf.str() != ctx.first_results) {
        return {false, "second run produced a different results.csv"};
    }
    return {true, "two runs of the benchmark config give byte-identical results.csv (" +
                      std::to_string(ctx.first_results.size()) + " bytes)"};
}

// --- criterion 10: type-3 beats type-1 across ten synthetic datasets --------

CriterionResult criterion10() {
    const fs::path dir = fs::temp_directory_path() / "cstack_acceptance_synth";
    fs::remove_all(dir);
    fs::create_directories(dir);

    nlohmann::json datasets = nlohmann::json::array();
    std::vector<std::string> names;
    for (int i = 0; i < 10; ++i) {
        GaussianParams params;
        params.n = 2000;
        params.dims = 6;
        params.separation = kGaussSeparation;
        params.seed = 101 + static_cast<std::uint64_t>(i);
        const Dataset ds = gaussian_blobs(params);
        const std::string name = "synth" + std::to_string(i);
        const std::string csv = (dir / (name + ".csv")).string();
        const std::string schema_path = (dir / (name + ".schema.json")).string();
        write_feature_csv(ds, csv);
        const nlohmann::json schema_doc =
            gaussian_schema(6, 1.0, 8.0, 501 + static_cast<std::uint64_t>(i));
        {
            std::ofstream out(schema_path, std::ios::binary);
            out << schema_doc.dump(2);
        }
        // The cost model must actually spread the error-cost ratio.
        const Dataset loaded = load_csv(csv, Schema::from_json(schema_doc), name);
        double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
        for (const InstanceCosts& c : loaded.costs) {
            const double ratio = c.fn / c.fp;
            lo = std::min(lo, ratio);
            hi = std::max(hi, ratio);
        }
        if (hi / lo < 4.0) {
            return {false, name + ": c_fn/c_fp ratio spread " + fmt("%.2f", hi / lo) +
                               " < 4x"};
        }
        datasets.push_back({{"path", csv}, {"schema", schema_path}, {"name", name}});
        names.push_back(name);
    }

    const nlohmann::json doc{
        {"datasets", datasets},
        {"classifiers",
         {{"stackings",
           {{{"setup", "type-1"}, {"level1", "LR"}},
            {{"setup", "type-3"}, {"level1", "LR"}}}}}},
        {"protocol", {{"repeats", 5}, {"seeds", {1, 2, 3, 4, 5}}}},
        {"output_dir", (dir / "run").string()}};
    std::vector<std::string> errors;
    const ExperimentConfig config = config_from_json(doc, errors);
    if (!errors.empty()) return {false, "config rejected: " + errors.front()};

    const RunSummary summary = run_experiment(config);
    if (summary.failures != 0 || summary.records != 200) {
        return {false, std::to_string(summary.records) + " records and " +
                           std::to_string(summary.failures) +
                           " failures; expected 200 records, 0 failures"};
    }

    // Per-dataset mean total cost, column 0 = type-1, column 1 = type-3.
    std::map<std::string, std::pair<double, double>> sums;  // name -> (t1, t3)
    for (const EvalRecord& r :
         read_results_csv((dir / "run" / "results.csv").string())) {
        if (r.classifier == "stack:type-1:LR") sums[r.dataset].first += r.total_cost;
        if (r.classifier == "stack:type-3:LR") sums[r.dataset].second += r.total_cost;
    }
    Matrix costs(10, 2);
    std::vector<double> t1_means, t3_means;
    for (std::size_t i = 0; i < names.size(); ++i) {
        costs(i, 0) = sums[names[i]].first / 10.0;
        costs(i, 1) = sums[names[i]].second / 10.0;
        t1_means.push_back(costs(i, 0));
        t3_means.push_back(costs(i, 1));
    }
    const RankTable table = average_ranks(costs);
    const TestOutcome wilcoxon = wilcoxon_signed_rank(t1_means, t3_means);

    fs::remove_all(dir);

    const bool rank_better = table.mean_ranks[1] < table.mean_ranks[0];
    const bool rejects = wilcoxon.p_value < 0.10;
    return {rank_better && rejects,
            "mean rank type-3 " + fmt("%.2f", table.mean_ranks[1]) + " vs type-1 " +
                fmt("%.2f", table.mean_ranks[0]) + " over 10 datasets; Wilcoxon p " +
                fmt("%.4f", wilcoxon.p_value) + " (must be < 0.10)"};
}

}  // namespace

int main() {
    EndToEndContext ctx;
    std::size_t passed = 0;
    const auto report = [&](int number, CriterionResult r) {
        std::printf("criterion %2d: %s - %s\n", number, r.pass ? "PASS" : "FAIL",
                    r.detail.c_str());
        std::fflush(stdout);
        passed += r.pass ? 1 : 0;
    };
    const auto guarded = [](auto&& fn) -> CriterionResult {
        try {
            return fn();
        } catch (const std::exception& e) {
            return {false, std::string("exception: ") + e.what()};
        }
    };

    report(1, guarded([] { return criterion1(); }));
    report(2, guarded([] { return criterion2(); }));
    report(3, guarded([] { return criterion3(); }));
    report(4, guarded([] { return criterion4(); }));
    report(5, guarded([] { return criterion5(); }));
    report(6, guarded([] { return criterion6(); }));
    report(7, guarded([] { return criterion7(); }));
    report(8, guarded([] { return criterion8(); }));
    report(9, guarded([&] { return criterion9(ctx); }));
    report(10, guarded([] { return criterion10(); }));
    report(11, guarded([&] { return criterion11(ctx); }));

    if (!ctx.dir.empty()) {
        std::error_code ec;
        fs::remove_all(ctx.dir, ec);
    }
    std::printf("acceptance: %zu/11 criteria passed\n", passed);
    return passed == 11 ? 0 : 1;
}
