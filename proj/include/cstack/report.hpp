#pragma once

#include <string>
#include <vector>

#include "cstack/experiment.hpp"
#include "cstack/stats.hpp"

namespace cstack {

/// Rank comparison over one classifier family ("all", or the stacking setups
/// sharing a level-1 algorithm). Ranks are recomputed within the group.
struct GroupReport {
    std::string name;
    std::vector<std::string> classifiers;  // column order within the group
    RankTable ranks;                       // datasets x members
    bool computed = false;                 // omnibus tests ran
    std::string reason;                    // filled when !computed
    TestOutcome friedman_test;
    TestOutcome iman_davenport_test;
    bool cd_computed = false;
    std::string cd_reason;
    double cd = 0.0;
    CdDiagram diagram;
};

struct ReportBundle {
    double alpha = 0.05;
    std::vector<std::string> datasets;     // first-appearance order
    std::vector<std::string> classifiers;  // complete classifiers only
    std::vector<std::string> excluded;     // classifiers missing cells, listed in the notice
    Matrix mean_cost;                      // datasets x classifiers
    Matrix mean_savings;
    std::vector<GroupReport> groups;  // "all" first, then per level-1 stacking families
    bool wilcoxon_computed = false;
    std::string wilcoxon_reason;
    std::vector<std::vector<std::string>> wilcoxon;  // "W (p)" cells, "" diagonal, "n/a" degenerate
};

/// "%.2f" with exactly one trailing zero trimmed: 0.30 -> "0.3", 0.00 -> "0.0",
/// 0.05 -> "0.05", 1.00 -> "1.0".
std::string format_p_value(double p);

/// Aggregates raw fold records: per unit the ten (repeat, fold) cells are
/// averaged, per dataset the unit means are averaged. Classifiers that miss
/// any (unit, repeat, fold) cell present in the results are excluded from the
/// comparisons and listed in `excluded`.
ReportBundle build_report(const std::vector<EvalRecord>& records, double alpha);

/// Writes summary_cost.csv, summary_savings.csv, ranks.csv, friedman.csv,
/// wilcoxon.csv, cd_<group>.json and report.md under `dir`.
void write_report(const ReportBundle& bundle, const std::string& dir);

}  // namespace cstack
