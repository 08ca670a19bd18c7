#include "cstack/report.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace fs = std::filesystem;

namespace cstack {

namespace {

std::string csv_quote(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    out += '"';
    return out;
}

std::string fmt(const char* spec, double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), spec, v);
    return buf;
}

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) out += sep;
        out += parts[i];
    }
    return out;
}

/// "stack:type-3_sq:LR" -> "LR"; empty for non-stacking ids.
std::string stack_level1(const std::string& id) {
    if (id.rfind("stack:", 0) != 0) return "";
    const std::size_t pos = id.rfind(':');
    return id.substr(pos + 1);
}

GroupReport make_group(const std::string& name, const std::vector<std::string>& members,
                       const std::vector<std::string>& datasets, const Matrix& mean_cost,
                       const std::vector<std::size_t>& member_cols, double alpha) {
    GroupReport group;
    group.name = name;
    group.classifiers = members;

    if (members.size() < 2) {
        group.reason = "needs at least 2 classifiers with complete results";
        return group;
    }
    if (datasets.size() < 2) {
        group.reason = "needs results on at least 2 datasets";
        return group;
    }

    Matrix scores(datasets.size(), members.size());
    for (std::size_t d = 0; d < datasets.size(); ++d) {
        for (std::size_t j = 0; j < members.size(); ++j) {
            scores(d, j) = mean_cost(d, member_cols[j]);
        }
    }
    group.ranks = average_ranks(scores, /*lower_is_better=*/true);
    group.friedman_test = friedman(group.ranks.ranks);
    group.iman_davenport_test = iman_davenport(group.ranks.ranks);
    group.computed = true;

    try {
        group.cd = nemenyi_cd(members.size(), datasets.size(), alpha);
        group.cd_computed = true;
        group.diagram = cd_diagram_data(members, group.ranks.mean_ranks, group.cd);
    } catch (const Error& e) {
        group.cd_reason = e.what();
    }
    return group;
}

}  // namespace

std::string format_p_value(double p) {
    std::string out = fmt("%.2f", p);
    if (out.size() > 1 && out.back() == '0' && out.find('.') != std::string::npos) {
        out.pop_back();
    }
    return out;
}

ReportBundle build_report(const std::vector<EvalRecord>& records, double alpha) {
    ReportBundle bundle;
    bundle.alpha = alpha;
    if (records.empty()) throw Error("report: no result records");

    // First-appearance orders and coverage bookkeeping.
    std::vector<std::string> all_classifiers;
    std::map<std::string, std::string> unit_dataset;
    std::map<std::string, std::vector<std::string>> dataset_units;
    std::set<std::string> seen_keys;
    std::set<std::string> all_triples;
    std::map<std::string, std::set<std::string>> classifier_triples;
    struct Cell {
        double cost_sum = 0.0;
        double savings_sum = 0.0;
        std::size_t count = 0;
    };
    std::map<std::string, Cell> cells;  // key: classifier \x1f unit

    for (const EvalRecord& r : records) {
        const std::string triple =
            r.unit + '\x1f' + std::to_string(r.repeat) + '\x1f' + std::to_string(r.fold);
        const std::string key = r.classifier + '\x1f' + triple;
        if (!seen_keys.insert(key).second) {
            throw Error("report: duplicate result row for " + r.classifier + " on " + r.unit +
                        " repeat " + std::to_string(r.repeat) + " fold " + std::to_string(r.fold));
        }
        if (std::find(bundle.datasets.begin(), bundle.datasets.end(), r.dataset) ==
            bundle.datasets.end()) {
            bundle.datasets.push_back(r.dataset);
        }
        if (std::find(all_classifiers.begin(), all_classifiers.end(), r.classifier) ==
            all_classifiers.end()) {
            all_classifiers.push_back(r.classifier);
        }
        auto [it, inserted] = unit_dataset.emplace(r.unit, r.dataset);
        if (inserted) dataset_units[r.dataset].push_back(r.unit);
        else if (it->second != r.dataset) {
            throw Error("report: unit " + r.unit + " appears under two datasets");
        }
        all_triples.insert(triple);
        classifier_triples[r.classifier].insert(triple);
        Cell& cell = cells[r.classifier + '\x1f' + r.unit];
        cell.cost_sum += r.total_cost;
        cell.savings_sum += r.savings_value;
        ++cell.count;
    }

    for (const std::string& c : all_classifiers) {
        if (classifier_triples[c].size() == all_triples.size()) bundle.classifiers.push_back(c);
        else bundle.excluded.push_back(c);
    }

    // Per-dataset means: average the unit cells, then the units.
    bundle.mean_cost = Matrix(bundle.datasets.size(), bundle.classifiers.size());
    bundle.mean_savings = Matrix(bundle.datasets.size(), bundle.classifiers.size());
    for (std::size_t d = 0; d < bundle.datasets.size(); ++d) {
        const std::vector<std::string>& units = dataset_units[bundle.datasets[d]];
        for (std::size_t j = 0; j < bundle.classifiers.size(); ++j) {
            double cost = 0.0, save = 0.0;
            for (const std::string& unit : units) {
                const Cell& cell = cells.at(bundle.classifiers[j] + '\x1f' + unit);
                cost += cell.cost_sum / static_cast<double>(cell.count);
                save += cell.savings_sum / static_cast<double>(cell.count);
            }
            bundle.mean_cost(d, j) = cost / static_cast<double>(units.size());
            bundle.mean_savings(d, j) = save / static_cast<double>(units.size());
        }
    }

    // Groups: everything, then the stacking families sharing a level-1 algorithm.
    std::vector<std::size_t> all_cols(bundle.classifiers.size());
    for (std::size_t j = 0; j < all_cols.size(); ++j) all_cols[j] = j;
    bundle.groups.push_back(
        make_group("all", bundle.classifiers, bundle.datasets, bundle.mean_cost, all_cols, alpha));

    std::vector<std::string> family_order;
    std::map<std::string, std::vector<std::size_t>> families;
    for (std::size_t j = 0; j < bundle.classifiers.size(); ++j) {
        const std::string algo = stack_level1(bundle.classifiers[j]);
        if (algo.empty()) continue;
        if (!families.count(algo)) family_order.push_back(algo);
        families[algo].push_back(j);
    }
    for (const std::string& algo : family_order) {
        const std::vector<std::size_t>& cols = families[algo];
        if (cols.size() < 2) continue;
        std::vector<std::string> members;
        for (std::size_t j : cols) members.push_back(bundle.classifiers[j]);
        bundle.groups.push_back(make_group("stacking-" + algo, members, bundle.datasets,
                                           bundle.mean_cost, cols, alpha));
    }

    // Pairwise Wilcoxon over the per-dataset mean costs.
    if (bundle.classifiers.size() < 2) {
        bundle.wilcoxon_reason = "needs at least 2 classifiers with complete results";
    } else if (bundle.datasets.size() < 3) {
        bundle.wilcoxon_reason = "needs at least 3 datasets of paired scores";
    } else {
        bundle.wilcoxon_computed = true;
        const std::size_t k = bundle.classifiers.size();
        bundle.wilcoxon.assign(k, std::vector<std::string>(k));
        std::vector<double> a(bundle.datasets.size()), b(bundle.datasets.size());
        for (std::size_t i = 0; i < k; ++i) {
            for (std::size_t j = 0; j < k; ++j) {
                if (i == j) continue;
                for (std::size_t d = 0; d < bundle.datasets.size(); ++d) {
                    a[d] = bundle.mean_cost(d, i);
                    b[d] = bundle.mean_cost(d, j);
                }
                try {
                    const TestOutcome t = wilcoxon_signed_rank(a, b);
                    bundle.wilcoxon[i][j] =
                        fmt("%.1f", t.statistic) + " (" + format_p_value(t.p_value) + ")";
                } catch (const Error&) {
                    bundle.wilcoxon[i][j] = "n/a";
                }
            }
        }
    }
    return bundle;
}

void write_report(const ReportBundle& bundle, const std::string& dir) {
    fs::create_directories(dir);

    auto open = [&](const std::string& name) {
        std::ofstream out(dir + "/" + name, std::ios::binary);
        if (!out) throw Error("cannot write " + dir + "/" + name);
        return out;
    };

    // Per-dataset mean tables.
    for (const auto& [file, matrix] :
         {std::pair<const char*, const Matrix*>{"summary_cost.csv", &bundle.mean_cost},
          std::pair<const char*, const Matrix*>{"summary_savings.csv", &bundle.mean_savings}}) {
        std::ofstream out = open(file);
        out << "dataset";
        for (const std::string& c : bundle.classifiers) out << ',' << c;
        out << '\n';
        for (std::size_t d = 0; d < bundle.datasets.size(); ++d) {
            out << bundle.datasets[d];
            for (std::size_t j = 0; j < bundle.classifiers.size(); ++j) {
                out << ',' << format_double((*matrix)(d, j));
            }
            out << '\n';
        }
    }

    // Rank matrix for the full roster.
    {
        std::ofstream out = open("ranks.csv");
        const GroupReport& all = bundle.groups.front();
        if (!all.computed) {
            out << "not computed: " << all.reason << '\n';
        } else {
            out << "dataset";
            for (const std::string& c : all.classifiers) out << ',' << c;
            out << '\n';
            for (std::size_t d = 0; d < bundle.datasets.size(); ++d) {
                out << bundle.datasets[d];
                for (std::size_t j = 0; j < all.classifiers.size(); ++j) {
                    out << ',' << format_double(all.ranks.ranks(d, j));
                }
                out << '\n';
            }
            out << "mean_rank";
            for (double r : all.ranks.mean_ranks) out << ',' << format_double(r);
            out << '\n';
        }
    }

    // Omnibus tests per group.
    {
        std::ofstream out = open("friedman.csv");
        out << "group,k,n,chi2,chi2_p,iman_davenport_F,iman_davenport_p,cd,computed,reason\n";
        for (const GroupReport& g : bundle.groups) {
            out << g.name << ',' << g.classifiers.size() << ',' << bundle.datasets.size() << ',';
            if (g.computed) {
                out << format_double(g.friedman_test.statistic) << ','
                    << format_double(g.friedman_test.p_value) << ','
                    << format_double(g.iman_davenport_test.statistic) << ','
                    << format_double(g.iman_davenport_test.p_value) << ','
                    << (g.cd_computed ? format_double(g.cd) : "") << ",yes,"
                    << csv_quote(g.cd_computed ? "" : g.cd_reason) << '\n';
            } else {
                out << ",,,,,no," << csv_quote(g.reason) << '\n';
            }
        }
    }

    // Pairwise Wilcoxon matrix.
    {
        std::ofstream out = open("wilcoxon.csv");
        if (!bundle.wilcoxon_computed) {
            out << "not computed: " << bundle.wilcoxon_reason << '\n';
        } else {
            out << "classifier";
            for (const std::string& c : bundle.classifiers) out << ',' << c;
            out << '\n';
            for (std::size_t i = 0; i < bundle.classifiers.size(); ++i) {
                out << bundle.classifiers[i];
                for (std::size_t j = 0; j < bundle.classifiers.size(); ++j) {
                    out << ',' << csv_quote(bundle.wilcoxon[i][j]);
                }
                out << '\n';
            }
        }
    }

    // Critical-difference diagram data per group.
    for (const GroupReport& g : bundle.groups) {
        if (!g.cd_computed) continue;
        nlohmann::json cliques = nlohmann::json::array();
        for (const std::vector<std::size_t>& clique : g.diagram.cliques) {
            nlohmann::json names = nlohmann::json::array();
            for (std::size_t idx : clique) names.push_back(g.diagram.classifiers[idx]);
            cliques.push_back(std::move(names));
        }
        nlohmann::json doc{{"group", g.name},
                           {"alpha", bundle.alpha},
                           {"classifiers", g.diagram.classifiers},
                           {"mean_ranks", g.diagram.mean_ranks},
                           {"cd", g.diagram.cd},
                           {"cliques", cliques}};
        std::ofstream out = open("cd_" + g.name + ".json");
        out << doc.dump(2) << '\n';
    }

    // Human-readable overview.
    {
        std::ofstream out = open("report.md");
        out << "# Benchmark report\n\n";
        out << "- alpha: " << format_double(bundle.alpha) << "\n";
        out << "- datasets (" << bundle.datasets.size() << "): " << join(bundle.datasets, ", ")
            << "\n";
        out << "- classifiers compared: " << bundle.classifiers.size() << "\n";
        if (!bundle.excluded.empty()) {
            out << "\n**Notice**: excluded from all comparisons (incomplete results): "
                << join(bundle.excluded, ", ") << "\n";
        }
        for (const GroupReport& g : bundle.groups) {
            out << "\n## Group `" << g.name << "`\n\n";
            if (!g.computed) {
                out << "Not computed: " << g.reason << "\n";
                continue;
            }
            std::vector<std::size_t> order(g.classifiers.size());
            for (std::size_t j = 0; j < order.size(); ++j) order[j] = j;
            std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
                return g.ranks.mean_ranks[x] < g.ranks.mean_ranks[y];
            });
            out << "| classifier | mean rank |\n|---|---|\n";
            for (std::size_t j : order) {
                out << "| " << g.classifiers[j] << " | " << fmt("%.3f", g.ranks.mean_ranks[j])
                    << " |\n";
            }
            out << "\nFriedman chi2 = " << fmt("%.4f", g.friedman_test.statistic)
                << " (p = " << format_p_value(g.friedman_test.p_value) << "), Iman-Davenport F = "
                << fmt("%.4f", g.iman_davenport_test.statistic)
                << " (p = " << format_p_value(g.iman_davenport_test.p_value) << ")\n";
            if (g.cd_computed) {
                out << "\nNemenyi critical difference: " << fmt("%.4f", g.cd) << "\n";
                for (const std::vector<std::size_t>& clique : g.diagram.cliques) {
                    std::vector<std::string> names;
                    for (std::size_t idx : clique) names.push_back(g.diagram.classifiers[idx]);
                    out << "- clique: {" << join(names, ", ") << "}\n";
                }
            } else {
                out << "\nCritical difference not computed: " << g.cd_reason << "\n";
            }
        }
        out << "\n## Pairwise Wilcoxon\n\n";
        if (bundle.wilcoxon_computed) {
            out << "See `wilcoxon.csv`; cells are `statistic (p)` for row vs column.\n";
        } else {
            out << "Not computed: " << bundle.wilcoxon_reason << "\n";
        }
    }
}

}  // namespace cstack
