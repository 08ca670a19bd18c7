#include "cstack/folds.hpp"

#include <algorithm>

namespace cstack {

FoldPlan stratified_kfold(std::span<const int> labels, std::size_t k, std::uint64_t seed) {
    if (k < 2) throw Error("stratified_kfold: k must be >= 2");

    std::vector<std::size_t> pos, neg;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        (labels[i] == 1 ? pos : neg).push_back(i);
    }
    if (pos.size() < k || neg.size() < k) {
        throw Error("stratified_kfold: class with fewer than k=" + std::to_string(k) +
                    " members (positives " + std::to_string(pos.size()) + ", negatives " +
                    std::to_string(neg.size()) + ")");
    }

    Rng rng(seed);
    rng.shuffle(pos);
    rng.shuffle(neg);

    std::vector<std::vector<std::size_t>> folds(k);
    for (std::size_t i = 0; i < pos.size(); ++i) folds[i % k].push_back(pos[i]);
    for (std::size_t i = 0; i < neg.size(); ++i) folds[i % k].push_back(neg[i]);

    FoldPlan plan;
    plan.k = k;
    plan.repeats = 1;
    plan.repeat_seeds = {seed};
    plan.pairs.resize(k);
    for (std::size_t f = 0; f < k; ++f) {
        FoldPair& pair = plan.pairs[f];
        pair.test = folds[f];
        for (std::size_t g = 0; g < k; ++g) {
            if (g == f) continue;
            pair.train.insert(pair.train.end(), folds[g].begin(), folds[g].end());
        }
        std::sort(pair.test.begin(), pair.test.end());
        std::sort(pair.train.begin(), pair.train.end());
    }
    return plan;
}

FoldPlan five_by_two_plan(std::span<const int> labels, std::span<const std::uint64_t> seeds) {
    if (seeds.size() < 5) {
        throw Error("five_by_two_plan: need at least 5 seeds, got " + std::to_string(seeds.size()));
    }
    FoldPlan plan;
    plan.k = 2;
    plan.repeats = seeds.size();
    for (std::uint64_t seed : seeds) {
        FoldPlan repeat = stratified_kfold(labels, 2, seed);
        plan.repeat_seeds.push_back(seed);
        plan.pairs.push_back(std::move(repeat.pairs[0]));
        plan.pairs.push_back(std::move(repeat.pairs[1]));
    }
    return plan;
}

std::vector<std::vector<std::size_t>> partition_indices(std::size_t n, std::size_t parts,
                                                        std::uint64_t seed) {
    if (parts < 2) throw Error("partition: parts must be >= 2");

    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    Rng rng(seed);
    rng.shuffle(order);

    const std::size_t base = n / parts;
    const std::size_t extra = n % parts;
    std::vector<std::vector<std::size_t>> chunks(parts);
    std::size_t at = 0;
    for (std::size_t p = 0; p < parts; ++p) {
        const std::size_t size = base + (p < extra ? 1 : 0);
        chunks[p].assign(order.begin() + at, order.begin() + at + size);
        std::sort(chunks[p].begin(), chunks[p].end());
        at += size;
    }
    return chunks;
}

std::vector<Dataset> subsample_partition(const Dataset& ds, std::size_t parts,
                                         std::uint64_t seed) {
    const auto chunks = partition_indices(ds.n(), parts, seed);
    std::vector<Dataset> out;
    out.reserve(parts);
    for (std::size_t p = 0; p < parts; ++p) {
        Dataset sub = ds.subset(chunks[p]);
        sub.name = ds.name + "#part" + std::to_string(p);
        out.push_back(std::move(sub));
    }
    return out;
}

}  // namespace cstack
