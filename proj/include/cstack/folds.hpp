#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "cstack/dataset.hpp"

namespace cstack {

struct FoldPair {
    std::vector<std::size_t> train;
    std::vector<std::size_t> test;
};

/// Repeat-major list of (train, test) index pairs: repeat r contributes pairs
/// [r*k, (r+1)*k). Within a repeat the test sets partition the index range.
struct FoldPlan {
    std::size_t k = 0;
    std::size_t repeats = 0;
    std::vector<std::uint64_t> repeat_seeds;
    std::vector<FoldPair> pairs;
};

/// One repeat of stratified k-fold CV. Indices of each class are shuffled
/// with the seeded generator and dealt round-robin, so per-fold class counts
/// differ by at most one from an even split. Errors if any class has fewer
/// than k members.
FoldPlan stratified_kfold(std::span<const int> labels, std::size_t k, std::uint64_t seed);

/// Dietterich-style 5x2 protocol: one stratified 2-fold repeat per seed
/// (at least 5 seeds), each repeat contributing the pair that tests on fold 0
/// and then the pair that tests on fold 1.
FoldPlan five_by_two_plan(std::span<const int> labels, std::span<const std::uint64_t> seeds);

/// Uniformly random partition of 0..n-1 into `parts` chunks whose sizes
/// differ by at most one (the first n mod parts chunks get the extra row).
/// Each chunk is returned sorted.
std::vector<std::vector<std::size_t>> partition_indices(std::size_t n, std::size_t parts,
                                                        std::uint64_t seed);

/// Splits a dataset into `parts` disjoint random subsets, costs travelling
/// with their rows.
std::vector<Dataset> subsample_partition(const Dataset& ds, std::size_t parts,
                                         std::uint64_t seed);

}  // namespace cstack
