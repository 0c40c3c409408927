#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "kddx/dataset.hpp"

namespace kddx {

struct SmoteConfig {
    std::size_t k_neighbors = 5;
    // empty => balance every class up to the majority count
    std::map<std::int32_t, std::size_t> per_class_counts;
    std::uint64_t seed = 0;
    // Above this class size the neighbor pool is a seeded subsample; exact
    // O(n^2) kNN on a 40k-row class would dominate the whole run.
    std::size_t neighbor_pool_cap = 4096;
};

struct ClassResample {
    std::size_t before = 0;
    std::size_t after = 0;
    std::size_t synthetic = 0;
};

struct ResampleReport {
    std::vector<ClassResample> per_class;  // indexed by class id
};

// k nearest rows to `query_index` within X_class (row-major, n x dim) by
// Euclidean distance, query excluded, ties broken by lower row index.
std::vector<std::size_t> knn_minority(const std::vector<double>& X_class,
                                      std::size_t n, std::size_t dim,
                                      std::size_t query_index, std::size_t k);

// Classic SMOTE on the training partition: synthetic = x + r*(nn - x) with
// r uniform in [0,1), nn uniform over x's k nearest same-class neighbors.
// Originals are preserved verbatim; synthetic rows are appended per class in
// ascending class-id order. Deterministic: per-class RNG derived from
// (seed, class_id).
std::pair<Dataset, ResampleReport> smote_resample(const Dataset& train,
                                                  const SmoteConfig& cfg);

}  // namespace kddx
