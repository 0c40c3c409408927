#pragma once

#include <cstdint>
#include <vector>

#include "kddx/tree.hpp"

namespace kddx {

struct ForestParams {
    std::size_t n_trees = 100;
    std::size_t features_per_split = 0;  // 0 = floor(sqrt(n_cols))
    bool bootstrap = true;
    std::uint64_t seed = 0;
    TreeParams tree;
    std::size_t n_threads = 0;  // 0 = hardware_concurrency
};

struct ForestModel {
    std::vector<DecisionTreeModel> trees;
    ForestParams params;
    std::size_t n_cols = 0;
    std::size_t n_classes = 0;
};

// Bagged CART forest. Each tree draws a bootstrap sample (n_rows draws with
// replacement) and a fresh candidate-feature subset per split; tree i uses an
// RNG seeded by mix_seed(seed, i), so parallel training is byte-identical to
// serial.
ForestModel fit_forest(const Dataset& train, const ForestParams& params);

// Majority vote over trees, ties -> lower class id.
std::vector<std::int32_t> predict_forest(const ForestModel& model, const Dataset& ds);

// Mean over trees of per-tree impurity decrease per feature, each split
// weighted by its node's sample fraction; normalized to sum to 1.
std::vector<double> feature_importances(const ForestModel& model);

}  // namespace kddx
