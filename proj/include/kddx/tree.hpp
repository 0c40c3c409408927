#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "kddx/dataset.hpp"
#include "kddx/rng.hpp"

namespace kddx {

// Flat node storage; children referenced by index. Leaves have
// feature_index == -1. Rule: go left iff x[feature] <= threshold.
struct TreeNode {
    std::int32_t feature_index = -1;
    double threshold = 0.0;
    std::int32_t left = -1;
    std::int32_t right = -1;
    std::int32_t class_id = -1;
    double split_decrease = 0.0;  // weighted Gini decrease; 0 for leaves
    std::vector<std::size_t> class_histogram;

    bool is_leaf() const { return feature_index < 0; }
};

struct TreeParams {
    std::optional<std::size_t> max_depth;  // nullopt = unlimited
    std::size_t min_samples_split = 2;
    double min_impurity_decrease = 0.0;
};

struct DecisionTreeModel {
    std::vector<TreeNode> nodes;  // nodes[0] is the root
    TreeParams params;
    std::size_t n_cols = 0;
    std::size_t n_classes = 0;
};

struct SplitChoice {
    std::size_t feature = 0;
    double threshold = 0.0;
    double impurity_decrease = 0.0;
};

// 1 - sum p_c^2
double gini_impurity(const std::vector<std::size_t>& class_counts);

// Best (feature, threshold) over the candidate features by weighted Gini
// decrease; thresholds are midpoints between consecutive distinct sorted
// values; ties -> lower feature index, then lower threshold. nullopt when no
// split has positive decrease.
std::optional<SplitChoice> best_split(const Dataset& ds,
                                      const std::vector<std::size_t>& rows,
                                      const std::vector<std::size_t>& candidate_features);

DecisionTreeModel fit_tree(const Dataset& train, const TreeParams& params);

// Internal entry point shared with the forest: restricts training to `rows`
// and, when rng != nullptr, samples `features_per_split` candidate features
// at each node.
DecisionTreeModel fit_tree_on_rows(const Dataset& train,
                                   const std::vector<std::size_t>& rows,
                                   const TreeParams& params,
                                   std::size_t features_per_split, Rng* rng);

std::vector<std::int32_t> predict_tree(const DecisionTreeModel& model, const Dataset& ds);
std::int32_t predict_tree_row(const DecisionTreeModel& model, const double* x);

}  // namespace kddx
