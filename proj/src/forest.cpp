#include "kddx/forest.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <numeric>
#include <thread>

#include "kddx/error.hpp"

namespace kddx {

ForestModel fit_forest(const Dataset& train, const ForestParams& params) {
    if (params.n_trees < 1) throw ConfigError("forest: n_trees must be >= 1");
    ForestModel model;
    model.params = params;
    model.n_cols = train.n_cols;
    model.n_classes = train.n_classes();

    std::size_t fps = params.features_per_split;
    if (fps == 0)
        fps = std::max<std::size_t>(
            1, static_cast<std::size_t>(std::floor(std::sqrt(train.n_cols))));
    if (fps > train.n_cols) throw ConfigError("forest: features_per_split > n_cols");
    model.params.features_per_split = fps;

    model.trees.resize(params.n_trees);

    auto fit_one = [&](std::size_t t) {
        Rng rng(mix_seed(params.seed, t));
        std::vector<std::size_t> rows(train.n_rows);
        if (params.bootstrap) {
            for (auto& r : rows) r = rng.next_below(train.n_rows);
        } else {
            std::iota(rows.begin(), rows.end(), 0);
        }
        model.trees[t] = fit_tree_on_rows(train, rows, params.tree, fps, &rng);
    };

    std::size_t n_threads = params.n_threads;
    if (n_threads == 0) n_threads = std::max(1u, std::thread::hardware_concurrency());
    n_threads = std::min<std::size_t>(n_threads, params.n_trees);

    if (n_threads <= 1) {
        for (std::size_t t = 0; t < params.n_trees; ++t) fit_one(t);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> workers;
        workers.reserve(n_threads);
        for (std::size_t w = 0; w < n_threads; ++w) {
            workers.emplace_back([&] {
                for (std::size_t t = next.fetch_add(1); t < params.n_trees;
                     t = next.fetch_add(1))
                    fit_one(t);
            });
        }
        for (auto& w : workers) w.join();
    }
    return model;
}

std::vector<std::int32_t> predict_forest(const ForestModel& model, const Dataset& ds) {
    if (ds.n_cols != model.n_cols)
        throw DimensionMismatch("predict_forest: column count mismatch");
    std::vector<std::int32_t> out(ds.n_rows);
    std::vector<std::size_t> votes(model.n_classes);
    for (std::size_t r = 0; r < ds.n_rows; ++r) {
        std::fill(votes.begin(), votes.end(), 0);
        for (const auto& tree : model.trees)
            votes[static_cast<std::size_t>(predict_tree_row(tree, ds.row(r)))]++;
        std::size_t best = 0;
        for (std::size_t c = 1; c < votes.size(); ++c)
            if (votes[c] > votes[best]) best = c;  // ties -> lower class id
        out[r] = static_cast<std::int32_t>(best);
    }
    return out;
}

std::vector<double> feature_importances(const ForestModel& model) {
    std::vector<double> total(model.n_cols, 0.0);
    for (const auto& tree : model.trees) {
        if (tree.nodes.empty()) continue;
        const double n_root = static_cast<double>(std::accumulate(
            tree.nodes[0].class_histogram.begin(), tree.nodes[0].class_histogram.end(),
            std::size_t{0}));
        std::vector<double> per_tree(model.n_cols, 0.0);
        for (const auto& nd : tree.nodes) {
            if (nd.is_leaf()) continue;
            const double n_node = static_cast<double>(std::accumulate(
                nd.class_histogram.begin(), nd.class_histogram.end(), std::size_t{0}));
            per_tree[static_cast<std::size_t>(nd.feature_index)] +=
                (n_node / n_root) * nd.split_decrease;
        }
        for (std::size_t f = 0; f < model.n_cols; ++f)
            total[f] += per_tree[f] / static_cast<double>(model.trees.size());
    }
    const double sum = std::accumulate(total.begin(), total.end(), 0.0);
    if (sum > 0.0)
        for (auto& v : total) v /= sum;
    return total;
}

}  // namespace kddx
