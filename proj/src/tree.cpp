#include "kddx/tree.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "kddx/error.hpp"

namespace kddx {

namespace {

constexpr double kMinDecrease = 1e-12;  // below this, a "decrease" is float noise

double gini_from_counts(const std::vector<std::size_t>& counts, double total) {
    double s = 0.0;
    for (std::size_t c : counts) {
        const double p = static_cast<double>(c) / total;
        s += p * p;
    }
    return 1.0 - s;
}

std::int32_t argmax_class(const std::vector<std::size_t>& hist) {
    std::size_t best = 0;
    for (std::size_t c = 1; c < hist.size(); ++c)
        if (hist[c] > hist[best]) best = c;  // ties -> lower class id
    return static_cast<std::int32_t>(best);
}

}  // namespace

double gini_impurity(const std::vector<std::size_t>& class_counts) {
    std::size_t total = std::accumulate(class_counts.begin(), class_counts.end(),
                                        std::size_t{0});
    if (total == 0) throw EmptyHistogram("gini: empty histogram");
    return gini_from_counts(class_counts, static_cast<double>(total));
}

namespace {

// Scratch buffers reused across nodes of one tree.
struct SplitScratch {
    std::vector<std::pair<double, std::int32_t>> vals;
    std::vector<std::size_t> left;
    std::vector<std::size_t> feats;
};

std::optional<SplitChoice> best_split_impl(const Dataset& ds, const std::size_t* rows,
                                           std::size_t n,
                                           const std::vector<std::size_t>& candidate_features,
                                           SplitScratch& scratch) {
    if (n < 2) return std::nullopt;
    const std::size_t n_classes = ds.n_classes();

    std::vector<std::size_t> total(n_classes, 0);
    for (std::size_t i = 0; i < n; ++i)
        total[static_cast<std::size_t>(ds.y[rows[i]])]++;
    const double parent_gini = gini_from_counts(total, static_cast<double>(n));

    std::optional<SplitChoice> best;
    auto& vals = scratch.vals;
    vals.resize(n);
    auto& left = scratch.left;
    left.assign(n_classes, 0);

    // candidates evaluated in ascending feature order so a strict ">" keeps
    // the (lower feature, lower threshold) tie rule
    auto& feats = scratch.feats;
    feats = candidate_features;
    std::sort(feats.begin(), feats.end());

    for (std::size_t f : feats) {
        for (std::size_t i = 0; i < n; ++i)
            vals[i] = {ds.at(rows[i], f), ds.y[rows[i]]};
        std::sort(vals.begin(), vals.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        if (vals.front().first == vals.back().first) continue;  // constant feature

        std::fill(left.begin(), left.end(), 0);
        for (std::size_t i = 1; i < n; ++i) {
            left[static_cast<std::size_t>(vals[i - 1].second)]++;
            if (vals[i].first == vals[i - 1].first) continue;

            const double nl = static_cast<double>(i);
            const double nr = static_cast<double>(n - i);
            double sl = 0.0, sr = 0.0;
            for (std::size_t c = 0; c < n_classes; ++c) {
                const double pl = static_cast<double>(left[c]) / nl;
                const double pr = static_cast<double>(total[c] - left[c]) / nr;
                sl += pl * pl;
                sr += pr * pr;
            }
            const double decrease =
                parent_gini - (nl / n) * (1.0 - sl) - (nr / n) * (1.0 - sr);
            if (decrease <= kMinDecrease) continue;
            if (!best || decrease > best->impurity_decrease) {
                const double thr = vals[i - 1].first +
                                   (vals[i].first - vals[i - 1].first) / 2.0;
                best = SplitChoice{f, thr, decrease};
            }
        }
    }
    return best;
}

}  // namespace

std::optional<SplitChoice> best_split(const Dataset& ds,
                                      const std::vector<std::size_t>& rows,
                                      const std::vector<std::size_t>& candidate_features) {
    SplitScratch scratch;
    return best_split_impl(ds, rows.data(), rows.size(), candidate_features, scratch);
}

DecisionTreeModel fit_tree_on_rows(const Dataset& train,
                                   const std::vector<std::size_t>& rows,
                                   const TreeParams& params,
                                   std::size_t features_per_split, Rng* rng) {
    if (rows.empty()) throw InsufficientData("fit_tree: no rows");
    DecisionTreeModel model;
    model.params = params;
    model.n_cols = train.n_cols;
    model.n_classes = train.n_classes();

    std::vector<std::size_t> idx = rows;
    std::vector<std::size_t> all_features(train.n_cols);
    std::iota(all_features.begin(), all_features.end(), 0);

    struct Frame {
        std::int32_t node;
        std::size_t begin, end;
        std::size_t depth;
    };
    std::vector<Frame> stack;
    model.nodes.emplace_back();
    stack.push_back({0, 0, idx.size(), 0});

    std::vector<std::size_t> candidates;
    SplitScratch scratch;

    while (!stack.empty()) {
        Frame fr = stack.back();
        stack.pop_back();

        std::vector<std::size_t> hist(model.n_classes, 0);
        for (std::size_t i = fr.begin; i < fr.end; ++i)
            hist[static_cast<std::size_t>(train.y[idx[i]])]++;

        const std::size_t n_node = fr.end - fr.begin;
        const bool pure =
            *std::max_element(hist.begin(), hist.end()) == n_node;
        const bool depth_capped = params.max_depth && fr.depth >= *params.max_depth;

        auto make_leaf = [&](std::int32_t node) {
            model.nodes[node].feature_index = -1;
            model.nodes[node].class_id = argmax_class(hist);
            model.nodes[node].class_histogram = hist;
        };

        if (pure || depth_capped || n_node < params.min_samples_split) {
            make_leaf(fr.node);
            continue;
        }

        if (rng && features_per_split < train.n_cols) {
            // partial Fisher-Yates over a scratch copy
            candidates = all_features;
            for (std::size_t i = 0; i < features_per_split; ++i) {
                const std::size_t j = i + rng->next_below(candidates.size() - i);
                std::swap(candidates[i], candidates[j]);
            }
            candidates.resize(features_per_split);
        } else {
            candidates = all_features;
        }

        auto split = best_split_impl(train, idx.data() + fr.begin, n_node, candidates,
                                     scratch);
        if (!split || split->impurity_decrease < params.min_impurity_decrease) {
            make_leaf(fr.node);
            continue;
        }

        const std::size_t f = split->feature;
        const double thr = split->threshold;
        auto mid_it = std::partition(idx.begin() + fr.begin, idx.begin() + fr.end,
                                     [&](std::size_t r) { return train.at(r, f) <= thr; });
        const std::size_t mid = static_cast<std::size_t>(mid_it - idx.begin());

        TreeNode& node = model.nodes[fr.node];
        node.feature_index = static_cast<std::int32_t>(f);
        node.threshold = thr;
        node.split_decrease = split->impurity_decrease;
        node.class_histogram = hist;
        node.class_id = argmax_class(hist);

        const std::int32_t li = static_cast<std::int32_t>(model.nodes.size());
        model.nodes.emplace_back();
        const std::int32_t ri = static_cast<std::int32_t>(model.nodes.size());
        model.nodes.emplace_back();
        model.nodes[fr.node].left = li;
        model.nodes[fr.node].right = ri;

        // right pushed first so the left subtree is built first (stable node
        // numbering regardless of split outcomes)
        stack.push_back({ri, mid, fr.end, fr.depth + 1});
        stack.push_back({li, fr.begin, mid, fr.depth + 1});
    }
    return model;
}

DecisionTreeModel fit_tree(const Dataset& train, const TreeParams& params) {
    std::vector<std::size_t> rows(train.n_rows);
    std::iota(rows.begin(), rows.end(), 0);
    return fit_tree_on_rows(train, rows, params, train.n_cols, nullptr);
}

std::int32_t predict_tree_row(const DecisionTreeModel& model, const double* x) {
    std::int32_t i = 0;
    while (!model.nodes[i].is_leaf()) {
        const TreeNode& nd = model.nodes[i];
        i = x[nd.feature_index] <= nd.threshold ? nd.left : nd.right;
    }
    return model.nodes[i].class_id;
}

std::vector<std::int32_t> predict_tree(const DecisionTreeModel& model, const Dataset& ds) {
    if (ds.n_cols != model.n_cols)
        throw DimensionMismatch("predict_tree: expected " + std::to_string(model.n_cols) +
                                " columns, got " + std::to_string(ds.n_cols));
    std::vector<std::int32_t> out(ds.n_rows);
    for (std::size_t r = 0; r < ds.n_rows; ++r)
        out[r] = predict_tree_row(model, ds.row(r));
    return out;
}

}  // namespace kddx
