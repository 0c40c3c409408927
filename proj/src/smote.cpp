#include "kddx/smote.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>

#include "kddx/error.hpp"
#include "kddx/rng.hpp"

namespace kddx {

namespace {

double sq_dist(const double* a, const double* b, std::size_t dim) {
    double s = 0.0;
    for (std::size_t i = 0; i < dim; ++i) {
        const double d = a[i] - b[i];
        s += d * d;
    }
    return s;
}

}  // namespace

std::vector<std::size_t> knn_minority(const std::vector<double>& X_class,
                                      std::size_t n, std::size_t dim,
                                      std::size_t query_index, std::size_t k) {
    std::vector<std::pair<double, std::size_t>> dists;
    dists.reserve(n - 1);
    const double* q = X_class.data() + query_index * dim;
    for (std::size_t i = 0; i < n; ++i) {
        if (i == query_index) continue;
        dists.emplace_back(sq_dist(q, X_class.data() + i * dim, dim), i);
    }
    k = std::min(k, dists.size());
    // pair ordering gives the tie rule: equal distance -> lower index
    std::partial_sort(dists.begin(), dists.begin() + k, dists.end());
    std::vector<std::size_t> out(k);
    for (std::size_t i = 0; i < k; ++i) out[i] = dists[i].second;
    return out;
}

std::pair<Dataset, ResampleReport> smote_resample(const Dataset& train,
                                                  const SmoteConfig& cfg) {
    if (cfg.k_neighbors < 1) throw ConfigError("smote: k_neighbors must be >= 1");

    const std::size_t n_classes = train.n_classes();
    const auto counts = train.class_counts();
    const std::size_t majority = *std::max_element(counts.begin(), counts.end());

    std::vector<std::size_t> targets(n_classes);
    for (std::size_t c = 0; c < n_classes; ++c) {
        if (cfg.per_class_counts.empty()) {
            targets[c] = majority;
        } else {
            auto it = cfg.per_class_counts.find(static_cast<std::int32_t>(c));
            targets[c] = it == cfg.per_class_counts.end() ? counts[c] : it->second;
        }
        if (targets[c] < counts[c])
            throw ConfigError("smote: target count below current count for class " +
                              std::to_string(c));
    }

    Dataset out = train;  // originals verbatim, synthetic appended below
    ResampleReport report;
    report.per_class.resize(n_classes);

    for (std::size_t c = 0; c < n_classes; ++c) {
        report.per_class[c].before = counts[c];
        report.per_class[c].after = targets[c];
        report.per_class[c].synthetic = targets[c] - counts[c];
    }

    const std::size_t dim = train.n_cols;

    for (std::size_t c = 0; c < n_classes; ++c) {
        const std::size_t n_synth = targets[c] - counts[c];
        if (n_synth == 0) continue;
        if (counts[c] < 2)
            throw InsufficientData("smote: class " + std::to_string(c) +
                                   " has fewer than 2 members");

        // gather class rows
        std::vector<std::size_t> members;
        members.reserve(counts[c]);
        for (std::size_t r = 0; r < train.n_rows; ++r)
            if (train.y[r] == static_cast<std::int32_t>(c)) members.push_back(r);

        Rng rng(mix_seed(cfg.seed, c));

        // neighbor pool: all members, or a seeded subsample above the cap
        std::vector<std::size_t> pool = members;
        if (pool.size() > cfg.neighbor_pool_cap) {
            rng.shuffle(pool);
            pool.resize(cfg.neighbor_pool_cap);
            std::sort(pool.begin(), pool.end());
        }
        std::vector<double> pool_X(pool.size() * dim);
        for (std::size_t i = 0; i < pool.size(); ++i)
            std::copy(train.row(pool[i]), train.row(pool[i]) + dim,
                      pool_X.begin() + i * dim);

        std::size_t k = cfg.k_neighbors;
        if (k >= pool.size()) {
            k = pool.size() - 1;
            std::cerr << "kddx: smote: k clamped to " << k << " for class " << c << "\n";
        }

        // kNN of each base row is computed lazily and cached
        std::vector<std::vector<std::size_t>> nn_cache(pool.size());
        std::vector<bool> nn_ready(pool.size(), false);

        for (std::size_t s = 0; s < n_synth; ++s) {
            const std::size_t base = rng.next_below(pool.size());
            if (!nn_ready[base]) {
                nn_cache[base] = knn_minority(pool_X, pool.size(), dim, base, k);
                nn_ready[base] = true;
            }
            const auto& nns = nn_cache[base];
            const std::size_t nn = nns[rng.next_below(nns.size())];
            const double r = rng.next_unit();

            const double* x = pool_X.data() + base * dim;
            const double* xnn = pool_X.data() + nn * dim;
            for (std::size_t d = 0; d < dim; ++d)
                out.X.push_back(x[d] + r * (xnn[d] - x[d]));
            out.y.push_back(static_cast<std::int32_t>(c));
        }
    }

    out.n_rows = out.y.size();
    return {std::move(out), std::move(report)};
}

}  // namespace kddx
