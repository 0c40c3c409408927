#include "kddx/svm.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <numeric>

#include "kddx/error.hpp"
#include "kddx/rng.hpp"

namespace kddx {

namespace {

double dot(const std::vector<double>& w, const double* x, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += w[i] * x[i];
    return s;
}

void warn_if_not_standardized(const Dataset& train) {
    for (std::size_t c = 0; c < train.n_cols; ++c) {
        if (train.column_kinds[c] == ColumnKind::Categorical) continue;
        double sum = 0.0;
        for (std::size_t r = 0; r < train.n_rows; ++r) sum += train.at(r, c);
        const double mean = sum / static_cast<double>(train.n_rows);
        double ss = 0.0;
        for (std::size_t r = 0; r < train.n_rows; ++r) {
            const double d = train.at(r, c) - mean;
            ss += d * d;
        }
        const double sd = std::sqrt(ss / static_cast<double>(train.n_rows));
        const bool constant = sd == 0.0;
        if (std::abs(mean) > 0.5 || (!constant && (sd < 0.5 || sd > 2.0))) {
            std::cerr << "kddx: svm: features do not look standardized (column "
                      << train.column_names[c] << ": mean " << mean << ", std " << sd
                      << ")\n";
            return;
        }
    }
}

}  // namespace

double hinge_loss(const std::vector<double>& w, double b, const double* x,
                  std::size_t n, double y) {
    return std::max(0.0, 1.0 - y * (dot(w, x, n) + b));
}

double svm_objective(const std::vector<double>& w, double b, const Dataset& ds,
                     std::int32_t positive_class, double lambda) {
    double reg = 0.0;
    for (double v : w) reg += v * v;
    double hinge = 0.0;
    for (std::size_t r = 0; r < ds.n_rows; ++r) {
        const double y = ds.y[r] == positive_class ? 1.0 : -1.0;
        hinge += hinge_loss(w, b, ds.row(r), ds.n_cols, y);
    }
    return 0.5 * lambda * reg + hinge / static_cast<double>(ds.n_rows);
}

SvmOvrModel fit_svm(const Dataset& train, const SvmParams& params) {
    if (params.lambda <= 0.0) throw ConfigError("svm: lambda must be > 0");
    if (train.n_rows == 0) throw InsufficientData("svm: empty training set");

    warn_if_not_standardized(train);

    SvmOvrModel model;
    model.params = params;
    model.n_cols = train.n_cols;
    model.n_classes = train.n_classes();
    model.weights.assign(model.n_classes, std::vector<double>(train.n_cols, 0.0));
    model.biases.assign(model.n_classes, 0.0);

    for (std::size_t c = 0; c < model.n_classes; ++c) {
        Rng rng(mix_seed(params.seed, c));
        auto& w = model.weights[c];
        double& b = model.biases[c];

        std::vector<std::size_t> order(train.n_rows);
        std::iota(order.begin(), order.end(), 0);

        // Pegasos with lazy scaling: w is kept as scale * v so the
        // (1 - eta*lambda) shrink is O(1) per step.
        std::vector<double> v(train.n_cols, 0.0);
        double scale = 1.0;
        std::size_t t = 0;

        for (std::size_t epoch = 0; epoch < params.epochs; ++epoch) {
            rng.shuffle(order);
            for (std::size_t r : order) {
                ++t;
                const double eta = 1.0 / (params.lambda * static_cast<double>(t));
                const double y =
                    train.y[r] == static_cast<std::int32_t>(c) ? 1.0 : -1.0;
                const double* x = train.row(r);
                const double margin = y * (scale * dot(v, x, train.n_cols) + b);

                scale *= 1.0 - eta * params.lambda;
                if (scale < 1e-9) {  // refold to avoid underflow
                    for (auto& vi : v) vi *= scale;
                    scale = 1.0;
                }
                if (margin < 1.0) {
                    const double g = eta * y / scale;
                    for (std::size_t d = 0; d < train.n_cols; ++d) v[d] += g * x[d];
                    // unregularized bias: damped 1/t step. The weight step
                    // 1/(lambda*t) would launch b to +-1/lambda at t=1 and
                    // the run never recovers for small lambda.
                    b += y / static_cast<double>(t);
                }
            }
        }
        for (std::size_t d = 0; d < train.n_cols; ++d) w[d] = scale * v[d];
    }
    return model;
}

std::vector<std::int32_t> predict_svm(const SvmOvrModel& model, const Dataset& ds) {
    if (ds.n_cols != model.n_cols)
        throw DimensionMismatch("predict_svm: column count mismatch");
    std::vector<std::int32_t> out(ds.n_rows);
    for (std::size_t r = 0; r < ds.n_rows; ++r) {
        std::size_t best = 0;
        double best_score = dot(model.weights[0], ds.row(r), ds.n_cols) + model.biases[0];
        for (std::size_t c = 1; c < model.n_classes; ++c) {
            const double s = dot(model.weights[c], ds.row(r), ds.n_cols) + model.biases[c];
            if (s > best_score) {  // ties -> lower class id
                best_score = s;
                best = c;
            }
        }
        out[r] = static_cast<std::int32_t>(best);
    }
    return out;
}

}  // namespace kddx
