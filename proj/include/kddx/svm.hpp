#pragma once

#include <cstdint>
#include <vector>

#include "kddx/dataset.hpp"

namespace kddx {

struct SvmParams {
    double lambda = 1e-4;
    std::size_t epochs = 5;
    std::uint64_t seed = 0;
};

// One-vs-rest linear machines: score_c(x) = w_c . x + b_c.
struct SvmOvrModel {
    std::vector<std::vector<double>> weights;  // C x n_cols
    std::vector<double> biases;                // C
    SvmParams params;
    std::size_t n_cols = 0;
    std::size_t n_classes = 0;
};

// max(0, 1 - y * (w.x + b))
double hinge_loss(const std::vector<double>& w, double b, const double* x,
                  std::size_t n, double y);

// Regularized hinge objective lambda/2 ||w||^2 + mean hinge over the dataset,
// for one binary machine (y in {-1,+1}).
double svm_objective(const std::vector<double>& w, double b, const Dataset& ds,
                     std::int32_t positive_class, double lambda);

// Pegasos-style stochastic subgradient descent, one binary machine per class,
// step size 1/(lambda*t), bias unregularized. Warns (stderr) when features do
// not look standardized. Deterministic given seed.
SvmOvrModel fit_svm(const Dataset& train, const SvmParams& params);

// argmax_c w_c.x + b_c, ties -> lower class id.
std::vector<std::int32_t> predict_svm(const SvmOvrModel& model, const Dataset& ds);

}  // namespace kddx
