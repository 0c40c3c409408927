#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "kddx/error.hpp"

namespace kddx {

struct ConfusionMatrix {
    std::size_t n_classes = 0;
    std::vector<std::size_t> counts;  // n_classes^2, (true, predicted) row-major
    std::vector<std::string> class_names;

    std::size_t at(std::size_t t, std::size_t p) const { return counts[t * n_classes + p]; }
    std::size_t total() const;
};

struct ClassMetrics {
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
    std::size_t support = 0;
    bool zero_division = false;  // precision or recall denominator was 0
};

struct MetricsBundle {
    double accuracy = 0.0;
    std::vector<ClassMetrics> per_class;
    double weighted_f1 = 0.0;
    double macro_f1 = 0.0;
};

ConfusionMatrix confusion(const std::vector<std::int32_t>& y_true,
                          const std::vector<std::int32_t>& y_pred,
                          std::size_t n_classes,
                          std::vector<std::string> class_names = {});

MetricsBundle compute_metrics(const ConfusionMatrix& cm);

}  // namespace kddx
